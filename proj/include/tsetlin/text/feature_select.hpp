#pragma once

#include "vocabulary.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tsetlin::text
{

enum class selection_method
{
  chi2,
  frequency
};

struct selection_spec
{
  selection_method method = selection_method::chi2;
  uint32_t k = 20000;
};

/*! Chi-squared statistic of a 2x2 presence/class contingency table:
 *  a, b = documents of class 1 / class 0 containing the token,
 *  c, d = documents of class 1 / class 0 without it.
 *  Degenerate margins (a token present or absent everywhere, or a
 *  single-class corpus) carry no signal and score 0.
 */
inline double chi2_statistic( int64_t a, int64_t b, int64_t c, int64_t d )
{
  const double n = static_cast<double>( a + b + c + d );
  const double m1 = static_cast<double>( a + b );
  const double m2 = static_cast<double>( c + d );
  const double m3 = static_cast<double>( a + c );
  const double m4 = static_cast<double>( b + d );
  if ( m1 == 0 || m2 == 0 || m3 == 0 || m4 == 0 )
    return 0.0;
  const double det = static_cast<double>( a ) * static_cast<double>( d ) - static_cast<double>( b ) * static_cast<double>( c );
  return n * det * det / ( m1 * m2 * m3 * m4 );
}

namespace detail
{

struct presence_counts
{
  std::unordered_map<std::string, std::pair<int64_t, int64_t>> df; /* token -> (class1 docs, class0 docs) */
  int64_t docs1 = 0;
  int64_t docs0 = 0;
};

inline presence_counts count_presence( const std::vector<std::vector<std::string>>& docs, const std::vector<int>* labels )
{
  presence_counts pc;
  std::vector<std::string> distinct;
  for ( size_t i = 0; i < docs.size(); ++i )
  {
    int label = 1;
    if ( labels )
    {
      label = ( *labels )[i];
      if ( label != 0 && label != 1 )
        throw std::invalid_argument( "selection: labels must be 0 or 1" );
    }
    ( label == 1 ? pc.docs1 : pc.docs0 )++;
    distinct = docs[i];
    std::sort( distinct.begin(), distinct.end() );
    distinct.erase( std::unique( distinct.begin(), distinct.end() ), distinct.end() );
    for ( auto& t : distinct )
    {
      auto& e = pc.df[t];
      ( label == 1 ? e.first : e.second )++;
    }
  }
  return pc;
}

/* Stable top-k: score descending, token ascending on ties. */
inline vocabulary take_top( std::vector<std::pair<double, std::string>> scored, uint32_t k )
{
  std::sort( scored.begin(), scored.end(), []( const auto& x, const auto& y ) {
    if ( x.first != y.first )
      return x.first > y.first;
    return x.second < y.second;
  } );
  const size_t keep = std::min<size_t>( k, scored.size() );
  std::vector<std::string> tokens;
  tokens.reserve( keep );
  for ( size_t i = 0; i < keep; ++i )
    tokens.push_back( std::move( scored[i].second ) );
  return vocabulary( std::move( tokens ) );
}

} // namespace detail

/*! Keeps the min(k, distinct) tokens with the highest chi-squared
 *  association between document-level presence and the binary label.
 */
inline vocabulary chi2_select( const std::vector<std::vector<std::string>>& docs, const std::vector<int>& labels, uint32_t k )
{
  if ( docs.size() != labels.size() )
    throw std::invalid_argument( "selection: document/label count mismatch" );
  if ( docs.empty() )
    throw std::invalid_argument( "selection: empty corpus" );
  auto pc = detail::count_presence( docs, &labels );
  if ( pc.docs0 == 0 || pc.docs1 == 0 )
    throw std::invalid_argument( "selection: chi2 needs both classes present" );
  std::vector<std::pair<double, std::string>> scored;
  scored.reserve( pc.df.size() );
  for ( auto& [token, e] : pc.df )
  {
    const int64_t a = e.first, b = e.second;
    scored.emplace_back( chi2_statistic( a, b, pc.docs1 - a, pc.docs0 - b ), token );
  }
  return detail::take_top( std::move( scored ), k );
}

/*! Keeps the min(k, distinct) tokens occurring in the most documents. */
inline vocabulary frequency_select( const std::vector<std::vector<std::string>>& docs, uint32_t k )
{
  if ( docs.empty() )
    throw std::invalid_argument( "selection: empty corpus" );
  auto pc = detail::count_presence( docs, nullptr );
  std::vector<std::pair<double, std::string>> scored;
  scored.reserve( pc.df.size() );
  for ( auto& [token, e] : pc.df )
    scored.emplace_back( static_cast<double>( e.first + e.second ), token );
  return detail::take_top( std::move( scored ), k );
}

inline vocabulary select_features( const std::vector<std::vector<std::string>>& docs, const std::vector<int>& labels, const selection_spec& spec )
{
  return spec.method == selection_method::chi2 ? chi2_select( docs, labels, spec.k )
                                               : frequency_select( docs, spec.k );
}

} // namespace tsetlin::text
