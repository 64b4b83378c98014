#pragma once

#include "../rng.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsetlin::data
{

struct split_spec
{
  double train_fraction = 0.75;
  uint64_t seed = 0;
  bool stratified = false;
};

struct split_result
{
  std::vector<size_t> train;
  std::vector<size_t> test;
};

/*! Seeded train/test partition over indices [0, n).
 *
 * Train size is exactly floor(n * train_fraction).  Stratified mode fills
 * per-class quotas (largest-remainder rounding, ties to the lower class)
 * from one shared shuffle, keeping class proportions within one document
 * of the corpus ratio while preserving the exact train size.
 */
inline split_result make_split( size_t n, const std::vector<int>* labels, const split_spec& spec )
{
  if ( !( spec.train_fraction > 0.0 && spec.train_fraction < 1.0 ) )
    throw std::invalid_argument( "split: train_fraction must lie in (0, 1)" );
  if ( n < 2 )
    throw std::invalid_argument( "split: need at least two documents" );
  if ( spec.stratified && ( !labels || labels->size() != n ) )
    throw std::invalid_argument( "split: stratified mode needs one label per document" );

  const size_t train_size = static_cast<size_t>( static_cast<double>( n ) * spec.train_fraction );
  if ( train_size == 0 || train_size == n )
    throw std::invalid_argument( "split: degenerate partition (train " + std::to_string( train_size ) + " of " + std::to_string( n ) + ")" );

  std::vector<size_t> order( n );
  std::iota( order.begin(), order.end(), 0 );
  split_mix64 rng( mix_stream( spec.seed, tsetlin::detail::tag_split ) );
  deterministic_shuffle( order, rng );

  split_result out;
  if ( !spec.stratified )
  {
    out.train.assign( order.begin(), order.begin() + train_size );
    out.test.assign( order.begin() + train_size, order.end() );
    return out;
  }

  int max_class = 0;
  for ( int l : *labels )
  {
    if ( l < 0 )
      throw std::invalid_argument( "split: negative label" );
    max_class = std::max( max_class, l );
  }
  std::vector<size_t> class_count( max_class + 1, 0 );
  for ( int l : *labels )
    ++class_count[l];

  std::vector<size_t> quota( max_class + 1 );
  std::vector<std::pair<double, int>> remainder;
  size_t assigned = 0;
  for ( int cl = 0; cl <= max_class; ++cl )
  {
    const double exact = static_cast<double>( class_count[cl] ) * spec.train_fraction;
    quota[cl] = static_cast<size_t>( exact );
    assigned += quota[cl];
    remainder.emplace_back( exact - static_cast<double>( quota[cl] ), cl );
  }
  std::sort( remainder.begin(), remainder.end(), []( const auto& a, const auto& b ) {
    if ( a.first != b.first )
      return a.first > b.first;
    return a.second < b.second;
  } );
  for ( size_t i = 0; assigned < train_size && i < remainder.size(); ++i )
  {
    if ( quota[remainder[i].second] < class_count[remainder[i].second] )
    {
      ++quota[remainder[i].second];
      ++assigned;
    }
  }
  if ( assigned != train_size )
    throw std::invalid_argument( "split: class counts cannot fill the train quota" );

  for ( size_t idx : order )
  {
    auto& q = quota[( *labels )[idx]];
    if ( q > 0 )
    {
      --q;
      out.train.push_back( idx );
    }
    else
    {
      out.test.push_back( idx );
    }
  }
  return out;
}

/* Manifest: "seed<TAB>value" then one document id per line. */
inline void save_split_manifest( const std::string& path, uint64_t seed, const std::vector<std::string>& ids )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
    throw std::runtime_error( "cannot write split manifest: " + path );
  out << "seed\t" << seed << '\n';
  for ( const auto& id : ids )
    out << id << '\n';
  if ( !out.flush() )
    throw std::runtime_error( "failed writing split manifest: " + path );
}

} // namespace tsetlin::data
