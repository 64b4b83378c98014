#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tsetlin::text
{

/*! Bijective token <-> feature-index map.
 *
 * Indices are assigned in lexicographic token order, which makes every
 * vocabulary a pure function of its token set: selection, serialization
 * and training are then independent of input document order.
 */
class vocabulary
{
public:
  vocabulary() = default;

  explicit vocabulary( std::vector<std::string> tokens ) : tokens_( std::move( tokens ) )
  {
    std::sort( tokens_.begin(), tokens_.end() );
    tokens_.erase( std::unique( tokens_.begin(), tokens_.end() ), tokens_.end() );
    index_.reserve( tokens_.size() );
    for ( uint32_t i = 0; i < tokens_.size(); ++i )
      index_.emplace( tokens_[i], i );
  }

  uint32_t size() const { return static_cast<uint32_t>( tokens_.size() ); }

  bool contains( const std::string& token ) const { return index_.contains( token ); }

  uint32_t at( const std::string& token ) const
  {
    auto it = index_.find( token );
    if ( it == index_.end() )
      throw std::out_of_range( "vocabulary: unknown token '" + token + "'" );
    return it->second;
  }

  const std::string& token( uint32_t i ) const { return tokens_.at( i ); }

  const std::vector<std::string>& tokens() const { return tokens_; }

  bool operator==( const vocabulary& o ) const { return tokens_ == o.tokens_; }

private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, uint32_t> index_;
};

inline vocabulary build_vocabulary( const std::vector<std::vector<std::string>>& docs )
{
  std::vector<std::string> all;
  for ( const auto& d : docs )
    all.insert( all.end(), d.begin(), d.end() );
  return vocabulary( std::move( all ) );
}

/* FNV-1a over the tokens in index order, newline-delimited. */
inline uint64_t vocabulary_hash( const vocabulary& v )
{
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&]( char c ) {
    h ^= static_cast<uint8_t>( c );
    h *= 0x100000001b3ULL;
  };
  for ( const auto& t : v.tokens() )
  {
    for ( char c : t )
      mix( c );
    mix( '\n' );
  }
  return h;
}

/* Two columns, token then index, tab-separated. */
inline void save_vocabulary( const vocabulary& v, const std::string& path )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
    throw std::runtime_error( "cannot write vocabulary file: " + path );
  for ( uint32_t i = 0; i < v.size(); ++i )
    out << v.token( i ) << '\t' << i << '\n';
  if ( !out.flush() )
    throw std::runtime_error( "failed writing vocabulary file: " + path );
}

} // namespace tsetlin::text
