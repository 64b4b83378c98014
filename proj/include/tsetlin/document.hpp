#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tsetlin
{

constexpr int no_label = -1;

/*! Boolean set-of-words input: feature k is 1 iff vocabulary token k occurs.
 *
 * Stored as a packed bitset so clause evaluation can test 64 features per
 * word.  `features` keeps the sorted indices of the set bits for sparse
 * consumers (explanations, tests).
 */
struct boolean_document
{
  uint32_t width = 0;            /* o, total feature count */
  std::vector<uint64_t> bits;    /* ceil(width / 64) words, padding zero */
  std::vector<uint32_t> features; /* sorted, unique, < width */
  int label = no_label;

  bool test( uint32_t k ) const
  {
    return ( bits[k >> 6] >> ( k & 63 ) ) & 1u;
  }
};

inline uint32_t words_for( uint32_t width )
{
  return ( width + 63 ) / 64;
}

inline boolean_document make_document( uint32_t width, std::vector<uint32_t> features, int label = no_label )
{
  if ( width == 0 )
    throw std::invalid_argument( "document: width must be >= 1" );
  std::sort( features.begin(), features.end() );
  features.erase( std::unique( features.begin(), features.end() ), features.end() );
  boolean_document d;
  d.width = width;
  d.features = std::move( features );
  d.label = label;
  d.bits.assign( words_for( width ), 0 );
  for ( uint32_t k : d.features )
  {
    if ( k >= width )
      throw std::out_of_range( "document: feature index out of range" );
    d.bits[k >> 6] |= uint64_t( 1 ) << ( k & 63 );
  }
  return d;
}

/*! Literal values of one document, one byte per literal.
 *
 * Literal k < o is feature k; literal o + k is its negation.  Feedback
 * walks this array once per selected clause, so it is materialised once
 * per training step.
 */
struct doc_literals
{
  const boolean_document* doc = nullptr;
  std::vector<uint8_t> bytes; /* 2o entries */

  void assign( const boolean_document& d )
  {
    doc = &d;
    const uint32_t o = d.width;
    bytes.resize( size_t( 2 ) * o );
    for ( uint32_t k = 0; k < o; ++k )
    {
      uint8_t v = static_cast<uint8_t>( ( d.bits[k >> 6] >> ( k & 63 ) ) & 1u );
      bytes[k] = v;
      bytes[o + k] = static_cast<uint8_t>( 1u - v );
    }
  }
};

} // namespace tsetlin
