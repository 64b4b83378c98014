#pragma once

#include <cstdint>

namespace tsetlin
{

/*! Two-action learning automaton with 2N states.
 *
 * States 1..N select Include, states N+1..2N select Exclude.  Moves
 * saturate at the boundary states 1 and 2N.  One byte per automaton; the
 * clause bank relies on that layout.
 */
struct tsetlin_automaton
{
  uint8_t state = 0;

  bool includes( uint32_t n ) const { return state <= n; }

  void toward_include()
  {
    if ( state > 1 )
      --state;
  }

  void toward_exclude( uint32_t n )
  {
    if ( state < 2 * n )
      ++state;
  }
};

static_assert( sizeof( tsetlin_automaton ) == 1 );

} // namespace tsetlin
