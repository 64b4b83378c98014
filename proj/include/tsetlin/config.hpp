#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tsetlin
{

/*! Hyperparameters of one trained machine.
 *
 * `clauses` counts both polarities together and must be even: the first
 * half votes for the class, the second half against.  `states_per_action`
 * is N in the two-action automaton with 2N states; states fit one byte,
 * so N <= 127.
 */
struct tm_config
{
  uint32_t clauses = 2000;          /* m, even, >= 2 */
  int32_t threshold = 80;           /* T, vote margin target, >= 1 */
  double s = 25.0;                  /* specificity, > 1 */
  uint32_t states_per_action = 127; /* N in [1, 127] */
  uint32_t features = 0;            /* o, boolean input width, >= 1 */
  uint32_t epochs = 100;
  uint64_t seed = 42;
};

inline void validate( const tm_config& c )
{
  if ( c.clauses < 2 || c.clauses % 2 != 0 )
    throw std::invalid_argument( "config: clauses must be even and >= 2, got " + std::to_string( c.clauses ) );
  if ( c.threshold < 1 )
    throw std::invalid_argument( "config: threshold must be >= 1, got " + std::to_string( c.threshold ) );
  if ( !( c.s > 1.0 ) )
    throw std::invalid_argument( "config: s must be > 1, got " + std::to_string( c.s ) );
  if ( c.states_per_action < 1 || c.states_per_action > 127 )
    throw std::invalid_argument( "config: states_per_action must be in [1, 127], got " + std::to_string( c.states_per_action ) );
  if ( c.features < 1 )
    throw std::invalid_argument( "config: features must be >= 1" );
}

} // namespace tsetlin
