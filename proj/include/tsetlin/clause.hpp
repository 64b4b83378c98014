#pragma once

#include "automaton.hpp"
#include "document.hpp"
#include "rng.hpp"

#include <cassert>
#include <cstring>
#include <vector>

namespace tsetlin
{

enum class eval_mode
{
  train,
  infer
};

namespace detail
{

/* Packs one bit per byte: bit k of the output is 1 iff s[k] < m.
 * m <= 128, so (b + 128 - m) carries into the high bit exactly when
 * b >= m for b < 128; OR-ing b's own high bit covers b >= 128. */
inline void pack_below_threshold( const uint8_t* s, uint32_t count, uint8_t m, uint64_t* out )
{
  constexpr uint64_t low7 = 0x7f7f7f7f7f7f7f7fULL;
  constexpr uint64_t high = 0x8080808080808080ULL;
  constexpr uint64_t gather = 0x0102040810204080ULL;
  const uint64_t bias = 0x0101010101010101ULL * static_cast<uint8_t>( 128 - m );

  const uint32_t words = ( count + 63 ) / 64;
  for ( uint32_t w = 0; w < words; ++w )
  {
    uint64_t bits = 0;
    for ( uint32_t g = 0; g < 8; ++g )
    {
      const uint32_t base = w * 64 + g * 8;
      uint64_t x;
      if ( base + 8 <= count )
      {
        std::memcpy( &x, s + base, 8 );
      }
      else
      {
        uint8_t buf[8];
        std::memset( buf, 0xff, 8 ); /* padding lanes read as excluded */
        if ( base < count )
          std::memcpy( buf, s + base, count - base );
        std::memcpy( &x, buf, 8 );
        if ( base >= count )
        {
          continue;
        }
      }
      uint64_t ge = ( ( ( x & low7 ) + bias ) | x ) & high;
      uint64_t ge_bits = ( ( ge >> 7 ) * gather ) >> 56;
      bits |= static_cast<uint64_t>( static_cast<uint8_t>( ~ge_bits ) ) << ( g * 8 );
    }
    if ( ( w + 1 ) * 64 > count )
      bits &= ( uint64_t( 1 ) << ( count - w * 64 ) ) - 1;
    out[w] = bits;
  }
}

} // namespace detail

/*! One conjunctive clause over 2o literals (o features and o negations).
 *
 * Literal k < width is feature k, literal width + k is its negation.  The
 * automata own the truth; the packed include masks and the active word
 * list are caches rebuilt from them so evaluation can test 64 literals at
 * a time and skip all-excluded regions.
 */
struct clause
{
  uint32_t width = 0; /* o */
  uint32_t n = 127;   /* states per action */
  std::vector<tsetlin_automaton> ta; /* 2o automata */
  std::vector<uint64_t> include_plain;
  std::vector<uint64_t> include_negated;
  std::vector<uint32_t> active; /* superset of words with any include bit */
  uint32_t include_count = 0;

  bool empty() const { return include_count == 0; }

  bool includes_plain( uint32_t k ) const
  {
    return ( include_plain[k >> 6] >> ( k & 63 ) ) & 1u;
  }

  bool includes_negated( uint32_t k ) const
  {
    return ( include_negated[k >> 6] >> ( k & 63 ) ) & 1u;
  }

  /* Recomputes masks, include count and active words from the automata. */
  void rebuild_masks()
  {
    const uint8_t m = static_cast<uint8_t>( n + 1 );
    const uint8_t* s = &ta[0].state;
    detail::pack_below_threshold( s, width, m, include_plain.data() );
    detail::pack_below_threshold( s + width, width, m, include_negated.data() );
    include_count = 0;
    active.clear();
    for ( uint32_t w = 0; w < include_plain.size(); ++w )
    {
      include_count += static_cast<uint32_t>( __builtin_popcountll( include_plain[w] ) + __builtin_popcountll( include_negated[w] ) );
      if ( include_plain[w] | include_negated[w] )
        active.push_back( w );
    }
  }
};

inline clause make_clause( uint32_t width, uint32_t n )
{
  clause c;
  c.width = width;
  c.n = n;
  c.ta.resize( size_t( 2 ) * width );
  c.include_plain.assign( words_for( width ), 0 );
  c.include_negated.assign( words_for( width ), 0 );
  return c;
}

/* Every automaton starts on the decision boundary, Include (state N) or
 * Exclude (state N + 1) with equal probability. */
template<class Rng>
void init_clause( clause& c, Rng& rng )
{
  uint64_t word = 0;
  int left = 0;
  for ( auto& a : c.ta )
  {
    if ( left == 0 )
    {
      word = rng.next();
      left = 64;
    }
    a.state = static_cast<uint8_t>( c.n + ( word & 1 ) );
    word >>= 1;
    --left;
  }
  c.rebuild_masks();
}

/*! Conjunction value of the clause on one document.
 *
 * An empty clause is 1 during training (so feedback can grow it) and 0
 * during inference (so it cannot vote).
 */
inline int clause_eval( const clause& c, const boolean_document& doc, eval_mode mode )
{
  assert( doc.width == c.width );
  if ( c.empty() )
    return mode == eval_mode::train ? 1 : 0;
  for ( uint32_t w : c.active )
  {
    const uint64_t x = doc.bits[w];
    if ( ( c.include_plain[w] & ~x ) | ( c.include_negated[w] & x ) )
      return 0;
  }
  return 1;
}

/*! Probabilities of the two stochastic moves of Type I feedback, plus the
 *  matching gap samplers for the sparse fast path.
 *
 * Canonical values for specificity s: a 1-valued literal is rewarded
 * toward Include with probability (s-1)/s, any other move toward Exclude
 * happens with probability 1/s.
 */
struct feedback_plan
{
  double p_reward_on_one = 0.0;
  double p_erase_on_zero = 0.0;
  geometric_gap skip_reward; /* rate 1 - p_reward_on_one */
  geometric_gap erase;       /* rate p_erase_on_zero */

  static feedback_plan from_probs( double p_reward_on_one, double p_erase_on_zero )
  {
    feedback_plan f;
    f.p_reward_on_one = p_reward_on_one;
    f.p_erase_on_zero = p_erase_on_zero;
    f.skip_reward = geometric_gap( 1.0 - p_reward_on_one );
    f.erase = geometric_gap( p_erase_on_zero );
    return f;
  }

  static feedback_plan from_s( double s )
  {
    return from_probs( ( s - 1.0 ) / s, 1.0 / s );
  }
};

namespace detail
{

/* Reference formulation, one decision per literal.  Drives the stub
 * generators and doubles as the oracle the sampled path is tested
 * against. */
template<class Rng>
void type_i_literalwise( clause& c, const doc_literals& lits, const feedback_plan& plan, Rng& rng, int output )
{
  const uint32_t total = 2 * c.width;
  if ( output == 1 )
  {
    for ( uint32_t k = 0; k < total; ++k )
    {
      if ( lits.bytes[k] )
      {
        if ( decide( plan.p_reward_on_one, rng ) )
          c.ta[k].toward_include();
      }
      else
      {
        if ( decide( plan.p_erase_on_zero, rng ) )
          c.ta[k].toward_exclude( c.n );
      }
    }
  }
  else
  {
    for ( uint32_t k = 0; k < total; ++k )
    {
      if ( decide( plan.p_erase_on_zero, rng ) )
        c.ta[k].toward_exclude( c.n );
    }
  }
  c.rebuild_masks();
}

/* Sampled formulation.  Walks Bernoulli processes over the literal axis
 * instead of drawing per literal; the dense reward move is applied as one
 * vectorisable pass with the sampled exceptions restored afterwards. */
struct type_i_scratch
{
  std::vector<std::pair<uint32_t, uint8_t>> saved;
};

inline void type_i_sampled( clause& c, const doc_literals& lits, const feedback_plan& plan, split_mix64& rng, int output, type_i_scratch& scratch )
{
  const uint32_t total = 2 * c.width;
  uint8_t* s = &c.ta[0].state;
  const uint8_t* lit = lits.bytes.data();

  if ( output == 1 )
  {
    /* Exceptions to the reward pass: 1-valued literals that keep their
     * state, probability 1 - p_reward_on_one each. */
    scratch.saved.clear();
    for ( uint64_t k = next_gap( plan.skip_reward, rng ); k < total; )
    {
      if ( lit[k] )
        scratch.saved.emplace_back( static_cast<uint32_t>( k ), s[k] );
      uint32_t gap = next_gap( plan.skip_reward, rng );
      if ( gap == no_event )
        break;
      k += uint64_t( gap ) + 1;
    }
    /* Erase moves on 0-valued literals, probability p_erase_on_zero. */
    const uint8_t cap = static_cast<uint8_t>( 2 * c.n );
    for ( uint64_t k = next_gap( plan.erase, rng ); k < total; )
    {
      if ( !lit[k] && s[k] < cap )
        ++s[k];
      uint32_t gap = next_gap( plan.erase, rng );
      if ( gap == no_event )
        break;
      k += uint64_t( gap ) + 1;
    }
    /* Reward pass over every 1-valued literal. */
    for ( uint32_t k = 0; k < total; ++k )
      s[k] = static_cast<uint8_t>( s[k] - ( lit[k] & ( s[k] > 1 ) ) );
    for ( auto [k, old] : scratch.saved )
      s[k] = old;
    c.rebuild_masks();
  }
  else
  {
    /* Sparse erase walk; masks maintained incrementally.  Bits are only
     * ever cleared here, so the active list stays a valid superset. */
    const uint8_t cap = static_cast<uint8_t>( 2 * c.n );
    const uint8_t boundary = static_cast<uint8_t>( c.n );
    for ( uint64_t k = next_gap( plan.erase, rng ); k < total; )
    {
      if ( s[k] < cap )
      {
        if ( s[k] == boundary )
        {
          uint32_t f = static_cast<uint32_t>( k );
          if ( f < c.width )
            c.include_plain[f >> 6] &= ~( uint64_t( 1 ) << ( f & 63 ) );
          else
            c.include_negated[( f - c.width ) >> 6] &= ~( uint64_t( 1 ) << ( ( f - c.width ) & 63 ) );
          --c.include_count;
        }
        ++s[k];
      }
      uint32_t gap = next_gap( plan.erase, rng );
      if ( gap == no_event )
        break;
      k += uint64_t( gap ) + 1;
    }
  }
}

inline void type_ii_apply( clause& c, const doc_literals& lits )
{
  const uint32_t total = 2 * c.width;
  uint8_t* s = &c.ta[0].state;
  const uint8_t* lit = lits.bytes.data();
  const uint8_t boundary = static_cast<uint8_t>( c.n );
  for ( uint32_t k = 0; k < total; ++k )
    s[k] = static_cast<uint8_t>( s[k] - ( ( lit[k] ^ 1 ) & ( s[k] > boundary ) ) );
  c.rebuild_masks();
}

} // namespace detail

/*! Type I feedback: reinforces the clause on documents it should match.
 *
 * With clause output 1, every 1-valued literal moves toward Include with
 * probability p_reward_on_one and every 0-valued literal toward Exclude
 * with probability p_erase_on_zero.  With output 0, every automaton moves
 * toward Exclude with probability p_erase_on_zero.  Never produces a
 * contradicting include (a 0-valued literal can only move deeper into
 * Exclude territory while the clause matches).
 */
template<class Rng>
void type_i_feedback( clause& c, const doc_literals& lits, const feedback_plan& plan, Rng& rng )
{
  const int output = clause_eval( c, *lits.doc, eval_mode::train );
  detail::type_i_literalwise( c, lits, plan, rng, output );
}

inline void type_i_feedback( clause& c, const doc_literals& lits, const feedback_plan& plan, split_mix64& rng )
{
  const int output = clause_eval( c, *lits.doc, eval_mode::train );
  detail::type_i_scratch scratch;
  detail::type_i_sampled( c, lits, plan, rng, output, scratch );
}

/*! Type II feedback: combats false matches.
 *
 * Only acts when the clause output is 1.  Every excluded 0-valued literal
 * moves one step toward Include (probability 1), which walks the clause
 * toward a literal that rejects the document.  Includes are never removed,
 * so consumes no randomness.
 */
template<class Rng>
void type_ii_feedback( clause& c, const doc_literals& lits, Rng& )
{
  if ( clause_eval( c, *lits.doc, eval_mode::train ) != 1 )
    return;
  detail::type_ii_apply( c, lits );
}

} // namespace tsetlin
