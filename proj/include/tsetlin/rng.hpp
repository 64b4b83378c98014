#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace tsetlin
{

/*! Deterministic 64-bit PRNG (splitmix64 finalizer).
 *
 * Chosen over the std engines because training needs cheap, independent,
 * counter-derived streams: every (seed, epoch, document, clause) tuple gets
 * its own generator, so feedback can be applied to clauses in any order, or
 * in parallel, and still produce bit-identical models.
 */
class split_mix64
{
public:
  split_mix64() = default;

  explicit split_mix64( uint64_t seed ) : state_( seed ) {}

  uint64_t next()
  {
    uint64_t z = ( state_ += 0x9e3779b97f4a7c15ULL );
    z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ULL;
    z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebULL;
    return z ^ ( z >> 31 );
  }

  /* Uniform double in [0, 1), 53 significant bits. */
  double uniform01()
  {
    return static_cast<double>( next() >> 11 ) * 0x1.0p-53;
  }

  /* Uniform integer in [0, n), n >= 1.  Unbiased (rejection). */
  uint64_t uniform_below( uint64_t n )
  {
    uint64_t x, r;
    do
    {
      x = next();
      r = x % n;
    } while ( x - r > uint64_t( 0 ) - n );
    return r;
  }

private:
  uint64_t state_{ 0x853c49e6748fea9bULL };
};

namespace detail
{

/* Derivation tags keep the independent generator streams apart. */
enum stream_tag : uint64_t
{
  tag_init = 0x5449u,    /* clause state initialisation */
  tag_clause = 0x434cu,  /* per-clause feedback decisions */
  tag_step = 0x5354u,    /* per-step choices (non-target class) */
  tag_shuffle = 0x5348u, /* epoch document order */
  tag_split = 0x53504cu  /* train/test partition */
};

} // namespace detail

/* Mixes a tuple of counters into one stream seed.  Order-sensitive. */
inline uint64_t mix_stream( uint64_t a, uint64_t b = 0, uint64_t c = 0, uint64_t d = 0, uint64_t e = 0 )
{
  split_mix64 g( a );
  uint64_t h = g.next();
  for ( uint64_t v : { b, c, d, e } )
  {
    h ^= v + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 );
    h = split_mix64( h ).next();
  }
  return h;
}

/*! Stub generator: every probabilistic decision fires whenever its
 *  probability is positive.  Used to drive worked-example walkthroughs
 *  where the stochastic feedback must behave like its deterministic limit.
 */
struct forced_rng
{
};

/*! Stub generator: no probabilistic decision ever fires. */
struct never_rng
{
};

constexpr uint32_t no_event = std::numeric_limits<uint32_t>::max();

/* One Bernoulli(p) trial. */
inline bool decide( double p, split_mix64& rng )
{
  return rng.uniform01() < p;
}

inline bool decide( double p, forced_rng& )
{
  return p > 0.0;
}

inline bool decide( double, never_rng& )
{
  return false;
}

/*! Exact sampler for the gap between consecutive successes of a
 *  Bernoulli(p) process, i.e. Geometric(p) starting at 0.
 *
 * Quantile function: gap(u) = floor(log1p(-u) / log1p(-p)).  A 1024-bucket
 * table resolves most draws with two loads; buckets spanning a quantile
 * step fall back to the log formula, so the distribution stays exact.
 */
class geometric_gap
{
public:
  geometric_gap() = default;

  explicit geometric_gap( double p ) : p_( p )
  {
    if ( p_ >= 1.0 || p_ <= 0.0 )
      return;
    denom_ = std::log1p( -p_ );
    for ( int i = 0; i < buckets; ++i )
    {
      double lo = static_cast<double>( i ) / buckets;
      double hi = std::nextafter( static_cast<double>( i + 1 ) / buckets, 0.0 );
      uint64_t glo = from_formula( lo );
      uint64_t ghi = from_formula( hi );
      flat_[i] = ( glo == ghi && glo < no_event ) ? static_cast<uint32_t>( glo ) : mixed_bucket;
    }
  }

  double p() const { return p_; }

  uint32_t sample( double u ) const
  {
    if ( p_ >= 1.0 )
      return 0;
    if ( p_ <= 0.0 )
      return no_event;
    uint32_t f = flat_[static_cast<int>( u * buckets )];
    if ( f != mixed_bucket )
      return f;
    uint64_t g = from_formula( u );
    return g >= no_event ? no_event : static_cast<uint32_t>( g );
  }

private:
  static constexpr int buckets = 1024;
  static constexpr uint32_t mixed_bucket = std::numeric_limits<uint32_t>::max();

  uint64_t from_formula( double u ) const
  {
    double g = std::log1p( -u ) / denom_;
    if ( !( g < static_cast<double>( no_event ) ) )
      return no_event;
    return static_cast<uint64_t>( g );
  }

  double p_{ 0.0 };
  double denom_{ -1.0 };
  uint32_t flat_[buckets]{};
};

template<class Rng>
inline uint32_t next_gap( const geometric_gap& dist, Rng& rng )
{
  return dist.sample( rng.uniform01() );
}

inline uint32_t next_gap( const geometric_gap& dist, forced_rng& )
{
  return dist.p() > 0.0 ? 0 : no_event;
}

inline uint32_t next_gap( const geometric_gap&, never_rng& )
{
  return no_event;
}

/* In-place Fisher-Yates shuffle, fully determined by the generator. */
template<class T, class Rng>
void deterministic_shuffle( std::vector<T>& v, Rng& rng )
{
  for ( size_t i = v.size(); i > 1; --i )
  {
    size_t j = static_cast<size_t>( rng.uniform_below( i ) );
    std::swap( v[i - 1], v[j] );
  }
}

} // namespace tsetlin
