#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsetlin
{

/*! Credibility of a fake-news call from the raw class vote sums.
 *
 * Q = 1 / (1 + exp(-k (v_fake - v_true))), a logistic squash of the vote
 * gap.  k scales sums into the logistic's active range; any k > 0 yields
 * the same ranking.  The result is clamped to (0, 1) exclusive so extreme
 * gaps cannot round to the endpoints.
 */
inline double credibility_score( int votes_fake, int votes_true, double k = 0.012 )
{
  if ( !( k > 0.0 ) )
    throw std::invalid_argument( "credibility: k must be > 0, got " + std::to_string( k ) );
  const double q = 1.0 / ( 1.0 + std::exp( -k * ( static_cast<double>( votes_fake ) - static_cast<double>( votes_true ) ) ) );
  const double eps = std::numeric_limits<double>::epsilon();
  return std::clamp( q, eps, 1.0 - eps );
}

struct ranked_prediction
{
  std::string doc_id;
  int predicted_class = 0;
  int votes_fake = 0;
  int votes_true = 0;
  double q = 0.0;
};

/*! Filters to fake-predicted documents with Q at or above the threshold
 *  and orders them most-credible first; ties break on ascending id.
 */
inline std::vector<ranked_prediction> rank_fake( std::vector<ranked_prediction> predictions, int fake_class, double min_credibility )
{
  if ( !( min_credibility >= 0.0 && min_credibility <= 1.0 ) )
    throw std::invalid_argument( "credibility: threshold must lie in [0, 1]" );
  std::vector<ranked_prediction> kept;
  for ( auto& p : predictions )
    if ( p.predicted_class == fake_class && p.q >= min_credibility )
      kept.push_back( std::move( p ) );
  std::sort( kept.begin(), kept.end(), []( const ranked_prediction& a, const ranked_prediction& b ) {
    if ( a.q != b.q )
      return a.q > b.q;
    return a.doc_id < b.doc_id;
  } );
  return kept;
}

} // namespace tsetlin
