#pragma once

#include "clause.hpp"
#include "config.hpp"
#include "document.hpp"
#include "rng.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace tsetlin
{

enum class polarity : uint8_t
{
  positive = 0,
  negative = 1
};

/*! All clauses voting on one class.
 *
 * The first half of `clauses` carries positive polarity (votes for the
 * class), the second half negative.  The class sum is the positive vote
 * count minus the negative one.
 */
struct class_model
{
  int class_id = 0;
  std::vector<clause> clauses;

  uint32_t half() const { return static_cast<uint32_t>( clauses.size() / 2 ); }

  polarity polarity_of( uint32_t j ) const
  {
    return j < half() ? polarity::positive : polarity::negative;
  }
};

inline class_model make_class_model( const tm_config& cfg, int class_id )
{
  validate( cfg );
  class_model m;
  m.class_id = class_id;
  m.clauses.reserve( cfg.clauses );
  for ( uint32_t j = 0; j < cfg.clauses; ++j )
  {
    clause c = make_clause( cfg.features, cfg.states_per_action );
    split_mix64 rng( mix_stream( cfg.seed, detail::tag_init, static_cast<uint64_t>( class_id ), j ) );
    init_clause( c, rng );
    m.clauses.push_back( std::move( c ) );
  }
  return m;
}

inline std::vector<class_model> make_models( const tm_config& cfg, int classes )
{
  if ( classes < 1 )
    throw std::invalid_argument( "model: need at least one class" );
  std::vector<class_model> models;
  models.reserve( classes );
  for ( int c = 0; c < classes; ++c )
    models.push_back( make_class_model( cfg, c ) );
  return models;
}

/* Positive votes minus negative votes on one document. */
inline int class_sum( const class_model& m, const boolean_document& doc, eval_mode mode )
{
  const uint32_t h = m.half();
  int v = 0;
  for ( uint32_t j = 0; j < m.clauses.size(); ++j )
  {
    int out = clause_eval( m.clauses[j], doc, mode );
    v += j < h ? out : -out;
  }
  return v;
}

/* Unit step: class present iff the vote sum is non-negative. */
inline int predict_binary( const class_model& m, const boolean_document& doc )
{
  return class_sum( m, doc, eval_mode::infer ) >= 0 ? 1 : 0;
}

struct vote_sums
{
  std::map<int, int> by_class;

  int at( int class_id ) const { return by_class.at( class_id ); }
};

struct prediction
{
  int class_id = 0;
  vote_sums sums;
};

/* Argmax of the class sums; ties go to the lowest class id. */
inline prediction predict_multiclass( std::span<const class_model> models, const boolean_document& doc )
{
  if ( models.empty() )
    throw std::invalid_argument( "model: no classes to predict over" );
  prediction p;
  bool first = true;
  int best = 0;
  for ( const auto& m : models )
  {
    int v = class_sum( m, doc, eval_mode::infer );
    p.sums.by_class[m.class_id] = v;
    if ( first || v > best || ( v == best && m.class_id < p.class_id ) )
    {
      best = v;
      p.class_id = m.class_id;
      first = false;
    }
  }
  return p;
}

} // namespace tsetlin
