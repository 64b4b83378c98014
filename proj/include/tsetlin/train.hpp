#pragma once

#include "clause.hpp"
#include "config.hpp"
#include "document.hpp"
#include "eval.hpp"
#include "model.hpp"
#include "rng.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace tsetlin
{

/*! Stream factory for one training step.
 *
 * Every clause draws from its own generator derived from (seed, epoch,
 * step, class, clause), so feedback across clauses is order-independent:
 * applying it front to back, back to front, or concurrently yields the
 * same automata.
 */
struct deterministic_streams
{
  uint64_t seed = 0;
  uint64_t epoch = 0;
  uint64_t step = 0;

  split_mix64 clause_rng( int class_id, uint32_t j ) const
  {
    return split_mix64( mix_stream( seed, detail::tag_clause, epoch, step, ( static_cast<uint64_t>( class_id ) << 32 ) | j ) );
  }

  split_mix64 step_rng() const
  {
    return split_mix64( mix_stream( seed, detail::tag_step, epoch, step ) );
  }
};

struct train_step_stats
{
  uint32_t type_ia = 0; /* Type I applications with clause output 1 */
  uint32_t type_ib = 0; /* Type I applications with clause output 0 */
  uint32_t type_ii = 0; /* Type II applications (output 1 only) */
  int target_sum = 0;
  int other_sum = 0;
};

struct train_scratch
{
  doc_literals lits;
  std::vector<uint8_t> outputs;
  detail::type_i_scratch sampled;
};

namespace detail
{

enum class feedback_role
{
  target,  /* vote sum pushed toward +T */
  opposite /* vote sum pushed toward -T */
};

/* Clause outputs and vote sum are snapshotted before any update; each
 * clause then decides independently whether it receives feedback. */
template<class Streams>
int apply_model_feedback( class_model& m, const tm_config& cfg, const feedback_plan& plan, feedback_role role, const Streams& streams, train_scratch& scratch, train_step_stats& stats )
{
  const uint32_t count = static_cast<uint32_t>( m.clauses.size() );
  const uint32_t h = m.half();
  scratch.outputs.resize( count );
  int v = 0;
  for ( uint32_t j = 0; j < count; ++j )
  {
    const int out = clause_eval( m.clauses[j], *scratch.lits.doc, eval_mode::train );
    scratch.outputs[j] = static_cast<uint8_t>( out );
    v += j < h ? out : -out;
  }

  const int t = cfg.threshold;
  const int vc = std::clamp( v, -t, t );
  const double p = role == feedback_role::target
                       ? static_cast<double>( t - vc ) / ( 2.0 * t )
                       : static_cast<double>( t + vc ) / ( 2.0 * t );

  for ( uint32_t j = 0; j < count; ++j )
  {
    auto rng = streams.clause_rng( m.class_id, j );
    if ( !decide( p, rng ) )
      continue;
    clause& c = m.clauses[j];
    const bool positive = j < h;
    const bool wants_type_i = positive == ( role == feedback_role::target );
    if ( wants_type_i )
    {
      const int out = scratch.outputs[j];
      if constexpr ( std::is_same_v<decltype( rng ), split_mix64> )
        type_i_sampled( c, scratch.lits, plan, rng, out, scratch.sampled );
      else
        type_i_literalwise( c, scratch.lits, plan, rng, out );
      ++( out ? stats.type_ia : stats.type_ib );
    }
    else if ( scratch.outputs[j] )
    {
      type_ii_apply( c, scratch.lits );
      ++stats.type_ii;
    }
  }
  return v;
}

} // namespace detail

/*! One stochastic update on one labelled document.
 *
 * The document's class model is pushed toward a positive vote margin
 * (positive clauses get Type I, negative ones Type II).  One other class,
 * sampled uniformly, is pushed the opposite way.  A single model acts as
 * a binary machine: label 1 plays the target role, label 0 the opposite.
 */
template<class Streams>
train_step_stats train_step( std::span<class_model> models, const boolean_document& doc, const tm_config& cfg, const feedback_plan& plan, const Streams& streams, train_scratch& scratch )
{
  if ( doc.label == no_label )
    throw std::invalid_argument( "train_step: unlabelled document" );
  scratch.lits.assign( doc );

  train_step_stats stats;
  if ( models.size() == 1 )
  {
    if ( doc.label != 0 && doc.label != 1 )
      throw std::invalid_argument( "train_step: binary machine needs labels in {0, 1}" );
    const auto role = doc.label == 1 ? detail::feedback_role::target : detail::feedback_role::opposite;
    stats.target_sum = detail::apply_model_feedback( models[0], cfg, plan, role, streams, scratch, stats );
    return stats;
  }

  size_t target = models.size();
  for ( size_t i = 0; i < models.size(); ++i )
    if ( models[i].class_id == doc.label )
      target = i;
  if ( target == models.size() )
    throw std::invalid_argument( "train_step: no model for label " + std::to_string( doc.label ) );

  size_t other;
  if ( models.size() == 2 )
  {
    other = 1 - target;
  }
  else
  {
    auto rng = streams.step_rng();
    other = rng.uniform_below( models.size() - 1 );
    if ( other >= target )
      ++other;
  }

  stats.target_sum = detail::apply_model_feedback( models[target], cfg, plan, detail::feedback_role::target, streams, scratch, stats );
  stats.other_sum = detail::apply_model_feedback( models[other], cfg, plan, detail::feedback_role::opposite, streams, scratch, stats );
  return stats;
}

struct fit_options
{
  const std::vector<boolean_document>* eval_docs = nullptr;
  int positive_class = 1;
  bool record_train_metrics = false;
  std::function<void( uint32_t, const epoch_metrics& )> on_epoch;
};

/*! Epoch loop: shuffles the corpus deterministically, applies train_step
 *  per document, and records test (and optionally train) metrics after
 *  each epoch when an evaluation set is supplied.
 */
inline fit_trace fit( std::vector<class_model>& models, const std::vector<boolean_document>& docs, const tm_config& cfg, const fit_options& opt = {} )
{
  validate( cfg );
  if ( docs.empty() )
    throw std::invalid_argument( "fit: empty corpus" );
  const feedback_plan plan = feedback_plan::from_s( cfg.s );
  train_scratch scratch;
  fit_trace trace;

  std::vector<uint32_t> order( docs.size() );
  std::iota( order.begin(), order.end(), 0 );

  for ( uint32_t epoch = 0; epoch < cfg.epochs; ++epoch )
  {
    split_mix64 shuffle_rng( mix_stream( cfg.seed, detail::tag_shuffle, epoch ) );
    deterministic_shuffle( order, shuffle_rng );
    for ( uint32_t i = 0; i < order.size(); ++i )
    {
      deterministic_streams streams{ cfg.seed, epoch, i };
      train_step( std::span<class_model>( models ), docs[order[i]], cfg, plan, streams, scratch );
    }
    if ( opt.eval_docs )
    {
      epoch_metrics em;
      const metrics test = evaluate( models, *opt.eval_docs, opt.positive_class );
      em.test_accuracy = test.accuracy;
      em.test_f1 = test.f1;
      if ( opt.record_train_metrics )
      {
        const metrics tr = evaluate( models, docs, opt.positive_class );
        em.train_accuracy = tr.accuracy;
        em.train_f1 = tr.f1;
      }
      if ( opt.on_epoch )
        opt.on_epoch( epoch, em );
      trace.epochs.push_back( em );
    }
  }
  return trace;
}

} // namespace tsetlin
