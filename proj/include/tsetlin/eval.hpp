#pragma once

#include "model.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace tsetlin
{

struct confusion
{
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  int64_t tn = 0;

  int64_t total() const { return tp + fp + fn + tn; }
};

struct metrics
{
  double accuracy = 0.0;
  double f1 = 0.0;
  confusion cm;
};

inline double f1_from( const confusion& c )
{
  const double denom = 2.0 * static_cast<double>( c.tp ) + static_cast<double>( c.fp ) + static_cast<double>( c.fn );
  if ( denom == 0.0 )
    return 0.0; /* no positives anywhere: define F1 as 0 */
  return 2.0 * static_cast<double>( c.tp ) / denom;
}

/*! Accuracy and F1 over labelled documents.
 *
 * One model: thresholded vote sum against binary labels.  Several models:
 * argmax prediction.  F1 treats `positive_class` as the positive label.
 */
inline metrics evaluate( std::span<const class_model> models, std::span<const boolean_document> docs, int positive_class )
{
  if ( docs.empty() )
    throw std::invalid_argument( "evaluate: empty document set" );
  confusion cm;
  int64_t correct = 0;
  for ( const auto& d : docs )
  {
    if ( d.label == no_label )
      throw std::invalid_argument( "evaluate: unlabelled document" );
    /* one model: binary machine over labels {0, 1} */
    const int predicted = models.size() == 1 ? predict_binary( models[0], d )
                                             : predict_multiclass( models, d ).class_id;
    if ( predicted == d.label )
      ++correct;
    const bool pred_pos = predicted == positive_class;
    const bool is_pos = d.label == positive_class;
    if ( pred_pos && is_pos )
      ++cm.tp;
    else if ( pred_pos && !is_pos )
      ++cm.fp;
    else if ( !pred_pos && is_pos )
      ++cm.fn;
    else
      ++cm.tn;
  }
  metrics m;
  m.cm = cm;
  m.accuracy = static_cast<double>( correct ) / static_cast<double>( docs.size() );
  m.f1 = f1_from( cm );
  return m;
}

struct epoch_metrics
{
  double test_accuracy = 0.0;
  double test_f1 = 0.0;
  double train_accuracy = -1.0; /* negative: not recorded */
  double train_f1 = -1.0;
};

struct fit_trace
{
  std::vector<epoch_metrics> epochs;
};

struct repetition_summary
{
  uint64_t seed = 0;
  double final_accuracy = 0.0;
  double final_f1 = 0.0;
  double stable_accuracy = 0.0; /* mean over the trailing stable window */
  double stable_f1 = 0.0;
  fit_trace trace;
};

/*! Protocol summary: per-repetition stable-window means and their
 *  ensemble average across repetitions.
 */
struct run_report
{
  int stable_epochs = 0;
  std::vector<repetition_summary> repetitions;
  double ensemble_accuracy = 0.0;
  double ensemble_f1 = 0.0;
  double final_mean_accuracy = 0.0;
  double final_mean_f1 = 0.0;
  double wall_clock_seconds = 0.0;
};

inline repetition_summary summarise_trace( uint64_t seed, fit_trace trace, int stable_epochs )
{
  if ( static_cast<int>( trace.epochs.size() ) < stable_epochs || stable_epochs < 1 )
    throw std::invalid_argument( "trace shorter than the stable window" );
  repetition_summary r;
  r.seed = seed;
  r.final_accuracy = trace.epochs.back().test_accuracy;
  r.final_f1 = trace.epochs.back().test_f1;
  double acc = 0.0, f1 = 0.0;
  const size_t from = trace.epochs.size() - static_cast<size_t>( stable_epochs );
  for ( size_t e = from; e < trace.epochs.size(); ++e )
  {
    acc += trace.epochs[e].test_accuracy;
    f1 += trace.epochs[e].test_f1;
  }
  r.stable_accuracy = acc / stable_epochs;
  r.stable_f1 = f1 / stable_epochs;
  r.trace = std::move( trace );
  return r;
}

inline run_report ensemble_report( std::vector<repetition_summary> reps, int stable_epochs )
{
  if ( reps.empty() )
    throw std::invalid_argument( "ensemble over zero repetitions" );
  run_report rep;
  rep.stable_epochs = stable_epochs;
  for ( const auto& r : reps )
  {
    rep.ensemble_accuracy += r.stable_accuracy;
    rep.ensemble_f1 += r.stable_f1;
    rep.final_mean_accuracy += r.final_accuracy;
    rep.final_mean_f1 += r.final_f1;
  }
  const double n = static_cast<double>( reps.size() );
  rep.ensemble_accuracy /= n;
  rep.ensemble_f1 /= n;
  rep.final_mean_accuracy /= n;
  rep.final_mean_f1 /= n;
  rep.repetitions = std::move( reps );
  return rep;
}

} // namespace tsetlin
