#pragma once

#include "data/corpus.hpp"
#include "data/split.hpp"
#include "eval.hpp"
#include "serialization.hpp"
#include "text/booleanize.hpp"
#include "text/cleaning.hpp"
#include "text/feature_select.hpp"
#include "train.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

namespace tsetlin
{

/*! End-to-end protocol: tokenize once, then per repetition re-split the
 *  corpus, re-select the vocabulary on the train half only, re-initialise
 *  the machine with a fresh seed, and train with per-epoch test metrics.
 */
struct experiment_config
{
  text::cleaning_config cleaning;
  text::selection_spec selection;
  double train_fraction = 0.75;
  bool stratified = false;
  tm_config tm;
  int repeats = 5;
  int stable_epochs = 50;
  bool record_train_metrics = false;
  bool progress = false; /* epoch lines on stderr */
};

struct prepared_corpus
{
  data::source_site source = data::source_site::politifact;
  std::vector<std::vector<std::string>> tokens; /* title + body */
  std::vector<int> labels;
  std::vector<std::string> ids;
};

inline prepared_corpus tokenize_corpus( const data::corpus& c, const text::cleaning_config& cleaning )
{
  prepared_corpus p;
  p.source = c.source;
  p.tokens.reserve( c.records.size() );
  p.labels.reserve( c.records.size() );
  p.ids.reserve( c.records.size() );
  for ( const auto& r : c.records )
  {
    p.tokens.push_back( text::clean_and_tokenize( r.title + " " + r.text, cleaning ) );
    p.labels.push_back( r.label );
    p.ids.push_back( r.id );
  }
  return p;
}

struct trained_run
{
  model_bundle bundle;
  fit_trace trace;
  data::split_result split;
  uint64_t seed = 0;
};

/* Repetition r trains with seed base + r; the split and the automata use
 * disjoint streams derived from that one number. */
inline trained_run train_once( const prepared_corpus& corpus, const experiment_config& cfg, int repetition )
{
  trained_run run;
  run.seed = cfg.tm.seed + static_cast<uint64_t>( repetition );

  data::split_spec spl{ cfg.train_fraction, run.seed, cfg.stratified };
  run.split = data::make_split( corpus.tokens.size(), &corpus.labels, spl );

  std::vector<std::vector<std::string>> train_tokens;
  std::vector<int> train_labels;
  train_tokens.reserve( run.split.train.size() );
  for ( size_t idx : run.split.train )
  {
    train_tokens.push_back( corpus.tokens[idx] );
    train_labels.push_back( corpus.labels[idx] );
  }

  text::vocabulary vocab = text::select_features( train_tokens, train_labels, cfg.selection );

  std::vector<boolean_document> train_docs = text::booleanize_corpus( train_tokens, train_labels, vocab );
  std::vector<boolean_document> test_docs;
  test_docs.reserve( run.split.test.size() );
  for ( size_t idx : run.split.test )
    test_docs.push_back( text::booleanize( corpus.tokens[idx], vocab, corpus.labels[idx] ) );

  tm_config tm = cfg.tm;
  tm.seed = run.seed;
  tm.features = vocab.size();

  std::vector<class_model> models = make_models( tm, 2 );
  fit_options opt;
  opt.eval_docs = &test_docs;
  opt.positive_class = data::fake_label;
  opt.record_train_metrics = cfg.record_train_metrics;
  if ( cfg.progress )
  {
    opt.on_epoch = [repetition]( uint32_t epoch, const epoch_metrics& em ) {
      std::fprintf( stderr, "[rep %d] epoch %u: test acc %.4f f1 %.4f\n", repetition, epoch + 1, em.test_accuracy, em.test_f1 );
    };
  }
  run.trace = fit( models, train_docs, tm, opt );

  run.bundle.config = tm;
  run.bundle.cleaning = cfg.cleaning;
  run.bundle.selection = cfg.selection;
  run.bundle.vocab = std::move( vocab );
  run.bundle.models = std::move( models );
  return run;
}

inline run_report run_experiment( const prepared_corpus& corpus, const experiment_config& cfg )
{
  const auto started = std::chrono::steady_clock::now();
  std::vector<repetition_summary> reps;
  reps.reserve( cfg.repeats );
  for ( int r = 0; r < cfg.repeats; ++r )
  {
    trained_run run = train_once( corpus, cfg, r );
    reps.push_back( summarise_trace( run.seed, std::move( run.trace ), cfg.stable_epochs ) );
  }
  run_report report = ensemble_report( std::move( reps ), cfg.stable_epochs );
  report.wall_clock_seconds = std::chrono::duration<double>( std::chrono::steady_clock::now() - started ).count();
  return report;
}

} // namespace tsetlin
