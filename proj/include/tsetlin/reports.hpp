#pragma once

#include "eval.hpp"
#include "explain.hpp"
#include "pipeline.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace tsetlin
{

/* JSON views of the protocol artefacts.  Shapes are part of the CLI
 * contract; training traces are embedded so every reported aggregate can
 * be recomputed from the report alone. */

inline nlohmann::json to_json( const epoch_metrics& em )
{
  nlohmann::json j{ { "test_accuracy", em.test_accuracy }, { "test_f1", em.test_f1 } };
  if ( em.train_accuracy >= 0.0 )
  {
    j["train_accuracy"] = em.train_accuracy;
    j["train_f1"] = em.train_f1;
  }
  return j;
}

inline nlohmann::json to_json( const repetition_summary& r )
{
  nlohmann::json trace = nlohmann::json::array();
  for ( const auto& em : r.trace.epochs )
    trace.push_back( to_json( em ) );
  return { { "seed", r.seed },
           { "final_accuracy", r.final_accuracy },
           { "final_f1", r.final_f1 },
           { "stable_accuracy", r.stable_accuracy },
           { "stable_f1", r.stable_f1 },
           { "trace", std::move( trace ) } };
}

inline nlohmann::json to_json( const run_report& rep, bool include_wall_clock = true )
{
  nlohmann::json reps = nlohmann::json::array();
  for ( const auto& r : rep.repetitions )
    reps.push_back( to_json( r ) );
  nlohmann::json j{ { "stable_epochs", rep.stable_epochs },
                    { "repetitions", std::move( reps ) },
                    { "ensemble", { { "accuracy", rep.ensemble_accuracy }, { "f1", rep.ensemble_f1 }, { "final_accuracy", rep.final_mean_accuracy }, { "final_f1", rep.final_mean_f1 } } } };
  if ( include_wall_clock )
    j["wall_clock_seconds"] = rep.wall_clock_seconds;
  return j;
}

inline nlohmann::json to_json( const experiment_config& cfg )
{
  return { { "cleaning",
             { { "strip_punctuation", cfg.cleaning.strip_punctuation },
               { "strip_hyperlinks", cfg.cleaning.strip_hyperlinks },
               { "strip_emojis", cfg.cleaning.strip_emojis },
               { "strip_stopwords", cfg.cleaning.strip_stopwords },
               { "lemmatize", cfg.cleaning.lemmatize },
               { "stopword_list", cfg.cleaning.stopword_list } } },
           { "selection",
             { { "method", cfg.selection.method == text::selection_method::chi2 ? "chi2" : "frequency" },
               { "k", cfg.selection.k } } },
           { "split", { { "train_fraction", cfg.train_fraction }, { "stratified", cfg.stratified } } },
           { "machine",
             { { "clauses", cfg.tm.clauses },
               { "threshold", cfg.tm.threshold },
               { "s", cfg.tm.s },
               { "states_per_action", cfg.tm.states_per_action },
               { "epochs", cfg.tm.epochs },
               { "seed", cfg.tm.seed } } },
           { "repeats", cfg.repeats },
           { "stable_epochs", cfg.stable_epochs } };
}

inline nlohmann::json to_json( const clause_rule& r )
{
  nlohmann::json lits = nlohmann::json::array();
  for ( const auto& l : r.literals )
    lits.push_back( { { "token", l.token }, { "negated", l.negated } } );
  return { { "class", r.class_id },
           { "polarity", r.pol == polarity::positive ? "positive" : "negative" },
           { "clause", r.clause_index },
           { "inactive", r.inactive() },
           { "literals", std::move( lits ) },
           { "text", to_string( r ) } };
}

inline nlohmann::json to_json( const local_explanation& ex )
{
  nlohmann::json sums = nlohmann::json::object();
  nlohmann::json votes = nlohmann::json::object();
  for ( const auto& [cls, v] : ex.pred.sums.by_class )
    sums[std::to_string( cls )] = v;
  for ( const auto& [cls, v] : ex.votes )
    votes[std::to_string( cls )] = { { "positive_fired", v.positive_fired }, { "negative_fired", v.negative_fired } };
  nlohmann::json clauses = nlohmann::json::array();
  for ( const auto& a : ex.clauses )
    clauses.push_back( to_json( a.rule ) );
  return { { "predicted_class", ex.pred.class_id },
           { "vote_sums", std::move( sums ) },
           { "votes", std::move( votes ) },
           { "credibility", ex.q },
           { "activated_clauses", std::move( clauses ) } };
}

inline nlohmann::json to_json( const std::vector<class_literals>& table )
{
  nlohmann::json j = nlohmann::json::array();
  for ( const auto& cl : table )
  {
    nlohmann::json plain = nlohmann::json::array(), negated = nlohmann::json::array();
    for ( const auto& row : cl.plain )
      plain.push_back( { { "token", row.token }, { "count", row.count } } );
    for ( const auto& row : cl.negated )
      negated.push_back( { { "token", row.token }, { "count", row.count } } );
    j.push_back( { { "class", cl.class_id }, { "plain", std::move( plain ) }, { "negated", std::move( negated ) } } );
  }
  return j;
}

/* Literal tables as CSV: class, plain|negated, token, count. */
inline void write_literal_table_csv( const std::vector<class_literals>& table, std::ostream& out )
{
  out << "class,kind,token,count\n";
  for ( const auto& cl : table )
  {
    for ( const auto& row : cl.plain )
      out << cl.class_id << ",plain," << row.token << ',' << row.count << '\n';
    for ( const auto& row : cl.negated )
      out << cl.class_id << ",negated," << row.token << ',' << row.count << '\n';
  }
}

inline void write_json( const nlohmann::json& j, const std::string& path )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
    throw std::runtime_error( "cannot write report file: " + path );
  out << j.dump( 2 ) << '\n';
  if ( !out.flush() )
    throw std::runtime_error( "failed writing report file: " + path );
}

} // namespace tsetlin
