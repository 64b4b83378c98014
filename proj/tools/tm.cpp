/* Command-line surface: train and evaluate fake-news classifiers, rank
 * predictions by credibility, explain models and predictions, and export
 * plot-ready data.  Every command exits 0 on success and prints a single
 * "error: ..." line to stderr otherwise (2 for flag errors, 1 for
 * everything else). */

#include <tsetlin/reports.hpp>
#include <tsetlin/tsetlin.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace
{

using namespace tsetlin;

struct train_flags
{
  std::string data;
  std::string source = "politifact";
  std::string selection = "chi2";
  std::string stopwords = "english-v1";
  std::string preset;
  uint32_t clauses = 10000;
  int threshold = 200;
  double s = 25.0;
  uint32_t epochs = 200;
  uint32_t features = 20000;
  uint64_t seed = 42;
  double train_fraction = 0.75;
  bool stratified = false;
  bool no_lemmatize = false;
  bool strict = false;
  bool progress = false;
};

/* Shared hyperparameter flags for the commands that train machines. */
void add_train_flags( CLI::App& cmd, train_flags& f )
{
  cmd.add_option( "--data", f.data, "labelled article CSV (id,title,text,label)" )->required();
  cmd.add_option( "--source", f.source, "dataset label: politifact or gossipcop" )
      ->check( CLI::IsMember( { "politifact", "gossipcop" } ) );
  cmd.add_option( "--clauses", f.clauses, "clauses per class (default 10000)" );
  cmd.add_option( "--threshold", f.threshold, "voting margin T (default 200)" );
  cmd.add_option( "--s", f.s, "specificity s > 1 (default 25)" );
  cmd.add_option( "--epochs", f.epochs, "training epochs (default 200)" );
  cmd.add_option( "--features", f.features, "vocabulary size to select (default 20000)" );
  cmd.add_option( "--selection", f.selection, "feature selection: chi2 or frequency" )
      ->check( CLI::IsMember( { "chi2", "frequency" } ) );
  cmd.add_option( "--seed", f.seed, "base random seed (default 42)" );
  cmd.add_option( "--train-fraction", f.train_fraction, "train share of the split (default 0.75)" )
      ->check( CLI::Range( 0.0, 1.0 ) );
  cmd.add_flag( "--stratified", f.stratified, "hold class proportions in the split" );
  cmd.add_option( "--stopwords", f.stopwords, "stopword list: english-v1 or none" )
      ->check( CLI::IsMember( { "english-v1", "none" } ) );
  cmd.add_flag( "--no-lemmatize", f.no_lemmatize, "skip suffix stemming" );
  cmd.add_flag( "--strict", f.strict, "reject files with malformed rows" );
  cmd.add_flag( "--progress", f.progress, "per-epoch metrics on stderr" );
  cmd.add_option( "--preset", f.preset, "hyperparameter preset: desk (2000 clauses, T=80, 5000 features, 100 epochs)" )
      ->check( CLI::IsMember( { "desk" } ) );
  cmd.set_config( "--config", "", "read flags from a config file" );
}

experiment_config to_experiment( const CLI::App& cmd, const train_flags& f )
{
  train_flags eff = f;
  if ( f.preset == "desk" )
  {
    /* preset fills whatever the user left untouched */
    if ( cmd.count( "--clauses" ) == 0 )
      eff.clauses = 2000;
    if ( cmd.count( "--threshold" ) == 0 )
      eff.threshold = 80;
    if ( cmd.count( "--features" ) == 0 )
      eff.features = 5000;
    if ( cmd.count( "--epochs" ) == 0 )
      eff.epochs = 100;
  }

  experiment_config cfg;
  cfg.cleaning.stopword_list = eff.stopwords;
  cfg.cleaning.strip_stopwords = eff.stopwords != "none";
  cfg.cleaning.lemmatize = !eff.no_lemmatize;
  cfg.selection.method = eff.selection == "chi2" ? text::selection_method::chi2 : text::selection_method::frequency;
  cfg.selection.k = eff.features;
  cfg.train_fraction = eff.train_fraction;
  cfg.stratified = eff.stratified;
  cfg.tm.clauses = eff.clauses;
  cfg.tm.threshold = eff.threshold;
  cfg.tm.s = eff.s;
  cfg.tm.epochs = eff.epochs;
  cfg.tm.seed = eff.seed;
  cfg.progress = eff.progress;
  if ( cfg.selection.k < 1 )
    throw std::invalid_argument( "config: --features must be >= 1" );
  /* feature count is fixed by selection later; validate the rest now */
  tm_config check = cfg.tm;
  check.features = cfg.selection.k;
  validate( check );
  return cfg;
}

data::corpus load_data( const train_flags& f )
{
  return data::load_corpus( f.data, data::source_from_string( f.source ), f.strict );
}

void write_text( const std::string& path, const std::string& content )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
    throw std::runtime_error( "cannot write file: " + path );
  out << content;
  if ( !out.flush() )
    throw std::runtime_error( "failed writing file: " + path );
}

void emit( const nlohmann::json& j, const std::string& out_path )
{
  if ( out_path.empty() )
    std::cout << j.dump( 2 ) << '\n';
  else
    write_json( j, out_path );
}

/* ---------------------------------------------------------------- train */

int cmd_train( const CLI::App& cmd, const train_flags& f, const std::string& out,
               const std::string& report_path, const std::string& vocab_out )
{
  const experiment_config cfg = to_experiment( cmd, f );
  const data::corpus corpus = load_data( f );
  const prepared_corpus prepared = tokenize_corpus( corpus, cfg.cleaning );

  trained_run run = train_once( prepared, cfg, 0 );
  save_model( run.bundle, out );

  auto ids_of = [&]( const std::vector<size_t>& part ) {
    std::vector<std::string> ids;
    ids.reserve( part.size() );
    for ( size_t idx : part )
      ids.push_back( prepared.ids[idx] );
    return ids;
  };
  data::save_split_manifest( out + ".train-ids", run.seed, ids_of( run.split.train ) );
  data::save_split_manifest( out + ".test-ids", run.seed, ids_of( run.split.test ) );
  if ( !vocab_out.empty() )
    text::save_vocabulary( run.bundle.vocab, vocab_out );

  nlohmann::json summary{
    { "model", out },
    { "source", data::to_string( prepared.source ) },
    { "documents", prepared.ids.size() },
    { "train_documents", run.split.train.size() },
    { "test_documents", run.split.test.size() },
    { "skipped_rows", corpus.skipped.size() },
    { "features", run.bundle.vocab.size() },
    { "seed", run.seed },
    { "config", to_json( cfg ) },
  };
  if ( !run.trace.epochs.empty() )
  {
    summary["final_test_accuracy"] = run.trace.epochs.back().test_accuracy;
    summary["final_test_f1"] = run.trace.epochs.back().test_f1;
  }
  if ( !report_path.empty() )
  {
    nlohmann::json report = summary;
    nlohmann::json trace = nlohmann::json::array();
    for ( const auto& em : run.trace.epochs )
      trace.push_back( to_json( em ) );
    report["trace"] = std::move( trace );
    write_json( report, report_path );
  }
  std::cout << summary.dump( 2 ) << '\n';
  return 0;
}

/* ----------------------------------------------------------------- eval */

int cmd_eval( const CLI::App& cmd, const train_flags& f, const std::string& model_path,
              int repeats, int stable, const std::string& out_path )
{
  if ( repeats < 1 )
    throw std::runtime_error( "eval: --repeats must be at least 1" );

  experiment_config cfg;
  if ( !model_path.empty() )
  {
    /* a model file pins the full configuration; flags still override */
    const model_bundle bundle = load_model( model_path );
    cfg.cleaning = bundle.cleaning;
    cfg.selection = bundle.selection;
    cfg.tm = bundle.config;
    cfg.tm.features = 0; /* re-selected per repetition */
    if ( cmd.count( "--seed" ) )
      cfg.tm.seed = f.seed;
    if ( cmd.count( "--epochs" ) )
      cfg.tm.epochs = f.epochs;
    cfg.train_fraction = f.train_fraction;
    cfg.stratified = f.stratified;
    cfg.progress = f.progress;
  }
  else
  {
    cfg = to_experiment( cmd, f );
  }
  cfg.repeats = repeats;
  cfg.stable_epochs = std::min<int>( stable, static_cast<int>( cfg.tm.epochs ) );

  const data::corpus corpus = load_data( f );
  const prepared_corpus prepared = tokenize_corpus( corpus, cfg.cleaning );
  const run_report report = run_experiment( prepared, cfg );

  nlohmann::json j = to_json( report );
  j["config"] = to_json( cfg );
  j["source"] = data::to_string( prepared.source );
  j["documents"] = prepared.ids.size();
  emit( j, out_path );
  return 0;
}

/* ------------------------------------------------------- predict / rank */

std::vector<ranked_prediction> score_documents( const model_bundle& bundle, const data::corpus& corpus, double k )
{
  if ( bundle.models.size() != 2 )
    throw std::runtime_error( "scoring needs the two-class fake/true machine, this model has " + std::to_string( bundle.models.size() ) + " classes" );
  std::vector<ranked_prediction> preds;
  preds.reserve( corpus.records.size() );
  for ( const auto& rec : corpus.records )
  {
    const auto tokens = text::clean_and_tokenize( rec.title + " " + rec.text, bundle.cleaning );
    const boolean_document doc = text::booleanize( tokens, bundle.vocab, rec.label );
    const prediction p = predict_multiclass( bundle.models, doc );
    ranked_prediction rp;
    rp.doc_id = rec.id;
    rp.predicted_class = p.class_id;
    rp.votes_fake = p.sums.at( data::fake_label );
    rp.votes_true = p.sums.at( data::real_label );
    rp.q = credibility_score( rp.votes_fake, rp.votes_true, k );
    preds.push_back( std::move( rp ) );
  }
  return preds;
}

std::string prediction_csv( const std::vector<ranked_prediction>& preds )
{
  std::ostringstream out;
  out << "doc_id,predicted_label,vF,vT,Q\n";
  out.precision( 10 );
  for ( const auto& p : preds )
    out << p.doc_id << ',' << ( p.predicted_class == data::fake_label ? "fake" : "real" ) << ','
        << p.votes_fake << ',' << p.votes_true << ',' << p.q << '\n';
  return out.str();
}

int cmd_predict( const std::string& model_path, const train_flags& f, double k, const std::string& out_path )
{
  const model_bundle bundle = load_model( model_path );
  const data::corpus corpus = load_data( f );
  const std::string csv = prediction_csv( score_documents( bundle, corpus, k ) );
  if ( out_path.empty() )
    std::cout << csv;
  else
    write_text( out_path, csv );
  return 0;
}

int cmd_rank( const std::string& model_path, const train_flags& f, double k, double min_credibility, const std::string& out_path )
{
  const model_bundle bundle = load_model( model_path );
  const data::corpus corpus = load_data( f );
  auto preds = score_documents( bundle, corpus, k );
  const size_t scored = preds.size();
  preds = rank_fake( std::move( preds ), data::fake_label, min_credibility );
  const std::string csv = prediction_csv( preds );
  if ( out_path.empty() )
    std::cout << csv;
  else
    write_text( out_path, csv );
  std::fprintf( stderr, "kept %zu of %zu documents at credibility >= %g\n", preds.size(), scored, min_credibility );
  return 0;
}

/* -------------------------------------------------------------- explain */

int cmd_explain_global( const model_bundle& bundle, uint32_t top, const std::string& format,
                        const std::string& out_path, const std::string& rules_out )
{
  const auto table = literal_frequency_table( bundle.models, bundle.vocab, top );
  if ( !rules_out.empty() )
  {
    std::ostringstream lines;
    for ( const auto& r : extract_rules( bundle.models, bundle.vocab ) )
      lines << "class " << r.class_id << ( r.pol == polarity::positive ? " +" : " -" )
            << " clause " << r.clause_index << ": " << to_string( r ) << '\n';
    write_text( rules_out, lines.str() );
  }
  if ( format == "csv" )
  {
    std::ostringstream csv;
    write_literal_table_csv( table, csv );
    if ( out_path.empty() )
      std::cout << csv.str();
    else
      write_text( out_path, csv.str() );
    return 0;
  }

  size_t inactive = 0, total = 0;
  for ( const auto& m : bundle.models )
    for ( const auto& c : m.clauses )
    {
      ++total;
      inactive += c.empty();
    }
  nlohmann::json j{
    { "literal_table", to_json( table ) },
    { "negated_include_fraction", negated_include_fraction( bundle.models ) },
    { "clauses", total },
    { "inactive_clauses", inactive },
    { "features", bundle.vocab.size() },
  };
  emit( j, out_path );
  return 0;
}

int cmd_explain_doc( const model_bundle& bundle, const train_flags& f, const std::string& doc_id,
                     uint32_t top, double k, const std::string& out_path )
{
  const data::corpus corpus = load_data( f );
  const data::article_record* found = nullptr;
  for ( const auto& rec : corpus.records )
    if ( rec.id == doc_id )
    {
      found = &rec;
      break;
    }
  if ( !found )
    throw std::runtime_error( "document id not found in " + f.data + ": " + doc_id );

  const auto tokens = text::clean_and_tokenize( found->title + " " + found->text, bundle.cleaning );
  const boolean_document doc = text::booleanize( tokens, bundle.vocab, found->label );
  explain_options opt;
  opt.top = top;
  opt.k = k;
  opt.fake_class = data::fake_label;
  opt.true_class = data::real_label;
  const local_explanation ex = explain_prediction( bundle.models, doc, bundle.vocab, opt );

  nlohmann::json j = to_json( ex );
  j["doc_id"] = found->id;
  j["label"] = found->label == data::fake_label ? "fake" : "real";
  j["predicted_label"] = ex.pred.class_id == data::fake_label ? "fake" : "real";
  emit( j, out_path );
  return 0;
}

/* ------------------------------------------------------ export-plot-data */

int cmd_export_plot( const std::string& ranked_path, const std::string& out_path )
{
  std::ifstream in( ranked_path, std::ios::binary );
  if ( !in )
    throw std::runtime_error( "cannot open ranked file: " + ranked_path );
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto rows = data::detail::parse_csv( buf.str() );
  if ( rows.empty() )
    throw std::runtime_error( ranked_path + ": empty file" );

  size_t q_col = rows.front().fields.size();
  for ( size_t i = 0; i < rows.front().fields.size(); ++i )
    if ( data::detail::trim_lower( rows.front().fields[i] ) == "q" )
      q_col = i;
  if ( q_col == rows.front().fields.size() )
    throw std::runtime_error( ranked_path + ": missing required column 'Q'" );

  std::vector<double> qs;
  for ( size_t r = 1; r < rows.size(); ++r )
  {
    const auto& field = rows[r].fields.at( q_col );
    size_t used = 0;
    const double q = std::stod( field, &used );
    if ( used != field.size() )
      throw std::runtime_error( ranked_path + ":" + std::to_string( rows[r].line ) + ": bad credibility value '" + field + "'" );
    qs.push_back( q );
  }
  std::sort( qs.rbegin(), qs.rend() );

  std::ostringstream out;
  out << "index,Q\n";
  out.precision( 10 );
  for ( size_t i = 0; i < qs.size(); ++i )
    out << i << ',' << qs[i] << '\n';
  if ( out_path.empty() )
    std::cout << out.str();
  else
    write_text( out_path, out.str() );
  return 0;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Tsetlin-machine fake news classifier" };
  app.require_subcommand( 1 );

  train_flags tf;
  auto* train = app.add_subcommand( "train", "train one machine and save it" );
  add_train_flags( *train, tf );
  std::string train_out, train_report, train_vocab;
  train->add_option( "--out", train_out, "model output path (TMV1)" )->required();
  train->add_option( "--report", train_report, "also write a JSON report with the epoch trace" );
  train->add_option( "--vocab-out", train_vocab, "write the selected vocabulary as token<TAB>index" );

  train_flags ef;
  auto* eval = app.add_subcommand( "eval", "run the repeated train/test protocol and report ensemble metrics" );
  add_train_flags( *eval, ef );
  std::string eval_model, eval_out;
  int eval_repeats = 5, eval_stable = 50;
  eval->add_option( "--model", eval_model, "take hyperparameters from a trained model file" );
  eval->add_option( "--repeats", eval_repeats, "independent repetitions (default 5)" );
  eval->add_option( "--stable", eval_stable, "trailing epochs averaged per repetition (default 50)" );
  eval->add_option( "--out", eval_out, "write the report JSON here instead of stdout" );

  train_flags pf;
  auto* predict = app.add_subcommand( "predict", "score every document with a trained model" );
  std::string predict_model, predict_out;
  double predict_k = 0.012;
  predict->add_option( "--model", predict_model, "trained model file" )->required();
  predict->add_option( "--data", pf.data, "labelled article CSV" )->required();
  predict->add_option( "--source", pf.source, "dataset label" )->check( CLI::IsMember( { "politifact", "gossipcop" } ) );
  predict->add_flag( "--strict", pf.strict, "reject files with malformed rows" );
  predict->add_option( "--k", predict_k, "logistic growth rate (default 0.012)" )->check( CLI::PositiveNumber );
  predict->add_option( "--out", predict_out, "output CSV path (stdout when omitted)" );

  train_flags rf;
  auto* rank = app.add_subcommand( "rank", "rank fake-news calls by credibility" );
  std::string rank_model, rank_out;
  double rank_k = 0.012, rank_min = 0.8;
  rank->add_option( "--model", rank_model, "trained model file" )->required();
  rank->add_option( "--data", rf.data, "labelled article CSV" )->required();
  rank->add_option( "--source", rf.source, "dataset label" )->check( CLI::IsMember( { "politifact", "gossipcop" } ) );
  rank->add_flag( "--strict", rf.strict, "reject files with malformed rows" );
  rank->add_option( "--k", rank_k, "logistic growth rate (default 0.012)" )->check( CLI::PositiveNumber );
  rank->add_option( "--min-credibility", rank_min, "keep documents with Q at or above this (default 0.8)" )
      ->check( CLI::Range( 0.0, 1.0 ) );
  rank->add_option( "--out", rank_out, "output CSV path (stdout when omitted)" );

  train_flags xf;
  auto* explain = app.add_subcommand( "explain", "decode a model into rules and literal tables" );
  std::string explain_model, explain_doc, explain_out, explain_rules, explain_format = "json";
  bool explain_global = false;
  uint32_t explain_top = 10;
  double explain_k = 0.012;
  explain->add_option( "--model", explain_model, "trained model file" )->required();
  explain->add_flag( "--global", explain_global, "summarise the whole model" );
  explain->add_option( "--doc", explain_doc, "explain one document id (needs --data)" );
  explain->add_option( "--data", xf.data, "labelled article CSV for --doc" );
  explain->add_option( "--source", xf.source, "dataset label" )->check( CLI::IsMember( { "politifact", "gossipcop" } ) );
  explain->add_option( "--top", explain_top, "rows per table column / clauses per class (default 10)" )
      ->check( CLI::PositiveNumber );
  explain->add_option( "--k", explain_k, "logistic growth rate (default 0.012)" )->check( CLI::PositiveNumber );
  explain->add_option( "--format", explain_format, "global output format: json or csv" )
      ->check( CLI::IsMember( { "json", "csv" } ) );
  explain->add_option( "--rules-out", explain_rules, "write every clause as a text rule to this file" );
  explain->add_option( "--out", explain_out, "output path (stdout when omitted)" );

  auto* plot = app.add_subcommand( "export-plot-data", "turn a ranked CSV into an (index, Q) series" );
  std::string plot_ranked, plot_out;
  plot->add_option( "--ranked", plot_ranked, "ranked CSV from the rank command" )->required();
  plot->add_option( "--out", plot_out, "output CSV path (stdout when omitted)" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::CallForHelp& e )
  {
    return app.exit( e );
  }
  catch ( const CLI::CallForAllHelp& e )
  {
    return app.exit( e );
  }
  catch ( const CLI::ParseError& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try
  {
    if ( app.got_subcommand( train ) )
      return cmd_train( *train, tf, train_out, train_report, train_vocab );
    if ( app.got_subcommand( eval ) )
      return cmd_eval( *eval, ef, eval_model, eval_repeats, eval_stable, eval_out );
    if ( app.got_subcommand( predict ) )
      return cmd_predict( predict_model, pf, predict_k, predict_out );
    if ( app.got_subcommand( rank ) )
      return cmd_rank( rank_model, rf, rank_k, rank_min, rank_out );
    if ( app.got_subcommand( explain ) )
    {
      if ( explain_global == !explain_doc.empty() )
        throw std::runtime_error( "explain: pass exactly one of --global or --doc ID" );
      const model_bundle bundle = load_model( explain_model );
      if ( explain_global )
        return cmd_explain_global( bundle, explain_top, explain_format, explain_out, explain_rules );
      if ( xf.data.empty() )
        throw std::runtime_error( "explain: --doc needs --data to locate the document" );
      return cmd_explain_doc( bundle, xf, explain_doc, explain_top, explain_k, explain_out );
    }
    if ( app.got_subcommand( plot ) )
      return cmd_export_plot( plot_ranked, plot_out );
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
