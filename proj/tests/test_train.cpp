#include <tsetlin/serialization.hpp>
#include <tsetlin/train.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <span>
#include <vector>

using namespace tsetlin;

namespace
{

clause fixed_clause( uint32_t width, std::vector<uint32_t> includes )
{
  clause c = make_clause( width, 127 );
  for ( auto& a : c.ta )
    a.state = 200;
  for ( uint32_t k : includes )
    c.ta[k].state = 60;
  c.rebuild_masks();
  return c;
}

boolean_document doc2( bool x1, bool x2, int label )
{
  std::vector<uint32_t> f;
  if ( x1 )
    f.push_back( 0 );
  if ( x2 )
    f.push_back( 1 );
  return make_document( 2, std::move( f ), label );
}

std::vector<uint8_t> flat_states( const class_model& m )
{
  std::vector<uint8_t> out;
  for ( const auto& c : m.clauses )
    for ( const auto& a : c.ta )
      out.push_back( a.state );
  return out;
}

std::vector<boolean_document> xor_corpus()
{
  return { doc2( false, false, 0 ), doc2( false, true, 1 ), doc2( true, false, 1 ), doc2( true, true, 0 ) };
}

} // namespace

TEST_CASE( "no feedback flows once the target margin is reached" )
{
  tm_config cfg;
  cfg.clauses = 4;
  cfg.threshold = 2;
  cfg.s = 2.0;
  cfg.features = 2;
  std::vector<class_model> models( 1 );
  models[0].class_id = 1;
  models[0].clauses = { fixed_clause( 2, { 0 } ), fixed_clause( 2, { 0 } ),
                        fixed_clause( 2, { 1 } ), fixed_clause( 2, { 1 } ) };

  /* doc (1,0) label 1: positives fire (+2), negatives silent: v = 2 = T */
  boolean_document d = doc2( true, false, 1 );
  const auto before = flat_states( models[0] );
  train_scratch scratch;
  deterministic_streams streams{ 3, 0, 0 };
  const auto stats = train_step( std::span<class_model>( models ), d, cfg, feedback_plan::from_s( cfg.s ), streams, scratch );
  CHECK( stats.target_sum == 2 );
  CHECK( stats.type_ia + stats.type_ib + stats.type_ii == 0 );
  CHECK( flat_states( models[0] ) == before );
}

TEST_CASE( "every clause is selected at the opposite margin" )
{
  tm_config cfg;
  cfg.clauses = 4;
  cfg.threshold = 2;
  cfg.s = 2.0;
  cfg.features = 2;
  std::vector<class_model> models( 1 );
  models[0].class_id = 1;
  models[0].clauses = { fixed_clause( 2, { 0 } ), fixed_clause( 2, { 0 } ),
                        fixed_clause( 2, { 1 } ), fixed_clause( 2, { 1 } ) };

  /* doc (0,1) label 1: negatives fire, v = -2 = -T: selection probability 1 */
  boolean_document d = doc2( false, true, 1 );
  train_scratch scratch;
  deterministic_streams streams{ 3, 0, 0 };
  const auto stats = train_step( std::span<class_model>( models ), d, cfg, feedback_plan::from_s( cfg.s ), streams, scratch );
  CHECK( stats.target_sum == -2 );
  /* positives got Type I (output 0), negatives got Type II (output 1) */
  CHECK( stats.type_ib == 2 );
  CHECK( stats.type_ii == 2 );
}

TEST_CASE( "vote sums clamp to the margin band" )
{
  tm_config cfg;
  cfg.clauses = 8;
  cfg.threshold = 1; /* T = 1 clamps v = 4 down to 1 */
  cfg.s = 2.0;
  cfg.features = 2;
  std::vector<class_model> models( 1 );
  models[0].class_id = 1;
  models[0].clauses = { fixed_clause( 2, { 0 } ), fixed_clause( 2, { 0 } ), fixed_clause( 2, { 0 } ), fixed_clause( 2, { 0 } ),
                        fixed_clause( 2, { 1 } ), fixed_clause( 2, { 1 } ), fixed_clause( 2, { 1 } ), fixed_clause( 2, { 1 } ) };
  boolean_document d = doc2( true, false, 1 );
  const auto before = flat_states( models[0] );
  train_scratch scratch;
  deterministic_streams streams{ 3, 0, 0 };
  const auto stats = train_step( std::span<class_model>( models ), d, cfg, feedback_plan::from_s( cfg.s ), streams, scratch );
  CHECK( stats.target_sum == 4 );
  CHECK( flat_states( models[0] ) == before ); /* clamped margin met: probability 0 */
}

TEST_CASE( "per-clause streams make feedback order-independent" )
{
  tm_config cfg;
  cfg.clauses = 10;
  cfg.threshold = 5;
  cfg.s = 3.0;
  cfg.features = 30;
  cfg.seed = 17;
  auto forward_models = make_models( cfg, 1 );
  forward_models[0].class_id = 1;
  auto reverse_models = forward_models;

  split_mix64 g( 70 );
  std::vector<uint32_t> feats;
  for ( uint32_t k = 0; k < 30; ++k )
    if ( g.uniform01() < 0.4 )
      feats.push_back( k );
  boolean_document d = make_document( 30, feats, 1 );

  deterministic_streams streams{ cfg.seed, 0, 0 };
  const auto plan = feedback_plan::from_s( cfg.s );

  train_scratch scratch;
  train_step( std::span<class_model>( forward_models ), d, cfg, plan, streams, scratch );

  /* manual reversed application with the same per-clause generators */
  {
    class_model& m = reverse_models[0];
    doc_literals lits;
    lits.assign( d );
    const uint32_t h = m.half();
    std::vector<int> outputs( m.clauses.size() );
    int v = 0;
    for ( uint32_t j = 0; j < m.clauses.size(); ++j )
    {
      outputs[j] = clause_eval( m.clauses[j], d, eval_mode::train );
      v += j < h ? outputs[j] : -outputs[j];
    }
    const int vc = std::clamp( v, -cfg.threshold, cfg.threshold );
    const double p = static_cast<double>( cfg.threshold - vc ) / ( 2.0 * cfg.threshold );
    detail::type_i_scratch is;
    for ( uint32_t j = m.clauses.size(); j-- > 0; )
    {
      auto rng = streams.clause_rng( m.class_id, j );
      if ( !decide( p, rng ) )
        continue;
      if ( j < h )
        detail::type_i_sampled( m.clauses[j], lits, plan, rng, outputs[j], is );
      else if ( outputs[j] )
        detail::type_ii_apply( m.clauses[j], lits );
    }
  }

  CHECK( flat_states( forward_models[0] ) == flat_states( reverse_models[0] ) );
}

TEST_CASE( "training is deterministic per seed" )
{
  tm_config cfg;
  cfg.clauses = 12;
  cfg.threshold = 4;
  cfg.s = 3.0;
  cfg.features = 2;
  cfg.epochs = 5;
  cfg.seed = 21;
  auto corpus = xor_corpus();

  auto one = make_models( cfg, 1 );
  one[0].class_id = 1;
  auto two = make_models( cfg, 1 );
  two[0].class_id = 1;
  fit( one, corpus, cfg );
  fit( two, corpus, cfg );
  CHECK( flat_states( one[0] ) == flat_states( two[0] ) );

  tm_config other = cfg;
  other.seed = 22;
  auto three = make_models( other, 1 );
  three[0].class_id = 1;
  fit( three, corpus, other );
  CHECK( flat_states( one[0] ) != flat_states( three[0] ) );
}

TEST_CASE( "zero epochs leave the machine untouched" )
{
  tm_config cfg;
  cfg.clauses = 6;
  cfg.features = 2;
  cfg.epochs = 0;
  auto models = make_models( cfg, 1 );
  models[0].class_id = 1;
  const auto before = flat_states( models[0] );
  auto corpus = xor_corpus();
  const auto trace = fit( models, corpus, cfg );
  CHECK( trace.epochs.empty() );
  CHECK( flat_states( models[0] ) == before );
}

TEST_CASE( "labels outside the binary machine's range are rejected" )
{
  tm_config cfg;
  cfg.clauses = 4;
  cfg.features = 2;
  std::vector<class_model> models( 1 );
  models[0].class_id = 1;
  models[0].clauses = { fixed_clause( 2, {} ), fixed_clause( 2, {} ), fixed_clause( 2, {} ), fixed_clause( 2, {} ) };
  train_scratch scratch;
  deterministic_streams streams{ 0, 0, 0 };
  const auto plan = feedback_plan::from_s( 2.0 );
  boolean_document bad = doc2( true, false, 2 );
  CHECK_THROWS_AS( train_step( std::span<class_model>( models ), bad, cfg, plan, streams, scratch ), std::invalid_argument );
  boolean_document unlabelled = doc2( true, false, no_label );
  CHECK_THROWS_AS( train_step( std::span<class_model>( models ), unlabelled, cfg, plan, streams, scratch ), std::invalid_argument );
}

TEST_CASE( "the machine learns parity from four examples" )
{
  tm_config cfg;
  cfg.clauses = 20;
  cfg.threshold = 10;
  cfg.s = 3.9;
  cfg.states_per_action = 127;
  cfg.features = 2;
  cfg.epochs = 200;
  cfg.seed = 1;
  auto corpus = xor_corpus();
  auto models = make_models( cfg, 1 );
  models[0].class_id = 1;
  fit( models, corpus, cfg );
  int correct = 0;
  for ( const auto& d : corpus )
    correct += predict_binary( models[0], d ) == d.label;
  CHECK( correct == 4 );
}
