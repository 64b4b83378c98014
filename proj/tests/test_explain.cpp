#include <tsetlin/explain.hpp>
#include <tsetlin/serialization.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
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

/* vocabulary: alien = 0, senate = 1, wall = 2 */
text::vocabulary tiny_vocab() { return text::vocabulary( { "alien", "senate", "wall" } ); }

std::vector<class_model> tiny_machine()
{
  class_model fake;
  fake.class_id = 1;
  fake.clauses.push_back( fixed_clause( 3, { 0 } ) );    /* alien */
  fake.clauses.push_back( fixed_clause( 3, { 0, 4 } ) ); /* alien and not senate */
  fake.clauses.push_back( fixed_clause( 3, { 1 } ) );    /* senate */
  fake.clauses.push_back( fixed_clause( 3, {} ) );       /* inactive */

  class_model real;
  real.class_id = 0;
  real.clauses.push_back( fixed_clause( 3, { 1 } ) ); /* senate */
  real.clauses.push_back( fixed_clause( 3, { 3 } ) ); /* not alien */
  real.clauses.push_back( fixed_clause( 3, { 0 } ) ); /* alien */
  real.clauses.push_back( fixed_clause( 3, { 2 } ) ); /* wall */
  return { real, fake };
}

boolean_document alien_doc() { return make_document( 3, { 0 } ); }

} // namespace

TEST_CASE( "clauses decode into readable conjunctions" )
{
  const auto models = tiny_machine();
  const auto rules = extract_rules( models, tiny_vocab() );
  REQUIRE( rules.size() == 8 );

  /* (class, clause index) order, class 0 first */
  CHECK( rules[0].class_id == 0 );
  CHECK( rules[4].class_id == 1 );
  CHECK( rules[4].clause_index == 0 );
  CHECK( to_string( rules[4] ) == "alien" );
  CHECK( to_string( rules[5] ) == "alien ∧ ¬senate" );
  CHECK( rules[5].pol == polarity::positive );
  CHECK( rules[6].pol == polarity::negative );
  REQUIRE( rules[5].literals.size() == 2 );
  CHECK( !rules[5].literals[0].negated );
  CHECK( rules[5].literals[1].negated );
  CHECK( rules[7].inactive() );
  CHECK( to_string( rules[7] ) == "⊤ (inactive)" );

  for ( const auto& r : rules )
    for ( const auto& lit : r.literals )
      CHECK( tiny_vocab().contains( lit.token ) );
}

TEST_CASE( "rules survive a serialization round trip unchanged" )
{
  model_bundle b;
  b.config.clauses = 4;
  b.config.threshold = 10;
  b.config.s = 3.0;
  b.config.features = 3;
  b.config.epochs = 1;
  b.config.seed = 1;
  b.vocab = tiny_vocab();
  b.models = tiny_machine();

  const model_bundle back = parse_model( serialize_model( b ) );
  const auto before = extract_rules( b.models, b.vocab );
  const auto after = extract_rules( back.models, back.vocab );
  REQUIRE( before.size() == after.size() );
  for ( size_t i = 0; i < before.size(); ++i )
    CHECK( to_string( before[i] ) == to_string( after[i] ) );
}

TEST_CASE( "the literal table counts includes over positive clauses" )
{
  const auto models = tiny_machine();
  const auto table = literal_frequency_table( models, tiny_vocab(), 10 );
  REQUIRE( table.size() == 2 );

  CHECK( table[0].class_id == 0 );
  REQUIRE( table[0].plain.size() == 1 );
  CHECK( table[0].plain[0].token == "senate" );
  CHECK( table[0].plain[0].count == 1 );
  REQUIRE( table[0].negated.size() == 1 );
  CHECK( table[0].negated[0].token == "alien" );

  CHECK( table[1].class_id == 1 );
  REQUIRE( table[1].plain.size() == 1 );
  CHECK( table[1].plain[0].token == "alien" );
  CHECK( table[1].plain[0].count == 2 ); /* both positive clauses include it */
  REQUIRE( table[1].negated.size() == 1 );
  CHECK( table[1].negated[0].token == "senate" );
}

TEST_CASE( "table rows agree with a brute-force recount on a scrambled model" )
{
  tm_config cfg;
  cfg.clauses = 8;
  cfg.threshold = 10;
  cfg.s = 3.0;
  cfg.features = 6;
  cfg.seed = 17;
  auto models = make_models( cfg, 2 );
  for ( auto& m : models )
    for ( uint32_t j = 0; j < m.clauses.size(); ++j )
    {
      auto& c = m.clauses[j];
      for ( uint32_t k = 0; k < c.ta.size(); ++k )
        c.ta[k].state = static_cast<uint8_t>( 1 + ( 71 * j + 29 * k + 13 * m.class_id ) % 254 );
      c.rebuild_masks();
    }
  const text::vocabulary vocab( { "apple", "banana", "cherry", "date", "elder", "fig" } );
  const uint32_t n = 4;
  const auto table = literal_frequency_table( models, vocab, n );
  REQUIRE( table.size() == 2 );

  for ( size_t mi = 0; mi < models.size(); ++mi )
  {
    auto recount = [&]( bool negated ) {
      std::vector<literal_count> rows;
      for ( uint32_t k = 0; k < vocab.size(); ++k )
      {
        uint32_t count = 0;
        for ( uint32_t j = 0; j < models[mi].half(); ++j )
          count += negated ? models[mi].clauses[j].includes_negated( k ) : models[mi].clauses[j].includes_plain( k );
        if ( count > 0 )
          rows.push_back( { vocab.token( k ), count } );
      }
      std::sort( rows.begin(), rows.end(), []( const literal_count& a, const literal_count& b ) {
        return a.count != b.count ? a.count > b.count : a.token < b.token;
      } );
      if ( rows.size() > n )
        rows.resize( n );
      return rows;
    };
    for ( bool negated : { false, true } )
    {
      const auto expect = recount( negated );
      const auto& got = negated ? table[mi].negated : table[mi].plain;
      REQUIRE( got.size() == expect.size() );
      for ( size_t i = 0; i < expect.size(); ++i )
      {
        CHECK( got[i].token == expect[i].token );
        CHECK( got[i].count == expect[i].count );
      }
    }
  }
}

TEST_CASE( "the share of negated includes is counted over all clauses" )
{
  const auto models = tiny_machine();
  /* 8 includes total, 2 negated */
  CHECK( negated_include_fraction( models ) == Catch::Approx( 0.25 ) );
  CHECK( negated_include_fraction( std::vector<class_model>{} ) == 0.0 );
}

TEST_CASE( "a local explanation reproduces the vote arithmetic exactly" )
{
  const auto models = tiny_machine();
  const auto doc = alien_doc();
  const auto ex = explain_prediction( models, doc, tiny_vocab() );

  CHECK( ex.pred.class_id == 1 );
  REQUIRE( ex.votes.contains( 0 ) );
  REQUIRE( ex.votes.contains( 1 ) );
  CHECK( ex.votes.at( 1 ).positive_fired == 2 );
  CHECK( ex.votes.at( 1 ).negative_fired == 0 );
  CHECK( ex.votes.at( 0 ).positive_fired == 0 );
  CHECK( ex.votes.at( 0 ).negative_fired == 1 );
  for ( const auto& m : models )
  {
    CHECK( ex.votes.at( m.class_id ).sum() == class_sum( m, doc, eval_mode::infer ) );
    CHECK( ex.votes.at( m.class_id ).sum() == ex.pred.sums.at( m.class_id ) );
  }
  CHECK( ex.q == Catch::Approx( credibility_score( 2, -1 ) ).margin( 1e-15 ) );

  /* every listed clause actually fires on the document */
  REQUIRE( ex.clauses.size() == 3 );
  for ( const auto& a : ex.clauses )
  {
    const auto& m = models[a.class_id == models[0].class_id ? 0 : 1];
    CHECK( clause_eval( m.clauses[a.clause_index], doc, eval_mode::infer ) == 1 );
    CHECK( a.pol == m.polarity_of( a.clause_index ) );
    CHECK( !a.rule.inactive() );
  }
}

TEST_CASE( "the listing caps at `top` clauses per class, votes stay exact" )
{
  const auto models = tiny_machine();
  explain_options opt;
  opt.top = 1;
  const auto ex = explain_prediction( models, alien_doc(), tiny_vocab(), opt );
  CHECK( ex.clauses.size() == 2 );
  CHECK( ex.votes.at( 1 ).positive_fired == 2 );
}

TEST_CASE( "a vocabulary of the wrong width is refused" )
{
  const auto models = tiny_machine();
  const text::vocabulary wrong( { "alien", "senate" } );
  CHECK_THROWS_AS( extract_rules( models, wrong ), std::invalid_argument );
  CHECK_THROWS_AS( literal_frequency_table( models, wrong, 5 ), std::invalid_argument );
  CHECK_THROWS_AS( explain_prediction( models, alien_doc(), wrong ), std::invalid_argument );
}
