#include <tsetlin/data/corpus.hpp>
#include <tsetlin/data/split.hpp>
#include <tsetlin/data/synthetic.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

using namespace tsetlin;
using namespace tsetlin::data;

namespace
{

/* Writes content to a unique temp file and deletes it on scope exit. */
struct temp_file
{
  std::filesystem::path path;

  explicit temp_file( const std::string& content )
  {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() / ( "tm_test_" + std::to_string( ++counter ) + ".csv" );
    std::ofstream out( path, std::ios::binary );
    out << content;
  }

  ~temp_file() { std::filesystem::remove( path ); }
};

} // namespace

TEST_CASE( "a well-formed csv loads every data row" )
{
  temp_file f( "id,title,text,label\n"
               "a1,Wall,Border wall grows,real\n"
               "a2,Aliens,Aliens endorse candidate,fake\n" );
  const auto c = load_corpus( f.path.string(), source_site::politifact );
  REQUIRE( c.records.size() == 2 );
  CHECK( c.data_rows == 2 );
  CHECK( c.skipped.empty() );
  CHECK( c.records[0].id == "a1" );
  CHECK( c.records[0].title == "Wall" );
  CHECK( c.records[0].text == "Border wall grows" );
  CHECK( c.records[0].label == real_label );
  CHECK( c.records[1].label == fake_label );
  CHECK( c.count( real_label ) == 1 );
  CHECK( c.count( fake_label ) == 1 );
}

TEST_CASE( "quoted fields carry commas, newlines and doubled quotes" )
{
  temp_file f( "id,title,text,label\n"
               "a1,\"Hello, world\",\"line one\nline two\",fake\n"
               "a2,\"She said \"\"no\"\"\",plain,real\n" );
  const auto c = load_corpus( f.path.string(), source_site::politifact );
  REQUIRE( c.records.size() == 2 );
  CHECK( c.records[0].title == "Hello, world" );
  CHECK( c.records[0].text == "line one\nline two" );
  CHECK( c.records[1].title == "She said \"no\"" );
}

TEST_CASE( "crlf endings, a utf-8 bom and label casing are tolerated" )
{
  temp_file f( "\xEF\xBB\xBFid,title,text,label\r\n"
               "A1,T,Body,FAKE\r\n" );
  const auto c = load_corpus( f.path.string(), source_site::gossipcop );
  REQUIRE( c.records.size() == 1 );
  CHECK( c.records[0].id == "a1" ); /* ids normalize to lowercase */
  CHECK( c.records[0].label == fake_label );
  CHECK( c.source == source_site::gossipcop );
}

TEST_CASE( "header columns may appear in any order, extras ignored" )
{
  temp_file f( "label,extra,text,id,title\n"
               "fake,zzz,Body,a1,T\n" );
  const auto c = load_corpus( f.path.string(), source_site::politifact );
  REQUIRE( c.records.size() == 1 );
  CHECK( c.records[0].id == "a1" );
  CHECK( c.records[0].title == "T" );
  CHECK( c.records[0].text == "Body" );
  CHECK( c.records[0].label == fake_label );
}

TEST_CASE( "malformed rows are skipped with their line numbers" )
{
  temp_file f( "id,title,text,label\n"
               "a1,T,Body,fake\n"
               "a2,T,Body,maybe\n"
               "a3,T,Body\n"
               ",T,Body,real\n"
               "a5,T,Body,real\n" );
  const auto c = load_corpus( f.path.string(), source_site::politifact );
  REQUIRE( c.records.size() == 2 );
  CHECK( c.data_rows == 5 );
  REQUIRE( c.skipped.size() == 3 );
  CHECK( c.skipped[0].line == 3 );
  CHECK( c.skipped[1].line == 4 );
  CHECK( c.skipped[2].line == 5 );
  CHECK( c.records.size() + c.skipped.size() == c.data_rows );
  for ( const auto& s : c.skipped )
    CHECK( !s.reason.empty() );
}

TEST_CASE( "quoted newlines advance the reported line numbers" )
{
  temp_file f( "id,title,text,label\n"
               "a1,T,\"two\nlines\",fake\n"
               "a2,T,Body,bogus\n" );
  const auto c = load_corpus( f.path.string(), source_site::politifact );
  REQUIRE( c.skipped.size() == 1 );
  CHECK( c.skipped[0].line == 4 );
}

TEST_CASE( "strict loading throws on the first bad row" )
{
  temp_file f( "id,title,text,label\n"
               "a1,T,Body,unknowable\n"
               "a2,T,Body,real\n" );
  CHECK_THROWS_WITH( load_corpus( f.path.string(), source_site::politifact, true ),
                     Catch::Matchers::ContainsSubstring( ":2:" ) );
}

TEST_CASE( "missing required headers and empty files are rejected" )
{
  temp_file no_label( "id,title,text\na1,T,B\n" );
  CHECK_THROWS_WITH( load_corpus( no_label.path.string(), source_site::politifact ),
                     Catch::Matchers::ContainsSubstring( "label" ) );
  temp_file empty( "" );
  CHECK_THROWS_AS( load_corpus( empty.path.string(), source_site::politifact ), std::runtime_error );
  temp_file header_only( "id,title,text,label\n" );
  CHECK_THROWS_AS( load_corpus( header_only.path.string(), source_site::politifact ), std::runtime_error );
  CHECK_THROWS_AS( load_corpus( "/nonexistent/path.csv", source_site::politifact ), std::runtime_error );
}

TEST_CASE( "site names convert both ways" )
{
  CHECK( std::string( to_string( source_site::politifact ) ) == "politifact" );
  CHECK( std::string( to_string( source_site::gossipcop ) ) == "gossipcop" );
  CHECK( source_from_string( "politifact" ) == source_site::politifact );
  CHECK( source_from_string( "gossipcop" ) == source_site::gossipcop );
  CHECK_THROWS_AS( source_from_string( "snopes" ), std::invalid_argument );
}

TEST_CASE( "a 954-document corpus splits 715/239 at a three-quarter ratio" )
{
  split_spec spec;
  spec.train_fraction = 0.75;
  spec.seed = 11;
  const auto r = make_split( 954, nullptr, spec );
  CHECK( r.train.size() == 715 );
  CHECK( r.test.size() == 239 );

  /* partition: every index exactly once */
  std::set<size_t> seen( r.train.begin(), r.train.end() );
  seen.insert( r.test.begin(), r.test.end() );
  CHECK( seen.size() == 954 );
  CHECK( *seen.rbegin() == 953 );
}

TEST_CASE( "splits are deterministic per seed and differ across seeds" )
{
  split_spec a;
  a.seed = 5;
  const auto r1 = make_split( 100, nullptr, a );
  const auto r2 = make_split( 100, nullptr, a );
  CHECK( r1.train == r2.train );
  CHECK( r1.test == r2.test );
  split_spec b;
  b.seed = 6;
  CHECK( make_split( 100, nullptr, b ).train != r1.train );
}

TEST_CASE( "stratified splits hold per-class proportions within one document" )
{
  std::vector<int> labels( 954 );
  for ( size_t i = 0; i < labels.size(); ++i )
    labels[i] = i < 563 ? 0 : 1;
  split_spec spec;
  spec.stratified = true;
  spec.train_fraction = 0.75;
  spec.seed = 3;
  const auto r = make_split( labels.size(), &labels, spec );
  CHECK( r.train.size() == 715 );
  size_t train_real = 0;
  for ( auto i : r.train )
    if ( labels[i] == 0 )
      ++train_real;
  /* 563 * 0.75 = 422.25: largest-remainder quota gives 422 or 423 */
  CHECK( ( train_real == 422 || train_real == 423 ) );

  CHECK_THROWS_AS( make_split( labels.size(), nullptr, spec ), std::invalid_argument );
}

TEST_CASE( "degenerate split fractions are rejected" )
{
  split_spec zero;
  zero.train_fraction = 0.0;
  CHECK_THROWS_AS( make_split( 4, nullptr, zero ), std::invalid_argument );
  split_spec one;
  one.train_fraction = 1.0;
  CHECK_THROWS_AS( make_split( 4, nullptr, one ), std::invalid_argument );
  split_spec tiny;
  tiny.train_fraction = 0.1; /* floor(0.4) = 0 training docs */
  CHECK_THROWS_AS( make_split( 4, nullptr, tiny ), std::invalid_argument );
  CHECK_THROWS_AS( make_split( 0, nullptr, split_spec{} ), std::invalid_argument );
}

TEST_CASE( "split manifests record the seed and one id per line" )
{
  const auto path = ( std::filesystem::temp_directory_path() / "tm_test_manifest.txt" ).string();
  save_split_manifest( path, 42, { "a9", "b2", "c5" } );
  std::ifstream in( path );
  std::string line;
  std::getline( in, line );
  CHECK( line == "seed\t42" );
  std::vector<std::string> ids;
  while ( std::getline( in, line ) )
    ids.push_back( line );
  in.close();
  std::filesystem::remove( path );
  CHECK( ids == std::vector<std::string>{ "a9", "b2", "c5" } );
}

TEST_CASE( "the synthetic corpus has exact class counts and stable content" )
{
  synthetic_spec spec;
  spec.real_docs = 60;
  spec.fake_docs = 40;
  spec.seed = 9;
  const auto c = make_synthetic_corpus( source_site::politifact, spec );
  REQUIRE( c.records.size() == 100 );
  CHECK( c.count( real_label ) == 60 );
  CHECK( c.count( fake_label ) == 40 );
  for ( const auto& rec : c.records )
  {
    CHECK( !rec.id.empty() );
    CHECK( !rec.text.empty() );
  }
  const auto again = make_synthetic_corpus( source_site::politifact, spec );
  CHECK( again.records[0].text == c.records[0].text );
  CHECK( again.records[99].text == c.records[99].text );

  synthetic_spec other = spec;
  other.seed = 10;
  CHECK( make_synthetic_corpus( source_site::politifact, other ).records[0].text != c.records[0].text );
}

TEST_CASE( "synthetic corpora survive a csv round trip" )
{
  synthetic_spec spec;
  spec.real_docs = 12;
  spec.fake_docs = 8;
  spec.seed = 4;
  const auto c = make_synthetic_corpus( source_site::gossipcop, spec );

  const auto path = ( std::filesystem::temp_directory_path() / "tm_test_synth.csv" ).string();
  save_corpus_csv( c, path );
  const auto back = load_corpus( path, c.source );
  std::filesystem::remove( path );

  REQUIRE( back.records.size() == c.records.size() );
  CHECK( back.skipped.empty() );
  for ( size_t i = 0; i < c.records.size(); ++i )
  {
    CHECK( back.records[i].id == c.records[i].id );
    CHECK( back.records[i].title == c.records[i].title );
    CHECK( back.records[i].text == c.records[i].text );
    CHECK( back.records[i].label == c.records[i].label );
  }
}
