/* Generates a deterministic news-shaped demo CSV so the full pipeline can
 * be exercised without downloading anything.  Class counts default to the
 * shapes of the two supported datasets. */

#include <tsetlin/data/synthetic.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

int main( int argc, char** argv )
{
  CLI::App app{ "demo corpus generator" };
  std::string out, source = "politifact";
  long long real_docs = -1, fake_docs = -1;
  uint64_t seed = 7;
  app.add_option( "--out", out, "CSV output path" )->required();
  app.add_option( "--source", source, "dataset shape: politifact (563/391) or gossipcop (15338/4895)" )
      ->check( CLI::IsMember( { "politifact", "gossipcop" } ) );
  app.add_option( "--real", real_docs, "real article count (overrides the shape)" )->check( CLI::NonNegativeNumber );
  app.add_option( "--fake", fake_docs, "fake article count (overrides the shape)" )->check( CLI::NonNegativeNumber );
  app.add_option( "--seed", seed, "generator seed (default 7)" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::CallForHelp& e )
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
    using namespace tsetlin::data;
    const source_site site = source_from_string( source );
    synthetic_spec spec;
    spec.seed = seed;
    if ( site == source_site::gossipcop )
    {
      spec.real_docs = 15338;
      spec.fake_docs = 4895;
    }
    if ( real_docs >= 0 )
      spec.real_docs = static_cast<size_t>( real_docs );
    if ( fake_docs >= 0 )
      spec.fake_docs = static_cast<size_t>( fake_docs );

    const corpus c = make_synthetic_corpus( site, spec );
    save_corpus_csv( c, out );
    std::printf( "wrote %zu articles (%zu real, %zu fake) to %s\n", c.records.size(), c.count( real_label ), c.count( fake_label ), out.c_str() );
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
