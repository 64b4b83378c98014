#pragma once

#include "../rng.hpp"
#include "../text/stopwords.hpp"
#include "corpus.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsetlin::data
{

/*! Deterministic news-shaped demo corpus.
 *
 * Two word pools carry the class signal: articles draw a configurable
 * share of their tokens from their own class pool, a small share from the
 * opposite pool, and the rest from a shared skewed background.  A noise
 * fraction of articles is composed from the wrong pool entirely, which
 * bounds achievable accuracy away from 1.  Text is dressed with casing,
 * stopwords, punctuation, links and emoji so the full cleaning pipeline
 * has real work to do.  Label counts are exact, never sampled.
 */
struct synthetic_spec
{
  size_t real_docs = 563;
  size_t fake_docs = 391;
  uint64_t seed = 7;
  uint32_t vocab_words = 6000;
  uint32_t pool_words = 600;  /* class-tilted words per class */
  double tilt_rate = 0.20;    /* token drawn from the article's own pool */
  double cross_rate = 0.03;   /* token drawn from the opposite pool */
  double content_noise = 0.02; /* articles written with swapped pools */
};

namespace detail
{

/* Distinct pronounceable word per index; every syllable ends in a vowel,
 * so the generated words are fixed points of the stemmer. */
inline std::string synthetic_word( uint32_t index )
{
  static constexpr char cons[] = { 'b', 'd', 'f', 'g', 'k', 'l', 'm', 'n', 'p', 'r', 's', 't', 'v', 'z' };
  static constexpr char vows[] = { 'a', 'e', 'i', 'o', 'u' };
  std::string w;
  uint32_t rest = index;
  do
  {
    const uint32_t syl = rest % 70;
    rest /= 70;
    w.push_back( cons[syl / 5] );
    w.push_back( vows[syl % 5] );
  } while ( rest > 0 );
  while ( w.size() < 4 )
    w += "na";
  return w;
}

} // namespace detail

inline corpus make_synthetic_corpus( source_site source, const synthetic_spec& spec )
{
  if ( spec.vocab_words < 2 * spec.pool_words + 100 )
    throw std::invalid_argument( "synthetic: vocabulary too small for the class pools" );

  /* pool words sit at high indices so the shared background (skewed to
   * low indices) rarely collides with them */
  const uint32_t background = spec.vocab_words - 2 * spec.pool_words;
  auto pool_word = [&]( int cls, uint32_t i ) {
    return detail::synthetic_word( background + static_cast<uint32_t>( cls ) * spec.pool_words + i );
  };

  corpus out;
  out.source = source;
  const size_t total = spec.real_docs + spec.fake_docs;
  out.records.reserve( total );
  out.data_rows = total;

  for ( size_t d = 0; d < total; ++d )
  {
    const int label = d < spec.real_docs ? real_label : fake_label;
    split_mix64 rng( mix_stream( spec.seed, 0x53594eu, static_cast<uint64_t>( source ), d ) );

    int content_class = label;
    if ( rng.uniform01() < spec.content_noise )
      content_class = 1 - content_class;

    auto content_token = [&]() -> std::string {
      const double r = rng.uniform01();
      if ( r < spec.tilt_rate )
      {
        /* sharply head-skewed: each class owns a few anchor words that
         * show up in most of its articles, like named entities do */
        const double u = rng.uniform01();
        const double q = u * u;
        return pool_word( content_class, static_cast<uint32_t>( q * q * spec.pool_words ) );
      }
      if ( r < spec.tilt_rate + spec.cross_rate )
      {
        /* cross-pool leakage stays broad so anchors discriminate without
         * being exclusive to one class */
        const double u = rng.uniform01();
        return pool_word( 1 - content_class, static_cast<uint32_t>( u * u * spec.pool_words ) );
      }
      const double u = rng.uniform01();
      return detail::synthetic_word( static_cast<uint32_t>( u * u * u * background ) );
    };

    auto compose = [&]( size_t tokens, bool sentences ) {
      std::string s;
      size_t since_start = 0;
      for ( size_t t = 0; t < tokens; ++t )
      {
        if ( !s.empty() )
          s += ' ';
        if ( rng.uniform01() < 0.35 )
        {
          s += std::string( text::english_v1[rng.uniform_below( text::english_v1.size() )] );
          s += ' ';
        }
        std::string w = content_token();
        if ( since_start == 0 )
          w[0] = static_cast<char>( w[0] - 'a' + 'A' );
        ++since_start;
        const bool end_sentence = sentences && ( since_start >= 6 + rng.uniform_below( 9 ) || t + 1 == tokens );
        if ( end_sentence )
        {
          w += '.';
          since_start = 0;
        }
        else if ( rng.uniform01() < 0.08 )
        {
          w += ',';
        }
        s += w;
      }
      return s;
    };

    article_record rec;
    rec.id = std::string( to_string( source ) ) + "-" + std::to_string( d );
    rec.label = label;
    rec.title = compose( 5 + rng.uniform_below( 5 ), false );
    const double len_u = rng.uniform01();
    rec.text = compose( 60 + static_cast<size_t>( len_u * len_u * 300 ), true );
    if ( rng.uniform01() < 0.02 )
      rec.text += " https://example.org/item/" + std::to_string( d );
    if ( rng.uniform01() < 0.01 )
      rec.text += " \U0001f525";
    out.records.push_back( std::move( rec ) );
  }
  return out;
}

inline std::string csv_escape( const std::string& field )
{
  if ( field.find_first_of( ",\"\n\r" ) == std::string::npos )
    return field;
  std::string out = "\"";
  for ( char c : field )
  {
    if ( c == '"' )
      out += "\"\"";
    else
      out += c;
  }
  out += '"';
  return out;
}

inline void save_corpus_csv( const corpus& c, const std::string& path )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out )
    throw std::runtime_error( "cannot write corpus file: " + path );
  out << "id,title,text,label\n";
  for ( const auto& r : c.records )
    out << csv_escape( r.id ) << ',' << csv_escape( r.title ) << ',' << csv_escape( r.text ) << ','
        << ( r.label == fake_label ? "fake" : "real" ) << '\n';
  if ( !out.flush() )
    throw std::runtime_error( "failed writing corpus file: " + path );
}

} // namespace tsetlin::data
