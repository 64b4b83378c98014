#pragma once

#include "config.hpp"
#include "model.hpp"
#include "text/cleaning.hpp"
#include "text/feature_select.hpp"
#include "text/vocabulary.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsetlin
{

/*! Everything needed to reproduce inference: hyperparameters, the exact
 *  tokenizer settings, the vocabulary and the automata of every clause.
 */
struct model_bundle
{
  tm_config config;
  text::cleaning_config cleaning;
  text::selection_spec selection;
  text::vocabulary vocab;
  std::vector<class_model> models;
};

namespace detail
{

inline uint64_t fnv1a64( const uint8_t* data, size_t size, uint64_t h = 0xcbf29ce484222325ULL )
{
  for ( size_t i = 0; i < size; ++i )
  {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct byte_writer
{
  std::vector<uint8_t> bytes;

  void u8( uint8_t v ) { bytes.push_back( v ); }

  void u32( uint32_t v )
  {
    for ( int i = 0; i < 4; ++i )
      bytes.push_back( static_cast<uint8_t>( v >> ( 8 * i ) ) );
  }

  void u64( uint64_t v )
  {
    for ( int i = 0; i < 8; ++i )
      bytes.push_back( static_cast<uint8_t>( v >> ( 8 * i ) ) );
  }

  void i32( int32_t v ) { u32( static_cast<uint32_t>( v ) ); }

  void f64( double v )
  {
    uint64_t bits;
    std::memcpy( &bits, &v, 8 );
    u64( bits );
  }

  void str( const std::string& s )
  {
    u32( static_cast<uint32_t>( s.size() ) );
    bytes.insert( bytes.end(), s.begin(), s.end() );
  }

  void raw( const uint8_t* p, size_t n ) { bytes.insert( bytes.end(), p, p + n ); }

  void tag( const char t[5] ) { bytes.insert( bytes.end(), t, t + 4 ); }
};

struct byte_reader
{
  std::span<const uint8_t> bytes;
  size_t pos = 0;

  void need( size_t n ) const
  {
    if ( pos + n > bytes.size() )
      throw std::runtime_error( "model file truncated" );
  }

  uint8_t u8()
  {
    need( 1 );
    return bytes[pos++];
  }

  uint32_t u32()
  {
    need( 4 );
    uint32_t v = 0;
    for ( int i = 0; i < 4; ++i )
      v |= static_cast<uint32_t>( bytes[pos + i] ) << ( 8 * i );
    pos += 4;
    return v;
  }

  uint64_t u64()
  {
    need( 8 );
    uint64_t v = 0;
    for ( int i = 0; i < 8; ++i )
      v |= static_cast<uint64_t>( bytes[pos + i] ) << ( 8 * i );
    pos += 8;
    return v;
  }

  int32_t i32() { return static_cast<int32_t>( u32() ); }

  double f64()
  {
    uint64_t bits = u64();
    double v;
    std::memcpy( &v, &bits, 8 );
    return v;
  }

  std::string str()
  {
    uint32_t n = u32();
    need( n );
    std::string s( reinterpret_cast<const char*>( bytes.data() + pos ), n );
    pos += n;
    return s;
  }

  std::string tag()
  {
    need( 4 );
    std::string t( reinterpret_cast<const char*>( bytes.data() + pos ), 4 );
    pos += 4;
    return t;
  }
};

} // namespace detail

inline std::vector<uint8_t> serialize_model( const model_bundle& b )
{
  using namespace detail;
  byte_writer w;
  w.tag( "TMV1" );
  w.u32( 1 ); /* format version */

  auto section = [&]( const char t[5], auto&& fill ) {
    byte_writer body;
    fill( body );
    w.tag( t );
    w.u64( body.bytes.size() );
    w.raw( body.bytes.data(), body.bytes.size() );
  };

  section( "CONF", [&]( byte_writer& s ) {
    s.u32( b.config.clauses );
    s.i32( b.config.threshold );
    s.f64( b.config.s );
    s.u32( b.config.states_per_action );
    s.u32( b.config.features );
    s.u32( b.config.epochs );
    s.u64( b.config.seed );
    uint8_t flags = 0;
    flags |= b.cleaning.strip_punctuation ? 1 : 0;
    flags |= b.cleaning.strip_hyperlinks ? 2 : 0;
    flags |= b.cleaning.strip_emojis ? 4 : 0;
    flags |= b.cleaning.strip_stopwords ? 8 : 0;
    flags |= b.cleaning.lemmatize ? 16 : 0;
    s.u8( flags );
    s.str( b.cleaning.stopword_list );
    s.u8( b.selection.method == text::selection_method::chi2 ? 0 : 1 );
    s.u32( b.selection.k );
    s.u32( static_cast<uint32_t>( b.models.size() ) );
  } );

  section( "VOCB", [&]( byte_writer& s ) {
    s.u64( text::vocabulary_hash( b.vocab ) );
    s.u32( b.vocab.size() );
    for ( uint32_t i = 0; i < b.vocab.size(); ++i )
      s.str( b.vocab.token( i ) );
  } );

  section( "MODL", [&]( byte_writer& s ) {
    for ( const auto& m : b.models )
    {
      s.i32( m.class_id );
      s.u32( static_cast<uint32_t>( m.clauses.size() ) );
      for ( uint32_t j = 0; j < m.clauses.size(); ++j )
      {
        const clause& c = m.clauses[j];
        s.u8( static_cast<uint8_t>( m.polarity_of( j ) ) );
        s.raw( &c.ta[0].state, c.ta.size() );
      }
    }
  } );

  w.tag( "CSUM" );
  w.u64( fnv1a64( w.bytes.data(), w.bytes.size() - 4 ) );
  return std::move( w.bytes );
}

inline model_bundle parse_model( std::span<const uint8_t> bytes )
{
  using namespace detail;
  if ( bytes.size() < 12 + 8 + 4 )
    throw std::runtime_error( "model file truncated" );

  /* trailer first: checksum covers everything up to its tag */
  byte_reader tail{ bytes, bytes.size() - 12 };
  if ( tail.tag() != "CSUM" )
    throw std::runtime_error( "model file missing checksum trailer" );
  const uint64_t stored = tail.u64();
  const uint64_t actual = fnv1a64( bytes.data(), bytes.size() - 12 );
  if ( stored != actual )
    throw std::runtime_error( "model file checksum mismatch (corrupted file)" );

  byte_reader r{ bytes.first( bytes.size() - 12 ), 0 };
  if ( r.tag() != "TMV1" )
    throw std::runtime_error( "not a model file (bad magic)" );
  const uint32_t version = r.u32();
  if ( version != 1 )
    throw std::runtime_error( "unsupported model format version " + std::to_string( version ) );

  model_bundle b;
  uint32_t class_count = 0;
  uint64_t vocab_hash = 0;
  bool have_conf = false, have_vocb = false, have_modl = false;

  while ( r.pos < r.bytes.size() )
  {
    const std::string t = r.tag();
    const uint64_t len = r.u64();
    r.need( len );
    const size_t end = r.pos + len;

    if ( t == "CONF" )
    {
      b.config.clauses = r.u32();
      b.config.threshold = r.i32();
      b.config.s = r.f64();
      b.config.states_per_action = r.u32();
      b.config.features = r.u32();
      b.config.epochs = r.u32();
      b.config.seed = r.u64();
      const uint8_t flags = r.u8();
      b.cleaning.strip_punctuation = flags & 1;
      b.cleaning.strip_hyperlinks = flags & 2;
      b.cleaning.strip_emojis = flags & 4;
      b.cleaning.strip_stopwords = flags & 8;
      b.cleaning.lemmatize = flags & 16;
      b.cleaning.stopword_list = r.str();
      b.selection.method = r.u8() == 0 ? text::selection_method::chi2 : text::selection_method::frequency;
      b.selection.k = r.u32();
      class_count = r.u32();
      have_conf = true;
    }
    else if ( t == "VOCB" )
    {
      vocab_hash = r.u64();
      const uint32_t n = r.u32();
      std::vector<std::string> tokens;
      tokens.reserve( n );
      for ( uint32_t i = 0; i < n; ++i )
        tokens.push_back( r.str() );
      b.vocab = text::vocabulary( std::move( tokens ) );
      have_vocb = true;
    }
    else if ( t == "MODL" )
    {
      if ( !have_conf )
        throw std::runtime_error( "model file: states before configuration section" );
      validate( b.config );
      for ( uint32_t ci = 0; ci < class_count; ++ci )
      {
        class_model m;
        m.class_id = r.i32();
        const uint32_t clauses = r.u32();
        if ( clauses != b.config.clauses )
          throw std::runtime_error( "model file: clause count disagrees with configuration" );
        m.clauses.reserve( clauses );
        for ( uint32_t j = 0; j < clauses; ++j )
        {
          const uint8_t pol = r.u8();
          if ( pol != static_cast<uint8_t>( j < clauses / 2 ? polarity::positive : polarity::negative ) )
            throw std::runtime_error( "model file: polarity layout violated" );
          clause c = make_clause( b.config.features, b.config.states_per_action );
          r.need( c.ta.size() );
          for ( size_t k = 0; k < c.ta.size(); ++k )
          {
            const uint8_t st = r.bytes[r.pos + k];
            if ( st < 1 || st > 2 * b.config.states_per_action )
              throw std::runtime_error( "model file: automaton state out of range" );
            c.ta[k].state = st;
          }
          r.pos += c.ta.size();
          c.rebuild_masks();
          m.clauses.push_back( std::move( c ) );
        }
        b.models.push_back( std::move( m ) );
      }
      have_modl = true;
    }
    else
    {
      throw std::runtime_error( "model file: unknown section '" + t + "'" );
    }
    if ( r.pos != end )
      throw std::runtime_error( "model file: section '" + t + "' length mismatch" );
  }

  if ( !have_conf || !have_vocb || !have_modl )
    throw std::runtime_error( "model file: missing required section" );
  if ( b.vocab.size() != b.config.features )
    throw std::runtime_error( "model file: vocabulary size disagrees with feature count" );
  if ( text::vocabulary_hash( b.vocab ) != vocab_hash )
    throw std::runtime_error( "model file: vocabulary hash mismatch" );
  return b;
}

inline void save_model( const model_bundle& b, const std::string& path )
{
  const auto bytes = serialize_model( b );
  std::ofstream out( path, std::ios::binary );
  if ( !out )
    throw std::runtime_error( "cannot write model file: " + path );
  out.write( reinterpret_cast<const char*>( bytes.data() ), static_cast<std::streamsize>( bytes.size() ) );
  if ( !out.flush() )
    throw std::runtime_error( "failed writing model file: " + path );
}

inline model_bundle load_model( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw std::runtime_error( "cannot open model file: " + path );
  std::vector<uint8_t> bytes( ( std::istreambuf_iterator<char>( in ) ), std::istreambuf_iterator<char>() );
  return parse_model( bytes );
}

} // namespace tsetlin
