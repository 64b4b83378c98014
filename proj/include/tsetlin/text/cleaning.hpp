#pragma once

#include "stopwords.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tsetlin::text
{

/*! Tokenization switches.  All transformations are pure and documented by
 *  the unit tests; models embed the configuration they were trained with
 *  so inference tokenizes identically.
 */
struct cleaning_config
{
  bool strip_punctuation = true;
  bool strip_hyperlinks = true;
  bool strip_emojis = true;
  bool strip_stopwords = true;
  bool lemmatize = true;
  std::string stopword_list = "english-v1";
};

namespace detail
{

/* Lenient UTF-8 decode: an invalid lead or truncated sequence falls back
 * to the single byte as a Latin-1 code point. */
inline std::vector<uint32_t> decode_utf8( std::string_view chunk )
{
  std::vector<uint32_t> cps;
  cps.reserve( chunk.size() );
  size_t i = 0;
  while ( i < chunk.size() )
  {
    const uint8_t b = static_cast<uint8_t>( chunk[i] );
    int len = 0;
    uint32_t cp = 0;
    if ( b < 0x80 )
    {
      cps.push_back( b );
      ++i;
      continue;
    }
    if ( ( b & 0xe0 ) == 0xc0 )
    {
      len = 2;
      cp = b & 0x1f;
    }
    else if ( ( b & 0xf0 ) == 0xe0 )
    {
      len = 3;
      cp = b & 0x0f;
    }
    else if ( ( b & 0xf8 ) == 0xf0 )
    {
      len = 4;
      cp = b & 0x07;
    }
    else
    {
      cps.push_back( b );
      ++i;
      continue;
    }
    if ( i + len > chunk.size() )
    {
      cps.push_back( b );
      ++i;
      continue;
    }
    bool ok = true;
    for ( int j = 1; j < len; ++j )
      ok = ok && ( static_cast<uint8_t>( chunk[i + j] ) & 0xc0 ) == 0x80;
    if ( !ok )
    {
      cps.push_back( b );
      ++i;
      continue;
    }
    for ( int j = 1; j < len; ++j )
      cp = ( cp << 6 ) | ( static_cast<uint8_t>( chunk[i + j] ) & 0x3f );
    cps.push_back( cp );
    i += len;
  }
  return cps;
}

inline void encode_utf8( uint32_t cp, std::string& out )
{
  if ( cp < 0x80 )
  {
    out.push_back( static_cast<char>( cp ) );
  }
  else if ( cp < 0x800 )
  {
    out.push_back( static_cast<char>( 0xc0 | ( cp >> 6 ) ) );
    out.push_back( static_cast<char>( 0x80 | ( cp & 0x3f ) ) );
  }
  else if ( cp < 0x10000 )
  {
    out.push_back( static_cast<char>( 0xe0 | ( cp >> 12 ) ) );
    out.push_back( static_cast<char>( 0x80 | ( ( cp >> 6 ) & 0x3f ) ) );
    out.push_back( static_cast<char>( 0x80 | ( cp & 0x3f ) ) );
  }
  else
  {
    out.push_back( static_cast<char>( 0xf0 | ( cp >> 18 ) ) );
    out.push_back( static_cast<char>( 0x80 | ( ( cp >> 12 ) & 0x3f ) ) );
    out.push_back( static_cast<char>( 0x80 | ( ( cp >> 6 ) & 0x3f ) ) );
    out.push_back( static_cast<char>( 0x80 | ( cp & 0x3f ) ) );
  }
}

/* Arrows, symbols, pictographs, emoji and their modifiers. */
inline bool is_symbolic( uint32_t cp )
{
  return cp >= 0x2190;
}

/* ASCII punctuation plus the general-punctuation block (curly quotes,
 * dashes, ellipsis), which news text uses at token edges. */
inline bool is_punct_cp( uint32_t cp )
{
  if ( cp < 0x80 )
  {
    const char c = static_cast<char>( cp );
    return ( c >= '!' && c <= '/' ) || ( c >= ':' && c <= '@' ) || ( c >= '[' && c <= '`' ) || ( c >= '{' && c <= '~' );
  }
  return ( cp >= 0x2000 && cp <= 0x206f ) || cp == 0xab || cp == 0xbb || cp == 0xa1 || cp == 0xbf;
}

inline bool has_prefix_nocase( std::string_view s, std::string_view prefix )
{
  if ( s.size() < prefix.size() )
    return false;
  for ( size_t i = 0; i < prefix.size(); ++i )
  {
    char c = s[i];
    if ( c >= 'A' && c <= 'Z' )
      c = static_cast<char>( c - 'A' + 'a' );
    if ( c != prefix[i] )
      return false;
  }
  return true;
}

} // namespace detail

/*! Light suffix stemmer: possessive marker first, then at most one plural
 *  or inflection rule.  Minimum-stem guards keep short words intact, so
 *  "building" maps to "build" while "years" and "news" survive unchanged.
 */
inline std::string lemmatize_token( std::string t )
{
  auto ends = [&]( std::string_view suf ) {
    return t.size() >= suf.size() && std::string_view( t ).substr( t.size() - suf.size() ) == suf;
  };
  if ( ends( "'s" ) )
    t.resize( t.size() - 2 );
  else if ( ends( "’s" ) )
    t.resize( t.size() - 4 );

  if ( ends( "ies" ) && t.size() >= 5 )
  {
    t.resize( t.size() - 3 );
    t.push_back( 'y' );
  }
  else if ( ends( "ing" ) && t.size() >= 7 )
  {
    t.resize( t.size() - 3 );
  }
  else if ( ends( "ed" ) && t.size() >= 6 )
  {
    t.resize( t.size() - 2 );
  }
  else if ( ends( "es" ) && t.size() >= 6 &&
            ( ends( "sses" ) || t[t.size() - 3] == 'x' || t[t.size() - 3] == 'z' || ends( "ches" ) || ends( "shes" ) ) )
  {
    t.resize( t.size() - 2 );
  }
  else if ( ends( "s" ) && !ends( "ss" ) && !ends( "us" ) && !ends( "is" ) && t.size() >= 6 )
  {
    t.resize( t.size() - 1 );
  }
  return t;
}

/*! Whitespace tokenizer with per-chunk normalisation: hyperlink drop,
 *  ASCII lowercasing, symbol removal, edge punctuation trim, stopword
 *  filter, then stemming.  Punctuation inside a token is preserved, so
 *  "U.S-Mexico" tokenizes as "u.s-mexico".
 */
inline std::vector<std::string> clean_and_tokenize( std::string_view raw, const cleaning_config& cfg )
{
  std::vector<std::string> tokens;
  size_t i = 0;
  const auto is_space = []( char c ) {
    return static_cast<uint8_t>( c ) <= 0x20 || static_cast<uint8_t>( c ) == 0x7f;
  };
  while ( i < raw.size() )
  {
    while ( i < raw.size() && is_space( raw[i] ) )
      ++i;
    size_t j = i;
    while ( j < raw.size() && !is_space( raw[j] ) )
      ++j;
    if ( j == i )
      break;
    std::string_view chunk = raw.substr( i, j - i );
    i = j;

    if ( cfg.strip_hyperlinks &&
         ( detail::has_prefix_nocase( chunk, "http://" ) || detail::has_prefix_nocase( chunk, "https://" ) || detail::has_prefix_nocase( chunk, "www." ) ) )
      continue;

    std::vector<uint32_t> cps = detail::decode_utf8( chunk );
    for ( auto& cp : cps )
      if ( cp >= 'A' && cp <= 'Z' )
        cp += 'a' - 'A';
    if ( cfg.strip_emojis )
      std::erase_if( cps, detail::is_symbolic );

    size_t lo = 0, hi = cps.size();
    if ( cfg.strip_punctuation )
    {
      while ( lo < hi && detail::is_punct_cp( cps[lo] ) )
        ++lo;
      while ( hi > lo && detail::is_punct_cp( cps[hi - 1] ) )
        --hi;
    }
    if ( lo == hi )
      continue;

    std::string token;
    for ( size_t k = lo; k < hi; ++k )
      detail::encode_utf8( cps[k], token );

    if ( cfg.strip_stopwords && is_stopword( token, cfg.stopword_list ) )
      continue;
    if ( cfg.lemmatize )
      token = lemmatize_token( std::move( token ) );
    if ( !token.empty() )
      tokens.push_back( std::move( token ) );
  }
  return tokens;
}

} // namespace tsetlin::text
