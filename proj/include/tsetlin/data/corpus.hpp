#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsetlin::data
{

constexpr int real_label = 0;
constexpr int fake_label = 1;

enum class source_site
{
  politifact,
  gossipcop
};

inline const char* to_string( source_site s )
{
  return s == source_site::politifact ? "politifact" : "gossipcop";
}

inline source_site source_from_string( std::string_view s )
{
  if ( s == "politifact" )
    return source_site::politifact;
  if ( s == "gossipcop" )
    return source_site::gossipcop;
  throw std::invalid_argument( "unknown source: " + std::string( s ) );
}

struct article_record
{
  std::string id;
  std::string title;
  std::string text;
  int label = real_label;
};

struct skipped_row
{
  size_t line = 0; /* physical line where the row starts, 1-based */
  std::string reason;
};

struct corpus
{
  source_site source = source_site::politifact;
  std::vector<article_record> records;
  std::vector<skipped_row> skipped;
  size_t data_rows = 0; /* rows after the header, well-formed or not */

  size_t count( int label ) const
  {
    size_t n = 0;
    for ( const auto& r : records )
      n += r.label == label;
    return n;
  }
};

namespace detail
{

/* RFC 4180 reader: quoted fields may contain commas, quote pairs and
 * newlines.  Tracks the physical start line of every row. */
struct csv_row
{
  std::vector<std::string> fields;
  size_t line = 0;
};

inline std::vector<csv_row> parse_csv( std::string_view content )
{
  std::vector<csv_row> rows;
  size_t i = 0;
  size_t line = 1;
  if ( content.size() >= 3 && content.substr( 0, 3 ) == "\xef\xbb\xbf" )
    i = 3; /* UTF-8 byte-order mark */

  while ( i < content.size() )
  {
    csv_row row;
    row.line = line;
    std::string field;
    bool quoted = false;
    bool row_done = false;
    while ( i < content.size() && !row_done )
    {
      const char c = content[i];
      if ( quoted )
      {
        if ( c == '"' )
        {
          if ( i + 1 < content.size() && content[i + 1] == '"' )
          {
            field.push_back( '"' );
            i += 2;
          }
          else
          {
            quoted = false;
            ++i;
          }
        }
        else
        {
          if ( c == '\n' )
            ++line;
          field.push_back( c );
          ++i;
        }
      }
      else if ( c == '"' && field.empty() )
      {
        quoted = true;
        ++i;
      }
      else if ( c == ',' )
      {
        row.fields.push_back( std::move( field ) );
        field.clear();
        ++i;
      }
      else if ( c == '\n' || c == '\r' )
      {
        if ( c == '\r' && i + 1 < content.size() && content[i + 1] == '\n' )
          ++i;
        ++i;
        ++line;
        row_done = true;
      }
      else
      {
        field.push_back( c );
        ++i;
      }
    }
    row.fields.push_back( std::move( field ) );
    if ( !( row.fields.size() == 1 && row.fields[0].empty() ) ) /* skip blank lines */
      rows.push_back( std::move( row ) );
  }
  return rows;
}

inline std::string trim_lower( std::string_view s )
{
  size_t a = 0, b = s.size();
  while ( a < b && static_cast<uint8_t>( s[a] ) <= ' ' )
    ++a;
  while ( b > a && static_cast<uint8_t>( s[b - 1] ) <= ' ' )
    --b;
  std::string out( s.substr( a, b - a ) );
  for ( char& c : out )
    if ( c >= 'A' && c <= 'Z' )
      c = static_cast<char>( c - 'A' + 'a' );
  return out;
}

} // namespace detail

/*! Loads a labelled article CSV with columns id, title, text, label
 *  (label is "real" or "fake"; extra columns are ignored).
 *
 * Malformed rows are reported with their line number and skipped, or
 * rejected outright in strict mode.  A file without the required header
 * or without any well-formed row is always an error.
 */
inline corpus load_corpus( const std::string& path, source_site source, bool strict = false )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw std::runtime_error( "cannot open data file: " + path );
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string content = std::move( buf ).str();

  auto rows = detail::parse_csv( content );
  if ( rows.empty() )
    throw std::runtime_error( path + ": empty file" );

  const auto& header = rows.front().fields;
  auto column = [&]( std::string_view name ) {
    for ( size_t i = 0; i < header.size(); ++i )
      if ( detail::trim_lower( header[i] ) == name )
        return i;
    throw std::runtime_error( path + ": missing required column '" + std::string( name ) + "'" );
  };
  const size_t col_id = column( "id" );
  const size_t col_title = column( "title" );
  const size_t col_text = column( "text" );
  const size_t col_label = column( "label" );

  corpus c;
  c.source = source;
  auto reject = [&]( size_t line, std::string reason ) {
    if ( strict )
      throw std::runtime_error( path + ":" + std::to_string( line ) + ": " + reason );
    c.skipped.push_back( { line, std::move( reason ) } );
  };

  for ( size_t r = 1; r < rows.size(); ++r )
  {
    auto& row = rows[r];
    ++c.data_rows;
    if ( row.fields.size() != header.size() )
    {
      reject( row.line, "expected " + std::to_string( header.size() ) + " fields, got " + std::to_string( row.fields.size() ) );
      continue;
    }
    article_record rec;
    rec.id = detail::trim_lower( row.fields[col_id] );
    if ( rec.id.empty() )
    {
      reject( row.line, "empty id" );
      continue;
    }
    const std::string label = detail::trim_lower( row.fields[col_label] );
    if ( label == "real" )
      rec.label = real_label;
    else if ( label == "fake" )
      rec.label = fake_label;
    else
    {
      reject( row.line, "label must be 'real' or 'fake', got '" + label + "'" );
      continue;
    }
    rec.title = std::move( row.fields[col_title] );
    rec.text = std::move( row.fields[col_text] );
    c.records.push_back( std::move( rec ) );
  }
  if ( c.records.empty() )
    throw std::runtime_error( path + ": no well-formed data rows" );
  return c;
}

} // namespace tsetlin::data
