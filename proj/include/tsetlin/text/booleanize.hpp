#pragma once

#include "../document.hpp"
#include "vocabulary.hpp"

#include <string>
#include <vector>

namespace tsetlin::text
{

/*! Set-of-words encoding: feature k is 1 iff vocabulary token k occurs at
 *  least once.  Out-of-vocabulary tokens are ignored; multiplicity is
 *  deliberately discarded.
 */
inline boolean_document booleanize( const std::vector<std::string>& tokens, const vocabulary& vocab, int label = no_label )
{
  std::vector<uint32_t> features;
  features.reserve( tokens.size() );
  for ( const auto& t : tokens )
    if ( vocab.contains( t ) )
      features.push_back( vocab.at( t ) );
  return make_document( vocab.size(), std::move( features ), label );
}

inline std::vector<boolean_document> booleanize_corpus( const std::vector<std::vector<std::string>>& docs, const std::vector<int>& labels, const vocabulary& vocab )
{
  std::vector<boolean_document> out;
  out.reserve( docs.size() );
  for ( size_t i = 0; i < docs.size(); ++i )
    out.push_back( booleanize( docs[i], vocab, labels.empty() ? no_label : labels[i] ) );
  return out;
}

} // namespace tsetlin::text
