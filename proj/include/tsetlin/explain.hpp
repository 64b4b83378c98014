#pragma once

#include "credibility.hpp"
#include "model.hpp"
#include "text/vocabulary.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsetlin
{

struct rule_literal
{
  std::string token;
  bool negated = false;
};

/*! One clause decoded as a readable conjunction.  A clause with no
 *  includes is inactive: it matches everything during training and votes
 *  never during inference.
 */
struct clause_rule
{
  int class_id = 0;
  polarity pol = polarity::positive;
  uint32_t clause_index = 0;
  std::vector<rule_literal> literals; /* plain first, then negated, index order */

  bool inactive() const { return literals.empty(); }
};

inline std::string to_string( const clause_rule& r )
{
  if ( r.inactive() )
    return "⊤ (inactive)";
  std::string out;
  for ( size_t i = 0; i < r.literals.size(); ++i )
  {
    if ( i )
      out += " ∧ ";
    if ( r.literals[i].negated )
      out += "¬";
    out += r.literals[i].token;
  }
  return out;
}

namespace detail
{

inline void check_vocab( const class_model& m, const text::vocabulary& vocab )
{
  if ( !m.clauses.empty() && m.clauses.front().width != vocab.size() )
    throw std::invalid_argument( "explain: vocabulary size " + std::to_string( vocab.size() ) + " disagrees with feature width " + std::to_string( m.clauses.front().width ) );
}

inline clause_rule decode_clause( const class_model& m, uint32_t j, const text::vocabulary& vocab )
{
  const clause& c = m.clauses[j];
  clause_rule r;
  r.class_id = m.class_id;
  r.pol = m.polarity_of( j );
  r.clause_index = j;
  for ( uint32_t k = 0; k < c.width; ++k )
    if ( c.includes_plain( k ) )
      r.literals.push_back( { vocab.token( k ), false } );
  for ( uint32_t k = 0; k < c.width; ++k )
    if ( c.includes_negated( k ) )
      r.literals.push_back( { vocab.token( k ), true } );
  return r;
}

} // namespace detail

/*! Decodes every clause of every class into conjunction rules, in
 *  (class, clause index) order.
 */
inline std::vector<clause_rule> extract_rules( std::span<const class_model> models, const text::vocabulary& vocab )
{
  std::vector<clause_rule> rules;
  for ( const auto& m : models )
  {
    detail::check_vocab( m, vocab );
    for ( uint32_t j = 0; j < m.clauses.size(); ++j )
      rules.push_back( detail::decode_clause( m, j, vocab ) );
  }
  return rules;
}

struct literal_count
{
  std::string token;
  uint32_t count = 0;
};

struct class_literals
{
  int class_id = 0;
  std::vector<literal_count> plain;
  std::vector<literal_count> negated;
};

/*! Most-included literals per class, counted over the class's positive
 *  clauses at the end of training.  Rows sort by count descending, token
 *  ascending; classes with fewer than n distinct included literals yield
 *  shorter tables.
 */
inline std::vector<class_literals> literal_frequency_table( std::span<const class_model> models, const text::vocabulary& vocab, uint32_t n )
{
  std::vector<class_literals> table;
  for ( const auto& m : models )
  {
    detail::check_vocab( m, vocab );
    std::vector<uint32_t> plain( vocab.size(), 0 ), negated( vocab.size(), 0 );
    for ( uint32_t j = 0; j < m.half(); ++j )
    {
      const clause& c = m.clauses[j];
      for ( uint32_t k = 0; k < c.width; ++k )
      {
        plain[k] += c.includes_plain( k );
        negated[k] += c.includes_negated( k );
      }
    }
    auto top = [&]( const std::vector<uint32_t>& counts ) {
      std::vector<literal_count> rows;
      for ( uint32_t k = 0; k < counts.size(); ++k )
        if ( counts[k] > 0 )
          rows.push_back( { vocab.token( k ), counts[k] } );
      std::sort( rows.begin(), rows.end(), []( const literal_count& a, const literal_count& b ) {
        if ( a.count != b.count )
          return a.count > b.count;
        return a.token < b.token;
      } );
      if ( rows.size() > n )
        rows.resize( n );
      return rows;
    };
    table.push_back( { m.class_id, top( plain ), top( negated ) } );
  }
  return table;
}

/* Share of negated literals among all includes; fake-news machines lean
 * on negated evidence for the true class, so this is a useful smoke
 * statistic. */
inline double negated_include_fraction( std::span<const class_model> models )
{
  uint64_t total = 0, negated = 0;
  for ( const auto& m : models )
    for ( const auto& c : m.clauses )
      for ( uint32_t k = 0; k < c.width; ++k )
      {
        total += c.includes_plain( k ) + c.includes_negated( k );
        negated += c.includes_negated( k );
      }
  return total == 0 ? 0.0 : static_cast<double>( negated ) / static_cast<double>( total );
}

struct activated_clause
{
  int class_id = 0;
  uint32_t clause_index = 0;
  polarity pol = polarity::positive;
  clause_rule rule;
};

struct vote_breakdown
{
  int positive_fired = 0;
  int negative_fired = 0;

  int sum() const { return positive_fired - negative_fired; }
};

/*! Why one document was classified the way it was: the prediction, its
 *  credibility, the matching clauses (up to `top` per class, index order)
 *  and per-class vote tallies that reproduce the class sums exactly.
 */
struct local_explanation
{
  prediction pred;
  double q = 0.0; /* meaningful for the two-class fake/true machine */
  std::map<int, vote_breakdown> votes;
  std::vector<activated_clause> clauses;
};

struct explain_options
{
  uint32_t top = 10;
  double k = 0.012;
  int fake_class = 1;
  int true_class = 0;
};

inline local_explanation explain_prediction( std::span<const class_model> models, const boolean_document& doc, const text::vocabulary& vocab, const explain_options& opt = {} )
{
  local_explanation ex;
  ex.pred = predict_multiclass( models, doc );
  for ( const auto& m : models )
  {
    detail::check_vocab( m, vocab );
    vote_breakdown vb;
    uint32_t listed = 0;
    for ( uint32_t j = 0; j < m.clauses.size(); ++j )
    {
      if ( clause_eval( m.clauses[j], doc, eval_mode::infer ) != 1 )
        continue;
      ( m.polarity_of( j ) == polarity::positive ? vb.positive_fired : vb.negative_fired )++;
      if ( listed < opt.top )
      {
        ex.clauses.push_back( { m.class_id, j, m.polarity_of( j ), detail::decode_clause( m, j, vocab ) } );
        ++listed;
      }
    }
    ex.votes[m.class_id] = vb;
  }
  if ( ex.pred.sums.by_class.contains( opt.fake_class ) && ex.pred.sums.by_class.contains( opt.true_class ) )
    ex.q = credibility_score( ex.pred.sums.at( opt.fake_class ), ex.pred.sums.at( opt.true_class ), opt.k );
  return ex;
}

} // namespace tsetlin
