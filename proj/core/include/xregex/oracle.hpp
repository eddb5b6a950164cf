#pragma once

#include "xregex/ast.hpp"
#include "xregex/match_graph.hpp"

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace xregex {

// Brute-force ground truth: the language of an expression restricted to
// strings of length <= max_len over a finite alphabet, computed directly from
// the set semantics of each operator. Deliberately shares no code with the
// match-graph engines.

inline constexpr std::size_t kDefaultFeasibilityCap = 200'000;

// XREGEX_FEASIBILITY_CAP when set to a positive integer, the default otherwise.
std::size_t feasibility_cap_from_env();

class InfeasibleEnumeration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LanguageSlice {
  Alphabet alphabet;
  std::size_t max_len = 0;
  std::set<std::string> members;

  bool contains(std::string_view s) const { return members.count(std::string(s)) != 0; }
};

// Throws InfeasibleEnumeration when |alphabet|^(max_len+1) exceeds `cap`.
LanguageSlice enumerate_language(const Ast& ast, NodeId root, const Alphabet& alphabet,
                                 std::size_t max_len, std::size_t cap = kDefaultFeasibilityCap);
inline LanguageSlice enumerate_language(const Ast& ast, const Alphabet& alphabet,
                                        std::size_t max_len,
                                        std::size_t cap = kDefaultFeasibilityCap) {
  return enumerate_language(ast, ast.root(), alphabet, max_len, cap);
}

// Edge (i, j) iff text[i, j) belongs to the language of the subtree at `root`.
MatchGraph oracle_match_graph(const Ast& ast, NodeId root, std::string_view text,
                              const Alphabet& alphabet, std::size_t cap = kDefaultFeasibilityCap);
inline MatchGraph oracle_match_graph(const Ast& ast, std::string_view text,
                                     const Alphabet& alphabet,
                                     std::size_t cap = kDefaultFeasibilityCap) {
  return oracle_match_graph(ast, ast.root(), text, alphabet, cap);
}

}  // namespace xregex
