#pragma once

#include "xregex/ast.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

namespace xregex {

using Rng = std::mt19937_64;

struct AstShape {
  std::size_t nodes = 9;         // exact node count m
  std::size_t extended = 1;      // upper bound on k; reached when enough internal nodes exist
  std::string symbols = "ab";    // leaf alphabet
  double epsilon_leaf = 0.05;    // chance a leaf is () instead of a symbol
  double unary = 0.3;            // chance an internal node of size >= 2 is unary
  double union_share = 0.4;      // among plain binary nodes
};

// Uniformly shaped random parse tree with exactly `shape.nodes` nodes.
Ast random_ast(Rng& rng, const AstShape& shape);

std::string random_text(Rng& rng, std::size_t length, const std::string& symbols);

// "!(...!(!(a)b)b...)b": `depth` complements, each wrapped in a concatenation.
std::string complement_chain(std::size_t depth);

// Perfect tree of `depth` levels of & over leaves "(a|b)*" and "a(a|b)*".
std::string balanced_intersections(std::size_t depth);

}  // namespace xregex
