#pragma once

#include "xregex/ast.hpp"
#include "xregex/match_graph.hpp"

#include <cstddef>
#include <functional>
#include <string_view>

namespace xregex {

// Hopcroft-Ullmann bottom-up evaluation: one match graph per parse-tree node.
// Child graphs are released as soon as their parent is built.

using NodeGraphVisitor = std::function<void(NodeId, const MatchGraph&)>;

struct DpStats {
  std::size_t nodes_evaluated = 0;
  std::size_t peak_live_graphs = 0;
};

MatchGraph dp_node_graph(const Ast& ast, NodeId v, std::string_view text,
                         DpStats* stats = nullptr);

bool dp_is_match(const Ast& ast, std::string_view text, DpStats* stats = nullptr);

// Calls `visit` on every node of the tree, children before parents.
void dp_all_graphs(const Ast& ast, std::string_view text, const NodeGraphVisitor& visit);

}  // namespace xregex
