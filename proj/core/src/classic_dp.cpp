#include "xregex/classic_dp.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace xregex {

namespace {

MatchGraph evaluate(const Ast& ast, NodeId top, std::string_view text,
                    const NodeGraphVisitor* visit, DpStats* stats) {
  std::vector<std::optional<MatchGraph>> graphs(ast.size());
  std::size_t live = 0;
  std::size_t peak = 0;
  std::size_t evaluated = 0;

  auto take = [&](NodeId c) {
    MatchGraph g = std::move(*graphs[c]);
    graphs[c].reset();
    --live;
    return g;
  };

  for (NodeId v : ast.postorder(top)) {
    const AstNode& n = ast.node(v);
    MatchGraph g;
    switch (n.kind) {
      case NodeKind::Char:
        g = from_char(text, n.symbol);
        break;
      case NodeKind::Epsilon:
        g = from_epsilon(text.size());
        break;
      case NodeKind::Concat:
        g = concat(*graphs[n.left], *graphs[n.right]);
        break;
      case NodeKind::Union:
        g = unite(*graphs[n.left], *graphs[n.right]);
        break;
      case NodeKind::Intersect:
        g = intersect(*graphs[n.left], *graphs[n.right]);
        break;
      case NodeKind::Complement:
        g = complement(*graphs[n.left]);
        break;
      case NodeKind::Star:
        g = star(*graphs[n.left]);
        break;
    }
    ++evaluated;
    if (visit) (*visit)(v, g);
    graphs[v] = std::move(g);
    ++live;
    if (live > peak) peak = live;
    if (n.left != kNoNode) take(n.left);
    if (n.right != kNoNode) take(n.right);
  }

  if (stats) {
    stats->nodes_evaluated = evaluated;
    stats->peak_live_graphs = peak;
  }
  return take(top);
}

}  // namespace

MatchGraph dp_node_graph(const Ast& ast, NodeId v, std::string_view text, DpStats* stats) {
  return evaluate(ast, v, text, nullptr, stats);
}

bool dp_is_match(const Ast& ast, std::string_view text, DpStats* stats) {
  return dp_node_graph(ast, ast.root(), text, stats).has_edge(0, text.size());
}

void dp_all_graphs(const Ast& ast, std::string_view text, const NodeGraphVisitor& visit) {
  evaluate(ast, ast.root(), text, &visit, nullptr);
}

}  // namespace xregex
