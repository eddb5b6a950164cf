#include "xregex/engine.hpp"

#include <chrono>
#include <stdexcept>
#include <string>
#include <utility>

namespace xregex {

std::string_view mode_name(TraversalMode mode) {
  return mode == TraversalMode::HeavyPath ? "heavy-path" : "naive";
}

TraversalMode parse_mode(std::string_view name) {
  if (name == "heavy-path") return TraversalMode::HeavyPath;
  if (name == "naive") return TraversalMode::NaiveBottomUp;
  throw std::invalid_argument("unknown space mode '" + std::string(name) + "'");
}

ClusteredPattern::ClusteredPattern(Ast ast)
    : ast_(std::move(ast)), clustering_(build_clusters(ast_)) {
  automata_.reserve(clustering_.partition.count());
  for (ClusterId c = 0; c < clustering_.partition.count(); ++c) {
    const Cluster& cluster = clustering_.partition.at(c);
    if (cluster.extended && cluster.size() == 1)
      automata_.emplace_back();
    else
      automata_.emplace_back(build_cluster_tnfa(ast_, clustering_.partition, c));
  }
}

namespace {

// G(p) from the graphs of p's children.
MatchGraph extended_node_graph(const AstNode& p, std::span<const MatchGraph* const> kids) {
  switch (p.kind) {
    case NodeKind::Complement: return complement(*kids[0]);
    case NodeKind::Intersect: return intersect(*kids[0], *kids[1]);
    case NodeKind::Concat: return concat(*kids[0], *kids[1]);
    case NodeKind::Union: return unite(*kids[0], *kids[1]);
    default: break;
  }
  throw std::logic_error("extended node labeled " + std::string(kind_name(p.kind)));
}

}  // namespace

MatchGraph cluster_graph(const ClusteredPattern& pattern, ClusterId c,
                         std::span<const MatchGraph* const> child_graphs, std::string_view text,
                         const TnfaSimulator& sim, SimulatorCost* cost,
                         std::size_t* graph_operations) {
  const Cluster& cluster = pattern.partition().at(c);
  const MacroNode& macro = pattern.macro().at(c);
  if (child_graphs.size() != macro.children.size())
    throw std::invalid_argument("cluster_graph: cluster " + std::to_string(c) + " expects " +
                                std::to_string(macro.children.size()) + " child graphs");
  for (const MatchGraph* g : child_graphs)
    if (g == nullptr || g->n() != text.size())
      throw std::invalid_argument("cluster_graph: missing or mis-sized child graph");

  std::size_t ops = 0;
  auto count = [&](MatchGraph g) {
    ++ops;
    return g;
  };
  auto report = [&](MatchGraph g) {
    if (graph_operations) *graph_operations += ops;
    return g;
  };

  if (!cluster.extended) {
    const Tnfa& a = *pattern.automaton(c);
    return report(build_match_graph(a, a.start(), a.accept(), text, sim, cost));
  }

  const AstNode& p = pattern.ast().node(*cluster.extended);
  if (static_cast<int>(child_graphs.size()) != arity(p.kind))
    throw std::logic_error("cluster_graph: malformed cluster " + std::to_string(c));
  MatchGraph extended = count(extended_node_graph(p, child_graphs));
  if (cluster.size() == 1) return report(std::move(extended));

  const Tnfa& a = *pattern.automaton(c);
  const ExtendedTransition hole = *a.extended();
  const StateId from_start[] = {a.accept(), hole.start};
  const StateId from_hole[] = {hole.start, a.accept()};
  auto start_graphs = build_match_graphs(a, a.start(), from_start, text, sim, cost);
  auto hole_graphs = build_match_graphs(a, hole.end, from_hole, text, sim, cost);
  const MatchGraph& direct = start_graphs[0];     // theta -> phi
  const MatchGraph& lead_in = start_graphs[1];    // theta -> theta'
  const MatchGraph& loop_back = hole_graphs[0];   // phi' -> theta'
  const MatchGraph& lead_out = hole_graphs[1];    // phi' -> phi

  MatchGraph through = count(concat(lead_in, extended));
  const MatchGraph repeat = count(star(count(concat(loop_back, extended))));
  through = count(concat(through, repeat));
  through = count(concat(through, lead_out));
  return report(count(unite(direct, through)));
}

namespace {

class Traversal {
 public:
  Traversal(const ClusteredPattern& pattern, std::string_view text, const TnfaSimulator& sim,
            const ClusterObserver& observe, EngineStats& stats)
      : pattern_(pattern),
        text_(text),
        sim_(sim),
        observe_(observe),
        stats_(stats),
        slots_(pattern.cluster_count()) {}

  MatchGraph naive() {
    // Cluster ids are a preorder, so descending ids visit children first.
    for (ClusterId c = static_cast<ClusterId>(pattern_.cluster_count()); c-- > 0;) process(c);
    MatchGraph root = std::move(*slots_[0]);
    release_all();
    return root;
  }

  MatchGraph heavy_path() {
    descend(pattern_.macro().root());
    MatchGraph root = std::move(*slots_[0]);
    release(0);
    return root;
  }

 private:
  void descend(ClusterId c) {
    const MacroNode& node = pattern_.macro().at(c);
    if (node.heavy_child != kNoCluster) descend(node.heavy_child);
    for (ClusterId child : node.children)
      if (child != node.heavy_child) descend(child);
    process(c);
    for (ClusterId child : node.children) release(child);
  }

  void process(ClusterId c) {
    const MacroNode& node = pattern_.macro().at(c);
    std::vector<const MatchGraph*> kids;
    for (ClusterId child : node.children) kids.push_back(&*slots_.at(child));
    const auto began = std::chrono::steady_clock::now();
    MatchGraph g = cluster_graph(pattern_, c, kids, text_, sim_, &stats_.simulator,
                                 &stats_.graph_operations);
    const auto elapsed = std::chrono::steady_clock::now() - began;
    stats_.clusters.push_back(
        {c, pattern_.partition().at(c).size(),
         static_cast<std::uint64_t>(
             std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count())});
    if (observe_) observe_(c, g);
    slots_[c] = std::move(g);
    ++live_;
    if (live_ > stats_.peak_live_graphs) stats_.peak_live_graphs = live_;
  }

  void release(ClusterId c) {
    if (slots_[c]) {
      slots_[c].reset();
      --live_;
    }
  }

  void release_all() {
    for (ClusterId c = 0; c < slots_.size(); ++c) release(c);
  }

  const ClusteredPattern& pattern_;
  std::string_view text_;
  const TnfaSimulator& sim_;
  const ClusterObserver& observe_;
  EngineStats& stats_;
  std::vector<std::optional<MatchGraph>> slots_;
  std::size_t live_ = 0;
};

}  // namespace

MatchResult match_clustered(const ClusteredPattern& pattern, std::string_view text,
                            const TnfaSimulator& sim, TraversalMode mode,
                            const ClusterObserver& observe) {
  MatchResult result;
  result.stats.cluster_count = pattern.cluster_count();
  result.stats.mode = mode;
  Traversal walk(pattern, text, sim, observe, result.stats);
  result.root_graph = mode == TraversalMode::HeavyPath ? walk.heavy_path() : walk.naive();
  result.matched = result.root_graph.has_edge(0, text.size());
  return result;
}

MatchResult match_clustered(const Ast& ast, std::string_view text, const TnfaSimulator& sim,
                            TraversalMode mode) {
  return match_clustered(ClusteredPattern(ast), text, sim, mode);
}

}  // namespace xregex
