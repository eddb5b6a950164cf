#pragma once

#include "xregex/ast.hpp"
#include "xregex/clustering.hpp"
#include "xregex/match_graph.hpp"
#include "xregex/simulate.hpp"
#include "xregex/tnfa.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace xregex {

enum class TraversalMode {
  NaiveBottomUp,  // every cluster graph kept until the match finishes
  HeavyPath,      // heavy child first, child graphs dropped once consumed
};

std::string_view mode_name(TraversalMode mode);
// Accepts "naive" and "heavy-path".
TraversalMode parse_mode(std::string_view name);

// Pattern artifacts shared by every match: the tree, its clustering and one
// automaton per cluster that has one.
class ClusteredPattern {
 public:
  explicit ClusteredPattern(Ast ast);

  const Ast& ast() const { return ast_; }
  const Clustering& clustering() const { return clustering_; }
  const ClusterPartition& partition() const { return clustering_.partition; }
  const MacroTree& macro() const { return clustering_.macro; }
  std::size_t cluster_count() const { return clustering_.partition.count(); }
  // Empty for a single-node internal cluster.
  const std::optional<Tnfa>& automaton(ClusterId c) const { return automata_.at(c); }

 private:
  Ast ast_;
  Clustering clustering_;
  std::vector<std::optional<Tnfa>> automata_;
};

struct ClusterTiming {
  ClusterId id = 0;
  std::size_t m_c = 0;
  std::uint64_t time_ns = 0;
};

struct EngineStats {
  std::size_t cluster_count = 0;
  // Cluster-root graphs held at once, the graph being produced included.
  std::size_t peak_live_graphs = 0;
  std::size_t graph_operations = 0;
  std::vector<ClusterTiming> clusters;
  SimulatorCost simulator;
  TraversalMode mode = TraversalMode::HeavyPath;
};

struct MatchResult {
  bool matched = false;
  MatchGraph root_graph;
  EngineStats stats;
};

// Match graph of cluster c's root from the graphs of its child clusters,
// given in parse-tree order. Leaf clusters simulate their automaton once;
// internal clusters combine the extended node's graph with four automaton
// graphs:
//   G = G[th,ph] | G[th,th'] . G(p) . (G[ph',th'] . G(p))* . G[ph',ph]
MatchGraph cluster_graph(const ClusteredPattern& pattern, ClusterId c,
                         std::span<const MatchGraph* const> child_graphs, std::string_view text,
                         const TnfaSimulator& sim, SimulatorCost* cost = nullptr,
                         std::size_t* graph_operations = nullptr);

using ClusterObserver = std::function<void(ClusterId, const MatchGraph&)>;

MatchResult match_clustered(const ClusteredPattern& pattern, std::string_view text,
                            const TnfaSimulator& sim, TraversalMode mode,
                            const ClusterObserver& observe = {});

MatchResult match_clustered(const Ast& ast, std::string_view text, const TnfaSimulator& sim,
                            TraversalMode mode);

}  // namespace xregex
