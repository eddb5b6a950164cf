#pragma once

#include "xregex/ast.hpp"
#include "xregex/tnfa.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace xregex {

using ClusterId = std::uint32_t;
inline constexpr ClusterId kNoCluster = static_cast<ClusterId>(-1);

// Nodes labeled & or !, closed under pairwise lowest common ancestors.
// Returned in increasing id order.
std::vector<NodeId> extended_nodes(const Ast& ast);

struct Cluster {
  NodeId root = kNoNode;
  std::vector<NodeId> members;      // postorder within the cluster
  std::optional<NodeId> extended;   // set exactly for internal clusters
  std::size_t size() const { return members.size(); }
};

// Node-disjoint connected pieces of the parse tree left after deleting the
// edges from every extended node to its children. Cluster 0 holds the root;
// ids follow a preorder of the parse tree, so parents precede children.
struct ClusterPartition {
  std::vector<Cluster> clusters;
  std::vector<ClusterId> node_to_cluster;

  std::size_t count() const { return clusters.size(); }
  const Cluster& at(ClusterId c) const { return clusters.at(c); }
};

struct MacroNode {
  ClusterId parent = kNoCluster;
  std::vector<ClusterId> children;  // parse-tree order of the extended node's children
  std::size_t size = 1;             // descendant clusters, itself included
  ClusterId heavy_child = kNoCluster;
};

// Tree over clusters obtained by contracting every internal edge.
struct MacroTree {
  std::vector<MacroNode> nodes;

  std::size_t count() const { return nodes.size(); }
  ClusterId root() const { return 0; }
  const MacroNode& at(ClusterId c) const { return nodes.at(c); }
  bool is_heavy(ClusterId c) const;
  // Light edges on the path from the root down to `c`.
  std::size_t light_depth(ClusterId c) const;
  std::size_t max_light_depth() const;
};

struct Clustering {
  ClusterPartition partition;
  MacroTree macro;
};

Clustering build_clusters(const Ast& ast);

// Marks, for every cluster with children, one child of maximum size as heavy
// (left child on ties; a sole child is always heavy). Requires sizes.
void heavy_paths(MacroTree& tree);

// Thompson automaton of the cluster's piece of the parse tree, the extended
// node replaced by the placeholder transition. Throws std::invalid_argument
// for a single-node internal cluster, whose graph is that of its extended node.
Tnfa build_cluster_tnfa(const Ast& ast, const ClusterPartition& partition, ClusterId c);

void write_json(const Ast& ast, const Clustering& clustering, std::ostream& out);
void write_dot(const Ast& ast, const Clustering& clustering, std::ostream& out);

}  // namespace xregex
