#include "xregex/clustering.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace xregex {

std::vector<NodeId> extended_nodes(const Ast& ast) {
  std::vector<bool> below(ast.size(), false);  // subtree holds an & or ! node
  std::vector<NodeId> out;
  for (NodeId v : ast.postorder()) {
    const AstNode& n = ast.node(v);
    const bool left = n.left != kNoNode && below[n.left];
    const bool right = n.right != kNoNode && below[n.right];
    if (is_extended(n.kind) || (left && right)) out.push_back(v);
    below[v] = is_extended(n.kind) || left || right;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_extended_node(const Ast& ast, NodeId p) {
  const AstNode& n = ast.node(p);
  const int kids = arity(n.kind);
  const bool ok = (kids == 1 && n.kind == NodeKind::Complement) ||
                  (kids == 2 && (n.kind == NodeKind::Intersect || n.kind == NodeKind::Concat ||
                                 n.kind == NodeKind::Union));
  if (!ok)
    throw std::logic_error("extended node " + std::to_string(p) + " is labeled " +
                           std::string(kind_name(n.kind)));
}

}  // namespace

Clustering build_clusters(const Ast& ast) {
  Clustering out;
  ClusterPartition& cp = out.partition;
  MacroTree& mt = out.macro;

  std::vector<bool> in_p(ast.size(), false);
  for (NodeId p : extended_nodes(ast)) {
    check_extended_node(ast, p);
    in_p[p] = true;
  }

  cp.node_to_cluster.assign(ast.size(), kNoCluster);
  std::vector<NodeId> stack{ast.root()};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    const NodeId parent = ast.node(v).parent;
    ClusterId c;
    if (parent == kNoNode || in_p[parent]) {
      c = static_cast<ClusterId>(cp.clusters.size());
      Cluster fresh;
      fresh.root = v;
      cp.clusters.push_back(std::move(fresh));
      MacroNode macro;
      if (parent != kNoNode) {
        macro.parent = cp.node_to_cluster[parent];
        mt.nodes[macro.parent].children.push_back(c);
      }
      mt.nodes.push_back(std::move(macro));
    } else {
      c = cp.node_to_cluster[parent];
    }
    cp.node_to_cluster[v] = c;
    cp.clusters[c].members.push_back(v);
    if (in_p[v]) {
      if (cp.clusters[c].extended)
        throw std::logic_error("cluster " + std::to_string(c) + " holds two extended nodes");
      cp.clusters[c].extended = v;
    }
    const AstNode& n = ast.node(v);
    // Right pushed first so the left subtree gets the smaller cluster ids.
    if (n.right != kNoNode) stack.push_back(n.right);
    if (n.left != kNoNode) stack.push_back(n.left);
  }

  for (Cluster& cluster : cp.clusters) {
    // Children always carry smaller ids than their parents.
    std::sort(cluster.members.begin(), cluster.members.end());
    const bool internal = !mt.nodes[&cluster - cp.clusters.data()].children.empty();
    if (internal != cluster.extended.has_value())
      throw std::logic_error("cluster rooted at node " + std::to_string(cluster.root) +
                             " breaks the one-extended-node-per-internal-cluster rule");
  }

  for (std::size_t c = mt.nodes.size(); c-- > 0;) {
    MacroNode& node = mt.nodes[c];
    node.size = 1;
    for (ClusterId child : node.children) node.size += mt.nodes[child].size;
  }
  heavy_paths(mt);
  return out;
}

void heavy_paths(MacroTree& tree) {
  for (MacroNode& node : tree.nodes) {
    node.heavy_child = kNoCluster;
    for (ClusterId child : node.children) {
      if (node.heavy_child == kNoCluster || tree.nodes[child].size > tree.nodes[node.heavy_child].size)
        node.heavy_child = child;
    }
  }
}

bool MacroTree::is_heavy(ClusterId c) const {
  const ClusterId parent = at(c).parent;
  return parent != kNoCluster && at(parent).heavy_child == c;
}

std::size_t MacroTree::light_depth(ClusterId c) const {
  std::size_t light = 0;
  for (; at(c).parent != kNoCluster; c = at(c).parent)
    if (!is_heavy(c)) ++light;
  return light;
}

std::size_t MacroTree::max_light_depth() const {
  std::size_t worst = 0;
  for (ClusterId c = 0; c < count(); ++c)
    if (at(c).children.empty()) worst = std::max(worst, light_depth(c));
  return worst;
}

Tnfa build_cluster_tnfa(const Ast& ast, const ClusterPartition& partition, ClusterId c) {
  const Cluster& cluster = partition.at(c);
  if (cluster.extended && cluster.size() == 1)
    throw std::invalid_argument("build_cluster_tnfa: cluster " + std::to_string(c) +
                                " is a lone extended node and has no automaton");
  return build_tnfa(ast, cluster.root, cluster.extended);
}

void write_json(const Ast& ast, const Clustering& clustering, std::ostream& out) {
  const auto& cp = clustering.partition;
  const auto& mt = clustering.macro;
  nlohmann::json clusters = nlohmann::json::array();
  for (ClusterId c = 0; c < cp.count(); ++c) {
    const Cluster& cluster = cp.at(c);
    const MacroNode& macro = mt.at(c);
    nlohmann::json j{
        {"id", c},
        {"root", cluster.root},
        {"members", cluster.members},
        {"m_C", cluster.size()},
        {"kind", macro.children.empty() ? "leaf" : "internal"},
        {"expression", render(ast, cluster.root)},
        {"children", macro.children},
        {"size", macro.size},
        {"heavy", mt.is_heavy(c)},
    };
    j["extended"] = cluster.extended ? nlohmann::json(*cluster.extended) : nlohmann::json(nullptr);
    j["parent"] = macro.parent == kNoCluster ? nlohmann::json(nullptr) : nlohmann::json(macro.parent);
    clusters.push_back(std::move(j));
  }
  nlohmann::json doc{{"ell", cp.count()},
                     {"k", count_extended(ast)},
                     {"extended_nodes", extended_nodes(ast)},
                     {"max_light_depth", mt.max_light_depth()},
                     {"clusters", std::move(clusters)}};
  out << doc.dump(2) << '\n';
}

void write_dot(const Ast& ast, const Clustering& clustering, std::ostream& out) {
  const auto& cp = clustering.partition;
  const auto& mt = clustering.macro;
  out << "digraph clusters {\n  node [shape=circle];\n";
  for (ClusterId c = 0; c < cp.count(); ++c) {
    const Cluster& cluster = cp.at(c);
    out << "  subgraph cluster_" << c << " {\n    label=\"C" << c << "\";\n";
    for (NodeId v : cluster.members) {
      const AstNode& n = ast.node(v);
      std::string label(kind_name(n.kind));
      if (n.kind == NodeKind::Char) {
        const char ch = static_cast<char>(n.symbol);
        label = (ch == '"' || ch == '\\') ? std::string("\\") + ch : std::string(1, ch);
      }
      out << "    n" << v << " [label=\"" << label << "\"";
      if (cluster.extended && *cluster.extended == v) out << ", style=filled, fillcolor=gray";
      out << "];\n";
    }
    out << "  }\n";
  }
  for (NodeId v = 0; v < ast.size(); ++v) {
    for (NodeId child : ast.children(v)) {
      out << "  n" << v << " -> n" << child;
      const ClusterId cc = cp.node_to_cluster[child];
      if (cp.node_to_cluster[v] != cc) out << (mt.is_heavy(cc) ? " [style=bold]" : " [style=dashed]");
      out << ";\n";
    }
  }
  out << "}\n";
}

}  // namespace xregex
