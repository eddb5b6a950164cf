#include "test_support.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace xregex;
using namespace xregex::testing;

namespace {

std::vector<NodeId> ids(std::initializer_list<NodeId> list) { return std::vector<NodeId>(list); }

// Sizes for a hand-built macro tree; children always have larger ids.
void fill_sizes(MacroTree& t) {
  for (ClusterId c = static_cast<ClusterId>(t.count()); c-- > 0;) {
    t.nodes[c].size = 1;
    for (ClusterId ch : t.nodes[c].children) t.nodes[c].size += t.nodes[ch].size;
  }
}

MacroTree tree_from_parents(const std::vector<ClusterId>& parent) {
  MacroTree t;
  t.nodes.resize(parent.size());
  for (ClusterId c = 0; c < parent.size(); ++c) {
    t.nodes[c].parent = parent[c];
    if (parent[c] != kNoCluster) t.nodes[parent[c]].children.push_back(c);
  }
  fill_sizes(t);
  heavy_paths(t);
  return t;
}

std::size_t floor_log2(std::size_t x) {
  std::size_t r = 0;
  while (x >>= 1) ++r;
  return r;
}

void check_invariants(const Ast& t, const Clustering& cl) {
  const auto& cp = cl.partition;
  const auto& mt = cl.macro;
  REQUIRE(cp.node_to_cluster.size() == t.size());
  std::vector<int> cover(t.size(), 0);
  for (ClusterId c = 0; c < cp.count(); ++c) {
    const Cluster& cluster = cp.at(c);
    CHECK(std::is_sorted(cluster.members.begin(), cluster.members.end()));
    CHECK(cluster.members.back() == cluster.root);
    for (NodeId v : cluster.members) {
      ++cover[v];
      CHECK(cp.node_to_cluster[v] == c);
      // connected: every non-root member's parent is a member too
      if (v != cluster.root) CHECK(cp.node_to_cluster[t.node(v).parent] == c);
    }
    const bool internal = !mt.at(c).children.empty();
    CHECK(internal == cluster.extended.has_value());
    if (cluster.extended) {
      const NodeId p = *cluster.extended;
      const NodeKind kind = t.node(p).kind;
      CHECK((is_extended(kind) || kind == NodeKind::Concat || kind == NodeKind::Union));
      // every child of p starts a child cluster
      for (NodeId child : t.children(p)) {
        CHECK(cp.node_to_cluster[child] != c);
        CHECK(cp.at(cp.node_to_cluster[child]).root == child);
      }
      // the only member with children outside the cluster
      for (NodeId v : cluster.members)
        if (v != p)
          for (NodeId child : t.children(v)) CHECK(cp.node_to_cluster[child] == c);
    } else {
      for (NodeId v : cluster.members) CHECK_FALSE(is_extended(t.node(v).kind));
    }
    if (mt.at(c).parent != kNoCluster) CHECK(mt.at(c).parent < c);
    std::size_t size = 1;
    for (ClusterId ch : mt.at(c).children) size += mt.at(ch).size;
    CHECK(mt.at(c).size == size);
  }
  for (int n : cover) CHECK(n == 1);
  CHECK(cp.at(0).root == t.root());
}

}  // namespace

TEST_CASE("extended nodes of the worked pattern") {
  const Ast t = parse(kWorkedPattern);
  CHECK(extended_nodes(t) == ids({4, 15}));
}

TEST_CASE("lowest common ancestors are added") {
  const Ast t = parse("(!a)b(!c)");
  const auto p = extended_nodes(t);
  CHECK(p.size() == 3);
  CHECK(p == ids({1, 5, 6}));
  CHECK(t.node(6).kind == NodeKind::Concat);
  CHECK(extended_nodes(parse("ab|c*")).empty());
}

TEST_CASE("worked pattern clusters") {
  const Ast t = parse(kWorkedPattern);
  const Clustering cl = build_clusters(t);
  const auto& cp = cl.partition;
  REQUIRE(cp.count() == 4);
  CHECK(cp.at(0).members == ids({15}));
  CHECK(cp.at(1).members == ids({4, 5, 6}));
  CHECK(cp.at(2).members == ids({0, 1, 2, 3}));
  CHECK(cp.at(3).members == ids({7, 8, 9, 10, 11, 12, 13, 14}));
  CHECK(cp.at(0).extended == NodeId{15});
  CHECK(cp.at(1).extended == NodeId{4});
  CHECK_FALSE(cp.at(2).extended);
  CHECK_FALSE(cp.at(3).extended);

  const auto& mt = cl.macro;
  CHECK(mt.at(0).children == std::vector<ClusterId>{1, 3});
  CHECK(mt.at(1).children == std::vector<ClusterId>{2});
  CHECK(mt.at(0).size == 4);
  CHECK(mt.at(0).heavy_child == 1);
  CHECK(mt.at(1).heavy_child == 2);
  CHECK(mt.max_light_depth() == 1);
  check_invariants(t, cl);
}

TEST_CASE("pattern without extended operators is one cluster") {
  const Ast t = parse("ab(b|c)*");
  const Clustering cl = build_clusters(t);
  REQUIRE(cl.partition.count() == 1);
  CHECK(cl.partition.at(0).size() == t.size());
  CHECK(cl.macro.max_light_depth() == 0);
  check_invariants(t, cl);
}

TEST_CASE("lca pattern clusters") {
  const Ast t = parse("(!a)b(!c)");
  const Clustering cl = build_clusters(t);
  CHECK(cl.partition.count() == 5);
  CHECK(cl.partition.count() <= 4 * 2 - 1);
  check_invariants(t, cl);
}

TEST_CASE("complement chains stay within 4k - 1 clusters") {
  for (std::size_t k = 1; k <= 10; ++k) {
    const Ast t = parse(std::string(k, '!') + "a");
    const Clustering cl = build_clusters(t);
    CHECK(cl.partition.count() == k + 1);
    CHECK(cl.partition.count() <= 4 * k - 1);
    CHECK(cl.macro.max_light_depth() == 0);
    check_invariants(t, cl);
  }
  for (std::size_t depth = 1; depth <= 12; ++depth) {
    const Ast t = parse(complement_chain(depth));
    const Clustering cl = build_clusters(t);
    CHECK(cl.partition.count() == depth + 1);
    check_invariants(t, cl);
  }
}

TEST_CASE("balanced intersections") {
  const Ast t = parse("(a&b)&(c&d)");
  const Clustering cl = build_clusters(t);
  CHECK(cl.partition.count() == 7);
  CHECK(cl.macro.max_light_depth() <= 2);
  check_invariants(t, cl);

  const Ast big = parse(balanced_intersections(4));
  const Clustering bc = build_clusters(big);
  CHECK(bc.partition.count() == 31);
  CHECK(bc.macro.max_light_depth() <= floor_log2(31));
}

TEST_CASE("caterpillar") {
  const Ast t = parse("(((a&b)&c)&d)&e");
  const Clustering cl = build_clusters(t);
  CHECK(cl.partition.count() == 9);
  CHECK(cl.macro.max_light_depth() <= 1);
  // the spine of intersections is one heavy path
  for (ClusterId c = 0; c < cl.partition.count(); ++c)
    if (cl.partition.at(c).extended && cl.macro.at(c).parent != kNoCluster)
      CHECK(cl.macro.is_heavy(c));
}

TEST_CASE("heavy paths on hand-built macro trees") {
  // single node
  MacroTree one = tree_from_parents({kNoCluster});
  CHECK(one.max_light_depth() == 0);
  CHECK(one.at(0).heavy_child == kNoCluster);

  // ties go left, a sole child is heavy
  MacroTree tie = tree_from_parents({kNoCluster, 0, 0, 1});
  CHECK(tie.at(0).heavy_child == 1);
  CHECK(tie.at(1).heavy_child == 3);
  CHECK(tie.is_heavy(3));

  MacroTree lopsided = tree_from_parents({kNoCluster, 0, 0, 2, 2});
  CHECK(lopsided.at(0).heavy_child == 2);
  CHECK(lopsided.light_depth(1) == 1);
  CHECK(lopsided.light_depth(4) == 1);
  CHECK(lopsided.light_depth(3) == 0);
}

TEST_CASE("light depth is logarithmic on random macro trees") {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const std::size_t count = 1 + i;
    std::vector<ClusterId> parent(count, kNoCluster);
    for (ClusterId c = 1; c < count; ++c)
      parent[c] = std::uniform_int_distribution<ClusterId>(0, c - 1)(rng);
    const MacroTree t = tree_from_parents(parent);
    for (ClusterId c = 0; c < count; ++c) {
      CHECK(t.light_depth(c) <= floor_log2(count));
      if (!t.at(c).children.empty()) {
        const ClusterId h = t.at(c).heavy_child;
        REQUIRE(h != kNoCluster);
        for (ClusterId ch : t.at(c).children) CHECK(t.at(ch).size <= t.at(h).size);
      }
    }
  }
}

TEST_CASE("cluster automata") {
  const Ast t = parse(kWorkedPattern);
  const Clustering cl = build_clusters(t);

  CHECK_THROWS_AS(build_cluster_tnfa(t, cl.partition, 0), std::invalid_argument);

  const Tnfa c1 = build_cluster_tnfa(t, cl.partition, 1);
  CHECK(c1.state_count() == 3);
  REQUIRE(c1.extended());
  CHECK(c1.extended()->start == 0);
  CHECK(c1.extended()->end == 1);
  CHECK(c1.accept() == 2);

  const Tnfa c2 = build_cluster_tnfa(t, cl.partition, 2);
  const Tnfa direct = build_tnfa(parse("(a|b)*"));
  CHECK_FALSE(c2.extended());
  CHECK(c2.state_count() == direct.state_count());
  CHECK(c2.transitions().size() == direct.transitions().size());
  CHECK(accepts(c2, "abba"));
}

TEST_CASE("placeholder inside a loop") {
  // cluster (x(!a)y)* has the placeholder on a cycle through the star
  const Ast t = parse("(x(!a)y)*");
  const Clustering cl = build_clusters(t);
  REQUIRE(cl.partition.count() == 2);
  const Tnfa a = build_cluster_tnfa(t, cl.partition, 0);
  REQUIRE(a.extended());
  std::size_t betas = 0;
  for (const Transition& tr : a.transitions())
    if (tr.label.kind == LabelKind::Beta) ++betas;
  CHECK(betas == 1);
  CHECK(accepts(a, ""));
  CHECK_FALSE(accepts(a, "xy"));
}

TEST_CASE("random trees: bounds and invariants") {
  Rng rng(606);
  for (int i = 0; i < 400; ++i) {
    AstShape shape;
    shape.nodes = 1 + i % 80;
    shape.extended = i % 9;
    const Ast t = random_ast(rng, shape);
    const std::size_t k = count_extended(t);
    const Clustering cl = build_clusters(t);
    check_invariants(t, cl);
    if (k == 0) {
      CHECK(cl.partition.count() == 1);
    } else {
      CHECK(cl.partition.count() <= 4 * k - 1);
    }
    CHECK(cl.macro.max_light_depth() <= floor_log2(cl.partition.count()));
    for (ClusterId c = 0; c < cl.partition.count(); ++c) {
      const Cluster& cluster = cl.partition.at(c);
      if (cluster.extended && cluster.size() == 1) continue;
      const Tnfa a = build_cluster_tnfa(t, cl.partition, c);
      CHECK(a.state_count() <= 2 * cluster.size());
      CHECK(a.transitions().size() <= 4 * cluster.size());
    }
  }
}

TEST_CASE("dumps") {
  const Ast t = parse(kWorkedPattern);
  const Clustering cl = build_clusters(t);
  std::ostringstream js;
  write_json(t, cl, js);
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["ell"] == 4);
  CHECK(doc["clusters"].size() == 4);
  CHECK(doc["clusters"][1]["expression"] == "!(a|b)*b");

  std::ostringstream dot;
  write_dot(t, cl, dot);
  std::string why;
  CHECK_MESSAGE(valid_dot(dot.str(), &why), why);
  CHECK(dot.str().find("style=bold") != std::string::npos);
  CHECK(dot.str().find("style=dashed") != std::string::npos);
}
