#include "xregex/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace xregex {

namespace {

struct ShapeNode {
  int arity = 0;
  std::size_t left = 0;
  std::size_t right = 0;
};

// Appends a tree of exactly `size` nodes in postorder; returns its root index.
std::size_t grow(Rng& rng, const AstShape& shape, std::size_t size,
                 std::vector<ShapeNode>& out) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  ShapeNode node;
  if (size == 1) {
    node.arity = 0;
  } else if (size == 2 || coin(rng) < shape.unary) {
    node.arity = 1;
    node.left = grow(rng, shape, size - 1, out);
  } else {
    std::uniform_int_distribution<std::size_t> split(1, size - 2);
    const std::size_t left_size = split(rng);
    node.arity = 2;
    node.left = grow(rng, shape, left_size, out);
    node.right = grow(rng, shape, size - 1 - left_size, out);
  }
  out.push_back(node);
  return out.size() - 1;
}

}  // namespace

Ast random_ast(Rng& rng, const AstShape& shape) {
  if (shape.nodes == 0) throw std::invalid_argument("random_ast: need at least one node");
  if (shape.symbols.empty()) throw std::invalid_argument("random_ast: empty leaf alphabet");

  std::vector<ShapeNode> nodes;
  nodes.reserve(shape.nodes);
  grow(rng, shape, shape.nodes, nodes);

  std::vector<std::size_t> internal;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].arity > 0) internal.push_back(i);
  std::shuffle(internal.begin(), internal.end(), rng);
  std::vector<bool> extended(nodes.size(), false);
  for (std::size_t i = 0; i < std::min(shape.extended, internal.size()); ++i)
    extended[internal[i]] = true;

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, shape.symbols.size() - 1);
  Ast ast;
  std::vector<NodeId> ids(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ShapeNode& s = nodes[i];
    if (s.arity == 0) {
      ids[i] = coin(rng) < shape.epsilon_leaf
                   ? ast.add_epsilon()
                   : ast.add_char(static_cast<unsigned char>(shape.symbols[pick(rng)]));
    } else if (s.arity == 1) {
      ids[i] = ast.add_unary(extended[i] ? NodeKind::Complement : NodeKind::Star, ids[s.left]);
    } else {
      NodeKind kind = NodeKind::Intersect;
      if (!extended[i]) kind = coin(rng) < shape.union_share ? NodeKind::Union : NodeKind::Concat;
      ids[i] = ast.add_binary(kind, ids[s.left], ids[s.right]);
    }
  }
  ast.set_root(ids.back());
  return ast;
}

std::string random_text(Rng& rng, std::size_t length, const std::string& symbols) {
  if (symbols.empty()) throw std::invalid_argument("random_text: empty alphabet");
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  std::string out(length, '\0');
  for (char& c : out) c = symbols[pick(rng)];
  return out;
}

std::string complement_chain(std::size_t depth) {
  std::string pattern = "a";
  for (std::size_t i = 0; i < depth; ++i) pattern = "!(" + pattern + ")b";
  return pattern;
}

std::string balanced_intersections(std::size_t depth) {
  std::vector<std::string> level;
  const std::size_t leaves = std::size_t{1} << depth;
  for (std::size_t i = 0; i < leaves; ++i) level.push_back(i % 2 ? "a(a|b)*" : "(a|b)*");
  while (level.size() > 1) {
    std::vector<std::string> up;
    for (std::size_t i = 0; i < level.size(); i += 2)
      up.push_back("(" + level[i] + ")&(" + level[i + 1] + ")");
    level = std::move(up);
  }
  return level.front();
}

}  // namespace xregex
