#pragma once

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xregex {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class NodeKind : std::uint8_t {
  Char,
  Epsilon,
  Concat,
  Union,
  Intersect,
  Complement,
  Star,
};

std::string_view kind_name(NodeKind kind);

constexpr bool is_extended(NodeKind kind) {
  return kind == NodeKind::Intersect || kind == NodeKind::Complement;
}

constexpr int arity(NodeKind kind) {
  switch (kind) {
    case NodeKind::Char:
    case NodeKind::Epsilon:
      return 0;
    case NodeKind::Complement:
    case NodeKind::Star:
      return 1;
    default:
      return 2;
  }
}

struct AstNode {
  NodeKind kind = NodeKind::Epsilon;
  unsigned char symbol = 0;  // Char only
  NodeId left = kNoNode;     // sole child for unary nodes
  NodeId right = kNoNode;
  NodeId parent = kNoNode;
};

// Parse tree of an extended regular expression. Nodes are stored in creation
// order, which is a postorder: every child id is smaller than its parent id.
class Ast {
 public:
  Ast() = default;

  NodeId add_char(unsigned char c);
  NodeId add_epsilon();
  NodeId add_unary(NodeKind kind, NodeId child);
  NodeId add_binary(NodeKind kind, NodeId left, NodeId right);
  void set_root(NodeId root);

  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const AstNode& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<AstNode>& nodes() const { return nodes_; }

  // Children in left-to-right order (0, 1 or 2 entries).
  std::vector<NodeId> children(NodeId id) const;

  // Ids of the subtree rooted at `id`, children before parents.
  std::vector<NodeId> postorder(NodeId id) const;
  std::vector<NodeId> postorder() const { return postorder(root_); }

  std::size_t subtree_size(NodeId id) const;

 private:
  NodeId push(AstNode node);

  std::vector<AstNode> nodes_;
  NodeId root_ = kNoNode;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& reason);
  std::size_t offset() const { return offset_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t offset_;
  std::string reason_;
};

// Grammar, tightest first: postfix `*`, prefix `!`, juxtaposition, `&`, `|`.
// `()` is the empty string; `\` escapes any of `!&|*()\`.
Ast parse(std::string_view pattern);

// Renders with the fewest parentheses that re-parse to the same tree.
std::string render(const Ast& ast);
std::string render(const Ast& ast, NodeId root);

// The number of intersection and complement nodes.
std::size_t count_extended(const Ast& ast);

// Throws std::logic_error describing the first broken arity/parent link.
void validate(const Ast& ast);

// Tree equality ignoring node numbering.
bool structurally_equal(const Ast& a, NodeId a_root, const Ast& b, NodeId b_root);
inline bool structurally_equal(const Ast& a, const Ast& b) {
  return structurally_equal(a, a.root(), b, b.root());
}

// Finite byte alphabet. The placeholder symbol of cluster automata is not a
// byte, so it can never be a member.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string_view symbols);

  void add(unsigned char c) { bits_.set(c); }
  void add(std::string_view symbols);
  void add_leaves(const Ast& ast);
  bool contains(unsigned char c) const { return bits_.test(c); }
  bool covers(std::string_view text) const;
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  std::string symbols() const;

  // chars(text) plus every Char leaf of `ast`.
  static Alphabet for_match(const Ast& ast, std::string_view text);

 private:
  std::bitset<256> bits_;
};

void write_json(const Ast& ast, std::ostream& out);
void write_dot(const Ast& ast, std::ostream& out);

}  // namespace xregex
