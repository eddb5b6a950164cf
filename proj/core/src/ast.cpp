#include "xregex/ast.hpp"

#include <nlohmann/json.hpp>

#include <utility>

namespace xregex {

std::string_view kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Char: return "char";
    case NodeKind::Epsilon: return "epsilon";
    case NodeKind::Concat: return "concat";
    case NodeKind::Union: return "union";
    case NodeKind::Intersect: return "intersect";
    case NodeKind::Complement: return "complement";
    case NodeKind::Star: return "star";
  }
  return "?";
}

NodeId Ast::push(AstNode node) {
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(node);
  return id;
}

NodeId Ast::add_char(unsigned char c) {
  AstNode n;
  n.kind = NodeKind::Char;
  n.symbol = c;
  return push(n);
}

NodeId Ast::add_epsilon() { return push(AstNode{}); }

NodeId Ast::add_unary(NodeKind kind, NodeId child) {
  if (arity(kind) != 1) throw std::invalid_argument("add_unary: kind is not unary");
  if (child >= nodes_.size() || nodes_[child].parent != kNoNode)
    throw std::invalid_argument("add_unary: child is missing or already attached");
  AstNode n;
  n.kind = kind;
  n.left = child;
  const NodeId id = push(n);
  nodes_[child].parent = id;
  return id;
}

NodeId Ast::add_binary(NodeKind kind, NodeId left, NodeId right) {
  if (arity(kind) != 2) throw std::invalid_argument("add_binary: kind is not binary");
  for (NodeId c : {left, right}) {
    if (c >= nodes_.size() || nodes_[c].parent != kNoNode)
      throw std::invalid_argument("add_binary: child is missing or already attached");
  }
  if (left == right) throw std::invalid_argument("add_binary: children must differ");
  AstNode n;
  n.kind = kind;
  n.left = left;
  n.right = right;
  const NodeId id = push(n);
  nodes_[left].parent = id;
  nodes_[right].parent = id;
  return id;
}

void Ast::set_root(NodeId root) {
  if (root >= nodes_.size() || nodes_[root].parent != kNoNode)
    throw std::invalid_argument("set_root: not a parentless node");
  root_ = root;
}

std::vector<NodeId> Ast::children(NodeId id) const {
  const AstNode& n = node(id);
  std::vector<NodeId> out;
  if (n.left != kNoNode) out.push_back(n.left);
  if (n.right != kNoNode) out.push_back(n.right);
  return out;
}

std::vector<NodeId> Ast::postorder(NodeId id) const {
  std::vector<NodeId> out;
  if (id == kNoNode) return out;
  // Reverse of a (node, right, left) preorder is (left, right, node).
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    out.push_back(v);
    const AstNode& n = node(v);
    if (n.left != kNoNode) stack.push_back(n.left);
    if (n.right != kNoNode) stack.push_back(n.right);
  }
  return {out.rbegin(), out.rend()};
}

std::size_t Ast::subtree_size(NodeId id) const { return postorder(id).size(); }

ParseError::ParseError(std::size_t offset, const std::string& reason)
    : std::runtime_error("offset " + std::to_string(offset) + ": " + reason),
      offset_(offset),
      reason_(reason) {}

namespace {

constexpr std::string_view kMeta = "!&|*()\\";

bool is_meta(char c) { return kMeta.find(c) != std::string_view::npos; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Ast run() {
    if (text_.empty()) throw ParseError(0, "empty pattern");
    const NodeId root = parse_union();
    if (!at_end()) {
      if (peek() == ')') throw ParseError(pos_, "unbalanced parenthesis");
      throw ParseError(pos_, std::string("unexpected '") + peek() + "'");
    }
    ast_.set_root(root);
    return std::move(ast_);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  bool starts_operand() const {
    if (at_end()) return false;
    const char c = peek();
    return c == '!' || c == '(' || c == '\\' || !is_meta(c);
  }

  NodeId parse_union() {
    NodeId left = parse_intersect();
    while (!at_end() && peek() == '|') {
      ++pos_;
      NodeId right = parse_intersect();
      left = ast_.add_binary(NodeKind::Union, left, right);
    }
    return left;
  }

  NodeId parse_intersect() {
    NodeId left = parse_concat();
    while (!at_end() && peek() == '&') {
      ++pos_;
      NodeId right = parse_concat();
      left = ast_.add_binary(NodeKind::Intersect, left, right);
    }
    return left;
  }

  NodeId parse_concat() {
    if (!starts_operand()) {
      if (at_end()) throw ParseError(pos_, "expected an operand at end of pattern");
      const char c = peek();
      if (c == '|' || c == '&' || c == ')') throw ParseError(pos_, "empty alternative");
      throw ParseError(pos_, std::string("dangling operator '") + c + "'");
    }
    NodeId left = parse_prefix();
    while (starts_operand()) {
      NodeId right = parse_prefix();
      left = ast_.add_binary(NodeKind::Concat, left, right);
    }
    return left;
  }

  NodeId parse_prefix() {
    if (!at_end() && peek() == '!') {
      const std::size_t at = pos_++;
      if (!starts_operand()) throw ParseError(at, "dangling operator '!'");
      return ast_.add_unary(NodeKind::Complement, parse_prefix());
    }
    NodeId atom = parse_atom();
    while (!at_end() && peek() == '*') {
      ++pos_;
      atom = ast_.add_unary(NodeKind::Star, atom);
    }
    return atom;
  }

  NodeId parse_atom() {
    const std::size_t at = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      if (!at_end() && peek() == ')') {
        ++pos_;
        return ast_.add_epsilon();
      }
      NodeId inner = parse_union();
      if (at_end() || peek() != ')') throw ParseError(at, "unbalanced parenthesis");
      ++pos_;
      return inner;
    }
    if (c == '\\') {
      if (pos_ + 1 >= text_.size()) throw ParseError(at, "trailing escape");
      const char escaped = text_[pos_ + 1];
      if (!is_meta(escaped))
        throw ParseError(at, std::string("invalid escape '\\") + escaped + "'");
      pos_ += 2;
      return ast_.add_char(static_cast<unsigned char>(escaped));
    }
    if (c == '*') throw ParseError(at, "dangling operator '*'");
    ++pos_;
    return ast_.add_char(static_cast<unsigned char>(c));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Ast ast_;
};

// Binding strength; higher binds tighter.
int precedence(NodeKind kind) {
  switch (kind) {
    case NodeKind::Union: return 1;
    case NodeKind::Intersect: return 2;
    case NodeKind::Concat: return 3;
    case NodeKind::Complement: return 4;
    case NodeKind::Star: return 5;
    default: return 6;
  }
}

void render_node(const Ast& ast, NodeId id, std::string& out);

void render_operand(const Ast& ast, NodeId id, bool parens, std::string& out) {
  if (parens) out.push_back('(');
  render_node(ast, id, out);
  if (parens) out.push_back(')');
}

void render_node(const Ast& ast, NodeId id, std::string& out) {
  const AstNode& n = ast.node(id);
  const int prec = precedence(n.kind);
  switch (n.kind) {
    case NodeKind::Char:
      if (is_meta(static_cast<char>(n.symbol))) out.push_back('\\');
      out.push_back(static_cast<char>(n.symbol));
      return;
    case NodeKind::Epsilon:
      out += "()";
      return;
    case NodeKind::Complement:
      out.push_back('!');
      render_operand(ast, n.left, precedence(ast.node(n.left).kind) < prec, out);
      return;
    case NodeKind::Star:
      render_operand(ast, n.left, precedence(ast.node(n.left).kind) < prec, out);
      out.push_back('*');
      return;
    default: {
      // Left-associative: a right operand of equal strength needs parentheses.
      render_operand(ast, n.left, precedence(ast.node(n.left).kind) < prec, out);
      if (n.kind == NodeKind::Union) out.push_back('|');
      if (n.kind == NodeKind::Intersect) out.push_back('&');
      render_operand(ast, n.right, precedence(ast.node(n.right).kind) <= prec, out);
      return;
    }
  }
}

}  // namespace

Ast parse(std::string_view pattern) { return Parser(pattern).run(); }

std::string render(const Ast& ast, NodeId root) {
  std::string out;
  render_node(ast, root, out);
  return out;
}

std::string render(const Ast& ast) { return render(ast, ast.root()); }

std::size_t count_extended(const Ast& ast) {
  std::size_t k = 0;
  for (NodeId v : ast.postorder())
    if (is_extended(ast.node(v).kind)) ++k;
  return k;
}

void validate(const Ast& ast) {
  if (ast.root() == kNoNode) throw std::logic_error("ast has no root");
  if (ast.node(ast.root()).parent != kNoNode) throw std::logic_error("root has a parent");
  std::vector<bool> seen(ast.size(), false);
  for (NodeId v : ast.postorder()) {
    if (seen[v]) throw std::logic_error("node " + std::to_string(v) + " reached twice");
    seen[v] = true;
    const AstNode& n = ast.node(v);
    const auto kids = ast.children(v);
    if (static_cast<int>(kids.size()) != arity(n.kind) ||
        (arity(n.kind) == 1 && n.right != kNoNode))
      throw std::logic_error("node " + std::to_string(v) + " has wrong arity");
    for (NodeId c : kids)
      if (ast.node(c).parent != v)
        throw std::logic_error("node " + std::to_string(c) + " has a stale parent link");
  }
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v]) throw std::logic_error("node " + std::to_string(v) + " is unreachable");
}

bool structurally_equal(const Ast& a, NodeId a_root, const Ast& b, NodeId b_root) {
  std::vector<std::pair<NodeId, NodeId>> stack{{a_root, b_root}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    const AstNode& p = a.node(x);
    const AstNode& q = b.node(y);
    if (p.kind != q.kind) return false;
    if (p.kind == NodeKind::Char && p.symbol != q.symbol) return false;
    if (p.left != kNoNode) stack.emplace_back(p.left, q.left);
    if (p.right != kNoNode) stack.emplace_back(p.right, q.right);
  }
  return true;
}

Alphabet::Alphabet(std::string_view symbols) { add(symbols); }

void Alphabet::add(std::string_view symbols) {
  for (char c : symbols) add(static_cast<unsigned char>(c));
}

void Alphabet::add_leaves(const Ast& ast) {
  for (const AstNode& n : ast.nodes())
    if (n.kind == NodeKind::Char) add(n.symbol);
}

bool Alphabet::covers(std::string_view text) const {
  for (char c : text)
    if (!contains(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string Alphabet::symbols() const {
  std::string out;
  for (int c = 0; c < 256; ++c)
    if (bits_.test(c)) out.push_back(static_cast<char>(c));
  return out;
}

Alphabet Alphabet::for_match(const Ast& ast, std::string_view text) {
  Alphabet sigma(text);
  sigma.add_leaves(ast);
  return sigma;
}

void write_json(const Ast& ast, std::ostream& out) {
  nlohmann::json nodes = nlohmann::json::array();
  for (NodeId v = 0; v < ast.size(); ++v) {
    const AstNode& n = ast.node(v);
    nlohmann::json j{{"id", v}, {"kind", kind_name(n.kind)}, {"children", ast.children(v)}};
    if (n.kind == NodeKind::Char) j["char"] = std::string(1, static_cast<char>(n.symbol));
    nodes.push_back(std::move(j));
  }
  nlohmann::json doc{{"root", ast.root()}, {"m", ast.size()}, {"k", count_extended(ast)},
                     {"nodes", std::move(nodes)}};
  out << doc.dump(2) << '\n';
}

namespace {

std::string dot_label(const AstNode& n) {
  switch (n.kind) {
    case NodeKind::Char: {
      const char c = static_cast<char>(n.symbol);
      if (c == '"' || c == '\\') return std::string("\\") + c;
      return std::string(1, c);
    }
    case NodeKind::Epsilon: return "&epsilon;";
    case NodeKind::Concat: return "&#8857;";
    case NodeKind::Union: return "|";
    case NodeKind::Intersect: return "&cap;";
    case NodeKind::Complement: return "&not;";
    case NodeKind::Star: return "*";
  }
  return "?";
}

}  // namespace

void write_dot(const Ast& ast, std::ostream& out) {
  out << "digraph ast {\n  node [shape=circle];\n";
  for (NodeId v : ast.postorder()) {
    const AstNode& n = ast.node(v);
    out << "  n" << v << " [label=\"" << dot_label(n) << "\"";
    if (is_extended(n.kind)) out << ", style=filled, fillcolor=gray";
    out << "];\n";
    for (NodeId c : ast.children(v)) out << "  n" << v << " -> n" << c << ";\n";
  }
  out << "}\n";
}

}  // namespace xregex
