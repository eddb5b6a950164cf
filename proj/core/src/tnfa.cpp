#include "xregex/tnfa.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace xregex {

Tnfa::Tnfa(std::size_t state_count, std::vector<Transition> transitions, StateId start,
           StateId accept, std::optional<ExtendedTransition> extended)
    : state_count_(state_count),
      transitions_(std::move(transitions)),
      start_(start),
      accept_(accept),
      extended_(extended),
      out_begin_(state_count + 1, 0) {
  for (const Transition& t : transitions_) {
    if (t.from >= state_count_ || t.to >= state_count_)
      throw std::invalid_argument("Tnfa: transition endpoint out of range");
    ++out_begin_[t.from + 1];
  }
  for (std::size_t s = 0; s < state_count_; ++s) out_begin_[s + 1] += out_begin_[s];
  out_index_.resize(transitions_.size());
  std::vector<std::uint32_t> fill(out_begin_.begin(), out_begin_.end() - 1);
  for (std::uint32_t i = 0; i < transitions_.size(); ++i)
    out_index_[fill[transitions_[i].from]++] = i;
}

namespace {

class ThompsonBuilder {
 public:
  ThompsonBuilder(const Ast& ast, std::optional<NodeId> beta) : ast_(ast), beta_(beta) {}

  Tnfa build(NodeId root) {
    const StateId start = fresh();
    const StateId accept = emit(root, start);
    return Tnfa(count_, std::move(transitions_), start, accept, extended_);
  }

 private:
  StateId fresh() { return count_++; }

  void link(StateId from, StateId to, Label label) {
    transitions_.push_back({from, to, label});
  }

  // Builds N(R(v)) with `start` as its start state; returns its accept state.
  StateId emit(NodeId v, StateId start) {
    const AstNode& n = ast_.node(v);
    if (beta_ && *beta_ == v) {
      const StateId end = fresh();
      link(start, end, Label::beta());
      extended_ = ExtendedTransition{start, end};
      return end;
    }
    switch (n.kind) {
      case NodeKind::Char: {
        const StateId end = fresh();
        link(start, end, Label::of(n.symbol));
        return end;
      }
      case NodeKind::Epsilon: {
        const StateId end = fresh();
        link(start, end, Label::epsilon());
        return end;
      }
      case NodeKind::Concat: {
        const StateId mid = emit(n.left, start);
        return emit(n.right, mid);
      }
      case NodeKind::Union: {
        const StateId left_start = fresh();
        const StateId left_end = emit(n.left, left_start);
        const StateId right_start = fresh();
        const StateId right_end = emit(n.right, right_start);
        const StateId end = fresh();
        link(start, left_start, Label::epsilon());
        link(start, right_start, Label::epsilon());
        link(left_end, end, Label::epsilon());
        link(right_end, end, Label::epsilon());
        return end;
      }
      case NodeKind::Star: {
        const StateId inner_start = fresh();
        const StateId inner_end = emit(n.left, inner_start);
        const StateId end = fresh();
        link(start, inner_start, Label::epsilon());
        link(inner_end, end, Label::epsilon());
        link(start, end, Label::epsilon());
        link(inner_end, inner_start, Label::epsilon());
        return end;
      }
      case NodeKind::Intersect:
      case NodeKind::Complement:
        break;
    }
    throw std::invalid_argument("build_tnfa: extended operator at node " + std::to_string(v) +
                                " has no Thompson automaton");
  }

  const Ast& ast_;
  std::optional<NodeId> beta_;
  StateId count_ = 0;
  std::vector<Transition> transitions_;
  std::optional<ExtendedTransition> extended_;
};

}  // namespace

Tnfa build_tnfa(const Ast& ast, NodeId root, std::optional<NodeId> beta_node) {
  if (beta_node) {
    NodeId v = *beta_node;
    while (v != kNoNode && v != root) v = ast.node(v).parent;
    if (v != root) throw std::invalid_argument("build_tnfa: beta node outside the subtree");
  }
  return ThompsonBuilder(ast, beta_node).build(root);
}

void epsilon_close(const Tnfa& a, StateSet& set, std::vector<StateId>& queue) {
  queue.clear();
  for (auto s = set.find_first(); s != StateSet::npos; s = set.find_next(s))
    queue.push_back(static_cast<StateId>(s));
  const auto& transitions = a.transitions();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::uint32_t ti : a.out(queue[head])) {
      const Transition& t = transitions[ti];
      if (t.label.kind == LabelKind::Epsilon && !set.test(t.to)) {
        set.set(t.to);
        queue.push_back(t.to);
      }
    }
  }
}

StateSet epsilon_closure(const Tnfa& a, const StateSet& s) {
  StateSet out = s;
  std::vector<StateId> queue;
  epsilon_close(a, out, queue);
  return out;
}

void step_closed(const Tnfa& a, const StateSet& from, unsigned char c, StateSet& to,
                 std::vector<StateId>& queue) {
  to.reset();
  const auto& transitions = a.transitions();
  for (auto s = from.find_first(); s != StateSet::npos; s = from.find_next(s)) {
    for (std::uint32_t ti : a.out(static_cast<StateId>(s))) {
      const Transition& t = transitions[ti];
      if (t.label.kind == LabelKind::Symbol && t.label.symbol == c) to.set(t.to);
    }
  }
  epsilon_close(a, to, queue);
}

StateSet state_set_transition(const Tnfa& a, const StateSet& s, unsigned char c) {
  std::vector<StateId> queue;
  StateSet closed = s;
  epsilon_close(a, closed, queue);
  StateSet out(a.state_count());
  step_closed(a, closed, c, out, queue);
  return out;
}

bool accepts(const Tnfa& a, std::string_view text) {
  std::vector<StateId> queue;
  StateSet current = a.empty_set();
  StateSet next = a.empty_set();
  current.set(a.start());
  epsilon_close(a, current, queue);
  for (char c : text) {
    step_closed(a, current, static_cast<unsigned char>(c), next, queue);
    current.swap(next);
    if (current.none()) return false;
  }
  return current.test(a.accept());
}

void write_dot(const Tnfa& a, std::ostream& out, std::string_view graph_name) {
  out << "digraph " << graph_name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  out << "  s" << a.accept() << " [shape=doublecircle];\n";
  out << "  start [shape=point];\n  start -> s" << a.start() << ";\n";
  for (const Transition& t : a.transitions()) {
    out << "  s" << t.from << " -> s" << t.to << " [label=\"";
    switch (t.label.kind) {
      case LabelKind::Epsilon: out << "&epsilon;\"]"; break;
      case LabelKind::Beta: out << "&beta;\", color=red, penwidth=2]"; break;
      case LabelKind::Symbol: {
        const char c = static_cast<char>(t.label.symbol);
        if (c == '"' || c == '\\') out << '\\';
        out << c << "\"]";
        break;
      }
    }
    out << ";\n";
  }
  out << "}\n";
}

void write_json(const Tnfa& a, std::ostream& out) {
  nlohmann::json transitions = nlohmann::json::array();
  for (const Transition& t : a.transitions()) {
    std::string label = "eps";
    if (t.label.kind == LabelKind::Beta) label = "beta";
    if (t.label.kind == LabelKind::Symbol) label = std::string(1, static_cast<char>(t.label.symbol));
    transitions.push_back({{"from", t.from}, {"to", t.to}, {"label", label}});
  }
  nlohmann::json doc{{"states", a.state_count()},
                     {"start", a.start()},
                     {"accept", a.accept()},
                     {"transitions", std::move(transitions)}};
  if (a.extended())
    doc["extended"] = {{"start", a.extended()->start}, {"end", a.extended()->end}};
  else
    doc["extended"] = nullptr;
  out << doc.dump(2) << '\n';
}

}  // namespace xregex
