#pragma once

#include "xregex/ast.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace xregex {

using StateId = std::uint32_t;
using StateSet = boost::dynamic_bitset<std::uint64_t>;

enum class LabelKind : std::uint8_t { Symbol, Epsilon, Beta };

struct Label {
  LabelKind kind = LabelKind::Epsilon;
  unsigned char symbol = 0;

  static Label epsilon() { return {}; }
  static Label beta() { return {LabelKind::Beta, 0}; }
  static Label of(unsigned char c) { return {LabelKind::Symbol, c}; }

  friend bool operator==(const Label&, const Label&) = default;
};

struct Transition {
  StateId from;
  StateId to;
  Label label;
};

// Endpoints of the placeholder transition standing in for a cluster's
// extended node.
struct ExtendedTransition {
  StateId start;  // theta'
  StateId end;    // phi'
};

// Thompson NFA. States are numbered in construction order; the start state
// is 0 and the accept state is the last one allocated.
class Tnfa {
 public:
  Tnfa(std::size_t state_count, std::vector<Transition> transitions, StateId start,
       StateId accept, std::optional<ExtendedTransition> extended);

  std::size_t state_count() const { return state_count_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  StateId start() const { return start_; }
  StateId accept() const { return accept_; }
  const std::optional<ExtendedTransition>& extended() const { return extended_; }

  // Indices into transitions() leaving `s`.
  std::span<const std::uint32_t> out(StateId s) const {
    return {out_index_.data() + out_begin_[s], out_index_.data() + out_begin_[s + 1]};
  }

  StateSet empty_set() const { return StateSet(state_count_); }

 private:
  std::size_t state_count_;
  std::vector<Transition> transitions_;
  StateId start_;
  StateId accept_;
  std::optional<ExtendedTransition> extended_;
  std::vector<std::uint32_t> out_begin_;
  std::vector<std::uint32_t> out_index_;
};

// Thompson construction of the subtree rooted at `root`. When `beta_node` is
// given, that node (and everything below it) becomes a single transition
// labeled with the placeholder symbol. Throws std::invalid_argument if any
// other intersection or complement node is reachable.
Tnfa build_tnfa(const Ast& ast, NodeId root, std::optional<NodeId> beta_node = std::nullopt);
inline Tnfa build_tnfa(const Ast& ast, std::optional<NodeId> beta_node = std::nullopt) {
  return build_tnfa(ast, ast.root(), beta_node);
}

// In-place epsilon closure by breadth-first search. `queue` is scratch.
void epsilon_close(const Tnfa& a, StateSet& set, std::vector<StateId>& queue);
StateSet epsilon_closure(const Tnfa& a, const StateSet& s);

// States reachable from `s` along paths spelling exactly `c`, with epsilon
// moves on either side. Placeholder transitions are never taken.
StateSet state_set_transition(const Tnfa& a, const StateSet& s, unsigned char c);

// Step from an epsilon-closed set; the result is epsilon-closed.
void step_closed(const Tnfa& a, const StateSet& from, unsigned char c, StateSet& to,
                 std::vector<StateId>& queue);

bool accepts(const Tnfa& a, std::string_view text);

// Highlights the placeholder transition in bold red.
void write_dot(const Tnfa& a, std::ostream& out, std::string_view graph_name = "tnfa");
void write_json(const Tnfa& a, std::ostream& out);

}  // namespace xregex
