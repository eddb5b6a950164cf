#pragma once

#include "xregex/match_graph.hpp"
#include "xregex/tnfa.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xregex {

using PrefixBits = boost::dynamic_bitset<std::uint64_t>;

// Work counters reported by simulators. Never influences results.
struct SimulatorCost {
  std::uint64_t runs = 0;
  std::uint64_t char_steps = 0;   // text characters consumed
  std::uint64_t state_visits = 0; // states entered while stepping

  SimulatorCost& operator+=(const SimulatorCost& o) {
    runs += o.runs;
    char_steps += o.char_steps;
    state_visits += o.state_visits;
    return *this;
  }
};

// Black-box automaton simulation: for states s and t and a text, report every
// prefix length i such that text[0, i) spells some path from s to t.
//
// Contract: bit 0 is set iff s == t or t is epsilon-reachable from s; the
// placeholder transition is never taken; output depends only on the inputs.
class TnfaSimulator {
 public:
  virtual ~TnfaSimulator() = default;

  virtual std::string_view name() const = 0;

  virtual PrefixBits run(const Tnfa& a, StateId s, StateId t, std::string_view text,
                         SimulatorCost* cost = nullptr) const = 0;

  // One result per target, all from the same source. The default issues one
  // run per target; simulators that can share work override it.
  virtual std::vector<PrefixBits> run_many(const Tnfa& a, StateId s,
                                           std::span<const StateId> targets,
                                           std::string_view text,
                                           SimulatorCost* cost = nullptr) const;

  // G(A, s, t) per target. The default runs run_many once per suffix of the
  // text; a simulator that can advance every suffix together may override it,
  // but must produce exactly the graphs the suffix loop would.
  virtual std::vector<MatchGraph> match_graphs(const Tnfa& a, StateId s,
                                               std::span<const StateId> targets,
                                               std::string_view text,
                                               SimulatorCost* cost = nullptr) const;
};

// Thompson's state-set simulation, O(|text| * states) per run.
class ThompsonSimulator final : public TnfaSimulator {
 public:
  std::string_view name() const override { return "thompson"; }
  PrefixBits run(const Tnfa& a, StateId s, StateId t, std::string_view text,
                 SimulatorCost* cost = nullptr) const override;
  std::vector<PrefixBits> run_many(const Tnfa& a, StateId s, std::span<const StateId> targets,
                                   std::string_view text,
                                   SimulatorCost* cost = nullptr) const override;
};

// Depth-first search over (state, position) pairs. Slow; meant as a second,
// structurally unrelated implementation of the contract.
class PathSearchSimulator final : public TnfaSimulator {
 public:
  std::string_view name() const override { return "path-search"; }
  PrefixBits run(const Tnfa& a, StateId s, StateId t, std::string_view text,
                 SimulatorCost* cost = nullptr) const override;
};

// All suffixes at once: every state carries the set of start positions whose
// run currently occupies it, so one left-to-right pass over the text fills a
// whole column of each graph per character. Symbol steps and epsilon closure
// act on these position sets word by word, (n+1)/64 words per state.
class SuffixParallelSimulator final : public TnfaSimulator {
 public:
  std::string_view name() const override { return "suffix-parallel"; }
  PrefixBits run(const Tnfa& a, StateId s, StateId t, std::string_view text,
                 SimulatorCost* cost = nullptr) const override;
  std::vector<PrefixBits> run_many(const Tnfa& a, StateId s, std::span<const StateId> targets,
                                   std::string_view text,
                                   SimulatorCost* cost = nullptr) const override;
  std::vector<MatchGraph> match_graphs(const Tnfa& a, StateId s,
                                       std::span<const StateId> targets, std::string_view text,
                                       SimulatorCost* cost = nullptr) const override;
};

std::vector<std::string> simulator_names();
// Throws std::invalid_argument for unknown names.
std::unique_ptr<TnfaSimulator> make_simulator(std::string_view name);

// G(A, s, t): edge (i, j) iff text[i, j) spells a path from s to t. Issues
// one simulator call per suffix; every vertex gets a self-loop when s == t.
MatchGraph build_match_graph(const Tnfa& a, StateId s, StateId t, std::string_view text,
                             const TnfaSimulator& sim, SimulatorCost* cost = nullptr);

// G(A, s, t) for several targets at once, sharing the suffix runs.
std::vector<MatchGraph> build_match_graphs(const Tnfa& a, StateId s,
                                           std::span<const StateId> targets,
                                           std::string_view text, const TnfaSimulator& sim,
                                           SimulatorCost* cost = nullptr);

}  // namespace xregex
