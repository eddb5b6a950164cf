#include "xregex/simulate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace xregex {

std::vector<PrefixBits> TnfaSimulator::run_many(const Tnfa& a, StateId s,
                                                std::span<const StateId> targets,
                                                std::string_view text,
                                                SimulatorCost* cost) const {
  std::vector<PrefixBits> out;
  out.reserve(targets.size());
  for (StateId t : targets) out.push_back(run(a, s, t, text, cost));
  return out;
}

PrefixBits ThompsonSimulator::run(const Tnfa& a, StateId s, StateId t, std::string_view text,
                                  SimulatorCost* cost) const {
  const StateId target[] = {t};
  return std::move(run_many(a, s, target, text, cost).front());
}

std::vector<PrefixBits> ThompsonSimulator::run_many(const Tnfa& a, StateId s,
                                                    std::span<const StateId> targets,
                                                    std::string_view text,
                                                    SimulatorCost* cost) const {
  if (s >= a.state_count()) throw std::out_of_range("thompson: source state out of range");
  for (StateId t : targets)
    if (t >= a.state_count()) throw std::out_of_range("thompson: target state out of range");

  std::vector<PrefixBits> out(targets.size(), PrefixBits(text.size() + 1));
  std::vector<StateId> queue;
  StateSet current = a.empty_set();
  StateSet next = a.empty_set();
  current.set(s);
  epsilon_close(a, current, queue);

  std::uint64_t steps = 0;
  std::uint64_t visits = queue.size();
  auto record = [&](std::size_t i) {
    for (std::size_t k = 0; k < targets.size(); ++k)
      if (current.test(targets[k])) out[k].set(i);
  };
  record(0);
  for (std::size_t i = 0; i < text.size() && current.any(); ++i) {
    step_closed(a, current, static_cast<unsigned char>(text[i]), next, queue);
    current.swap(next);
    ++steps;
    visits += queue.size();
    record(i + 1);
  }
  if (cost) {
    cost->runs += 1;
    cost->char_steps += steps;
    cost->state_visits += visits;
  }
  return out;
}

PrefixBits PathSearchSimulator::run(const Tnfa& a, StateId s, StateId t, std::string_view text,
                                    SimulatorCost* cost) const {
  if (s >= a.state_count() || t >= a.state_count())
    throw std::out_of_range("path-search: state out of range");
  const std::size_t width = text.size() + 1;
  std::vector<bool> seen(a.state_count() * width, false);
  std::vector<std::pair<StateId, std::size_t>> stack{{s, 0}};
  seen[s * width] = true;
  PrefixBits out(width);
  std::uint64_t visits = 0;
  std::size_t deepest = 0;
  while (!stack.empty()) {
    auto [state, pos] = stack.back();
    stack.pop_back();
    ++visits;
    if (pos > deepest) deepest = pos;
    if (state == t) out.set(pos);
    for (std::uint32_t ti : a.out(state)) {
      const Transition& tr = a.transitions()[ti];
      std::size_t next_pos;
      if (tr.label.kind == LabelKind::Epsilon) {
        next_pos = pos;
      } else if (tr.label.kind == LabelKind::Symbol && pos < text.size() &&
                 static_cast<unsigned char>(text[pos]) == tr.label.symbol) {
        next_pos = pos + 1;
      } else {
        continue;
      }
      const std::size_t key = tr.to * width + next_pos;
      if (!seen[key]) {
        seen[key] = true;
        stack.emplace_back(tr.to, next_pos);
      }
    }
  }
  if (cost) {
    cost->runs += 1;
    cost->char_steps += deepest;
    cost->state_visits += visits;
  }
  return out;
}

std::vector<MatchGraph> TnfaSimulator::match_graphs(const Tnfa& a, StateId s,
                                                    std::span<const StateId> targets,
                                                    std::string_view text,
                                                    SimulatorCost* cost) const {
  const std::size_t n = text.size();
  std::vector<MatchGraph> graphs(targets.size(), MatchGraph(n));
  for (std::size_t i = 0; i <= n; ++i) {
    const auto prefixes = run_many(a, s, targets, text.substr(i), cost);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const PrefixBits& bits = prefixes[k];
      for (auto len = bits.find_first(); len != PrefixBits::npos; len = bits.find_next(len))
        graphs[k].add_edge(i, i + len);
    }
  }
  return graphs;
}

namespace {

using Word = std::uint64_t;

void check_states(const Tnfa& a, StateId s, std::span<const StateId> targets) {
  if (s >= a.state_count()) throw std::out_of_range("suffix-parallel: source state out of range");
  for (StateId t : targets)
    if (t >= a.state_count())
      throw std::out_of_range("suffix-parallel: target state out of range");
}

// Strongly connected components of the epsilon moves, in topological order,
// each with the epsilon targets that leave it. Iterative Tarjan.
struct EpsilonOrder {
  std::vector<std::vector<StateId>> components;
  std::vector<std::vector<StateId>> exits;

  explicit EpsilonOrder(const Tnfa& a) {
    const std::size_t states = a.state_count();
    constexpr std::uint32_t kUnseen = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> index(states, kUnseen), low(states, 0), comp(states, kUnseen);
    std::vector<StateId> stack;
    std::vector<char> on_stack(states, 0);
    std::vector<std::pair<StateId, std::size_t>> frames;
    std::uint32_t counter = 0;
    const auto& transitions = a.transitions();

    auto eps_out = [&](StateId q, std::size_t at, StateId& to) {
      const auto out = a.out(q);
      for (; at < out.size(); ++at) {
        const Transition& t = transitions[out[at]];
        if (t.label.kind == LabelKind::Epsilon) {
          to = t.to;
          return at;
        }
      }
      return at;
    };

    std::vector<std::vector<StateId>> reversed;
    for (StateId root = 0; root < states; ++root) {
      if (index[root] != kUnseen) continue;
      frames.push_back({root, 0});
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = 1;
      while (!frames.empty()) {
        auto& [q, at] = frames.back();
        StateId to = 0;
        at = eps_out(q, at, to);
        if (at < a.out(q).size()) {
          ++at;
          if (index[to] == kUnseen) {
            index[to] = low[to] = counter++;
            stack.push_back(to);
            on_stack[to] = 1;
            frames.push_back({to, 0});
          } else if (on_stack[to]) {
            low[q] = std::min(low[q], index[to]);
          }
          continue;
        }
        const StateId done = q;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
        if (low[done] == index[done]) {
          std::vector<StateId> members;
          StateId w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = static_cast<std::uint32_t>(reversed.size());
            members.push_back(w);
          } while (w != done);
          reversed.push_back(std::move(members));
        }
      }
    }
    // Tarjan finishes sinks first.
    const std::size_t count = reversed.size();
    components.assign(reversed.rbegin(), reversed.rend());
    exits.resize(count);
    for (std::size_t c = 0; c < count; ++c)
      for (StateId q : components[c])
        for (std::uint32_t ti : a.out(q)) {
          const Transition& t = transitions[ti];
          if (t.label.kind == LabelKind::Epsilon && comp[t.to] != comp[q])
            exits[c].push_back(t.to);
        }
  }
};

// Per-state sets of start positions, advanced one text character at a time.
class PositionSweep {
 public:
  PositionSweep(const Tnfa& a, std::size_t positions)
      : order_(a),
        states_(a.state_count()),
        words_((positions + 63) / 64),
        current_(states_ * words_, 0),
        next_(states_ * words_, 0),
        live_(states_, 0),
        next_live_(states_, 0),
        scratch_(words_, 0) {
    for (const Transition& t : a.transitions())
      if (t.label.kind == LabelKind::Symbol) by_symbol_[t.label.symbol].push_back({t.from, t.to});
  }

  // Only the first `words` words of every set can be non-zero.
  void limit(std::size_t words) { used_ = std::min(words, words_); }

  void inject(StateId q, std::size_t position) {
    set(q)[position / 64] |= Word{1} << (position % 64);
    mark(q);
  }

  void step(unsigned char c) {
    for (auto [from, to] : by_symbol_[c]) {
      if (!live_[from]) continue;
      Word* dst = next_.data() + to * words_;
      const Word* src = set(from);
      for (std::size_t w = 0; w < used_; ++w) dst[w] |= src[w];
      if (!next_live_[to]) {
        next_live_[to] = 1;
        next_list_.push_back(to);
      }
    }
    for (StateId q : live_list_) {
      std::fill_n(set(q), used_, Word{0});
      live_[q] = 0;
    }
    current_.swap(next_);
    live_.swap(next_live_);
    live_list_.swap(next_list_);
    next_list_.clear();
  }

  void close() {
    for (std::size_t c = 0; c < order_.components.size(); ++c) {
      const auto& members = order_.components[c];
      const Word* src;
      if (members.size() == 1) {
        if (!live_[members[0]]) continue;
        src = set(members[0]);
      } else {
        bool any = false;
        std::fill_n(scratch_.data(), used_, Word{0});
        for (StateId q : members) {
          if (!live_[q]) continue;
          any = true;
          for (std::size_t w = 0; w < used_; ++w) scratch_[w] |= set(q)[w];
        }
        if (!any) continue;
        for (StateId q : members) {
          std::copy_n(scratch_.data(), used_, set(q));
          mark(q);
        }
        src = scratch_.data();
      }
      for (StateId r : order_.exits[c]) {
        Word* dst = set(r);
        for (std::size_t w = 0; w < used_; ++w) dst[w] |= src[w];
        mark(r);
      }
    }
  }

  const Word* starts(StateId q) const { return current_.data() + q * words_; }
  bool live(StateId q) const { return live_[q] != 0; }
  std::size_t live_count() const { return live_list_.size(); }
  std::size_t used() const { return used_; }

 private:
  Word* set(StateId q) { return current_.data() + q * words_; }
  void mark(StateId q) {
    if (!live_[q]) {
      live_[q] = 1;
      live_list_.push_back(q);
    }
  }

  EpsilonOrder order_;
  std::size_t states_;
  std::size_t words_;
  std::size_t used_ = 1;
  std::vector<Word> current_;
  std::vector<Word> next_;
  std::vector<char> live_;
  std::vector<char> next_live_;
  std::vector<StateId> live_list_;
  std::vector<StateId> next_list_;
  std::vector<Word> scratch_;
  std::array<std::vector<std::pair<StateId, StateId>>, 256> by_symbol_;
};

}  // namespace

PrefixBits SuffixParallelSimulator::run(const Tnfa& a, StateId s, StateId t,
                                        std::string_view text, SimulatorCost* cost) const {
  const StateId target[] = {t};
  return std::move(run_many(a, s, target, text, cost).front());
}

std::vector<PrefixBits> SuffixParallelSimulator::run_many(const Tnfa& a, StateId s,
                                                          std::span<const StateId> targets,
                                                          std::string_view text,
                                                          SimulatorCost* cost) const {
  check_states(a, s, targets);
  std::vector<PrefixBits> out(targets.size(), PrefixBits(text.size() + 1));
  PositionSweep sweep(a, 1);
  sweep.inject(s, 0);
  sweep.close();
  std::uint64_t steps = 0;
  std::uint64_t visits = sweep.live_count();
  for (std::size_t j = 0;; ++j) {
    for (std::size_t k = 0; k < targets.size(); ++k)
      if (sweep.live(targets[k])) out[k].set(j);
    if (j == text.size() || sweep.live_count() == 0) break;
    sweep.step(static_cast<unsigned char>(text[j]));
    sweep.close();
    ++steps;
    visits += sweep.live_count();
  }
  if (cost) {
    cost->runs += 1;
    cost->char_steps += steps;
    cost->state_visits += visits;
  }
  return out;
}

std::vector<MatchGraph> SuffixParallelSimulator::match_graphs(const Tnfa& a, StateId s,
                                                              std::span<const StateId> targets,
                                                              std::string_view text,
                                                              SimulatorCost* cost) const {
  check_states(a, s, targets);
  const std::size_t n = text.size();
  std::vector<MatchGraph> graphs(targets.size(), MatchGraph(n));
  PositionSweep sweep(a, n + 1);
  std::uint64_t visits = 0;
  // After boundary j the set of state q holds every i with a run from
  // position i standing in q, i.e. text[i, j) spells a path s -> q.
  for (std::size_t j = 0; j <= n; ++j) {
    sweep.limit(j / 64 + 1);
    if (j > 0) sweep.step(static_cast<unsigned char>(text[j - 1]));
    sweep.inject(s, j);
    sweep.close();
    visits += sweep.live_count();
    const Word column = Word{1} << (j % 64);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      if (!sweep.live(targets[k])) continue;
      const Word* starts = sweep.starts(targets[k]);
      for (std::size_t w = 0; w < sweep.used(); ++w)
        for (Word bits = starts[w]; bits != 0; bits &= bits - 1) {
          const std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          graphs[k].row(i)[j / 64] |= column;
        }
    }
  }
  if (cost) {
    cost->runs += n + 1;
    cost->char_steps += n;
    cost->state_visits += visits;
  }
  return graphs;
}

std::vector<std::string> simulator_names() {
  return {"thompson", "suffix-parallel", "path-search"};
}

std::unique_ptr<TnfaSimulator> make_simulator(std::string_view name) {
  if (name == "thompson") return std::make_unique<ThompsonSimulator>();
  if (name == "suffix-parallel") return std::make_unique<SuffixParallelSimulator>();
  if (name == "path-search") return std::make_unique<PathSearchSimulator>();
  throw std::invalid_argument("unknown simulator '" + std::string(name) + "'");
}

std::vector<MatchGraph> build_match_graphs(const Tnfa& a, StateId s,
                                           std::span<const StateId> targets,
                                           std::string_view text, const TnfaSimulator& sim,
                                           SimulatorCost* cost) {
  auto graphs = sim.match_graphs(a, s, targets, text, cost);
  for (std::size_t k = 0; k < targets.size(); ++k)
    if (targets[k] == s) graphs[k].add_self_loops();
  return graphs;
}

MatchGraph build_match_graph(const Tnfa& a, StateId s, StateId t, std::string_view text,
                             const TnfaSimulator& sim, SimulatorCost* cost) {
  const StateId target[] = {t};
  return std::move(build_match_graphs(a, s, target, text, sim, cost).front());
}

}  // namespace xregex
