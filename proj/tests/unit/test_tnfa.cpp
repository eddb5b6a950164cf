#include "test_support.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <sstream>
#include <tuple>

using namespace xregex;
using namespace xregex::testing;

namespace {

using Triple = std::tuple<StateId, StateId, std::string>;

std::set<Triple> triples(const Tnfa& a) {
  std::set<Triple> out;
  for (const Transition& t : a.transitions()) {
    std::string label = "eps";
    if (t.label.kind == LabelKind::Beta) label = "beta";
    if (t.label.kind == LabelKind::Symbol) label = std::string(1, static_cast<char>(t.label.symbol));
    out.insert({t.from, t.to, label});
  }
  return out;
}

StateSet single(const Tnfa& a, StateId s) {
  StateSet set = a.empty_set();
  set.set(s);
  return set;
}

std::vector<StateId> members(const StateSet& s) {
  std::vector<StateId> out;
  for (auto i = s.find_first(); i != StateSet::npos; i = s.find_next(i))
    out.push_back(static_cast<StateId>(i));
  return out;
}

}  // namespace

TEST_CASE("single symbol automaton") {
  const Tnfa a = build_tnfa(parse("a"));
  CHECK(a.state_count() == 2);
  CHECK(a.start() == 0);
  CHECK(a.accept() == 1);
  CHECK(triples(a) == std::set<Triple>{{0, 1, "a"}});
}

TEST_CASE("union automaton") {
  const Tnfa a = build_tnfa(parse("a|b"));
  CHECK(a.state_count() == 6);
  CHECK(a.transitions().size() == 6);
  const std::set<Triple> expected{{0, 1, "eps"}, {1, 2, "a"},   {0, 3, "eps"},
                                  {3, 4, "b"},   {2, 5, "eps"}, {4, 5, "eps"}};
  CHECK(triples(a) == expected);
  CHECK(a.accept() == 5);
}

TEST_CASE("empty string automaton") {
  const Tnfa a = build_tnfa(parse("()"));
  CHECK(a.state_count() == 2);
  CHECK(triples(a) == std::set<Triple>{{0, 1, "eps"}});
  CHECK(accepts(a, ""));
  CHECK_FALSE(accepts(a, "a"));
}

TEST_CASE("concatenation shares the middle state") {
  const Tnfa a = build_tnfa(parse("ab"));
  CHECK(a.state_count() == 3);
  CHECK(triples(a) == std::set<Triple>{{0, 1, "a"}, {1, 2, "b"}});

  const StateSet after_a = state_set_transition(a, single(a, 0), 'a');
  CHECK(members(after_a) == std::vector<StateId>{1});
  CHECK(state_set_transition(a, single(a, 0), 'b').none());
}

TEST_CASE("transition from the empty set is empty") {
  const Tnfa a = build_tnfa(parse("(a|b)*"));
  CHECK(state_set_transition(a, a.empty_set(), 'a').none());
}

TEST_CASE("star closure") {
  const Tnfa a = build_tnfa(parse("a*"));
  // states: 0 start, 1 inner start, 2 inner end, 3 accept
  const StateSet closed = epsilon_closure(a, single(a, 0));
  CHECK(members(closed) == std::vector<StateId>{0, 1, 3});
  CHECK(accepts(a, ""));
  CHECK(accepts(a, "aaa"));
  CHECK_FALSE(accepts(a, "ab"));
}

TEST_CASE("acceptance examples") {
  CHECK(accepts(build_tnfa(parse("(a|b)*")), "abba"));
  CHECK_FALSE(accepts(build_tnfa(parse("a")), ""));
  CHECK(accepts(build_tnfa(parse("ab(b|c)*")), "abcb"));
  CHECK_FALSE(accepts(build_tnfa(parse("ab(b|c)*")), "abca"));
}

TEST_CASE("placeholder transition is never crossed") {
  const Ast t = parse("!(a)b");
  const NodeId neg = find_kind(t, NodeKind::Complement);
  const Tnfa a = build_tnfa(t, t.root(), neg);
  REQUIRE(a.extended().has_value());
  CHECK(a.extended()->start == a.start());
  CHECK(triples(a) == std::set<Triple>{{0, 1, "beta"}, {1, 2, "b"}});
  for (int c = 0; c < 256; ++c)
    CHECK(state_set_transition(a, single(a, 0), static_cast<unsigned char>(c)).none());
  CHECK_FALSE(accepts(a, "b"));
  CHECK_FALSE(accepts(a, ""));
}

TEST_CASE("beta node must lie in the subtree") {
  const Ast t = parse("(!a)b");
  const NodeId neg = find_kind(t, NodeKind::Complement);
  const NodeId b = t.node(t.root()).right;
  CHECK_THROWS_AS(build_tnfa(t, b, neg), std::invalid_argument);
}

TEST_CASE("extended operators without a placeholder are rejected") {
  CHECK_THROWS_AS(build_tnfa(parse("a&b")), std::invalid_argument);
  CHECK_THROWS_AS(build_tnfa(parse("a!b")), std::invalid_argument);
}

TEST_CASE("size bounds and degrees on random plain patterns") {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    AstShape shape;
    shape.nodes = 1 + i % 60;
    shape.extended = 0;
    const Ast t = random_ast(rng, shape);
    const Tnfa a = build_tnfa(t);
    const std::size_t m = t.size();
    CHECK(a.state_count() <= 2 * m);
    CHECK(a.transitions().size() <= 4 * m);
    std::vector<int> in(a.state_count()), out(a.state_count());
    for (const Transition& tr : a.transitions()) {
      ++out[tr.from];
      ++in[tr.to];
    }
    for (std::size_t s = 0; s < a.state_count(); ++s) {
      CHECK(in[s] <= 2);
      CHECK(out[s] <= 2);
    }
    CHECK(in[a.start()] == 0);
    CHECK(out[a.accept()] == 0);
  }
}

TEST_CASE("epsilon closure is idempotent") {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    AstShape shape;
    shape.nodes = 1 + i % 40;
    shape.extended = 0;
    const Tnfa a = build_tnfa(random_ast(rng, shape));
    StateSet s = a.empty_set();
    std::bernoulli_distribution coin(0.2);
    for (std::size_t q = 0; q < a.state_count(); ++q)
      if (coin(rng)) s.set(q);
    const StateSet once = epsilon_closure(a, s);
    CHECK(epsilon_closure(a, once) == once);
    CHECK(s.is_subset_of(once));
  }
}

TEST_CASE("acceptance agrees with the enumeration oracle on 500 patterns") {
  Rng rng(2024);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    const std::string symbols = i % 2 ? "ab" : "abc";
    AstShape shape;
    shape.nodes = 1 + i % 25;
    shape.extended = 0;
    shape.symbols = symbols;
    const Ast t = random_ast(rng, shape);
    const Tnfa a = build_tnfa(t);
    const std::size_t max_len = symbols.size() == 2 ? 8 : 6;
    const LanguageSlice lang = enumerate_language(t, Alphabet(symbols), max_len);
    for (int s = 0; s < 10; ++s) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
      const std::string text = random_text(rng, n, symbols);
      INFO(render(t), " on '", text, "'");
      REQUIRE(accepts(a, text) == lang.contains(text));
      ++checked;
    }
  }
  CHECK(checked == 5000);
}

TEST_CASE("dumps") {
  const Ast t = parse("!(a)b*");
  const Tnfa a = build_tnfa(t, t.root(), find_kind(t, NodeKind::Complement));
  std::ostringstream dot;
  write_dot(a, dot);
  std::string why;
  CHECK_MESSAGE(valid_dot(dot.str(), &why), why);
  CHECK(dot.str().find("color=red") != std::string::npos);

  std::ostringstream js;
  write_json(a, js);
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["states"] == a.state_count());
  CHECK(doc["extended"]["start"] == 0);

  std::ostringstream quoted;
  write_dot(build_tnfa(parse("\"\\\\")), quoted);
  CHECK(valid_dot(quoted.str()));
}
