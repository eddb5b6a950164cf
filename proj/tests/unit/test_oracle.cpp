#include "test_support.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace xregex;
using namespace xregex::testing;

namespace {

std::set<std::string> all_strings(const std::string& symbols, std::size_t max_len) {
  std::set<std::string> out{""};
  std::vector<std::string> frontier{""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& s : frontier)
      for (char c : symbols) next.push_back(s + c);
    out.insert(next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("star over a union") {
  const LanguageSlice l = enumerate_language(parse("(a|b)*"), Alphabet("ab"), 2);
  CHECK(l.members == std::set<std::string>{"", "a", "b", "aa", "ab", "ba", "bb"});
}

TEST_CASE("complement is relative to the alphabet") {
  const LanguageSlice l = enumerate_language(parse("!((a|b)*)"), Alphabet("abc"), 1);
  CHECK(l.members == std::set<std::string>{"c"});
}

TEST_CASE("worked pattern language") {
  const LanguageSlice l = enumerate_language(parse(kWorkedPattern), Alphabet("abc"), 4);
  CHECK(l.contains("abcb"));
  CHECK_FALSE(l.contains("abbb"));
  CHECK_FALSE(l.contains("ab"));
  const Ast t = parse(kWorkedPattern);
  CHECK(edge_set(oracle_match_graph(t, kWorkedText, Alphabet("abc"))) == EdgeSet{{4, 8}});
}

TEST_CASE("empty string pattern") {
  const Ast t = parse("()");
  CHECK(oracle_match_graph(t, "abc", Alphabet("abc")) == from_epsilon(3));
  CHECK(enumerate_language(t, Alphabet("a"), 3).members == std::set<std::string>{""});
}

TEST_CASE("intersection and concatenation") {
  const LanguageSlice l = enumerate_language(parse("(a|b)(a|b)&a*"), Alphabet("ab"), 3);
  CHECK(l.members == std::set<std::string>{"aa"});
  const LanguageSlice e = enumerate_language(parse("a&b"), Alphabet("ab"), 3);
  CHECK(e.members.empty());
}

TEST_CASE("double complement and De Morgan on slices") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    AstShape shape;
    shape.nodes = 1 + i % 15;
    shape.extended = i % 3;
    const Ast t = random_ast(rng, shape);
    Ast twice = t;
    const NodeId inner = twice.add_unary(NodeKind::Complement, t.root());
    twice.set_root(twice.add_unary(NodeKind::Complement, inner));
    const Alphabet sigma("ab");
    const auto base = enumerate_language(t, sigma, 5).members;
    CHECK(enumerate_language(twice, sigma, 5).members == base);
    const auto negated = enumerate_language(twice, inner, sigma, 5).members;
    for (const auto& s : all_strings("ab", 5)) CHECK(base.count(s) + negated.count(s) == 1);
  }
}

TEST_CASE("star is a fixed point") {
  // L* restricted to length <= 6 equals {""} union L . L* restricted the same way
  Rng rng(2);
  for (int i = 0; i < 60; ++i) {
    AstShape shape;
    shape.nodes = 1 + i % 8;
    shape.extended = i % 2;
    const Ast inner = random_ast(rng, shape);
    Ast starred = inner;
    starred.set_root(starred.add_unary(NodeKind::Star, inner.root()));
    const Alphabet sigma("ab");
    const auto l = enumerate_language(inner, sigma, 6).members;
    const auto ls = enumerate_language(starred, sigma, 6).members;
    std::set<std::string> rebuilt{""};
    for (const auto& x : l)
      for (const auto& y : ls)
        if (x.size() + y.size() <= 6) rebuilt.insert(x + y);
    CHECK(rebuilt == ls);
  }
}

TEST_CASE("oracle graph is membership of each substring") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const Instance inst = random_instance(rng, 20, 3, 7, "abc");
    const Alphabet sigma("abc");
    const LanguageSlice l = enumerate_language(inst.ast, sigma, inst.text.size());
    const MatchGraph g = oracle_match_graph(inst.ast, inst.text, sigma);
    for (std::size_t a = 0; a <= inst.text.size(); ++a)
      for (std::size_t b = a; b <= inst.text.size(); ++b)
        CHECK(g.has_edge(a, b) == l.contains(inst.text.substr(a, b - a)));
  }
}

TEST_CASE("feasibility cap") {
  CHECK_THROWS_AS(enumerate_language(parse("a*"), Alphabet("abc"), 20), InfeasibleEnumeration);
  CHECK_NOTHROW(enumerate_language(parse("a*"), Alphabet("ab"), 10, 2048));
  CHECK_THROWS_AS(enumerate_language(parse("a*"), Alphabet("ab"), 10, 2047), InfeasibleEnumeration);

  ::setenv("XREGEX_FEASIBILITY_CAP", "1234", 1);
  CHECK(feasibility_cap_from_env() == 1234);
  ::setenv("XREGEX_FEASIBILITY_CAP", "junk", 1);
  CHECK(feasibility_cap_from_env() == kDefaultFeasibilityCap);
  ::unsetenv("XREGEX_FEASIBILITY_CAP");
  CHECK(feasibility_cap_from_env() == kDefaultFeasibilityCap);
}
