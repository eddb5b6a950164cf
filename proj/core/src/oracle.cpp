#include "xregex/oracle.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

namespace xregex {

std::size_t feasibility_cap_from_env() {
  const char* raw = std::getenv("XREGEX_FEASIBILITY_CAP");
  if (raw == nullptr) return kDefaultFeasibilityCap;
  std::string_view text(raw);
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value == 0)
    return kDefaultFeasibilityCap;
  return value;
}

namespace {

// Strings bucketed by length 0..max_len.
using Language = std::vector<std::unordered_set<std::string>>;

class Enumerator {
 public:
  Enumerator(const Ast& ast, const Alphabet& alphabet, std::size_t max_len)
      : ast_(ast), symbols_(alphabet.symbols()), max_len_(max_len) {}

  Language run(NodeId root) {
    std::vector<std::optional<Language>> slots(ast_.size());
    for (NodeId v : ast_.postorder(root)) {
      const AstNode& n = ast_.node(v);
      Language lang;
      switch (n.kind) {
        case NodeKind::Char:
          lang = empty();
          if (max_len_ >= 1) lang[1].insert(std::string(1, static_cast<char>(n.symbol)));
          break;
        case NodeKind::Epsilon:
          lang = empty();
          lang[0].insert("");
          break;
        case NodeKind::Concat:
          lang = concatenate(*slots[n.left], *slots[n.right]);
          break;
        case NodeKind::Union:
          lang = std::move(*slots[n.left]);
          for (std::size_t len = 0; len <= max_len_; ++len)
            lang[len].insert((*slots[n.right])[len].begin(), (*slots[n.right])[len].end());
          break;
        case NodeKind::Intersect: {
          lang = empty();
          const Language& a = *slots[n.left];
          const Language& b = *slots[n.right];
          for (std::size_t len = 0; len <= max_len_; ++len)
            for (const std::string& s : a[len])
              if (b[len].count(s)) lang[len].insert(s);
          break;
        }
        case NodeKind::Complement: {
          lang = empty();
          const Language& a = *slots[n.left];
          for (std::size_t len = 0; len <= max_len_; ++len)
            for (const std::string& s : universe()[len])
              if (!a[len].count(s)) lang[len].insert(s);
          break;
        }
        case NodeKind::Star:
          lang = closure(*slots[n.left]);
          break;
      }
      if (n.left != kNoNode) slots[n.left].reset();
      if (n.right != kNoNode) slots[n.right].reset();
      slots[v] = std::move(lang);
    }
    return std::move(*slots[root]);
  }

 private:
  Language empty() const { return Language(max_len_ + 1); }

  Language concatenate(const Language& a, const Language& b) const {
    Language out = empty();
    for (std::size_t la = 0; la <= max_len_; ++la) {
      if (a[la].empty()) continue;
      for (std::size_t lb = 0; la + lb <= max_len_; ++lb)
        for (const std::string& x : a[la])
          for (const std::string& y : b[lb]) out[la + lb].insert(x + y);
    }
    return out;
  }

  // Least fixed point of X = {eps} | X . S, truncated at max_len.
  Language closure(const Language& s) const {
    Language result = empty();
    result[0].insert("");
    Language frontier = result;
    Language step = s;
    step[0].clear();
    for (;;) {
      Language next = concatenate(frontier, step);
      bool grew = false;
      frontier = empty();
      for (std::size_t len = 0; len <= max_len_; ++len) {
        for (const std::string& w : next[len]) {
          if (result[len].insert(w).second) {
            frontier[len].insert(w);
            grew = true;
          }
        }
      }
      if (!grew) return result;
    }
  }

  const Language& universe() {
    if (!universe_) {
      Language all = empty();
      all[0].insert("");
      for (std::size_t len = 1; len <= max_len_; ++len)
        for (const std::string& w : all[len - 1])
          for (char c : symbols_) all[len].insert(w + c);
      universe_ = std::move(all);
    }
    return *universe_;
  }

  const Ast& ast_;
  std::string symbols_;
  std::size_t max_len_;
  std::optional<Language> universe_;
};

void check_feasible(const Alphabet& alphabet, std::size_t max_len, std::size_t cap) {
  const std::size_t sigma = alphabet.size();
  std::size_t power = 1;
  for (std::size_t i = 0; i <= max_len && sigma > 1; ++i) {
    if (power > cap / sigma)
      throw InfeasibleEnumeration("enumeration of " + std::to_string(sigma) + "^" +
                                  std::to_string(max_len + 1) + " strings exceeds the cap of " +
                                  std::to_string(cap));
    power *= sigma;
  }
}

}  // namespace

LanguageSlice enumerate_language(const Ast& ast, NodeId root, const Alphabet& alphabet,
                                 std::size_t max_len, std::size_t cap) {
  check_feasible(alphabet, max_len, cap);
  Language lang = Enumerator(ast, alphabet, max_len).run(root);
  LanguageSlice slice;
  slice.alphabet = alphabet;
  slice.max_len = max_len;
  for (auto& bucket : lang) slice.members.insert(bucket.begin(), bucket.end());
  return slice;
}

MatchGraph oracle_match_graph(const Ast& ast, NodeId root, std::string_view text,
                              const Alphabet& alphabet, std::size_t cap) {
  const LanguageSlice slice = enumerate_language(ast, root, alphabet, text.size(), cap);
  MatchGraph g(text.size());
  for (std::size_t i = 0; i <= text.size(); ++i)
    for (std::size_t j = i; j <= text.size(); ++j)
      if (slice.contains(text.substr(i, j - i))) g.add_edge(i, j);
  return g;
}

}  // namespace xregex
