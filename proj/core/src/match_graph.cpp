#include "xregex/match_graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace xregex {

namespace {

constexpr std::size_t kBits = MatchGraph::kWordBits;

void require_same_size(const MatchGraph& g, const MatchGraph& f, const char* op) {
  if (g.n() != f.n())
    throw std::invalid_argument(std::string(op) + ": match graphs over texts of length " +
                                std::to_string(g.n()) + " and " + std::to_string(f.n()));
}

// Mask of columns j in [from, n] within word `w` of a row.
MatchGraph::Word column_mask(std::size_t w, std::size_t from, std::size_t n) {
  const std::size_t lo = w * kBits;
  const std::size_t hi = lo + kBits;  // exclusive
  const std::size_t begin = std::max(lo, from);
  const std::size_t end = std::min(hi, n + 1);
  if (begin >= end) return 0;
  const std::size_t width = end - begin;
  const MatchGraph::Word ones = width == kBits ? ~MatchGraph::Word{0}
                                               : ((MatchGraph::Word{1} << width) - 1);
  return ones << (begin - lo);
}

}  // namespace

MatchGraph::MatchGraph(std::size_t n)
    : n_(n),
      words_per_row_((n + 1 + kBits - 1) / kBits),
      bits_((n + 1) * words_per_row_, 0) {}

bool MatchGraph::has_edge(std::size_t i, std::size_t j) const {
  if (i > n_ || j > n_) throw std::out_of_range("has_edge: vertex outside 0..n");
  return (row(i)[j / kBits] >> (j % kBits)) & 1U;
}

void MatchGraph::add_edge(std::size_t i, std::size_t j) {
  if (i > n_ || j > n_) throw std::out_of_range("add_edge: vertex outside 0..n");
  if (i > j) throw std::invalid_argument("add_edge: match graph edges run forward");
  row(i)[j / kBits] |= Word{1} << (j % kBits);
}

void MatchGraph::add_self_loops() {
  for (std::size_t i = 0; i <= n_; ++i) row(i)[i / kBits] |= Word{1} << (i % kBits);
}

std::size_t MatchGraph::edge_count() const {
  std::size_t total = 0;
  for (Word w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::pair<std::size_t, std::size_t>> MatchGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i <= n_; ++i) {
    auto r = row(i);
    for (std::size_t w = 0; w < r.size(); ++w) {
      for (Word bits = r[w]; bits != 0; bits &= bits - 1)
        out.emplace_back(i, w * kBits + static_cast<std::size_t>(std::countr_zero(bits)));
    }
  }
  return out;
}

MatchGraph from_char(std::string_view text, unsigned char symbol) {
  MatchGraph g(text.size());
  for (std::size_t i = 0; i < text.size(); ++i)
    if (static_cast<unsigned char>(text[i]) == symbol) g.add_edge(i, i + 1);
  return g;
}

MatchGraph from_epsilon(std::size_t n) {
  MatchGraph g(n);
  g.add_self_loops();
  return g;
}

MatchGraph concat(const MatchGraph& g, const MatchGraph& f) {
  require_same_size(g, f, "concat");
  const std::size_t n = g.n();
  MatchGraph out(n);
  for (std::size_t i = 0; i <= n; ++i) {
    auto src = g.row(i);
    auto dst = out.row(i);
    // Row l of f is zero before column l >= i, so words below i/64 stay zero.
    const std::size_t first_word = i / kBits;
    for (std::size_t w = first_word; w < src.size(); ++w) {
      for (MatchGraph::Word bits = src[w]; bits != 0; bits &= bits - 1) {
        const std::size_t l = w * kBits + static_cast<std::size_t>(std::countr_zero(bits));
        auto via = f.row(l);
        for (std::size_t x = l / kBits; x < via.size(); ++x) dst[x] |= via[x];
      }
    }
  }
  return out;
}

MatchGraph unite(const MatchGraph& g, const MatchGraph& f) {
  require_same_size(g, f, "union");
  MatchGraph out = g;
  for (std::size_t i = 0; i <= g.n(); ++i) {
    auto dst = out.row(i);
    auto src = f.row(i);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
  }
  return out;
}

MatchGraph intersect(const MatchGraph& g, const MatchGraph& f) {
  require_same_size(g, f, "intersect");
  MatchGraph out = g;
  for (std::size_t i = 0; i <= g.n(); ++i) {
    auto dst = out.row(i);
    auto src = f.row(i);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] &= src[w];
  }
  return out;
}

MatchGraph complement(const MatchGraph& g) {
  const std::size_t n = g.n();
  MatchGraph out(n);
  for (std::size_t i = 0; i <= n; ++i) {
    auto src = g.row(i);
    auto dst = out.row(i);
    for (std::size_t w = i / kBits; w < dst.size(); ++w)
      dst[w] = ~src[w] & column_mask(w, i, n);
  }
  return out;
}

MatchGraph star(const MatchGraph& g) {
  MatchGraph closure = g;
  closure.add_self_loops();
  // Paths of length up to 2^r after r squarings; n edges suffice.
  for (std::size_t reach = 1; reach < g.n(); reach *= 2) {
    MatchGraph next = concat(closure, closure);
    if (next == closure) break;
    closure = std::move(next);
  }
  return closure;
}

void write_edge_list(const MatchGraph& g, std::ostream& out) {
  for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

void write_matrix(const MatchGraph& g, std::ostream& out) {
  for (std::size_t i = 0; i <= g.n(); ++i) {
    for (std::size_t j = 0; j <= g.n(); ++j) out << (g.has_edge(i, j) ? '1' : '0');
    out << '\n';
  }
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (std::size_t b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<char, 8> bytes{};
  if (!in.read(bytes.data(), bytes.size()))
    throw std::runtime_error("deserialize: truncated match graph");
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < 8; ++b)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[b])) << (8 * b);
  return v;
}

}  // namespace

void serialize(const MatchGraph& g, std::ostream& out) {
  put_u64(out, g.n());
  for (std::size_t i = 0; i <= g.n(); ++i)
    for (MatchGraph::Word w : g.row(i)) put_u64(out, w);
}

MatchGraph deserialize(std::istream& in) {
  const std::uint64_t n = get_u64(in);
  if (n > (std::uint64_t{1} << 24)) throw std::runtime_error("deserialize: implausible length");
  MatchGraph g(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i <= g.n(); ++i) {
    auto r = g.row(i);
    for (std::size_t w = 0; w < r.size(); ++w) {
      r[w] = get_u64(in);
      if (r[w] & ~column_mask(w, i, g.n()))
        throw std::runtime_error("deserialize: entry outside the forward triangle");
    }
  }
  return g;
}

}  // namespace xregex
