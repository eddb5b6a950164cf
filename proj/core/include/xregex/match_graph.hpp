#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace xregex {

// Directed graph on the n+1 boundaries 0..n of a text of length n. Edge (i,j)
// records that the substring occupying 1-based positions i+1..j matches.
// Stored as a row-major boolean matrix, each row padded to whole 64-bit words.
// Only entries with i <= j are ever set.
class MatchGraph {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  explicit MatchGraph(std::size_t n = 0);

  std::size_t n() const { return n_; }
  std::size_t vertex_count() const { return n_ + 1; }
  std::size_t words_per_row() const { return words_per_row_; }
  std::size_t storage_bytes() const { return bits_.size() * sizeof(Word); }

  // Throws std::out_of_range outside 0..n.
  bool has_edge(std::size_t i, std::size_t j) const;
  // Throws std::out_of_range outside 0..n and std::invalid_argument for i > j.
  void add_edge(std::size_t i, std::size_t j);
  void add_self_loops();

  std::span<Word> row(std::size_t i) {
    return {bits_.data() + i * words_per_row_, words_per_row_};
  }
  std::span<const Word> row(std::size_t i) const {
    return {bits_.data() + i * words_per_row_, words_per_row_};
  }

  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  friend bool operator==(const MatchGraph& a, const MatchGraph& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t n_;
  std::size_t words_per_row_;
  std::vector<Word> bits_;
};

inline bool equals(const MatchGraph& g, const MatchGraph& f) { return g == f; }
inline bool has_edge(const MatchGraph& g, std::size_t i, std::size_t j) {
  return g.has_edge(i, j);
}

// Edge (i, i+1) wherever text[i] == symbol.
MatchGraph from_char(std::string_view text, unsigned char symbol);
// The n+1 self-loops.
MatchGraph from_epsilon(std::size_t n);

// Boolean product: (i,j) iff some l has (i,l) in g and (l,j) in f. Word-packed
// row accumulation, O(n^3 / 64).
MatchGraph concat(const MatchGraph& g, const MatchGraph& f);
MatchGraph unite(const MatchGraph& g, const MatchGraph& f);
MatchGraph intersect(const MatchGraph& g, const MatchGraph& f);
// Flips every entry with i <= j, self-loops included.
MatchGraph complement(const MatchGraph& g);
// Reflexive-transitive closure by repeated squaring of (g | I).
MatchGraph star(const MatchGraph& g);

// Edge list, one "i j" pair per line.
void write_edge_list(const MatchGraph& g, std::ostream& out);
// (n+1) lines of n+1 '0'/'1' characters.
void write_matrix(const MatchGraph& g, std::ostream& out);

// n as a little-endian u64, then every row word little-endian, rows in order.
void serialize(const MatchGraph& g, std::ostream& out);
MatchGraph deserialize(std::istream& in);

}  // namespace xregex
