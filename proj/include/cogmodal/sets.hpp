#pragma once

// Bitset-backed world sets and world relations over a fixed universe 0..n-1.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace cogmodal {

class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static WorldSet full(std::size_t n) {
    WorldSet s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i);
    return s;
  }

  std::size_t universe() const { return n_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v = true) {
    if (v)
      words_[i >> 6] |= (std::uint64_t{1} << (i & 63));
    else
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool subset_of(const WorldSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const WorldSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  WorldSet complement() const {
    WorldSet r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.trim();
    return r;
  }
  WorldSet& operator|=(const WorldSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  WorldSet& operator&=(const WorldSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  WorldSet& operator-=(const WorldSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
  friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
  friend WorldSet operator-(WorldSet a, const WorldSet& b) { return a -= b; }
  friend bool operator==(const WorldSet&, const WorldSet&) = default;

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

 private:
  void trim() {
    if (n_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Row w holds the successors of w.
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(std::size_t n) : rows_(n, WorldSet(n)) {}

  static PairSet identity_on(const WorldSet& s) {
    PairSet r(s.universe());
    for (auto w : s.members()) r.insert(w, w);
    return r;
  }

  std::size_t universe() const { return rows_.size(); }
  bool contains(std::size_t w, std::size_t v) const { return rows_[w].test(v); }
  void insert(std::size_t w, std::size_t v) { rows_[w].set(v); }
  const WorldSet& row(std::size_t w) const { return rows_[w]; }
  WorldSet& row(std::size_t w) { return rows_[w]; }

  std::size_t size() const {
    std::size_t c = 0;
    for (const auto& r : rows_) c += r.count();
    return c;
  }

  PairSet compose(const PairSet& o) const {
    PairSet r(universe());
    for (std::size_t w = 0; w < rows_.size(); ++w)
      for (auto u : rows_[w].members()) r.rows_[w] |= o.rows_[u];
    return r;
  }
  PairSet transpose() const {
    PairSet r(universe());
    for (std::size_t w = 0; w < rows_.size(); ++w)
      for (auto v : rows_[w].members()) r.insert(v, w);
    return r;
  }
  PairSet& operator|=(const PairSet& o) {
    for (std::size_t w = 0; w < rows_.size(); ++w) rows_[w] |= o.rows_[w];
    return *this;
  }
  PairSet& operator&=(const PairSet& o) {
    for (std::size_t w = 0; w < rows_.size(); ++w) rows_[w] &= o.rows_[w];
    return *this;
  }
  friend PairSet operator|(PairSet a, const PairSet& b) { return a |= b; }
  friend PairSet operator&(PairSet a, const PairSet& b) { return a &= b; }
  friend bool operator==(const PairSet&, const PairSet&) = default;

  // Worlds having at least one successor inside `target`.
  WorldSet preimage(const WorldSet& target) const {
    WorldSet r(universe());
    for (std::size_t w = 0; w < rows_.size(); ++w)
      if (rows_[w].intersects(target)) r.set(w);
    return r;
  }
  // Worlds all of whose successors are inside `target`.
  WorldSet box(const WorldSet& target) const {
    WorldSet r(universe());
    for (std::size_t w = 0; w < rows_.size(); ++w)
      if (rows_[w].subset_of(target)) r.set(w);
    return r;
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t w = 0; w < rows_.size(); ++w)
      for (auto v : rows_[w].members()) out.emplace_back(w, v);
    return out;
  }

 private:
  std::vector<WorldSet> rows_;
};

}  // namespace cogmodal
