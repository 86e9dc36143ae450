#pragma once

// Bitset-backed point sets and relations over a finite index space.
//
// Both types keep up to 64 indices inline so that the common case (small
// models, bounded enumeration) never touches the heap.

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace efl {

class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t n) : size_(static_cast<std::uint32_t>(n)) {
    if (n > 64) heap_.assign(word_count(n), 0);
  }

  static PointSet full(std::size_t n) {
    PointSet s(n);
    s.fill();
    return s;
  }

  std::size_t size() const { return size_; }
  std::size_t words() const { return word_count(size_); }
  std::uint64_t* data() { return size_ <= 64 ? &inline_ : heap_.data(); }
  const std::uint64_t* data() const { return size_ <= 64 ? &inline_ : heap_.data(); }

  bool test(std::size_t i) const {
    assert(i < size_);
    return (data()[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) {
    assert(i < size_);
    data()[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void reset(std::size_t i) {
    assert(i < size_);
    data()[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

  void fill() {
    auto* w = data();
    for (std::size_t j = 0; j < words(); ++j) w[j] = ~std::uint64_t{0};
    trim();
  }
  void clear() {
    auto* w = data();
    for (std::size_t j = 0; j < words(); ++j) w[j] = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    const auto* w = data();
    for (std::size_t j = 0; j < words(); ++j) c += std::popcount(w[j]);
    return c;
  }
  bool none() const {
    const auto* w = data();
    for (std::size_t j = 0; j < words(); ++j)
      if (w[j]) return false;
    return true;
  }
  bool any() const { return !none(); }
  bool all() const { return count() == size_; }

  PointSet& operator&=(const PointSet& o) {
    assert(o.size_ == size_);
    auto* w = data();
    const auto* v = o.data();
    for (std::size_t j = 0; j < words(); ++j) w[j] &= v[j];
    return *this;
  }
  PointSet& operator|=(const PointSet& o) {
    assert(o.size_ == size_);
    auto* w = data();
    const auto* v = o.data();
    for (std::size_t j = 0; j < words(); ++j) w[j] |= v[j];
    return *this;
  }
  PointSet& subtract(const PointSet& o) {
    assert(o.size_ == size_);
    auto* w = data();
    const auto* v = o.data();
    for (std::size_t j = 0; j < words(); ++j) w[j] &= ~v[j];
    return *this;
  }
  PointSet operator~() const {
    PointSet r(*this);
    auto* w = r.data();
    for (std::size_t j = 0; j < words(); ++j) w[j] = ~w[j];
    r.trim();
    return r;
  }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }

  bool subset_of(const PointSet& o) const {
    assert(o.size_ == size_);
    const auto* w = data();
    const auto* v = o.data();
    for (std::size_t j = 0; j < words(); ++j)
      if (w[j] & ~v[j]) return false;
    return true;
  }
  bool intersects(const PointSet& o) const {
    assert(o.size_ == size_);
    const auto* w = data();
    const auto* v = o.data();
    for (std::size_t j = 0; j < words(); ++j)
      if (w[j] & v[j]) return true;
    return false;
  }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    if (a.size_ != b.size_) return false;
    const auto* w = a.data();
    const auto* v = b.data();
    for (std::size_t j = 0; j < a.words(); ++j)
      if (w[j] != v[j]) return false;
    return true;
  }

  /// Calls fn(i) for every member in increasing order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    const auto* w = data();
    for (std::size_t j = 0; j < words(); ++j) {
      std::uint64_t bits = w[j];
      while (bits) {
        const int b = std::countr_zero(bits);
        fn(j * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

 private:
  static std::size_t word_count(std::size_t n) { return n == 0 ? 1 : (n + 63) / 64; }
  void trim() {
    if (size_ % 64 == 0) return;
    data()[words() - 1] &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::uint32_t size_ = 0;
  std::uint64_t inline_ = 0;
  std::vector<std::uint64_t> heap_;
};

/// A binary relation on {0..n-1}, stored as one successor bitset per source.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n)
      : n_(static_cast<std::uint32_t>(n)), words_(static_cast<std::uint32_t>(n == 0 ? 1 : (n + 63) / 64)) {
    if (n > 64) {
      heap_.assign(n * words_, 0);
    } else {
      std::fill_n(small_.data(), n, std::uint64_t{0});
    }
  }
  // Only the first n_ inline words are meaningful; copies skip the rest.
  Relation(const Relation& o) : n_(o.n_), words_(o.words_), heap_(o.heap_) {
    if (n_ <= 64) std::copy_n(o.small_.data(), n_, small_.data());
  }
  Relation(Relation&& o) noexcept : n_(o.n_), words_(o.words_), heap_(std::move(o.heap_)) {
    if (n_ <= 64) std::copy_n(o.small_.data(), n_, small_.data());
  }
  Relation& operator=(const Relation& o) {
    if (this != &o) {
      n_ = o.n_;
      words_ = o.words_;
      heap_ = o.heap_;
      if (n_ <= 64) std::copy_n(o.small_.data(), n_, small_.data());
    }
    return *this;
  }
  Relation& operator=(Relation&& o) noexcept {
    if (this != &o) {
      n_ = o.n_;
      words_ = o.words_;
      heap_ = std::move(o.heap_);
      if (n_ <= 64) std::copy_n(o.small_.data(), n_, small_.data());
    }
    return *this;
  }

  static Relation identity(std::size_t n) {
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i) r.insert(i, i);
    return r;
  }
  static Relation diagonal(const PointSet& s) {
    Relation r(s.size());
    s.for_each([&](std::size_t i) { r.insert(i, i); });
    return r;
  }

  std::size_t size() const { return n_; }

  bool contains(std::size_t x, std::size_t y) const {
    return (row(x)[y >> 6] >> (y & 63)) & 1u;
  }
  void insert(std::size_t x, std::size_t y) { row(x)[y >> 6] |= std::uint64_t{1} << (y & 63); }
  void erase(std::size_t x, std::size_t y) { row(x)[y >> 6] &= ~(std::uint64_t{1} << (y & 63)); }

  PointSet successors(std::size_t x) const {
    PointSet s(n_);
    auto* w = s.data();
    const auto* r = row(x);
    for (std::size_t j = 0; j < words_; ++j) w[j] = r[j];
    return s;
  }
  void set_successors(std::size_t x, const PointSet& s) {
    auto* r = row(x);
    const auto* w = s.data();
    for (std::size_t j = 0; j < words_; ++j) r[j] = w[j];
  }

  std::uint64_t* row(std::size_t x) {
    assert(x < n_);
    return (n_ <= 64 ? small_.data() : heap_.data()) + x * words_;
  }
  const std::uint64_t* row(std::size_t x) const {
    assert(x < n_);
    return (n_ <= 64 ? small_.data() : heap_.data()) + x * words_;
  }
  std::size_t row_words() const { return words_; }

  bool empty() const {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t j = 0; j < words_; ++j)
        if (row(x)[j]) return false;
    return true;
  }
  std::size_t pair_count() const {
    std::size_t c = 0;
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t j = 0; j < words_; ++j) c += std::popcount(row(x)[j]);
    return c;
  }

  Relation& operator|=(const Relation& o) {
    assert(o.n_ == n_);
    for (std::size_t x = 0; x < n_; ++x) {
      auto* a = row(x);
      const auto* b = o.row(x);
      for (std::size_t j = 0; j < words_; ++j) a[j] |= b[j];
    }
    return *this;
  }
  friend Relation operator|(Relation a, const Relation& b) { return a |= b; }

  /// Relational composition: x (this ; o) z iff x this y and y o z for some y.
  Relation compose(const Relation& o) const {
    assert(o.n_ == n_);
    Relation out(n_);
    for (std::size_t x = 0; x < n_; ++x) {
      auto* dst = out.row(x);
      const auto* src = row(x);
      for (std::size_t j = 0; j < words_; ++j) {
        std::uint64_t bits = src[j];
        while (bits) {
          const std::size_t y = j * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          bits &= bits - 1;
          const auto* via = o.row(y);
          for (std::size_t k = 0; k < words_; ++k) dst[k] |= via[k];
        }
      }
    }
    return out;
  }

  /// Reflexive-transitive closure.
  Relation star() const {
    Relation out(*this);
    for (std::size_t x = 0; x < n_; ++x) out.insert(x, x);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::uint64_t mask = std::uint64_t{1} << (k & 63);
      const std::size_t kw = k >> 6;
      for (std::size_t i = 0; i < n_; ++i) {
        auto* ri = out.row(i);
        if (!(ri[kw] & mask) || i == k) continue;
        const auto* rk = out.row(k);
        for (std::size_t j = 0; j < words_; ++j) ri[j] |= rk[j];
      }
    }
    return out;
  }

  Relation transpose() const {
    Relation out(n_);
    for_each_pair([&](std::size_t x, std::size_t y) { out.insert(y, x); });
    return out;
  }

  /// {x | every successor of x lies in s}
  PointSet box(const PointSet& s) const {
    assert(s.size() == n_);
    PointSet out(n_);
    const auto* sw = s.data();
    for (std::size_t x = 0; x < n_; ++x) {
      const auto* r = row(x);
      bool ok = true;
      for (std::size_t j = 0; j < words_ && ok; ++j) ok = (r[j] & ~sw[j]) == 0;
      if (ok) out.set(x);
    }
    return out;
  }
  /// {x | some successor of x lies in s}
  PointSet diamond(const PointSet& s) const {
    assert(s.size() == n_);
    PointSet out(n_);
    const auto* sw = s.data();
    for (std::size_t x = 0; x < n_; ++x) {
      const auto* r = row(x);
      for (std::size_t j = 0; j < words_; ++j) {
        if (r[j] & sw[j]) {
          out.set(x);
          break;
        }
      }
    }
    return out;
  }

  template <class Fn>
  void for_each_successor(std::size_t x, Fn&& fn) const {
    const auto* r = row(x);
    for (std::size_t j = 0; j < words_; ++j) {
      std::uint64_t bits = r[j];
      while (bits) {
        fn(j * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  template <class Fn>
  void for_each_pair(Fn&& fn) const {
    for (std::size_t x = 0; x < n_; ++x) {
      const auto* r = row(x);
      for (std::size_t j = 0; j < words_; ++j) {
        std::uint64_t bits = r[j];
        while (bits) {
          fn(x, j * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
          bits &= bits - 1;
        }
      }
    }
  }

  friend bool operator==(const Relation& a, const Relation& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t x = 0; x < a.n_; ++x)
      for (std::size_t j = 0; j < a.words_; ++j)
        if (a.row(x)[j] != b.row(x)[j]) return false;
    return true;
  }

 private:
  std::uint32_t n_ = 0;
  std::uint32_t words_ = 1;
  std::array<std::uint64_t, 64> small_;
  std::vector<std::uint64_t> heap_;
};

}  // namespace efl
