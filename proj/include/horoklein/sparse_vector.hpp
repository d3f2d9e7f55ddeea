#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horoklein/errors.hpp"

namespace horoklein {

/// Finite-support coordinate sequence over a countable orthonormal basis
/// (e_0, e_1, ...). Canonical form: entries sorted by ascending basis index
/// with no exact zeros, so structural equality is value equality.
class SparseVector {
 public:
  struct Entry {
    std::size_t index = 0;
    double value = 0.0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SparseVector() = default;

  SparseVector(std::initializer_list<Entry> entries)
      : SparseVector(std::vector<Entry>(entries)) {}

  explicit SparseVector(std::vector<Entry> entries) : entries_(std::move(entries)) {
    canonicalize();
  }

  static SparseVector unit(std::size_t index, double coefficient = 1.0) {
    return SparseVector({Entry{index, coefficient}});
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  /// Largest basis index carrying a nonzero coefficient.
  std::optional<std::size_t> support_max() const {
    if (entries_.empty()) return std::nullopt;
    return entries_.back().index;
  }

  /// Coefficient at a basis index, zero when absent.
  double coefficient(std::size_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.index < i; });
    if (it != entries_.end() && it->index == index) return it->value;
    return 0.0;
  }

  SparseVector scaled(double s) const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_) {
      double v = s * e.value;
      if (v != 0.0) out.push_back({e.index, v});
    }
    return from_canonical(std::move(out));
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;

  static SparseVector from_canonical(std::vector<Entry> entries) {
    SparseVector v;
    v.entries_ = std::move(entries);
    return v;
  }

  void canonicalize() {
    for (const Entry& e : entries_) {
      if (!std::isfinite(e.value)) {
        throw InputError("SparseVector: non-finite coefficient at index " +
                         std::to_string(e.index));
      }
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.index < b.index; });
    for (std::size_t i = 1; i < entries_.size(); ++i) {
      if (entries_[i].index == entries_[i - 1].index) {
        throw InputError("SparseVector: duplicate basis index " +
                         std::to_string(entries_[i].index));
      }
    }
    std::erase_if(entries_, [](const Entry& e) { return e.value == 0.0; });
  }

  friend SparseVector linear_combination(double, const SparseVector&, double,
                                         const SparseVector&);
};

/// a*x + b*y, merged in ascending basis-index order, zero-pruned.
inline SparseVector linear_combination(double a, const SparseVector& x, double b,
                                       const SparseVector& y) {
  std::vector<SparseVector::Entry> out;
  out.reserve(x.entries().size() + y.entries().size());
  auto ix = x.entries().begin(), ex = x.entries().end();
  auto iy = y.entries().begin(), ey = y.entries().end();
  auto push = [&out](std::size_t index, double value) {
    if (value != 0.0) out.push_back({index, value});
  };
  while (ix != ex && iy != ey) {
    if (ix->index < iy->index) {
      push(ix->index, a * ix->value);
      ++ix;
    } else if (iy->index < ix->index) {
      push(iy->index, b * iy->value);
      ++iy;
    } else {
      push(ix->index, a * ix->value + b * iy->value);
      ++ix;
      ++iy;
    }
  }
  for (; ix != ex; ++ix) push(ix->index, a * ix->value);
  for (; iy != ey; ++iy) push(iy->index, b * iy->value);
  return SparseVector::from_canonical(std::move(out));
}

inline SparseVector operator+(const SparseVector& x, const SparseVector& y) {
  return linear_combination(1.0, x, 1.0, y);
}

inline SparseVector operator-(const SparseVector& x, const SparseVector& y) {
  return linear_combination(1.0, x, -1.0, y);
}

inline SparseVector operator*(double s, const SparseVector& x) { return x.scaled(s); }

namespace detail {

// Extended-precision kernels. All accumulation runs in ascending basis-index
// order so results are deterministic; long double keeps the cancellation-prone
// combinations (1 - <x,y>, 1 - |x|^2) accurate near the cone boundary.
inline long double inner_ld(const SparseVector& x, const SparseVector& y) {
  long double acc = 0.0L;
  auto ix = x.entries().begin(), ex = x.entries().end();
  auto iy = y.entries().begin(), ey = y.entries().end();
  while (ix != ex && iy != ey) {
    if (ix->index < iy->index) {
      ++ix;
    } else if (iy->index < ix->index) {
      ++iy;
    } else {
      acc += static_cast<long double>(ix->value) * static_cast<long double>(iy->value);
      ++ix;
      ++iy;
    }
  }
  return acc;
}

inline long double norm_sq_ld(const SparseVector& x) {
  long double acc = 0.0L;
  for (const auto& e : x.entries()) {
    acc += static_cast<long double>(e.value) * static_cast<long double>(e.value);
  }
  return acc;
}

}  // namespace detail

/// <x,y>: sum over the support intersection, ascending index order.
inline double inner(const SparseVector& x, const SparseVector& y) {
  return static_cast<double>(detail::inner_ld(x, y));
}

inline double norm_sq(const SparseVector& x) {
  return static_cast<double>(detail::norm_sq_ld(x));
}

inline double norm(const SparseVector& x) {
  return static_cast<double>(std::sqrt(detail::norm_sq_ld(x)));
}

}  // namespace horoklein
