#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace gtsp {

/// Edge weight: a finite integer or the distinguished INFINITY value.
///
/// Infinity is a tag, not a large number. It is stored as the minimum
/// int64 so that no finite weight (valid or not) can collide with it.
/// Addition saturates at infinity; subtraction is deliberately absent,
/// use `delta` in vertex_reduction.hpp for signed differences.
class Weight {
 public:
  constexpr Weight() = default;
  constexpr explicit Weight(std::int64_t value) : raw_(value) {}

  static constexpr Weight infinity() {
    Weight w;
    w.raw_ = kInfinityTag;
    return w;
  }

  constexpr bool is_infinite() const { return raw_ == kInfinityTag; }
  constexpr bool is_finite() const { return raw_ != kInfinityTag; }

  /// Finite value. Calling this on infinity is a programming error.
  constexpr std::int64_t value() const { return raw_; }

  friend constexpr Weight operator+(Weight a, Weight b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Weight(a.raw_ + b.raw_);
  }
  Weight& operator+=(Weight other) { return *this = *this + other; }

  friend constexpr bool operator==(Weight a, Weight b) = default;
  friend constexpr std::strong_ordering operator<=>(Weight a, Weight b) {
    if (a.is_infinite() || b.is_infinite()) {
      return a.is_infinite() <=> b.is_infinite();
    }
    return a.raw_ <=> b.raw_;
  }

  std::string to_string() const {
    return is_infinite() ? std::string("INF") : std::to_string(raw_);
  }

 private:
  static constexpr std::int64_t kInfinityTag =
      std::numeric_limits<std::int64_t>::min();
  std::int64_t raw_ = 0;
};

/// Largest finite weight accepted anywhere. Keeps every signed difference
/// and every sum of two differences far away from int64 overflow.
inline constexpr std::int64_t kMaxFiniteWeight = std::int64_t{1} << 40;

}  // namespace gtsp
