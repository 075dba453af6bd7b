#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ttg/error.hpp"

namespace ttg {

using Natural = std::uint64_t;

// Extended natural number: a finite value n >= 0 or infinity.
//
// The order places infinity above every finite value and equal to itself, so
// the strict comparison infinity > infinity is false. Addition of a finite
// increment saturates: infinity + k = infinity. Infinity is a genuine symbolic
// state, not a large sentinel, and finite arithmetic never overflows into it.
class Height {
 public:
  constexpr Height() : value_(0) {}
  constexpr Height(Natural n) : value_(n) {}

  static constexpr Height infinity() { return Height(infinite_tag{}); }

  constexpr bool is_finite() const { return value_.has_value(); }
  constexpr bool is_infinite() const { return !value_.has_value(); }

  constexpr Natural finite_value() const {
    if (!value_) fail("E_INVALID_HEIGHT", "infinite height has no finite value");
    return *value_;
  }

  friend constexpr bool operator==(const Height& a, const Height& b) {
    return a.value_ == b.value_;
  }
  friend constexpr bool operator!=(const Height& a, const Height& b) {
    return !(a == b);
  }
  friend constexpr bool operator<(const Height& a, const Height& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
  }
  friend constexpr bool operator>(const Height& a, const Height& b) { return b < a; }
  friend constexpr bool operator<=(const Height& a, const Height& b) { return !(b < a); }
  friend constexpr bool operator>=(const Height& a, const Height& b) { return !(a < b); }

  friend constexpr Height operator+(const Height& a, Natural k) {
    return a.is_infinite() ? a : Height(*a.value_ + k);
  }

  // Truncated decrement into [0, infinity]: infinity - k = infinity and
  // finite values clamp at 0.
  constexpr Height minus_clamped(Natural k) const {
    if (is_infinite()) return *this;
    return Height(*value_ > k ? *value_ - k : 0);
  }

  std::string str() const {
    return is_infinite() ? "inf" : std::to_string(*value_);
  }

 private:
  struct infinite_tag {};
  constexpr explicit Height(infinite_tag) : value_(std::nullopt) {}

  std::optional<Natural> value_;
};

inline constexpr Height min(const Height& a, const Height& b) { return a < b ? a : b; }
inline constexpr Height max(const Height& a, const Height& b) { return a < b ? b : a; }

}  // namespace ttg
