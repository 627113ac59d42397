// Copyright 2026 The srcool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SRCOOL_HALF_INT_HPP
#define SRCOOL_HALF_INT_HPP

#include <compare>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace srcool {

/// Exact half-integer quantum number, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() noexcept = default;
  constexpr explicit HalfInt(int whole) noexcept : twice_(2 * whole) {}

  static constexpr HalfInt from_twice(int twice) noexcept {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const noexcept { return twice_; }
  constexpr double value() const noexcept { return 0.5 * twice_; }
  constexpr bool is_integral() const noexcept { return twice_ % 2 == 0; }

  constexpr HalfInt operator-() const noexcept { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) noexcept {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) noexcept {
    twice_ -= o.twice_;
    return *this;
  }
  constexpr HalfInt& operator++() noexcept {
    twice_ += 2;
    return *this;
  }
  constexpr HalfInt& operator--() noexcept {
    twice_ -= 2;
    return *this;
  }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) noexcept { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) noexcept { return a -= b; }
  friend constexpr bool operator==(HalfInt, HalfInt) noexcept = default;
  friend constexpr auto operator<=>(HalfInt, HalfInt) noexcept = default;

  std::string str() const {
    if (is_integral()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  int twice_ = 0;
};

/// n/2, e.g. half(9) is 9/2.
constexpr HalfInt half(int n) noexcept { return HalfInt::from_twice(n); }

inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

/// Non-negative angular momentum quantum number j.
class Spin {
 public:
  // Implicit so that HalfInt arguments convert at call sites; negative j throws.
  Spin(HalfInt j) : j_(j) {  // NOLINT(google-explicit-constructor)
    if (j.twice() < 0) throw std::domain_error("angular momentum must be non-negative, got " + j.str());
  }

  constexpr HalfInt value() const noexcept { return j_; }
  constexpr int twice() const noexcept { return j_.twice(); }
  constexpr int multiplicity() const noexcept { return j_.twice() + 1; }

  /// |m| <= j and j - m integral.
  constexpr bool admits(HalfInt m) const noexcept {
    return std::abs(m.twice()) <= j_.twice() && (j_.twice() - m.twice()) % 2 == 0;
  }

  /// m = -j, -j+1, ..., j.
  std::vector<HalfInt> projections() const {
    std::vector<HalfInt> ms;
    ms.reserve(static_cast<std::size_t>(multiplicity()));
    for (int tm = -j_.twice(); tm <= j_.twice(); tm += 2) ms.push_back(HalfInt::from_twice(tm));
    return ms;
  }

  friend constexpr bool operator==(Spin, Spin) noexcept = default;

 private:
  HalfInt j_;
};

}  // namespace srcool

#endif  // SRCOOL_HALF_INT_HPP
