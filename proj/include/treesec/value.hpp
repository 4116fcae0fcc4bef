// Copyright 2026 The Treesec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREESEC_VALUE_HPP
#define TREESEC_VALUE_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace treesec {

/// Ordered value domain a problem instance works over. Both are countably
/// infinite with the usual total order; all arithmetic is exact.
enum class DataDomain { integers, rationals };

std::string to_string(DataDomain d);
DataDomain domain_from_string(const std::string& s);

/// Error raised by the library. `kind` maps onto the CLI exit codes.
class Error : public std::runtime_error {
 public:
  enum class Kind { input, resource, inconsistent };
  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline Error input_error(const std::string& what) { return Error(Error::Kind::input, what); }
inline Error resource_error(const std::string& what) { return Error(Error::Kind::resource, what); }

/// Exact value: an integer, or a rational kept in lowest terms with a
/// positive denominator. Never a float; comparisons are exact.
class DataValue {
 public:
  constexpr DataValue() = default;
  DataValue(long long n) : num_(n) {}  // NOLINT: implicit by design
  static DataValue ratio(long long num, long long den);

  bool is_integer() const { return den_ == 1; }
  long long num() const { return num_; }
  long long den() const { return den_; }

  bool in_domain(DataDomain d) const { return d == DataDomain::rationals || is_integer(); }

  std::strong_ordering operator<=>(const DataValue& o) const {
    // Cross-multiplication; denominators are positive so no sign flip.
    __int128 lhs = static_cast<__int128>(num_) * o.den_;
    __int128 rhs = static_cast<__int128>(o.num_) * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  bool operator==(const DataValue& o) const { return num_ == o.num_ && den_ == o.den_; }

  DataValue midpoint(const DataValue& o) const;
  std::string str() const;

 private:
  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace treesec

#endif  // TREESEC_VALUE_HPP
