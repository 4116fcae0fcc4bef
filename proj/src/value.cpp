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

#include "treesec/value.hpp"

#include <numeric>

namespace treesec {

std::string to_string(DataDomain d) { return d == DataDomain::integers ? "int" : "rat"; }

DataDomain domain_from_string(const std::string& s) {
  if (s == "int") return DataDomain::integers;
  if (s == "rat") return DataDomain::rationals;
  throw input_error("unknown domain '" + s + "' (expected \"int\" or \"rat\")");
}

DataValue DataValue::ratio(long long num, long long den) {
  if (den == 0) throw input_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  DataValue v;
  v.num_ = num;
  v.den_ = den;
  return v;
}

DataValue DataValue::midpoint(const DataValue& o) const {
  __int128 num = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  __int128 den = static_cast<__int128>(den_) * o.den_ * 2;
  __int128 lim = static_cast<__int128>(1) << 62;
  if (num > lim || num < -lim || den > lim)
    throw resource_error("rational midpoint overflows 64-bit storage");
  return ratio(static_cast<long long>(num), static_cast<long long>(den));
}

std::string DataValue::str() const {
  if (is_integer()) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace treesec
