// Copyright 2026 The Postsel Authors
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

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace postsel {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "num/den", an integer, or a finite decimal such as "0.05".
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is 1.
std::string format_rational(const Rational &q);

/// Exact value of a finite double (every double is a dyadic rational).
Rational rational_from_double(double v);

double to_double(const Rational &q);

}  // namespace postsel
