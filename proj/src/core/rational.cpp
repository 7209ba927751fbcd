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

#include "rational.hpp"

#include <cmath>

#include "errors.hpp"

namespace postsel {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
    if (text.empty()) {
        throw DomainError("malformed rational '" + std::string(whole) + "'");
    }
    size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) {
        throw DomainError("malformed rational '" + std::string(whole) + "'");
    }
    for (size_t i = start; i < text.size(); i++) {
        if (text[i] < '0' || text[i] > '9') {
            throw DomainError("malformed rational '" + std::string(whole) + "'");
        }
    }
    BigInt v(std::string(text.substr(start)));
    return text[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash), text);
        BigInt den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) {
            throw DomainError("zero denominator in '" + std::string(text) + "'");
        }
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    bool negative = !digits.empty() && digits[0] == '-';
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        digits.erase(0, 1);
    }
    if (digits.empty() && frac.empty()) {
        throw DomainError("malformed rational '" + std::string(text) + "'");
    }
    BigInt whole = digits.empty() ? BigInt(0) : parse_integer(digits, text);
    BigInt fnum = frac.empty() ? BigInt(0) : parse_integer(frac, text);
    if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) {
        throw DomainError("malformed rational '" + std::string(text) + "'");
    }
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    Rational r = Rational(whole) + Rational(fnum, scale);
    return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational &q) {
    if (boost::multiprecision::denominator(q) == 1) {
        return boost::multiprecision::numerator(q).str();
    }
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) {
        throw DomainError("non-finite value has no rational form");
    }
    if (v == 0) {
        return Rational(0);
    }
    int exp = 0;
    double mant = std::frexp(v, &exp);
    // mant * 2^53 is an exact integer.
    auto m = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(m);
    if (exp > 0) {
        r *= Rational(boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(exp)));
    } else if (exp < 0) {
        r /= Rational(boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(-exp)));
    }
    return r;
}

double to_double(const Rational &q) {
    return q.convert_to<double>();
}

}  // namespace postsel
