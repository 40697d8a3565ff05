// Copyright 2026 The setcard Authors
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

#ifndef SETCARD_BIGINT_HPP
#define SETCARD_BIGINT_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace setcard {

/// Arbitrary-precision integer. Naturals use the same type with a
/// nonnegativity invariant enforced by whoever builds them.
using Integer = mpz_class;
using Rational = mpq_class;

/// Parses an unsigned decimal numeral. Returns nullopt on an empty string or
/// any non-digit character.
std::optional<Integer> parse_natural(std::string_view digits);

inline std::string to_decimal(const Integer& value) { return value.get_str(10); }

/// Integer power with a machine-word exponent.
Integer pow_int(const Integer& base, unsigned long exponent);

/// Floor division for arbitrary signs.
Integer floor_div(const Integer& num, const Integer& den);

/// Floor of a rational.
Integer floor_of(const Rational& value);

}  // namespace setcard

#endif  // SETCARD_BIGINT_HPP
