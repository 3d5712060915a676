#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace nahm {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p/q", "p", with optional sign and surrounding whitespace. The result
// is canonical. Throws ParseError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

// Comma separated list of rationals, e.g. "-1/2, -1, -1/2".
std::vector<Rational> parse_rational_list(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& value);

Rational make_rational(std::int64_t num, std::int64_t den = 1);

Integer lcm(const Integer& a, const Integer& b);

// Throws std::overflow_error when the value does not fit.
std::int64_t to_int64(const Integer& value);

std::int64_t lcm_int64(std::int64_t a, std::int64_t b);

// Smallest integer >= value / largest integer <= value.
Integer ceil(const Rational& value);
Integer floor(const Rational& value);

}  // namespace nahm
