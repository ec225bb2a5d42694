#ifndef HIERSCORE_RATIONAL_HPP
#define HIERSCORE_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace hierscore {

// All probabilities, scores and agreement statistics are exact rationals.
// Decimal text appears only at the I/O boundary: input probabilities are
// parsed to exact fractions and results are rendered at a requested
// precision.
using Rational = mpq_class;

// mpq_class(num, den) does not canonicalize; every literal construction must
// go through here.
Rational make_rational(long num, long den = 1);

// Exact value of a plain decimal like "0.42", ".5" or "-1"; nullopt on any
// deviation from [+-]?(digits[.digits] | .digits).
std::optional<Rational> parse_decimal(std::string_view text);

// "p/q" with unsigned integer p and q, q > 0.
std::optional<Rational> parse_fraction(std::string_view text);

// Fraction if the text contains '/', decimal otherwise.
std::optional<Rational> parse_number(std::string_view text);

// Fixed-point rendering with the stated number of fractional digits,
// round-half-even. digits must be >= 1. Never renders "-0.000...".
std::string render_fixed(const Rational& value, int digits);

// Canonical exact form, "p/q" or "p" for integers. Used in messages and in
// inventory serialization.
std::string to_exact_string(const Rational& value);

}  // namespace hierscore

#endif
