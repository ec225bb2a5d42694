#include "hierscore/rational.hpp"

#include <cctype>

#include "hierscore/error.hpp"

namespace hierscore {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorKind::invalid_argument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::optional<Rational> parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return std::nullopt;

  std::string_view whole = s;
  std::string_view frac;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    whole = s.substr(0, dot);
    frac = s.substr(dot + 1);
    // require digits after the point; "5." is rejected
    if (!all_digits(frac)) return std::nullopt;
  }
  if (!whole.empty() && !all_digits(whole)) return std::nullopt;
  if (whole.empty() && frac.empty()) return std::nullopt;

  std::string digits;
  digits.reserve(whole.size() + frac.size());
  digits.append(whole);
  digits.append(frac);
  if (digits.empty()) return std::nullopt;

  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Rational r(num, den);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

std::optional<Rational> parse_fraction(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) return std::nullopt;
  mpz_class d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  Rational r(mpz_class(std::string(num), 10), d);
  r.canonicalize();
  return r;
}

std::optional<Rational> parse_number(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return parse_fraction(text);
  return parse_decimal(text);
}

std::string render_fixed(const Rational& value, int digits) {
  if (digits < 1) throw Error(ErrorKind::invalid_argument, "precision must be >= 1");
  mpz_class num = value.get_num();
  mpz_class den = value.get_den();  // canonical, > 0
  bool negative = num < 0;
  if (negative) num = -num;

  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  num *= scale;

  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  // round half to even on the discarded remainder r/den
  mpz_class twice = 2 * r;
  int cmp_half = cmp(twice, den);
  if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;

  mpz_class whole = q / scale;
  mpz_class frac = q % scale;
  std::string frac_str = frac.get_str();
  frac_str.insert(0, static_cast<std::size_t>(digits) - frac_str.size(), '0');

  std::string out;
  if (negative && q != 0) out += '-';
  out += whole.get_str();
  out += '.';
  out += frac_str;
  return out;
}

std::string to_exact_string(const Rational& value) { return value.get_str(); }

}  // namespace hierscore
