#include "rightham/rational.hpp"

#include <cctype>

#include "rightham/errors.hpp"

namespace rightham {

std::string to_string(const Rational& value) { return value.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw InvalidInput("malformed rational '" + std::string(text) + "'");
    }
    mpz_class d{std::string(den), 10};
    if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(num), 10), d);
    result.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw InvalidInput("malformed rational '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits{std::string(whole.empty() ? "0" : whole) + std::string(frac), 10};
    result = Rational(digits, scale);
    result.canonicalize();
  } else {
    if (!all_digits(body)) throw InvalidInput("malformed rational '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(body), 10));
  }
  return negative ? Rational(-result) : result;
}

Rational pow(const Rational& value, unsigned exponent) {
  Rational result;
  mpz_pow_ui(result.get_num_mpz_t(), value.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), value.get_den_mpz_t(), exponent);
  result.canonicalize();
  return result;
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace rightham
