#include "pbx/rational.hpp"

#include <cctype>
#include <ostream>

#include "pbx/error.hpp"

namespace pbx {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::InvalidGeneratorSet: return "InvalidGeneratorSet";
    case ErrorCode::NotSwapPair: return "NotSwapPair";
    case ErrorCode::DegenerateKernel: return "DegenerateKernel";
    case ErrorCode::GeneratorNotInSet: return "GeneratorNotInSet";
    case ErrorCode::OmegaNotReplaceable: return "OmegaNotReplaceable";
    case ErrorCode::InfeasibleInput: return "InfeasibleInput";
    case ErrorCode::InfeasibleStart: return "InfeasibleStart";
    case ErrorCode::DomainTooLarge: return "DomainTooLarge";
    case ErrorCode::IOError: return "IOError";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text, std::string_view why) {
  throw Error(ErrorCode::ParseError, "cannot parse '" + std::string(text) + "' as a rational: " + std::string(why));
}

// Accepts an optional sign followed by digits.
mpz_class parse_integer(std::string_view whole, std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) bad(whole, "expected digits");
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  v_ = mpq_class(numerator, denominator);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad(text, "empty");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(text, s.substr(0, slash));
    const std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) bad(text, "denominator must be a positive integer");
    const mpz_class den(std::string(den_text), 10);
    if (den == 0) bad(text, "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    const std::string_view exp_text = s.substr(e + 1);
    const mpz_class ez = parse_integer(text, exp_text);
    if (!ez.fits_slong_p() || abs(ez) > 1000) bad(text, "exponent out of range");
    exponent = ez.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = s.substr(0, dot);
    const std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad(text, "no digits");
    if (!int_part.empty() && !all_digits(int_part)) bad(text, "malformed integer part");
    if (!frac_part.empty() && !all_digits(frac_part)) bad(text, "malformed fractional part");
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) bad(text, "malformed number");
    digits = std::string(s);
  }
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class q = exponent < 0 ? mpq_class(mantissa, scale) : mpq_class(mantissa * scale);
  q.canonicalize();
  return Rational(q);
}

std::string Rational::decimal(int digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const mpq_class scaled = abs(v_) * scale;
  // round half away from zero
  mpz_class q = scaled.get_num() / scaled.get_den();
  const mpz_class rem = scaled.get_num() - q * scaled.get_den();
  if (2 * rem >= scaled.get_den()) q += 1;
  std::string body = q.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return (sgn(v_) < 0 && q != 0 ? "-" : "") + body;
}

std::size_t Rational::hash() const {
  const std::size_t h1 = std::hash<std::string>{}(v_.get_num().get_str(16));
  const std::size_t h2 = std::hash<std::string>{}(v_.get_den().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace pbx
