#include "pbx/core.hpp"

#include <set>
#include <sstream>

namespace pbx {

Domain::Domain(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorCode::InvariantViolation, "domain must contain at least one point");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw Error(ErrorCode::InvariantViolation, "duplicate domain label '" + l + "'");
  }
}

Domain Domain::integers(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return Domain(std::move(labels));
}

void require_same_domain(const Domain& a, const Domain& b, const char* what) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DomainMismatch, std::string(what) + ": domain sizes " + std::to_string(a.size()) +
                                               " and " + std::to_string(b.size()) + " differ");
  }
  if (a != b) throw Error(ErrorCode::DomainMismatch, std::string(what) + ": domain labels differ");
}

StepCDF::StepCDF(Domain domain, RationalVector values) : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.size()) {
    throw Error(ErrorCode::InvariantViolation, "CDF length does not match the domain");
  }
  Rational prev(0);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < prev) {
      throw Error(ErrorCode::InvariantViolation, "CDF decreases at position " + std::to_string(i + 1));
    }
    if (values_[i] > Rational(1)) {
      throw Error(ErrorCode::InvariantViolation, "CDF exceeds 1 at position " + std::to_string(i + 1));
    }
    prev = values_[i];
  }
  if (values_.back() != Rational(1)) throw Error(ErrorCode::InvariantViolation, "CDF must end at 1");
}

Rational StepCDF::at(std::size_t i) const { return i == 0 ? Rational(0) : values_.at(i - 1); }

MassFunction::MassFunction(Domain domain, RationalVector masses)
    : domain_(std::move(domain)), masses_(std::move(masses)) {
  if (masses_.size() != domain_.size()) {
    throw Error(ErrorCode::InvariantViolation, "mass vector length does not match the domain");
  }
  Rational total(0);
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (masses_[i].sign() < 0) {
      throw Error(ErrorCode::InvariantViolation, "negative mass at position " + std::to_string(i + 1));
    }
    total += masses_[i];
  }
  if (total != Rational(1)) throw Error(ErrorCode::InvariantViolation, "masses sum to " + total.str() + ", not 1");
}

Gamble::Gamble(Domain domain, RationalVector values) : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.size()) {
    throw Error(ErrorCode::DomainMismatch, "gamble has " + std::to_string(values_.size()) + " values for a domain of " +
                                               std::to_string(domain_.size()));
  }
}

Gamble Gamble::operator-() const {
  RationalVector neg;
  neg.reserve(values_.size());
  for (const auto& v : values_) neg.push_back(-v);
  return Gamble(domain_, std::move(neg));
}

Gamble operator+(const Gamble& a, const Gamble& b) {
  require_same_domain(a.domain(), b.domain(), "gamble sum");
  RationalVector sum(a.values());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b.values()[i];
  return Gamble(a.domain(), std::move(sum));
}

RationalVector ChainCoefficients::reconstruct() const {
  RationalVector h(alpha.size());
  Rational acc(0);
  for (std::size_t i = alpha.size(); i-- > 0;) {
    acc += alpha[i];
    h[i] = acc;
  }
  return h;
}

std::string PBoxViolation::describe() const {
  const std::string where = index ? " at position " + std::to_string(index) : std::string();
  const std::string which = side ? (*side == Side::Lower ? "lower" : "upper") : "";
  switch (rule) {
    case PBoxRule::NonMonotone: return "NonMonotone(" + which + ")" + where;
    case PBoxRule::BoundOrderViolated: return "BoundOrderViolated: lower > upper" + where;
    case PBoxRule::TerminalNotOne: return "TerminalNotOne(" + which + "): last value must be 1";
    case PBoxRule::ValueOutOfRange: return "ValueOutOfRange(" + which + ")" + where;
    case PBoxRule::LengthMismatch: return "LengthMismatch(" + which + "): expected one value per domain point";
  }
  return "unknown violation";
}

std::string PBoxCheck::describe() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) os << (i ? "; " : "") << violations[i].describe();
  return os.str();
}

PBoxCheck pbox_validate(RationalVector low, RationalVector up, Domain domain) {
  PBoxCheck check;
  const std::size_t n = domain.size();
  if (low.size() != n) check.violations.push_back({PBoxRule::LengthMismatch, Side::Lower, 0});
  if (up.size() != n) check.violations.push_back({PBoxRule::LengthMismatch, Side::Upper, 0});
  if (!check.ok()) return check;

  const Rational zero(0), one(1);
  for (auto [values, side] : {std::pair{&low, Side::Lower}, std::pair{&up, Side::Upper}}) {
    for (std::size_t i = 0; i < n; ++i) {
      const Rational& v = (*values)[i];
      if (v < zero || v > one) check.violations.push_back({PBoxRule::ValueOutOfRange, side, i + 1});
      if (i > 0 && v < (*values)[i - 1]) check.violations.push_back({PBoxRule::NonMonotone, side, i + 1});
    }
    if (values->back() != one) check.violations.push_back({PBoxRule::TerminalNotOne, side, n});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (low[i] > up[i]) check.violations.push_back({PBoxRule::BoundOrderViolated, std::nullopt, i + 1});
  }
  if (check.ok()) check.pbox.emplace(PBox(PBox::Unchecked{}, std::move(domain), std::move(low), std::move(up)));
  return check;
}

namespace {

PBox require_valid(PBoxCheck check) {
  if (!check.ok()) throw Error(ErrorCode::InvariantViolation, check.describe());
  return std::move(*check.pbox);
}

}  // namespace

PBox::PBox(Domain domain, RationalVector low, RationalVector up)
    : PBox(require_valid(pbox_validate(std::move(low), std::move(up), std::move(domain)))) {}

Rational PBox::low_at(std::size_t i) const { return i == 0 ? Rational(0) : low_.at(i - 1); }
Rational PBox::up_at(std::size_t i) const { return i == 0 ? Rational(0) : up_.at(i - 1); }

PBox vacuous_pbox(const Domain& domain) {
  RationalVector low(domain.size(), Rational(0));
  RationalVector up(domain.size(), Rational(1));
  low.back() = Rational(1);
  return PBox(domain, std::move(low), std::move(up));
}

PBox precise_pbox(const StepCDF& cdf) { return PBox(cdf.domain(), cdf.values(), cdf.values()); }

MassFunction to_mass(const StepCDF& cdf) {
  RationalVector p(cdf.size());
  for (std::size_t i = 1; i <= cdf.size(); ++i) p[i - 1] = cdf.at(i) - cdf.at(i - 1);
  return MassFunction(cdf.domain(), std::move(p));
}

StepCDF to_cdf(const MassFunction& mass) {
  RationalVector F(mass.size());
  Rational acc(0);
  for (std::size_t i = 0; i < mass.size(); ++i) {
    acc += mass.masses()[i];
    F[i] = acc;
  }
  return StepCDF(mass.domain(), std::move(F));
}

ChainCoefficients chain_decompose(const Gamble& h) {
  const auto& v = h.values();
  ChainCoefficients c;
  c.alpha.resize(v.size());
  for (std::size_t i = 0; i + 1 < v.size(); ++i) c.alpha[i] = v[i] - v[i + 1];
  c.alpha.back() = v.back();
  return c;
}

Rational expectation(const MassFunction& p, const Gamble& h) {
  require_same_domain(p.domain(), h.domain(), "expectation");
  Rational sum(0);
  for (std::size_t i = 0; i < p.size(); ++i) sum += h.values()[i] * p.masses()[i];
  return sum;
}

Rational expectation(const StepCDF& F, const Gamble& h) {
  require_same_domain(F.domain(), h.domain(), "expectation");
  const auto alpha = chain_decompose(h).alpha;
  Rational sum(0);
  for (std::size_t i = 0; i < F.size(); ++i) sum += alpha[i] * F.values()[i];
  return sum;
}

RationalVector parse_rationals(std::span<const std::string> texts) {
  RationalVector out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(Rational::parse(t));
  return out;
}

RationalVector parse_rational_list(std::string_view text) {
  RationalVector out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(Rational::parse(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(const RationalVector& values, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += values[i].str();
  }
  return out;
}

}  // namespace pbx
