#include "pbx/generator_set.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "pbx/error.hpp"

namespace pbx {

namespace {

void check_domain(std::size_t n) {
  if (n == 0 || n > kMaxFamilyDomain) {
    throw Error(ErrorCode::DomainTooLarge, "generator families support 1.." + std::to_string(kMaxFamilyDomain) +
                                               " domain points, got " + std::to_string(n));
  }
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::size_t parse_index(std::string_view text, std::string_view whole) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw Error(ErrorCode::ParseError, "bad generator '" + std::string(whole) + "'");
  }
  return static_cast<std::size_t>(std::stoul(std::string(text)));
}

}  // namespace

Generator canonical(std::size_t n, Generator g) {
  switch (g.kind) {
    case Generator::Kind::Prefix:
      if (g.index < 1 || g.index > n) throw std::invalid_argument("prefix index out of range");
      return g;
    case Generator::Kind::CoPrefix:
      if (g.index >= n) throw std::invalid_argument("co-prefix index out of range (A_n^c is empty)");
      if (g.index == 0) return Generator::omega(n);
      return g;
    case Generator::Kind::Singleton:
      if (g.index < 1 || g.index > n) throw std::invalid_argument("singleton index out of range");
      if (g.index == 1) return Generator::prefix(1);
      if (g.index == n) return Generator::co_prefix(n - 1);
      return g;
  }
  return g;
}

bool is_omega(std::size_t n, Generator g) { return g.kind == Generator::Kind::Prefix && g.index == n; }

std::uint64_t mask(std::size_t n, Generator g) {
  const auto low_bits = [](std::size_t k) -> std::uint64_t { return k >= 64 ? ~0ULL : ((1ULL << k) - 1); };
  switch (g.kind) {
    case Generator::Kind::Prefix: return low_bits(g.index);
    case Generator::Kind::CoPrefix: return low_bits(n) & ~low_bits(g.index);
    case Generator::Kind::Singleton: return 1ULL << (g.index - 1);
  }
  return 0;
}

linalg::IntVector indicator(std::size_t n, Generator g) {
  const std::uint64_t m = mask(n, g);
  linalg::IntVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (m >> i) & 1U;
  return v;
}

std::string to_string(std::size_t n, Generator g) {
  switch (g.kind) {
    case Generator::Kind::Prefix: return g.index == n ? "Ω" : "A" + std::to_string(g.index);
    case Generator::Kind::CoPrefix: return "A" + std::to_string(g.index) + "^c";
    case Generator::Kind::Singleton: return "{" + std::to_string(g.index) + "}";
  }
  return "?";
}

Generator parse_generator(std::size_t n, std::string_view text) {
  const std::string s = trim(text);
  if (s == "Ω" || s == "Omega" || s == "omega") return Generator::omega(n);
  if (s.size() >= 3 && s.front() == '{' && s.back() == '}') {
    return Generator::singleton(parse_index(std::string_view(s).substr(1, s.size() - 2), text));
  }
  if (!s.empty() && s.front() == 'A') {
    std::string_view body = std::string_view(s).substr(1);
    if (body.ends_with("^c")) return Generator::co_prefix(parse_index(body.substr(0, body.size() - 2), text));
    if (body.ends_with("c")) return Generator::co_prefix(parse_index(body.substr(0, body.size() - 1), text));
    return Generator::prefix(parse_index(body, text));
  }
  throw Error(ErrorCode::ParseError, "bad generator '" + s + "'");
}

std::vector<Generator> constraint_generators(std::size_t n) {
  std::vector<Generator> out;
  for (std::size_t i = 1; i < n; ++i) out.push_back(Generator::prefix(i));
  for (std::size_t i = 1; i < n; ++i) out.push_back(Generator::co_prefix(i));
  for (std::size_t i = 2; i < n; ++i) out.push_back(Generator::singleton(i));
  return out;
}

GeneratorSet::GeneratorSet(std::size_t n, std::vector<Generator> members) : n_(n), members_(std::move(members)) {
  check_domain(n);
  for (auto& g : members_) {
    try {
      g = canonical(n, g);
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorCode::InvalidGeneratorSet, e.what());
    }
  }
  std::sort(members_.begin(), members_.end());
}

GeneratorSet GeneratorSet::from_chain(std::size_t n, std::span<const ChainEntry> chain,
                                      std::span<const std::size_t> singletons) {
  std::vector<Generator> members;
  members.reserve(chain.size() + singletons.size());
  for (const auto& e : chain) {
    members.push_back(e.sign == Sign::Plus ? Generator::prefix(e.index) : Generator::co_prefix(e.index));
  }
  for (std::size_t s : singletons) members.push_back(Generator::singleton(s));
  return GeneratorSet(n, std::move(members));
}

GeneratorSet GeneratorSet::parse(std::size_t n, std::string_view text) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
    throw Error(ErrorCode::ParseError, "generator family must be enclosed in braces");
  }
  s = s.substr(1, s.size() - 2);
  std::vector<Generator> members;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ',' || std::isspace(static_cast<unsigned char>(s[pos])))) ++pos;
    if (pos >= s.size()) break;
    std::size_t end = s[pos] == '{' ? s.find('}', pos) + 1 : s.find(',', pos);
    if (end == std::string::npos || end == 0) end = s.size();
    members.push_back(parse_generator(n, std::string_view(s).substr(pos, end - pos)));
    pos = end;
  }
  return GeneratorSet(n, std::move(members));
}

GeneratorSet GeneratorSet::full_chain(std::size_t n) {
  std::vector<Generator> members;
  for (std::size_t i = 1; i <= n; ++i) members.push_back(Generator::prefix(i));
  return GeneratorSet(n, std::move(members));
}

std::vector<ChainEntry> GeneratorSet::chain() const {
  std::vector<ChainEntry> out;
  for (const auto& g : members_) {
    if (g.is_chain()) out.push_back({g.index, g.sign()});
  }
  return out;
}

std::vector<std::size_t> GeneratorSet::singletons() const {
  std::vector<std::size_t> out;
  for (const auto& g : members_) {
    if (!g.is_chain()) out.push_back(g.index);
  }
  return out;
}

std::vector<std::uint64_t> GeneratorSet::family() const {
  std::vector<std::uint64_t> out;
  out.reserve(members_.size());
  for (const auto& g : members_) out.push_back(mask(n_, g));
  std::sort(out.begin(), out.end());
  return out;
}

bool GeneratorSet::contains(Generator g) const {
  const Generator c = canonical(n_, g);
  return std::binary_search(members_.begin(), members_.end(), c);
}

GeneratorSet GeneratorSet::replaced(Generator out, Generator in) const {
  const Generator c_out = canonical(n_, out);
  std::vector<Generator> members;
  members.reserve(members_.size());
  bool removed = false;
  for (const auto& g : members_) {
    if (!removed && g == c_out) {
      removed = true;
      continue;
    }
    members.push_back(g);
  }
  if (!removed) throw Error(ErrorCode::GeneratorNotInSet, to_string(n_, out) + " is not in " + str());
  members.push_back(in);
  return GeneratorSet(n_, std::move(members));
}

std::string GeneratorSet::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ", ";
    s += to_string(n_, members_[i]);
  }
  return s + "}";
}

std::size_t GeneratorSet::hash() const { return family_hash(*this); }

std::size_t family_hash(const GeneratorSet& g) {
  std::size_t h = std::hash<std::size_t>{}(g.domain_size());
  for (std::uint64_t m : g.family()) h ^= std::hash<std::uint64_t>{}(m) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace pbx
