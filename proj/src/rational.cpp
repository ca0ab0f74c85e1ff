#include "xgsigma/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "xgsigma/errors.hpp"

namespace xgs {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BranchLimitExceeded: return "BranchLimitExceeded";
    case ErrorKind::IllFormedWord: return "IllFormedWord";
    case ErrorKind::InconsistentMap: return "InconsistentMap";
    case ErrorKind::UnknownCatalogEntry: return "UnknownCatalogEntry";
    case ErrorKind::MissingSigma: return "MissingSigma";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::InvalidSigmaData: return "InvalidSigmaData";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::VersionError: return "VersionError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

IntVec make_int_vec(std::initializer_list<long> values) {
  IntVec out;
  out.reserve(values.size());
  for (long v : values) out.emplace_back(v);
  return out;
}

RatVec make_rat_vec(std::initializer_list<long> values) {
  RatVec out;
  out.reserve(values.size());
  for (long v : values) out.emplace_back(v);
  return out;
}

bool is_zero(std::span<const BigInt> v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return sgn(x) == 0; });
}

bool is_zero(std::span<const Rat> v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return sgn(x) == 0; });
}

BigInt content(std::span<const BigInt> v) {
  BigInt g = 0;
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntVec primitive(std::span<const BigInt> v) {
  IntVec out(v.begin(), v.end());
  BigInt g = content(v);
  if (sgn(g) == 0 || g == 1) return out;
  for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

IntVec clear_denominators(std::span<const Rat> v) {
  BigInt l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  IntVec out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_num() * (l / q.get_den()));
  return primitive(out);
}

BigInt dot(std::span<const BigInt> a, std::span<const BigInt> b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(std::span<const BigInt> a, std::span<const Rat> b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

Rat dot(std::span<const Rat> a, std::span<const Rat> b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec to_rat(std::span<const BigInt> v) {
  RatVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

std::string format_rat(const Rat& q) { return q.get_str(); }

std::string format_int(const BigInt& z) { return z.get_str(); }

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

BigInt parse_int(std::string_view text) {
  if (!valid_integer(text))
    throw Error(ErrorKind::InvalidArgument, "not an integer: '" + std::string(text) + "'");
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw Error(ErrorKind::InvalidArgument, "signed denominator: '" + std::string(text) + "'");
  BigInt den = parse_int(den_text);
  if (sgn(den) == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

RatVec parse_rat_list(std::string_view text) {
  RatVec out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    out.push_back(parse_rat(item));
    start = end + 1;
  }
  return out;
}

std::string format_vec(std::span<const BigInt> v, char sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i].get_str();
  }
  return os.str();
}

std::string format_vec(std::span<const Rat> v, char sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i].get_str();
  }
  return os.str();
}

}  // namespace xgs
