#include "xgsigma/group/catalog.hpp"

#include <regex>

#include "xgsigma/errors.hpp"

namespace xgs::group {

namespace {

constexpr int kStoredDegrees = 4;

Flags all(Tri t) {
  Flags f;
  for (const auto& field : flag_fields()) f.*(field.member) = t;
  return f;
}

SigmaData free_group(int k) {
  if (k < 2) throw Error(ErrorKind::UnknownCatalogEntry, "free(k) needs k >= 2; use free_abelian(1) for Z");
  Flags f = all(Tri::True);
  f.gprime_ab_fg = Tri::False;
  f.gprime_fg = Tri::False;
  f.gprime_fp2 = Tri::False;
  f.gprime_fp = Tri::False;
  SigmaData s(GroupDescriptor("free(" + std::to_string(k) + ")", default_generator_names(k), {}, f));
  auto full = geom::SphSet::full(s.dim());
  s.set_complement(1, Coeff::Z, full);
  s.set_complement(2, Coeff::Z, full);
  s.set_complement(2, Coeff::HTPY, full);
  return s;
}

SigmaData free_abelian(int n) {
  if (n < 1) throw Error(ErrorKind::UnknownCatalogEntry, "free_abelian(n) needs n >= 1");
  std::vector<Word> rels;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) rels.push_back(commutator(i, j));
  Flags f = all(Tri::True);
  f.is_nonabelian_limit_group = Tri::False;
  SigmaData s(GroupDescriptor("free_abelian(" + std::to_string(n) + ")", default_generator_names(n), rels, f));
  auto none = geom::SphSet::empty(s.dim());
  s.set_complement(1, Coeff::Z, none);
  for (int d = 2; d <= kStoredDegrees; ++d)
    for (Coeff c : {Coeff::Z, Coeff::HTPY, Coeff::FIELD_Q}) s.set_complement(d, c, none);
  return s;
}

SigmaData limit_placeholder(int n) {
  if (n < 1) throw Error(ErrorKind::UnknownCatalogEntry, "nonabelian_limit_placeholder(n) needs n >= 1");
  Flags f = all(Tri::True);
  f.gprime_ab_fg = Tri::Unknown;
  // Sigma^1 = empty means G' is not finitely generated.
  f.gprime_fg = Tri::False;
  f.gprime_fp2 = Tri::False;
  f.gprime_fp = Tri::False;
  SigmaData s(GroupDescriptor("nonabelian_limit_placeholder(" + std::to_string(n) + ")",
                              default_generator_names(n), {}, f));
  auto full = geom::SphSet::full(s.dim());
  s.set_complement(1, Coeff::Z, full);
  s.set_complement(2, Coeff::Z, full);
  s.set_complement(2, Coeff::HTPY, full);
  return s;
}

SigmaData baumslag_solitar(int m) {
  // < a, t | t a t^-1 a^-m >
  Word rel{2, 1, -2};
  for (int i = 0; i < (m < 0 ? -m : m); ++i) rel.push_back(m > 0 ? -1 : 1);
  Flags f;
  f.is_fg = Tri::True;
  f.is_fp2 = Tri::True;
  f.is_fp = Tri::True;
  return SigmaData(GroupDescriptor("bs(1," + std::to_string(m) + ")", {"a", "t"}, {rel}, f));
}

}  // namespace

std::vector<std::string> catalog_families() {
  return {"free(k)", "free_abelian(n)", "nonabelian_limit_placeholder(n)", "bs(1,m)"};
}

std::vector<std::string> default_generator_names(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i)
    out.push_back(k <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i + 1));
  return out;
}

SigmaData catalog_lookup(const std::string& name) {
  static const std::regex one(R"(^\s*([a-z_]+)\(\s*(-?\d{1,6})\s*\)\s*$)");
  static const std::regex bs(R"(^\s*bs\(\s*1\s*,\s*(-?\d{1,6})\s*\)\s*$)");
  std::smatch m;
  if (std::regex_match(name, m, bs)) return baumslag_solitar(std::stoi(m[1]));
  if (std::regex_match(name, m, one)) {
    const std::string family = m[1];
    const int arg = std::stoi(m[2]);
    if (family == "free") return free_group(arg);
    if (family == "free_abelian") return free_abelian(arg);
    if (family == "nonabelian_limit_placeholder") return limit_placeholder(arg);
  }
  throw Error(ErrorKind::UnknownCatalogEntry, "'" + name + "' is not in the catalog");
}

}  // namespace xgs::group
