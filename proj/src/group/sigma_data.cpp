#include "xgsigma/group/sigma_data.hpp"

#include "xgsigma/errors.hpp"

namespace xgs::group {

const char* to_string(Coeff c) {
  switch (c) {
    case Coeff::Z: return "z";
    case Coeff::HTPY: return "htpy";
    case Coeff::FIELD_Q: return "q";
  }
  return "z";
}

Coeff parse_coeff(std::string_view s) {
  if (s == "z") return Coeff::Z;
  if (s == "htpy") return Coeff::HTPY;
  if (s == "q") return Coeff::FIELD_Q;
  throw Error(ErrorKind::InvalidArgument, "coefficient must be z, htpy or q; got '" + std::string(s) + "'");
}

SigmaData::SigmaData(GroupDescriptor owner) : owner_(std::move(owner)) {
  if (owner_.ab_rank() == 0)
    throw Error(ErrorKind::InvalidSigmaData,
                owner_.name() + ": abelianization has rank 0, the character sphere is empty");
}

SigmaKey SigmaData::key(int degree, Coeff coeff) {
  if (degree < 1) throw Error(ErrorKind::InvalidArgument, "stored degrees start at 1");
  return SigmaKey{degree, degree == 1 ? Coeff::Z : coeff};
}

void SigmaData::set_complement(int degree, Coeff coeff, geom::SphSet s) {
  require_dim(s.dim, dim(), "SigmaData::set_complement");
  complements_[key(degree, coeff)] = geom::canonical(std::move(s));
}

const geom::SphSet* SigmaData::stored(int degree, Coeff coeff) const {
  auto it = complements_.find(key(degree, coeff));
  return it == complements_.end() ? nullptr : &it->second;
}

bool SigmaData::sigma1_is_full(const geom::Limits& limits) const {
  const geom::SphSet* s1 = stored(1, Coeff::Z);
  return s1 && geom::contains(*s1, geom::SphSet::full(dim()), limits);
}

std::optional<geom::SphSet> SigmaData::complement(int degree, Coeff coeff) const {
  if (degree == 0) return geom::SphSet::empty(dim());
  if (const auto* s = stored(degree, coeff)) return *s;
  if (degree >= 2 && sigma1_is_full()) return geom::SphSet::full(dim());
  return std::nullopt;
}

geom::SphSet SigmaData::require(int degree, Coeff coeff) const {
  auto s = complement(degree, coeff);
  if (!s)
    throw Error(ErrorKind::MissingSigma, owner_.name() + ": no complement of degree " + std::to_string(degree) +
                                             " with coefficients " + to_string(coeff));
  return *s;
}

void SigmaData::validate(const geom::Limits& limits) const {
  auto check = [&](const SigmaKey& small, const SigmaKey& big) {
    auto a = complements_.find(small);
    auto b = complements_.find(big);
    if (a == complements_.end() || b == complements_.end()) return;
    if (!geom::contains(b->second, a->second, limits))
      throw Error(ErrorKind::InvalidSigmaData,
                  owner_.name() + ": complement(" + std::to_string(small.degree) + "," + to_string(small.coeff) +
                      ") is not contained in complement(" + std::to_string(big.degree) + "," +
                      to_string(big.coeff) + ")");
  };
  for (const auto& [k, s] : complements_) {
    for (Coeff c : {Coeff::Z, Coeff::HTPY, Coeff::FIELD_Q}) {
      if (k.degree == 1) check(k, key(2, c));
      else if (k.coeff == c) check(k, key(k.degree + 1, c));
    }
    if (k.coeff == Coeff::Z && k.degree >= 2) check(k, key(k.degree, Coeff::HTPY));
  }
}

}  // namespace xgs::group
