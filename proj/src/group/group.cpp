#include "xgsigma/group/group.hpp"

#include <algorithm>

#include "xgsigma/errors.hpp"
#include "xgsigma/group/snf.hpp"

namespace xgs::group {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

Tri parse_tri(std::string_view s) {
  if (s == "true") return Tri::True;
  if (s == "false") return Tri::False;
  if (s == "unknown") return Tri::Unknown;
  throw Error(ErrorKind::InvalidArgument, "expected true|false|unknown, got '" + std::string(s) + "'");
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

const std::vector<FlagField>& flag_fields() {
  static const std::vector<FlagField> fields = {
      {"is_fg", &Flags::is_fg},
      {"is_fp2", &Flags::is_fp2},
      {"is_fp", &Flags::is_fp},
      {"gprime_ab_fg", &Flags::gprime_ab_fg},
      {"gprime_fg", &Flags::gprime_fg},
      {"gprime_fp2", &Flags::gprime_fp2},
      {"gprime_fp", &Flags::gprime_fp},
      {"is_nonabelian_limit_group", &Flags::is_nonabelian_limit_group},
  };
  return fields;
}

IntVec exponent_sums(const Word& w, std::size_t generator_count) {
  IntVec row(generator_count, BigInt(0));
  for (int letter : w) {
    std::size_t g = static_cast<std::size_t>(letter < 0 ? -letter : letter);
    if (letter == 0 || g > generator_count)
      throw Error(ErrorKind::IllFormedWord, "letter " + std::to_string(letter) + " outside 1.." +
                                                std::to_string(generator_count));
    row[g - 1] += letter > 0 ? 1 : -1;
  }
  return row;
}

Abelianization abelianize(std::size_t generator_count, const std::vector<Word>& relators) {
  IntMatrix A(relators.size(), generator_count);
  for (std::size_t i = 0; i < relators.size(); ++i) {
    IntVec row = exponent_sums(relators[i], generator_count);
    for (std::size_t j = 0; j < generator_count; ++j) A(i, j) = row[j];
  }
  SmithForm snf = smith_normal_form(A);
  std::size_t rk = 0;
  Abelianization out;
  for (std::size_t i = 0; i < std::min(A.rows(), A.cols()); ++i) {
    const BigInt& d = snf.D(i, i);
    if (sgn(d) == 0) break;
    ++rk;
    if (d > 1) out.torsion.push_back(d);
  }
  // In the coordinates x -> xV the relation lattice is the row space of D,
  // so the free part is spanned by the columns of V past the rank.
  out.rank = generator_count - rk;
  out.projection = IntMatrix(generator_count, out.rank);
  for (std::size_t k = 0; k < out.rank; ++k) {
    std::size_t col = rk + k;
    int sign = 0;
    for (std::size_t i = 0; i < generator_count && sign == 0; ++i) sign = sgn(snf.V(i, col));
    for (std::size_t i = 0; i < generator_count; ++i) out.projection(i, k) = sign < 0 ? -snf.V(i, col) : snf.V(i, col);
  }
  return out;
}

GroupDescriptor::GroupDescriptor(std::string name, std::vector<std::string> generators, std::vector<Word> relators,
                                 Flags flags)
    : name_(std::move(name)), generators_(std::move(generators)), relators_(std::move(relators)), flags_(flags) {
  ab_ = abelianize(generators_.size(), relators_);
}

void GroupDescriptor::set_ab_projection(IntMatrix P) {
  if (P.rows() != generators_.size() || P.cols() != ab_.rank)
    throw Error(ErrorKind::DimensionMismatch, name_ + ": projection must be " + std::to_string(generators_.size()) +
                                                  " x " + std::to_string(ab_.rank));
  for (const auto& rel : relators_) {
    IntVec sums = exponent_sums(rel, generators_.size());
    for (std::size_t k = 0; k < P.cols(); ++k) {
      BigInt v = 0;
      for (std::size_t g = 0; g < sums.size(); ++g) v += sums[g] * P(g, k);
      if (sgn(v) != 0) throw Error(ErrorKind::InvalidArgument, name_ + ": projection does not kill a relator");
    }
  }
  if (rank(to_rat(P)) != ab_.rank)
    throw Error(ErrorKind::InvalidArgument, name_ + ": projection columns are dependent");
  ab_.projection = std::move(P);
}

Rat GroupDescriptor::evaluate(const RatVec& chi, const Word& w) const {
  require_dim(chi.size(), ab_.rank, "GroupDescriptor::evaluate");
  IntVec sums = exponent_sums(w, generators_.size());
  Rat v = 0;
  for (std::size_t g = 0; g < sums.size(); ++g) {
    if (sgn(sums[g]) == 0) continue;
    for (std::size_t k = 0; k < ab_.rank; ++k) v += Rat(sums[g] * ab_.projection(g, k)) * chi[k];
  }
  return v;
}

Word commutator(int x, int y) { return Word{x, y, -x, -y}; }

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

}  // namespace xgs::group
