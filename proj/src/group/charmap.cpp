#include "xgsigma/group/charmap.hpp"

#include "xgsigma/errors.hpp"
#include "xgsigma/geometry/cone.hpp"

namespace xgs::group {

CharMap induced_char_map(const std::vector<Word>& images, const GroupDescriptor& source,
                         const GroupDescriptor& target) {
  const std::size_t gs = source.generators().size();
  const std::size_t gt = target.generators().size();
  if (images.size() != gs)
    throw Error(ErrorKind::IllFormedWord, "expected " + std::to_string(gs) + " generator images, got " +
                                              std::to_string(images.size()));
  // E: exponent sums of each image word over target generators.
  RatMatrix E(gs, gt);
  for (std::size_t i = 0; i < gs; ++i) {
    IntVec row = exponent_sums(images[i], gt);
    for (std::size_t j = 0; j < gt; ++j) E(i, j) = row[j];
  }
  RatMatrix Pt = to_rat(target.ab_projection());
  RatMatrix values = E * Pt;  // (phi^* chi)(source gen i), as a function of chi

  // Relators of the source must evaluate to zero under every pulled-back character.
  for (const auto& rel : source.relators()) {
    IntVec sums = exponent_sums(rel, gs);
    for (std::size_t k = 0; k < values.cols(); ++k) {
      Rat v = 0;
      for (std::size_t i = 0; i < gs; ++i) v += Rat(sums[i]) * values(i, k);
      if (sgn(v) != 0) throw Error(ErrorKind::InconsistentMap, "relator image is not character-trivial");
    }
  }
  const std::size_t rs = source.ab_rank();
  if (rs == 0) return CharMap{RatMatrix(0, target.ab_rank())};
  RatMatrix Q = left_inverse(to_rat(source.ab_projection()));
  return CharMap{Q * values};
}

namespace {

void put_identity(RatMatrix& m, std::size_t row0, std::size_t col0, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) m(row0 + i, col0 + i) = 1;
}

}  // namespace

XGSpace xg_space(std::size_t n) {
  XGSpace x;
  x.n = n;
  x.c1.matrix = RatMatrix(n, 2 * n);
  put_identity(x.c1.matrix, 0, 0, n);
  x.c2.matrix = RatMatrix(n, 2 * n);
  put_identity(x.c2.matrix, 0, n, n);
  x.pi1_star.matrix = RatMatrix(2 * n, n);
  put_identity(x.pi1_star.matrix, 0, 0, n);
  x.pi2_star.matrix = RatMatrix(2 * n, n);
  put_identity(x.pi2_star.matrix, n, 0, n);
  x.pi3_star.matrix = RatMatrix(2 * n, n);
  put_identity(x.pi3_star.matrix, 0, 0, n);
  put_identity(x.pi3_star.matrix, n, 0, n);
  // (mu1, mu2, mu3) -> (mu1 + mu2, mu2 + mu3)
  x.rho_star.matrix = RatMatrix(2 * n, 3 * n);
  put_identity(x.rho_star.matrix, 0, 0, n);
  put_identity(x.rho_star.matrix, 0, n, n);
  put_identity(x.rho_star.matrix, n, n, n);
  put_identity(x.rho_star.matrix, n, 2 * n, n);
  x.diag_cell = geom::Cell{2 * n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    IntVec v(2 * n, BigInt(0));
    v[i] = 1;
    v[n + i] = -1;
    x.diag_cell.constraints.push_back(geom::HalfSpace{std::move(v), geom::Relation::EQ});
  }
  return x;
}

XGSpace xg_space(const GroupDescriptor& G) { return xg_space(G.ab_rank()); }

geom::Cell XGSpace::kernel_cell(int i) const {
  switch (i) {
    case 1: return geom::Cell{dim(), geom::zero_block(dim(), n, 2 * n)};
    case 2: return geom::Cell{dim(), geom::zero_block(dim(), 0, n)};
    case 3: return diag_cell;
    default: throw Error(ErrorKind::InvalidArgument, "kernel_cell: index must be 1, 2 or 3");
  }
}

GroupDescriptor xg_abelian_model(const GroupDescriptor& G) {
  const int k = static_cast<int>(G.generators().size());
  std::vector<std::string> gens = G.generators();
  for (const auto& g : G.generators()) gens.push_back(g + "_bar");
  std::vector<Word> rels = G.relators();
  for (const auto& r : G.relators()) {
    Word shifted = r;
    for (int& l : shifted) l = l > 0 ? l + k : l - k;
    rels.push_back(std::move(shifted));
  }
  for (int x = 1; x <= k; ++x) rels.push_back(commutator(x, x + k));
  Flags f;
  f.is_fg = G.flags().is_fg;
  return GroupDescriptor("X(" + G.name() + ")", std::move(gens), std::move(rels), f);
}

geom::SphSet preimage(const geom::SphSet& s, const CharMap& L) { return geom::preimage(s, L.matrix); }

}  // namespace xgs::group
