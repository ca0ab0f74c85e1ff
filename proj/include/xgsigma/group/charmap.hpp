#pragma once

#include <vector>

#include "xgsigma/geometry/sphset.hpp"
#include "xgsigma/group/group.hpp"
#include "xgsigma/matrix.hpp"

namespace xgs::group {

/// Linear map between character spaces, chi -> matrix * chi.
struct CharMap {
  RatMatrix matrix;

  std::size_t source_dim() const noexcept { return matrix.cols(); }
  std::size_t target_dim() const noexcept { return matrix.rows(); }

  RatVec operator()(const RatVec& chi) const { return matrix.apply(chi); }
  CharMap then(const CharMap& next) const { return CharMap{next.matrix * matrix}; }

  bool operator==(const CharMap&) const = default;
};

/// Pullback phi^* : Hom(target, R) -> Hom(source, R) for phi : source ->
/// target given by generator images (words over target generators).
/// Throws IllFormedWord for bad letters and InconsistentMap when some
/// relator of source does not map to a character-trivial word.
CharMap induced_char_map(const std::vector<Word>& images, const GroupDescriptor& source,
                         const GroupDescriptor& target);

/// Character-space structure of X(G): dimension 2n with chi = (chi_1, chi_2).
struct XGSpace {
  std::size_t n = 0;
  CharMap c1, c2;                      // Q^2n -> Q^n
  CharMap pi1_star, pi2_star, pi3_star;  // Q^n -> Q^2n
  CharMap rho_star;                    // Q^3n -> Q^2n
  geom::Cell diag_cell;                // chi_1 = chi_2

  std::size_t dim() const noexcept { return 2 * n; }

  /// Characters vanishing on Ker(pi_i): the image of pi_i^*, as a cell.
  geom::Cell kernel_cell(int i) const;
};

XGSpace xg_space(const GroupDescriptor& G);
XGSpace xg_space(std::size_t n);

/// Exponent-sum level model of X(G): both copies of the generators with
/// G's relators on each copy and [x, x-bar] for every generator x. Its
/// abelianization is G^ab x G^ab, which is all the character level needs.
GroupDescriptor xg_abelian_model(const GroupDescriptor& G);

geom::SphSet preimage(const geom::SphSet& s, const CharMap& L);

}  // namespace xgs::group
