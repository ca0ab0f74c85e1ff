#pragma once

#include <cstddef>
#include <vector>

#include "xgsigma/geometry/sphset.hpp"
#include "xgsigma/matrix.hpp"

namespace xgs::geom {

/// Generator form of a closed cone: nonnegative span of rays plus the linear
/// span of the lineality basis.
struct ConeV {
  std::size_t dim = 0;
  std::vector<IntVec> rays;
  std::vector<IntVec> lineality;

  /// Membership of a point in the generated cone (origin included).
  bool generates(std::span<const BigInt> x) const;
};

/// Double description: generators of the closed cone {x : constraints}.
ConeV h_to_v(const Cell& c);

/// Constraints whose closed cone equals the generated cone (via the dual cone).
Cell v_to_h(const ConeV& v);

/// Minkowski sum of the cones over a and b; the cone over the empty set is {0}.
SphSet cone_sum(const SphSet& a, const SphSet& b);

/// Generators embedded into dim_total coordinates starting at offset.
ConeV embed(const ConeV& v, std::size_t dim_total, std::size_t offset);

/// The join of a (dim m) and b (dim n) inside dim m+n.
SphSet join(const SphSet& a, const SphSet& b);

/// {x : Lx in cone(cell)} for some cell, normals pulled back by L (b x a).
SphSet preimage(const SphSet& s, const RatMatrix& L);

}  // namespace xgs::geom
