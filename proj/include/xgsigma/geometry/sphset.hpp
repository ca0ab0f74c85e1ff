#pragma once

#include <cstddef>
#include <vector>

#include "xgsigma/geometry/feasibility.hpp"
#include "xgsigma/rational.hpp"

namespace xgs::geom {

/// A point [chi] of a character sphere, stored as a primitive integer vector.
class RayPoint {
 public:
  RayPoint() = default;

  std::size_t dim() const noexcept { return coords_.size(); }
  const IntVec& coords() const noexcept { return coords_; }

  auto operator<=>(const RayPoint&) const = default;

 private:
  friend RayPoint normalize_ray(std::span<const BigInt> v);
  explicit RayPoint(IntVec c) : coords_(std::move(c)) {}
  IntVec coords_;
};

/// Divides by the gcd of the entries; throws ZeroVector on 0.
RayPoint normalize_ray(std::span<const BigInt> v);
RayPoint normalize_ray(std::span<const Rat> v);
RayPoint ray(std::initializer_list<long> v);

/// Nonzero points of a closed polyhedral cone, given by GE/EQ constraints.
/// No constraints means the whole sphere.
struct Cell {
  std::size_t dim = 0;
  std::vector<HalfSpace> constraints;

  bool contains_point(std::span<const BigInt> x) const;

  auto operator<=>(const Cell&) const = default;
};

Cell make_cell(std::size_t dim, std::vector<HalfSpace> constraints);
HalfSpace ge(std::initializer_list<long> normal);
HalfSpace eq(std::initializer_list<long> normal);

/// Finite union of cells; no cells means the empty set.
struct SphSet {
  std::size_t dim = 0;
  std::vector<Cell> cells;

  static SphSet empty(std::size_t dim) { return SphSet{dim, {}}; }
  static SphSet full(std::size_t dim) { return SphSet{dim, {Cell{dim, {}}}}; }
  static SphSet single(Cell c) {
    std::size_t d = c.dim;
    return SphSet{d, {std::move(c)}};
  }

  bool is_syntactically_empty() const noexcept { return cells.empty(); }

  auto operator<=>(const SphSet&) const = default;
};

/// Cap on the number of live regions in a containment query.
struct Limits {
  std::size_t branch_cap = 1'000'000;
};

bool cell_feasible(const Cell& c);

/// Normalized primitive constraints, sorted and deduplicated; infeasible
/// cells dropped, duplicate cells removed, cells sorted.
Cell canonical(Cell c);
SphSet canonical(SphSet s);

/// canonical() plus removal of cells contained in another single cell.
SphSet simplify(SphSet s);

bool member(const RayPoint& p, const SphSet& s);

SphSet set_union(const SphSet& a, const SphSet& b);
SphSet set_intersect(const SphSet& a, const SphSet& b);
SphSet set_intersect(const SphSet& s, const Cell& c);

bool cell_subset(const Cell& inner, const Cell& outer);

/// True iff every point of b lies in a (exact region splitting).
bool contains(const SphSet& a, const SphSet& b, const Limits& limits = {});
bool equal(const SphSet& a, const SphSet& b, const Limits& limits = {});

/// Constraint equating two coordinate blocks etc. are built by callers; this
/// helper returns {x_i = 0 for i in [begin, end)}.
std::vector<HalfSpace> zero_block(std::size_t dim, std::size_t begin, std::size_t end);

/// Reorders coordinates: out[i] = x[perm[i]].
SphSet permute(const SphSet& s, const std::vector<std::size_t>& perm);

}  // namespace xgs::geom
