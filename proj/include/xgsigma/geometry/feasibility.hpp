#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "xgsigma/rational.hpp"

namespace xgs::geom {

enum class Relation { GE, EQ, GT };

/// <normal, x> relation 0.
struct HalfSpace {
  IntVec normal;
  Relation rel = Relation::GE;

  bool holds_at(std::span<const BigInt> x) const;
  bool holds_at(std::span<const Rat> x) const;

  auto operator<=>(const HalfSpace&) const = default;
};

/// Primitive normal; EQ normals additionally get a positive leading entry.
HalfSpace normalized(HalfSpace h);

/// The negation of a GE/GT half-space as a single strict/closed half-space.
HalfSpace negate_closed(const HalfSpace& h);

/// Asks for a NONZERO real point satisfying every constraint.
struct FeasibilitySystem {
  std::size_t dim = 0;
  std::vector<HalfSpace> constraints;
};

/// A nonzero rational solution, or nullopt when none exists.
/// Strict rows make any solution nonzero, so one elimination suffices;
/// otherwise each of the 2*dim anchors x_i >= 1 / -x_i >= 1 is tried.
std::optional<RatVec> solve_nonzero(const FeasibilitySystem& sys);

bool feasible(const FeasibilitySystem& sys);

/// Affine row a.x + c (rel) 0 used by the elimination engine.
struct AffineRow {
  IntVec a;
  BigInt c;
  Relation rel = Relation::GE;
};

/// Decides the affine system by Fourier-Motzkin elimination with strictness
/// tracking and returns a witness by back-substitution.
std::optional<RatVec> solve_affine(std::size_t dim, std::vector<AffineRow> rows);

/// Drops rows implied by a nonnegative combination of two other rows
/// (including strictness). Exposed for testing.
std::vector<AffineRow> drop_pairwise_redundant(std::vector<AffineRow> rows);

}  // namespace xgs::geom
