#pragma once

// Data-parallel kernels. Each OpenMP kernel has a serial reference twin with
// the same signature; results are written by index so output order never
// depends on scheduling.

#include <vector>

#include "xgsigma/geometry/feasibility.hpp"
#include "xgsigma/geometry/sphset.hpp"

namespace xgs::kernels {

std::vector<char> feasible_mask(const std::vector<geom::FeasibilitySystem>& systems);
std::vector<char> feasible_mask_serial(const std::vector<geom::FeasibilitySystem>& systems);

std::vector<char> member_mask(const std::vector<geom::RayPoint>& rays, const geom::SphSet& s);
std::vector<char> member_mask_serial(const std::vector<geom::RayPoint>& rays, const geom::SphSet& s);

/// For each cell of b: is it covered by a?
std::vector<char> covered_mask(const geom::SphSet& a, const geom::SphSet& b, const geom::Limits& limits);
std::vector<char> covered_mask_serial(const geom::SphSet& a, const geom::SphSet& b,
                                      const geom::Limits& limits);

/// Region-splitting test for a single cell; shared by both variants.
bool cell_covered(const geom::SphSet& a, const geom::Cell& c, const geom::Limits& limits);

int max_threads();

}  // namespace xgs::kernels
