#pragma once

// Datasets with ab_rank <= 3 shared by the unit tests and the acceptance
// suite. The synthetic entries are test data for the engine, not claims
// about particular groups.

#include <random>
#include <string>
#include <vector>

#include "support/test_support.hpp"
#include "xgsigma/group/catalog.hpp"
#include "xgsigma/sigma/calculus.hpp"

namespace xgs::testing {

using group::Coeff;
using group::SigmaData;

inline geom::SphSet cells(std::size_t dim, std::vector<std::vector<geom::HalfSpace>> cs) {
  geom::SphSet s{dim, {}};
  for (auto& c : cs) s.cells.push_back(geom::Cell{dim, std::move(c)});
  return s;
}

inline group::Flags finitely_presented() {
  group::Flags f;
  f.is_fg = f.is_fp2 = f.is_fp = group::Tri::True;
  return f;
}

inline SigmaData synthetic(const std::string& name, std::size_t dim, const geom::SphSet& s1,
                           const geom::SphSet& s2z, const geom::SphSet& s2h) {
  SigmaData d(group::GroupDescriptor(name, group::default_generator_names(dim), {}, finitely_presented()));
  d.set_complement(1, Coeff::Z, s1);
  d.set_complement(2, Coeff::Z, s2z);
  d.set_complement(2, Coeff::HTPY, s2h);
  d.validate();
  return d;
}

/// Nested random complements: s1 within s2z within s2h.
inline SigmaData random_dataset(std::uint64_t seed, std::size_t dim) {
  std::mt19937_64 rng(seed);
  geom::SphSet s1 = random_set(rng, dim, 2, 2);
  geom::SphSet s2z = geom::set_union(s1, random_set(rng, dim, 1, 2));
  geom::SphSet s2h = geom::set_union(s2z, random_set(rng, dim, 1, 3));
  return synthetic("random_" + std::to_string(seed) + "_dim" + std::to_string(dim), dim, s1, s2z, s2h);
}

inline SigmaData free_times_z() {
  SigmaData p = sigma::product_sigma_data(group::catalog_lookup("free(2)"), group::catalog_lookup("free_abelian(1)"),
                                          2, Coeff::Z);
  // The product formula gives no homotopical data; the homological sets
  // stand in for it.
  p.set_complement(2, Coeff::HTPY, *p.stored(2, Coeff::Z));
  p.validate();
  return p;
}

inline std::vector<SigmaData> corpus() {
  using geom::eq;
  using geom::ge;
  std::vector<SigmaData> out;
  out.push_back(group::catalog_lookup("free(2)"));
  out.push_back(group::catalog_lookup("free(3)"));
  out.push_back(group::catalog_lookup("free_abelian(1)"));
  out.push_back(group::catalog_lookup("free_abelian(2)"));
  out.push_back(group::catalog_lookup("free_abelian(3)"));
  out.push_back(free_times_z());

  const auto half_line = cells(1, {{ge({-1})}});
  out.push_back(synthetic("half_line", 1, half_line, half_line, half_line));

  const auto quadrant = cells(2, {{ge({-1, 0}), ge({0, -1})}});
  const auto two_halves = cells(2, {{ge({-1, 0})}, {ge({0, -1})}});
  auto with_diag = two_halves;
  with_diag.cells.push_back(geom::Cell{2, {eq({1, -1})}});
  out.push_back(synthetic("third_quadrant", 2, quadrant, two_halves, with_diag));

  const auto multi1 = cells(3, {{ge({-1, 0, 0}), ge({0, -1, 0})}, {eq({0, 0, 1}), ge({-1, -1, 0})}});
  auto multi2 = multi1;
  multi2.cells.push_back(geom::Cell{3, {ge({-1, 1, 0}), ge({0, 0, -1})}});
  auto multi3 = multi2;
  multi3.cells.push_back(geom::Cell{3, {eq({0, 1, -1})}});
  out.push_back(synthetic("multi_cell_dim3", 3, multi1, multi2, multi3));

  out.push_back(random_dataset(101, 2));
  out.push_back(random_dataset(202, 3));
  return out;
}

}  // namespace xgs::testing
