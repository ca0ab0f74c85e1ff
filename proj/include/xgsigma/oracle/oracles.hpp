#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "xgsigma/geometry/sphset.hpp"
#include "xgsigma/group/group.hpp"
#include "xgsigma/group/sigma_data.hpp"

namespace xgs::oracle {

/// A reduced word in F_k whose endpoint has chi >= 0 while the prefix of
/// length dip_prefix_index has chi < 0. In the tree Cayley graph this
/// separates the endpoint from 1 inside the subgraph chi >= 0.
struct TreeWitness {
  group::Word word;
  Rat chi_value;
  std::size_t dip_prefix_index = 0;
};

/// Shortlex-first witness among reduced words of length <= radius; letters
/// are ordered a, a^-1, b, b^-1, ...  Requires k >= 2 and chi != 0.
std::optional<TreeWitness> free_tree_sigma1_witness(int k, const RatVec& chi, int radius);

/// Re-checks reducedness, the dip and the endpoint from scratch.
bool verify_tree_witness(const TreeWitness& w, int k, const RatVec& chi);

/// Induced subgraph of Z^n on {chi >= 0, |v|_inf <= radius}: does every
/// vertex with |v|_inf <= radius - 1 connect to 0?
bool lattice_probe(std::size_t n, const RatVec& chi, int radius);

struct Sampler {
  enum class Kind { Grid, Random };
  Kind kind = Kind::Random;
  long bound = 4;           // grid: integer box [-bound, bound]; random: entry range
  std::size_t count = 1000;
  std::uint64_t seed = 1;

  static Sampler grid(long bound, std::size_t count) { return {Kind::Grid, bound, count, 0}; }
  static Sampler random(std::size_t count, std::uint64_t seed, long bound = 12) {
    return {Kind::Random, bound, count, seed};
  }
};

/// Grid: primitive directions of the box, sorted, thinned evenly to count.
/// Random: seeded, with a share of sparse vectors (zero coordinates).
std::vector<geom::RayPoint> sample_rays(std::size_t dim, const Sampler& s);

/// Rays of S(X(G)) on the loci where the case analysis changes: chi_1 = 0,
/// chi_2 = 0, chi_1 = chi_2, and chi_1, chi_2 or chi_1 - chi_2 on a facet of
/// a stored complement of G.
std::vector<geom::RayPoint> xg_boundary_rays(const group::SigmaData& S, std::size_t per_family, std::uint64_t seed);

struct CrossCheckReport {
  std::size_t samples = 0;
  std::vector<geom::RayPoint> mismatches;  // sorted
  std::uint64_t seed = 0;
  bool pass() const { return mismatches.empty(); }
};

/// pointwise(chi) is "chi lies in Sigma"; constructed is the complement.
/// A mismatch is a ray where pointwise(chi) == member(chi, constructed).
using Predicate = std::function<bool(const geom::RayPoint&)>;

CrossCheckReport cross_check(const geom::SphSet& constructed, const Predicate& pointwise,
                             const std::vector<geom::RayPoint>& rays, std::uint64_t seed = 0);
CrossCheckReport cross_check_serial(const geom::SphSet& constructed, const Predicate& pointwise,
                                    const std::vector<geom::RayPoint>& rays, std::uint64_t seed = 0);

}  // namespace xgs::oracle
