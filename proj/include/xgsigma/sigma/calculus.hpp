#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xgsigma/geometry/sphset.hpp"
#include "xgsigma/group/charmap.hpp"
#include "xgsigma/group/sigma_data.hpp"

namespace xgs::sigma {

using group::Coeff;
using group::SigmaData;
using group::Tri;

enum class Exactness { EXACT, LOWER_BOUND_OF_COMPLEMENT, CONDITIONAL };

const char* to_string(Exactness e);
Exactness parse_exactness(std::string_view s);

/// Rule names recorded as provenance in results.
namespace tag {
inline constexpr const char* kXgSigma1 = "xg-sigma1-case-split";
inline constexpr const char* kModWSigma2Z = "xgmodw-sigma2-homological-case-split";
inline constexpr const char* kModWSigma2Htpy = "xgmodw-sigma2-homotopical-case-split";
inline constexpr const char* kXgSigma2WFg = "xg-sigma2-equals-xgmodw-when-w-finitely-generated";
inline constexpr const char* kXgSigma2Vanishes = "xg-sigma2-vanishes-when-sigma1-empty";
inline constexpr const char* kXgSigma2Bound = "xg-sigma2-decomposition-lower-bound";
inline constexpr const char* kProductField = "direct-product-join-formula-field";
inline constexpr const char* kProductZ = "direct-product-join-formula-z-low-degree";
inline constexpr const char* kFgTest = "finite-generation-by-annihilator-test";
inline constexpr const char* kNuSigma1 = "nu-sigma1-equals-xgmodw-sigma1";
inline constexpr const char* kNuSigma2Z = "nu-sigma2-z-equals-xgmodw-sigma2-z";
inline constexpr const char* kNuSigma2Htpy = "nu-sigma2-equals-xgmodw-sigma2";
}  // namespace tag

/// A complement together with how much is claimed about it.
struct SigmaResult {
  geom::SphSet set;
  Exactness exactness = Exactness::EXACT;
  std::vector<std::string> hypotheses;  // flags assumed but not known to hold
  std::string provenance;
  std::vector<std::pair<std::string, Tri>> flags_consumed;
};

/// Sigma^1(X(G))^c, also Sigma^1(X(G)/W)^c and Sigma^1(nu(G))^c:
///   {chi_1 = 0, [chi_2] in Sigma^1(G)^c} u {chi_2 = 0, [chi_1] in ...}
///   u {chi_1 = chi_2, [chi_1] in ...}.
/// Needs is_fg (false: HypothesisViolated; unknown: CONDITIONAL).
SigmaResult xg_sigma1_complement(const SigmaData& S, const geom::Limits& limits = {});

/// Literal case evaluation: true iff chi lies in Sigma^1(X(G)).
bool theoremA_pointwise(const geom::RayPoint& chi, const SigmaData& S);

/// Sigma^2(X(G)/W, coeff)^c as the closed union
/// M1 u M2 u M3 u (V1+V2) u (V2+V3) u (V1+V3). coeff is Z or HTPY.
SigmaResult xg_mod_w_sigma2_complement(const SigmaData& S, Coeff coeff, const geom::Limits& limits = {});

/// Literal case evaluation: true iff chi lies in Sigma^2(X(G)/W, coeff).
bool e1_pointwise(const geom::RayPoint& chi, const SigmaData& S, Coeff coeff);

/// Sigma^2(X(G), coeff)^c. Exact when W is finitely generated (from flags or
/// w_fg) or when Sigma^1(G) is empty; otherwise the X(G)/W set is returned as
/// a lower bound of the complement.
SigmaResult xg_sigma2_complement(const SigmaData& S, Coeff coeff, bool w_fg = false,
                                 const geom::Limits& limits = {});

struct CorollaryGParts {
  std::array<geom::SphSet, 3> V;
  std::optional<std::array<geom::SphSet, 3>> M;  // absent without degree-2 data
  geom::SphSet V12, V23, V13;
  geom::SphSet sigma1c;
  bool union_matches = false;      // V1 u V2 u V3 = Sigma^1(X(G))^c
  bool pieces_match = false;       // V_i = Sigma^1(X(G))^c n kernel cell i
  bool pairwise_disjoint = false;  // V_i n V_j inside kernel_i n kernel_j
};

CorollaryGParts corollary_g_parts(const SigmaData& S, Coeff coeff, const geom::Limits& limits = {});

/// Union over p of join(Sigma^p(G1)^c, Sigma^{n-p}(G2)^c); Sigma^0 complements
/// are empty. coeff is FIELD_Q, or Z for n <= 2 (else UnsupportedDimension).
SigmaResult product_sigma_complement(const SigmaData& S1, const SigmaData& S2, int n, Coeff coeff);

/// SigmaData of G1 x G2 holding complements of degrees 1..max_degree.
SigmaData product_sigma_data(const SigmaData& S1, const SigmaData& S2, int max_degree, Coeff coeff);

struct PatternReport {
  int s = 0, n = 0;
  Coeff coeff = Coeff::Z;
  std::size_t samples = 0;
  std::vector<geom::RayPoint> failures;
  bool pass() const { return samples > 0 && failures.empty(); }
};

/// Characters of F2^s nonzero on exactly n blocks must lie in Sigma^{n-1}
/// and outside Sigma^n. Sets come from folding the product formula.
PatternReport f2s_pattern_check(int s, int n, Coeff coeff, std::uint64_t seed = 1, int per_subset = 4);

struct Verdict {
  bool value = false;
  Exactness exactness = Exactness::EXACT;
  std::vector<std::string> hypotheses;
  std::string provenance;
  std::vector<std::pair<std::string, Tri>> flags_consumed;
};

/// Does the subspace spanned by U meet the cone over s only in 0?
bool annihilator_avoids(const geom::SphSet& s, const std::vector<RatVec>& U);

/// N above G' is of type FP_n (n = 1: finitely generated) iff the
/// characters vanishing on N, spanned by U, avoid Sigma^n(G)^c.
Verdict fg_subgroup_test(const SigmaData& S, int n, const std::vector<RatVec>& U, Coeff coeff = Coeff::Z);

struct FgReport {
  std::array<bool, 3> projection_fg{};  // pi_1(N), pi_2(N), pi_3(N)
  std::array<std::vector<RatVec>, 3> projected_U;
  bool n_fg = false;       // conjunction
  bool direct_fg = false;  // U against Sigma^1(X(G))^c
  bool paths_agree = false;
  Exactness exactness = Exactness::EXACT;
  std::vector<std::string> hypotheses;
};

/// U spans the characters of X(G) (dim 2n) vanishing on N >= X(G)'.
FgReport corollary_b2_report(const SigmaData& S, const std::vector<RatVec>& U, const geom::Limits& limits = {});

/// {chi in Q^n : L chi in span U}, as a basis.
std::vector<RatVec> pullback_subspace(const std::vector<RatVec>& U, const RatMatrix& L);

struct NuPart {
  std::optional<SigmaResult> result;
  std::string unavailable;  // reason when result is absent
};

struct NuInvariants {
  NuPart sigma1c, sigma2c_z, sigma2c_htpy;
};

NuInvariants nu_invariants(const SigmaData& S, const geom::Limits& limits = {});

struct TensorReport {
  Tri tensor_fp = Tri::Unknown;
  Tri tensor_fp2 = Tri::Unknown;
  Tri xg_commutator_fg = Tri::Unknown;
  Tri xg_commutator_fp2 = Tri::Unknown;
  Tri xg_commutator_fp = Tri::Unknown;
  Tri w_fg = Tri::Unknown;
  std::vector<std::string> notes;
};

TensorReport tensor_square_report(const group::GroupDescriptor& G);

/// W(G) is known to be finitely generated: FP_2 with G'/G'' (or G') f.g.
bool w_known_fg(const group::Flags& f);

}  // namespace xgs::sigma
