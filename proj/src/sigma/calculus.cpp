#include "xgsigma/sigma/calculus.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "xgsigma/errors.hpp"
#include "xgsigma/geometry/cone.hpp"
#include "xgsigma/group/catalog.hpp"
#include "xgsigma/kernels/parallel.hpp"

namespace xgs::sigma {

using geom::Cell;
using geom::RayPoint;
using geom::SphSet;
using group::Flags;
using group::GroupDescriptor;
using group::XGSpace;

const char* to_string(Exactness e) {
  switch (e) {
    case Exactness::EXACT: return "EXACT";
    case Exactness::LOWER_BOUND_OF_COMPLEMENT: return "LOWER_BOUND_OF_COMPLEMENT";
    case Exactness::CONDITIONAL: return "CONDITIONAL";
  }
  return "EXACT";
}

Exactness parse_exactness(std::string_view s) {
  if (s == "EXACT") return Exactness::EXACT;
  if (s == "LOWER_BOUND_OF_COMPLEMENT") return Exactness::LOWER_BOUND_OF_COMPLEMENT;
  if (s == "CONDITIONAL") return Exactness::CONDITIONAL;
  throw Error(ErrorKind::InvalidArgument, "unknown exactness label '" + std::string(s) + "'");
}

namespace {

const char* flag_name(Tri Flags::*member) {
  for (const auto& f : group::flag_fields())
    if (f.member == member) return f.name;
  return "?";
}

/// Records a hypothesis; false aborts, unknown downgrades to CONDITIONAL.
template <class R>
void assume(R& r, const GroupDescriptor& G, Tri Flags::*member, const std::string& prefix = "") {
  const Tri t = G.flags().*member;
  const std::string name = prefix + flag_name(member);
  r.flags_consumed.emplace_back(name, t);
  if (t == Tri::False)
    throw Error(ErrorKind::HypothesisViolated, G.name() + ": needs " + std::string(flag_name(member)) + " but it is false");
  if (t == Tri::Unknown) {
    r.hypotheses.push_back(name);
    if (r.exactness == Exactness::EXACT) r.exactness = Exactness::CONDITIONAL;
  }
}

Tri Flags::*required_flag(Coeff coeff) {
  switch (coeff) {
    case Coeff::Z: return &Flags::is_fp2;
    case Coeff::HTPY: return &Flags::is_fp;
    case Coeff::FIELD_Q: break;
  }
  throw Error(ErrorKind::InvalidArgument, "X(G)/W degree-2 invariants take coefficients z or htpy");
}

// Points of the kernel cell of pi_i whose retraction lands in base. The
// preimage alone also contains the kernel of the retraction; intersecting
// with the cell leaves only the origin of that kernel, which is not a point.
SphSet piece(const XGSpace& x, int i, const SphSet& base) {
  const group::CharMap& retraction = (i == 2) ? x.c2 : x.c1;
  return geom::set_intersect(group::preimage(base, retraction), x.kernel_cell(i));
}

RatVec block(const RatVec& v, std::size_t begin, std::size_t len) {
  return RatVec(v.begin() + static_cast<std::ptrdiff_t>(begin), v.begin() + static_cast<std::ptrdiff_t>(begin + len));
}

// [x] in s for a nonzero x; x = 0 is handled by callers.
bool in(const RatVec& x, const SphSet& s) { return geom::member(geom::normalize_ray(x), s); }

RatVec minus(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace

SigmaResult xg_sigma1_complement(const SigmaData& S, const geom::Limits&) {
  SigmaResult r;
  r.provenance = tag::kXgSigma1;
  assume(r, S.owner(), &Flags::is_fg);
  const SphSet A = S.require(1, Coeff::Z);
  const XGSpace x = group::xg_space(S.dim());
  SphSet out = geom::set_union(geom::set_union(piece(x, 1, A), piece(x, 2, A)), piece(x, 3, A));
  r.set = geom::simplify(std::move(out));
  return r;
}

bool theoremA_pointwise(const RayPoint& chi, const SigmaData& S) {
  const std::size_t n = S.dim();
  require_dim(chi.dim(), 2 * n, "theoremA_pointwise");
  const SphSet A = S.require(1, Coeff::Z);
  const RatVec v = to_rat(chi.coords());
  const RatVec c1 = block(v, 0, n), c2 = block(v, n, n);
  if (is_zero(c1)) return !in(c2, A);
  if (is_zero(c2)) return !in(c1, A);
  if (c1 == c2) return !in(c1, A);
  return true;
}

SigmaResult xg_mod_w_sigma2_complement(const SigmaData& S, Coeff coeff, const geom::Limits&) {
  SigmaResult r;
  r.provenance = coeff == Coeff::HTPY ? tag::kModWSigma2Htpy : tag::kModWSigma2Z;
  assume(r, S.owner(), required_flag(coeff));
  const SphSet A = S.require(1, Coeff::Z);
  const SphSet B = S.require(2, coeff);
  const XGSpace x = group::xg_space(S.dim());
  const SphSet V1 = piece(x, 1, A), V2 = piece(x, 2, A), V3 = piece(x, 3, A);
  SphSet out = SphSet::empty(x.dim());
  for (int i = 1; i <= 3; ++i) out = geom::set_union(out, piece(x, i, B));
  out = geom::set_union(out, geom::cone_sum(V1, V2));
  out = geom::set_union(out, geom::cone_sum(V2, V3));
  out = geom::set_union(out, geom::cone_sum(V1, V3));
  r.set = geom::simplify(std::move(out));
  return r;
}

bool e1_pointwise(const RayPoint& chi, const SigmaData& S, Coeff coeff) {
  const std::size_t n = S.dim();
  require_dim(chi.dim(), 2 * n, "e1_pointwise");
  const SphSet A = S.require(1, Coeff::Z);
  const SphSet B = S.require(2, coeff);
  const RatVec v = to_rat(chi.coords());
  const RatVec c1 = block(v, 0, n), c2 = block(v, n, n);
  if (is_zero(c1)) return !in(c2, B);
  if (is_zero(c2)) return !in(c1, B);
  if (c1 == c2) return !in(c1, B);
  const bool s1 = !in(c1, A), s2 = !in(c2, A);
  const bool d12 = !in(minus(c1, c2), A), d21 = !in(minus(c2, c1), A);
  return (s1 && s2) || (s1 && d12) || (s2 && d21);
}

bool w_known_fg(const Flags& f) {
  return f.is_fp2 == Tri::True && (f.gprime_ab_fg == Tri::True || f.gprime_fg == Tri::True);
}

SigmaResult xg_sigma2_complement(const SigmaData& S, Coeff coeff, bool w_fg, const geom::Limits& limits) {
  const Tri Flags::*need = required_flag(coeff);
  const SphSet A = S.require(1, Coeff::Z);
  const bool w_path = w_fg || w_known_fg(S.owner().flags());

  if (geom::contains(A, SphSet::full(S.dim()), limits)) {
    // Sigma^1(G) empty: Sigma^2(X(G), Z) is empty, hence so is the
    // homotopical invariant, which lies inside it.
    SigmaResult r;
    r.provenance = tag::kXgSigma2Vanishes;
    assume(r, S.owner(), &Flags::is_fg);
    r.set = SphSet::full(2 * S.dim());
    if (w_path && S.owner().flags().*need != Tri::False) {
      // Both exact routes apply; they must agree.
      SigmaResult b = xg_mod_w_sigma2_complement(S, coeff, limits);
      if (!geom::contains(b.set, r.set, limits))
        throw Error(ErrorKind::InvalidSigmaData, S.owner().name() + ": exact routes for Sigma^2(X(G)) disagree");
    }
    return r;
  }

  SigmaResult r = xg_mod_w_sigma2_complement(S, coeff, limits);
  if (w_path) {
    r.provenance = tag::kXgSigma2WFg;
    if (w_fg) {
      r.flags_consumed.emplace_back("w_fg", Tri::True);
    } else {
      r.flags_consumed.emplace_back("gprime_ab_fg", S.owner().flags().gprime_ab_fg);
      r.flags_consumed.emplace_back("gprime_fg", S.owner().flags().gprime_fg);
    }
    return r;
  }
  r.provenance = tag::kXgSigma2Bound;
  r.exactness = Exactness::LOWER_BOUND_OF_COMPLEMENT;
  r.flags_consumed.emplace_back("gprime_ab_fg", S.owner().flags().gprime_ab_fg);
  return r;
}

CorollaryGParts corollary_g_parts(const SigmaData& S, Coeff coeff, const geom::Limits& limits) {
  CorollaryGParts out;
  const SphSet A = S.require(1, Coeff::Z);
  const XGSpace x = group::xg_space(S.dim());
  for (int i = 1; i <= 3; ++i) out.V[static_cast<std::size_t>(i - 1)] = geom::simplify(piece(x, i, A));
  if (auto B = S.complement(2, coeff)) {
    std::array<SphSet, 3> M;
    for (int i = 1; i <= 3; ++i) M[static_cast<std::size_t>(i - 1)] = geom::simplify(piece(x, i, *B));
    out.M = std::move(M);
  }
  out.V12 = geom::simplify(geom::cone_sum(out.V[0], out.V[1]));
  out.V23 = geom::simplify(geom::cone_sum(out.V[1], out.V[2]));
  out.V13 = geom::simplify(geom::cone_sum(out.V[0], out.V[2]));

  out.sigma1c = xg_sigma1_complement(S, limits).set;
  const SphSet u = geom::set_union(geom::set_union(out.V[0], out.V[1]), out.V[2]);
  out.union_matches = geom::equal(u, out.sigma1c, limits);
  out.pieces_match = true;
  for (int i = 1; i <= 3; ++i) {
    const SphSet cut = geom::set_intersect(out.sigma1c, x.kernel_cell(i));
    out.pieces_match = out.pieces_match && geom::equal(cut, out.V[static_cast<std::size_t>(i - 1)], limits);
  }
  out.pairwise_disjoint = true;
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      const SphSet both = geom::set_intersect(out.V[static_cast<std::size_t>(i - 1)], out.V[static_cast<std::size_t>(j - 1)]);
      const SphSet kernels = geom::set_intersect(SphSet::single(x.kernel_cell(i)), x.kernel_cell(j));
      out.pairwise_disjoint = out.pairwise_disjoint && geom::contains(kernels, both, limits);
    }
  return out;
}

namespace {

void check_product_coeff(int n, Coeff coeff) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "product degree must be >= 0");
  if (coeff == Coeff::HTPY)
    throw Error(ErrorKind::InvalidArgument, "the product formula takes coefficients q or z");
  if (coeff == Coeff::Z && n > 2)
    throw Error(ErrorKind::UnsupportedDimension,
                "the join formula over Z holds only in degrees 1 and 2; use q for degree " + std::to_string(n));
}

SphSet degree_complement(const SigmaData& S, int p, Coeff coeff) {
  return p == 0 ? SphSet::empty(S.dim()) : S.require(p, coeff);
}

}  // namespace

SigmaResult product_sigma_complement(const SigmaData& S1, const SigmaData& S2, int n, Coeff coeff) {
  check_product_coeff(n, coeff);
  SigmaResult r;
  r.provenance = coeff == Coeff::Z ? tag::kProductZ : tag::kProductField;
  assume(r, S1.owner(), &Flags::is_fg, "left.");
  assume(r, S2.owner(), &Flags::is_fg, "right.");
  SphSet out = SphSet::empty(S1.dim() + S2.dim());
  for (int p = 0; p <= n; ++p)
    out = geom::set_union(out, geom::join(degree_complement(S1, p, coeff), degree_complement(S2, n - p, coeff)));
  r.set = geom::simplify(std::move(out));
  return r;
}

SigmaData product_sigma_data(const SigmaData& S1, const SigmaData& S2, int max_degree, Coeff coeff) {
  check_product_coeff(max_degree, coeff);
  const GroupDescriptor& G1 = S1.owner();
  const GroupDescriptor& G2 = S2.owner();
  const int k1 = static_cast<int>(G1.generators().size());
  const int k2 = static_cast<int>(G2.generators().size());

  std::vector<std::string> gens = G1.generators();
  std::vector<std::string> right = G2.generators();
  bool clash = false;
  for (const auto& g : right) clash = clash || std::find(gens.begin(), gens.end(), g) != gens.end();
  if (clash) {
    for (auto& g : gens) g += "_1";
    for (auto& g : right) g += "_2";
  }
  gens.insert(gens.end(), right.begin(), right.end());

  std::vector<group::Word> rels = G1.relators();
  for (group::Word w : G2.relators()) {
    for (int& l : w) l = l > 0 ? l + k1 : l - k1;
    rels.push_back(std::move(w));
  }
  for (int i = 1; i <= k1; ++i)
    for (int j = 1; j <= k2; ++j) rels.push_back(group::commutator(i, k1 + j));

  Flags f;
  auto both = [&](Tri Flags::*m) { f.*m = group::tri_and(G1.flags().*m, G2.flags().*m); };
  both(&Flags::is_fg);
  both(&Flags::is_fp2);
  both(&Flags::is_fp);
  both(&Flags::gprime_ab_fg);
  both(&Flags::gprime_fg);
  both(&Flags::gprime_fp2);
  both(&Flags::gprime_fp);
  f.is_nonabelian_limit_group = Tri::Unknown;

  GroupDescriptor G(G1.name() + " x " + G2.name(), std::move(gens), std::move(rels), f);
  IntMatrix P(G.generators().size(), S1.dim() + S2.dim());
  for (std::size_t g = 0; g < static_cast<std::size_t>(k1); ++g)
    for (std::size_t c = 0; c < S1.dim(); ++c) P(g, c) = G1.ab_projection()(g, c);
  for (std::size_t g = 0; g < static_cast<std::size_t>(k2); ++g)
    for (std::size_t c = 0; c < S2.dim(); ++c) P(static_cast<std::size_t>(k1) + g, S1.dim() + c) = G2.ab_projection()(g, c);
  G.set_ab_projection(std::move(P));

  SigmaData out(std::move(G));
  for (int d = 1; d <= max_degree; ++d) out.set_complement(d, coeff, product_sigma_complement(S1, S2, d, coeff).set);
  return out;
}

PatternReport f2s_pattern_check(int s, int n, Coeff coeff, std::uint64_t seed, int per_subset) {
  if (n < 1 || n > s) throw Error(ErrorKind::InvalidArgument, "pattern check needs 1 <= n <= s");
  check_product_coeff(n, coeff);
  PatternReport rep;
  rep.s = s;
  rep.n = n;
  rep.coeff = coeff;

  const SigmaData f2 = group::catalog_lookup("free(2)");
  SigmaData acc = f2;
  for (int i = 1; i < s; ++i) acc = product_sigma_data(acc, f2, n, coeff);
  const SphSet below = degree_complement(acc, n - 1, coeff);
  const SphSet at = acc.require(n, coeff);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  const std::size_t dim = 2 * static_cast<std::size_t>(s);
  std::vector<RayPoint> rays;
  // every n-subset of the s blocks, as a bitmask
  for (unsigned mask = 0; mask < (1u << s); ++mask) {
    if (std::popcount(mask) != n) continue;
    for (int t = 0; t < per_subset; ++t) {
      IntVec v(dim, BigInt(0));
      for (int b = 0; b < s; ++b) {
        if (!(mask & (1u << b))) continue;
        while (sgn(v[2 * b]) == 0 && sgn(v[2 * b + 1]) == 0) {
          v[2 * b] = entry(rng);
          v[2 * b + 1] = entry(rng);
        }
      }
      rays.push_back(geom::normalize_ray(v));
    }
  }
  const auto in_below = kernels::member_mask(rays, below);
  const auto in_at = kernels::member_mask(rays, at);
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (in_below[i] || !in_at[i]) rep.failures.push_back(rays[i]);
  rep.samples = rays.size();
  return rep;
}

namespace {

std::vector<geom::HalfSpace> subspace_equations(const std::vector<RatVec>& U, std::size_t dim) {
  std::vector<geom::HalfSpace> out;
  for (auto& row : orthogonal_complement(U, dim))
    out.push_back(geom::normalized(geom::HalfSpace{std::move(row), geom::Relation::EQ}));
  return out;
}

}  // namespace

bool annihilator_avoids(const SphSet& s, const std::vector<RatVec>& U) {
  const auto eqs = subspace_equations(U, s.dim);
  std::vector<geom::FeasibilitySystem> systems;
  for (const auto& c : s.cells) {
    geom::FeasibilitySystem sys{s.dim, c.constraints};
    sys.constraints.insert(sys.constraints.end(), eqs.begin(), eqs.end());
    systems.push_back(std::move(sys));
  }
  const auto mask = kernels::feasible_mask(systems);
  return std::none_of(mask.begin(), mask.end(), [](char m) { return m != 0; });
}

Verdict fg_subgroup_test(const SigmaData& S, int n, const std::vector<RatVec>& U, Coeff coeff) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "finiteness degree must be >= 1");
  for (const auto& u : U) require_dim(u.size(), S.dim(), "fg_subgroup_test");
  Verdict v;
  v.provenance = tag::kFgTest;
  if (n == 1) assume(v, S.owner(), &Flags::is_fg);
  else if (coeff == Coeff::HTPY) assume(v, S.owner(), &Flags::is_fp);
  else assume(v, S.owner(), &Flags::is_fp2);
  if (n > 2) {
    // No flag records FP_n for n >= 3.
    v.hypotheses.push_back("is_fp" + std::to_string(n));
    v.exactness = Exactness::CONDITIONAL;
  }
  v.value = annihilator_avoids(S.require(n, coeff), U);
  return v;
}

std::vector<RatVec> pullback_subspace(const std::vector<RatVec>& U, const RatMatrix& L) {
  const auto K = orthogonal_complement(U, L.rows());
  RatMatrix KL(K.size(), L.cols());
  for (std::size_t i = 0; i < K.size(); ++i)
    for (std::size_t j = 0; j < L.cols(); ++j) {
      Rat acc = 0;
      for (std::size_t k = 0; k < L.rows(); ++k) acc += Rat(K[i][k]) * L(k, j);
      KL(i, j) = acc;
    }
  std::vector<RatVec> out;
  for (const auto& b : nullspace(KL)) out.push_back(to_rat(b));
  return out;
}

FgReport corollary_b2_report(const SigmaData& S, const std::vector<RatVec>& U, const geom::Limits& limits) {
  const XGSpace x = group::xg_space(S.dim());
  for (const auto& u : U) require_dim(u.size(), x.dim(), "corollary_b2_report");
  FgReport rep;
  const group::CharMap* pis[3] = {&x.pi1_star, &x.pi2_star, &x.pi3_star};
  rep.n_fg = true;
  for (std::size_t i = 0; i < 3; ++i) {
    rep.projected_U[i] = pullback_subspace(U, pis[i]->matrix);
    Verdict v = fg_subgroup_test(S, 1, rep.projected_U[i]);
    rep.projection_fg[i] = v.value;
    rep.n_fg = rep.n_fg && v.value;
    if (i == 0) {
      rep.exactness = v.exactness;
      rep.hypotheses = v.hypotheses;
    }
  }
  rep.direct_fg = annihilator_avoids(xg_sigma1_complement(S, limits).set, U);
  rep.paths_agree = rep.direct_fg == rep.n_fg;
  return rep;
}

NuInvariants nu_invariants(const SigmaData& S, const geom::Limits& limits) {
  NuInvariants out;
  SigmaResult s1 = xg_sigma1_complement(S, limits);
  s1.provenance = tag::kNuSigma1;
  out.sigma1c.result = std::move(s1);
  auto degree2 = [&](Coeff coeff, const char* provenance, NuPart& part) {
    try {
      SigmaResult r = xg_mod_w_sigma2_complement(S, coeff, limits);
      r.provenance = provenance;
      part.result = std::move(r);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MissingSigma && e.kind() != ErrorKind::HypothesisViolated) throw;
      part.unavailable = e.what();
    }
  };
  degree2(Coeff::Z, tag::kNuSigma2Z, out.sigma2c_z);
  degree2(Coeff::HTPY, tag::kNuSigma2Htpy, out.sigma2c_htpy);
  return out;
}

TensorReport tensor_square_report(const GroupDescriptor& G) {
  const Flags& f = G.flags();
  TensorReport r;
  if (f.is_fg == Tri::True && f.gprime_fp == Tri::True) r.tensor_fp = Tri::True;
  else r.notes.push_back("tensor_fp: no conclusion, needs is_fg and gprime_fp true");
  if (f.is_fg == Tri::True && (f.gprime_fp2 == Tri::True || f.gprime_fp == Tri::True)) r.tensor_fp2 = Tri::True;
  else r.notes.push_back("tensor_fp2: no conclusion, needs is_fg and gprime_fp2 true");

  // X(G)' has the finiteness property of G' (f.g. needs G f.g.; FP_2 needs G
  // of type FP_2; finite presentability needs G finitely presented).
  if (f.is_fg == Tri::True) r.xg_commutator_fg = f.gprime_fg;
  if (f.is_fp2 == Tri::True) r.xg_commutator_fp2 = f.gprime_fp2;
  if (f.is_fp == Tri::True) r.xg_commutator_fp = f.gprime_fp;
  if (w_known_fg(f)) r.w_fg = Tri::True;
  else r.notes.push_back("w_fg: no conclusion, needs is_fp2 and G'/G'' finitely generated");
  return r;
}

}  // namespace xgs::sigma
