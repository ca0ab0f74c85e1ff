#include "xgsigma/oracle/oracles.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <random>

#include "xgsigma/errors.hpp"
#include "xgsigma/geometry/cone.hpp"
#include "xgsigma/kernels/parallel.hpp"

namespace xgs::oracle {

using geom::RayPoint;

namespace {

Rat letter_value(int letter, const RatVec& chi) {
  const Rat& v = chi[static_cast<std::size_t>(std::abs(letter)) - 1];
  return letter > 0 ? v : Rat(-v);
}

}  // namespace

std::optional<TreeWitness> free_tree_sigma1_witness(int k, const RatVec& chi, int radius) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "tree witnesses need rank >= 2");
  require_dim(chi.size(), static_cast<std::size_t>(k), "free_tree_sigma1_witness");
  if (is_zero(chi)) throw Error(ErrorKind::ZeroVector, "character is zero");

  std::vector<int> letters;
  for (int g = 1; g <= k; ++g) {
    letters.push_back(g);
    letters.push_back(-g);
  }
  struct Node {
    group::Word word;
    Rat value;
    bool dipped;
    std::size_t dip;
  };
  // Level-by-level expansion in letter order enumerates reduced words in
  // shortlex order.
  std::vector<Node> level{Node{{}, Rat(0), false, 0}};
  for (int len = 1; len <= radius; ++len) {
    std::vector<Node> next;
    for (const Node& n : level) {
      for (int l : letters) {
        if (!n.word.empty() && n.word.back() == -l) continue;
        Node c{n.word, n.value + letter_value(l, chi), n.dipped, n.dip};
        c.word.push_back(l);
        if (c.dipped && sgn(c.value) >= 0) return TreeWitness{c.word, c.value, c.dip};
        if (!c.dipped && sgn(c.value) < 0) {
          c.dipped = true;
          c.dip = c.word.size();
        }
        next.push_back(std::move(c));
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

bool verify_tree_witness(const TreeWitness& w, int k, const RatVec& chi) {
  if (chi.size() != static_cast<std::size_t>(k) || w.word.empty()) return false;
  for (std::size_t i = 0; i < w.word.size(); ++i) {
    const int l = w.word[i];
    if (l == 0 || std::abs(l) > k) return false;
    if (i > 0 && w.word[i - 1] == -l) return false;
  }
  if (w.dip_prefix_index == 0 || w.dip_prefix_index >= w.word.size()) return false;
  Rat v = 0, dip_value = 0;
  for (std::size_t i = 0; i < w.word.size(); ++i) {
    v += letter_value(w.word[i], chi);
    if (i + 1 == w.dip_prefix_index) dip_value = v;
  }
  return sgn(dip_value) < 0 && sgn(v) >= 0 && v == w.chi_value;
}

bool lattice_probe(std::size_t n, const RatVec& chi, int radius) {
  require_dim(chi.size(), n, "lattice_probe");
  if (is_zero(chi)) throw Error(ErrorKind::ZeroVector, "character is zero");
  if (radius < 1) return true;
  const long side = 2L * radius + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(side);

  auto coords = [&](std::size_t idx) {
    std::vector<long> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<long>(idx % static_cast<std::size_t>(side)) - radius;
      idx /= static_cast<std::size_t>(side);
    }
    return v;
  };
  auto value = [&](const std::vector<long>& v) {
    Rat s = 0;
    for (std::size_t i = 0; i < n; ++i) s += chi[i] * v[i];
    return s;
  };
  std::vector<char> inside(total), seen(total, 0);
  for (std::size_t i = 0; i < total; ++i) inside[i] = sgn(value(coords(i))) >= 0;

  std::size_t origin = 0, stride = 1;
  for (std::size_t i = 0; i < n; ++i, stride *= static_cast<std::size_t>(side))
    origin += static_cast<std::size_t>(radius) * stride;
  std::deque<std::size_t> queue{origin};
  seen[origin] = 1;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    const auto v = coords(cur);
    std::size_t st = 1;
    for (std::size_t i = 0; i < n; ++i, st *= static_cast<std::size_t>(side)) {
      if (v[i] < radius && inside[cur + st] && !seen[cur + st]) {
        seen[cur + st] = 1;
        queue.push_back(cur + st);
      }
      if (v[i] > -radius && inside[cur - st] && !seen[cur - st]) {
        seen[cur - st] = 1;
        queue.push_back(cur - st);
      }
    }
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (!inside[i] || seen[i]) continue;
    const auto v = coords(i);
    const bool interior = std::all_of(v.begin(), v.end(), [&](long c) { return std::abs(c) <= radius - 1; });
    if (interior) return false;
  }
  return true;
}

std::vector<RayPoint> sample_rays(std::size_t dim, const Sampler& s) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "sampling needs dim >= 1");
  std::vector<RayPoint> out;
  if (s.kind == Sampler::Kind::Grid) {
    std::vector<long> cur(dim, -s.bound);
    std::vector<RayPoint> all;
    while (true) {
      if (std::any_of(cur.begin(), cur.end(), [](long c) { return c != 0; })) {
        IntVec v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = cur[i];
        all.push_back(geom::normalize_ray(v));
      }
      std::size_t i = 0;
      while (i < dim && cur[i] == s.bound) cur[i++] = -s.bound;
      if (i == dim) break;
      ++cur[i];
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all.size() <= s.count) return all;
    for (std::size_t i = 0; i < s.count; ++i) out.push_back(all[i * all.size() / s.count]);
    return out;
  }
  std::mt19937_64 rng(s.seed);
  std::uniform_int_distribution<long> entry(-s.bound, s.bound);
  std::uniform_int_distribution<int> coin(0, 3);
  while (out.size() < s.count) {
    IntVec v(dim, BigInt(0));
    const bool sparse = coin(rng) == 0;
    for (auto& c : v) c = (sparse && coin(rng) < 2) ? 0 : entry(rng);
    if (is_zero(v)) continue;
    out.push_back(geom::normalize_ray(v));
  }
  return out;
}

namespace {

// Random points on the facets of every cell of s (and the generators of
// those facets).
std::vector<IntVec> facet_points(const geom::SphSet& s, std::mt19937_64& rng, std::size_t per_facet) {
  std::uniform_int_distribution<int> pos(0, 3), any(-2, 2);
  std::vector<IntVec> out;
  for (const auto& cell : s.cells) {
    for (const auto& h : cell.constraints) {
      geom::Cell facet = cell;
      facet.constraints.push_back(geom::HalfSpace{h.normal, geom::Relation::EQ});
      if (!geom::cell_feasible(facet)) continue;
      const geom::ConeV v = geom::h_to_v(facet);
      for (const auto& r : v.rays) out.push_back(r);
      for (const auto& l : v.lineality) out.push_back(l);
      for (std::size_t t = 0; t < per_facet; ++t) {
        IntVec p(s.dim, BigInt(0));
        for (const auto& r : v.rays) {
          const int c = pos(rng);
          for (std::size_t i = 0; i < s.dim; ++i) p[i] += c * r[i];
        }
        for (const auto& l : v.lineality) {
          const int c = any(rng);
          for (std::size_t i = 0; i < s.dim; ++i) p[i] += c * l[i];
        }
        if (!is_zero(p)) out.push_back(std::move(p));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<RayPoint> xg_boundary_rays(const group::SigmaData& S, std::size_t per_family, std::uint64_t seed) {
  const std::size_t n = S.dim();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-6, 6);
  auto random_vec = [&] {
    IntVec v(n, BigInt(0));
    while (is_zero(v))
      for (auto& c : v) c = entry(rng);
    return v;
  };
  std::vector<RayPoint> out;
  auto push = [&](const IntVec& a, const IntVec& b) {
    IntVec x(a);
    x.insert(x.end(), b.begin(), b.end());
    if (!is_zero(x)) out.push_back(geom::normalize_ray(x));
  };
  auto add = [](const IntVec& a, const IntVec& b, int sign) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + sign * b[i];
    return r;
  };
  const IntVec zero(n, BigInt(0));
  for (std::size_t t = 0; t < per_family; ++t) {
    IntVec v = random_vec();
    push(zero, v);
    push(v, zero);
    push(v, v);
  }
  std::vector<IntVec> facets;
  for (const auto& [key, set] : S.complements()) {
    auto pts = facet_points(set, rng, 3);
    facets.insert(facets.end(), pts.begin(), pts.end());
  }
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  if (facets.size() > per_family) {
    std::vector<IntVec> thinned;
    for (std::size_t i = 0; i < per_family; ++i) thinned.push_back(facets[i * facets.size() / per_family]);
    facets = std::move(thinned);
  }
  for (const auto& f : facets) {
    IntVec v = random_vec();
    push(f, zero);
    push(zero, f);
    push(f, f);
    push(f, v);
    push(v, f);
    push(v, add(v, f, -1));  // chi_1 - chi_2 = f
    push(v, add(v, f, 1));   // chi_2 - chi_1 = f
    push(f, add(f, f, -1));  // chi_2 = 0 through the difference
    push(f, add(zero, f, -1));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

CrossCheckReport collect(const std::vector<RayPoint>& rays, const std::vector<char>& in_set,
                         const std::vector<char>& in_sigma, std::uint64_t seed) {
  CrossCheckReport rep;
  rep.samples = rays.size();
  rep.seed = seed;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if ((in_set[i] != 0) == (in_sigma[i] != 0)) rep.mismatches.push_back(rays[i]);
  std::sort(rep.mismatches.begin(), rep.mismatches.end());
  return rep;
}

}  // namespace

CrossCheckReport cross_check(const geom::SphSet& constructed, const Predicate& pointwise,
                             const std::vector<RayPoint>& rays, std::uint64_t seed) {
  const auto in_set = kernels::member_mask(rays, constructed);
  std::vector<char> in_sigma(rays.size(), 0);
  std::vector<std::exception_ptr> errors(rays.size());
  const long count = static_cast<long>(rays.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < count; ++i) {
    try {
      in_sigma[static_cast<std::size_t>(i)] = pointwise(rays[static_cast<std::size_t>(i)]) ? 1 : 0;
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return collect(rays, in_set, in_sigma, seed);
}

CrossCheckReport cross_check_serial(const geom::SphSet& constructed, const Predicate& pointwise,
                                    const std::vector<RayPoint>& rays, std::uint64_t seed) {
  const auto in_set = kernels::member_mask_serial(rays, constructed);
  std::vector<char> in_sigma(rays.size(), 0);
  for (std::size_t i = 0; i < rays.size(); ++i) in_sigma[i] = pointwise(rays[i]) ? 1 : 0;
  return collect(rays, in_set, in_sigma, seed);
}

}  // namespace xgs::oracle
