#include "xgsigma/geometry/sphset.hpp"

#include <algorithm>
#include <numeric>

#include "xgsigma/errors.hpp"
#include "xgsigma/kernels/parallel.hpp"

namespace xgs::geom {

RayPoint normalize_ray(std::span<const BigInt> v) {
  if (is_zero(v)) throw Error(ErrorKind::ZeroVector, "normalize_ray: zero vector");
  return RayPoint(primitive(v));
}

RayPoint normalize_ray(std::span<const Rat> v) {
  if (is_zero(v)) throw Error(ErrorKind::ZeroVector, "normalize_ray: zero vector");
  IntVec c = clear_denominators(v);
  return normalize_ray(c);
}

RayPoint ray(std::initializer_list<long> v) {
  IntVec c = make_int_vec(v);
  return normalize_ray(c);
}

bool Cell::contains_point(std::span<const BigInt> x) const {
  require_dim(x.size(), dim, "Cell::contains_point");
  return std::all_of(constraints.begin(), constraints.end(), [&](const HalfSpace& h) { return h.holds_at(x); });
}

Cell make_cell(std::size_t dim, std::vector<HalfSpace> constraints) {
  for (const auto& h : constraints) {
    require_dim(h.normal.size(), dim, "make_cell");
    if (h.rel == Relation::GT)
      throw Error(ErrorKind::InvalidArgument, "stored cells admit GE/EQ constraints only");
  }
  return Cell{dim, std::move(constraints)};
}

HalfSpace ge(std::initializer_list<long> normal) { return HalfSpace{make_int_vec(normal), Relation::GE}; }
HalfSpace eq(std::initializer_list<long> normal) { return HalfSpace{make_int_vec(normal), Relation::EQ}; }

bool cell_feasible(const Cell& c) { return feasible(FeasibilitySystem{c.dim, c.constraints}); }

Cell canonical(Cell c) {
  for (auto& h : c.constraints) h = normalized(std::move(h));
  std::sort(c.constraints.begin(), c.constraints.end());
  c.constraints.erase(std::unique(c.constraints.begin(), c.constraints.end()), c.constraints.end());
  return c;
}

SphSet canonical(SphSet s) {
  std::vector<Cell> cells;
  cells.reserve(s.cells.size());
  for (auto& c : s.cells) {
    require_dim(c.dim, s.dim, "canonical");
    cells.push_back(canonical(std::move(c)));
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  std::vector<FeasibilitySystem> systems;
  systems.reserve(cells.size());
  for (const auto& c : cells) systems.push_back(FeasibilitySystem{c.dim, c.constraints});
  auto ok = kernels::feasible_mask(systems);
  SphSet out{s.dim, {}};
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (ok[i]) out.cells.push_back(std::move(cells[i]));
  return out;
}

bool cell_subset(const Cell& inner, const Cell& outer) {
  require_dim(inner.dim, outer.dim, "cell_subset");
  for (const auto& h : outer.constraints) {
    std::vector<HalfSpace> branches;
    if (h.rel == Relation::EQ) {
      branches.push_back(HalfSpace{h.normal, Relation::GT});
      branches.push_back(negate_closed(HalfSpace{h.normal, Relation::GE}));
    } else {
      branches.push_back(negate_closed(h));
    }
    for (const auto& b : branches) {
      FeasibilitySystem sys{inner.dim, inner.constraints};
      sys.constraints.push_back(b);
      if (feasible(sys)) return false;
    }
  }
  return true;
}

SphSet simplify(SphSet s) {
  s = canonical(std::move(s));
  const std::size_t n = s.cells.size();
  std::vector<bool> dropped(n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || dropped[j]) continue;
      if (cell_subset(s.cells[i], s.cells[j])) {
        dropped[i] = true;
        break;
      }
    }
  SphSet out{s.dim, {}};
  for (std::size_t i = 0; i < n; ++i)
    if (!dropped[i]) out.cells.push_back(std::move(s.cells[i]));
  return out;
}

bool member(const RayPoint& p, const SphSet& s) {
  require_dim(p.dim(), s.dim, "member");
  return std::any_of(s.cells.begin(), s.cells.end(), [&](const Cell& c) { return c.contains_point(p.coords()); });
}

SphSet set_union(const SphSet& a, const SphSet& b) {
  require_dim(a.dim, b.dim, "union");
  SphSet out = a;
  out.cells.insert(out.cells.end(), b.cells.begin(), b.cells.end());
  return canonical(std::move(out));
}

SphSet set_intersect(const SphSet& a, const SphSet& b) {
  require_dim(a.dim, b.dim, "intersect");
  SphSet out{a.dim, {}};
  for (const auto& x : a.cells)
    for (const auto& y : b.cells) {
      Cell c{a.dim, x.constraints};
      c.constraints.insert(c.constraints.end(), y.constraints.begin(), y.constraints.end());
      out.cells.push_back(std::move(c));
    }
  return canonical(std::move(out));
}

SphSet set_intersect(const SphSet& s, const Cell& c) { return set_intersect(s, SphSet::single(c)); }

bool contains(const SphSet& a, const SphSet& b, const Limits& limits) {
  require_dim(a.dim, b.dim, "contains");
  auto covered = kernels::covered_mask(a, b, limits);
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

bool equal(const SphSet& a, const SphSet& b, const Limits& limits) {
  return contains(a, b, limits) && contains(b, a, limits);
}

std::vector<HalfSpace> zero_block(std::size_t dim, std::size_t begin, std::size_t end) {
  std::vector<HalfSpace> out;
  for (std::size_t i = begin; i < end; ++i) {
    IntVec v(dim, BigInt(0));
    v[i] = 1;
    out.push_back(HalfSpace{std::move(v), Relation::EQ});
  }
  return out;
}

SphSet permute(const SphSet& s, const std::vector<std::size_t>& perm) {
  require_dim(perm.size(), s.dim, "permute");
  SphSet out{s.dim, {}};
  for (const auto& c : s.cells) {
    Cell n{s.dim, {}};
    for (const auto& h : c.constraints) {
      IntVec w(s.dim);
      for (std::size_t i = 0; i < s.dim; ++i) w[i] = h.normal[perm[i]];
      n.constraints.push_back(HalfSpace{std::move(w), h.rel});
    }
    out.cells.push_back(std::move(n));
  }
  return canonical(std::move(out));
}

}  // namespace xgs::geom
