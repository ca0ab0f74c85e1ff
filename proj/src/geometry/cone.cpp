#include "xgsigma/geometry/cone.hpp"

#include <algorithm>
#include <set>

#include "xgsigma/errors.hpp"

namespace xgs::geom {

namespace {

struct TrackedRay {
  IntVec v;
  std::vector<bool> zeros;  // tight inequalities among those processed
};

// Is there a third ray whose zero set contains zp & zn?
bool adjacent(const std::vector<TrackedRay>& rays, std::size_t p, std::size_t n, std::size_t processed) {
  std::vector<std::size_t> common;
  for (std::size_t k = 0; k < processed; ++k)
    if (rays[p].zeros[k] && rays[n].zeros[k]) common.push_back(k);
  for (std::size_t r = 0; r < rays.size(); ++r) {
    if (r == p || r == n) continue;
    bool covers = std::all_of(common.begin(), common.end(), [&](std::size_t k) { return rays[r].zeros[k]; });
    if (covers) return false;
  }
  return true;
}

IntVec combine(const BigInt& f, const IntVec& x, const BigInt& g, const IntVec& y) {
  IntVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f * x[i] - g * y[i];
  return primitive(out);
}

std::vector<IntVec> sorted_unique(std::vector<IntVec> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

bool ConeV::generates(std::span<const BigInt> x) const {
  require_dim(x.size(), dim, "ConeV::generates");
  const std::size_t nr = rays.size(), nl = lineality.size(), nv = nr + nl;
  std::vector<AffineRow> rows;
  for (std::size_t k = 0; k < dim; ++k) {
    AffineRow r;
    r.a.resize(nv);
    for (std::size_t i = 0; i < nr; ++i) r.a[i] = rays[i][k];
    for (std::size_t j = 0; j < nl; ++j) r.a[nr + j] = lineality[j][k];
    r.c = -x[k];
    r.rel = Relation::EQ;
    rows.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < nr; ++i) {
    AffineRow r;
    r.a.assign(nv, BigInt(0));
    r.a[i] = 1;
    r.c = 0;
    rows.push_back(std::move(r));
  }
  if (nv == 0) return is_zero(x);
  return solve_affine(nv, std::move(rows)).has_value();
}

ConeV h_to_v(const Cell& c) {
  const std::size_t d = c.dim;
  std::vector<IntVec> eqs;
  std::vector<IntVec> ineqs;
  for (const auto& h : c.constraints) {
    require_dim(h.normal.size(), d, "h_to_v");
    if (h.rel == Relation::EQ) eqs.push_back(h.normal);
    else if (h.rel == Relation::GE) ineqs.push_back(h.normal);
    else throw Error(ErrorKind::InvalidArgument, "h_to_v: strict constraint");
  }

  RatMatrix e(eqs.size(), d);
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) e(i, j) = eqs[i][j];
  std::vector<IntVec> lineality = nullspace(e);
  std::vector<TrackedRay> rays;

  const std::size_t m = ineqs.size();
  for (std::size_t k = 0; k < m; ++k) {
    const IntVec& a = ineqs[k];
    auto hit = std::find_if(lineality.begin(), lineality.end(), [&](const IntVec& l) { return sgn(dot(a, l)) != 0; });
    if (hit != lineality.end()) {
      IntVec l0 = *hit;
      lineality.erase(hit);
      BigInt al0 = dot(a, l0);
      if (sgn(al0) < 0) {
        for (auto& x : l0) x = -x;
        al0 = -al0;
      }
      for (auto& l : lineality) {
        BigInt al = dot(a, l);
        if (sgn(al) != 0) l = combine(al0, l, al, l0);
      }
      for (auto& r : rays) {
        BigInt ar = dot(a, r.v);
        if (sgn(ar) != 0) r.v = combine(al0, r.v, ar, l0);
        r.zeros.resize(m, false);
        r.zeros[k] = true;
      }
      TrackedRay nr{l0, std::vector<bool>(m, true)};
      nr.zeros[k] = false;
      rays.push_back(std::move(nr));
      continue;
    }

    std::vector<TrackedRay> next;
    std::vector<std::size_t> pos, neg;
    std::vector<BigInt> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      rays[i].zeros.resize(m, false);
      val[i] = dot(a, rays[i].v);
      int s = sgn(val[i]);
      if (s > 0) pos.push_back(i);
      else if (s < 0) neg.push_back(i);
    }
    for (std::size_t p : pos)
      for (std::size_t n : neg) {
        if (!adjacent(rays, p, n, k)) continue;
        TrackedRay nr;
        // val[p] * n - val[n] * p lies on the hyperplane a.x = 0.
        nr.v = combine(val[p], rays[n].v, val[n], rays[p].v);
        nr.zeros.assign(m, false);
        for (std::size_t t = 0; t < k; ++t) nr.zeros[t] = rays[p].zeros[t] && rays[n].zeros[t];
        nr.zeros[k] = true;
        next.push_back(std::move(nr));
      }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      int s = sgn(val[i]);
      if (s < 0) continue;
      rays[i].zeros[k] = (s == 0);
      next.push_back(std::move(rays[i]));
    }
    rays = std::move(next);
  }

  ConeV out;
  out.dim = d;
  std::vector<IntVec> rv;
  for (auto& r : rays)
    if (!is_zero(r.v)) rv.push_back(std::move(r.v));
  out.rays = sorted_unique(std::move(rv));
  out.lineality = sorted_unique(std::move(lineality));
  return out;
}

Cell v_to_h(const ConeV& v) {
  Cell dual{v.dim, {}};
  for (const auto& r : v.rays) {
    require_dim(r.size(), v.dim, "v_to_h");
    dual.constraints.push_back(HalfSpace{r, Relation::GE});
  }
  for (const auto& l : v.lineality) {
    require_dim(l.size(), v.dim, "v_to_h");
    dual.constraints.push_back(HalfSpace{l, Relation::EQ});
  }
  ConeV polar = h_to_v(dual);
  Cell out{v.dim, {}};
  for (const auto& y : polar.rays) out.constraints.push_back(HalfSpace{y, Relation::GE});
  for (const auto& l : polar.lineality) out.constraints.push_back(HalfSpace{l, Relation::EQ});
  return canonical(std::move(out));
}

SphSet cone_sum(const SphSet& a, const SphSet& b) {
  require_dim(a.dim, b.dim, "cone_sum");
  if (a.cells.empty()) return simplify(b);
  if (b.cells.empty()) return simplify(a);
  std::vector<ConeV> va, vb;
  for (const auto& c : a.cells) va.push_back(h_to_v(c));
  for (const auto& c : b.cells) vb.push_back(h_to_v(c));
  SphSet out{a.dim, {}};
  for (const auto& x : va)
    for (const auto& y : vb) {
      ConeV s{a.dim, x.rays, x.lineality};
      s.rays.insert(s.rays.end(), y.rays.begin(), y.rays.end());
      s.lineality.insert(s.lineality.end(), y.lineality.begin(), y.lineality.end());
      out.cells.push_back(v_to_h(s));
    }
  return simplify(std::move(out));
}

ConeV embed(const ConeV& v, std::size_t dim_total, std::size_t offset) {
  if (offset + v.dim > dim_total) throw Error(ErrorKind::DimensionMismatch, "embed: block out of range");
  auto lift = [&](const IntVec& x) {
    IntVec y(dim_total, BigInt(0));
    std::copy(x.begin(), x.end(), y.begin() + static_cast<long>(offset));
    return y;
  };
  ConeV out{dim_total, {}, {}};
  for (const auto& r : v.rays) out.rays.push_back(lift(r));
  for (const auto& l : v.lineality) out.lineality.push_back(lift(l));
  return out;
}

namespace {

// Block embedding of a whole set; the generators of each embedded cell are
// the embedded generators of the original cell.
SphSet embed_set(const SphSet& s, std::size_t dim_total, std::size_t offset) {
  SphSet out{dim_total, {}};
  for (const auto& c : s.cells) out.cells.push_back(v_to_h(embed(h_to_v(c), dim_total, offset)));
  return canonical(std::move(out));
}

}  // namespace

SphSet join(const SphSet& a, const SphSet& b) {
  const std::size_t total = a.dim + b.dim;
  return cone_sum(embed_set(a, total, 0), embed_set(b, total, a.dim));
}

SphSet preimage(const SphSet& s, const RatMatrix& L) {
  require_dim(L.rows(), s.dim, "preimage");
  const std::size_t a = L.cols();
  SphSet out{a, {}};
  for (const auto& c : s.cells) {
    Cell n{a, {}};
    for (const auto& h : c.constraints) {
      RatVec w(a, Rat(0));
      for (std::size_t i = 0; i < L.rows(); ++i) {
        if (sgn(h.normal[i]) == 0) continue;
        for (std::size_t j = 0; j < a; ++j) w[j] += Rat(h.normal[i]) * L(i, j);
      }
      if (is_zero(w)) continue;  // 0 >= 0 and 0 = 0 always hold
      n.constraints.push_back(HalfSpace{clear_denominators(w), h.rel});
    }
    out.cells.push_back(std::move(n));
  }
  return canonical(std::move(out));
}

}  // namespace xgs::geom
