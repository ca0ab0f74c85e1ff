#include "xgsigma/geometry/feasibility.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "xgsigma/errors.hpp"

namespace xgs::geom {

namespace {

template <typename T>
int eval_sign(const HalfSpace& h, std::span<const T> x) {
  T s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += h.normal[i] * x[i];
  return sgn(s);
}

bool relation_holds(Relation rel, int s) {
  switch (rel) {
    case Relation::GE: return s >= 0;
    case Relation::EQ: return s == 0;
    case Relation::GT: return s > 0;
  }
  return false;
}

enum class RowStatus { Keep, Trivial, Contradiction };

// Divides out the common content and classifies constant rows.
RowStatus normalize_row(AffineRow& r) {
  BigInt g = content(r.a);
  if (sgn(g) == 0) {
    int s = sgn(r.c);
    return relation_holds(r.rel, s) ? RowStatus::Trivial : RowStatus::Contradiction;
  }
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.c.get_mpz_t());
  if (g != 1) {
    for (auto& x : r.a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(r.c.get_mpz_t(), r.c.get_mpz_t(), g.get_mpz_t());
  }
  if (r.rel == Relation::EQ) {
    auto lead = std::find_if(r.a.begin(), r.a.end(), [](const BigInt& x) { return sgn(x) != 0; });
    if (sgn(*lead) < 0) {
      for (auto& x : r.a) x = -x;
      r.c = -r.c;
    }
  }
  return RowStatus::Keep;
}

// Keeps only the strongest row for each normal direction. Returns false on
// a detected contradiction between opposite EQ rows.
std::vector<AffineRow> dedupe(std::vector<AffineRow> rows) {
  std::map<IntVec, AffineRow> best_ineq;
  std::map<IntVec, AffineRow> eqs;
  std::vector<AffineRow> out;
  for (auto& r : rows) {
    if (r.rel == Relation::EQ) {
      auto it = eqs.find(r.a);
      if (it == eqs.end()) {
        eqs.emplace(r.a, std::move(r));
      } else if (it->second.c != r.c) {
        // a.x = -c1 and a.x = -c2 with c1 != c2: keep both so the
        // contradiction surfaces during substitution.
        out.push_back(std::move(r));
      }
      continue;
    }
    auto it = best_ineq.find(r.a);
    if (it == best_ineq.end()) {
      best_ineq.emplace(r.a, std::move(r));
      continue;
    }
    AffineRow& cur = it->second;
    if (r.c < cur.c || (r.c == cur.c && r.rel == Relation::GT)) cur = std::move(r);
  }
  for (auto& [k, r] : eqs) out.push_back(std::move(r));
  for (auto& [k, r] : best_ineq) out.push_back(std::move(r));
  return out;
}

struct Stage {
  std::size_t var = 0;
  bool substitution = false;
  AffineRow equation;             // when substitution
  std::vector<AffineRow> bounds;  // rows touching var, when eliminating
};

Rat row_rest(const AffineRow& r, std::size_t skip, const RatVec& x) {
  Rat s = r.c;
  for (std::size_t i = 0; i < r.a.size(); ++i) {
    if (i == skip || sgn(r.a[i]) == 0) continue;
    s += Rat(r.a[i]) * x[i];
  }
  return s;
}

bool within(const Rat& v, bool has_lo, const Rat& lo, bool lo_strict, bool has_hi, const Rat& hi,
            bool hi_strict) {
  if (has_lo && (lo_strict ? !(v > lo) : !(v >= lo))) return false;
  if (has_hi && (hi_strict ? !(v < hi) : !(v <= hi))) return false;
  return true;
}

Rat pick_value(bool has_lo, const Rat& lo, bool lo_strict, bool has_hi, const Rat& hi, bool hi_strict) {
  Rat zero = 0;
  if (within(zero, has_lo, lo, lo_strict, has_hi, hi, hi_strict)) return zero;
  if (has_lo) {
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    for (int k = 0; k < 2; ++k) {
      Rat cand(f + k);
      if (within(cand, has_lo, lo, lo_strict, has_hi, hi, hi_strict)) return cand;
    }
  } else {
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    for (int k = 0; k < 2; ++k) {
      Rat cand(c - k);
      if (within(cand, has_lo, lo, lo_strict, has_hi, hi, hi_strict)) return cand;
    }
  }
  Rat mid = (lo + hi) / 2;
  if (lo == hi) return lo;
  return mid;
}

}  // namespace

bool HalfSpace::holds_at(std::span<const BigInt> x) const {
  require_dim(normal.size(), x.size(), "HalfSpace::holds_at");
  return relation_holds(rel, eval_sign(*this, x));
}

bool HalfSpace::holds_at(std::span<const Rat> x) const {
  require_dim(normal.size(), x.size(), "HalfSpace::holds_at");
  return relation_holds(rel, eval_sign(*this, x));
}

HalfSpace normalized(HalfSpace h) {
  if (is_zero(h.normal)) throw Error(ErrorKind::ZeroVector, "half-space with zero normal");
  h.normal = primitive(h.normal);
  if (h.rel == Relation::EQ) {
    auto lead = std::find_if(h.normal.begin(), h.normal.end(), [](const BigInt& x) { return sgn(x) != 0; });
    if (sgn(*lead) < 0)
      for (auto& x : h.normal) x = -x;
  }
  return h;
}

HalfSpace negate_closed(const HalfSpace& h) {
  HalfSpace n;
  n.normal.reserve(h.normal.size());
  for (const auto& x : h.normal) n.normal.push_back(-x);
  switch (h.rel) {
    case Relation::GE: n.rel = Relation::GT; break;
    case Relation::GT: n.rel = Relation::GE; break;
    case Relation::EQ:
      throw Error(ErrorKind::InvalidArgument, "negate_closed: EQ negation is a disjunction");
  }
  return n;
}

std::vector<AffineRow> drop_pairwise_redundant(std::vector<AffineRow> rows) {
  const std::size_t m = rows.size();
  std::vector<bool> kept(m, true);
  for (std::size_t r = 0; r < m; ++r) {
    if (rows[r].rel == Relation::EQ) continue;
    const auto& target = rows[r];
    const std::size_t d = target.a.size();
    bool implied = false;
    for (std::size_t p = 0; p < m && !implied; ++p) {
      if (p == r || !kept[p] || rows[p].rel == Relation::EQ) continue;
      for (std::size_t q = p + 1; q < m && !implied; ++q) {
        if (q == r || !kept[q] || rows[q].rel == Relation::EQ) continue;
        const auto& P = rows[p].a;
        const auto& Q = rows[q].a;
        // Find a nonsingular 2x2 minor to solve target = s P + t Q.
        bool solved = false;
        Rat s, t;
        for (std::size_t i = 0; i < d && !solved; ++i)
          for (std::size_t j = i + 1; j < d && !solved; ++j) {
            BigInt det = P[i] * Q[j] - P[j] * Q[i];
            if (sgn(det) == 0) continue;
            s = Rat(target.a[i] * Q[j] - target.a[j] * Q[i], det);
            t = Rat(P[i] * target.a[j] - P[j] * target.a[i], det);
            s.canonicalize();
            t.canonicalize();
            solved = true;
          }
        if (!solved || sgn(s) < 0 || sgn(t) < 0) continue;
        bool match = true;
        for (std::size_t i = 0; i < d && match; ++i) match = (s * P[i] + t * Q[i] == Rat(target.a[i]));
        if (!match) continue;
        Rat combo = s * rows[p].c + t * rows[q].c;
        Rat tc(target.c);
        if (tc < combo) continue;
        if (target.rel == Relation::GT) {
          bool strict = tc > combo || (sgn(s) > 0 && rows[p].rel == Relation::GT) ||
                        (sgn(t) > 0 && rows[q].rel == Relation::GT);
          if (!strict) continue;
        }
        implied = true;
      }
    }
    if (implied) kept[r] = false;
  }
  std::vector<AffineRow> out;
  for (std::size_t i = 0; i < m; ++i)
    if (kept[i]) out.push_back(std::move(rows[i]));
  return out;
}

std::optional<RatVec> solve_affine(std::size_t dim, std::vector<AffineRow> input) {
  constexpr std::size_t kPairwiseThreshold = 24;

  std::vector<AffineRow> rows;
  rows.reserve(input.size());
  for (auto& r : input) {
    require_dim(r.a.size(), dim, "solve_affine");
    switch (normalize_row(r)) {
      case RowStatus::Contradiction: return std::nullopt;
      case RowStatus::Trivial: break;
      case RowStatus::Keep: rows.push_back(std::move(r)); break;
    }
  }
  rows = dedupe(std::move(rows));

  std::vector<Stage> stages;

  // Equations first: each one removes a variable exactly.
  for (;;) {
    auto eq = std::find_if(rows.begin(), rows.end(), [](const AffineRow& r) { return r.rel == Relation::EQ; });
    if (eq == rows.end()) break;
    AffineRow e = std::move(*eq);
    rows.erase(eq);
    std::size_t v = dim;
    for (std::size_t i = 0; i < dim; ++i) {
      if (sgn(e.a[i]) == 0) continue;
      if (v == dim || abs(e.a[i]) < abs(e.a[v])) v = i;
    }
    if (sgn(e.a[v]) < 0) {
      for (auto& x : e.a) x = -x;
      e.c = -e.c;
    }
    std::vector<AffineRow> next;
    next.reserve(rows.size());
    for (auto& r : rows) {
      if (sgn(r.a[v]) != 0) {
        BigInt f = r.a[v];
        for (std::size_t i = 0; i < dim; ++i) r.a[i] = e.a[v] * r.a[i] - f * e.a[i];
        r.c = e.a[v] * r.c - f * e.c;
      }
      switch (normalize_row(r)) {
        case RowStatus::Contradiction: return std::nullopt;
        case RowStatus::Trivial: break;
        case RowStatus::Keep: next.push_back(std::move(r)); break;
      }
    }
    rows = dedupe(std::move(next));
    Stage st;
    st.var = v;
    st.substitution = true;
    st.equation = std::move(e);
    stages.push_back(std::move(st));
  }

  // Inequalities: Fourier-Motzkin with strictness propagation.
  for (;;) {
    std::size_t best = dim;
    long best_cost = 0;
    for (std::size_t v = 0; v < dim; ++v) {
      long pos = 0, neg = 0;
      for (const auto& r : rows) {
        int s = sgn(r.a[v]);
        pos += s > 0;
        neg += s < 0;
      }
      if (pos + neg == 0) continue;
      long cost = pos * neg - pos - neg;
      if (best == dim || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    if (best == dim) break;

    std::vector<AffineRow> pos, neg, next;
    for (auto& r : rows) {
      int s = sgn(r.a[best]);
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
      else next.push_back(std::move(r));
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        AffineRow c;
        BigInt fp = -n.a[best];
        BigInt fn = p.a[best];
        c.a.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) c.a[i] = fp * p.a[i] + fn * n.a[i];
        c.c = fp * p.c + fn * n.c;
        c.rel = (p.rel == Relation::GT || n.rel == Relation::GT) ? Relation::GT : Relation::GE;
        switch (normalize_row(c)) {
          case RowStatus::Contradiction: return std::nullopt;
          case RowStatus::Trivial: break;
          case RowStatus::Keep: next.push_back(std::move(c)); break;
        }
      }
    rows = dedupe(std::move(next));
    if (rows.size() > kPairwiseThreshold) rows = drop_pairwise_redundant(std::move(rows));

    Stage st;
    st.var = best;
    st.bounds = std::move(pos);
    st.bounds.insert(st.bounds.end(), std::make_move_iterator(neg.begin()), std::make_move_iterator(neg.end()));
    stages.push_back(std::move(st));
  }

  // Only constant rows could remain and those were checked by normalize_row.
  RatVec x(dim, Rat(0));
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    const Stage& st = *it;
    if (st.substitution) {
      x[st.var] = -row_rest(st.equation, st.var, x) / Rat(st.equation.a[st.var]);
      continue;
    }
    bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
    Rat lo, hi;
    for (const auto& r : st.bounds) {
      Rat coef(r.a[st.var]);
      Rat bound = -row_rest(r, st.var, x) / coef;
      bool strict = r.rel == Relation::GT;
      if (sgn(coef) > 0) {
        if (!has_lo || bound > lo || (bound == lo && strict)) {
          lo_strict = (has_lo && bound == lo) ? (lo_strict || strict) : strict;
          lo = bound;
          has_lo = true;
        }
      } else {
        if (!has_hi || bound < hi || (bound == hi && strict)) {
          hi_strict = (has_hi && bound == hi) ? (hi_strict || strict) : strict;
          hi = bound;
          has_hi = true;
        }
      }
    }
    x[st.var] = pick_value(has_lo, lo, lo_strict, has_hi, hi, hi_strict);
  }
  return x;
}

std::optional<RatVec> solve_nonzero(const FeasibilitySystem& sys) {
  if (sys.dim == 0) return std::nullopt;
  std::vector<AffineRow> base;
  base.reserve(sys.constraints.size() + 1);
  bool has_strict = false;
  for (const auto& h : sys.constraints) {
    require_dim(h.normal.size(), sys.dim, "feasible");
    base.push_back(AffineRow{h.normal, BigInt(0), h.rel});
    has_strict = has_strict || h.rel == Relation::GT;
  }
  if (has_strict) return solve_affine(sys.dim, std::move(base));
  for (std::size_t i = 0; i < sys.dim; ++i)
    for (int sign : {1, -1}) {
      auto rows = base;
      AffineRow anchor;
      anchor.a.assign(sys.dim, BigInt(0));
      anchor.a[i] = sign;
      anchor.c = -1;
      anchor.rel = Relation::GE;
      rows.push_back(std::move(anchor));
      if (auto x = solve_affine(sys.dim, std::move(rows))) return x;
    }
  return std::nullopt;
}

bool feasible(const FeasibilitySystem& sys) { return solve_nonzero(sys).has_value(); }

}  // namespace xgs::geom
