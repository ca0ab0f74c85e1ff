#include "xgsigma/kernels/parallel.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "xgsigma/errors.hpp"

namespace xgs::kernels {

using geom::Cell;
using geom::FeasibilitySystem;
using geom::HalfSpace;
using geom::Relation;
using geom::SphSet;

namespace {

// Exceptions may not cross an OpenMP region; keep the one with the lowest
// index so the rethrown error is schedule-independent.
class FirstError {
 public:
  void record(long index, std::exception_ptr e) {
#pragma omp critical(xgs_first_error)
    {
      if (!error_ || index < index_) {
        error_ = std::move(e);
        index_ = index;
      }
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
  long index_ = 0;
};

FeasibilitySystem with(const FeasibilitySystem& base, const HalfSpace& extra) {
  FeasibilitySystem s = base;
  s.constraints.push_back(extra);
  return s;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<char> feasible_mask(const std::vector<FeasibilitySystem>& systems) {
  const long n = static_cast<long>(systems.size());
  std::vector<char> out(systems.size(), 0);
  FirstError err;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = geom::feasible(systems[i]) ? 1 : 0;
    } catch (...) {
      err.record(i, std::current_exception());
    }
  }
  err.rethrow();
  return out;
}

std::vector<char> feasible_mask_serial(const std::vector<FeasibilitySystem>& systems) {
  std::vector<char> out;
  out.reserve(systems.size());
  for (const auto& s : systems) out.push_back(geom::feasible(s) ? 1 : 0);
  return out;
}

std::vector<char> member_mask(const std::vector<geom::RayPoint>& rays, const SphSet& s) {
  const long n = static_cast<long>(rays.size());
  std::vector<char> out(rays.size(), 0);
  FirstError err;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = geom::member(rays[i], s) ? 1 : 0;
    } catch (...) {
      err.record(i, std::current_exception());
    }
  }
  err.rethrow();
  return out;
}

std::vector<char> member_mask_serial(const std::vector<geom::RayPoint>& rays, const SphSet& s) {
  std::vector<char> out;
  out.reserve(rays.size());
  for (const auto& r : rays) out.push_back(geom::member(r, s) ? 1 : 0);
  return out;
}

bool cell_covered(const SphSet& a, const Cell& c, const geom::Limits& limits) {
  FeasibilitySystem start{c.dim, c.constraints};
  if (!geom::feasible(start)) return true;
  std::vector<FeasibilitySystem> regions{std::move(start)};
  for (const Cell& d : a.cells) {
    std::vector<FeasibilitySystem> next;
    for (const auto& region : regions) {
      FeasibilitySystem meet = region;
      meet.constraints.insert(meet.constraints.end(), d.constraints.begin(), d.constraints.end());
      if (!geom::feasible(meet)) {
        next.push_back(region);
        continue;
      }
      // region \ d = union over constraints h of d of (region and not h).
      for (const HalfSpace& h : d.constraints) {
        if (h.rel == Relation::EQ) {
          HalfSpace up{h.normal, Relation::GT};
          HalfSpace down = geom::negate_closed(HalfSpace{h.normal, Relation::GE});
          for (const auto& piece : {with(region, up), with(region, down)})
            if (geom::feasible(piece)) next.push_back(piece);
        } else {
          auto piece = with(region, geom::negate_closed(h));
          if (geom::feasible(piece)) next.push_back(std::move(piece));
        }
        if (next.size() > limits.branch_cap)
          throw Error(ErrorKind::BranchLimitExceeded,
                      "containment split exceeded " + std::to_string(limits.branch_cap) + " regions");
      }
    }
    regions = std::move(next);
    if (regions.empty()) return true;
  }
  return regions.empty();
}

std::vector<char> covered_mask(const SphSet& a, const SphSet& b, const geom::Limits& limits) {
  const long n = static_cast<long>(b.cells.size());
  std::vector<char> out(b.cells.size(), 0);
  FirstError err;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = cell_covered(a, b.cells[i], limits) ? 1 : 0;
    } catch (...) {
      err.record(i, std::current_exception());
    }
  }
  err.rethrow();
  return out;
}

std::vector<char> covered_mask_serial(const SphSet& a, const SphSet& b, const geom::Limits& limits) {
  std::vector<char> out;
  out.reserve(b.cells.size());
  for (const auto& c : b.cells) out.push_back(cell_covered(a, c, limits) ? 1 : 0);
  return out;
}

}  // namespace xgs::kernels
