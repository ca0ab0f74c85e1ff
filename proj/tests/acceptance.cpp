// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance --cli PATH --corpus DIR
//
// All comparisons are exact; the only tolerances are the wall-clock limits
// printed next to each line.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "support/corpus.hpp"
#include "xgsigma/errors.hpp"
#include "xgsigma/geometry/cone.hpp"
#include "xgsigma/io/format.hpp"
#include "xgsigma/oracle/oracles.hpp"

using namespace xgs;
using geom::SphSet;
using group::Coeff;
using group::SigmaData;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "first failure: " << what << "; ";
      ok = false;
    }
  }
};

struct Config {
  std::string cli;
  std::string corpus_dir;
};

constexpr std::uint64_t kSeed = 20240601;

int run_criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << "exception: " << e.what() << "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0 || secs < limit_s;
  const bool pass = o.ok && in_time;
  char timing[96];
  if (limit_s > 0) std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, limit_s);
  else std::snprintf(timing, sizeof timing, "%.2f s, no limit", secs);
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << " [" << title << "] (" << timing << ") "
            << o.detail.str() << (in_time ? "" : "too slow") << std::endl;
  return pass ? 0 : 1;
}

std::vector<geom::RayPoint> xg_rays(const SigmaData& S, std::uint64_t seed, bool boundary) {
  const std::size_t dim = 2 * S.dim();
  auto rays = oracle::sample_rays(dim, oracle::Sampler::grid(4, 1000));
  auto random = oracle::sample_rays(dim, oracle::Sampler::random(1000, seed));
  rays.insert(rays.end(), random.begin(), random.end());
  if (boundary) {
    auto b = oracle::xg_boundary_rays(S, 60, seed);
    rays.insert(rays.end(), b.begin(), b.end());
  }
  return rays;
}

SphSet eq_cell(std::size_t dim, std::vector<geom::HalfSpace> rows) {
  return SphSet{dim, {geom::Cell{dim, std::move(rows)}}};
}

// ---- criteria ----------------------------------------------------------

void c1(Outcome& o) {
  const SigmaData f2 = group::catalog_lookup("free(2)");
  const auto r = sigma::xg_sigma1_complement(f2);
  using geom::eq;
  SphSet expected{4, {}};
  expected = geom::set_union(expected, eq_cell(4, {eq({1, 0, 0, 0}), eq({0, 1, 0, 0})}));
  expected = geom::set_union(expected, eq_cell(4, {eq({0, 0, 1, 0}), eq({0, 0, 0, 1})}));
  expected = geom::set_union(expected, eq_cell(4, {eq({1, 0, -1, 0}), eq({0, 1, 0, -1})}));
  o.require(geom::equal(r.set, expected), "complement differs from {chi1=0} u {chi2=0} u {chi1=chi2}");
  o.require(r.exactness == sigma::Exactness::EXACT, "not EXACT");
  o.detail << r.set.cells.size() << " cells; ";
}

void c2(Outcome& o) {
  std::size_t samples = 0, datasets = 0;
  for (const auto& S : testing::corpus()) {
    const auto set = sigma::xg_sigma1_complement(S).set;
    auto rep = oracle::cross_check(set, [&](const geom::RayPoint& p) { return sigma::theoremA_pointwise(p, S); },
                                   xg_rays(S, kSeed + datasets, false), kSeed + datasets);
    samples += rep.samples;
    ++datasets;
    o.require(rep.pass(), S.owner().name() + ": " + std::to_string(rep.mismatches.size()) + " mismatches");
  }
  o.require(datasets >= 6, "fewer than 6 datasets");
  o.detail << datasets << " datasets, " << samples << " rays; ";
}

void c3(Outcome& o) {
  std::size_t samples = 0, runs = 0;
  for (const auto& S : testing::corpus()) {
    const auto rays = xg_rays(S, kSeed + runs, true);
    for (Coeff c : {Coeff::Z, Coeff::HTPY}) {
      const auto set = sigma::xg_mod_w_sigma2_complement(S, c).set;
      auto rep = oracle::cross_check(set, [&](const geom::RayPoint& p) { return sigma::e1_pointwise(p, S, c); }, rays,
                                     kSeed + runs);
      samples += rep.samples;
      ++runs;
      o.require(rep.pass(), S.owner().name() + " " + group::to_string(c) + ": " +
                                std::to_string(rep.mismatches.size()) + " mismatches");
    }
  }
  o.detail << runs << " runs, " << samples << " rays; ";
}

void c4(Outcome& o) {
  const SigmaData f2 = group::catalog_lookup("free(2)");
  for (Coeff c : {Coeff::Z, Coeff::HTPY}) {
    o.require(geom::equal(sigma::xg_mod_w_sigma2_complement(f2, c).set, SphSet::full(4)),
              std::string("X(G)/W complement not full for ") + group::to_string(c));
  }
  const auto r = sigma::xg_sigma2_complement(f2, Coeff::Z);
  o.require(geom::equal(r.set, SphSet::full(4)), "X(G) complement not full");
  o.require(r.exactness == sigma::Exactness::EXACT, "X(G) complement not EXACT");
  o.require(r.provenance == sigma::tag::kXgSigma2Vanishes, "unexpected rule " + r.provenance);
}

void c5(Outcome& o) {
  for (int n = 1; n <= 3; ++n) {
    const SigmaData z = group::catalog_lookup("free_abelian(" + std::to_string(n) + ")");
    const std::string name = z.owner().name();
    const std::size_t dim = 2 * static_cast<std::size_t>(n);
    o.require(geom::equal(sigma::xg_sigma1_complement(z).set, SphSet::empty(dim)), name + ": sigma1");
    for (Coeff c : {Coeff::Z, Coeff::HTPY}) {
      o.require(geom::equal(sigma::xg_mod_w_sigma2_complement(z, c).set, SphSet::empty(dim)), name + ": X(G)/W sigma2");
      const auto r = sigma::xg_sigma2_complement(z, c);
      o.require(geom::equal(r.set, SphSet::empty(dim)) && r.exactness == sigma::Exactness::EXACT, name + ": X(G) sigma2");
    }
    std::vector<RatVec> full;
    for (std::size_t i = 0; i < dim; ++i) {
      RatVec e(dim, Rat(0));
      e[i] = 1;
      full.push_back(e);
    }
    const auto rep = sigma::corollary_b2_report(z, full);
    o.require(rep.n_fg && rep.direct_fg && rep.paths_agree, name + ": N not reported finitely generated");
    for (bool p : rep.projection_fg) o.require(p, name + ": a projection not finitely generated");
  }
}

void c6(Outcome& o) {
  const std::vector<std::tuple<int, int, Coeff>> cases{{2, 1, Coeff::Z},       {2, 2, Coeff::Z},
                                                       {3, 1, Coeff::Z},       {3, 2, Coeff::Z},
                                                       {3, 3, Coeff::FIELD_Q}, {4, 3, Coeff::FIELD_Q}};
  for (const auto& [s, n, c] : cases) {
    const auto rep = sigma::f2s_pattern_check(s, n, c, kSeed, 25);
    o.detail << "(" << s << "," << n << "," << group::to_string(c) << ") " << rep.samples << " ok; ";
    o.require(rep.pass(), "pattern (" + std::to_string(s) + "," + std::to_string(n) + ") failed on " +
                              std::to_string(rep.failures.size()) + " characters");
  }
}

std::vector<RatVec> random_subspace(std::mt19937_64& rng, std::size_t half) {
  const std::size_t dim = 2 * half;
  std::uniform_int_distribution<int> entry(-3, 3), den(1, 3), kind(0, 2);
  std::uniform_int_distribution<std::size_t> count(0, dim);
  auto vec = [&](std::size_t d) {
    RatVec v(d);
    for (auto& x : v) {
      x = Rat(entry(rng), den(rng));
      x.canonicalize();
    }
    return v;
  };
  std::vector<RatVec> U;
  const std::size_t k = count(rng);
  for (std::size_t i = 0; i < k; ++i) {
    if (kind(rng) == 0) {
      U.push_back(vec(dim));
      continue;
    }
    // vectors along the special loci (u,0), (0,u), (u,u)
    const RatVec u = vec(half);
    RatVec w(dim, Rat(0));
    const int which = kind(rng);
    for (std::size_t j = 0; j < half; ++j) {
      if (which != 2) w[j] = u[j];
      if (which != 1) w[half + j] = u[j];
    }
    U.push_back(w);
  }
  return U;
}

void c7(Outcome& o) {
  std::mt19937_64 rng(kSeed);
  std::size_t verdicts = 0, fg = 0;
  for (const auto& S : testing::corpus()) {
    for (int t = 0; t < 50; ++t) {
      const auto U = random_subspace(rng, S.dim());
      const auto rep = sigma::corollary_b2_report(S, U);
      ++verdicts;
      fg += rep.n_fg;
      o.require(rep.paths_agree && rep.n_fg == rep.direct_fg, S.owner().name() + ": paths disagree");
    }
  }
  o.detail << verdicts << " verdicts, " << fg << " finitely generated; ";
}

void c8(Outcome& o) {
  std::size_t n = 0;
  for (const auto& S : testing::corpus()) {
    const std::string name = S.owner().name();
    const auto s1 = sigma::xg_sigma1_complement(S).set;
    for (Coeff c : {Coeff::Z, Coeff::HTPY}) {
      const auto parts = sigma::corollary_g_parts(S, c);
      SphSet u = geom::set_union(geom::set_union(parts.V[0], parts.V[1]), parts.V[2]);
      o.require(geom::equal(u, s1), name + ": V1 u V2 u V3 differs");
      o.require(parts.union_matches && parts.pieces_match, name + ": partition pieces");
      o.require(geom::contains(sigma::xg_mod_w_sigma2_complement(S, c).set, s1), name + ": X(G)/W monotonicity");
      o.require(geom::contains(sigma::xg_sigma2_complement(S, c).set, s1), name + ": X(G) monotonicity");
      ++n;
    }
  }
  o.detail << n << " dataset/coefficient pairs; ";
}

void c9(Outcome& o) {
  std::mt19937_64 rng(kSeed);
  // double description round trips
  for (int t = 0; t < 200; ++t) {
    const std::size_t dim = 1 + static_cast<std::size_t>(t % 4);
    const geom::Cell c = testing::random_cell(rng, dim, 6);
    const geom::ConeV v = geom::h_to_v(c);
    bool inside = true;
    for (const auto& r : v.rays) inside = inside && c.contains_point(r);
    for (const auto& l : v.lineality) {
      IntVec neg = l;
      for (auto& x : neg) x = -x;
      inside = inside && c.contains_point(l) && c.contains_point(neg);
    }
    o.require(inside, "generator outside its cone");
    o.require(geom::equal(SphSet::single(c), SphSet::single(geom::v_to_h(v))), "round trip changed a cone");
  }

  // join membership law
  std::size_t join_samples = 0;
  for (int pairing = 0; pairing < 8; ++pairing) {
    const std::size_t da = 1 + static_cast<std::size_t>(pairing % 2), db = 1 + static_cast<std::size_t>(pairing / 2 % 2);
    const SphSet a = testing::random_set(rng, da, 2, 2), b = testing::random_set(rng, db, 2, 2);
    const SphSet j = geom::join(a, b);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int k = 0; k < 1000;) {
      IntVec x(da + db);
      for (auto& c : x) c = d(rng);
      if (k % 4 == 1)
        for (std::size_t i = 0; i < da; ++i) x[i] = 0;
      if (k % 4 == 2)
        for (std::size_t i = da; i < da + db; ++i) x[i] = 0;
      if (is_zero(x)) continue;
      ++k;
      const IntVec u(x.begin(), x.begin() + static_cast<long>(da)), v(x.begin() + static_cast<long>(da), x.end());
      const bool expect =
          (is_zero(u) || geom::member(geom::normalize_ray(u), a)) && (is_zero(v) || geom::member(geom::normalize_ray(v), b));
      o.require(geom::member(geom::normalize_ray(x), j) == expect, "join membership law");
      ++join_samples;
    }
  }

  // feasibility against grid search: corpus cells of dim <= 3 plus random systems
  std::size_t systems = 0;
  auto check = [&](const geom::FeasibilitySystem& sys) {
    ++systems;
    const bool f = geom::feasible(sys), g = testing::grid_feasible(sys, 6);
    o.require(f == g, "feasible() disagrees with grid search");
  };
  for (const auto& S : testing::corpus()) {
    if (S.dim() > 3) continue;
    for (const auto& [key, set] : S.complements())
      for (const auto& c : set.cells) check(geom::FeasibilitySystem{c.dim, c.constraints});
  }
  for (int t = 0; t < 400; ++t) {
    const std::size_t dim = 1 + static_cast<std::size_t>(t % 3);
    const geom::Cell c = testing::random_cell(rng, dim, 5);
    check(geom::FeasibilitySystem{dim, c.constraints});
  }
  o.detail << "200 cones, " << join_samples << " join samples, " << systems << " systems; ";
}

void c10(Outcome& o) {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> num(-10, 10), den(1, 10);
  int witnesses = 0;
  while (witnesses < 100) {
    RatVec chi{Rat(num(rng), den(rng)), Rat(num(rng), den(rng))};
    for (auto& c : chi) c.canonicalize();
    if (is_zero(chi)) continue;
    const auto w = oracle::free_tree_sigma1_witness(2, chi, 6);
    o.require(w.has_value(), "no witness within radius 6 for " + format_vec(chi));
    if (w) o.require(oracle::verify_tree_witness(*w, 2, chi), "unsound witness for " + format_vec(chi));
    ++witnesses;
  }
  int probes = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int R = 1; R <= 6; ++R) {
      for (int t = 0; t < 4; ++t) {
        RatVec chi(n);
        do {
          for (auto& c : chi) {
            c = Rat(num(rng), den(rng));
            c.canonicalize();
          }
        } while (is_zero(chi));
        o.require(oracle::lattice_probe(n, chi, R), "lattice probe disconnected for " + format_vec(chi));
        ++probes;
      }
    }
  }
  o.detail << witnesses << " witnesses, " << probes << " lattice probes; ";
}

struct Run {
  std::string out;
  int code = -1;
  bool operator==(const Run&) const = default;
};

Run run(const std::string& cmd) {
  Run r;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) throw std::runtime_error("cannot run " + cmd);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

void c11(Outcome& o, const Config& cfg) {
  // corpus round trips
  const auto corpus = testing::corpus();
  std::size_t files = 0;
  for (const auto& d : corpus) {
    const std::string text = io::serialize(d);
    const auto back = io::parse_document(text);
    o.require(std::get<SigmaData>(back) == d && io::serialize(back) == text, d.owner().name() + ": in-memory round trip");
  }
  for (const auto& entry : fs::directory_iterator(cfg.corpus_dir)) {
    if (entry.path().extension() != ".sigma") continue;
    const std::string text = io::read_file(entry.path().string());
    const auto doc = io::parse_document(text);
    o.require(io::serialize(doc) == text, entry.path().filename().string() + ": not canonical");
    const auto& S = std::get<SigmaData>(doc);
    bool known = false;
    for (const auto& d : corpus) known = known || d == S;
    o.require(known, entry.path().filename().string() + ": differs from the built-in corpus");
    ++files;
  }
  o.require(files >= corpus.size(), "corpus directory incomplete");

  // CLI determinism
  const fs::path tmp = fs::temp_directory_path() / ("xgsigma_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  const fs::path dir = cfg.corpus_dir;
  const std::string x = q(cfg.cli);
  const SigmaData tq = testing::corpus()[7];
  io::write_file((tmp / "a.sphset").string(), io::serialize(*tq.stored(1, Coeff::Z)));
  io::write_file((tmp / "b.sphset").string(), io::serialize(*tq.stored(2, Coeff::HTPY)));
  io::write_file((tmp / "u2.txt").string(), "1 1\n");
  io::write_file((tmp / "u4.txt").string(), "1 0 -1 0\n0 1 0 -1\n");
  const std::string A = q(tmp / "a.sphset"), B = q(tmp / "b.sphset");

  std::vector<std::string> cmds{x + " catalog list", x + " catalog show 'bs(1,2)'", x + " catalog show 'free(3)'"};
  for (const char* f : {"free_2", "free_abelian_2", "third_quadrant", "multi_cell_dim3", "free_2_x_free_abelian_1"}) {
    const std::string in = " -i " + q(dir / (std::string(f) + ".sigma"));
    cmds.push_back(x + " xg sigma1" + in);
    cmds.push_back(x + " xgmodw sigma2 --coeff z" + in);
    cmds.push_back(x + " xgmodw sigma2 --coeff htpy" + in);
    cmds.push_back(x + " xg sigma2 --coeff z" + in);
    cmds.push_back(x + " xg sigma2 --coeff htpy --w-fg" + in);
    cmds.push_back(x + " nu invariants" + in);
    cmds.push_back(x + " tensor report" + in);
    cmds.push_back(x + " canon" + in);
    cmds.push_back(x + " verify theorem-a --samples 300" + in);
    cmds.push_back(x + " --seed 11 verify e1 --samples 300" + in);
  }
  const std::string tqi = " -i " + q(dir / "third_quadrant.sigma");
  cmds.push_back(x + " fgtest --dim 1 --subspace " + q(tmp / "u2.txt") + tqi);
  cmds.push_back(x + " fgtest --dim 2 --coeff htpy --subspace " + q(tmp / "u2.txt") + tqi);
  cmds.push_back(x + " b2report --subspace " + q(tmp / "u4.txt") + tqi);
  cmds.push_back(x + " product --dim 2 --coeff z -a " + q(dir / "free_2.sigma") + " -b " + q(dir / "free_2.sigma"));
  cmds.push_back(x + " product --dim 2 --coeff q -a " + q(dir / "third_quadrant.sigma") + " -b " + q(dir / "half_line.sigma"));
  for (const char* op : {"union", "intersect", "join", "conesum", "contains", "equal"})
    cmds.push_back(x + " set " + op + " -a " + A + " -b " + B);
  cmds.push_back(x + " set member -a " + B + " --ray 1,1");
  cmds.push_back(x + " oracle tree-witness --rank 2 --chi 1,1 --radius 3");
  cmds.push_back(x + " oracle tree-witness --rank 3 --chi 1/2,-1,2 --radius 4");
  cmds.push_back(x + " oracle lattice --n 2 --chi 2,-3 --radius 4");
  cmds.push_back(x + " xg sigma1 -i " + q(tmp / "missing.sigma"));
  cmds.push_back(x + " product --dim 3 --coeff z -a " + q(dir / "free_2.sigma") + " -b " + q(dir / "free_2.sigma"));

  std::size_t ok = 0;
  for (const auto& c : cmds) {
    const Run first = run(c), second = run(c);
    o.require(first == second, "output differs between runs: " + c);
    o.require(first.code >= 0 && first.code <= 2, "bad exit code: " + c);
    ok += first == second;
  }
  // -o writes the same bytes as stdout
  const std::string sigma1 = x + " xg sigma1 -i " + q(dir / "free_2.sigma");
  run(sigma1 + " -o " + q(tmp / "out1"));
  o.require(io::read_file((tmp / "out1").string()) == run(sigma1).out, "-o differs from stdout");
  fs::remove_all(tmp);
  o.detail << files << " corpus files, " << ok << "/" << cmds.size() << " commands deterministic; ";
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string k = argv[i];
    if (k == "--cli") cfg.cli = argv[i + 1];
    else if (k == "--corpus") cfg.corpus_dir = argv[i + 1];
  }
  if (cfg.cli.empty() || cfg.corpus_dir.empty()) {
    std::cerr << "usage: acceptance --cli PATH --corpus DIR\n";
    return 2;
  }
  int failures = 0;
  failures += run_criterion(1, "X(F2) sigma1 complement", 1, c1);
  failures += run_criterion(2, "sigma1 pointwise agreement", 30, c2);
  failures += run_criterion(3, "X(G)/W sigma2 pointwise agreement", 60, c3);
  failures += run_criterion(4, "limit group collapse", 1, c4);
  failures += run_criterion(5, "abelian collapse", 1, c5);
  failures += run_criterion(6, "direct products of free groups", 120, c6);
  failures += run_criterion(7, "finite generation by two paths", 60, c7);
  failures += run_criterion(8, "partition and monotonicity", 0, c8);
  failures += run_criterion(9, "geometry engine soundness", 120, c9);
  failures += run_criterion(10, "tree and lattice oracles", 30, c10);
  failures += run_criterion(11, "determinism and round trips", 0, [&](Outcome& o) { c11(o, cfg); });
  std::cout << (failures == 0 ? "all criteria PASS" : std::to_string(failures) + " criteria FAIL") << std::endl;
  return failures == 0 ? 0 : 1;
}
