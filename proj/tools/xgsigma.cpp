// Command-line front end. Exit codes: 0 success or true, 1 false, 2 error.

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>

#include "xgsigma/errors.hpp"
#include "xgsigma/geometry/cone.hpp"
#include "xgsigma/group/catalog.hpp"
#include "xgsigma/io/format.hpp"
#include "xgsigma/oracle/oracles.hpp"
#include "xgsigma/sigma/calculus.hpp"

using namespace xgs;
using group::Coeff;
using group::SigmaData;
using io::Report;
using io::ResultDoc;

namespace {

struct Options {
  std::uint64_t seed = 1;
  std::size_t branch_cap = geom::Limits{}.branch_cap;
  std::string input, output, a, b, subspace, ray, chi;
  std::string coeff = "z";
  int dim = 1, rank = 2, radius = 3;
  std::size_t n = 2, samples = 1000;
  bool w_fg = false;
};

geom::Limits limits(const Options& o) { return geom::Limits{o.branch_cap}; }

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") std::cout << text;
  else io::write_file(path, text);
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  return io::read_file(path);
}

SigmaData load_sigma(const std::string& path) {
  io::Document d = io::parse_document(read_input(path));
  if (auto* s = std::get_if<SigmaData>(&d)) return std::move(*s);
  throw Error(ErrorKind::InvalidArgument, "expected a sigma document, got " + std::string(io::kind_name(d)));
}

Coeff coeff_of(const std::string& s) { return group::parse_coeff(s); }

const char* yes_no(bool b) { return b ? "true" : "false"; }

ResultDoc result_doc(std::string operation, const SigmaData& S, sigma::SigmaResult r) {
  r.set = geom::canonical(std::move(r.set));
  return ResultDoc{io::kToolVersion, std::move(operation), S.owner().name(), std::move(r)};
}

void add_verdict_fields(Report& rep, const sigma::Verdict& v) {
  rep.add("verdict", yes_no(v.value));
  rep.add("exactness", sigma::to_string(v.exactness));
  rep.add("provenance", v.provenance);
  for (const auto& h : v.hypotheses) rep.add("hypothesis", h);
  for (const auto& [name, t] : v.flags_consumed) rep.add("consumed", name + " " + group::to_string(t));
}

std::string format_word(const group::Word& w, std::size_t k) {
  const auto names = group::default_generator_names(k);
  std::string out;
  for (int l : w) {
    if (!out.empty()) out += ' ';
    out += names[static_cast<std::size_t>(std::abs(l)) - 1];
    if (l < 0) out += "^-1";
  }
  return out;
}

std::vector<geom::RayPoint> verification_rays(const SigmaData& S, const Options& o) {
  const std::size_t dim = 2 * S.dim();
  auto rays = oracle::sample_rays(dim, oracle::Sampler::grid(4, o.samples));
  auto random = oracle::sample_rays(dim, oracle::Sampler::random(o.samples, o.seed));
  auto boundary = oracle::xg_boundary_rays(S, std::max<std::size_t>(1, o.samples / 20), o.seed);
  rays.insert(rays.end(), random.begin(), random.end());
  rays.insert(rays.end(), boundary.begin(), boundary.end());
  return rays;
}

int print_check(const std::string& label, const oracle::CrossCheckReport& rep) {
  std::cout << label << ": " << rep.samples << " samples, seed " << rep.seed << ", " << rep.mismatches.size()
            << " mismatches\n";
  for (const auto& m : rep.mismatches) std::cout << "  mismatch " << format_vec(m.coords()) << '\n';
  return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* cap = std::getenv("XGSIGMA_BRANCH_CAP")) {
    try {
      o.branch_cap = std::stoull(cap);
    } catch (const std::exception&) {
      std::cerr << "xgsigma: ignoring bad XGSIGMA_BRANCH_CAP '" << cap << "'\n";
    }
  }

  CLI::App app{"Sigma-invariant complements of weak commutativity constructions"};
  app.set_version_flag("--version", io::kToolVersion);
  app.add_option("--seed", o.seed, "Seed for every randomized path")->capture_default_str();
  app.add_option("--branch-cap", o.branch_cap, "Region cap for containment tests")->capture_default_str();
  app.require_subcommand(1);

  std::function<int()> action;
  auto in = [&](CLI::App* c, bool required = true) {
    auto* opt = c->add_option("-i,--input", o.input, "Input document ('-' for stdin)");
    if (required) opt->required();
  };
  auto out = [&](CLI::App* c) { c->add_option("-o,--output", o.output, "Output file (default stdout)"); };
  auto coeff = [&](CLI::App* c, std::vector<std::string> allowed) {
    c->add_option("--coeff", o.coeff, "Coefficients")->check(CLI::IsMember(allowed))->capture_default_str();
  };

  // catalog
  auto* catalog = app.add_subcommand("catalog", "Built-in groups")->require_subcommand(1);
  catalog->add_subcommand("list", "List catalog families")->callback([&] {
    action = [&] {
      for (const auto& f : group::catalog_families()) std::cout << f << '\n';
      return 0;
    };
  });
  std::string entry;
  auto* show = catalog->add_subcommand("show", "Print the sigma document of an entry");
  show->add_option("name", entry, "e.g. free(2)")->required();
  out(show);
  show->callback([&] { action = [&] { emit(io::serialize(group::catalog_lookup(entry)), o.output); return 0; }; });

  // xg
  auto* xg = app.add_subcommand("xg", "Invariants of X(G)")->require_subcommand(1);
  auto* xg1 = xg->add_subcommand("sigma1", "Sigma^1(X(G)) complement");
  in(xg1), out(xg1);
  xg1->callback([&] {
    action = [&] {
      const SigmaData S = load_sigma(o.input);
      emit(io::serialize(result_doc("xg sigma1", S, sigma::xg_sigma1_complement(S, limits(o)))), o.output);
      return 0;
    };
  });
  auto* xg2 = xg->add_subcommand("sigma2", "Sigma^2(X(G)) complement");
  in(xg2), out(xg2), coeff(xg2, {"z", "htpy"});
  xg2->add_flag("--w-fg", o.w_fg, "Assert that W(G) is finitely generated");
  xg2->callback([&] {
    action = [&] {
      const SigmaData S = load_sigma(o.input);
      auto r = sigma::xg_sigma2_complement(S, coeff_of(o.coeff), o.w_fg, limits(o));
      emit(io::serialize(result_doc("xg sigma2 " + o.coeff, S, std::move(r))), o.output);
      return 0;
    };
  });

  auto* modw = app.add_subcommand("xgmodw", "Invariants of X(G)/W(G)")->require_subcommand(1);
  auto* modw2 = modw->add_subcommand("sigma2", "Sigma^2(X(G)/W(G)) complement");
  in(modw2), out(modw2), coeff(modw2, {"z", "htpy"});
  modw2->callback([&] {
    action = [&] {
      const SigmaData S = load_sigma(o.input);
      auto r = sigma::xg_mod_w_sigma2_complement(S, coeff_of(o.coeff), limits(o));
      emit(io::serialize(result_doc("xgmodw sigma2 " + o.coeff, S, std::move(r))), o.output);
      return 0;
    };
  });

  // nu
  auto* nu = app.add_subcommand("nu", "Invariants of nu(G)")->require_subcommand(1);
  auto* nuinv = nu->add_subcommand("invariants", "Sigma^1 and Sigma^2 complements");
  in(nuinv), out(nuinv);
  nuinv->callback([&] {
    action = [&] {
      const SigmaData S = load_sigma(o.input);
      const auto inv = sigma::nu_invariants(S, limits(o));
      std::string text;
      auto part = [&](const char* op, const sigma::NuPart& p) {
        if (p.result) {
          text += io::serialize(result_doc(op, S, *p.result));
        } else {
          Report rep;
          rep.operation = op;
          rep.add("input", S.owner().name());
          rep.add("unavailable", p.unavailable);
          text += io::serialize(rep);
        }
      };
      part("nu sigma1", inv.sigma1c);
      part("nu sigma2 z", inv.sigma2c_z);
      part("nu sigma2 htpy", inv.sigma2c_htpy);
      emit(text, o.output);
      return 0;
    };
  });

  // product
  auto* product = app.add_subcommand("product", "Sigma^n complement of G1 x G2");
  product->add_option("--dim", o.dim, "Degree n")->required()->check(CLI::Range(1, 64));
  coeff(product, {"q", "z"});
  product->add_option("-a", o.a, "First factor")->required();
  product->add_option("-b", o.b, "Second factor")->required();
  out(product);
  product->callback([&] {
    action = [&] {
      const SigmaData A = load_sigma(o.a), B = load_sigma(o.b);
      auto r = sigma::product_sigma_complement(A, B, o.dim, coeff_of(o.coeff));
      r.set = geom::canonical(std::move(r.set));
      ResultDoc doc{io::kToolVersion, "product " + std::to_string(o.dim) + " " + o.coeff,
                    A.owner().name() + " x " + B.owner().name(), std::move(r)};
      emit(io::serialize(doc), o.output);
      return 0;
    };
  });

  // fgtest
  auto* fgtest = app.add_subcommand("fgtest", "Is the subgroup with character space U of type FP_n?");
  fgtest->add_option("--dim", o.dim, "n (1: finite generation)")->required()->check(CLI::Range(1, 64));
  fgtest->add_option("--subspace", o.subspace, "Spanning vectors of U, one per line")->required();
  coeff(fgtest, {"z", "htpy"});
  in(fgtest), out(fgtest);
  fgtest->callback([&] {
    action = [&] {
      const SigmaData S = load_sigma(o.input);
      const auto U = io::parse_subspace(io::read_file(o.subspace), S.dim());
      const auto v = sigma::fg_subgroup_test(S, o.dim, U, coeff_of(o.coeff));
      Report rep;
      rep.operation = "fgtest " + std::to_string(o.dim) + " " + o.coeff;
      rep.add("input", S.owner().name());
      add_verdict_fields(rep, v);
      emit(io::serialize(rep), o.output);
      return v.value ? 0 : 1;
    };
  });

  // b2report
  auto* b2 = app.add_subcommand("b2report", "Finite generation of N >= X(G)' by two paths");
  b2->add_option("--subspace", o.subspace, "Characters of X(G) vanishing on N")->required();
  in(b2), out(b2);
  b2->callback([&] {
    action = [&] {
      const SigmaData S = load_sigma(o.input);
      const auto U = io::parse_subspace(io::read_file(o.subspace), 2 * S.dim());
      const auto r = sigma::corollary_b2_report(S, U, limits(o));
      Report rep;
      rep.operation = "b2report";
      rep.add("input", S.owner().name());
      for (int i = 0; i < 3; ++i) {
        const std::string p = "pi" + std::to_string(i + 1);
        rep.add(p + "_fg", yes_no(r.projection_fg[i]));
        for (const auto& u : r.projected_U[i]) rep.add(p + "_span", format_vec(u));
      }
      rep.add("n_fg", yes_no(r.n_fg));
      rep.add("direct_fg", yes_no(r.direct_fg));
      rep.add("paths_agree", yes_no(r.paths_agree));
      rep.add("exactness", sigma::to_string(r.exactness));
      for (const auto& h : r.hypotheses) rep.add("hypothesis", h);
      emit(io::serialize(rep), o.output);
      if (!r.paths_agree) {
        std::cerr << "xgsigma: the projection and direct paths disagree\n";
        return 2;
      }
      return r.n_fg ? 0 : 1;
    };
  });

  // tensor
  auto* tensor = app.add_subcommand("tensor", "Non-abelian tensor square")->require_subcommand(1);
  auto* treport = tensor->add_subcommand("report", "Finiteness properties implied by the flags");
  in(treport), out(treport);
  treport->callback([&] {
    action = [&] {
      const SigmaData S = load_sigma(o.input);
      const auto t = sigma::tensor_square_report(S.owner());
      Report rep;
      rep.operation = "tensor report";
      rep.add("input", S.owner().name());
      rep.add("tensor_fp", group::to_string(t.tensor_fp));
      rep.add("tensor_fp2", group::to_string(t.tensor_fp2));
      rep.add("xg_commutator_fg", group::to_string(t.xg_commutator_fg));
      rep.add("xg_commutator_fp2", group::to_string(t.xg_commutator_fp2));
      rep.add("xg_commutator_fp", group::to_string(t.xg_commutator_fp));
      rep.add("w_fg", group::to_string(t.w_fg));
      for (const auto& n : t.notes) rep.add("note", n);
      emit(io::serialize(rep), o.output);
      return 0;
    };
  });

  // set
  auto* set = app.add_subcommand("set", "Operations on sphset documents")->require_subcommand(1);
  auto binary = [&](const char* name, const char* help, std::function<int(const geom::SphSet&, const geom::SphSet&)> f) {
    auto* c = set->add_subcommand(name, help);
    c->add_option("-a", o.a, "First set")->required();
    c->add_option("-b", o.b, "Second set")->required();
    out(c);
    c->callback([&, f] { action = [&, f] { return f(io::load_sphset(o.a), io::load_sphset(o.b)); }; });
  };
  auto emit_set = [&](const geom::SphSet& s) {
    emit(io::serialize(geom::canonical(s)), o.output);
    return 0;
  };
  auto emit_bool = [&](const char* op, bool v) {
    Report rep;
    rep.operation = std::string("set ") + op;
    rep.add("verdict", yes_no(v));
    emit(io::serialize(rep), o.output);
    return v ? 0 : 1;
  };
  binary("union", "a u b", [&](const auto& a, const auto& b) { return emit_set(geom::set_union(a, b)); });
  binary("intersect", "a n b", [&](const auto& a, const auto& b) { return emit_set(geom::set_intersect(a, b)); });
  binary("join", "a * b", [&](const auto& a, const auto& b) { return emit_set(geom::join(a, b)); });
  binary("conesum", "cone(a) + cone(b)", [&](const auto& a, const auto& b) { return emit_set(geom::cone_sum(a, b)); });
  binary("contains", "b inside a", [&](const auto& a, const auto& b) {
    return emit_bool("contains", geom::contains(a, b, limits(o)));
  });
  binary("equal", "a = b", [&](const auto& a, const auto& b) { return emit_bool("equal", geom::equal(a, b, limits(o))); });
  auto* mem = set->add_subcommand("member", "Is the ray in the set?");
  mem->add_option("-a", o.a, "Set")->required();
  mem->add_option("--ray", o.ray, "Comma-separated rational vector")->required();
  out(mem);
  mem->callback([&] {
    action = [&] {
      const geom::SphSet s = io::load_sphset(o.a);
      const RatVec v = parse_rat_list(o.ray);
      require_dim(s.dim, v.size(), "set member");
      return emit_bool("member", geom::member(geom::normalize_ray(v), s));
    };
  });

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Independent oracles")->require_subcommand(1);
  auto* tree = oracle_cmd->add_subcommand("tree-witness", "Search a Cayley tree for a Sigma^1 non-membership witness");
  tree->add_option("--rank", o.rank, "Rank k >= 2 of the free group")->required();
  tree->add_option("--chi", o.chi, "Comma-separated rational character")->required();
  tree->add_option("--radius", o.radius, "Word length bound")->required()->check(CLI::Range(0, 16));
  out(tree);
  tree->callback([&] {
    action = [&] {
      const RatVec chi = parse_rat_list(o.chi);
      const auto w = oracle::free_tree_sigma1_witness(o.rank, chi, o.radius);
      Report rep;
      rep.operation = "oracle tree-witness";
      rep.add("rank", std::to_string(o.rank));
      rep.add("chi", format_vec(chi));
      rep.add("radius", std::to_string(o.radius));
      rep.add("found", yes_no(w.has_value()));
      if (w) {
        rep.add("word", format_word(w->word, static_cast<std::size_t>(o.rank)));
        rep.add("chi_value", format_rat(w->chi_value));
        rep.add("dip_prefix_index", std::to_string(w->dip_prefix_index));
        rep.add("verified", yes_no(oracle::verify_tree_witness(*w, o.rank, chi)));
      }
      emit(io::serialize(rep), o.output);
      return w ? 0 : 1;
    };
  });
  auto* lattice = oracle_cmd->add_subcommand("lattice", "Connectivity of the half-space lattice graph");
  lattice->add_option("--n", o.n, "Rank of Z^n")->required()->check(CLI::Range(1, 4));
  lattice->add_option("--chi", o.chi, "Comma-separated rational character")->required();
  lattice->add_option("--radius", o.radius, "Box radius")->required()->check(CLI::Range(1, 12));
  out(lattice);
  lattice->callback([&] {
    action = [&] {
      const RatVec chi = parse_rat_list(o.chi);
      require_dim(o.n, chi.size(), "oracle lattice");
      const bool ok = oracle::lattice_probe(o.n, chi, o.radius);
      Report rep;
      rep.operation = "oracle lattice";
      rep.add("n", std::to_string(o.n));
      rep.add("chi", format_vec(chi));
      rep.add("radius", std::to_string(o.radius));
      rep.add("connected", yes_no(ok));
      emit(io::serialize(rep), o.output);
      return ok ? 0 : 1;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Cross-check constructions against case logic")->require_subcommand(1);
  auto* va = verify->add_subcommand("theorem-a", "Sigma^1(X(G)) pointwise against the polyhedral set");
  auto* ve = verify->add_subcommand("e1", "Sigma^2(X(G)/W(G)) pointwise against the polyhedral set");
  for (auto* c : {va, ve}) {
    in(c);
    c->add_option("--samples", o.samples, "Grid and random rays, each")->capture_default_str()->check(CLI::Range(1, 1000000));
    c->add_option("--seed", o.seed, "Seed (same as the global option)");
  }
  o.coeff = "z";
  std::string e1_coeff = "all";
  ve->add_option("--coeff", e1_coeff, "z, htpy or all")->check(CLI::IsMember({"z", "htpy", "all"}))->capture_default_str();
  va->callback([&] {
    action = [&] {
      const SigmaData S = load_sigma(o.input);
      const auto set = sigma::xg_sigma1_complement(S, limits(o)).set;
      auto rep = oracle::cross_check(set, [&](const geom::RayPoint& p) { return sigma::theoremA_pointwise(p, S); },
                                     verification_rays(S, o), o.seed);
      return print_check("theorem-a " + S.owner().name(), rep);
    };
  });
  ve->callback([&] {
    action = [&] {
      const SigmaData S = load_sigma(o.input);
      const auto rays = verification_rays(S, o);
      int code = 0, checked = 0;
      for (Coeff c : {Coeff::Z, Coeff::HTPY}) {
        const std::string name = group::to_string(c);
        if (e1_coeff != "all" && e1_coeff != name) continue;
        std::optional<geom::SphSet> set;
        try {
          set = sigma::xg_mod_w_sigma2_complement(S, c, limits(o)).set;
        } catch (const Error& e) {
          if (e1_coeff != "all" || e.kind() != ErrorKind::MissingSigma) throw;
          std::cout << "e1 " << name << " " << S.owner().name() << ": skipped, no degree-2 data\n";
          continue;
        }
        ++checked;
        auto rep = oracle::cross_check(*set, [&](const geom::RayPoint& p) { return sigma::e1_pointwise(p, S, c); },
                                       rays, o.seed);
        code = std::max(code, print_check("e1 " + name + " " + S.owner().name(), rep));
      }
      if (checked == 0) throw Error(ErrorKind::MissingSigma, S.owner().name() + ": no degree-2 complements to verify");
      return code;
    };
  });

  // canon
  auto* canon = app.add_subcommand("canon", "Rewrite documents in canonical form");
  in(canon), out(canon);
  canon->callback([&] {
    action = [&] {
      std::string text;
      for (auto& d : io::parse_stream(read_input(o.input))) {
        if (auto* s = std::get_if<geom::SphSet>(&d)) *s = geom::canonical(std::move(*s));
        if (auto* r = std::get_if<ResultDoc>(&d)) r->result.set = geom::canonical(std::move(r->result.set));
        if (auto* r = std::get_if<Report>(&d))
          for (auto& [name, s] : r->sets) s = geom::canonical(std::move(s));
        text += io::serialize(d);
      }
      emit(text, o.output);
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cout, std::cerr);
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const ParseError& e) {
    std::cerr << "xgsigma: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "xgsigma: " << e.what() << '\n';
    return 2;
  }
}
