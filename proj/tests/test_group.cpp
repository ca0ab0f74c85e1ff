#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "xgsigma/errors.hpp"
#include "xgsigma/group/catalog.hpp"
#include "xgsigma/group/charmap.hpp"
#include "xgsigma/group/snf.hpp"

using namespace xgs;
using namespace xgs::group;

namespace {

IntMatrix imat(std::vector<std::vector<long>> rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

// Cofactor expansion, independent of the library's Bareiss routine.
BigInt cofactor_det(const std::vector<std::vector<BigInt>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  BigInt out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<BigInt> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    BigInt term = a[0][j] * cofactor_det(minor);
    out += (j % 2 == 0) ? term : BigInt(-term);
  }
  return out;
}

// gcd of all k x k minors of a 3x3 matrix.
BigInt minor_gcd(const IntMatrix& m, std::size_t k) {
  BigInt g = 0;
  std::vector<std::size_t> idx{0, 1, 2};
  auto subsets = [&](auto&& self, std::size_t start, std::vector<std::size_t>& cur,
                     std::vector<std::vector<std::size_t>>& out) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < 3; ++i) {
      cur.push_back(i);
      self(self, i + 1, cur, out);
      cur.pop_back();
    }
  };
  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::size_t> cur;
  subsets(subsets, 0, cur, sets);
  for (const auto& r : sets)
    for (const auto& c : sets) {
      std::vector<std::vector<BigInt>> sub(k, std::vector<BigInt>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(r[i], c[j]);
      BigInt d = abs(cofactor_det(sub));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

bool is_diagonal_divisible(const IntMatrix& d) {
  const std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) < 0) return false;
    if (i + 1 < n && d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0) return false;
    if (i + 1 < n && d(i, i) == 0 && d(i + 1, i + 1) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("smith normal form basics") {
  CHECK(smith_normal_form(imat({{2}})).D == imat({{2}}));
  CHECK(smith_normal_form(imat({{1, 0}, {0, 0}})).D == imat({{1, 0}, {0, 0}}));
  auto f = smith_normal_form(imat({{2, 4}, {6, 8}}));
  CHECK(f.D == imat({{2, 0}, {0, 4}}));
}

TEST_CASE("smith normal form on random 3x3 matrices matches the minor-gcd chain") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int t = 0; t < 60; ++t) {
    IntMatrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = d(rng);
    auto f = smith_normal_form(a);
    CHECK(f.U * a * f.V == f.D);
    CHECK(abs(determinant(f.U)) == 1);
    CHECK(abs(determinant(f.V)) == 1);
    CHECK(is_diagonal_divisible(f.D));
    BigInt prod = 1;
    for (std::size_t k = 1; k <= 3; ++k) {
      prod *= f.D(k - 1, k - 1);
      CHECK(prod == minor_gcd(a, k));
    }
  }
}

TEST_CASE("abelianization") {
  auto f2 = abelianize(2, {});
  CHECK(f2.rank == 2);
  CHECK(f2.torsion.empty());

  // <a, t | t a t^-1 a^-2>
  auto bs = abelianize(2, {{2, 1, -2, -1, -1}});
  CHECK(bs.rank == 1);
  CHECK(bs.torsion.empty());
  // a is trivial in the abelianization, t generates
  CHECK(bs.projection(0, 0) == 0);
  CHECK(abs(BigInt(bs.projection(1, 0))) == 1);

  CHECK(abelianize(2, {commutator(1, 2)}).rank == 2);

  auto tor = abelianize(1, {{1, 1, 1, 1, 1, 1}});
  CHECK(tor.rank == 0);
  CHECK(tor.torsion == std::vector<BigInt>{6});

  CHECK_THROWS_AS(exponent_sums({3}, 2), Error);
  CHECK_THROWS_AS(exponent_sums({0}, 2), Error);
}

TEST_CASE("abelianization is invariant under relator permutation, inversion and conjugation") {
  std::vector<Word> rels{{1, 1, 2}, {2, 3, -1, 3}};
  auto base = abelianize(3, rels);
  std::vector<Word> moved{inverse(rels[1]), {2, 1, 1, 2, -2}};
  auto other = abelianize(3, moved);
  CHECK(base.rank == other.rank);
  CHECK(base.torsion == other.torsion);
}

TEST_CASE("induced character maps") {
  auto f2 = catalog_lookup("free(2)").owner();
  auto id = induced_char_map({{1}, {2}}, f2, f2);
  CHECK(id.matrix == to_rat(IntMatrix::identity(2)));

  // pi3 : X(G) -> G on generators g -> g, g_bar -> g
  auto model = xg_abelian_model(f2);
  auto pi3 = induced_char_map({{1}, {2}, {1}, {2}}, model, f2);
  CHECK(pi3.matrix == xg_space(f2).pi3_star.matrix);
  auto pi1 = induced_char_map({{1}, {2}, {}, {}}, model, f2);
  CHECK(pi1.matrix == xg_space(f2).pi1_star.matrix);

  // Not a homomorphism, but consistent at exponent-sum level.
  auto z2 = catalog_lookup("free_abelian(2)").owner();
  CHECK_NOTHROW(induced_char_map({{1}, {2}}, z2, f2));

  // BS(1,2) -> Z with a -> t is inconsistent at character level
  auto bs = catalog_lookup("bs(1,2)").owner();
  auto z1 = catalog_lookup("free_abelian(1)").owner();
  CHECK_THROWS_AS(induced_char_map({{1}, {1}}, bs, z1), Error);
  CHECK_NOTHROW(induced_char_map({{}, {1}}, bs, z1));
  CHECK_THROWS_AS(induced_char_map({{1}}, bs, z1), Error);
}

TEST_CASE("induced maps satisfy the evaluation contract on random characters") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> letter(1, 3), len(0, 4), sign(0, 1), val(-9, 9);
  auto f3 = catalog_lookup("free(3)").owner();
  auto f2 = catalog_lookup("free(2)").owner();
  for (int t = 0; t < 20; ++t) {
    std::vector<Word> images;
    for (int g = 0; g < 2; ++g) {
      Word w;
      for (int k = len(rng); k > 0; --k) w.push_back(sign(rng) ? letter(rng) : -letter(rng));
      images.push_back(w);
    }
    auto m = induced_char_map(images, f2, f3);
    for (int s = 0; s < 5; ++s) {
      RatVec chi{Rat(val(rng)), Rat(val(rng)), Rat(val(rng))};
      RatVec pulled = m(chi);
      for (int g = 0; g < 2; ++g) CHECK(f2.evaluate(pulled, Word{g + 1}) == f3.evaluate(chi, images[g]));
    }
  }
}

TEST_CASE("xg_space identities") {
  for (std::size_t n : {1, 2, 3}) {
    XGSpace x = xg_space(n);
    auto id = to_rat(IntMatrix::identity(n));
    CHECK(x.pi1_star.then(x.c1).matrix == id);
    CHECK(x.pi2_star.then(x.c2).matrix == id);
    CHECK(x.pi3_star.then(x.c1).matrix == id);
    CHECK(x.pi3_star.then(x.c2).matrix == id);
    CHECK(x.diag_cell.constraints.size() == n);
  }
  XGSpace one = xg_space(1);
  CHECK(one.c1.matrix == to_rat(imat({{1, 0}})));
  CHECK(one.c2.matrix == to_rat(imat({{0, 1}})));
  CHECK(one.pi3_star.matrix == to_rat(imat({{1}, {1}})));
  CHECK(one.rho_star.matrix == to_rat(imat({{1, 1, 0}, {0, 1, 1}})));
  // chi_1 = mu_1 + mu_2 and chi_2 = mu_2 + mu_3
  XGSpace two = xg_space(2);
  RatVec mu{Rat(1), Rat(2), Rat(3), Rat(5), Rat(7), Rat(11)};
  CHECK(two.rho_star.then(two.c1)(mu) == RatVec{Rat(4), Rat(7)});
  CHECK(two.rho_star.then(two.c2)(mu) == RatVec{Rat(10), Rat(16)});
}

TEST_CASE("the abelian model of X(G) has abelianization G^ab x G^ab") {
  for (const char* name : {"free(2)", "free_abelian(3)", "bs(1,2)", "bs(1,3)"}) {
    auto g = catalog_lookup(name).owner();
    auto x = xg_abelian_model(g);
    CHECK(x.ab_rank() == 2 * g.ab_rank());
    std::vector<BigInt> tor = g.torsion();
    tor.insert(tor.end(), g.torsion().begin(), g.torsion().end());
    std::sort(tor.begin(), tor.end());
    std::vector<BigInt> got = x.torsion();
    std::sort(got.begin(), got.end());
    CHECK(got == tor);
  }
}

TEST_CASE("catalog entries") {
  auto f2 = catalog_lookup("free(2)");
  CHECK(f2.dim() == 2);
  CHECK(geom::equal(f2.require(1, Coeff::Z), geom::SphSet::full(2)));
  CHECK(f2.owner().flags().gprime_fg == Tri::False);
  CHECK(f2.owner().flags().is_fp == Tri::True);
  CHECK_NOTHROW(f2.validate());

  auto z3 = catalog_lookup("free_abelian(3)");
  CHECK(z3.require(1, Coeff::Z).cells.empty());
  CHECK(z3.require(2, Coeff::HTPY).cells.empty());

  auto lim = catalog_lookup("nonabelian_limit_placeholder(4)");
  CHECK(lim.dim() == 4);
  CHECK(lim.sigma1_is_full());

  auto bs = catalog_lookup("bs(1,2)");
  CHECK(bs.dim() == 1);
  CHECK_FALSE(bs.complement(1, Coeff::Z).has_value());
  CHECK_THROWS_AS(bs.require(1, Coeff::Z), Error);

  CHECK_THROWS_AS(catalog_lookup("free(1)"), Error);
  CHECK_THROWS_AS(catalog_lookup("surface(2)"), Error);
  CHECK_THROWS_AS(catalog_lookup("bs(1,1)x"), Error);
}

TEST_CASE("sigma data inference and validation") {
  auto f2 = catalog_lookup("free(2)");
  // degree-3 complements are forced full by a full degree-1 complement
  CHECK(f2.complement(3, Coeff::FIELD_Q).has_value());
  CHECK(f2.complement(0, Coeff::Z)->cells.empty());

  auto z2 = catalog_lookup("free_abelian(2)");
  SigmaData bad(z2.owner());
  bad.set_complement(1, Coeff::Z, geom::SphSet::full(2));
  bad.set_complement(2, Coeff::Z, geom::SphSet{2, {geom::Cell{2, {geom::ge({1, 0})}}}});
  CHECK_THROWS_AS(bad.validate(), Error);

  SigmaData inverted(z2.owner());
  inverted.set_complement(2, Coeff::Z, geom::SphSet::full(2));
  inverted.set_complement(2, Coeff::HTPY, geom::SphSet::empty(2));
  CHECK_THROWS_AS(inverted.validate(), Error);

  CHECK_THROWS_AS(SigmaData(GroupDescriptor("C6", {"a"}, {{1, 1, 1, 1, 1, 1}}, {})), Error);
  CHECK_THROWS_AS(bad.set_complement(1, Coeff::Z, geom::SphSet::full(3)), Error);
}
