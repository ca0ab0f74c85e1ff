#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/corpus.hpp"
#include "xgsigma/errors.hpp"
#include "xgsigma/io/format.hpp"

using namespace xgs;
using namespace xgs::io;
using group::SigmaData;

namespace {

template <class T>
T reparse(const T& x) {
  Document d = parse_document(serialize(x));
  REQUIRE(std::holds_alternative<T>(d));
  return std::get<T>(d);
}

ParseError parse_error(std::string_view text) {
  try {
    parse_stream(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error for:\n" << text);
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("corpus round trips") {
  for (const auto& d : xgs::testing::corpus()) {
    CAPTURE(d.owner().name());
    const std::string text = serialize(d);
    const SigmaData back = reparse(d);
    CHECK(back == d);
    CHECK(serialize(back) == text);
    CHECK(reparse(d.owner()) == d.owner());
  }
}

TEST_CASE("catalog round trips") {
  for (const char* name : {"free(4)", "free_abelian(4)", "bs(1,3)", "nonabelian_limit_placeholder(2)"}) {
    const SigmaData d = group::catalog_lookup(name);
    CHECK(reparse(d) == d);
  }
}

TEST_CASE("result and report round trips") {
  const SigmaData f2 = group::catalog_lookup("free(2)");
  ResultDoc r{kToolVersion, "xg sigma1", "free(2)", sigma::xg_sigma1_complement(f2)};
  r.result.hypotheses.push_back("is_fp");
  r.result.flags_consumed.emplace_back("is_fg", group::Tri::Unknown);
  CHECK(reparse(r) == r);

  Report rep;
  rep.operation = "fgtest";
  rep.add("verdict", "true");
  rep.add("note", "two words here");
  rep.sets.emplace_back("sigma1c", r.result.set);
  CHECK(reparse(rep) == rep);
}

TEST_CASE("streams hold several documents") {
  const SigmaData f2 = group::catalog_lookup("free(2)");
  const std::string text = serialize(f2.owner()) + "\n# between\n" + serialize(*f2.stored(1, group::Coeff::Z));
  auto docs = parse_stream(text);
  REQUIRE(docs.size() == 2);
  CHECK(std::string(kind_name(docs[0])) == "group");
  CHECK(std::string(kind_name(docs[1])) == "sphset");
  CHECK_THROWS_AS(parse_document(text), ParseError);
}

TEST_CASE("serialization normalizes constraints") {
  const auto doc = parse_document("xgsigma sphset 1\ndim 2\ncell\n  ge 2 4   # comment\n  eq -3 0\nend\n");
  const auto& s = std::get<geom::SphSet>(doc);
  CHECK(serialize(s) == "xgsigma sphset 1\ndim 2\ncell\n  ge 1 2\n  eq 1 0\nend\n");
}

TEST_CASE("parse errors carry positions") {
  auto e = parse_error("xgsigma sphset 1\ndim 2\ncell\n  ge 1 x\nend\n");
  CHECK(e.line() == 4);
  CHECK(e.column() == 8);

  e = parse_error("xgsigma sphset 1\ndim 2\ncell\n  ge 0 0\nend\n");
  CHECK(e.line() == 4);

  e = parse_error("xgsigma sphset 1\ndim 2\ncell\n  ge 1 0\n");
  CHECK(e.line() == 4);

  e = parse_error("\n\nhello\n");
  CHECK(e.line() == 3);
  CHECK(e.column() == 1);

  e = parse_error("xgsigma group 1\nname g\ngenerators a b\nrelator a c\n");
  CHECK(e.line() == 4);
  CHECK(e.column() == 11);

  e = parse_error("xgsigma group 1\nname g\ngenerators a b\nab_rank 1\n");
  CHECK(e.line() == 4);
}

TEST_CASE("versions are checked") {
  try {
    parse_stream("xgsigma sphset 2\ndim 1\n");
    FAIL("accepted version 2");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::VersionError);
  }
}

TEST_CASE("strict mode rejects unknown fields") {
  const std::string text = "xgsigma group 1\nname g\ngenerators a b\ncolour blue\n";
  CHECK_THROWS_AS(parse_stream(text), ParseError);
  ParseOptions lax{false};
  auto d = parse_document(text, lax);
  CHECK(std::get<group::GroupDescriptor>(d).ab_rank() == 2);
  CHECK_THROWS_AS(parse_stream("xgsigma group 1\nname g\ngenerators a\nflag is_shiny true\n"), ParseError);
}

TEST_CASE("sigma documents are validated") {
  // degree 2 smaller than degree 1
  const std::string text =
      "xgsigma sigma 1\ngroup\n  name g\n  generators a\nend\n"
      "complement 1 z\n  cell\n    ge -1\n  end\nend\ncomplement 2 z\nend\n";
  CHECK_THROWS_AS(parse_stream(text), Error);
  CHECK_THROWS_AS(parse_stream("xgsigma sigma 1\ngroup\n  name g\n  generators a\nend\ncomplement 1 q\nend\n"), ParseError);
}

TEST_CASE("words with powers") {
  auto d = parse_document("xgsigma group 1\nname bs\ngenerators a t\nrelator t a t^-1 a^-2\n");
  const auto& g = std::get<group::GroupDescriptor>(d);
  CHECK(g.relators().front() == group::Word{2, 1, -2, -1, -1});
  CHECK(g.ab_rank() == 1);
  CHECK(serialize(g).find("relator t a t^-1 a^-1 a^-1\n") != std::string::npos);
}

TEST_CASE("subspace files") {
  auto v = parse_subspace("1 2 3\n# c\n1/2,0,-1\n", 3);
  REQUIRE(v.size() == 2);
  CHECK(v[1][0] == Rat(1, 2));
  CHECK_THROWS_AS(parse_subspace("1 2\n", 3), ParseError);
  CHECK_THROWS_AS(parse_subspace("1 z 3\n", 3), ParseError);
}

TEST_CASE("mutated documents never crash") {
  std::vector<std::string> seeds;
  for (const auto& d : xgs::testing::corpus()) seeds.push_back(serialize(d));
  const std::string alphabet = "0123456789-/ \n#abcdefgqzxyt^_()";
  std::mt19937_64 rng(2024);
  int accepted = 0, rejected = 0;
  for (int t = 0; t < 3000; ++t) {
    std::string s = seeds[rng() % seeds.size()];
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits && !s.empty(); ++e) {
      const std::size_t pos = rng() % s.size();
      switch (rng() % 4) {
        case 0: s[pos] = alphabet[rng() % alphabet.size()]; break;
        case 1: s.erase(pos, 1 + rng() % 8); break;
        case 2: s.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
        default: {
          const std::size_t a = rng() % s.size();
          s.insert(pos, s.substr(a, 1 + rng() % 20));
        }
      }
    }
    try {
      auto docs = parse_stream(s);
      for (const auto& d : docs) (void)parse_stream(serialize(d));
      ++accepted;
    } catch (const Error&) {
      ++rejected;
    }
  }
  CHECK(accepted + rejected == 3000);
  CHECK(rejected > 0);
  MESSAGE("accepted " << accepted << ", rejected " << rejected);
}
