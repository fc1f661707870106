#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "kzq/chartab.hpp"
#include "kzq/error.hpp"
#include "kzq/presentation.hpp"
#include "oracle.hpp"

using namespace kzq;

namespace {

const char* kCorpus[] = {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12",
                         "D6", "D8", "D10", "D12", "D14", "D16", "S3", "S4", "Q8", "Q16", "QD16",
                         "QD32", "Q32", "Q16xC2", "C3xC3", "SG(32,42)", "SG(32,44)"};

Cyclotomic norm(const ClassFunction& f, const FiniteGroup& g) { return inner_product(f, f, g); }

}  // namespace

TEST_CASE("small tables") {
  auto t1 = character_table(catalog("C1"));
  REQUIRE(t1.size() == 1);
  CHECK(t1.value(0, 0) == Cyclotomic(1L));
  auto t2 = character_table(catalog("C2"));
  REQUIRE(t2.size() == 2);
  CHECK(t2.row(0) == ClassFunction{Cyclotomic(1L), Cyclotomic(1L)});
  CHECK(t2.row(1) == ClassFunction{Cyclotomic(1L), Cyclotomic(-1L)});
}

TEST_CASE("Q16 degrees") {
  auto t = character_table(catalog("Q16"));
  std::vector<long> d;
  for (std::size_t i = 0; i < t.size(); ++i) d.push_back(t.degree(i));
  std::sort(d.begin(), d.end());
  CHECK(d == std::vector<long>{1, 1, 1, 1, 2, 2, 2});
}

TEST_CASE("inner products") {
  auto g = catalog("Q16");
  auto t = character_table(g);
  CHECK(inner_product(trivial_character(g), trivial_character(g), g) == Cyclotomic(1L));
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(norm(t.row(i), g) == Cyclotomic(1L));
  auto c4 = catalog("C4");
  auto tc = character_table(c4);
  // Regular character counted element by element.
  ClassFunction reg(c4.classes().count());
  for (std::size_t c = 0; c < reg.size(); ++c) {
    Elem x = c4.classes().at(c).representative;
    long fixed = 0;
    for (Elem y = 0; y < c4.order(); ++y) fixed += c4.mul(y, x) == y;
    reg[c] = Cyclotomic(fixed);
  }
  CHECK(reg == regular_character(c4));
  for (std::size_t i = 0; i < tc.size(); ++i) CHECK(inner_product(reg, tc.row(i), c4) == Cyclotomic(tc.degree(i)));
}

TEST_CASE("exact orthogonality on the corpus") {
  for (const char* name : kCorpus) {
    CAPTURE(name);
    auto t = character_table(catalog(name));
    std::string why;
    CHECK_MESSAGE(oracle::orthogonal(t, &why), why);
    long sq = 0;
    for (std::size_t i = 0; i < t.size(); ++i) sq += t.degree(i) * t.degree(i);
    CHECK(sq == static_cast<long>(t.group().order()));
    CHECK(t.value(0, 0) == Cyclotomic(1L));
    for (std::size_t c = 0; c < t.classes().count(); ++c) CHECK(t.value(0, c) == Cyclotomic(1L));
  }
}

TEST_CASE("character values are algebraic integers") {
  for (const char* name : kCorpus) {
    auto t = character_table(catalog(name));
    for (const auto& row : t.rows())
      for (const auto& v : row)
        for (const auto& q : v.coeffs()) CHECK(q.get_den() == 1);
  }
}

TEST_CASE("tables are reproducible and seed independent") {
  for (const char* name : {"Q16", "S4", "QD32", "C12"}) {
    auto g = catalog(name);
    auto a = character_table(g, 0), b = character_table(g, 0), c = character_table(g, 12345);
    CHECK(a.rows() == b.rows());
    CHECK(a.rows() == c.rows());
    CHECK(a.render() == c.render());
  }
}

TEST_CASE("second orthogonality gives centralizer orders") {
  auto g = catalog("QD32");
  auto t = character_table(g);
  for (std::size_t c = 0; c < t.classes().count(); ++c) {
    Cyclotomic s;
    for (std::size_t i = 0; i < t.size(); ++i) s += t.value(i, c) * t.value(i, c).conj();
    Elem x = t.classes().at(c).representative;
    long cent = 0;
    for (Elem y = 0; y < g.order(); ++y) cent += g.mul(x, y) == g.mul(y, x);
    CHECK(s == Cyclotomic(cent));
  }
}

TEST_CASE("induction") {
  auto c1 = catalog("C1"), c2 = catalog("C2");
  auto e = parse_hom("", c1, c2);
  CHECK(induce(e, trivial_character(c1)) == regular_character(c2));

  auto q16 = catalog("Q16"), qd32 = catalog("QD32");
  auto f = parse_hom("r=a^2;s=a*b", q16, qd32);
  auto ind = induce(f, trivial_character(q16));
  CHECK(ind[0] == Cyclotomic(2L));
  CHECK(inner_product(ind, trivial_character(qd32), qd32) == Cyclotomic(1L));
  auto th = character_table(q16);
  for (std::size_t i = 0; i < th.size(); ++i)
    CHECK(induce(f, th.row(i))[0] == Cyclotomic(2 * th.degree(i)));

  GroupHom bad(c2, catalog("C3"), {0});
  CHECK_THROWS_AS(induce(bad, trivial_character(c2)), Error);
}

TEST_CASE("Frobenius reciprocity on random pairs") {
  std::mt19937_64 rng(1);
  struct Pair {
    const char* h;
    const char* k;
    const char* hom;
  };
  const Pair pairs[] = {{"Q16", "QD32", "r=a^2;s=a*b"}, {"Q8", "Q16", "r=r^2;s=s"}, {"C3", "S3", "a=a"},
                        {"D8", "D16", "a=a^2;b=b"},     {"C4", "Q8", "a=r"},        {"Q16", "Q16xC2", "r=r;s=s"}};
  for (const auto& p : pairs) {
    auto h = catalog(p.h), k = catalog(p.k);
    auto e = parse_hom(p.hom, h, k);
    auto th = character_table(h), tk = character_table(k);
    std::uniform_int_distribution<std::size_t> ih(0, th.size() - 1), ik(0, tk.size() - 1);
    for (int n = 0; n < 5; ++n) {
      const auto& f = th.row(ih(rng));
      const auto& chi = tk.row(ik(rng));
      CHECK(inner_product(induce(e, f), chi, k) == inner_product(f, restrict(e, chi), h));
    }
  }
}

TEST_CASE("power twist") {
  auto g = catalog("C8");
  auto t = character_table(g);
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto tw = power_twist(g.classes(), t.row(i), 3);
    CHECK(norm(tw, g) == Cyclotomic(1L));
    CHECK(std::find(t.rows().begin(), t.rows().end(), tw) != t.rows().end());
  }
}
