#include <doctest.h>

#include <numeric>

#include "singconv/errors.hpp"
#include "singconv/fforacle.hpp"

using namespace singconv;

namespace {

GermPoly make_germ(int n, std::initializer_list<std::pair<std::vector<int>, Rat>> terms) {
  GermPoly g(n);
  for (const auto& [e, c] : terms) g.add_term(e, c);
  return g;
}

}  // namespace

TEST_CASE("cyclotomic arithmetic basics") {
  // zeta_4^2 = -1
  Cyclo a = Cyclo::zeta_pow(4, 1);
  Cyclo sq = a * a;
  Cyclo minus_one = Cyclo::rational(4, Rat(-1));
  CHECK(sq.equals(minus_one));
  // 1 + zeta_3 + zeta_3^2 = 0
  Cyclo s(3);
  s.add_power(0, 1);
  s.add_power(1, 1);
  s.add_power(2, 1);
  CHECK(s.is_zero());
  // conj: zeta -> zeta^{-1}
  Cyclo z = Cyclo::zeta_pow(6, 1);
  Cyclo w = z * z.conj();
  CHECK(w.equals(Cyclo::rational(6, Rat(1))));
  Rat r;
  CHECK(w.rational_value(&r));
  CHECK(r == 1);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_poly(2) == std::vector<Int>{1, 1});
  CHECK(cyclotomic_poly(4) == std::vector<Int>{1, 0, 1});
  CHECK(cyclotomic_poly(6) == std::vector<Int>{1, -1, 1});
  CHECK(cyclotomic_poly(12) == std::vector<Int>{1, 0, -1, 0, 1});
}

TEST_CASE("count_fibers of y^2 over F_5") {
  auto t = count_fibers(make_germ(1, {{{2}, 1}}), 5);
  CHECK(t.counts == std::vector<long long>{1, 2, 0, 0, 2});
  CHECK(t.total() == 5);
}

TEST_CASE("count_fibers of y is constant") {
  auto t = count_fibers(make_germ(1, {{{1}, 1}}), 7);
  for (long long x = 0; x < 7; ++x) CHECK(t.counts[x] == 1);
}

TEST_CASE("count_fibers of y1 y2 over F_3") {
  auto t = count_fibers(make_germ(2, {{{1, 1}, 1}}), 3);
  CHECK(t.counts == std::vector<long long>{5, 2, 2});
}

TEST_CASE("count_fibers respects the enumeration cap and parallel merge") {
  auto g = make_germ(2, {{{1, 1}, 1}});
  CHECK_THROWS_AS(count_fibers(g, 31, 100), TooLarge);
  auto serial = count_fibers(g, 13, 1000000, 1);
  auto parallel = count_fibers(g, 13, 1000000, 4);
  CHECK(serial.counts == parallel.counts);
}

TEST_CASE("char_decompose of y^2 over F_5") {
  auto t = count_fibers(make_germ(1, {{{2}, 1}}), 5);
  auto cc = char_decompose(t, 2);
  CHECK(cc.violations.empty());
  CHECK(cc.special == 1);
  // c_triv = 1, c_legendre = 1, the two order-4 characters vanish
  CHECK(cc.block_coef(0).equals(Cyclo::rational(4, 1)));
  CHECK(cc.block_coef(1).equals(Cyclo::rational(4, 1)));
  CHECK(cc.coef[1].is_zero());
  CHECK(cc.coef[3].is_zero());
  // reconstruction: N(x) = sum_chi c_chi chi(x) for x != 0
  long long gen = cc.generator;
  for (long long x = 1; x < 5; ++x) {
    // evaluate sum_a c_a zeta^{a ind(x)} and compare
    int ind = 0;
    long long y = 1;
    while (y != x) { y = y * gen % 5; ++ind; }
    Cyclo acc(4);
    for (int a = 0; a < 4; ++a) acc += cc.coef[a] * Cyclo::zeta_pow(4, static_cast<long long>(a) * ind);
    CHECK(acc.equals(Cyclo::rational(4, Rat(t.counts[x]))));
  }
}

TEST_CASE("char_decompose of y over F_5 with d = 1") {
  auto t = count_fibers(make_germ(1, {{{1}, 1}}), 5);
  auto cc = char_decompose(t, 1);
  CHECK(cc.violations.empty());
  CHECK(cc.block_coef(0).equals(Cyclo::rational(4, 1)));
  for (int a = 1; a < 4; ++a) CHECK(cc.coef[a].is_zero());
}

TEST_CASE("char_decompose of y^3 over F_7") {
  auto t = count_fibers(make_germ(1, {{{3}, 1}}), 7);
  auto cc = char_decompose(t, 3);
  CHECK(cc.violations.empty());
  for (int k = 0; k < 3; ++k) CHECK(cc.block_coef(k).equals(Cyclo::rational(6, 1)));
}

TEST_CASE("tameness spectroscopy for quasi-homogeneous germs") {
  for (long long p : {7, 13, 19, 31}) {
    {
      auto cc = char_decompose(count_fibers(make_germ(1, {{{2}, 1}}), p), 2);
      CHECK(cc.violations.empty());
    }
    {
      auto cc = char_decompose(count_fibers(make_germ(2, {{{1, 1}, 1}}), p), 1);
      CHECK(cc.violations.empty());
    }
    {
      auto cc = char_decompose(count_fibers(make_germ(2, {{{2, 1}, 1}}), p), 1);
      CHECK(cc.violations.empty());
    }
  }
}

TEST_CASE("a non-quasi-homogeneous germ shows coefficients outside its block") {
  auto t = count_fibers(make_germ(1, {{{2}, 1}, {{3}, 1}}), 7);
  auto cc = char_decompose(t, 1);
  CHECK_FALSE(cc.violations.empty());
}

TEST_CASE("not dividing") {
  auto t = count_fibers(make_germ(1, {{{2}, 1}}), 7);
  CHECK_THROWS_AS(char_decompose(t, 4), NotDividing);
}

TEST_CASE("stratum profile of the full subset is the origin delta") {
  auto f = make_germ(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  auto sp = stratum_profile(f, {2, 3}, {0, 1}, 7, 6);
  CHECK(sp.tuple_count() == 1);
  CHECK(sp.value({}, 0).equals(Cyclo::rational(6, 1)));
  for (long long u = 1; u < 7; ++u) CHECK(sp.value({}, u).is_zero());
}

TEST_CASE("stratum profile of the squaring pushforward over F_5") {
  auto f = make_germ(1, {{{1}, 1}});
  auto sp = stratum_profile(f, {2}, {}, 5, 2);
  long long gen = primitive_root(5);
  // trivial slice: constant one on the torus
  CHECK(sp.mu_coefficient({0}, 0, gen).equals(Cyclo::rational(4, 1)));
  CHECK(sp.mu_coefficient({0}, 1, gen).is_zero());
  CHECK(sp.mu_coefficient({0}, 2, gen).is_zero());
  CHECK(sp.mu_coefficient({0}, 3, gen).is_zero());
  // legendre slice: exactly the legendre character of u
  CHECK(sp.mu_coefficient({1}, 2, gen).equals(Cyclo::rational(4, 1)));
  CHECK(sp.mu_coefficient({1}, 0, gen).is_zero());
  CHECK(sp.mu_coefficient({1}, 1, gen).is_zero());
  CHECK(sp.mu_coefficient({1}, 3, gen).is_zero());
}

TEST_CASE("fermat curve character sums pin the base-class weights") {
  // oracle for the two-variable inner class: over F_p the (a,b) slice of the
  // point count is a Jacobi sum times the product character; weight one off
  // the diagonal a/d1 + b/d2 = 1 and a rational +/-1 on it
  auto f = make_germ(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  struct CaseSpec {
    int d1, d2;
    long long p;
  };
  for (auto [d1, d2, p] : {CaseSpec{2, 3, 7}, CaseSpec{2, 3, 13}, CaseSpec{2, 2, 5},
                           CaseSpec{2, 2, 13}, CaseSpec{3, 3, 7}, CaseSpec{4, 4, 13}}) {
    int m = static_cast<int>(std::lcm(d1, d2));
    auto sp = stratum_profile(f, {d1, d2}, {}, p, m);
    long long gen = primitive_root(p);
    int nn = static_cast<int>(p - 1);
    for (int a = 1; a < d1; ++a) {
      for (int b = 1; b < d2; ++b) {
        long long res = static_cast<long long>(m) * a / d1 + static_cast<long long>(m) * b / d2;
        int psi = static_cast<int>(res % m * (nn / m));
        Cyclo c = sp.mu_coefficient({a, b}, psi, gen);
        // other mu_m characters vanish on this slice
        for (int bb = 0; bb < nn; ++bb) {
          if (bb == psi) continue;
          CHECK(sp.mu_coefficient({a, b}, bb, gen).is_zero());
        }
        Cyclo norm = c * c.conj();
        if (res % m == 0) {
          Rat v;
          REQUIRE(c.rational_value(&v));
          CHECK((v == 1 || v == -1));
        } else {
          CHECK(norm.equals(Cyclo::rational(nn, Rat(p))));
        }
      }
    }
  }
}

TEST_CASE("composite counts: shortcut equals direct") {
  auto f = make_germ(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  std::vector<GermPoly> gs{make_germ(1, {{{2}, 1}}), make_germ(1, {{{3}, 1}})};
  std::vector<FiberCountTable> tables{count_fibers(gs[0], 7), count_fibers(gs[1], 7)};
  auto a = composite_counts_shortcut(f, tables, 7);
  auto b = composite_counts_direct(f, gs, 7);
  CHECK(a == b);
  CHECK(a[1] == 11);  // sum of N_2(t) N_3(1-t) over F_7
}

TEST_CASE("verify convolution: y^2, z^3 against x1 + x2") {
  auto f = make_germ(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  std::vector<GermPoly> gs{make_germ(1, {{{2}, 1}}), make_germ(1, {{{3}, 1}})};
  for (long long p : {7, 13, 19}) {
    auto rep = verify_convolution(f, gs, {2, 3}, p, 6);
    CHECK(rep.pass);
    for (const auto& pc : rep.chars) CHECK(pc.equal);
  }
}

TEST_CASE("verify convolution: smooth inner germ collapses to f alone") {
  auto f = make_germ(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  std::vector<GermPoly> gs{make_germ(1, {{{1}, 1}}), make_germ(1, {{{2}, 1}})};
  auto rep = verify_convolution(f, gs, {1, 2}, 13, 2);
  CHECK(rep.pass);
}

TEST_CASE("verify convolution: non-isolated inner and multiplicative f") {
  auto f = make_germ(2, {{{1, 1}, 1}});  // x1 x2
  std::vector<GermPoly> gs{make_germ(1, {{{2}, 1}}), make_germ(2, {{{1, 1}, 1}})};
  auto rep = verify_convolution(f, gs, {2, 1}, 13, 2);
  CHECK(rep.pass);
}

TEST_CASE("verify rejects non-quasi-homogeneous inner germs") {
  auto f = make_germ(1, {{{1}, 1}});
  std::vector<GermPoly> gs{make_germ(1, {{{2}, 1}, {{3}, 1}})};
  CHECK_THROWS_AS(verify_convolution(f, gs, {1}, 7, 1), PreconditionViolation);
}

TEST_CASE("verify rejects primes violating the congruences") {
  auto f = make_germ(1, {{{1}, 1}});
  std::vector<GermPoly> gs{make_germ(1, {{{3}, 1}})};
  CHECK_THROWS_AS(verify_convolution(f, gs, {3}, 3, 3), PreconditionViolation);
  CHECK_THROWS_AS(verify_convolution(f, gs, {3}, 5, 3), PreconditionViolation);
}

TEST_CASE("the all-trivial slice of a stratum profile is the plain count") {
  auto f = make_germ(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  auto sp = stratum_profile(f, {2, 3}, {}, 7, 6);
  for (long long u = 0; u < 7; ++u) {
    long long count = 0;
    for (long long x1 = 1; x1 < 7; ++x1)
      for (long long x2 = 1; x2 < 7; ++x2)
        if ((x1 + x2) % 7 == u) ++count;
    Rat v;
    REQUIRE(sp.value({0, 0}, u).rational_value(&v));
    CHECK(v == count);
  }
}

TEST_CASE("verify convolution for a single inner germ") {
  auto f = make_germ(1, {{{1}, 1}});
  std::vector<GermPoly> gs{make_germ(1, {{{2}, 1}})};
  for (long long p : {7, 13}) {
    auto rep = verify_convolution(f, gs, {2}, p, 2);
    CHECK(rep.pass);
  }
}

TEST_CASE("verify convolution with three inner germs") {
  auto f = make_germ(3, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}});
  std::vector<GermPoly> gs{make_germ(1, {{{2}, 1}}), make_germ(1, {{{2}, 1}}),
                           make_germ(1, {{{3}, 1}})};
  auto rep = verify_convolution(f, gs, {2, 2, 3}, 13, 6);
  CHECK(rep.pass);
  for (const auto& pc : rep.chars) CHECK(pc.equal);
}
