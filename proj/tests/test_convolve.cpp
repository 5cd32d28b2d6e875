#include <doctest.h>

#include <numeric>

#include "singconv/convolve.hpp"
#include "singconv/errors.hpp"

using namespace singconv;

namespace {

ConvolutionJob sum_job(std::vector<GermClassBundle> bundles) {
  ConvolutionJob job;
  job.n = static_cast<int>(bundles.size());
  std::vector<int> d;
  int m = 1;
  for (const auto& b : bundles) {
    d.push_back(b.d);
    m = static_cast<int>(std::lcm(static_cast<long long>(m), static_cast<long long>(b.d)));
  }
  job.bundles = std::move(bundles);
  job.m = m;
  job.registry = registry_for_sum(job.n, d, m);
  return job;
}

EqHodgeClass identity_compose(const GermClassBundle& b) {
  return convolve(sum_job({b}));
}

}  // namespace

TEST_CASE("identity composition returns Phi for the monomial bundle") {
  for (int d = 1; d <= 6; ++d) {
    auto b = monomial_bundle(d);
    auto out = identity_compose(b);
    CHECK(out == b.Phi());
  }
}

TEST_CASE("identity composition returns Phi for the node bundle") {
  auto b = node_bundle();
  CHECK(identity_compose(b) == b.Phi());
}

TEST_CASE("identity composition returns Phi for the cusp bundle") {
  auto b = cusp_bundle();
  CHECK(identity_compose(b) == b.Phi());
}

TEST_CASE("cusp from monomial bundles") {
  auto out = convolve(sum_job({monomial_bundle(2), monomial_bundle(3)}));
  CHECK(out.atoms().size() == 2);
  CHECK(out.mult_of({1, 0, Character{{5}}}) == -1);
  CHECK(out.mult_of({0, 1, Character{{1}}}) == -1);
  auto t = spectral_table(negate(out), 2);  // orient to H^1
  CHECK(t.alpha_multiset() == std::multiset<Rat>{Rat(5, 6), Rat(7, 6)});
}

TEST_CASE("node from monomial bundles has spectrum {1}") {
  auto out = convolve(sum_job({monomial_bundle(2), monomial_bundle(2)}));
  CHECK(out.atoms().size() == 1);
  CHECK(out.mult_of({1, 1, Character{{0}}}) == -1);
  auto t = spectral_table(negate(out), 2);
  CHECK(t.alpha_multiset() == std::multiset<Rat>{Rat(1)});
}

TEST_CASE("a smooth one-variable factor makes the composite smooth") {
  // g_2 = y: the composite g_1(y_1) + y_2 has no singularity, so the
  // reduced class vanishes; both engines agree on that
  auto b1 = monomial_bundle(3);
  auto b2 = monomial_bundle(1);
  auto two = convolve(sum_job({b1, b2}));
  CHECK(two.empty());
  CHECK(thom_sebastiani(b1, b2).empty());
  CHECK(thom_sebastiani(cusp_bundle(), b2).empty());
}

TEST_CASE("thom_sebastiani equals convolve on the two-variable job") {
  for (int a = 2; a <= 4; ++a) {
    for (int b = 2; b <= 4; ++b) {
      auto c1 = convolve(sum_job({monomial_bundle(a), monomial_bundle(b)}));
      auto c2 = thom_sebastiani(monomial_bundle(a), monomial_bundle(b));
      CHECK(c1 == c2);
    }
  }
  CHECK(thom_sebastiani(node_bundle(), monomial_bundle(2)) ==
        convolve(sum_job({node_bundle(), monomial_bundle(2)})));
  CHECK(thom_sebastiani(cusp_bundle(), monomial_bundle(3)) ==
        convolve(sum_job({cusp_bundle(), monomial_bundle(3)})));
  CHECK(thom_sebastiani(node_bundle(), cusp_bundle()) ==
        convolve(sum_job({node_bundle(), cusp_bundle()})));
}

TEST_CASE("suspension by a smooth variable shifts the node to the triple point") {
  // y^2 + (z1^2 + z2^2): expect the A_1 class in three variables
  auto out = thom_sebastiani(monomial_bundle(2), node_bundle());
  CHECK(out.atoms().size() == 1);
  CHECK(out.mult_of({1, 1, Character{{1}}}) == 1);
  auto t = spectral_table(out, 3);
  CHECK(t.alpha_multiset() == std::multiset<Rat>{Rat(3, 2)});
}

TEST_CASE("thom_sebastiani spectra are the sum multisets") {
  for (int a = 2; a <= 5; ++a) {
    for (int b = 2; b <= 5; ++b) {
      auto out = thom_sebastiani(monomial_bundle(a), monomial_bundle(b));
      auto t = spectral_table(negate(out), 2);
      std::multiset<Rat> expect;
      for (int i = 1; i < a; ++i)
        for (int j = 1; j < b; ++j) expect.insert(Rat(i, a) + Rat(j, b));
      CHECK(t.alpha_multiset() == expect);
    }
  }
}

TEST_CASE("the V-form route agrees") {
  CHECK(v_form_identity(monomial_bundle(2), monomial_bundle(2)) ==
        thom_sebastiani(monomial_bundle(2), monomial_bundle(2)));
  CHECK(v_form_identity(monomial_bundle(2), monomial_bundle(3)) ==
        thom_sebastiani(monomial_bundle(2), monomial_bundle(3)));
  CHECK(v_form_identity(monomial_bundle(1), cusp_bundle()) ==
        thom_sebastiani(monomial_bundle(1), cusp_bundle()));
  CHECK(v_form_identity(node_bundle(), cusp_bundle()) ==
        thom_sebastiani(node_bundle(), cusp_bundle()));
}

TEST_CASE("permutation equivariance") {
  auto ab = convolve(sum_job({monomial_bundle(2), monomial_bundle(5)}));
  auto ba = convolve(sum_job({monomial_bundle(5), monomial_bundle(2)}));
  CHECK(ab == ba);
  auto abc = convolve(sum_job({monomial_bundle(2), monomial_bundle(3), monomial_bundle(4)}));
  auto cba = convolve(sum_job({monomial_bundle(4), monomial_bundle(3), monomial_bundle(2)}));
  CHECK(abc == cba);
}

TEST_CASE("output characters have order dividing m") {
  auto out = convolve(sum_job({monomial_bundle(4), monomial_bundle(6)}));
  CHECK(out.group().orders == std::vector<int>{12});
  for (const auto& [atom, mult] : out.atoms()) {
    CHECK(atom.chi.residues[0] >= 0);
    CHECK(atom.chi.residues[0] < 12);
  }
}

TEST_CASE("conjugation symmetry is preserved by the engine") {
  auto out = convolve(sum_job({monomial_bundle(3), monomial_bundle(4), monomial_bundle(2)}));
  CHECK(is_polarizable(out));
}

TEST_CASE("thom_sebastiani associativity on monomial bundles") {
  // iterate TS as bundles over the lcm; compare against the one-shot
  // three-variable convolution
  for (int a = 2; a <= 4; ++a) {
    for (int b = 2; b <= 4; ++b) {
      for (int c = 2; c <= 4; ++c) {
        auto abc = convolve(sum_job({monomial_bundle(a), monomial_bundle(b),
                                     monomial_bundle(c)}));
        // left association
        auto ab = thom_sebastiani(monomial_bundle(a), monomial_bundle(b));
        int mab = static_cast<int>(std::lcm(a, b));
        GermClassBundle left;
        left.d = mab;
        left.phi = add(ab, unit_class(ab.group()));
        auto lc = thom_sebastiani(left, monomial_bundle(c));
        // right association
        auto bc = thom_sebastiani(monomial_bundle(b), monomial_bundle(c));
        int mbc = static_cast<int>(std::lcm(b, c));
        GermClassBundle right;
        right.d = mbc;
        right.phi = add(bc, unit_class(bc.group()));
        auto rc = thom_sebastiani(monomial_bundle(a), right);
        int m = static_cast<int>(std::lcm(std::lcm(a, b), static_cast<long long>(c)));
        auto lcm_rebased_l = rebase(lc, m);
        auto lcm_rebased_r = rebase(rc, m);
        CHECK(lcm_rebased_l == lcm_rebased_r);
        CHECK(lcm_rebased_l == rebase(abc, m));
      }
    }
  }
}

TEST_CASE("missing registry entry is reported") {
  ConvolutionJob job;
  job.n = 1;
  job.bundles = {monomial_bundle(2)};
  job.m = 2;
  job.registry.n = 1;
  job.registry.d = {2};
  job.registry.m = 2;
  CHECK_THROWS_AS(convolve(job), MissingRegistryEntry);
}

TEST_CASE("registry and bundle d mismatch is rejected") {
  ConvolutionJob job;
  job.n = 1;
  job.bundles = {monomial_bundle(2)};
  job.m = 3;
  job.registry = registry_for_sum(1, {3}, 3);
  CHECK_THROWS_AS(convolve(job), GroupMismatch);
}
