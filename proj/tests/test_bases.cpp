#include <doctest.h>

#include <fstream>
#include <numeric>

#include "singconv/bases.hpp"
#include "singconv/convolve.hpp"
#include "singconv/errors.hpp"
#include "singconv/json_io.hpp"

using namespace singconv;

namespace {

// Closed-form Brieskorn-Pham class used as an independent oracle for the
// recursive bootstrap: atom per (k_1..k_r), alpha = sum k_i/d_i, with the
// weight-(r-1) types (r-1-floor(alpha), floor(alpha)) off the integers and
// the weight-r types (r-alpha, alpha) on them; sign (-1)^{r-1}.
EqHodgeClass bp_closed_form(const std::vector<int>& d, int m) {
  int r = static_cast<int>(d.size());
  GroupSpec g;
  g.orders = d;
  g.orders.push_back(m);
  g.monodromy = r;
  EqHodgeClass out(g);
  std::vector<int> k(r, 1);
  bool any = true;
  for (int i = 0; i < r; ++i)
    if (d[i] < 2) any = false;
  if (!any) return out;
  long long sign = (r % 2 == 1) ? 1 : -1;
  while (true) {
    Rat alpha(0);
    for (int i = 0; i < r; ++i) alpha += Rat(k[i], d[i]);
    int p, q;
    if (boost::multiprecision::denominator(alpha) == 1) {
      int a = static_cast<int>(boost::multiprecision::numerator(alpha));
      p = r - a;
      q = a;
    } else {
      Int fl = boost::multiprecision::numerator(alpha) / boost::multiprecision::denominator(alpha);
      p = r - 1 - static_cast<int>(fl);
      q = static_cast<int>(fl);
    }
    Character chi;
    chi.residues = k;
    long long res = 0;
    for (int i = 0; i < r; ++i) res += static_cast<long long>(m) / d[i] * k[i];
    chi.residues.push_back(static_cast<int>(res % m));
    out.add_atom({p, q, chi}, sign);
    int i = r - 1;
    while (i >= 0 && k[i] + 1 == d[i]) k[i--] = 1;
    if (i < 0) break;
    ++k[i];
  }
  return out;
}

}  // namespace

TEST_CASE("phi_monomial matches the regular representation minus [Q]") {
  auto c = phi_monomial(2, 2);
  CHECK(c.atoms().size() == 1);
  CHECK(c.mult_of({0, 0, Character{{1, 1}}}) == 1);

  auto e = phi_monomial(1, 6);
  CHECK(e.empty());

  auto c36 = phi_monomial(3, 6);
  CHECK(c36.atoms().size() == 2);
  CHECK(c36.mult_of({0, 0, Character{{1, 2}}}) == 1);
  CHECK(c36.mult_of({0, 0, Character{{2, 4}}}) == 1);

  for (int d = 1; d <= 6; ++d) {
    auto cd = phi_monomial(d, d);
    CHECK(static_cast<int>(cd.atoms().size()) == d - 1);
    for (int k = 1; k < d; ++k) CHECK(cd.mult_of({0, 0, Character{{k, k}}}) == 1);
  }
  CHECK_THROWS_AS(phi_monomial(4, 6), NotDivisor);
}

TEST_CASE("phi_origin") {
  auto c = phi_origin(6);
  CHECK(c.atoms().size() == 1);
  CHECK(c.mult_of({0, 0, Character{{0}}}) == -1);
  auto t = tensor(c, negate(unit_class(c.group())));
  CHECK(t == unit_class(c.group()));
  CHECK(invariants(c, {0}) == c);
}

TEST_CASE("fermat class (2,2): the node slot is weight two") {
  auto f = fermat_class({2, 2}, 2);
  CHECK(f.atoms().size() == 1);
  CHECK(f.mult_of({1, 1, Character{{1, 1, 0}}}) == -1);
}

TEST_CASE("fermat class (2,3): cusp slots") {
  auto f = fermat_class({2, 3}, 6);
  CHECK(f.atoms().size() == 2);
  CHECK(f.mult_of({1, 0, Character{{1, 1, 5}}}) == -1);
  CHECK(f.mult_of({0, 1, Character{{1, 2, 1}}}) == -1);
  CHECK(is_polarizable(f));
}

TEST_CASE("fermat class with d1 = 1 is empty") {
  auto f = fermat_class({1, 4}, 4);
  CHECK(f.empty());
}

TEST_CASE("fermat class rank and weight-two count") {
  for (int d1 = 2; d1 <= 5; ++d1) {
    for (int d2 = 2; d2 <= 5; ++d2) {
      int m = static_cast<int>(std::lcm(d1, d2));
      auto f = fermat_class({d1, d2}, m);
      CHECK(f.total_size() == static_cast<long long>(d1 - 1) * (d2 - 1));
      int w2 = 0;
      for (const auto& [a, mult] : f.atoms()) {
        CHECK(mult == -1);
        if (a.p == 1 && a.q == 1) ++w2;
      }
      CHECK(w2 == std::gcd(d1, d2) - 1);
      CHECK(is_polarizable(f));
    }
  }
}

TEST_CASE("recursive Brieskorn-Pham classes match the closed form") {
  CHECK(bp_inner_class({2, 2, 2}, 2) == bp_closed_form({2, 2, 2}, 2));
  CHECK(bp_inner_class({2, 3, 4}, 12) == bp_closed_form({2, 3, 4}, 12));
  CHECK(bp_inner_class({3, 3, 3}, 3) == bp_closed_form({3, 3, 3}, 3));
  CHECK(bp_inner_class({2, 2, 2, 2}, 2) == bp_closed_form({2, 2, 2, 2}, 2));
  CHECK(bp_inner_class({2, 2, 3, 3}, 6) == bp_closed_form({2, 2, 3, 3}, 6));
}

TEST_CASE("registry for one monomial variable") {
  auto reg = registry_for_sum(1, {2}, 2);
  CHECK(reg.entries.size() == 2);
  const auto& empty_entry = reg.entry({});
  CHECK(empty_entry.mult_of({0, 0, Character{{1, 1}}}) == 1);
  CHECK(empty_entry.atoms().size() == 1);
  const auto& full = reg.entry({0});
  CHECK(full.mult_of({0, 0, Character{{0, 0}}}) == -1);
  CHECK(full.atoms().size() == 1);
}

TEST_CASE("registry for the cusp pair") {
  auto reg = registry_for_sum(2, {2, 3}, 6);
  CHECK(reg.entries.size() == 4);
  // entry characters are trivial on the killed factors
  for (const auto& [I, cls] : reg.entries) {
    for (const auto& [atom, mult] : cls.atoms())
      for (int i : I) CHECK(atom.chi.residues[i] == 0);
  }
  const auto& e12 = reg.entry({0, 1});
  CHECK(e12.mult_of({0, 0, Character{{0, 0, 0}}}) == -1);
  // the empty entry is the fermat class embedded
  const auto& e0 = reg.entry({});
  CHECK(e0.mult_of({1, 0, Character{{1, 1, 5}}}) == -1);
  CHECK(e0.mult_of({0, 1, Character{{1, 2, 1}}}) == -1);
}

TEST_CASE("registry with trivial exponents encodes a smooth pair") {
  auto reg = registry_for_sum(2, {1, 1}, 1);
  CHECK(reg.entry({}).empty());  // Phi of xi_1 + xi_2: contractible fiber
}

TEST_CASE("bundle JSON round trip and validation") {
  auto b = monomial_bundle(3);
  auto j = bundle_to_json(b);
  auto back = parse_bundle_json(j.dump());
  CHECK(back.bundle.d == 3);
  CHECK(back.bundle.phi == b.phi);
  CHECK(back.warnings.empty());

  auto cusp = cusp_bundle();
  auto jc = bundle_to_json(cusp);
  auto backc = parse_bundle_json(jc.dump());
  CHECK(backc.bundle.d == 6);
  CHECK(backc.bundle.phi == cusp.phi);
  CHECK(backc.warnings.empty());

  CHECK_THROWS_AS(parse_bundle_json("{\"d\": 2}"), ParseError);
  CHECK_THROWS_AS(parse_bundle_json("not json"), ParseError);
  // malformed residue
  CHECK_THROWS_AS(parse_bundle_json(
                      R"({"d":2,"phi":{"group":{"orders":[2],"monodromy":0},
                          "atoms":[{"p":0,"q":0,"chi":[5],"mult":1}]}})"),
                  InputError);
}

TEST_CASE("asymmetric user class gets a symmetry warning") {
  Json j;
  j["d"] = 3;
  Json phi;
  phi["group"]["orders"] = std::vector<int>{3};
  phi["group"]["monodromy"] = 0;
  Json atom;
  atom["p"] = 1;
  atom["q"] = 0;
  atom["chi"] = std::vector<int>{1};
  atom["mult"] = 1;
  phi["atoms"] = Json::array({atom});
  j["phi"] = phi;
  auto res = parse_bundle_json(j.dump());
  CHECK(res.warnings.size() == 1);
}

TEST_CASE("builtin bundles") {
  auto m = monomial_bundle(4);
  CHECK(m.phi.atoms().size() == 4);
  CHECK(m.Phi().atoms().size() == 3);
  auto n = node_bundle();
  CHECK(n.d == 2);
  CHECK(n.Phi().mult_of({1, 1, Character{{0}}}) == -1);
  auto c = cusp_bundle();
  CHECK(c.d == 6);
  CHECK(is_polarizable(c.Phi()));
}

TEST_CASE("germ JSON accepts fractional coefficients") {
  auto j = Json::parse(R"({"vars":["x","y"],
    "terms":[{"exp":[2,0],"coef":"3/2"},{"exp":[0,3],"coef":"-1"}]})");
  auto g = germ_from_json(j);
  CHECK(g.terms().at({2, 0}) == Rat(3, 2));
  CHECK(g.terms().at({0, 3}) == Rat(-1));
  auto back = germ_from_json(germ_to_json(g));
  CHECK(back.terms() == g.terms());
}
