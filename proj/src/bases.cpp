#include "singconv/bases.hpp"

#include <fstream>
#include <numeric>

#include "singconv/convolve.hpp"
#include "singconv/errors.hpp"
#include "singconv/json_io.hpp"

namespace singconv {

EqHodgeClass GermClassBundle::Phi() const {
  return add(phi, negate(unit_class(phi.group())));
}

GermClassBundle monomial_bundle(int d) {
  if (d < 1) throw InputError("monomial exponent must be positive");
  GroupSpec g{{d}, 0};
  GermClassBundle b;
  b.d = d;
  EqHodgeClass phi(g);
  for (int k = 0; k < d; ++k) phi.add_atom({0, 0, Character{{k}}}, 1);
  b.phi = phi;
  return b;
}

GermClassBundle node_bundle() {
  GroupSpec g{{2}, 0};
  GermClassBundle b;
  b.d = 2;
  EqHodgeClass phi = unit_class(g);
  phi.add_atom({1, 1, Character{{0}}}, -1);
  b.phi = phi;
  return b;
}

GermClassBundle cusp_bundle() {
  GroupSpec g{{6}, 0};
  GermClassBundle b;
  b.d = 6;
  EqHodgeClass phi = unit_class(g);
  phi.add_atom({1, 0, Character{{5}}}, -1);
  phi.add_atom({0, 1, Character{{1}}}, -1);
  b.phi = phi;
  return b;
}

EqHodgeClass phi_monomial(int d, int m) {
  if (d < 1 || m < 1 || m % d != 0) throw NotDivisor("phi_monomial needs d | m");
  GroupSpec g{{d, m}, 1};
  EqHodgeClass out(g);
  for (int k = 1; k < d; ++k) {
    out.add_atom({0, 0, Character{{k, (m / d) * k % m}}}, 1);
  }
  return out;
}

EqHodgeClass phi_origin(int m) {
  if (m < 1) throw InputError("m must be positive");
  GroupSpec g{{m}, 0};
  EqHodgeClass out(g);
  out.add_atom({0, 0, trivial_character(g)}, -1);
  return out;
}

namespace {

int lcm_of(const std::vector<int>& v) {
  int l = 1;
  for (int x : v) l = static_cast<int>(std::lcm(static_cast<long long>(l), static_cast<long long>(x)));
  return l;
}

// exact two-variable case: H^1 of the affine Fermat curve, negated.
// Eigenspace (a,b) has Hodge type (1,0)/(0,1) by the fractional sum and
// collapses to the weight-2 type (1,1) exactly on the gcd-1 slots with
// a/d1 + b/d2 = 1 (the boundary classes of the compactified curve).
EqHodgeClass fermat_exact(int d1, int d2, int m) {
  int l = static_cast<int>(std::lcm(static_cast<long long>(d1), static_cast<long long>(d2)));
  if (m % l != 0) throw NotDivisor("m must be a multiple of lcm(d1, d2)");
  GroupSpec g{{d1, d2, m}, 2};
  EqHodgeClass out(g);
  for (int a = 1; a < d1; ++a) {
    for (int b = 1; b < d2; ++b) {
      int res = static_cast<int>((static_cast<long long>(m) * a / d1 +
                                  static_cast<long long>(m) * b / d2) % m);
      Rat s = Rat(a, d1) + Rat(b, d2);
      int p, q;
      if (s < 1) {
        p = 1; q = 0;
      } else if (s > 1) {
        p = 0; q = 1;
      } else {
        p = 1; q = 1;
      }
      out.add_atom({p, q, Character{{a, b, res}}}, -1);
    }
  }
  return out;
}

}  // namespace

EqHodgeClass bp_inner_class(const std::vector<int>& d_list, int m) {
  int r = static_cast<int>(d_list.size());
  if (r < 1) throw UnsupportedArity("need at least one exponent");
  for (int d : d_list)
    if (d < 1) throw InputError("exponents must be positive");
  if (m % lcm_of(d_list) != 0) throw NotDivisor("m must be a multiple of lcm(d)");
  if (r == 1) return phi_monomial(d_list[0], m);
  if (r == 2) return fermat_exact(d_list[0], d_list[1], m);

  // Brieskorn-Pham bootstrap: peel the last exponent through the
  // two-variable engine, carrying the deck factors as spectators
  std::vector<int> head(d_list.begin(), d_list.end() - 1);
  int m1 = lcm_of(head);
  int dr = d_list.back();

  GermClassBundle b1;
  b1.d = m1;
  EqHodgeClass a = bp_inner_class(head, m1);
  b1.phi = add(a, unit_class(a.group()));

  GermClassBundle b2;
  b2.d = dr;
  EqHodgeClass mono = phi_monomial(dr, dr);  // diagonal deck/monodromy labels
  b2.phi = add(mono, unit_class(mono.group()));

  EqHodgeClass ts = thom_sebastiani(b1, b2);
  // ts group: (d_1..d_{r-1}, d_r, lcm(m1, dr)); lift the monodromy to m
  return rebase_factor(ts, ts.group().factors() - 1, m);
}

EqHodgeClass fermat_class(const std::vector<int>& d_list, int m) {
  if (d_list.size() < 2) throw UnsupportedArity("fermat_class needs r >= 2");
  return bp_inner_class(d_list, m);
}

GroupSpec InnerRegistry::group() const {
  GroupSpec g;
  g.orders = d;
  g.orders.push_back(m);
  g.monodromy = n;
  return g;
}

const EqHodgeClass& InnerRegistry::entry(const std::vector<int>& I) const {
  auto it = entries.find(I);
  if (it == entries.end()) throw MissingRegistryEntry("no registry entry for the subset");
  return it->second;
}

InnerRegistry registry_for_sum(int n, const std::vector<int>& d, int m) {
  if (static_cast<int>(d.size()) != n) throw InputError("d-vector arity mismatch");
  InnerRegistry reg;
  reg.n = n;
  reg.d = d;
  reg.m = m;
  GroupSpec big = reg.group();
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> I, comp;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i))
        I.push_back(i);
      else
        comp.push_back(i);
    }
    if (comp.empty()) {
      EqHodgeClass origin = phi_origin(m);
      reg.entries[I] = embed(origin, big, {n});
      continue;
    }
    std::vector<int> sub;
    for (int i : comp) sub.push_back(d[i]);
    EqHodgeClass cls = bp_inner_class(sub, m);
    std::vector<int> placement;
    for (int i : comp) placement.push_back(i);
    placement.push_back(n);  // monodromy slot
    reg.entries[I] = embed(cls, big, placement);
  }
  return reg;
}

BundleLoadResult load_user_class(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_bundle_json(std::string{std::istreambuf_iterator<char>(in),
                                       std::istreambuf_iterator<char>()});
}

}  // namespace singconv
