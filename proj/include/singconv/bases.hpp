#ifndef SINGCONV_BASES_HPP
#define SINGCONV_BASES_HPP

#include <map>
#include <string>
#include <vector>

#include "singconv/ghodge.hpp"

namespace singconv {

// Milnor package of one inner germ g_i.  `phi` is the full Milnor-fiber
// class; its group is (spectator factors ..., mu_d) with the pairing factor
// last.  Plain bundles have no spectators.
struct GermClassBundle {
  int d = 1;
  EqHodgeClass phi;

  int pairing_factor() const { return phi.group().factors() - 1; }
  int spectators() const { return phi.group().factors() - 1; }
  EqHodgeClass Phi() const;  // phi - [Q]
};

GermClassBundle monomial_bundle(int d);  // g = y^d
GermClassBundle node_bundle();           // g = y1^2 + y2^2
GermClassBundle cusp_bundle();           // g = y1^2 + y2^3

// regular representation of mu_d minus the trivial line, type (0,0),
// with mu_m acting through its quotient: atoms (k, (m/d)k)
EqHodgeClass phi_monomial(int d, int m);

// -[Q] over mu_m
EqHodgeClass phi_origin(int m);

// Milnor class of xi_1^{d_1} + ... + xi_r^{d_r} over
// mu_{d_1} x ... x mu_{d_r} x mu_m (monodromy last); r >= 3 is assembled
// recursively through the convolution engine
EqHodgeClass fermat_class(const std::vector<int>& d_list, int m);

// internal single-source builder, r >= 1
EqHodgeClass bp_inner_class(const std::vector<int>& d_list, int m);

struct InnerRegistry {
  int n = 0;
  std::vector<int> d;
  int m = 1;
  std::map<std::vector<int>, EqHodgeClass> entries;  // key: sorted subset I of [0, n)

  GroupSpec group() const;  // (mu_{d_1},...,mu_{d_n}, mu_m), monodromy last
  const EqHodgeClass& entry(const std::vector<int>& I) const;
};

InnerRegistry registry_for_sum(int n, const std::vector<int>& d, int m);

struct BundleLoadResult {
  GermClassBundle bundle;
  std::vector<std::string> warnings;  // e.g. conjugation symmetry violations
};

BundleLoadResult load_user_class(const std::string& path);

}  // namespace singconv

#endif
