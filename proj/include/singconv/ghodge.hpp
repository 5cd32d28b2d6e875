#ifndef SINGCONV_GHODGE_HPP
#define SINGCONV_GHODGE_HPP

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "singconv/numeric.hpp"

namespace singconv {

// mu_{c_1} x ... x mu_{c_r}; at most one factor is tagged as the monodromy
struct GroupSpec {
  std::vector<int> orders;
  int monodromy = -1;

  int factors() const { return static_cast<int>(orders.size()); }
  bool operator==(const GroupSpec& o) const {
    return orders == o.orders && monodromy == o.monodromy;
  }
  bool operator!=(const GroupSpec& o) const { return !(*this == o); }
};

struct Character {
  std::vector<int> residues;  // residues[j] in [0, orders[j])
  bool operator<(const Character& o) const { return residues < o.residues; }
  bool operator==(const Character& o) const { return residues == o.residues; }
};

struct HodgeAtom {
  int p = 0;
  int q = 0;
  Character chi;
  bool operator<(const HodgeAtom& o) const {
    return std::tie(p, q, chi.residues) < std::tie(o.p, o.q, o.chi.residues);
  }
  bool operator==(const HodgeAtom& o) const {
    return p == o.p && q == o.q && chi == o.chi;
  }
};

// Virtual equivariant Hodge structure in canonical form: no zero
// multiplicities, atoms in sorted order (map keys).
class EqHodgeClass {
 public:
  EqHodgeClass() = default;
  explicit EqHodgeClass(GroupSpec g) : group_(std::move(g)) {}

  const GroupSpec& group() const { return group_; }
  const std::map<HodgeAtom, long long>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  long long rank() const;        // sum of multiplicities
  long long total_size() const;  // sum of |multiplicities|

  void add_atom(const HodgeAtom& a, long long mult);
  long long mult_of(const HodgeAtom& a) const;

  bool operator==(const EqHodgeClass& o) const {
    return group_ == o.group_ && atoms_ == o.atoms_;
  }

 private:
  GroupSpec group_;
  std::map<HodgeAtom, long long> atoms_;
};

Character trivial_character(const GroupSpec& g);
EqHodgeClass unit_class(const GroupSpec& g);  // [Q]

EqHodgeClass add(const EqHodgeClass& a, const EqHodgeClass& b);
EqHodgeClass negate(const EqHodgeClass& a);
EqHodgeClass tensor(const EqHodgeClass& a, const EqHodgeClass& b);

// atoms whose character is trivial on every selected factor
EqHodgeClass invariants(const EqHodgeClass& a, const std::vector<int>& factor_sel);
EqHodgeClass nontrivial_part(const EqHodgeClass& a, const std::vector<int>& factor_sel);

// induction along componentwise inclusions mu_{h_j} <= mu_{c_j}
EqHodgeClass induce(const EqHodgeClass& a, const GroupSpec& target);

EqHodgeClass tate_twist(const EqHodgeClass& a, int k);

// multiplication by [Q] - [Q(-1)]
EqHodgeClass mul1mL(const EqHodgeClass& a);
// exact division by [Q] - [Q(-1)]; throws NotDivisible with the remainder
EqHodgeClass div1mL(const EqHodgeClass& a);

// re-index a character k mod old_order as (new/old)k mod new_order on one factor
EqHodgeClass rebase_factor(const EqHodgeClass& a, int factor, int new_order);
// single-factor convenience matching the mu_d -> mu_m pullback
EqHodgeClass rebase(const EqHodgeClass& a, int m);

// drop factors; characters must be trivial on the dropped ones
EqHodgeClass project_to_factors(const EqHodgeClass& a, const std::vector<int>& keep,
                                int new_monodromy);

// embed into a larger group: factor j of a lands at position placement[j];
// characters are trivial elsewhere.  With conjugate = true residues are
// negated (pairing side of the convolution contraction).
EqHodgeClass embed(const EqHodgeClass& a, const GroupSpec& target,
                   const std::vector<int>& placement, bool conjugate = false);

bool is_polarizable(const EqHodgeClass& a);  // h^{p,q}(chi) == h^{q,p}(chi^-1)

struct SpectralEntry {
  Rat alpha;
  int weight = 0;
  int p = 0, q = 0;
  Character chi;
  long long mult = 0;
};

struct SpectralTable {
  std::vector<SpectralEntry> entries;
  std::multiset<Rat> alpha_multiset(bool flip_sign = false) const;
};

// alpha = (n - 1 - p) + k/m, k in {1..m} congruent to the monodromy residue
SpectralTable spectral_table(const EqHodgeClass& a, int nvars);

std::string class_to_string(const EqHodgeClass& a);

}  // namespace singconv

#endif
