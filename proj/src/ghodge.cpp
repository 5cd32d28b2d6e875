#include "singconv/ghodge.hpp"

#include <algorithm>
#include <sstream>

#include "singconv/errors.hpp"

namespace singconv {

namespace {

int mod_residue(long long v, int order) {
  long long r = v % order;
  if (r < 0) r += order;
  return static_cast<int>(r);
}

void require_same_group(const EqHodgeClass& a, const EqHodgeClass& b) {
  if (a.group() != b.group()) throw GroupMismatch("classes live over different groups");
}

void validate_selector(const GroupSpec& g, const std::vector<int>& sel) {
  for (int s : sel)
    if (s < 0 || s >= g.factors()) throw BadSelector("factor index out of range");
}

}  // namespace

long long EqHodgeClass::rank() const {
  long long r = 0;
  for (const auto& [a, m] : atoms_) r += m;
  return r;
}

long long EqHodgeClass::total_size() const {
  long long r = 0;
  for (const auto& [a, m] : atoms_) r += m < 0 ? -m : m;
  return r;
}

void EqHodgeClass::add_atom(const HodgeAtom& a, long long mult) {
  if (mult == 0) return;
  if (static_cast<int>(a.chi.residues.size()) != group_.factors())
    throw GroupMismatch("atom character arity mismatch");
  for (int j = 0; j < group_.factors(); ++j) {
    if (a.chi.residues[j] < 0 || a.chi.residues[j] >= group_.orders[j])
      throw InputError("character residue out of range");
  }
  auto it = atoms_.find(a);
  if (it == atoms_.end()) {
    atoms_.emplace(a, mult);
  } else {
    it->second += mult;
    if (it->second == 0) atoms_.erase(it);
  }
}

long long EqHodgeClass::mult_of(const HodgeAtom& a) const {
  auto it = atoms_.find(a);
  return it == atoms_.end() ? 0 : it->second;
}

Character trivial_character(const GroupSpec& g) {
  Character c;
  c.residues.assign(g.factors(), 0);
  return c;
}

EqHodgeClass unit_class(const GroupSpec& g) {
  EqHodgeClass u(g);
  u.add_atom({0, 0, trivial_character(g)}, 1);
  return u;
}

EqHodgeClass add(const EqHodgeClass& a, const EqHodgeClass& b) {
  require_same_group(a, b);
  EqHodgeClass out = a;
  for (const auto& [atom, m] : b.atoms()) out.add_atom(atom, m);
  return out;
}

EqHodgeClass negate(const EqHodgeClass& a) {
  EqHodgeClass out(a.group());
  for (const auto& [atom, m] : a.atoms()) out.add_atom(atom, -m);
  return out;
}

EqHodgeClass tensor(const EqHodgeClass& a, const EqHodgeClass& b) {
  require_same_group(a, b);
  const GroupSpec& g = a.group();
  EqHodgeClass out(g);
  for (const auto& [x, mx] : a.atoms()) {
    for (const auto& [y, my] : b.atoms()) {
      HodgeAtom z;
      z.p = x.p + y.p;
      z.q = x.q + y.q;
      z.chi.residues.resize(g.factors());
      for (int j = 0; j < g.factors(); ++j)
        z.chi.residues[j] = mod_residue(x.chi.residues[j] + y.chi.residues[j], g.orders[j]);
      out.add_atom(z, mx * my);
    }
  }
  return out;
}

EqHodgeClass invariants(const EqHodgeClass& a, const std::vector<int>& sel) {
  validate_selector(a.group(), sel);
  EqHodgeClass out(a.group());
  for (const auto& [atom, m] : a.atoms()) {
    bool keep = true;
    for (int s : sel)
      if (atom.chi.residues[s] != 0) { keep = false; break; }
    if (keep) out.add_atom(atom, m);
  }
  return out;
}

EqHodgeClass nontrivial_part(const EqHodgeClass& a, const std::vector<int>& sel) {
  validate_selector(a.group(), sel);
  return add(a, negate(invariants(a, sel)));
}

EqHodgeClass induce(const EqHodgeClass& a, const GroupSpec& target) {
  const GroupSpec& h = a.group();
  if (h.factors() != target.factors())
    throw NotASubgroup("induction needs matching factor counts");
  for (int j = 0; j < h.factors(); ++j)
    if (target.orders[j] % h.orders[j] != 0)
      throw NotASubgroup("subgroup order does not divide");
  EqHodgeClass out(target);
  for (const auto& [atom, m] : a.atoms()) {
    // product over factors of the characters extending the given one
    std::vector<std::vector<int>> choices(h.factors());
    for (int j = 0; j < h.factors(); ++j) {
      int c = target.orders[j], hh = h.orders[j], k = atom.chi.residues[j];
      for (int r = 0; r < c; ++r)
        if (r % hh == k) choices[j].push_back(r);
    }
    std::vector<int> pick(h.factors(), 0);
    while (true) {
      HodgeAtom z;
      z.p = atom.p;
      z.q = atom.q;
      z.chi.residues.resize(h.factors());
      for (int j = 0; j < h.factors(); ++j) z.chi.residues[j] = choices[j][pick[j]];
      out.add_atom(z, m);
      int j = 0;
      while (j < h.factors() && pick[j] + 1 == static_cast<int>(choices[j].size())) pick[j++] = 0;
      if (j == h.factors()) break;
      ++pick[j];
    }
  }
  return out;
}

EqHodgeClass tate_twist(const EqHodgeClass& a, int k) {
  EqHodgeClass out(a.group());
  for (const auto& [atom, m] : a.atoms()) {
    HodgeAtom z = atom;
    z.p += k;
    z.q += k;
    out.add_atom(z, m);
  }
  return out;
}

EqHodgeClass mul1mL(const EqHodgeClass& a) {
  return add(a, negate(tate_twist(a, 1)));
}

EqHodgeClass div1mL(const EqHodgeClass& a) {
  if (a.empty()) return a;
  // c_s = a_s + t c_{s-2} by level s = p+q; the two top layers must vanish
  int max_level = 0;
  for (const auto& [atom, m] : a.atoms()) max_level = std::max(max_level, atom.p + atom.q);
  std::vector<EqHodgeClass> layers(max_level + 1, EqHodgeClass(a.group()));
  for (const auto& [atom, m] : a.atoms()) layers[atom.p + atom.q].add_atom(atom, m);
  std::vector<EqHodgeClass> c(max_level + 1, EqHodgeClass(a.group()));
  for (int s = 0; s <= max_level; ++s) {
    c[s] = layers[s];
    if (s >= 2) c[s] = add(c[s], tate_twist(c[s - 2], 1));
  }
  EqHodgeClass rem(a.group());
  if (max_level >= 1) rem = add(rem, tate_twist(c[max_level - 1], 1));
  rem = add(rem, tate_twist(c[max_level], 1));
  if (!rem.empty())
    throw NotDivisible("class is not divisible by [Q]-[Q(-1)]; remainder " +
                       class_to_string(rem));
  // the two top layers vanished, so the plain sum is the quotient
  EqHodgeClass out(a.group());
  for (int s = 0; s <= max_level; ++s) out = add(out, c[s]);
  return out;
}

EqHodgeClass rebase_factor(const EqHodgeClass& a, int factor, int new_order) {
  const GroupSpec& g = a.group();
  if (factor < 0 || factor >= g.factors()) throw BadSelector("factor index out of range");
  int d = g.orders[factor];
  if (new_order % d != 0) throw NotDivisor("old order must divide the new order");
  GroupSpec tg = g;
  tg.orders[factor] = new_order;
  int scale = new_order / d;
  EqHodgeClass out(tg);
  for (const auto& [atom, m] : a.atoms()) {
    HodgeAtom z = atom;
    z.chi.residues[factor] = mod_residue(static_cast<long long>(atom.chi.residues[factor]) * scale,
                                         new_order);
    out.add_atom(z, m);
  }
  return out;
}

EqHodgeClass rebase(const EqHodgeClass& a, int m) {
  if (a.group().factors() != 1) throw BadSelector("rebase expects a single-factor class");
  return rebase_factor(a, 0, m);
}

EqHodgeClass project_to_factors(const EqHodgeClass& a, const std::vector<int>& keep,
                                int new_monodromy) {
  const GroupSpec& g = a.group();
  validate_selector(g, keep);
  GroupSpec tg;
  for (int j : keep) tg.orders.push_back(g.orders[j]);
  tg.monodromy = new_monodromy;
  std::vector<bool> kept(g.factors(), false);
  for (int j : keep) kept[j] = true;
  EqHodgeClass out(tg);
  for (const auto& [atom, m] : a.atoms()) {
    for (int j = 0; j < g.factors(); ++j)
      if (!kept[j] && atom.chi.residues[j] != 0)
        throw BadSelector("projection would lose a nontrivial character");
    HodgeAtom z;
    z.p = atom.p;
    z.q = atom.q;
    for (int j : keep) z.chi.residues.push_back(atom.chi.residues[j]);
    out.add_atom(z, m);
  }
  return out;
}

EqHodgeClass embed(const EqHodgeClass& a, const GroupSpec& target,
                   const std::vector<int>& placement, bool conjugate) {
  const GroupSpec& g = a.group();
  if (placement.size() != static_cast<std::size_t>(g.factors()))
    throw BadSelector("placement arity mismatch");
  for (int j = 0; j < g.factors(); ++j) {
    int t = placement[j];
    if (t < 0 || t >= target.factors()) throw BadSelector("placement out of range");
    if (target.orders[t] != g.orders[j])
      throw GroupMismatch("embedded factor orders must match");
  }
  EqHodgeClass out(target);
  for (const auto& [atom, m] : a.atoms()) {
    HodgeAtom z;
    z.p = atom.p;
    z.q = atom.q;
    z.chi = trivial_character(target);
    for (int j = 0; j < g.factors(); ++j) {
      int r = atom.chi.residues[j];
      if (conjugate) r = mod_residue(-r, g.orders[j]);
      z.chi.residues[placement[j]] = r;
    }
    out.add_atom(z, m);
  }
  return out;
}

bool is_polarizable(const EqHodgeClass& a) {
  const GroupSpec& g = a.group();
  for (const auto& [atom, m] : a.atoms()) {
    HodgeAtom conj;
    conj.p = atom.q;
    conj.q = atom.p;
    conj.chi.residues.resize(g.factors());
    for (int j = 0; j < g.factors(); ++j)
      conj.chi.residues[j] = mod_residue(-atom.chi.residues[j], g.orders[j]);
    if (a.mult_of(conj) != m) return false;
  }
  return true;
}

std::multiset<Rat> SpectralTable::alpha_multiset(bool flip_sign) const {
  std::multiset<Rat> out;
  for (const auto& e : entries) {
    long long m = flip_sign ? -e.mult : e.mult;
    if (m < 0) throw AlgebraError("negative multiplicity in spectral multiset");
    for (long long i = 0; i < m; ++i) out.insert(e.alpha);
  }
  return out;
}

SpectralTable spectral_table(const EqHodgeClass& a, int nvars) {
  const GroupSpec& g = a.group();
  if (g.monodromy < 0 || g.monodromy >= g.factors())
    throw NoMonodromyFactor("class group has no monodromy factor");
  int m = g.orders[g.monodromy];
  SpectralTable t;
  for (const auto& [atom, mult] : a.atoms()) {
    SpectralEntry e;
    e.p = atom.p;
    e.q = atom.q;
    e.chi = atom.chi;
    e.mult = mult;
    e.weight = atom.p + atom.q;
    int k = atom.chi.residues[g.monodromy];
    if (k == 0) k = m;  // representative in {1..m}
    e.alpha = Rat(nvars - 1 - atom.p) + Rat(k, m);
    t.entries.push_back(e);
  }
  return t;
}

std::string class_to_string(const EqHodgeClass& a) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [atom, m] : a.atoms()) {
    if (!first) os << ", ";
    first = false;
    os << "(" << atom.p << "," << atom.q << ",[";
    for (std::size_t j = 0; j < atom.chi.residues.size(); ++j) {
      if (j) os << ",";
      os << atom.chi.residues[j];
    }
    os << "]):" << m;
  }
  os << "}";
  return os.str();
}

}  // namespace singconv
