#include "singconv/convolve.hpp"

#include <numeric>

#include "singconv/errors.hpp"

namespace singconv {

namespace {

// factor layout of the working group: every bundle's spectators in order,
// then one pairing factor per bundle, then the monodromy factor
struct Layout {
  GroupSpec big;
  std::vector<std::vector<int>> spect_slots;  // per bundle
  std::vector<int> pairing_slot;              // per bundle
  int mono_slot = -1;
  std::vector<int> out_slots;  // spectators + monodromy, in output order
};

Layout make_layout(const std::vector<GermClassBundle>& bundles, int m) {
  Layout lay;
  int n = static_cast<int>(bundles.size());
  lay.spect_slots.resize(n);
  for (int i = 0; i < n; ++i) {
    const GroupSpec& g = bundles[i].phi.group();
    for (int j = 0; j + 1 < g.factors(); ++j) {
      lay.spect_slots[i].push_back(static_cast<int>(lay.big.orders.size()));
      lay.big.orders.push_back(g.orders[j]);
    }
  }
  lay.pairing_slot.resize(n);
  for (int i = 0; i < n; ++i) {
    const GroupSpec& g = bundles[i].phi.group();
    if (g.orders.empty() || g.orders.back() != bundles[i].d)
      throw GroupMismatch("bundle pairing factor must be its last group factor of order d");
    lay.pairing_slot[i] = static_cast<int>(lay.big.orders.size());
    lay.big.orders.push_back(bundles[i].d);
  }
  lay.mono_slot = static_cast<int>(lay.big.orders.size());
  lay.big.orders.push_back(m);
  lay.big.monodromy = lay.mono_slot;

  for (int i = 0; i < n; ++i)
    for (int s : lay.spect_slots[i]) lay.out_slots.push_back(s);
  lay.out_slots.push_back(lay.mono_slot);
  return lay;
}

// bundle class embedded into the big group; the pairing factor is conjugated
// so that the invariant contraction matches equal deck labels
EqHodgeClass embed_bundle_class(const EqHodgeClass& c, const Layout& lay, int i,
                                bool conj_pairing) {
  std::vector<int> placement = lay.spect_slots[i];
  placement.push_back(lay.pairing_slot[i]);
  if (!conj_pairing) return embed(c, lay.big, placement);
  // conjugate only the pairing factor: negate that residue before embedding
  EqHodgeClass flipped(c.group());
  int pf = c.group().factors() - 1;
  int order = c.group().orders[pf];
  for (const auto& [atom, mult] : c.atoms()) {
    HodgeAtom z = atom;
    z.chi.residues[pf] = (order - atom.chi.residues[pf]) % order;
    flipped.add_atom(z, mult);
  }
  return embed(flipped, lay.big, placement);
}

// nontrivial pairing part with its deck label pushed into the monodromy slot
EqHodgeClass embed_rebased_nontrivial(const GermClassBundle& b, const Layout& lay, int i, int m) {
  EqHodgeClass ne = nontrivial_part(b.Phi(), {b.pairing_factor()});
  EqHodgeClass reb = rebase_factor(ne, b.pairing_factor(), m);
  std::vector<int> placement = lay.spect_slots[i];
  placement.push_back(lay.mono_slot);
  return embed(reb, lay.big, placement);
}

EqHodgeClass embed_invariant_part(const GermClassBundle& b, const Layout& lay, int i) {
  EqHodgeClass inv = invariants(b.Phi(), {b.pairing_factor()});
  std::vector<int> placement = lay.spect_slots[i];
  placement.push_back(lay.pairing_slot[i]);
  return embed(inv, lay.big, placement);
}

}  // namespace

void ConvolutionJob::validate() const {
  if (n != static_cast<int>(bundles.size())) throw InputError("bundle count mismatch");
  if (registry.n != n) throw GroupMismatch("registry arity mismatch");
  for (int i = 0; i < n; ++i) {
    if (registry.d[i] != bundles[i].d)
      throw GroupMismatch("registry d-vector does not match the bundles");
  }
  if (registry.m != m) throw GroupMismatch("registry m mismatch");
}

EqHodgeClass convolve(const ConvolutionJob& job) {
  job.validate();
  int n = job.n;
  Layout lay = make_layout(job.bundles, job.m);

  EqHodgeClass acc(lay.big);
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> I;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) I.push_back(i);

    // registry entry lives over (mu_{d_1},...,mu_{d_n}, mu_m)
    std::vector<int> placement = lay.pairing_slot;
    placement.push_back(lay.mono_slot);
    EqHodgeClass term = embed(job.registry.entry(I), lay.big, placement);

    std::vector<int> contract;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) continue;
      term = tensor(term, embed_bundle_class(job.bundles[i].phi, lay, i, true));
      contract.push_back(lay.pairing_slot[i]);
    }
    term = invariants(term, contract);
    for (int i : I) term = tensor(term, embed_invariant_part(job.bundles[i], lay, i));
    if (__builtin_popcount(static_cast<unsigned>(mask)) % 2 == 1) term = negate(term);
    acc = add(acc, term);
  }
  return project_to_factors(acc, lay.out_slots, static_cast<int>(lay.out_slots.size()) - 1);
}

EqHodgeClass thom_sebastiani(const GermClassBundle& b1, const GermClassBundle& b2) {
  int m = static_cast<int>(std::lcm(static_cast<long long>(b1.d), static_cast<long long>(b2.d)));
  std::vector<GermClassBundle> bundles{b1, b2};
  Layout lay = make_layout(bundles, m);

  EqHodgeClass fermat = fermat_class({b1.d, b2.d}, m);
  EqHodgeClass f_emb =
      embed(fermat, lay.big, {lay.pairing_slot[0], lay.pairing_slot[1], lay.mono_slot});

  EqHodgeClass t1 = tensor(tensor(embed_bundle_class(b1.Phi(), lay, 0, true),
                                  embed_bundle_class(b2.Phi(), lay, 1, true)),
                           f_emb);
  t1 = invariants(t1, {lay.pairing_slot[0], lay.pairing_slot[1]});

  EqHodgeClass ne1 = embed_rebased_nontrivial(b1, lay, 0, m);
  EqHodgeClass ne2 = embed_rebased_nontrivial(b2, lay, 1, m);
  EqHodgeClass inv1 = embed_invariant_part(b1, lay, 0);
  EqHodgeClass inv2 = embed_invariant_part(b2, lay, 1);
  EqHodgeClass full1 = add(ne1, inv1);
  EqHodgeClass full2 = add(ne2, inv2);

  // Phi_12 = T1 + ne1 (x) ne2 - full1 (x) full2.  The lower-order signs
  // follow the subset expansion of the convolution engine (the registry
  // entry on the full subset is -[Q]); see v_form_identity for the comparison
  // with the published three-term layout.
  EqHodgeClass out = add(t1, tensor(ne1, ne2));
  out = add(out, negate(tensor(full1, full2)));
  return project_to_factors(out, lay.out_slots, static_cast<int>(lay.out_slots.size()) - 1);
}

EqHodgeClass v_form_identity(const GermClassBundle& b1, const GermClassBundle& b2) {
  int m = static_cast<int>(std::lcm(static_cast<long long>(b1.d), static_cast<long long>(b2.d)));
  std::vector<GermClassBundle> bundles{b1, b2};
  Layout lay = make_layout(bundles, m);

  // V(d1, d2) is the Fermat-curve H^1 itself; the engine's inner class is
  // its negative (reduced Euler class), so the leading term enters with a
  // minus sign here
  EqHodgeClass v_class = negate(fermat_class({b1.d, b2.d}, m));
  EqHodgeClass v_emb =
      embed(v_class, lay.big, {lay.pairing_slot[0], lay.pairing_slot[1], lay.mono_slot});

  EqHodgeClass lead = tensor(tensor(embed_bundle_class(b1.Phi(), lay, 0, true),
                                    embed_bundle_class(b2.Phi(), lay, 1, true)),
                             v_emb);
  lead = negate(invariants(lead, {lay.pairing_slot[0], lay.pairing_slot[1]}));

  EqHodgeClass ne1 = embed_rebased_nontrivial(b1, lay, 0, m);
  EqHodgeClass ne2 = embed_rebased_nontrivial(b2, lay, 1, m);
  EqHodgeClass full1 = add(ne1, embed_invariant_part(b1, lay, 0));
  EqHodgeClass full2 = add(ne2, embed_invariant_part(b2, lay, 1));

  EqHodgeClass out = add(lead, tensor(ne1, ne2));
  out = add(out, negate(tensor(full1, full2)));
  EqHodgeClass res =
      project_to_factors(out, lay.out_slots, static_cast<int>(lay.out_slots.size()) - 1);

  EqHodgeClass ts = thom_sebastiani(b1, b2);
  if (!(res == ts))
    throw MismatchReport("V-form and three-term form disagree: " + class_to_string(res) +
                         " vs " + class_to_string(ts));
  return res;
}

}  // namespace singconv
