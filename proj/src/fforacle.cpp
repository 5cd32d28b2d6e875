#include "singconv/fforacle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include "singconv/errors.hpp"

namespace singconv {

// --- cyclotomic arithmetic ---

Cyclo Cyclo::zeta_pow(int n, long long k, const Rat& coeff) {
  Cyclo z(n);
  z.add_power(k, coeff);
  return z;
}

Cyclo Cyclo::rational(int n, const Rat& r) { return zeta_pow(n, 0, r); }

void Cyclo::add_power(long long k, const Rat& coeff) {
  long long i = k % n_;
  if (i < 0) i += n_;
  c_[static_cast<std::size_t>(i)] += coeff;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (n_ != o.n_) throw AlgebraError("cyclotomic modulus mismatch");
  for (int i = 0; i < n_; ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  if (n_ != o.n_) throw AlgebraError("cyclotomic modulus mismatch");
  for (int i = 0; i < n_; ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  if (n_ != o.n_) throw AlgebraError("cyclotomic modulus mismatch");
  Cyclo out(n_);
  for (int i = 0; i < n_; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < n_; ++j) {
      if (o.c_[j] == 0) continue;
      out.c_[(i + j) % n_] += c_[i] * o.c_[j];
    }
  }
  return out;
}

Cyclo& Cyclo::scale(const Rat& r) {
  for (auto& x : c_) x *= r;
  return *this;
}

Cyclo Cyclo::conj() const {
  Cyclo out(n_);
  for (int i = 0; i < n_; ++i) out.c_[(n_ - i) % n_] = c_[i];
  return out;
}

std::vector<Int> cyclotomic_poly(int n) {
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact division
  static std::map<int, std::vector<Int>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Int> num(n + 1, Int(0));
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    std::vector<Int> phi_d = cyclotomic_poly(d);
    // divide num by phi_d (monic), exactly
    std::vector<Int> q(num.size() - phi_d.size() + 1, Int(0));
    std::vector<Int> rem = num;
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
      Int c = rem[i + phi_d.size() - 1];
      q[i] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j < phi_d.size(); ++j) rem[i + j] -= c * phi_d[j];
    }
    num = q;
  }
  cache[n] = num;
  return num;
}

QVec Cyclo::reduced() const {
  std::vector<Int> phi = cyclotomic_poly(n_);
  int deg = static_cast<int>(phi.size()) - 1;
  QVec rem(c_);
  for (int i = n_ - 1; i >= deg; --i) {
    Rat c = rem[i];
    if (c == 0) continue;
    for (int j = 0; j <= deg; ++j) rem[i - deg + j] -= c * Rat(phi[j]);
  }
  rem.resize(deg);
  return rem;
}

bool Cyclo::is_zero() const {
  for (const auto& x : reduced())
    if (x != 0) return false;
  return true;
}

bool Cyclo::equals(const Cyclo& o) const {
  Cyclo diff = *this;
  diff -= o;
  return diff.is_zero();
}

bool Cyclo::rational_value(Rat* out) const {
  QVec r = reduced();
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] != 0) return false;
  if (out) *out = r.empty() ? Rat(0) : r[0];
  return true;
}

std::string Cyclo::str() const {
  QVec r = reduced();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << r[i] << ")";
    if (i == 1) os << "*z";
    if (i > 1) os << "*z^" << i;
  }
  if (first) os << "0";
  return os.str();
}

long long primitive_root(long long p) {
  std::vector<long long> prime_factors;
  long long q = p - 1;
  for (long long f = 2; f * f <= q; ++f) {
    if (q % f == 0) {
      prime_factors.push_back(f);
      while (q % f == 0) q /= f;
    }
  }
  if (q > 1) prime_factors.push_back(q);
  for (long long g = 2; g < p; ++g) {
    bool ok = true;
    for (long long f : prime_factors)
      if (mod_pow(g, (p - 1) / f, p) == 1) { ok = false; break; }
    if (ok) return g;
  }
  throw BadPrime("no primitive root; p is not prime");
}

long long FiberCountTable::total() const {
  long long t = 0;
  for (long long c : counts) t += c;
  return t;
}

FiberCountTable count_fibers(const GermPoly& g, long long p, long long max_enum, int jobs) {
  int k = g.nvars();
  double size = 1;
  for (int i = 0; i < k; ++i) size *= static_cast<double>(p);
  if (size > static_cast<double>(max_enum))
    throw TooLarge("fiber enumeration exceeds the configured bound");
  for (const auto& [e, c] : g.terms())
    if (boost::multiprecision::denominator(c) % p == 0)
      throw BadPrime("denominator divisible by p");

  FiberCountTable t;
  t.p = p;
  t.yvars = k;
  t.counts.assign(p, 0);
  if (k == 0) {
    t.counts[0] = 1;
    return t;
  }

  jobs = std::max(1, jobs);
  jobs = static_cast<int>(std::min<long long>(jobs, p));
  std::vector<std::vector<long long>> partial(jobs, std::vector<long long>(p, 0));
  auto worker = [&](int w) {
    std::vector<long long> y(k, 0);
    for (long long lead = w; lead < p; lead += jobs) {
      y[0] = lead;
      std::fill(y.begin() + 1, y.end(), 0);
      while (true) {
        partial[w][g.eval_mod(y, p)] += 1;
        int i = 1;
        while (i < k && y[i] == p - 1) y[i++] = 0;
        if (i == k) break;
        ++y[i];
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (int w = 0; w < jobs; ++w)
    for (long long x = 0; x < p; ++x) t.counts[x] += partial[w][x];
  return t;
}

const Cyclo& CharCoefficients::block_coef(int k) const {
  return coef[static_cast<std::size_t>(k) * ((p - 1) / d)];
}

CharCoefficients char_decompose(const FiberCountTable& t, int d) {
  long long p = t.p;
  if ((p - 1) % d != 0) throw NotDividing("d must divide p - 1");
  CharCoefficients cc;
  cc.p = p;
  cc.d = d;
  cc.generator = primitive_root(p);
  cc.special = t.counts[0];
  int n = static_cast<int>(p - 1);

  std::vector<int> ind(p, 0);  // discrete log
  {
    long long x = 1;
    for (int j = 0; j < n; ++j) {
      ind[x] = j;
      x = x * cc.generator % p;
    }
  }
  Rat inv(1, n);
  for (int a = 0; a < n; ++a) {
    Cyclo c(n);
    for (long long x = 1; x < p; ++x) {
      if (t.counts[x] == 0) continue;
      c.add_power(-static_cast<long long>(a) * ind[x], Rat(t.counts[x]));
    }
    c.scale(inv);
    cc.coef.push_back(std::move(c));
  }
  int step = n / d;
  for (int a = 0; a < n; ++a) {
    if (a % step == 0) continue;
    if (!cc.coef[a].is_zero()) {
      int order = n / std::gcd(a, n);
      cc.violations.push_back({a, order});
    }
  }
  return cc;
}

int StratumProfile::tuple_count() const {
  int t = 1;
  for (int i : comp) t *= d[i];
  return t;
}

int StratumProfile::tuple_rank(const std::vector<int>& ks) const {
  int r = 0;
  for (std::size_t j = 0; j < comp.size(); ++j) r = r * d[comp[j]] + ks[j];
  return r;
}

Cyclo StratumProfile::value(const std::vector<int>& ks, long long u) const {
  int n = static_cast<int>(p - 1);
  Cyclo c(n);
  const auto& row = raw[tuple_rank(ks)][u];
  for (int i = 0; i < n; ++i)
    if (row[i] != 0) c.add_power(i, Rat(row[i]));
  return c;
}

Cyclo StratumProfile::mu_coefficient(const std::vector<int>& ks, int b, long long generator) const {
  int n = static_cast<int>(p - 1);
  std::vector<int> ind(p, 0);
  {
    long long x = 1;
    for (int j = 0; j < n; ++j) {
      ind[x] = j;
      x = x * generator % p;
    }
  }
  Cyclo acc(n);
  const auto& rows = raw[tuple_rank(ks)];
  for (long long u = 1; u < p; ++u) {
    for (int i = 0; i < n; ++i) {
      if (rows[u][i] == 0) continue;
      acc.add_power(i - static_cast<long long>(b) * ind[u], Rat(rows[u][i]));
    }
  }
  acc.scale(Rat(1, n));
  return acc;
}

StratumProfile stratum_profile(const GermPoly& f, const std::vector<int>& d,
                               const std::vector<int>& I, long long p, int m) {
  int n = f.nvars();
  if (static_cast<int>(d.size()) != n) throw InputError("d-vector arity mismatch");
  for (int di : d)
    if ((p - 1) % di != 0) throw NotDividing("each d_i must divide p - 1");
  if ((p - 1) % m != 0) throw NotDividing("m must divide p - 1");

  StratumProfile sp;
  sp.p = p;
  sp.I = I;
  sp.d = d;
  sp.m = m;
  std::vector<bool> in_I(n, false);
  for (int i : I) {
    if (i < 0 || i >= n) throw InputError("subset index out of range");
    in_I[i] = true;
  }
  for (int i = 0; i < n; ++i)
    if (!in_I[i]) sp.comp.push_back(i);

  int nn = static_cast<int>(p - 1);
  long long g = primitive_root(p);
  std::vector<int> ind(p, 0);
  {
    long long x = 1;
    for (int j = 0; j < nn; ++j) {
      ind[x] = j;
      x = x * g % p;
    }
  }

  int tuples = sp.tuple_count();
  sp.raw.assign(tuples, std::vector<std::vector<long long>>(p, std::vector<long long>(nn, 0)));

  int k = static_cast<int>(sp.comp.size());
  std::vector<long long> x(n, 0);
  std::vector<long long> tor(k, 1);
  while (true) {
    for (int j = 0; j < k; ++j) x[sp.comp[j]] = tor[j];
    long long u = f.eval_mod(x, p);
    // chi_{k_i} with k_i in [0, d_i): weight zeta^{ sum k_i (p-1)/d_i ind(x_i) }
    std::vector<int> ks(k, 0);
    while (true) {
      long long pw = 0;
      for (int j = 0; j < k; ++j)
        pw += static_cast<long long>(ks[j]) * (nn / d[sp.comp[j]]) * ind[tor[j]];
      sp.raw[sp.tuple_rank(ks)][u][pw % nn] += 1;
      int j = k - 1;
      while (j >= 0 && ks[j] + 1 == d[sp.comp[j]]) ks[j--] = 0;
      if (j < 0) break;
      ++ks[j];
    }
    int j = 0;
    while (j < k && tor[j] == p - 1) tor[j++] = 1;
    if (j == k) break;
    ++tor[j];
  }
  return sp;
}

std::vector<long long> composite_counts_shortcut(const GermPoly& f,
                                                 const std::vector<FiberCountTable>& tables,
                                                 long long p) {
  int n = f.nvars();
  std::vector<long long> out(p, 0);
  std::vector<long long> x(n, 0);
  while (true) {
    long long u = f.eval_mod(x, p);
    long long w = 1;
    for (int i = 0; i < n; ++i) w *= tables[i].counts[x[i]];
    out[u] += w;
    int i = 0;
    while (i < n && x[i] == p - 1) x[i++] = 0;
    if (i == n) break;
    ++x[i];
  }
  return out;
}

std::vector<long long> composite_counts_direct(const GermPoly& f,
                                               const std::vector<GermPoly>& gs, long long p,
                                               long long max_enum) {
  int total_vars = 0;
  for (const auto& g : gs) total_vars += g.nvars();
  double size = 1;
  for (int i = 0; i < total_vars; ++i) size *= static_cast<double>(p);
  if (size > static_cast<double>(max_enum))
    throw TooLarge("direct composite enumeration exceeds the configured bound");
  int n = f.nvars();
  std::vector<long long> out(p, 0);
  std::vector<long long> y(total_vars, 0);
  while (true) {
    std::vector<long long> x(n);
    int off = 0;
    for (int i = 0; i < n; ++i) {
      std::vector<long long> yi(y.begin() + off, y.begin() + off + gs[i].nvars());
      x[i] = gs[i].eval_mod(yi, p);
      off += gs[i].nvars();
    }
    out[f.eval_mod(x, p)] += 1;
    int i = 0;
    while (i < total_vars && y[i] == p - 1) y[i++] = 0;
    if (i == total_vars) break;
    ++y[i];
  }
  return out;
}

VerifyReport verify_convolution(const GermPoly& f, const std::vector<GermPoly>& gs,
                                const std::vector<int>& d, long long p, int m,
                                const VerifyOptions& opt) {
  int n = f.nvars();
  VerifyReport rep;
  rep.p = p;
  rep.m = m;
  if (static_cast<int>(gs.size()) != n || static_cast<int>(d.size()) != n)
    throw PreconditionViolation("f arity, g list and d vector must agree");
  for (int di : d)
    if ((p - 1) % di != 0)
      throw PreconditionViolation("d_i does not divide p - 1");
  if ((p - 1) % m != 0) throw PreconditionViolation("m does not divide p - 1");
  if (opt.require_quasi_homogeneous) {
    for (int i = 0; i < n; ++i)
      if (!gs[i].is_quasi_homogeneous())
        throw PreconditionViolation("g_" + std::to_string(i + 1) +
                                    " is not quasi-homogeneous; the germ and the global "
                                    "polynomial differ and counting is unsound");
  }

  int nn = static_cast<int>(p - 1);
  long long gen = primitive_root(p);
  std::vector<int> ind(p, 0);
  {
    long long x = 1;
    for (int j = 0; j < nn; ++j) {
      ind[x] = j;
      x = x * gen % p;
    }
  }

  // per-germ data
  std::vector<FiberCountTable> tables;
  std::vector<CharCoefficients> coefs;
  for (int i = 0; i < n; ++i) {
    tables.push_back(count_fibers(gs[i], p, opt.max_enum, opt.jobs));
    coefs.push_back(char_decompose(tables.back(), d[i]));
    for (const auto& v : coefs.back().violations) {
      rep.notes.push_back("tameness violation in g_" + std::to_string(i + 1) +
                          ": character index " + std::to_string(v.index) + " of order " +
                          std::to_string(v.order));
    }
  }
  if (!rep.notes.empty())
    throw TamenessViolation("inner germ has coefficients outside its d-block: " + rep.notes[0]);

  // LHS: composite counts minus the central constant
  std::vector<long long> comp_counts = composite_counts_shortcut(f, tables, p);
  if (opt.cross_check_direct) {
    int total_vars = 0;
    for (const auto& g : gs) total_vars += g.nvars();
    double size = 1;
    for (int i = 0; i < total_vars; ++i) size *= static_cast<double>(p);
    if (size <= static_cast<double>(opt.max_enum)) {
      auto direct = composite_counts_direct(f, gs, p, opt.max_enum);
      if (direct != comp_counts)
        throw AlgebraError("internal inconsistency: direct and shortcut counts differ");
    }
  }
  long long central = 1;
  for (int i = 0; i < n; ++i) central *= tables[i].counts[0];

  std::vector<Cyclo> lhs(nn, Cyclo(nn));
  for (int b = 0; b < nn; ++b) {
    Cyclo acc(nn);
    for (long long u = 1; u < p; ++u) {
      long long v = comp_counts[u] - central;
      if (v != 0) acc.add_power(-static_cast<long long>(b) * ind[u], Rat(v));
    }
    acc.scale(Rat(1, nn));
    lhs[b] = acc;
  }

  // torus stratum profiles for every subset
  std::vector<StratumProfile> profiles;
  profiles.reserve(1 << n);
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> I;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) I.push_back(i);
    profiles.push_back(stratum_profile(f, d, I, p, m));
  }

  // mu-slices of every profile, cached: slice[mask][tuple][b]
  std::vector<std::vector<std::vector<Cyclo>>> slices(1 << n);
  for (int mask = 0; mask < (1 << n); ++mask) {
    const StratumProfile& sp = profiles[mask];
    int tuples = sp.tuple_count();
    slices[mask].assign(tuples, std::vector<Cyclo>(nn, Cyclo(nn)));
    int k = static_cast<int>(sp.comp.size());
    std::vector<int> ks(k, 0);
    int rank = 0;
    while (true) {
      for (int b = 0; b < nn; ++b) slices[mask][rank][b] = sp.mu_coefficient(ks, b, gen);
      ++rank;
      int j = k - 1;
      while (j >= 0 && ks[j] + 1 == sp.d[sp.comp[j]]) ks[j--] = 0;
      if (j < 0) break;
      ++ks[j];
    }
  }

  // closed-stratum assembly: Sigma-hat_I(ks) = sum over K >= I with
  // trivial characters on K - I of the torus slices
  auto closed_slice = [&](int imask, const std::vector<int>& ks_full, int b) {
    // ks_full indexed over all of [0, n); entries for i in I are ignored
    Cyclo acc(nn);
    for (int kmask = 0; kmask < (1 << n); ++kmask) {
      if ((kmask & imask) != imask) continue;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        if ((kmask & (1 << i)) && !(imask & (1 << i)) && ks_full[i] != 0) ok = false;
      if (!ok) continue;
      const StratumProfile& sp = profiles[kmask];
      std::vector<int> sub;
      for (int i : sp.comp) sub.push_back(ks_full[i]);
      acc += slices[kmask][sp.tuple_rank(sub)][b];
    }
    return acc;
  };

  // s_i: the mu_{d_i}-invariant part of Phi([F_i])
  std::vector<Cyclo> s(n, Cyclo(nn));
  for (int i = 0; i < n; ++i) {
    Cyclo si = coefs[i].block_coef(0);
    si -= Cyclo::rational(nn, Rat(tables[i].counts[0]));
    s[i] = si;
  }

  std::vector<Cyclo> rhs(nn, Cyclo(nn));
  for (int b = 0; b < nn; ++b) {
    Cyclo acc(nn);
    for (int imask = 0; imask < (1 << n); ++imask) {
      Cyclo inv_part = Cyclo::rational(nn, Rat(1));
      for (int i = 0; i < n; ++i)
        if (imask & (1 << i)) inv_part = inv_part * s[i];
      // sum over character tuples on the complement
      std::vector<int> comp;
      for (int i = 0; i < n; ++i)
        if (!(imask & (1 << i))) comp.push_back(i);
      std::vector<int> ks_full(n, 0);
      std::function<void(std::size_t, Cyclo)> rec = [&](std::size_t j, Cyclo weight) {
        if (j == comp.size()) {
          acc += weight * closed_slice(imask, ks_full, b);
          return;
        }
        int i = comp[j];
        for (int k = 0; k < d[i]; ++k) {
          ks_full[i] = k;
          rec(j + 1, weight * coefs[i].block_coef(k));
          ks_full[i] = 0;
        }
      };
      Cyclo start = inv_part;
      if (__builtin_popcount(static_cast<unsigned>(imask)) % 2 == 1) start.scale(Rat(-1));
      rec(0, start);
      // stalk subtraction of the closed profile: -1 at the all-trivial
      // character and trivial psi, weighted like the rest of the term
      if (b == 0) {
        Cyclo stalk = start;
        for (int i : comp) stalk = stalk * coefs[i].block_coef(0);
        stalk.scale(Rat(-1));
        acc += stalk;
      }
    }
    rhs[b] = acc;
  }

  rep.pass = true;
  for (int b = 0; b < nn; ++b) {
    VerifyReport::PerChar pc;
    pc.psi_index = b;
    pc.psi_order = nn / std::gcd(b, nn);
    pc.in_m_block = (b % (nn / m)) == 0;
    pc.lhs = lhs[b].str();
    pc.rhs = rhs[b].str();
    pc.equal = lhs[b].equals(rhs[b]);
    if (!pc.equal) rep.pass = false;
    if (!pc.in_m_block && !lhs[b].is_zero()) {
      rep.notes.push_back("character " + std::to_string(b) +
                          " outside the m-block is nonzero (exponent violation)");
      rep.pass = false;
    }
    rep.chars.push_back(pc);
  }
  return rep;
}

}  // namespace singconv
