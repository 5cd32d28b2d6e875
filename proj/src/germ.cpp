#include "singconv/germ.hpp"

#include <algorithm>
#include <sstream>

#include "singconv/errors.hpp"

namespace singconv {

GermPoly::GermPoly(int nvars, std::vector<std::string> var_names)
    : nvars_(nvars), names_(std::move(var_names)) {
  if (nvars_ < 0) throw InputError("negative variable count");
  if (names_.empty()) {
    for (int i = 0; i < nvars_; ++i) names_.push_back("x" + std::to_string(i + 1));
  }
  if (static_cast<int>(names_.size()) != nvars_)
    throw InputError("variable name count does not match nvars");
}

void GermPoly::add_term(const Exponent& e, const Rat& c) {
  if (static_cast<int>(e.size()) != nvars_) throw InputError("exponent arity mismatch");
  for (int x : e)
    if (x < 0) throw InputError("negative exponent");
  if (c == 0) return;
  if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; }))
    throw InputError("constant term not allowed: germs vanish at the origin");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<GermPoly::Exponent> GermPoly::support() const {
  std::vector<Exponent> s;
  s.reserve(terms_.size());
  for (const auto& [e, c] : terms_) s.push_back(e);
  return s;
}

bool GermPoly::is_convenient() const {
  for (int i = 0; i < nvars_; ++i) {
    bool found = false;
    for (const auto& [e, c] : terms_) {
      bool pure = e[i] > 0;
      for (int j = 0; pure && j < nvars_; ++j)
        if (j != i && e[j] != 0) pure = false;
      if (pure) { found = true; break; }
    }
    if (!found) return false;
  }
  return true;
}

int GermPoly::max_exponent() const {
  int m = 0;
  for (const auto& [e, c] : terms_)
    for (int x : e) m = std::max(m, x);
  return m;
}

GermPoly GermPoly::power_substitution(const std::vector<int>& d) const {
  if (static_cast<int>(d.size()) != nvars_) throw InputError("d-vector arity mismatch");
  GermPoly g(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponent s(e);
    for (int i = 0; i < nvars_; ++i) {
      if (d[i] < 1) throw InputError("d entries must be positive");
      s[i] *= d[i];
    }
    g.add_term(s, c);
  }
  return g;
}

GermPoly GermPoly::suspend(int m) const {
  if (m < 1) throw InputError("suspension order must be positive");
  std::vector<std::string> names = names_;
  names.push_back("tau");
  GermPoly g(nvars_ + 1, names);
  for (const auto& [e, c] : terms_) {
    Exponent s(e);
    s.push_back(0);
    g.add_term(s, c);
  }
  Exponent t(nvars_ + 1, 0);
  t[nvars_] = m;
  g.add_term(t, Rat(-1));
  return g;
}

GermPoly GermPoly::partial(int var) const {
  GermPoly g(nvars_, names_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent s(e);
    s[var] -= 1;
    if (std::all_of(s.begin(), s.end(), [](int x) { return x == 0; })) {
      // derivative may legitimately have a constant term; keep it via a
      // direct map insert to bypass the germ invariant
      g.terms_[s] += c * e[var];
      if (g.terms_[s] == 0) g.terms_.erase(s);
      continue;
    }
    g.add_term(s, c * e[var]);
  }
  return g;
}

GermPoly GermPoly::scaled_partial(int var) const {
  GermPoly g(nvars_, names_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    g.add_term(e, c * e[var]);
  }
  return g;
}

long long mod_pow(long long b, long long e, long long p) {
  long long r = 1 % p;
  b %= p;
  if (b < 0) b += p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

long long mod_inv(long long a, long long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw BadPrime("division by zero mod p");
  return mod_pow(a, p - 2, p);
}

long long GermPoly::eval_mod(const std::vector<long long>& point, long long p) const {
  long long acc = 0;
  for (const auto& [e, c] : terms_) {
    Int num = boost::multiprecision::numerator(c) % p;
    Int den = boost::multiprecision::denominator(c) % p;
    long long cn = static_cast<long long>(num);
    long long cd = static_cast<long long>(den);
    if (cd == 0) throw BadPrime("coefficient denominator divisible by p");
    long long t = ((cn % p) + p) % p;
    t = t * mod_inv(cd, p) % p;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] != 0) t = t * mod_pow(point[i], e[i], p) % p;
    }
    acc = (acc + t) % p;
  }
  return acc;
}

bool GermPoly::is_quasi_homogeneous() const {
  if (terms_.empty()) return false;
  // weights w with <w, e> = 1 across the support; positivity is decided by
  // averaging the vertices of the solution set boxed into [0, 2]^n
  QMat rows;
  QVec rhs;
  for (const auto& [e, c] : terms_) {
    QVec r(nvars_);
    for (int i = 0; i < nvars_; ++i) r[i] = e[i];
    rows.push_back(r);
    rhs.push_back(Rat(1));
  }
  // particular solution + nullspace of the affine system
  QMat aug = rows;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
  QMat check = aug;
  int rank_a = rank_of(rows, nvars_);
  int rank_aug = rank_of(check, nvars_ + 1);
  if (rank_a != rank_aug) return false;  // inconsistent: not quasi-homogeneous

  row_reduce(aug, nvars_);
  QVec part(nvars_, Rat(0));
  for (std::size_t r = 0; r < aug.size(); ++r) {
    int lead = -1;
    for (int c = 0; c < nvars_; ++c)
      if (aug[r][c] != 0) { lead = c; break; }
    if (lead >= 0) part[lead] = aug[r][nvars_];
  }
  auto basis = nullspace(rows, nvars_);
  // vertices of {w = part + sum t_k b_k, 0 <= w_i <= 2} via brute force on
  // the t-space: enumerate subsets of tight bounds
  int k = static_cast<int>(basis.size());
  if (k == 0) {
    for (const auto& w : part)
      if (w <= 0) return false;
    return true;
  }
  std::vector<QVec> feas;
  std::vector<std::pair<int, Rat>> bounds;  // coordinate index, bound value
  for (int i = 0; i < nvars_; ++i) {
    bounds.push_back({i, Rat(0)});
    bounds.push_back({i, Rat(2)});
  }
  int nb = static_cast<int>(bounds.size());
  auto feasible = [&](const QVec& w) {
    for (const auto& x : w)
      if (x < 0 || x > 2) return false;
    return true;
  };
  // vertices of the box-bounded solution set: k bounds tight at a time
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    QMat a(k, QVec(k));
    QVec b(k);
    for (int r = 0; r < k; ++r) {
      auto [ci, val] = bounds[c[r]];
      for (int j = 0; j < k; ++j) a[r][j] = basis[j][ci];
      b[r] = val - part[ci];
    }
    auto t = solve_square(a, b);
    if (t) {
      QVec w = part;
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < nvars_; ++i) w[i] += (*t)[j] * basis[j][i];
      if (feasible(w)) feas.push_back(w);
    }
    int i = k - 1;
    while (i >= 0 && c[i] == nb - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  if (feas.empty()) return false;
  QVec avg(nvars_, Rat(0));
  for (const auto& w : feas)
    for (int i = 0; i < nvars_; ++i) avg[i] += w[i];
  for (int i = 0; i < nvars_; ++i) {
    avg[i] /= Rat(static_cast<int>(feas.size()));
    if (avg[i] <= 0) return false;
  }
  return true;
}

std::string GermPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      os << "*" << names_[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace singconv
