#ifndef SINGCONV_NUMERIC_HPP
#define SINGCONV_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace singconv {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Int igcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int ilcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

template <typename V>
Rat dot(const V& a, const V& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * Rat(b[i]);
  return s;
}

inline Int dot_z(const ZVec& a, const ZVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Int dot_ze(const ZVec& a, const std::vector<int>& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const ZVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// gcd-reduce an integer vector; the zero vector is returned unchanged.
inline ZVec primitive(ZVec v) {
  Int g = 0;
  for (const auto& x : v) g = igcd(g, x);
  if (g == 0 || g == 1) return v;
  for (auto& x : v) x /= g;
  return v;
}

// Clear denominators of a rational vector and gcd-reduce.
inline ZVec primitive(const QVec& v) {
  Int den = 1;
  for (const auto& x : v) den = ilcm(den, boost::multiprecision::denominator(x));
  ZVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * Rat(den);
    w[i] = boost::multiprecision::numerator(s);
  }
  return primitive(std::move(w));
}

inline QVec to_qvec(const ZVec& v) {
  QVec q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
  return q;
}

inline ZVec to_zvec(const std::vector<int>& v) {
  ZVec z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) z[i] = v[i];
  return z;
}

// --- dense exact linear algebra, desk scale ---

using QMat = std::vector<QVec>;

// Row-reduce in place; returns rank. Columns beyond `cols` are carried along
// (augmented systems).
int row_reduce(QMat& m, int cols);

int rank_of(QMat m, int cols);

// Solve a square system a*x = b exactly; nullopt when singular.
std::optional<QVec> solve_square(QMat a, QVec b);

// Basis of the nullspace {x : m x = 0}, m given by rows.
std::vector<QVec> nullspace(QMat m, int cols);

// Rank of a set of integer vectors.
int rank_z(const std::vector<ZVec>& vs);

std::string rat_string(const Rat& r);
Rat parse_rat(const std::string& s);

}  // namespace singconv

#endif
