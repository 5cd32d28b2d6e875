#ifndef SINGCONV_FFORACLE_HPP
#define SINGCONV_FFORACLE_HPP

#include <map>
#include <string>
#include <vector>

#include "singconv/germ.hpp"
#include "singconv/numeric.hpp"

namespace singconv {

// Exact arithmetic in Q[x]/(x^n - 1); equality and zero tests reduce modulo
// the n-th cyclotomic polynomial, so values are honest elements of Q(zeta_n).
class Cyclo {
 public:
  Cyclo() : n_(1), c_(1, Rat(0)) {}
  explicit Cyclo(int n) : n_(n), c_(n, Rat(0)) {}

  int modulus() const { return n_; }
  static Cyclo zeta_pow(int n, long long k, const Rat& coeff = Rat(1));
  static Cyclo rational(int n, const Rat& r);

  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo operator*(const Cyclo& o) const;
  Cyclo& scale(const Rat& r);
  Cyclo conj() const;  // zeta -> zeta^{-1}

  void add_power(long long k, const Rat& coeff);

  QVec reduced() const;  // canonical representative mod Phi_n
  bool is_zero() const;
  bool equals(const Cyclo& o) const;
  bool rational_value(Rat* out) const;
  std::string str() const;

 private:
  int n_;
  QVec c_;
};

// monic n-th cyclotomic polynomial, exact integer coefficients
std::vector<Int> cyclotomic_poly(int n);

long long primitive_root(long long p);

struct FiberCountTable {
  long long p = 0;
  int yvars = 0;
  std::vector<long long> counts;  // index x in [0, p)

  long long total() const;
};

// exhaustive fiber counting of g over F_p; enumeration capped by max_enum
FiberCountTable count_fibers(const GermPoly& g, long long p,
                             long long max_enum = 100000000LL, int jobs = 1);

struct CharCoefficients {
  long long p = 0;
  int d = 1;
  long long generator = 0;
  std::vector<Cyclo> coef;  // one per character chi_a, a in [0, p-1)
  long long special = 0;    // N(0)

  struct Violation {
    int index = 0;
    int order = 0;
  };
  std::vector<Violation> violations;  // nonzero coefficients outside the d-block

  bool in_block(int a) const { return a % ((p - 1) / d) == 0; }
  const Cyclo& block_coef(int k) const;  // k in [0, d)
};

CharCoefficients char_decompose(const FiberCountTable& t, int d);

// Equivariant stratum sums on the x-torus: for x in (F_p^*)^{I^c} with
// x_i = 0 for i in I, the weight prod chi_i(x_i) accumulates into the
// bucket u = f(x).  Characters are indexed by k_i in [0, d_i) through
// chi_{k_i (p-1)/d_i}.
struct StratumProfile {
  long long p = 0;
  std::vector<int> I;
  std::vector<int> comp;  // complement of I in [0, n)
  std::vector<int> d;
  int m = 1;
  // raw[tuple][u] is an integer vector of zeta_{p-1} powers
  std::vector<std::vector<std::vector<long long>>> raw;

  int tuple_count() const;
  int tuple_rank(const std::vector<int>& ks) const;
  Cyclo value(const std::vector<int>& ks, long long u) const;
  // (1/(p-1)) sum_{u != 0} S(ks; u) conj(psi_b)(u)
  Cyclo mu_coefficient(const std::vector<int>& ks, int b, long long generator) const;
};

StratumProfile stratum_profile(const GermPoly& f, const std::vector<int>& d,
                               const std::vector<int>& I, long long p, int m);

struct VerifyOptions {
  long long max_enum = 100000000LL;
  int jobs = 1;
  bool cross_check_direct = true;  // compare shortcut and direct composite counts
  bool require_quasi_homogeneous = true;
};

struct VerifyReport {
  long long p = 0;
  int m = 1;
  bool pass = false;
  struct PerChar {
    int psi_index = 0;
    int psi_order = 1;
    bool in_m_block = false;
    std::string lhs, rhs;
    bool equal = false;
  };
  std::vector<PerChar> chars;
  std::vector<std::string> notes;
};

VerifyReport verify_convolution(const GermPoly& f, const std::vector<GermPoly>& gs,
                                const std::vector<int>& d, long long p, int m,
                                const VerifyOptions& opt = {});

// composite fiber counts via the fibering shortcut N(u) = sum over f(x)=u of
// prod N_i(x_i), and by direct enumeration (consistency oracle)
std::vector<long long> composite_counts_shortcut(const GermPoly& f,
                                                 const std::vector<FiberCountTable>& tables,
                                                 long long p);
std::vector<long long> composite_counts_direct(const GermPoly& f,
                                               const std::vector<GermPoly>& gs, long long p,
                                               long long max_enum = 100000000LL);

}  // namespace singconv

#endif
