#ifndef SINGCONV_GERM_HPP
#define SINGCONV_GERM_HPP

#include <map>
#include <string>
#include <vector>

#include "singconv/numeric.hpp"

namespace singconv {

// A germ of a polynomial map vanishing at the origin: finitely many terms,
// exact rational coefficients, exponents in N^n.  Zero coefficients are never
// stored and the constant term is rejected.
class GermPoly {
 public:
  using Exponent = std::vector<int>;

  GermPoly() : nvars_(0) {}
  explicit GermPoly(int nvars, std::vector<std::string> var_names = {});

  int nvars() const { return nvars_; }
  const std::vector<std::string>& var_names() const { return names_; }

  void add_term(const Exponent& e, const Rat& c);
  const std::map<Exponent, Rat>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  std::vector<Exponent> support() const;

  // true when every variable carries a pure-power term x_i^k
  bool is_convenient() const;
  int max_exponent() const;

  // substitute x_i = xi_i^{d_i}: exponents scale coordinatewise
  GermPoly power_substitution(const std::vector<int>& d) const;

  // f - tau^m in n+1 variables, the suspension hypersurface equation
  GermPoly suspend(int m) const;

  GermPoly partial(int var) const;         // d/dx_i
  GermPoly scaled_partial(int var) const;  // x_i d/dx_i

  // evaluation over F_p; throws BadPrime when a denominator vanishes mod p
  long long eval_mod(const std::vector<long long>& point, long long p) const;

  // weights w > 0 with <w, e> = 1 on the whole support, if any
  bool is_quasi_homogeneous() const;

  std::string to_string() const;

 private:
  int nvars_;
  std::vector<std::string> names_;
  std::map<Exponent, Rat> terms_;
};

long long mod_pow(long long b, long long e, long long p);
long long mod_inv(long long a, long long p);

}  // namespace singconv

#endif
