#ifndef SINGCONV_CONVOLVE_HPP
#define SINGCONV_CONVOLVE_HPP

#include <vector>

#include "singconv/bases.hpp"

namespace singconv {

struct ConvolutionJob {
  int n = 0;
  std::vector<GermClassBundle> bundles;
  InnerRegistry registry;
  int m = 1;

  void validate() const;
};

// Subset-sum convolution engine.  Output group: the bundles' spectator
// factors in order, then mu_m (monodromy).
EqHodgeClass convolve(const ConvolutionJob& job);

// Two-variable three-term form; agrees with convolve on the equivalent job.
EqHodgeClass thom_sebastiani(const GermClassBundle& b1, const GermClassBundle& b2);

// Same identity arranged around the Fermat-curve H^1 class; recomputes and
// compares against both other routes, throwing MismatchReport on disagreement.
EqHodgeClass v_form_identity(const GermClassBundle& b1, const GermClassBundle& b2);

}  // namespace singconv

#endif
