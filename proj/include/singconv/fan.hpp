#ifndef SINGCONV_FAN_HPP
#define SINGCONV_FAN_HPP

#include <string>
#include <vector>

#include "singconv/newton.hpp"

namespace singconv {

// L(xi) = (1/d_1)Z + ... + (1/d_n)Z and its dual; rays of fans attached to a
// scaled lattice are stored as primitive vectors of the dual scaled lattice.
struct ScaledLattice {
  std::vector<int> d;
  int dim() const { return static_cast<int>(d.size()); }
};

struct Cone {
  std::vector<int> ray_ids;  // sorted indices into Fan::rays
  int dim = 0;
};

struct Fan {
  ScaledLattice lattice;
  std::vector<ZVec> rays;
  std::vector<Cone> max_cones;

  int ambient() const { return lattice.dim(); }
};

struct RayData {
  ZVec direction;          // primitive in the declared scaled lattice
  Int multiplicity = 0;    // min <l, Delta>
  bool coordinate = false; // ray through a coordinate axis
};

// smallest nonzero point of the scaled dual lattice on the ray
ZVec primitive_generator(const QVec& ray, const ScaledLattice& lat);
ZVec primitive_generator(const ZVec& ray, const ScaledLattice& lat);

Int ray_multiplicity(const ZVec& l, const NewtonPolyhedron& delta);

// normal fan of Delta; support is the nonnegative dual orthant
Fan dual_fan(const NewtonPolyhedron& delta, const ScaledLattice& lat);

bool is_simplicial(const Fan& f);

// deterministic stellar refinement preserving the restriction to every
// coordinate hyperplane
Fan simplicial_refinement(const Fan& f);

struct ExponentResult {
  long long m = 1;
  std::vector<RayData> rays;   // non-coordinate rays of the fan, or facet
  bool from_facets = false;    // normals of Delta when no interior ray exists
};

ExponentResult exponent(const GermPoly& g, const ScaledLattice& lat, const Fan& refined);

bool is_tame(long long m, long long p);

enum class SuspensionConeKind { Upper, Boundary, Base };

// Fan in dual (xi, tau)-exponent space; rays are primitive integer vectors
// there.  The x-side presentation (lattice L(xi)* + mZ) is recovered by the
// coordinatewise scaling (l_i d_i, mu m).
struct SuspensionFan {
  int n = 0;  // number of xi variables; ambient dimension is n + 1
  std::vector<int> d;
  long long m = 1;
  std::vector<ZVec> rays;
  std::vector<Cone> cones;  // maximal cones
  std::vector<SuspensionConeKind> kinds;

  Fan as_scaled_fan() const;
};

SuspensionFan suspension_fan(const Fan& refined, const NewtonPolyhedron& delta, long long m);

struct ReducednessRay {
  ZVec ray;
  Int tau_order;
  int face_dim = 0;
  int face_support = 0;  // number of monomials of f(xi)-tau^m on the min face
  bool relevant = false; // divisor meets the hypersurface
  bool ok = true;
};

struct ReducednessReport {
  bool pass = false;
  std::vector<ReducednessRay> rays;
  bool base_cone_avoided = false;
  int base_face_dim = -1;
};

ReducednessReport check_reduced(const SuspensionFan& sf, const GermPoly& g);

// --- generic rational cone helpers (shared by fan code and tests) ---

// faces of the cone spanned by `rays`, as index sets (includes the cone
// itself and the origin face as an empty set)
std::vector<std::vector<int>> cone_faces(const std::vector<ZVec>& rays);
std::vector<std::vector<int>> cone_facets(const std::vector<ZVec>& rays);
bool cone_contains(const std::vector<ZVec>& rays, const QVec& point);

}  // namespace singconv

#endif
