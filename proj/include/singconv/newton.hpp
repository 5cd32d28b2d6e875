#ifndef SINGCONV_NEWTON_HPP
#define SINGCONV_NEWTON_HPP

#include <optional>
#include <vector>

#include "singconv/germ.hpp"
#include "singconv/numeric.hpp"

namespace singconv {

// Newton polyhedron Delta = conv(support) + R^n_{>=0}, in dual V+H form.
// Vertices are lattice points of the support; facet inequalities <l,x> >= c
// have primitive l >= 0.
struct NewtonPolyhedron {
  int nvars = 0;
  std::vector<ZVec> vertices;       // lex sorted
  std::vector<ZVec> facet_normals;  // primitive, componentwise >= 0
  std::vector<Int> facet_rhs;

  bool contains(const QVec& x) const;
  Int min_value(const ZVec& l) const;  // min over Delta, requires l >= 0
};

struct Face {
  ZVec functional;  // face = argmin of this functional on Delta
  Int value;
  bool compact = true;
  int dim = 0;
  std::vector<ZVec> vertices;        // vertices of Delta lying on the face
  std::vector<int> unbounded_dirs;   // J: coordinate directions e_j inside the face
  std::vector<int> active_facets;    // saturated facet index set
};

enum class ConveniencePolicy { Require, Truncate, Ignore };

NewtonPolyhedron newton_polyhedron(const GermPoly& g,
                                   ConveniencePolicy policy = ConveniencePolicy::Require);

// conv(points) + positive orthant, in V+H form
NewtonPolyhedron polyhedron_from_points(const std::vector<ZVec>& points, int nvars);

std::vector<Face> faces(const NewtonPolyhedron& delta);

GermPoly face_restriction(const GermPoly& g, const Face& sigma);

// Rational polyhedron {x* >= 0 : <x*, v> >= 1 for all vertices v of Delta};
// recession cone is the nonnegative orthant.
struct PolarDual {
  int nvars = 0;
  std::vector<QVec> vertices;
};

PolarDual polar_dual(const NewtonPolyhedron& delta);

enum class NondegenerateStatus { ProbablyNondegenerate, DegenerateWitness, Inconclusive };

struct NondegeneracyReport {
  NondegenerateStatus status = NondegenerateStatus::Inconclusive;
  // witness data, valid when status == DegenerateWitness
  Face witness_face;
  std::vector<long long> witness_point;
  long long witness_prime = 0;
  bool exhaustive = true;  // true when every (face, prime) torus was fully searched
};

// Probabilistic non-degeneracy check over small finite fields.  `samples`
// bounds the number of torus points inspected per (face, prime); tori larger
// than the bound are sampled with the seeded generator and the verdict
// degrades to Inconclusive when clean.
NondegeneracyReport is_nondegenerate(const GermPoly& g, const std::vector<long long>& primes,
                                     long long samples, unsigned long long seed = 12345);

// shared brute-force vertex enumeration of {x : <normals[i], x> >= rhs[i]}
std::vector<QVec> enumerate_vertices(const std::vector<QVec>& normals,
                                     const std::vector<Rat>& rhs, int dim);

}  // namespace singconv

#endif
