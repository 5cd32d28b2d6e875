#include <doctest.h>

#include "singconv/errors.hpp"
#include "singconv/newton.hpp"

using namespace singconv;

namespace {

GermPoly make_germ(int n, std::initializer_list<std::pair<std::vector<int>, Rat>> terms) {
  GermPoly g(n);
  for (const auto& [e, c] : terms) g.add_term(e, c);
  return g;
}

GermPoly cusp() { return make_germ(2, {{{2, 0}, 1}, {{0, 3}, 1}}); }

}  // namespace

TEST_CASE("newton polyhedron of x^2 + y^3") {
  auto delta = newton_polyhedron(cusp());
  REQUIRE(delta.vertices.size() == 2);
  CHECK(delta.vertices[0] == ZVec{0, 3});
  CHECK(delta.vertices[1] == ZVec{2, 0});
  // facets: the compact edge with normal (3,2) and the two coordinate facets
  REQUIRE(delta.facet_normals.size() == 3);
  bool found_edge = false;
  for (std::size_t i = 0; i < delta.facet_normals.size(); ++i) {
    if (delta.facet_normals[i] == ZVec{3, 2}) {
      found_edge = true;
      CHECK(delta.facet_rhs[i] == 6);
    }
  }
  CHECK(found_edge);
}

TEST_CASE("newton polyhedron of a univariate power") {
  auto g = make_germ(1, {{{4}, 1}});
  auto delta = newton_polyhedron(g);
  REQUIRE(delta.vertices.size() == 1);
  CHECK(delta.vertices[0] == ZVec{4});
  REQUIRE(delta.facet_normals.size() == 1);
  CHECK(delta.facet_normals[0] == ZVec{1});
  CHECK(delta.facet_rhs[0] == 4);
}

TEST_CASE("interior lattice point becomes a vertex when below the edge") {
  // x^2 + xy + y^3: (1,1) lies under the segment (2,0)-(0,3)
  auto g = make_germ(2, {{{2, 0}, 1}, {{1, 1}, 1}, {{0, 3}, 1}});
  auto delta = newton_polyhedron(g);
  REQUIRE(delta.vertices.size() == 3);
  CHECK(delta.vertices[0] == ZVec{0, 3});
  CHECK(delta.vertices[1] == ZVec{1, 1});
  CHECK(delta.vertices[2] == ZVec{2, 0});
}

TEST_CASE("monotonicity: adding a term inside Delta changes nothing") {
  auto g1 = cusp();
  auto g2 = make_germ(2, {{{2, 0}, 1}, {{0, 3}, 1}, {{2, 2}, Rat(7, 2)}});
  auto d1 = newton_polyhedron(g1);
  auto d2 = newton_polyhedron(g2);
  CHECK(d1.vertices == d2.vertices);
  CHECK(d1.facet_normals == d2.facet_normals);
}

TEST_CASE("idempotence: rebuilding from the vertex set reproduces Delta") {
  auto g = make_germ(3, {{{3, 0, 0}, 1}, {{0, 4, 0}, 1}, {{0, 0, 2}, 1}, {{1, 1, 1}, 1}});
  auto d1 = newton_polyhedron(g);
  auto d2 = polyhedron_from_points(d1.vertices, 3);
  CHECK(d1.vertices == d2.vertices);
  CHECK(d1.facet_normals == d2.facet_normals);
}

TEST_CASE("faces of the cusp polyhedron") {
  auto delta = newton_polyhedron(cusp());
  auto fs = faces(delta);
  int compact0 = 0, compact1 = 0, noncompact1 = 0, top = 0;
  for (const auto& f : fs) {
    if (f.dim == 0) ++compact0;
    if (f.dim == 1 && f.compact) {
      ++compact1;
      CHECK(f.functional == ZVec{3, 2});
      CHECK(f.value == 6);
    }
    if (f.dim == 1 && !f.compact) ++noncompact1;
    if (f.dim == 2) ++top;
  }
  CHECK(compact0 == 2);
  CHECK(compact1 == 1);
  CHECK(noncompact1 == 2);
  CHECK(top == 1);
}

TEST_CASE("faces of x + y include the compact edge with l = (1,1)") {
  auto g = make_germ(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  auto delta = newton_polyhedron(g);
  bool found = false;
  for (const auto& f : faces(delta)) {
    if (f.dim == 1 && f.compact) {
      found = true;
      CHECK(f.functional == ZVec{1, 1});
      CHECK(f.value == 1);
    }
  }
  CHECK(found);
}

TEST_CASE("face restriction drops terms off the face") {
  auto g = make_germ(2, {{{2, 0}, 1}, {{0, 3}, 1}, {{1, 4}, 1}});
  auto delta = newton_polyhedron(g);
  for (const auto& f : faces(delta)) {
    if (f.dim == 1 && f.compact && f.vertices.size() == 2) {
      auto r = face_restriction(g, f);
      CHECK(r.terms().size() == 2);  // (1,4) is above the edge: 3+8 = 11 > 6
      CHECK(r.terms().count({2, 0}) == 1);
      CHECK(r.terms().count({0, 3}) == 1);
    }
    if (f.dim == 0 && f.vertices.size() == 1 && f.vertices[0] == ZVec{2, 0}) {
      auto r = face_restriction(g, f);
      CHECK(r.terms().size() == 1);
      CHECK(r.terms().count({2, 0}) == 1);
    }
    if (f.dim == 2) {
      auto r = face_restriction(g, f);
      CHECK(r.terms() == g.terms());
    }
  }
}

TEST_CASE("face restriction consistency invariant") {
  auto g = make_germ(2, {{{2, 0}, 1}, {{1, 1}, 1}, {{0, 3}, 1}});
  auto delta = newton_polyhedron(g);
  for (const auto& f : faces(delta)) {
    auto r = face_restriction(g, f);
    auto dr = newton_polyhedron(r, ConveniencePolicy::Ignore);
    Int mv = dr.min_value(f.functional);
    CHECK(mv == f.value);
    std::vector<ZVec> argmin;
    for (const auto& v : dr.vertices)
      if (dot_z(f.functional, v) == mv) argmin.push_back(v);
    CHECK(argmin == f.vertices);
  }
}

TEST_CASE("polar dual of x^d is [1/d, inf)") {
  auto g = make_germ(1, {{{3}, 1}});
  auto dual = polar_dual(newton_polyhedron(g));
  REQUIRE(dual.vertices.size() == 1);
  CHECK(dual.vertices[0][0] == Rat(1, 3));
}

TEST_CASE("polar dual of x + y has the single vertex (1,1)") {
  auto g = make_germ(2, {{{1, 0}, 1}, {{0, 1}, 1}});
  auto dual = polar_dual(newton_polyhedron(g));
  REQUIRE(dual.vertices.size() == 1);
  CHECK(dual.vertices[0] == QVec{1, 1});
}

TEST_CASE("polar dual of the cusp") {
  auto dual = polar_dual(newton_polyhedron(cusp()));
  REQUIRE(dual.vertices.size() == 1);
  CHECK(dual.vertices[0] == QVec{Rat(1, 2), Rat(1, 3)});
}

TEST_CASE("polar duality pairing >= 1 on vertices") {
  auto g = make_germ(2, {{{2, 0}, 1}, {{1, 1}, 1}, {{0, 3}, 1}});
  auto delta = newton_polyhedron(g);
  auto dual = polar_dual(delta);
  for (const auto& w : dual.vertices)
    for (const auto& v : delta.vertices) CHECK(dot(w, to_qvec(v)) >= 1);
}

TEST_CASE("origin in polytope is rejected") {
  NewtonPolyhedron delta;
  delta.nvars = 1;
  delta.vertices = {ZVec{0}};
  CHECK_THROWS_AS(polar_dual(delta), OriginInPolytope);
}

TEST_CASE("non-convenient germ requires the truncation flag") {
  auto g = make_germ(2, {{{2, 1}, 1}});  // x^2 y: no pure power of either variable
  CHECK_THROWS_AS(newton_polyhedron(g), NotConvenient);
  auto delta = newton_polyhedron(g, ConveniencePolicy::Truncate);
  CHECK(delta.vertices.size() >= 2);  // truncated with N e_i points
}

TEST_CASE("cusp is probably non-degenerate") {
  auto rep = is_nondegenerate(cusp(), {7, 13}, 100000);
  CHECK(rep.status == NondegenerateStatus::ProbablyNondegenerate);
}

TEST_CASE("(x+y)^2 is degenerate with a torus witness") {
  auto g = make_germ(2, {{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}});
  auto rep = is_nondegenerate(g, {7}, 100000);
  REQUIRE(rep.status == NondegenerateStatus::DegenerateWitness);
  CHECK(rep.witness_prime == 7);
  // witness satisfies x + y = 0 mod 7
  CHECK((rep.witness_point[0] + rep.witness_point[1]) % 7 == 0);
}

TEST_CASE("a linear germ is non-degenerate") {
  auto g = make_germ(1, {{{1}, 1}});
  auto rep = is_nondegenerate(g, {5}, 1000);
  CHECK(rep.status == NondegenerateStatus::ProbablyNondegenerate);
}

TEST_CASE("bad prime is reported") {
  auto g = make_germ(1, {{{2}, Rat(1, 7)}});
  CHECK_THROWS_AS(is_nondegenerate(g, {7}, 1000), BadPrime);
}

TEST_CASE("quasi-homogeneity detector") {
  CHECK(make_germ(1, {{{4}, 1}}).is_quasi_homogeneous());
  CHECK(make_germ(2, {{{1, 1}, 1}}).is_quasi_homogeneous());
  CHECK(make_germ(2, {{{2, 1}, 1}}).is_quasi_homogeneous());
  CHECK(cusp().is_quasi_homogeneous());
  CHECK_FALSE(make_germ(1, {{{2}, 1}, {{3}, 1}}).is_quasi_homogeneous());
}

TEST_CASE("polar dual vertices pair to one on a complementary face") {
  auto g = make_germ(2, {{{2, 0}, 1}, {{1, 1}, 1}, {{0, 3}, 1}});
  auto delta = newton_polyhedron(g);
  auto dual = polar_dual(delta);
  for (const auto& w : dual.vertices) {
    bool touches = false;
    for (const auto& v : delta.vertices)
      if (dot(w, to_qvec(v)) == 1) touches = true;
    CHECK(touches);
  }
}

TEST_CASE("faces of a univariate power") {
  auto delta = newton_polyhedron(make_germ(1, {{{4}, 1}}));
  auto fs = faces(delta);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].dim == 0);
  CHECK(fs[0].compact);
  CHECK(fs[0].vertices == std::vector<ZVec>{ZVec{4}});
  CHECK(fs[1].dim == 1);
  CHECK_FALSE(fs[1].compact);
}

TEST_CASE("degeneracy witnesses satisfy every equation exactly") {
  auto g = make_germ(2, {{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}});
  auto rep = is_nondegenerate(g, {7}, 100000);
  REQUIRE(rep.status == NondegenerateStatus::DegenerateWitness);
  GermPoly fs(2);
  for (const auto& [e, c] : g.terms())
    if (dot_ze(rep.witness_face.functional, e) == rep.witness_face.value) fs.add_term(e, c);
  CHECK(fs.eval_mod(rep.witness_point, rep.witness_prime) == 0);
  for (int i = 0; i < 2; ++i)
    CHECK(fs.scaled_partial(i).eval_mod(rep.witness_point, rep.witness_prime) == 0);
}
