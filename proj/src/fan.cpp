#include "singconv/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "singconv/errors.hpp"

namespace singconv {

namespace {

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k > n || k < 0) return;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    fn(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// express each ray in coordinates of a maximal independent subset of rays
struct LocalCoords {
  int rank = 0;
  std::vector<QVec> coords;  // one k-vector per input ray
};

LocalCoords local_coordinates(const std::vector<ZVec>& rays) {
  LocalCoords lc;
  if (rays.empty()) return lc;
  int n = static_cast<int>(rays[0].size());
  std::vector<int> basis_ids;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    std::vector<ZVec> trial;
    for (int b : basis_ids) trial.push_back(rays[b]);
    trial.push_back(rays[i]);
    if (rank_z(trial) == static_cast<int>(trial.size())) basis_ids.push_back(static_cast<int>(i));
  }
  int k = static_cast<int>(basis_ids.size());
  lc.rank = k;
  // pick k independent coordinate rows of the basis matrix
  QMat bt(n, QVec(k));
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < n; ++r) bt[r][c] = Rat(rays[basis_ids[c]][r]);
  std::vector<int> rows;
  {
    QMat acc;
    for (int r = 0; r < n && static_cast<int>(rows.size()) < k; ++r) {
      acc.push_back(bt[r]);
      if (rank_of(acc, k) == static_cast<int>(rows.size()) + 1)
        rows.push_back(r);
      else
        acc.pop_back();
    }
  }
  for (const auto& ray : rays) {
    QMat a(k, QVec(k));
    QVec b(k);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) a[r][c] = Rat(rays[basis_ids[c]][rows[r]]);
      b[r] = Rat(ray[rows[r]]);
    }
    auto x = solve_square(a, b);
    if (!x) throw MalformedFan("ray outside the span of the cone basis");
    lc.coords.push_back(*x);
  }
  return lc;
}

}  // namespace

std::vector<std::vector<int>> cone_facets(const std::vector<ZVec>& rays) {
  std::vector<std::vector<int>> facets;
  int nrays = static_cast<int>(rays.size());
  if (nrays == 0) return facets;
  LocalCoords lc = local_coordinates(rays);
  int k = lc.rank;
  if (k <= 1) return facets;  // a ray's only proper face is the origin
  std::set<std::vector<int>> seen;
  for_each_subset(nrays, k - 1, [&](const std::vector<int>& idx) {
    QMat m;
    for (int i : idx) m.push_back(lc.coords[i]);
    auto ns = nullspace(m, k);
    if (ns.size() != 1) return;
    const QVec& u = ns[0];
    int sign = 0;
    bool valid = true;
    std::vector<int> on;
    for (int i = 0; i < nrays; ++i) {
      Rat v = dot(u, lc.coords[i]);
      if (v == 0) {
        on.push_back(i);
      } else if (v > 0) {
        if (sign < 0) { valid = false; break; }
        sign = 1;
      } else {
        if (sign > 0) { valid = false; break; }
        sign = -1;
      }
    }
    if (!valid || sign == 0) return;
    std::vector<ZVec> span;
    for (int i : on) span.push_back(rays[i]);
    if (rank_z(span) != k - 1) return;
    if (seen.insert(on).second) facets.push_back(on);
  });
  return facets;
}

std::vector<std::vector<int>> cone_faces(const std::vector<ZVec>& rays) {
  std::set<std::vector<int>> out;
  std::vector<int> full(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) full[i] = static_cast<int>(i);
  out.insert(full);
  out.insert({});
  auto facets = cone_facets(rays);
  for (const auto& f : facets) out.insert(f);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> snap(out.begin(), out.end());
    for (const auto& f : snap) {
      if (f.empty() || f.size() == rays.size()) continue;
      std::vector<ZVec> sub;
      for (int i : f) sub.push_back(rays[i]);
      for (const auto& g : cone_facets(sub)) {
        std::vector<int> mapped;
        for (int i : g) mapped.push_back(f[i]);
        std::sort(mapped.begin(), mapped.end());
        if (out.insert(mapped).second) grew = true;
      }
    }
  }
  return {out.begin(), out.end()};
}

bool cone_contains(const std::vector<ZVec>& rays, const QVec& point) {
  if (rays.empty()) {
    for (const auto& x : point)
      if (x != 0) return false;
    return true;
  }
  int n = static_cast<int>(point.size());
  int nr = static_cast<int>(rays.size());

  // span membership
  {
    QMat sub, aug;
    for (int r = 0; r < n; ++r) {
      QVec row;
      for (const auto& ray : rays) row.push_back(Rat(ray[r]));
      sub.push_back(row);
      row.push_back(point[r]);
      aug.push_back(row);
    }
    if (rank_of(std::move(aug), nr + 1) != rank_of(std::move(sub), nr)) return false;
  }

  LocalCoords lc = local_coordinates(rays);
  int k = lc.rank;

  // local coordinates of the point: solve on k independent rows of the basis
  std::vector<int> basis_ids;
  for (int i = 0; i < nr; ++i) {
    std::vector<ZVec> trial;
    for (int b : basis_ids) trial.push_back(rays[b]);
    trial.push_back(rays[i]);
    if (rank_z(trial) == static_cast<int>(trial.size())) basis_ids.push_back(i);
  }
  std::vector<int> rows;
  {
    QMat acc;
    for (int r = 0; r < n && static_cast<int>(rows.size()) < k; ++r) {
      QVec row(k);
      for (int c = 0; c < k; ++c) row[c] = Rat(rays[basis_ids[c]][r]);
      acc.push_back(row);
      if (rank_of(acc, k) == static_cast<int>(rows.size()) + 1)
        rows.push_back(r);
      else
        acc.pop_back();
    }
  }
  QMat a(k, QVec(k));
  QVec b(k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) a[r][c] = Rat(rays[basis_ids[c]][rows[r]]);
    b[r] = point[rows[r]];
  }
  auto pl = solve_square(std::move(a), std::move(b));
  if (!pl) return false;

  if (k == 1) {
    return (*pl)[0] >= 0;
  }
  // pointed cone, full-dimensional in its span: intersection of facet halves
  for (const auto& f : cone_facets(rays)) {
    QMat m;
    for (int i : f) m.push_back(lc.coords[i]);
    auto ns = nullspace(std::move(m), k);
    if (ns.size() != 1) continue;
    QVec u = ns[0];
    Rat side = 0;
    for (int i = 0; i < nr && side == 0; ++i) side = dot(u, lc.coords[i]);
    if (side < 0)
      for (auto& x : u) x = -x;
    if (dot(u, *pl) < 0) return false;
  }
  return true;
}

ZVec primitive_generator(const QVec& ray, const ScaledLattice& lat) {
  ZVec v = primitive(ray);
  if (is_zero(v)) throw ZeroRay();
  Int k = 1;
  for (int i = 0; i < lat.dim(); ++i) {
    Int d(lat.d[i]);
    if (d < 1) throw InputError("lattice entries must be positive");
    Int g = igcd(v[i] < 0 ? Int(-v[i]) : v[i], d);
    k = ilcm(k, d / g);
  }
  for (auto& x : v) x *= k;
  return v;
}

ZVec primitive_generator(const ZVec& ray, const ScaledLattice& lat) {
  return primitive_generator(to_qvec(ray), lat);
}

Int ray_multiplicity(const ZVec& l, const NewtonPolyhedron& delta) {
  return delta.min_value(l);
}

Fan dual_fan(const NewtonPolyhedron& delta, const ScaledLattice& lat) {
  if (lat.dim() != delta.nvars) throw InputError("lattice dimension mismatch");
  Fan fan;
  fan.lattice = lat;
  for (const auto& l : delta.facet_normals) fan.rays.push_back(primitive_generator(l, lat));
  // maximal cones are the normal cones of the vertices
  for (const auto& v : delta.vertices) {
    Cone c;
    for (std::size_t i = 0; i < delta.facet_normals.size(); ++i) {
      if (dot_z(delta.facet_normals[i], v) == delta.facet_rhs[i])
        c.ray_ids.push_back(static_cast<int>(i));
    }
    std::sort(c.ray_ids.begin(), c.ray_ids.end());
    std::vector<ZVec> rs;
    for (int i : c.ray_ids) rs.push_back(fan.rays[i]);
    c.dim = rank_z(rs);
    fan.max_cones.push_back(c);
  }
  // dedupe (a polyhedron with a unique vertex yields one cone per vertex anyway)
  std::sort(fan.max_cones.begin(), fan.max_cones.end(),
            [](const Cone& a, const Cone& b) { return a.ray_ids < b.ray_ids; });
  fan.max_cones.erase(std::unique(fan.max_cones.begin(), fan.max_cones.end(),
                                  [](const Cone& a, const Cone& b) { return a.ray_ids == b.ray_ids; }),
                      fan.max_cones.end());
  return fan;
}

bool is_simplicial(const Fan& f) {
  for (const auto& c : f.max_cones) {
    std::vector<ZVec> rs;
    for (int i : c.ray_ids) rs.push_back(f.rays[i]);
    if (rank_z(rs) != static_cast<int>(rs.size())) return false;
  }
  return true;
}

namespace {

// every cone of the fan (faces included), as sorted ray-id sets
std::set<std::vector<int>> all_cones(const Fan& f) {
  std::set<std::vector<int>> out;
  for (const auto& mc : f.max_cones) {
    std::vector<ZVec> rs;
    for (int i : mc.ray_ids) rs.push_back(f.rays[i]);
    for (const auto& face : cone_faces(rs)) {
      std::vector<int> ids;
      for (int i : face) ids.push_back(mc.ray_ids[i]);
      std::sort(ids.begin(), ids.end());
      out.insert(ids);
    }
  }
  return out;
}

bool in_coordinate_hyperplane(const Fan& f, const std::vector<int>& cone) {
  if (cone.empty()) return true;
  int n = f.ambient();
  for (int c = 0; c < n; ++c) {
    bool all_zero = true;
    for (int i : cone)
      if (f.rays[i][c] != 0) { all_zero = false; break; }
    if (all_zero) return true;
  }
  return false;
}

std::vector<std::vector<ZVec>> cone_key(const Fan& f, const std::vector<int>& ids) {
  std::vector<std::vector<ZVec>> key(1);
  for (int i : ids) key[0].push_back(f.rays[i]);
  std::sort(key[0].begin(), key[0].end());
  return key;
}

}  // namespace

Fan simplicial_refinement(const Fan& input) {
  Fan fan = input;
  const int max_rounds = 4096;
  for (int round = 0; round < max_rounds; ++round) {
    auto cones = all_cones(fan);
    // gather non-simplicial cones
    std::vector<std::vector<int>> bad;
    for (const auto& ids : cones) {
      if (ids.size() < 2) continue;
      std::vector<ZVec> rs;
      for (int i : ids) rs.push_back(fan.rays[i]);
      if (rank_z(rs) != static_cast<int>(rs.size())) bad.push_back(ids);
    }
    if (bad.empty()) return fan;
    // a non-simplicial cone inside a coordinate hyperplane can never be
    // fixed by interior stellar subdivisions: report it at once
    for (const auto& ids : bad)
      if (in_coordinate_hyperplane(fan, ids))
        throw PropertyViolation(
            "non-simplicial cone inside a coordinate hyperplane; refinement would "
            "change the hyperplane restriction");
    // subdivide a minimally non-simplicial cone (all proper faces simplicial)
    std::sort(bad.begin(), bad.end(), [&](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return cone_key(fan, a) < cone_key(fan, b);
    });
    const std::vector<int>& sigma = bad.front();
    ZVec sum(fan.ambient(), Int(0));
    for (int i : sigma)
      for (int c = 0; c < fan.ambient(); ++c) sum[c] += fan.rays[i][c];
    ZVec rho = primitive_generator(sum, fan.lattice);
    int rho_id = -1;
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
      if (fan.rays[i] == rho) rho_id = static_cast<int>(i);
    if (rho_id < 0) {
      fan.rays.push_back(rho);
      rho_id = static_cast<int>(fan.rays.size()) - 1;
    }
    // star subdivision: replace each maximal cone containing sigma
    std::vector<Cone> next;
    for (const auto& mc : fan.max_cones) {
      bool contains_sigma =
          std::includes(mc.ray_ids.begin(), mc.ray_ids.end(), sigma.begin(), sigma.end());
      if (!contains_sigma) {
        next.push_back(mc);
        continue;
      }
      std::vector<ZVec> rs;
      for (int i : mc.ray_ids) rs.push_back(fan.rays[i]);
      for (const auto& facet : cone_facets(rs)) {
        std::vector<int> ids;
        for (int i : facet) ids.push_back(mc.ray_ids[i]);
        std::sort(ids.begin(), ids.end());
        if (std::includes(ids.begin(), ids.end(), sigma.begin(), sigma.end())) continue;
        ids.push_back(rho_id);
        std::sort(ids.begin(), ids.end());
        Cone c;
        c.ray_ids = ids;
        std::vector<ZVec> crs;
        for (int i : ids) crs.push_back(fan.rays[i]);
        c.dim = rank_z(crs);
        next.push_back(c);
      }
    }
    std::sort(next.begin(), next.end(),
              [](const Cone& a, const Cone& b) { return a.ray_ids < b.ray_ids; });
    next.erase(std::unique(next.begin(), next.end(),
                           [](const Cone& a, const Cone& b) { return a.ray_ids == b.ray_ids; }),
               next.end());
    fan.max_cones = std::move(next);
  }
  throw PropertyViolation("refinement did not terminate");
}

ExponentResult exponent(const GermPoly& g, const ScaledLattice& lat, const Fan& refined) {
  NewtonPolyhedron delta = newton_polyhedron(g, ConveniencePolicy::Truncate);
  ExponentResult res;
  int n = delta.nvars;
  auto is_coordinate = [&](const ZVec& ray) {
    int nonzero = -1;
    for (int i = 0; i < n; ++i) {
      if (ray[i] != 0) {
        if (nonzero >= 0) return false;
        nonzero = i;
      }
    }
    return nonzero >= 0 && ray[nonzero] > 0;
  };
  Int m(1);
  bool interior_found = false;
  for (const auto& ray : refined.rays) {
    RayData rd;
    rd.direction = ray;
    rd.coordinate = is_coordinate(ray);
    rd.multiplicity = ray_multiplicity(ray, delta);
    if (!rd.coordinate) {
      interior_found = true;
      if (rd.multiplicity > 0) m = ilcm(m, rd.multiplicity);
      res.rays.push_back(rd);
    }
  }
  if (!interior_found) {
    // fall back to the multiplicities of Delta's own facet normals
    res.from_facets = true;
    for (const auto& l : delta.facet_normals) {
      RayData rd;
      rd.direction = primitive_generator(l, lat);
      rd.coordinate = is_coordinate(l);
      rd.multiplicity = ray_multiplicity(rd.direction, delta);
      if (rd.multiplicity > 0) m = ilcm(m, rd.multiplicity);
      res.rays.push_back(rd);
    }
  }
  res.m = static_cast<long long>(m);
  return res;
}

bool is_tame(long long m, long long p) {
  if (p == 0) return true;
  return std::gcd(m, p) == 1;
}

namespace {

ZVec xi_side_ray(const ZVec& scaled_ray, const std::vector<int>& d) {
  ZVec lambda(scaled_ray.size());
  for (std::size_t i = 0; i < scaled_ray.size(); ++i) {
    if (scaled_ray[i] % d[i] != 0)
      throw MalformedFan("ray is not a point of the scaled dual lattice");
    lambda[i] = scaled_ray[i] / d[i];
  }
  return lambda;
}

}  // namespace

SuspensionFan suspension_fan(const Fan& refined, const NewtonPolyhedron& delta, long long m) {
  if (m < 1) throw InputError("suspension order must be positive");
  if (!is_simplicial(refined)) throw NonSimplicialInput("suspension needs a simplicial fan");
  int n = delta.nvars;
  if (refined.ambient() != n) throw InputError("fan/polyhedron dimension mismatch");
  const std::vector<int>& d = refined.lattice.d;

  // everything below lives in (xi, tau)-dual coordinates
  std::vector<ZVec> xi_pts;
  for (const auto& v : delta.vertices) {
    ZVec w(n);
    for (int i = 0; i < n; ++i) w[i] = v[i] * d[i];
    xi_pts.push_back(w);
  }
  NewtonPolyhedron delta_xi = polyhedron_from_points(xi_pts, n);

  SuspensionFan sf;
  sf.n = n;
  sf.d = d;
  sf.m = m;

  auto add_ray = [&](ZVec r) -> int {
    r = primitive(std::move(r));
    for (std::size_t i = 0; i < sf.rays.size(); ++i)
      if (sf.rays[i] == r) return static_cast<int>(i);
    sf.rays.push_back(r);
    return static_cast<int>(sf.rays.size()) - 1;
  };

  // roof ray over a fan ray: (m * lambda, min_{Delta_xi} lambda), primitive
  auto roof_of = [&](const ZVec& fan_ray) -> int {
    ZVec lambda = xi_side_ray(fan_ray, d);
    Int mult = delta_xi.min_value(lambda);
    ZVec r(n + 1);
    for (int i = 0; i < n; ++i) r[i] = lambda[i] * m;
    r[n] = mult;
    return add_ray(std::move(r));
  };

  ZVec vertical(n + 1, Int(0));
  vertical[n] = 1;
  int vertical_id = add_ray(vertical);

  for (const auto& mc : refined.max_cones) {
    Cone upper;
    upper.ray_ids.push_back(vertical_id);
    Cone roof;
    for (int i : mc.ray_ids) {
      int rid = roof_of(refined.rays[i]);
      upper.ray_ids.push_back(rid);
      roof.ray_ids.push_back(rid);
    }
    std::sort(upper.ray_ids.begin(), upper.ray_ids.end());
    upper.ray_ids.erase(std::unique(upper.ray_ids.begin(), upper.ray_ids.end()), upper.ray_ids.end());
    std::sort(roof.ray_ids.begin(), roof.ray_ids.end());
    roof.ray_ids.erase(std::unique(roof.ray_ids.begin(), roof.ray_ids.end()), roof.ray_ids.end());
    {
      std::vector<ZVec> rs;
      for (int i : upper.ray_ids) rs.push_back(sf.rays[i]);
      upper.dim = rank_z(rs);
    }
    {
      std::vector<ZVec> rs;
      for (int i : roof.ray_ids) rs.push_back(sf.rays[i]);
      roof.dim = rank_z(rs);
    }
    sf.cones.push_back(upper);
    sf.kinds.push_back(SuspensionConeKind::Upper);
    sf.cones.push_back(roof);
    sf.kinds.push_back(SuspensionConeKind::Boundary);
  }

  // base cone: coordinate rays at height zero plus m * (polar dual vertices)
  // lifted to height one
  Cone base;
  for (int i = 0; i < n; ++i) {
    ZVec e(n + 1, Int(0));
    e[i] = 1;
    base.ray_ids.push_back(add_ray(std::move(e)));
  }
  PolarDual dual = polar_dual(delta_xi);
  for (const auto& v : dual.vertices) {
    QVec lifted(n + 1);
    for (int i = 0; i < n; ++i) lifted[i] = v[i] * m;
    lifted[n] = 1;
    base.ray_ids.push_back(add_ray(primitive(lifted)));
  }
  std::sort(base.ray_ids.begin(), base.ray_ids.end());
  base.ray_ids.erase(std::unique(base.ray_ids.begin(), base.ray_ids.end()), base.ray_ids.end());
  {
    std::vector<ZVec> rs;
    for (int i : base.ray_ids) rs.push_back(sf.rays[i]);
    base.dim = rank_z(rs);
  }
  sf.cones.push_back(base);
  sf.kinds.push_back(SuspensionConeKind::Base);
  return sf;
}

Fan SuspensionFan::as_scaled_fan() const {
  Fan f;
  f.lattice.d = d;
  f.lattice.d.push_back(static_cast<int>(m));
  for (const auto& r : rays) {
    ZVec s(n + 1);
    for (int i = 0; i < n; ++i) s[i] = r[i] * d[i];
    s[n] = r[n] * m;
    f.rays.push_back(s);
  }
  f.max_cones = cones;
  return f;
}

ReducednessReport check_reduced(const SuspensionFan& sf, const GermPoly& g) {
  if (g.nvars() != sf.n) throw InputError("germ arity does not match the fan");
  std::vector<int> d = sf.d;
  GermPoly fhat = g.power_substitution(d).suspend(static_cast<int>(sf.m));
  NewtonPolyhedron delta = newton_polyhedron(fhat, ConveniencePolicy::Truncate);
  int N = sf.n + 1;

  ReducednessReport rep;
  rep.pass = true;

  auto face_info = [&](const ZVec& r, int& dim_out, int& support_out) {
    Int mv = delta.min_value(r);
    std::vector<ZVec> argmin;
    for (const auto& v : delta.vertices)
      if (dot_z(r, v) == mv) argmin.push_back(v);
    std::vector<ZVec> span;
    for (std::size_t i = 1; i < argmin.size(); ++i) {
      ZVec dd(N);
      for (int c = 0; c < N; ++c) dd[c] = argmin[i][c] - argmin[0][c];
      span.push_back(dd);
    }
    for (int j = 0; j < N; ++j) {
      if (r[j] == 0) {
        ZVec e(N, Int(0));
        e[j] = 1;
        span.push_back(e);
      }
    }
    dim_out = rank_z(span);
    int sup = 0;
    for (const auto& [e, c] : fhat.terms())
      if (dot_ze(r, e) == mv) ++sup;
    support_out = sup;
  };

  for (const auto& r : sf.rays) {
    ReducednessRay rr;
    rr.ray = r;
    rr.tau_order = r[sf.n];
    face_info(r, rr.face_dim, rr.face_support);
    rr.relevant = rr.face_support >= 2;
    rr.ok = !rr.relevant || rr.tau_order <= 1;
    if (!rr.ok) rep.pass = false;
    rep.rays.push_back(rr);
  }

  // the hypersurface must avoid the stratum of the base cone: the common
  // minimizing face degenerates to a vertex
  const Cone* base = nullptr;
  for (std::size_t i = 0; i < sf.cones.size(); ++i)
    if (sf.kinds[i] == SuspensionConeKind::Base) base = &sf.cones[i];
  if (!base) throw MalformedFan("suspension fan has no base cone");
  std::vector<ZVec> common_vertices = delta.vertices;
  std::vector<bool> dir_free(N, true);
  for (int id : base->ray_ids) {
    const ZVec& r = sf.rays[id];
    Int mv = delta.min_value(r);
    std::vector<ZVec> keep;
    for (const auto& v : common_vertices)
      if (dot_z(r, v) == mv) keep.push_back(v);
    common_vertices = std::move(keep);
    for (int j = 0; j < N; ++j)
      if (r[j] != 0) dir_free[j] = false;
  }
  if (common_vertices.empty()) {
    rep.base_cone_avoided = false;
    rep.base_face_dim = -1;
    rep.pass = false;
  } else {
    std::vector<ZVec> span;
    for (std::size_t i = 1; i < common_vertices.size(); ++i) {
      ZVec dd(N);
      for (int c = 0; c < N; ++c) dd[c] = common_vertices[i][c] - common_vertices[0][c];
      span.push_back(dd);
    }
    for (int j = 0; j < N; ++j) {
      if (dir_free[j]) {
        ZVec e(N, Int(0));
        e[j] = 1;
        span.push_back(e);
      }
    }
    rep.base_face_dim = rank_z(span);
    rep.base_cone_avoided = rep.base_face_dim == 0;
    if (!rep.base_cone_avoided) rep.pass = false;
  }
  return rep;
}

}  // namespace singconv
