#include "singconv/newton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "singconv/errors.hpp"

namespace singconv {

namespace {

// all k-subsets of [0, n)
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

bool all_nonneg(const ZVec& v) {
  for (const auto& x : v)
    if (x < 0) return false;
  return true;
}

}  // namespace

bool NewtonPolyhedron::contains(const QVec& x) const {
  for (std::size_t i = 0; i < facet_normals.size(); ++i) {
    if (dot(to_qvec(facet_normals[i]), x) < Rat(facet_rhs[i])) return false;
  }
  for (const auto& c : x)
    if (c < 0) return false;
  return true;
}

Int NewtonPolyhedron::min_value(const ZVec& l) const {
  if (!all_nonneg(l)) throw UnboundedBelow("functional has a negative component");
  if (vertices.empty()) throw EmptyGerm();
  Int best = dot_z(l, vertices[0]);
  for (const auto& v : vertices) best = std::min(best, dot_z(l, v));
  return best;
}

std::vector<QVec> enumerate_vertices(const std::vector<QVec>& normals,
                                     const std::vector<Rat>& rhs, int dim) {
  std::vector<QVec> out;
  int m = static_cast<int>(normals.size());
  auto satisfies_all = [&](const QVec& x) {
    for (int i = 0; i < m; ++i)
      if (dot(normals[i], x) < rhs[i]) return false;
    return true;
  };
  std::set<QVec> seen;
  for_each_subset(m, dim, [&](const std::vector<int>& idx) {
    QMat a;
    QVec b;
    for (int i : idx) {
      a.push_back(normals[i]);
      b.push_back(rhs[i]);
    }
    auto x = solve_square(a, b);
    if (!x) return;
    if (!satisfies_all(*x)) return;
    if (seen.insert(*x).second) out.push_back(*x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

NewtonPolyhedron newton_polyhedron(const GermPoly& g, ConveniencePolicy policy) {
  if (g.empty()) throw EmptyGerm();
  int n = g.nvars();
  std::vector<ZVec> support;
  for (const auto& e : g.support()) support.push_back(to_zvec(e));
  if (!g.is_convenient() && policy != ConveniencePolicy::Ignore) {
    if (policy == ConveniencePolicy::Require)
      throw NotConvenient("germ is not convenient; pass --allow-nonconvenient to truncate");
    // R^{(i)}_{>=N} convention: append N e_i for each missing pure power
    int N = 2 * std::max(1, g.max_exponent());
    for (int i = 0; i < n; ++i) {
      bool pure = false;
      for (const auto& e : support) {
        bool p = e[i] > 0;
        for (int j = 0; p && j < n; ++j)
          if (j != i && e[j] != 0) p = false;
        if (p) { pure = true; break; }
      }
      if (!pure) {
        ZVec v(n, Int(0));
        v[i] = N;
        support.push_back(v);
      }
    }
  }
  return polyhedron_from_points(support, n);
}

NewtonPolyhedron polyhedron_from_points(const std::vector<ZVec>& points, int n) {
  if (points.empty()) throw EmptyGerm();
  const std::vector<ZVec>& support = points;

  // candidate facet normals: for (T, J) with |T| + |J| = n, l vanishing on
  // aff(T) - t0 and on the e_j (j in J); plus all coordinate functionals
  std::set<ZVec> cand;
  for (int i = 0; i < n; ++i) {
    ZVec e(n, Int(0));
    e[i] = 1;
    cand.insert(e);
  }
  int s = static_cast<int>(support.size());
  for (int tsize = 1; tsize <= n; ++tsize) {
    int jsize = n - tsize;
    for_each_subset(s, tsize, [&](const std::vector<int>& tidx) {
      for_each_subset(n, jsize, [&](const std::vector<int>& jidx) {
        QMat rows;
        const ZVec& t0 = support[tidx[0]];
        for (std::size_t k = 1; k < tidx.size(); ++k) {
          QVec r(n);
          for (int c = 0; c < n; ++c) r[c] = Rat(support[tidx[k]][c] - t0[c]);
          rows.push_back(r);
        }
        for (int j : jidx) {
          QVec r(n, Rat(0));
          r[j] = 1;
          rows.push_back(r);
        }
        auto ns = nullspace(rows, n);
        if (ns.size() != 1) return;
        ZVec l = primitive(ns[0]);
        if (is_zero(l)) return;
        bool neg = false, pos = false;
        for (const auto& x : l) {
          if (x < 0) neg = true;
          if (x > 0) pos = true;
        }
        if (neg && pos) return;
        if (neg) for (auto& x : l) x = -x;
        cand.insert(l);
      });
    });
  }

  // every candidate yields a valid inequality; keep those whose face is a facet
  NewtonPolyhedron delta;
  delta.nvars = n;
  std::vector<ZVec> normals;
  std::vector<Int> rhs;
  for (const auto& l : cand) {
    Int c = dot_z(l, support[0]);
    for (const auto& w : support) c = std::min(c, dot_z(l, w));
    normals.push_back(l);
    rhs.push_back(c);
  }

  // vertices from the full H-description
  std::vector<QVec> qnormals;
  std::vector<Rat> qrhs;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    qnormals.push_back(to_qvec(normals[i]));
    qrhs.push_back(Rat(rhs[i]));
  }
  auto verts = enumerate_vertices(qnormals, qrhs, n);
  for (const auto& v : verts) {
    ZVec z(n);
    for (int i = 0; i < n; ++i) {
      if (boost::multiprecision::denominator(v[i]) != 1)
        throw AlgebraError("non-lattice vertex in Newton polyhedron");
      z[i] = boost::multiprecision::numerator(v[i]);
    }
    delta.vertices.push_back(z);
  }
  std::sort(delta.vertices.begin(), delta.vertices.end());

  // facet filter: the face cut by l has dimension n-1
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const ZVec& l = normals[i];
    std::vector<ZVec> span;
    ZVec base;
    bool first = true;
    for (const auto& v : delta.vertices) {
      if (dot_z(l, v) != rhs[i]) continue;
      if (first) {
        base = v;
        first = false;
      } else {
        ZVec d(n);
        for (int c = 0; c < n; ++c) d[c] = v[c] - base[c];
        span.push_back(d);
      }
    }
    if (first) continue;  // no vertex on it
    for (int j = 0; j < n; ++j) {
      if (l[j] == 0) {
        ZVec e(n, Int(0));
        e[j] = 1;
        span.push_back(e);
      }
    }
    if (rank_z(span) == n - 1) {
      delta.facet_normals.push_back(l);
      delta.facet_rhs.push_back(rhs[i]);
    }
  }
  return delta;
}

namespace {

struct FaceKey {
  std::vector<int> vert_ids;
  std::vector<int> dirs;
  bool operator<(const FaceKey& o) const {
    return std::tie(vert_ids, dirs) < std::tie(o.vert_ids, o.dirs);
  }
};

Face make_face(const NewtonPolyhedron& delta, const std::vector<int>& active) {
  int n = delta.nvars;
  Face f;
  f.active_facets = active;
  f.functional = ZVec(n, Int(0));
  f.value = 0;
  for (int a : active) {
    for (int c = 0; c < n; ++c) f.functional[c] += delta.facet_normals[a][c];
    f.value += delta.facet_rhs[a];
  }
  for (const auto& v : delta.vertices) {
    bool on = true;
    for (int a : active)
      if (dot_z(delta.facet_normals[a], v) != delta.facet_rhs[a]) { on = false; break; }
    if (on) f.vertices.push_back(v);
  }
  for (int j = 0; j < n; ++j) {
    bool free_dir = true;
    for (int a : active)
      if (delta.facet_normals[a][j] != 0) { free_dir = false; break; }
    if (free_dir) f.unbounded_dirs.push_back(j);
  }
  f.compact = f.unbounded_dirs.empty();
  if (!f.vertices.empty()) {
    std::vector<ZVec> span;
    for (std::size_t k = 1; k < f.vertices.size(); ++k) {
      ZVec d(n);
      for (int c = 0; c < n; ++c) d[c] = f.vertices[k][c] - f.vertices[0][c];
      span.push_back(d);
    }
    for (int j : f.unbounded_dirs) {
      ZVec e(n, Int(0));
      e[j] = 1;
      span.push_back(e);
    }
    f.dim = rank_z(span);
  }
  return f;
}

// maximal active set cutting the same face
std::vector<int> saturate(const NewtonPolyhedron& delta, const Face& f) {
  std::vector<int> act;
  for (std::size_t i = 0; i < delta.facet_normals.size(); ++i) {
    bool on = true;
    for (const auto& v : f.vertices)
      if (dot_z(delta.facet_normals[i], v) != delta.facet_rhs[i]) { on = false; break; }
    for (int j : f.unbounded_dirs)
      if (on && delta.facet_normals[i][j] != 0) on = false;
    if (on) act.push_back(static_cast<int>(i));
  }
  return act;
}

}  // namespace

std::vector<Face> faces(const NewtonPolyhedron& delta) {
  // closure of the facet set under intersection, plus Delta itself
  std::map<FaceKey, Face> known;
  auto vert_ids = [&](const Face& f) {
    std::vector<int> ids;
    for (const auto& v : f.vertices) {
      auto it = std::lower_bound(delta.vertices.begin(), delta.vertices.end(), v);
      ids.push_back(static_cast<int>(it - delta.vertices.begin()));
    }
    return ids;
  };
  auto add = [&](const std::vector<int>& active) -> bool {
    Face f = make_face(delta, active);
    if (f.vertices.empty()) return false;
    f.active_facets = saturate(delta, f);
    f = make_face(delta, f.active_facets);
    FaceKey key{vert_ids(f), f.unbounded_dirs};
    if (known.count(key)) return false;
    known.emplace(key, std::move(f));
    return true;
  };

  add({});  // Delta itself
  for (std::size_t i = 0; i < delta.facet_normals.size(); ++i) add({static_cast<int>(i)});
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Face> snapshot;
    for (const auto& [k, f] : known) snapshot.push_back(f);
    for (std::size_t a = 0; a < snapshot.size(); ++a) {
      for (std::size_t b = a + 1; b < snapshot.size(); ++b) {
        std::vector<int> uni = snapshot[a].active_facets;
        for (int x : snapshot[b].active_facets)
          if (std::find(uni.begin(), uni.end(), x) == uni.end()) uni.push_back(x);
        std::sort(uni.begin(), uni.end());
        if (add(uni)) grew = true;
      }
    }
  }
  std::vector<Face> out;
  for (const auto& [k, f] : known) out.push_back(f);
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    return std::tie(a.dim, a.vertices, a.unbounded_dirs) <
           std::tie(b.dim, b.vertices, b.unbounded_dirs);
  });
  return out;
}

GermPoly face_restriction(const GermPoly& g, const Face& sigma) {
  NewtonPolyhedron delta = newton_polyhedron(g, ConveniencePolicy::Ignore);
  Int mv = delta.min_value(sigma.functional);
  if (mv != sigma.value) throw FaceMismatch("face does not belong to the germ's polyhedron");
  GermPoly out(g.nvars(), g.var_names());
  for (const auto& [e, c] : g.terms()) {
    if (dot_ze(sigma.functional, e) == sigma.value) out.add_term(e, c);
  }
  return out;
}

PolarDual polar_dual(const NewtonPolyhedron& delta) {
  int n = delta.nvars;
  for (const auto& v : delta.vertices)
    if (is_zero(v)) throw OriginInPolytope();
  std::vector<QVec> normals;
  std::vector<Rat> rhs;
  for (int i = 0; i < n; ++i) {
    QVec e(n, Rat(0));
    e[i] = 1;
    normals.push_back(e);
    rhs.push_back(Rat(0));
  }
  for (const auto& v : delta.vertices) {
    normals.push_back(to_qvec(v));
    rhs.push_back(Rat(1));
  }
  PolarDual d;
  d.nvars = n;
  d.vertices = enumerate_vertices(normals, rhs, n);
  return d;
}

NondegeneracyReport is_nondegenerate(const GermPoly& g, const std::vector<long long>& primes,
                                     long long samples, unsigned long long seed) {
  if (samples < 1) throw InputError("samples must be positive");
  NewtonPolyhedron delta = newton_polyhedron(g, ConveniencePolicy::Truncate);
  auto all_faces = faces(delta);
  int n = g.nvars();

  NondegeneracyReport rep;
  rep.exhaustive = true;
  if (primes.empty()) {
    rep.exhaustive = false;
    return rep;  // Inconclusive: nothing searched
  }

  for (long long p : primes) {
    if (p < 2) throw BadPrime("prime must be >= 2");
    for (const auto& [e, c] : g.terms()) {
      if (boost::multiprecision::denominator(c) % p == 0)
        throw BadPrime("denominator divisible by " + std::to_string(p));
    }
    for (const auto& sigma : all_faces) {
      GermPoly fs(g.nvars(), g.var_names());
      for (const auto& [e, c] : g.terms())
        if (dot_ze(sigma.functional, e) == sigma.value) fs.add_term(e, c);
      if (fs.empty()) continue;
      std::vector<GermPoly> eqs;
      eqs.push_back(fs);
      for (int i = 0; i < n; ++i) eqs.push_back(fs.scaled_partial(i));

      // torus of the ambient space; coordinates not in the face's span range
      // freely and cost an extra factor
      double torus_size = 1;
      for (int i = 0; i < n; ++i) torus_size *= static_cast<double>(p - 1);
      auto check_point = [&](const std::vector<long long>& pt) -> bool {
        for (const auto& q : eqs)
          if (q.eval_mod(pt, p) != 0) return false;
        return true;
      };
      if (torus_size <= static_cast<double>(samples)) {
        std::vector<long long> pt(n, 1);
        while (true) {
          if (check_point(pt)) {
            rep.status = NondegenerateStatus::DegenerateWitness;
            rep.witness_face = sigma;
            rep.witness_point = pt;
            rep.witness_prime = p;
            return rep;
          }
          int i = 0;
          while (i < n && pt[i] == p - 1) pt[i++] = 1;
          if (i == n) break;
          ++pt[i];
        }
      } else {
        rep.exhaustive = false;
        std::mt19937_64 rng(seed ^ (static_cast<unsigned long long>(p) << 20));
        std::uniform_int_distribution<long long> dist(1, p - 1);
        for (long long s = 0; s < samples; ++s) {
          std::vector<long long> pt(n);
          for (int i = 0; i < n; ++i) pt[i] = dist(rng);
          if (check_point(pt)) {
            rep.status = NondegenerateStatus::DegenerateWitness;
            rep.witness_face = sigma;
            rep.witness_point = pt;
            rep.witness_prime = p;
            return rep;
          }
        }
      }
    }
  }
  rep.status = rep.exhaustive ? NondegenerateStatus::ProbablyNondegenerate
                              : NondegenerateStatus::Inconclusive;
  return rep;
}

}  // namespace singconv
