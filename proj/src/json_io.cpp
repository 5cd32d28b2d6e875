#include "singconv/json_io.hpp"

#include <fstream>

#include "singconv/errors.hpp"

namespace singconv {

namespace {

Json zvec_to_json(const ZVec& v) {
  Json a = Json::array();
  for (const auto& x : v) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
      a.push_back(static_cast<long long>(x));
    else
      a.push_back(x.str());
  }
  return a;
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

Json germ_to_json(const GermPoly& g) {
  Json j;
  j["vars"] = g.var_names();
  Json terms = Json::array();
  for (const auto& [e, c] : g.terms()) {
    Json t;
    t["exp"] = e;
    t["coef"] = rat_string(c);
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

GermPoly germ_from_json(const Json& j) {
  try {
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    GermPoly g(static_cast<int>(vars.size()), vars);
    for (const auto& t : j.at("terms")) {
      std::vector<int> e = t.at("exp").get<std::vector<int>>();
      Rat c = parse_rat(t.at("coef").get<std::string>());
      g.add_term(e, c);
    }
    return g;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad germ JSON: ") + e.what());
  }
}

GermPoly load_germ(const std::string& path) { return germ_from_json(load_json(path)); }

Json polyhedron_to_json(const NewtonPolyhedron& d) {
  Json j;
  j["nvars"] = d.nvars;
  Json vs = Json::array();
  for (const auto& v : d.vertices) vs.push_back(zvec_to_json(v));
  j["vertices"] = vs;
  Json fs = Json::array();
  for (std::size_t i = 0; i < d.facet_normals.size(); ++i) {
    Json f;
    f["normal"] = zvec_to_json(d.facet_normals[i]);
    f["rhs"] = static_cast<long long>(d.facet_rhs[i]);
    fs.push_back(f);
  }
  j["facets"] = fs;
  return j;
}

Json faces_to_json(const NewtonPolyhedron& d) {
  Json out = Json::array();
  for (const auto& f : faces(d)) {
    Json j;
    j["functional"] = zvec_to_json(f.functional);
    j["value"] = static_cast<long long>(f.value);
    j["dim"] = f.dim;
    j["compact"] = f.compact;
    Json vs = Json::array();
    for (const auto& v : f.vertices) vs.push_back(zvec_to_json(v));
    j["vertices"] = vs;
    j["unbounded_dirs"] = f.unbounded_dirs;
    out.push_back(j);
  }
  return out;
}

Json polar_to_json(const PolarDual& d) {
  Json j;
  j["nvars"] = d.nvars;
  Json vs = Json::array();
  for (const auto& v : d.vertices) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(rat_string(x));
    vs.push_back(row);
  }
  j["vertices"] = vs;
  j["recession"] = "positive_orthant";
  return j;
}

Json fan_to_json(const Fan& f) {
  Json j;
  j["lattice"]["d"] = f.lattice.d;
  Json rays = Json::array();
  for (const auto& r : f.rays) rays.push_back(zvec_to_json(r));
  j["rays"] = rays;
  Json cones = Json::array();
  for (const auto& c : f.max_cones) cones.push_back(c.ray_ids);
  j["cones"] = cones;
  return j;
}

Fan fan_from_json(const Json& j) {
  try {
    Fan f;
    f.lattice.d = j.at("lattice").at("d").get<std::vector<int>>();
    for (const auto& r : j.at("rays")) {
      ZVec v;
      for (const auto& x : r) v.push_back(Int(x.get<long long>()));
      if (static_cast<int>(v.size()) != f.ambient()) throw MalformedFan("ray arity mismatch");
      f.rays.push_back(v);
    }
    for (const auto& c : j.at("cones")) {
      Cone cone;
      cone.ray_ids = c.get<std::vector<int>>();
      std::sort(cone.ray_ids.begin(), cone.ray_ids.end());
      std::vector<ZVec> rs;
      for (int i : cone.ray_ids) {
        if (i < 0 || i >= static_cast<int>(f.rays.size()))
          throw MalformedFan("cone refers to a missing ray");
        rs.push_back(f.rays[i]);
      }
      cone.dim = rank_z(rs);
      f.max_cones.push_back(cone);
    }
    return f;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad fan JSON: ") + e.what());
  }
}

Fan load_fan(const std::string& path) { return fan_from_json(load_json(path)); }

Json suspension_to_json(const SuspensionFan& sf) {
  Json j = fan_to_json(sf.as_scaled_fan());
  j["m"] = sf.m;
  Json kinds = Json::array();
  for (auto k : sf.kinds) {
    switch (k) {
      case SuspensionConeKind::Upper: kinds.push_back("upper"); break;
      case SuspensionConeKind::Boundary: kinds.push_back("boundary"); break;
      case SuspensionConeKind::Base: kinds.push_back("base"); break;
    }
  }
  j["kinds"] = kinds;
  return j;
}

Json reducedness_to_json(const ReducednessReport& r) {
  Json j;
  j["pass"] = r.pass;
  Json rays = Json::array();
  for (const auto& rr : r.rays) {
    Json x;
    x["ray"] = zvec_to_json(rr.ray);
    x["tau_order"] = static_cast<long long>(rr.tau_order);
    x["face_dim"] = rr.face_dim;
    x["meets_hypersurface"] = rr.relevant;
    x["ok"] = rr.ok;
    rays.push_back(x);
  }
  j["rays"] = rays;
  j["base_cone_avoided"] = r.base_cone_avoided;
  j["base_face_dim"] = r.base_face_dim;
  return j;
}

Json class_to_json(const EqHodgeClass& c) {
  Json j;
  j["group"]["orders"] = c.group().orders;
  if (c.group().monodromy >= 0) j["group"]["monodromy"] = c.group().monodromy;
  Json atoms = Json::array();
  for (const auto& [a, m] : c.atoms()) {
    Json x;
    x["p"] = a.p;
    x["q"] = a.q;
    x["chi"] = a.chi.residues;
    x["mult"] = m;
    atoms.push_back(x);
  }
  j["atoms"] = atoms;
  return j;
}

EqHodgeClass class_from_json(const Json& j) {
  try {
    GroupSpec g;
    g.orders = j.at("group").at("orders").get<std::vector<int>>();
    if (j.at("group").contains("monodromy")) g.monodromy = j["group"]["monodromy"].get<int>();
    EqHodgeClass c(g);
    for (const auto& a : j.at("atoms")) {
      HodgeAtom atom;
      atom.p = a.at("p").get<int>();
      atom.q = a.at("q").get<int>();
      atom.chi.residues = a.at("chi").get<std::vector<int>>();
      c.add_atom(atom, a.at("mult").get<long long>());
    }
    return c;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad class JSON: ") + e.what());
  }
}

Json bundle_to_json(const GermClassBundle& b) {
  Json j;
  j["d"] = b.d;
  j["phi"] = class_to_json(b.phi);
  return j;
}

BundleLoadResult parse_bundle_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad bundle JSON: ") + e.what());
  }
  BundleLoadResult res;
  try {
    res.bundle.d = j.at("d").get<int>();
    res.bundle.phi = class_from_json(j.at("phi"));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad bundle JSON: ") + e.what());
  }
  const GroupSpec& g = res.bundle.phi.group();
  if (g.factors() < 1 || g.orders.back() != res.bundle.d)
    throw ParseError("bundle group must end with a mu_d factor");
  if (!is_polarizable(res.bundle.phi))
    res.warnings.push_back("conjugation symmetry h^{p,q}(chi) = h^{q,p}(chi^-1) violated");
  return res;
}

Json registry_to_json(const InnerRegistry& r) {
  Json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["m"] = r.m;
  Json es = Json::array();
  for (const auto& [I, cls] : r.entries) {
    Json e;
    e["I"] = I;
    e["class"] = class_to_json(cls);
    es.push_back(e);
  }
  j["entries"] = es;
  return j;
}

InnerRegistry registry_from_json(const Json& j) {
  try {
    InnerRegistry r;
    r.n = j.at("n").get<int>();
    r.d = j.at("d").get<std::vector<int>>();
    r.m = j.at("m").get<int>();
    for (const auto& e : j.at("entries")) {
      std::vector<int> I = e.at("I").get<std::vector<int>>();
      std::sort(I.begin(), I.end());
      r.entries[I] = class_from_json(e.at("class"));
    }
    return r;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad registry JSON: ") + e.what());
  }
}

Json spectral_to_json(const SpectralTable& t) {
  Json out = Json::array();
  for (const auto& e : t.entries) {
    Json j;
    j["alpha"] = rat_string(e.alpha);
    j["weight"] = e.weight;
    j["p"] = e.p;
    j["q"] = e.q;
    j["chi"] = e.chi.residues;
    j["mult"] = e.mult;
    out.push_back(j);
  }
  return out;
}

}  // namespace singconv
