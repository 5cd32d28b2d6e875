// singconv: Newton polyhedra, dual fans, exponents, equivariant Hodge
// convolution and finite-field verification for composite singularities.
//
// Exit codes: 0 ok, 2 input error, 3 algebraic error, 4 verification failure.

#include <CLI11.hpp>
#include <iostream>
#include <numeric>

#include "singconv/convolve.hpp"
#include "singconv/errors.hpp"
#include "singconv/fforacle.hpp"
#include "singconv/json_io.hpp"

using namespace singconv;

namespace {

long long env_max_enum() {
  if (const char* s = std::getenv("SINGCONV_MAX_ENUM")) {
    try {
      return std::stoll(s);
    } catch (...) {
      throw InputError("SINGCONV_MAX_ENUM is not a number");
    }
  }
  return 100000000LL;
}

std::vector<int> parse_d_list(const std::string& s) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(std::stoi(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (out.empty()) throw InputError("empty d-list");
  for (int d : out)
    if (d < 1) throw InputError("d entries must be positive");
  return out;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json(out_path, j);
}

ScaledLattice lattice_for(const GermPoly& g, const std::string& dspec) {
  ScaledLattice lat;
  if (dspec.empty())
    lat.d.assign(g.nvars(), 1);
  else
    lat.d = parse_d_list(dspec);
  if (static_cast<int>(lat.d.size()) != g.nvars())
    throw InputError("d-list length must match the germ's variable count");
  return lat;
}

GermClassBundle builtin_bundle(const std::string& name) {
  if (name == "node") return node_bundle();
  if (name == "cusp") return cusp_bundle();
  if (name.rfind("monomial:", 0) == 0) return monomial_bundle(std::stoi(name.substr(9)));
  throw InputError("unknown builtin bundle " + name + " (node, cusp, monomial:<d>)");
}

GermClassBundle bundle_from_spec(const Json& spec) {
  if (spec.is_string()) {
    std::string s = spec.get<std::string>();
    if (s.rfind("builtin:", 0) == 0) return builtin_bundle(s.substr(8));
    auto res = load_user_class(s);
    for (const auto& w : res.warnings) std::cerr << "warning: " << s << ": " << w << "\n";
    return res.bundle;
  }
  if (spec.is_object() && spec.contains("builtin"))
    return builtin_bundle(spec["builtin"].get<std::string>());
  auto res = parse_bundle_json(spec.dump());
  for (const auto& w : res.warnings) std::cerr << "warning: inline bundle: " << w << "\n";
  return res.bundle;
}

int run_newton(const std::string& germ_path, const std::string& out, bool allow_nonconvenient,
               bool do_faces, bool do_polar, const std::string& nondeg_primes,
               long long samples, unsigned long long seed) {
  GermPoly g = load_germ(germ_path);
  auto delta = newton_polyhedron(
      g, allow_nonconvenient ? ConveniencePolicy::Truncate : ConveniencePolicy::Require);
  Json j = polyhedron_to_json(delta);
  if (do_faces) j["faces"] = faces_to_json(delta);
  if (do_polar) j["polar_dual"] = polar_to_json(polar_dual(delta));
  if (!nondeg_primes.empty()) {
    std::vector<long long> primes;
    for (int p : parse_d_list(nondeg_primes)) primes.push_back(p);
    auto rep = is_nondegenerate(g, primes, samples, seed);
    Json nd;
    switch (rep.status) {
      case NondegenerateStatus::ProbablyNondegenerate:
        nd["status"] = "probably_nondegenerate";
        break;
      case NondegenerateStatus::Inconclusive:
        nd["status"] = "inconclusive";
        break;
      case NondegenerateStatus::DegenerateWitness: {
        nd["status"] = "degenerate_witness";
        nd["prime"] = rep.witness_prime;
        nd["point"] = rep.witness_point;
        Json face;
        face["functional"] = Json::array();
        for (const auto& x : rep.witness_face.functional)
          face["functional"].push_back(static_cast<long long>(x));
        face["dim"] = rep.witness_face.dim;
        nd["face"] = face;
        break;
      }
    }
    j["nondegeneracy"] = nd;
  }
  emit(j, out);
  std::cerr << "newton: " << delta.vertices.size() << " vertices, "
            << delta.facet_normals.size() << " facets\n";
  return 0;
}

int run_exponent(const std::string& germ_path, const std::string& dspec, const std::string& out) {
  GermPoly g = load_germ(germ_path);
  ScaledLattice lat = lattice_for(g, dspec);
  auto delta = newton_polyhedron(g, ConveniencePolicy::Truncate);
  auto fan = simplicial_refinement(dual_fan(delta, lat));
  auto res = exponent(g, lat, fan);
  Json j;
  j["m"] = res.m;
  j["from_facet_normals"] = res.from_facets;
  Json rays = Json::array();
  for (const auto& rd : res.rays) {
    Json r;
    Json dir = Json::array();
    for (const auto& x : rd.direction) dir.push_back(static_cast<long long>(x));
    r["direction"] = dir;
    r["multiplicity"] = static_cast<long long>(rd.multiplicity);
    r["coordinate"] = rd.coordinate;
    rays.push_back(r);
  }
  j["rays"] = rays;
  emit(j, out);
  std::cout << "m = " << res.m << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equivariant Hodge classes of composite hypersurface singularities"};
  app.require_subcommand(1);

  long long max_enum = 0;
  int jobs = 1;
  unsigned long long seed = 12345;
  app.add_option("--jobs", jobs, "worker threads for enumeration");
  app.add_option("--seed", seed, "seed for randomized sampling");

  std::string out_path;

  auto* newton_cmd = app.add_subcommand("newton", "Newton polyhedron of a germ");
  std::string newton_germ, nondeg_primes;
  bool allow_nc = false, with_faces = false, with_polar = false;
  long long samples = 200000;
  newton_cmd->add_option("germ", newton_germ, "germ JSON file")->required();
  newton_cmd->add_option("--out", out_path, "output file (default stdout)");
  newton_cmd->add_flag("--allow-nonconvenient", allow_nc, "truncate unbounded directions");
  newton_cmd->add_flag("--faces", with_faces, "include the face list");
  newton_cmd->add_flag("--polar", with_polar, "include the polar dual");
  newton_cmd->add_option("--nondegenerate", nondeg_primes,
                         "comma-separated primes for the torus check");
  newton_cmd->add_option("--samples", samples, "torus enumeration budget per face and prime");

  auto* fan_cmd = app.add_subcommand("fan", "dual fans, refinement, suspension");
  auto* fan_dual = fan_cmd->add_subcommand("dual", "normal fan of the Newton polyhedron");
  std::string fan_germ, fan_d;
  fan_dual->add_option("germ", fan_germ, "germ JSON file")->required();
  fan_dual->add_option("--d", fan_d, "scaling d1,...,dn");
  fan_dual->add_option("--out", out_path, "output file");

  auto* fan_refine = fan_cmd->add_subcommand("refine", "deterministic simplicial refinement");
  std::string fan_in;
  fan_refine->add_option("fan", fan_in, "fan JSON file")->required();
  fan_refine->add_option("--out", out_path, "output file");

  auto* fan_suspend = fan_cmd->add_subcommand("suspend", "suspension fan and reducedness check");
  std::string susp_germ, susp_d;
  long long susp_m = 0;
  fan_suspend->add_option("germ", susp_germ, "germ JSON file")->required();
  fan_suspend->add_option("--d", susp_d, "scaling d1,...,dn");
  fan_suspend->add_option("--m", susp_m, "suspension order (default: the exponent)");
  fan_suspend->add_option("--out", out_path, "output file");

  auto* exp_cmd = app.add_subcommand("exponent", "exponent m = lcm of ray multiplicities");
  std::string exp_germ, exp_d;
  exp_cmd->add_option("germ", exp_germ, "germ JSON file")->required();
  exp_cmd->add_option("--d", exp_d, "scaling d1,...,dn");
  exp_cmd->add_option("--out", out_path, "output file");

  auto* bases_cmd = app.add_subcommand("bases", "base classes");
  auto* fermat_cmd = bases_cmd->add_subcommand("fermat", "inner class of a Fermat germ");
  std::string fermat_d;
  long long fermat_m = 0;
  fermat_cmd->add_option("--d", fermat_d, "exponents d1,...,dr")->required();
  fermat_cmd->add_option("--m", fermat_m, "monodromy order (default lcm)");
  fermat_cmd->add_option("--out", out_path, "output file");
  auto* registry_cmd = bases_cmd->add_subcommand("registry", "inner registry for f = x1+...+xn");
  std::string registry_d;
  long long registry_m = 0;
  registry_cmd->add_option("--d", registry_d, "exponents d1,...,dn")->required();
  registry_cmd->add_option("--m", registry_m, "monodromy order (default lcm)");
  registry_cmd->add_option("--out", out_path, "output file");

  auto* conv_cmd = app.add_subcommand("convolve", "evaluate the convolution engine on a job");
  std::string conv_job;
  bool conv_spectrum = false, check01 = false;
  int spectrum_nvars = -1;
  conv_cmd->add_option("job", conv_job, "job JSON file")->required();
  conv_cmd->add_option("--out", out_path, "output file");
  conv_cmd->add_flag("--spectrum", conv_spectrum, "append the spectral table");
  conv_cmd->add_option("--spectrum-nvars", spectrum_nvars,
                       "ambient variable count for the alpha convention");
  conv_cmd->add_flag("--check-0-1", check01, "cross-check the V-form identity (two bundles)");

  auto* spec_cmd = app.add_subcommand("spectrum", "spectral table of a class file");
  std::string spec_class;
  int spec_nvars = 1;
  spec_cmd->add_option("class", spec_class, "class JSON file")->required();
  spec_cmd->add_option("--nvars", spec_nvars, "ambient variable count")->required();
  spec_cmd->add_option("--out", out_path, "output file");

  auto* verify_cmd = app.add_subcommand("verify", "finite-field convolution verification");
  std::string verify_job, verify_p;
  long long verify_m = 0;
  bool allow_non_qh = false;
  verify_cmd->add_option("job", verify_job, "job JSON file")->required();
  verify_cmd->add_option("--p", verify_p, "comma-separated primes (default battery 7,13,19,31)");
  verify_cmd->add_option("--m", verify_m, "exponent override");
  verify_cmd->add_flag("--allow-non-quasi-homogeneous", allow_non_qh,
                       "skip the quasi-homogeneity precondition (unsound in general)");
  verify_cmd->add_option("--out", out_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    max_enum = env_max_enum();
    if (newton_cmd->parsed()) {
      return run_newton(newton_germ, out_path, allow_nc, with_faces, with_polar, nondeg_primes,
                        samples, seed);
    }
    if (fan_cmd->parsed()) {
      if (fan_dual->parsed()) {
        GermPoly g = load_germ(fan_germ);
        ScaledLattice lat = lattice_for(g, fan_d);
        auto fan = dual_fan(newton_polyhedron(g, ConveniencePolicy::Truncate), lat);
        emit(fan_to_json(fan), out_path);
        return 0;
      }
      if (fan_refine->parsed()) {
        Fan f = load_fan(fan_in);
        emit(fan_to_json(simplicial_refinement(f)), out_path);
        return 0;
      }
      if (fan_suspend->parsed()) {
        GermPoly g = load_germ(susp_germ);
        ScaledLattice lat = lattice_for(g, susp_d);
        auto delta = newton_polyhedron(g, ConveniencePolicy::Truncate);
        auto fan = simplicial_refinement(dual_fan(delta, lat));
        long long m = susp_m;
        if (m <= 0) m = exponent(g, lat, fan).m;
        auto sf = suspension_fan(fan, delta, m);
        auto rep = check_reduced(sf, g);
        Json j = suspension_to_json(sf);
        j["reducedness"] = reducedness_to_json(rep);
        emit(j, out_path);
        std::cout << "reducedness: " << (rep.pass ? "PASS" : "FAIL") << "\n";
        return rep.pass ? 0 : 4;
      }
      throw InputError("fan needs one of: dual, refine, suspend");
    }
    if (exp_cmd->parsed()) {
      return run_exponent(exp_germ, exp_d, out_path);
    }
    if (bases_cmd->parsed()) {
      if (fermat_cmd->parsed()) {
        auto d = parse_d_list(fermat_d);
        long long l = 1;
        for (int x : d) l = std::lcm(l, static_cast<long long>(x));
        int m = fermat_m > 0 ? static_cast<int>(fermat_m) : static_cast<int>(l);
        emit(class_to_json(fermat_class(d, m)), out_path);
        return 0;
      }
      if (registry_cmd->parsed()) {
        auto d = parse_d_list(registry_d);
        long long l = 1;
        for (int x : d) l = std::lcm(l, static_cast<long long>(x));
        int m = registry_m > 0 ? static_cast<int>(registry_m) : static_cast<int>(l);
        emit(registry_to_json(registry_for_sum(static_cast<int>(d.size()), d, m)), out_path);
        return 0;
      }
      throw InputError("bases needs one of: fermat, registry");
    }
    if (conv_cmd->parsed()) {
      Json j = load_json(conv_job);
      ConvolutionJob job;
      std::vector<Json> bspecs = j.at("bundles").get<std::vector<Json>>();
      for (const auto& b : bspecs) job.bundles.push_back(bundle_from_spec(b));
      job.n = static_cast<int>(job.bundles.size());
      std::vector<int> d;
      for (const auto& b : job.bundles) d.push_back(b.d);
      long long l = 1;
      for (int x : d) l = std::lcm(l, static_cast<long long>(x));
      job.m = j.contains("m") ? j["m"].get<int>() : static_cast<int>(l);
      if (j.contains("registry") && j["registry"].is_object())
        job.registry = registry_from_json(j["registry"]);
      else if (!j.contains("registry") || j["registry"] == "sum")
        job.registry = registry_for_sum(job.n, d, job.m);
      else
        job.registry = registry_from_json(load_json(j["registry"].get<std::string>()));
      EqHodgeClass result = convolve(job);
      if (check01) {
        if (job.n != 2) throw InputError("--check-0-1 needs exactly two bundles");
        EqHodgeClass v = v_form_identity(job.bundles[0], job.bundles[1]);
        if (!(v == result)) throw MismatchReport("convolve and the V-form disagree");
      }
      Json out = class_to_json(result);
      if (conv_spectrum) {
        int nv = spectrum_nvars > 0 ? spectrum_nvars : job.n;
        out["spectrum"] = spectral_to_json(spectral_table(result, nv));
      }
      emit(out, out_path);
      return 0;
    }
    if (spec_cmd->parsed()) {
      EqHodgeClass c = class_from_json(load_json(spec_class));
      emit(spectral_to_json(spectral_table(c, spec_nvars)), out_path);
      return 0;
    }
    if (verify_cmd->parsed()) {
      Json j = load_json(verify_job);
      GermPoly f = germ_from_json(j.at("f"));
      std::vector<GermPoly> gs;
      for (const auto& gj : j.at("g")) gs.push_back(germ_from_json(gj));
      std::vector<int> d = j.at("d").get<std::vector<int>>();
      int m;
      if (verify_m > 0) {
        m = static_cast<int>(verify_m);
      } else if (j.contains("m")) {
        m = j["m"].get<int>();
      } else {
        ScaledLattice lat{d};
        auto delta = newton_polyhedron(f, ConveniencePolicy::Truncate);
        auto fan = simplicial_refinement(dual_fan(delta, lat));
        m = static_cast<int>(exponent(f, lat, fan).m);
      }
      std::vector<long long> primes;
      if (!verify_p.empty()) {
        for (int p : parse_d_list(verify_p)) primes.push_back(p);
      } else if (j.contains("primes")) {
        for (int p : j["primes"].get<std::vector<int>>()) primes.push_back(p);
      } else {
        primes = {7, 13, 19, 31};
      }
      VerifyOptions opt;
      opt.max_enum = max_enum;
      opt.jobs = jobs;
      opt.require_quasi_homogeneous = !allow_non_qh;
      Json out = Json::array();
      bool all_pass = true;
      int usable = 0;
      for (long long p : primes) {
        bool fits = (p - 1) % m == 0;
        for (int di : d)
          if ((p - 1) % di != 0) fits = false;
        if (!fits) {
          std::cerr << "skipping p = " << p << " (congruence conditions fail)\n";
          continue;
        }
        ++usable;
        auto rep = verify_convolution(f, gs, d, p, m, opt);
        Json rj;
        rj["p"] = p;
        rj["m"] = m;
        rj["pass"] = rep.pass;
        Json chars = Json::array();
        for (const auto& pc : rep.chars) {
          Json cj;
          cj["psi"] = pc.psi_index;
          cj["order"] = pc.psi_order;
          cj["in_m_block"] = pc.in_m_block;
          cj["lhs"] = pc.lhs;
          cj["rhs"] = pc.rhs;
          cj["equal"] = pc.equal;
          chars.push_back(cj);
        }
        rj["characters"] = chars;
        rj["notes"] = rep.notes;
        out.push_back(rj);
        all_pass = all_pass && rep.pass;
        std::cout << "p = " << p << ": " << (rep.pass ? "PASS" : "FAIL") << "\n";
      }
      if (usable == 0) throw PreconditionViolation("no prime satisfies the congruences");
      emit(out, out_path);
      return all_pass ? 0 : 4;
    }
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 4;
  } catch (const AlgebraError& e) {
    std::cerr << "algebraic error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
