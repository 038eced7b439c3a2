#include "lsf/pipeline.hpp"

#include <cmath>
#include <iostream>

namespace lsf::pipeline {

Json defaults(const std::string& command) {
  if (command == "elastica")
    return {{"chi", 1.0},    {"kappa", 0.0},  {"mu", -1.0}, {"lambda", 0.0}, {"k0", 2.0},
            {"dk0", 0.0},    {"length", 10.0}, {"step", 1e-3}, {"stride", 1}, {"out", "curve.json"}};
  Json complex = {{"generator", "rotating-plane"}, {"samples", 200}, {"closed", true}};
  Json curve = {{"circle", {{"center", {0.0, 2.0}}, {"radius", 1.0}, {"samples", 200}, {"warp", 0.0}}}};
  if (command == "evolve")
    return {{"curve", curve}, {"complex", complex}, {"v0_index", 0}, {"regularity_floor", kRegularityFloor},
            {"out", "surface.json"}};
  if (command == "analyze") return {{"surface", "surface.json"}, {"out", "report.json"}, {"tolerances", Json::object()}};
  if (command == "ribaucour")
    return {{"curve", curve},
            {"complex", complex},
            {"v0_index", 0},
            {"c_hat", {{"chart", {3.0, 2.0, 0.5}}}},
            {"out_prefix", "pair"},
            {"tolerances", Json::object()}};
  if (command == "export") return {{"surface", "surface.json"}, {"format", "obj"}, {"out", "surface.obj"}};
  throw Error(ErrorKind::config, "unknown command " + command);
}

Json merge(const Json& base, const Json& over) {
  Json out = base;
  for (auto it = over.begin(); it != over.end(); ++it) {
    if (out.contains(it.key()) && out[it.key()].is_object() && it.value().is_object())
      out[it.key()] = merge(out[it.key()], it.value());
    else
      out[it.key()] = it.value();
  }
  return out;
}

namespace {

void require_positive(const Json& cfg, const char* key) {
  if (cfg.contains(key) && !(cfg[key].get<double>() > 0))
    throw Error(ErrorKind::config, std::string(key) + " must be positive");
}

void check_samples(const Json& j) {
  if (j.is_object() && j.contains("samples") && j["samples"].get<long>() < 4)
    throw Error(ErrorKind::config, "grid sizes must be at least 4");
}

}  // namespace

void validate(const std::string& command, const Json& cfg) {
  try {
    if (command == "elastica") {
      require_positive(cfg, "step");
      require_positive(cfg, "length");
      if (cfg["stride"].get<long>() < 1) throw Error(ErrorKind::config, "stride must be at least 1");
    }
    if (cfg.contains("tolerances"))
      for (const auto& [k, v] : cfg["tolerances"].items())
        if (!(v.get<double>() > 0)) throw Error(ErrorKind::config, "tolerance " + k + " must be positive");
    if (cfg.contains("complex")) check_samples(cfg["complex"]);
    if (cfg.contains("curve") && cfg["curve"].contains("circle")) check_samples(cfg["curve"]["circle"]);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::config, e.what());
  }
}

ElasticaParams elastica_params(const Json& cfg) {
  ElasticaParams p;
  p.chi = cfg.value("chi", 1.0);
  p.kappa = cfg.value("kappa", 0.0);
  p.mu = cfg.value("mu", 0.0);
  p.lambda = cfg.value("lambda", 0.0);
  p.k0 = cfg.value("k0", 0.0);
  p.dk0 = cfg.value("dk0", 0.0);
  p.length = cfg.value("length", 1.0);
  p.step = cfg.value("step", 1e-3);
  p.validate();
  return p;
}

LegendreCurve make_curve(const Json& spec) {
  const SpaceFormFrame frame = SpaceFormFrame::euclidean();
  if (spec.contains("file")) return io::curve_from_json(io::read_json(spec["file"].get<std::string>()));
  if (spec.contains("circle")) {
    const Json& c = spec["circle"];
    auto center = c.value("center", std::vector<double>{0.0, 0.0});
    double r = c.value("radius", 1.0), warp = c.value("warp", 0.0);
    std::size_t n = c.value("samples", std::size_t{200});
    if (center.size() != 2 || !(r > 0)) throw Error(ErrorKind::config, "circle needs a 2D center and positive radius");
    std::vector<double> u = uniform_grid(0.0, 2.0 * M_PI, n, true);
    std::vector<Vec2> pts(n), nrm(n);
    for (std::size_t i = 0; i < n; ++i) {
      double th = u[i] + warp * std::sin(u[i]);
      nrm[i] = -Vec2(std::cos(th), std::sin(th));
      pts[i] = Vec2(center[0], center[1]) - r * nrm[i];
    }
    return contact_lift_curve(pts, nrm, frame, true, u);
  }
  if (spec.contains("elastica")) {
    const Json& e = spec["elastica"];
    ElasticaSolution sol = solve_elastica(elastica_params(e), frame);
    LegendreCurve full = legendre_lift(sol.frame, frame.axes[2]);
    std::size_t stride = e.value("stride", std::size_t{1});
    if (stride <= 1) return full;
    LegendreCurve thin;
    thin.ambient_line = full.ambient_line;
    for (std::size_t i = 0; i < full.size(); i += stride) {
      thin.u.push_back(full.u[i]);
      thin.frames.push_back(full.frames[i]);
    }
    return thin;
  }
  throw Error(ErrorKind::config, "curve source must be file, circle or elastica");
}

EvolutionMap make_evolution(const Json& cfg) {
  ComplexCurve c = cfg["complex"].contains("file")
                       ? io::complex_from_json(io::read_json(cfg["complex"]["file"].get<std::string>()))
                       : io::complex_from_json(cfg["complex"]);
  return integrate_evolution(c, cfg.value("v0_index", std::size_t{0}));
}

AnalysisTolerances analysis_tolerances(const Json& cfg) {
  AnalysisTolerances t;
  if (!cfg.contains("tolerances")) return t;
  const Json& j = cfg["tolerances"];
  t.alignment = j.value("alignment", t.alignment);
  t.umbilic = j.value("umbilic", t.umbilic);
  t.coupling_floor = j.value("coupling_floor", t.coupling_floor);
  t.spherical = j.value("spherical", t.spherical);
  t.flag = j.value("flag", t.flag);
  t.signature = j.value("signature", t.signature);
  t.envelope = j.value("envelope", t.envelope);
  t.elastica = j.value("elastica", t.elastica);
  t.pde = j.value("pde", t.pde);
  return t;
}

void run_elastica(const Json& cfg) {
  const SpaceFormFrame frame = SpaceFormFrame::euclidean();
  ElasticaParams p = elastica_params(cfg);
  ElasticaSolution sol = solve_elastica(p, frame);
  LegendreCurve c = legendre_lift(sol.frame, frame.axes[2]);
  Json j = io::curve_to_json(c, sol, cfg.value("stride", std::size_t{1}));
  j["params"] = {{"chi", p.chi}, {"kappa", p.kappa}, {"mu", p.mu},         {"lambda", p.lambda},
                 {"k0", p.k0},   {"dk0", p.dk0},     {"length", p.length}, {"step", p.step}};
  io::write_json(cfg["out"].get<std::string>(), j);
}

void run_evolve(const Json& cfg) {
  LegendreCurve c = make_curve(cfg["curve"]);
  EvolutionMap a = make_evolution(cfg);
  SurfaceGrid g = evolve_surface(a, c, Exec::parallel, cfg.value("regularity_floor", kRegularityFloor));
  io::write_json(cfg["out"].get<std::string>(), io::surface_to_json(g, a.closure));
}

void run_analyze(const Json& cfg) {
  const std::string out = cfg["out"].get<std::string>();
  SurfaceGrid g = io::surface_from_json(io::read_json(cfg["surface"].get<std::string>()));
  AnalysisTolerances tol = analysis_tolerances(cfg);
  try {
    io::write_json(out, io::report_to_json(analyze_surface(g, SpaceFormFrame::euclidean(), Exec::parallel, tol)));
  } catch (const Error& e) {
    Json j;
    j["format"] = io::kFormat;
    j["kind"] = "report";
    j["subject"] = "surface";
    j["error"] = e.what();
    io::write_json(out, j);
    throw;
  }
}

void run_ribaucour(const Json& cfg) {
  const SpaceFormFrame frame = SpaceFormFrame::euclidean();
  const std::string prefix = cfg["out_prefix"].get<std::string>();
  LegendreCurve c = make_curve(cfg["curve"]);
  EvolutionMap a = make_evolution(cfg);
  const Json& ch = cfg["c_hat"];
  RibaucourPair pair;
  if (ch.contains("curve")) {
    pair = ribaucour_evolve(a, c, make_curve(ch["curve"]));
  } else {
    PseudoVector v;
    if (ch.contains("vector")) {
      v = io::vec_from_json(ch["vector"]);
    } else {
      auto p = ch.at("chart").get<std::vector<double>>();
      if (p.size() != CircleChart::dimension) throw Error(ErrorKind::config, "chart takes exactly 3 parameters");
      v = CircleChart::to_lightcone({p[0], p[1], p[2]}, a.l[a.v0_index], frame);
    }
    pair = ribaucour_evolve(a, c, v);
  }
  RibaucourTolerances tol;
  if (cfg.contains("tolerances")) {
    const Json& t = cfg["tolerances"];
    tol.incidence = t.value("incidence", tol.incidence);
    tol.margin = t.value("margin", tol.margin);
    tol.intersection = t.value("intersection", tol.intersection);
    tol.correspondence = t.value("correspondence", tol.correspondence);
  }
  RibaucourReport rep = verify_ribaucour(pair, Exec::parallel, tol);
  io::write_json(prefix + "_f.json", io::surface_to_json(pair.f, a.closure));
  io::write_json(prefix + "_f_hat.json", io::surface_to_json(pair.f_hat, a.closure));
  Json link;
  link["format"] = io::kFormat;
  link["kind"] = "ribaucour-link";
  link["f"] = prefix + "_f.json";
  link["f_hat"] = prefix + "_f_hat.json";
  Json s0 = Json::array();
  for (const auto& x : pair.s0) s0.push_back(io::vec_to_json(x));
  link["s0"] = s0;
  io::write_json(prefix + "_link.json", link);
  io::write_json(prefix + "_report.json", io::report_to_json(rep));
}

void run_export(const Json& cfg) {
  SurfaceGrid g = io::surface_from_json(io::read_json(cfg["surface"].get<std::string>()));
  std::string mesh = io::export_mesh(g, SpaceFormFrame::euclidean(), io::mesh_format(cfg["format"].get<std::string>()));
  io::write_atomic(cfg["out"].get<std::string>(), mesh);
}

int run(const std::string& command, const Json& cfg_in) {
  try {
    Json cfg = merge(defaults(command), cfg_in);
    validate(command, cfg);
    if (command == "elastica") run_elastica(cfg);
    else if (command == "evolve") run_evolve(cfg);
    else if (command == "analyze") run_analyze(cfg);
    else if (command == "ribaucour") run_ribaucour(cfg);
    else if (command == "export") run_export(cfg);
    return 0;
  } catch (const Error& e) {
    std::cerr << "lsf " << command << ": " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "lsf " << command << ": " << e.what() << "\n";
    return static_cast<int>(ErrorKind::config);
  }
}

}  // namespace lsf::pipeline
