#include "lsf/parallel.hpp"
#include "lsf/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

using lsf::pipeline::Json;

namespace {

template <class T>
void put(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

struct CurveFlags {
  std::optional<std::string> file;
  std::vector<double> circle;
  std::optional<std::size_t> samples;
  std::optional<double> warp;

  void add(CLI::App* app) {
    app->add_option("--curve", file, "curve file");
    app->add_option("--circle", circle, "circle center x, center y, radius")->expected(3);
    app->add_option("--nu", samples, "circle samples");
    app->add_option("--warp", warp, "circle reparametrization amplitude");
  }
  void apply(Json& cfg) const {
    if (file) cfg["curve"] = {{"file", *file}};
    if (!circle.empty() || samples || warp) {
      Json c = Json::object();
      if (!circle.empty()) {
        c["center"] = {circle[0], circle[1]};
        c["radius"] = circle[2];
      }
      put(c, "samples", samples);
      put(c, "warp", warp);
      cfg["curve"] = {{"circle", c}};
    }
  }
};

struct ComplexFlags {
  std::optional<std::string> file, generator;
  std::optional<std::size_t> samples, v0;
  std::optional<double> omega, v_end;

  void add(CLI::App* app) {
    app->add_option("--complex", file, "complex curve file");
    app->add_option("--generator", generator, "rotating-plane | pencil | rotating-sphere-center | envelope | constant");
    app->add_option("--nv", samples, "complex curve samples");
    app->add_option("--omega", omega, "rotating-plane angular rate");
    app->add_option("--v-end", v_end, "end of the v range");
    app->add_option("--v0-index", v0, "base point index");
  }
  void apply(Json& cfg) const {
    Json c = Json::object();
    if (file) c["file"] = *file;
    put(c, "generator", generator);
    put(c, "samples", samples);
    put(c, "omega", omega);
    put(c, "v_end", v_end);
    if (!c.empty()) cfg["complex"] = c;
    put(cfg, "v0_index", v0);
  }
};

Json load_config(const std::optional<std::string>& path) {
  if (!path) return Json::object();
  return lsf::io::read_json(*path);
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("LSF_THREADS")) lsf::set_thread_limit(std::atoi(t));

  CLI::App app{"Legendre surfaces with spherical curvature lines"};
  app.require_subcommand(1);
  std::optional<std::string> config;
  Json flags = Json::object();

  auto* el = app.add_subcommand("elastica", "solve the constrained elastica and write a curve file");
  std::optional<double> chi, kappa, mu, lambda, k0, dk0, length, step;
  std::optional<std::size_t> stride;
  std::optional<std::string> out;
  el->add_option("--chi", chi);
  el->add_option("--kappa", kappa);
  el->add_option("--mu", mu);
  el->add_option("--lambda", lambda);
  el->add_option("--k0", k0);
  el->add_option("--dk0", dk0);
  el->add_option("--length", length);
  el->add_option("--step", step);
  el->add_option("--stride", stride, "keep every n-th sample");
  el->add_option("--out", out);
  el->add_option("--config", config);

  auto* ev = app.add_subcommand("evolve", "evolve a curve along a complex curve and write a surface file");
  CurveFlags ev_curve;
  ComplexFlags ev_complex;
  ev_curve.add(ev);
  ev_complex.add(ev);
  ev->add_option("--out", out);
  ev->add_option("--config", config);

  auto* an = app.add_subcommand("analyze", "classify a surface file and write a report");
  std::optional<std::string> surface;
  an->add_option("--surface", surface);
  an->add_option("--out", out);
  an->add_option("--config", config);

  auto* rb = app.add_subcommand("ribaucour", "build and verify a channel Ribaucour pair");
  CurveFlags rb_curve;
  ComplexFlags rb_complex;
  rb_curve.add(rb);
  rb_complex.add(rb);
  std::vector<double> chart;
  std::optional<std::string> prefix, partner;
  rb->add_option("--c-hat", chart, "chart coordinates: center x, center y, signed radius")->expected(3);
  rb->add_option("--c-hat-curve", partner, "partner curve file");
  rb->add_option("--out-prefix", prefix);
  rb->add_option("--config", config);

  auto* ex = app.add_subcommand("export", "project a surface file to a mesh");
  std::optional<std::string> format;
  ex->add_option("--surface", surface);
  ex->add_option("--format", format, "obj | ply");
  ex->add_option("--out", out);
  ex->add_option("--config", config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::string command = app.get_subcommands().front()->get_name();
  put(flags, "out", out);
  if (command == "elastica") {
    put(flags, "chi", chi);
    put(flags, "kappa", kappa);
    put(flags, "mu", mu);
    put(flags, "lambda", lambda);
    put(flags, "k0", k0);
    put(flags, "dk0", dk0);
    put(flags, "length", length);
    put(flags, "step", step);
    put(flags, "stride", stride);
  } else if (command == "evolve") {
    ev_curve.apply(flags);
    ev_complex.apply(flags);
  } else if (command == "analyze" || command == "export") {
    put(flags, "surface", surface);
    put(flags, "format", format);
  } else if (command == "ribaucour") {
    rb_curve.apply(flags);
    rb_complex.apply(flags);
    if (!chart.empty()) flags["c_hat"] = {{"chart", chart}};
    if (partner) flags["c_hat"] = {{"curve", {{"file", *partner}}}};
    put(flags, "out_prefix", prefix);
  }
  Json cfg;
  try {
    cfg = lsf::pipeline::merge(flags, load_config(config));
  } catch (const lsf::Error& e) {
    std::cerr << "lsf: " << e.what() << "\n";
    return 1;
  }
  return lsf::pipeline::run(command, cfg);
}
