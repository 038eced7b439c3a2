#include "lsf/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lsf::io {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

bool is_scalar_array(const Json& j) {
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

void dump_value(const Json& j, std::ostringstream& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string inner_pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << inner_pad << Json(it.key()).dump() << ": ";
        dump_value(it.value(), out, depth + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      if (is_scalar_array(j)) {
        out << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ", ";
          dump_value(j[i], out, depth + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << inner_pad;
        dump_value(j[i], out, depth + 1);
      }
      out << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::ostringstream out;
  dump_value(j, out, 0);
  out << "\n";
  return out.str();
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::config, "invalid document " + path + ": " + e.what());
  }
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::config, "cannot write " + path);
    out << content;
    if (!out) throw Error(ErrorKind::config, "cannot write " + path);
  }
  std::filesystem::rename(tmp, path);
}

void write_json(const std::string& path, const Json& j) { write_atomic(path, dump(j)); }

Json vec_to_json(const PseudoVector& x) {
  Json a = Json::array();
  for (int i = 0; i < 6; ++i) a.push_back(x(i));
  return a;
}

PseudoVector vec_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 6) throw Error(ErrorKind::config, "expected a 6-component vector");
  PseudoVector x;
  for (int i = 0; i < 6; ++i) x(i) = j[static_cast<std::size_t>(i)].get<double>();
  return x;
}

namespace {

void check_header(const Json& j, const std::string& kind) {
  if (!j.is_object() || j.value("format", "") != kFormat)
    throw Error(ErrorKind::config, "document is not in lsf-1 format");
  if (j.value("kind", "") != kind) throw Error(ErrorKind::config, "expected a " + kind + " document");
}

Json header(const std::string& kind) {
  Json j;
  j["format"] = kFormat;
  j["kind"] = kind;
  return j;
}

Json frame_to_json(const ContactFrame& f) {
  Json a = Json::array();
  for (int i = 0; i < 6; ++i) a.push_back(f.a(i));
  for (int i = 0; i < 6; ++i) a.push_back(f.b(i));
  return a;
}

ContactFrame frame_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 12) throw Error(ErrorKind::config, "expected 12 floats per frame");
  ContactFrame f;
  for (std::size_t i = 0; i < 6; ++i) {
    f.a(static_cast<int>(i)) = j[i].get<double>();
    f.b(static_cast<int>(i)) = j[i + 6].get<double>();
  }
  return f;
}

std::vector<double> doubles(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::config, "expected an array of numbers");
  return j.get<std::vector<double>>();
}

Vec3 vec3(const Json& j) {
  auto v = doubles(j);
  if (v.size() != 3) throw Error(ErrorKind::config, "expected a 3-vector");
  return {v[0], v[1], v[2]};
}

}  // namespace

Json curve_to_json(const LegendreCurve& c) {
  Json j = header("curve");
  j["closed"] = c.closed;
  j["ambient_line"] = vec_to_json(c.ambient_line);
  j["u"] = c.u;
  Json frames = Json::array();
  for (const auto& f : c.frames) frames.push_back(frame_to_json(f));
  j["frames"] = frames;
  return j;
}

Json curve_to_json(const LegendreCurve& c, const ElasticaSolution& sol, std::size_t stride) {
  if (stride == 0) stride = 1;
  LegendreCurve thin;
  thin.closed = c.closed;
  thin.ambient_line = c.ambient_line;
  std::vector<double> s, k, dk, e;
  for (std::size_t i = 0; i < c.size(); i += stride) {
    thin.u.push_back(c.u[i]);
    thin.frames.push_back(c.frames[i]);
    s.push_back(sol.profile.s[i]);
    k.push_back(sol.profile.k[i]);
    dk.push_back(sol.profile.dk[i]);
    e.push_back(sol.energy[i]);
  }
  Json j = curve_to_json(thin);
  j["s"] = s;
  j["k"] = k;
  j["dk"] = dk;
  j["energy"] = e;
  j["energy_drift"] = sol.energy_drift;
  return j;
}

LegendreCurve curve_from_json(const Json& j) {
  check_header(j, "curve");
  LegendreCurve c;
  c.closed = j.at("closed").get<bool>();
  c.ambient_line = vec_from_json(j.at("ambient_line"));
  c.u = doubles(j.at("u"));
  for (const auto& f : j.at("frames")) c.frames.push_back(frame_from_json(f));
  if (c.u.size() != c.frames.size()) throw Error(ErrorKind::config, "curve grid does not match frames");
  return c;
}

Json complex_to_json(const ComplexCurve& c) {
  Json j = header("complex");
  j["closed"] = c.closed;
  j["generator"] = c.generator.empty() ? "samples" : c.generator;
  j["v"] = c.v;
  Json l = Json::array();
  for (const auto& x : c.l) l.push_back(vec_to_json(x));
  j["l"] = l;
  return j;
}

ComplexCurve complex_from_json(const Json& j, const SpaceFormFrame& frame) {
  if (j.contains("format")) check_header(j, "complex");
  const std::string gen = j.value("generator", std::string("samples"));
  const bool closed = j.value("closed", false);
  if (gen == "samples" || (j.contains("l") && j.contains("v"))) {
    std::vector<PseudoVector> l;
    for (const auto& x : j.at("l")) l.push_back(vec_from_json(x));
    return make_complex_curve(doubles(j.at("v")), std::move(l), closed);
  }
  const double v0 = j.value("v_start", 0.0);
  const double v1 = j.value("v_end", 2.0 * M_PI);
  const std::size_t n = j.value("samples", std::size_t{200});
  std::vector<double> v = uniform_grid(v0, v1, n, closed);
  if (gen == "rotating-plane") {
    PseudoVector a = j.contains("a") ? vec_from_json(j["a"]) : basis(3);
    PseudoVector b = j.contains("b") ? vec_from_json(j["b"]) : PseudoVector(-basis(2));
    return rotating_plane(a, b, j.value("omega", 1.0), std::move(v), closed);
  }
  if (gen == "pencil") return pencil(vec_from_json(j.at("l0")), vec_from_json(j.at("m0")), std::move(v), closed);
  if (gen == "rotating-sphere-center")
    return rotating_sphere_center(frame, vec3(j.at("c0")), vec3(j.at("a")), vec3(j.at("b")), j.at("radius").get<double>(),
                                  std::move(v), closed);
  if (gen == "envelope")
    return envelope_complex(vec_from_json(j.at("l0")), vec_from_json(j.at("w1")), vec_from_json(j.at("w2")),
                            vec_from_json(j.at("w3")), j.value("alpha", 0.0), j.value("beta", 0.0), std::move(v), closed);
  if (gen == "constant") {
    PseudoVector l0 = j.contains("l0") ? vec_from_json(j["l0"]) : basis(3);
    return make_complex_curve(std::move(v), std::vector<PseudoVector>(n, l0), closed);
  }
  throw Error(ErrorKind::config, "unknown complex generator " + gen);
}

Json surface_to_json(const SurfaceGrid& g, double closure) {
  Json j = header("surface");
  j["wrap_u"] = g.wrap_u;
  j["wrap_v"] = g.wrap_v;
  j["v0_index"] = g.v0_index;
  j["closure"] = closure;
  j["base_line"] = vec_to_json(g.base_line);
  j["u"] = g.u;
  j["v"] = g.v;
  Json frames = Json::array();
  for (const auto& f : g.frames) frames.push_back(frame_to_json(f));
  j["frames"] = frames;
  j["regularity"] = g.regularity;
  return j;
}

SurfaceGrid surface_from_json(const Json& j) {
  check_header(j, "surface");
  SurfaceGrid g;
  g.wrap_u = j.at("wrap_u").get<bool>();
  g.wrap_v = j.at("wrap_v").get<bool>();
  g.v0_index = j.value("v0_index", std::size_t{0});
  if (j.contains("base_line")) g.base_line = vec_from_json(j["base_line"]);
  g.u = doubles(j.at("u"));
  g.v = doubles(j.at("v"));
  for (const auto& f : j.at("frames")) g.frames.push_back(frame_from_json(f));
  if (g.frames.size() != g.u.size() * g.v.size()) throw Error(ErrorKind::config, "surface grid does not match frames");
  if (j.contains("regularity")) g.regularity = doubles(j["regularity"]);
  else g.regularity.assign(g.frames.size(), 1.0);
  if (g.regularity.size() != g.frames.size()) throw Error(ErrorKind::config, "regularity channel has wrong size");
  g.valid.resize(g.frames.size());
  for (std::size_t k = 0; k < g.frames.size(); ++k) g.valid[k] = g.regularity[k] > kRegularityFloor ? 1 : 0;
  if (g.v0_index >= g.v.size()) throw Error(ErrorKind::config, "base index outside the grid");
  return g;
}

namespace {

Json signature_json(const Signature& s) { return Json::array({s.positive, s.negative, s.null}); }

}  // namespace

Json report_to_json(const SurfaceReport& r) {
  Json j = header("report");
  j["subject"] = "surface";
  Json fams = Json::array();
  for (int f = 0; f < 2; ++f) {
    const FamilyReport& x = r.family[f];
    Json o;
    o["family"] = f + 1;
    o["spherical_residual_max"] = x.spherical_max;
    o["spherical_residual_median"] = x.spherical_median;
    o["spherical"] = x.spherical;
    o["planar_residual"] = x.planar_residual;
    o["orthogonal_residual"] = x.orthogonal_residual;
    o["planar"] = x.planar;
    o["orthogonal"] = x.orthogonal;
    o["monge"] = x.monge;
    o["channel"] = x.channel;
    o["osculating_bundle_signature"] = signature_json(x.h_signature);
    o["osculating_bundle_consistent"] = x.h_consistent;
    fams.push_back(o);
  }
  j["families"] = fams;
  j["blaschke_case"] = r.blaschke_case;
  j["special_lifts"] = r.special_lifts;
  j["lift_residual_max"] = r.lift_residual_max;
  j["pde_residual_beta"] = r.pde_residual_beta;
  j["pde_residual_gamma"] = r.pde_residual_gamma;
  j["two_family_lie_applicable"] = r.two_family_lie_applicable;
  Json one;
  one["evaluated"] = r.one_family.evaluated;
  one["envelope_dim"] = r.one_family.envelope_dim;
  one["envelope_signature"] = signature_json(r.one_family.envelope_signature);
  one["envelope_residual"] = r.one_family.envelope_residual;
  one["elastica_residual"] = r.one_family.elastica_residual;
  one["mu"] = r.one_family.mu;
  one["lambda"] = r.one_family.lambda;
  one["circular"] = r.one_family.circular;
  one["lie_applicable"] = r.one_family.lie_applicable;
  one["note"] = r.one_family.note;
  j["one_family_lie_applicability"] = one;
  j["legendre_residual"] = r.legendre_residual;
  j["curvature_sphere_residual"] = r.alignment;
  j["umbilic_cells"] = r.umbilic_cells;
  j["invalid_cells"] = r.invalid_cells;
  const AnalysisTolerances& t = r.tolerances;
  j["tolerances"] = {{"alignment", t.alignment}, {"umbilic", t.umbilic},   {"coupling_floor", t.coupling_floor},
                     {"spherical", t.spherical}, {"flag", t.flag},         {"signature", t.signature},
                     {"envelope", t.envelope},   {"elastica", t.elastica}, {"pde", t.pde}};
  return j;
}

Json report_to_json(const RibaucourReport& r) {
  Json j = header("report");
  j["subject"] = "ribaucour";
  j["incidence_residual"] = r.incidence;
  j["rank1_margin"] = r.rank1_margin;
  j["first_principal_angle"] = r.first_angle;
  j["correspondence_f"] = r.correspondence_f;
  j["correspondence_f_hat"] = r.correspondence_f_hat;
  j["intersection_empty"] = r.intersection_empty;
  j["proper_pair"] = r.proper_pair;
  j["curvature_lines_correspond"] = r.curvature_lines_correspond;
  j["ribaucour"] = r.ribaucour;
  j["note"] = r.note;
  const RibaucourTolerances& t = r.tolerances;
  j["tolerances"] = {{"incidence", t.incidence},
                     {"margin", t.margin},
                     {"intersection", t.intersection},
                     {"correspondence", t.correspondence}};
  return j;
}

MeshFormat mesh_format(const std::string& name) {
  if (name == "obj") return MeshFormat::obj;
  if (name == "ply") return MeshFormat::ply;
  throw Error(ErrorKind::config, "unknown mesh format " + name);
}

std::string export_mesh(const SurfaceGrid& g, const SpaceFormFrame& frame, MeshFormat format) {
  const std::size_t nu = g.nu(), nv = g.nv(), n = nu * nv;
  std::vector<Vec3> pts(n, Vec3::Zero());
  std::vector<unsigned char> ok(n, 0);
  std::size_t good = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const ContactFrame& f = g.frames[k];
    // point sphere of the contact element: the combination orthogonal to p
    PseudoVector y = inner(f.b, frame.p) * f.a - inner(f.a, frame.p) * f.b;
    if (y.norm() < 1e-14 * std::max(f.a.norm(), f.b.norm())) y = f.a;
    try {
      pts[k] = project_point(frame, y);
      ok[k] = 1;
      ++good;
    } catch (const Error&) {
    }
  }
  if (good == 0) throw Error(ErrorKind::analysis, "no projectable vertices");
  std::vector<std::array<std::size_t, 4>> faces;
  const std::size_t iu = g.wrap_u ? nu : nu - 1, iv = g.wrap_v ? nv : nv - 1;
  for (std::size_t i = 0; i < iu; ++i)
    for (std::size_t j = 0; j < iv; ++j) {
      std::size_t i1 = (i + 1) % nu, j1 = (j + 1) % nv;
      std::array<std::size_t, 4> q{i * nv + j, i1 * nv + j, i1 * nv + j1, i * nv + j1};
      if (ok[q[0]] && ok[q[1]] && ok[q[2]] && ok[q[3]]) faces.push_back(q);
    }
  std::ostringstream out;
  if (format == MeshFormat::obj) {
    out << "# lsf surface mesh " << nu << " x " << nv << "\n";
    for (std::size_t k = 0; k < n; ++k) {
      if (!ok[k]) out << "# unprojectable vertex " << k + 1 << "\n";
      out << "v " << format_double(pts[k](0)) << " " << format_double(pts[k](1)) << " " << format_double(pts[k](2))
          << "\n";
    }
    for (const auto& q : faces) out << "f " << q[0] + 1 << " " << q[1] + 1 << " " << q[2] + 1 << " " << q[3] + 1 << "\n";
  } else {
    out << "ply\nformat ascii 1.0\ncomment lsf surface mesh\n";
    for (std::size_t k = 0; k < n; ++k)
      if (!ok[k]) out << "comment unprojectable vertex " << k << "\n";
    out << "element vertex " << n << "\nproperty double x\nproperty double y\nproperty double z\n";
    out << "element face " << faces.size() << "\nproperty list uchar int vertex_indices\nend_header\n";
    for (std::size_t k = 0; k < n; ++k)
      out << format_double(pts[k](0)) << " " << format_double(pts[k](1)) << " " << format_double(pts[k](2)) << "\n";
    for (const auto& q : faces) out << "4 " << q[0] << " " << q[1] << " " << q[2] << " " << q[3] << "\n";
  }
  return out.str();
}

}  // namespace lsf::io
