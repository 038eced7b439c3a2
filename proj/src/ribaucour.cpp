#include "lsf/ribaucour.hpp"

#include "lsf/parallel.hpp"

#include <cmath>
#include <limits>

namespace lsf {

Matrix6 slice_map(const PseudoVector& l0, const SpaceFormFrame& frame) {
  const PseudoVector& e3 = frame.axes[2];
  if ((l0 - e3).norm() < 1e-14) return Matrix6::Identity();
  PseudoVector w = e3 - l0;
  if (std::abs(inner(w, w)) > 1e-10) return reflection(w);
  return reflection(e3 + l0);
}

PseudoVector CircleChart::to_lightcone(const std::array<double, 3>& params, const PseudoVector& l0,
                                       const SpaceFormFrame& frame) {
  if (std::abs(inner(l0, l0) - 1.0) > 1e-9) throw Error(ErrorKind::config, "base complex must be unit spacelike");
  Vec3 c(params[0], params[1], 0.0);
  PseudoVector y = params[2] == 0.0 ? lift_point(frame, c) : lift_sphere(frame, {c, params[2]});
  return slice_map(l0, frame) * y;
}

LegendreCurve channel_partner_curve(const LegendreCurve& c, const PseudoVector& c_hat, const PseudoVector& l0,
                                    std::vector<PseudoVector>* c0_out) {
  const double cn = c_hat.norm();
  if (std::abs(inner(c_hat, c_hat)) > 1e-10 * cn * cn || std::abs(inner(c_hat, l0)) > 1e-10 * cn * l0.norm())
    throw Error(ErrorKind::ribaucour, "complex membership violated");
  LegendreCurve out;
  out.u = c.u;
  out.closed = c.closed;
  out.ambient_line = c.ambient_line;
  out.frames.resize(c.size());
  std::vector<PseudoVector> c0(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const ContactFrame& f = c.frames[i];
    double pa = inner(f.a, c_hat), pb = inner(f.b, c_hat);
    double scale = std::max(f.a.norm(), f.b.norm()) * cn;
    if (std::max(std::abs(pa), std::abs(pb)) <= 1e-10 * scale)
      throw Error(ErrorKind::ribaucour, "tangential choice: transform degenerates");
    PseudoVector x = pb * f.a - pa * f.b;
    x /= x.norm();
    if (i == 0) {
      for (int k = 0; k < 6; ++k)
        if (std::abs(x(k)) > 1e-12) {
          if (x(k) < 0) x = -x;
          break;
        }
    } else if (x.dot(c0[i - 1]) < 0) {
      x = -x;
    }
    c0[i] = x;
    out.frames[i] = {c_hat, x};
  }
  if (c0_out) *c0_out = c0;
  return out;
}

namespace {

std::vector<PseudoVector> transport(const EvolutionMap& a, const std::vector<PseudoVector>& c0, Exec exec) {
  const std::size_t nu = c0.size(), nv = a.size();
  std::vector<Matrix6> inv(nv);
  for (std::size_t j = 0; j < nv; ++j) inv[j] = a.inverse(j);
  std::vector<PseudoVector> s0(nu * nv);
  for_each_index(nu * nv, exec, [&](std::size_t k) { s0[k] = inv[k % nv] * c0[k / nv]; });
  return s0;
}

}  // namespace

RibaucourPair ribaucour_evolve(const EvolutionMap& a, const LegendreCurve& c, const PseudoVector& c_hat, Exec exec) {
  RibaucourPair pair;
  pair.c_hat = channel_partner_curve(c, c_hat, a.l[a.v0_index], &pair.c0);
  pair.f = evolve_surface(a, c, exec);
  pair.f_hat = evolve_surface(a, pair.c_hat, exec);
  pair.s0 = transport(a, pair.c0, exec);
  return pair;
}

RibaucourPair ribaucour_evolve(const EvolutionMap& a, const LegendreCurve& c, const LegendreCurve& c_hat, Exec exec) {
  if (c.size() != c_hat.size()) throw Error(ErrorKind::ribaucour, "curves on different grids");
  RibaucourPair pair;
  pair.c_hat = c_hat;
  pair.c0.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    Eigen::Matrix<double, 6, 2> p, q;
    p << c.frames[i].a, c.frames[i].b;
    q << c_hat.frames[i].a, c_hat.frames[i].b;
    Eigen::Matrix<double, 6, 4> m;
    m << p, -q;
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 4>> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double top = sv(0);
    if (sv(2) <= 1e-9 * top) throw Error(ErrorKind::ribaucour, "curves coincide");
    if (sv(3) > 1e-9 * top) throw Error(ErrorKind::ribaucour, "curves do not intersect");
    Eigen::Vector4d k = svd.matrixV().col(3);
    PseudoVector x = p * k.head<2>();
    x /= x.norm();
    if (i > 0 && x.dot(pair.c0[i - 1]) < 0) x = -x;
    pair.c0[i] = x;
  }
  pair.f = evolve_surface(a, c, exec);
  pair.f_hat = evolve_surface(a, c_hat, exec);
  pair.s0 = transport(a, pair.c0, exec);
  return pair;
}

namespace {

Eigen::Matrix<double, 6, 2> orthonormal(const ContactFrame& f) {
  Eigen::Matrix<double, 6, 2> b;
  b << f.a, f.b;
  return b.householderQr().householderQ() * Eigen::Matrix<double, 6, 2>::Identity();
}

double correspondence(const SurfaceGrid& g, Exec exec) {
  AnalysisTolerances loose;
  loose.alignment = std::numeric_limits<double>::infinity();
  return curvature_sphere_fields(g, exec, loose).alignment;
}

}  // namespace

RibaucourReport verify_ribaucour(const RibaucourPair& pair, Exec exec, const RibaucourTolerances& tol) {
  RibaucourReport r;
  r.tolerances = tol;
  const SurfaceGrid& f = pair.f;
  const SurfaceGrid& fh = pair.f_hat;
  if (f.frames.size() != fh.frames.size()) throw Error(ErrorKind::ribaucour, "surfaces on different grids");
  const std::size_t n = f.frames.size();
  std::vector<double> inc(n, 0.0), first(n, 0.0), second(n, 0.0);
  for_each_index(n, exec, [&](std::size_t k) {
    auto p = orthonormal(f.frames[k]), q = orthonormal(fh.frames[k]);
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(p.transpose() * q, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    first[k] = std::acos(std::min(1.0, sv(0)));
    second[k] = std::acos(std::min(1.0, sv(1)));
    PseudoVector s = pair.s0.empty() ? PseudoVector(p * svd.matrixU().col(0)) : PseudoVector(pair.s0[k].normalized());
    inc[k] = std::max((s - p * (p.transpose() * s)).norm(), (s - q * (q.transpose() * s)).norm());
  });
  r.rank1_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    if (!f.valid[k] || !fh.valid[k]) continue;
    r.incidence = std::max(r.incidence, inc[k]);
    r.first_angle = std::max(r.first_angle, first[k]);
    r.rank1_margin = std::min(r.rank1_margin, second[k]);
  }
  if (!std::isfinite(r.rank1_margin)) r.rank1_margin = 0.0;
  r.intersection_empty = r.first_angle > tol.intersection;
  r.proper_pair = !r.intersection_empty && r.rank1_margin >= tol.margin;
  r.correspondence_f = correspondence(f, exec);
  r.correspondence_f_hat = correspondence(fh, exec);
  r.curvature_lines_correspond = std::max(r.correspondence_f, r.correspondence_f_hat) <= tol.correspondence;
  r.ribaucour = r.proper_pair && r.incidence <= tol.incidence && r.curvature_lines_correspond;
  if (r.intersection_empty) r.note = "intersection empty";
  else if (r.rank1_margin < tol.margin) r.note = "not a proper pair";
  else if (!r.curvature_lines_correspond) r.note = "curvature lines do not correspond";
  else r.note = "ribaucour pair";
  return r;
}

}  // namespace lsf
