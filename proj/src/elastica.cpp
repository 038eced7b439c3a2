#include "lsf/elastica.hpp"

#include <cmath>
#include <sstream>

namespace lsf {

void ElasticaParams::validate() const {
  if (!(step > 0)) throw Error(ErrorKind::config, "step must be positive");
  if (!(length >= step)) throw Error(ErrorKind::config, "length must be at least one step");
  if (std::abs(std::abs(chi) - 1.0) > 0) throw Error(ErrorKind::config, "chi must be +1 or -1");
}

std::size_t ElasticaParams::steps() const {
  return static_cast<std::size_t>(std::llround(length / step));
}

double first_integral(const ElasticaParams& p, double k, double dk) {
  return dk * dk + 0.25 * p.chi * k * k * k * k + (p.mu + p.kappa) * k * k + 2.0 * p.lambda * k;
}

namespace {

double curvature_accel(const ElasticaParams& p, double k) {
  return -0.5 * p.chi * k * k * k - (p.mu + p.kappa) * k - p.lambda;
}

}  // namespace

CurvatureProfile solve_curvature(const ElasticaParams& p) {
  p.validate();
  const std::size_t n = p.steps();
  const double h = p.step;
  CurvatureProfile out;
  out.s.resize(n + 1);
  out.k.resize(n + 1);
  out.dk.resize(n + 1);
  double k = p.k0, dk = p.dk0;
  out.s[0] = 0.0;
  out.k[0] = k;
  out.dk[0] = dk;
  for (std::size_t i = 0; i < n; ++i) {
    double k1 = dk, a1 = curvature_accel(p, k);
    double k2 = dk + 0.5 * h * a1, a2 = curvature_accel(p, k + 0.5 * h * k1);
    double k3 = dk + 0.5 * h * a2, a3 = curvature_accel(p, k + 0.5 * h * k2);
    double k4 = dk + h * a3, a4 = curvature_accel(p, k + h * k3);
    k += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    dk += h / 6.0 * (a1 + 2 * a2 + 2 * a3 + a4);
    if (!std::isfinite(k) || !std::isfinite(dk) || std::abs(k) > 1e150) {
      std::ostringstream msg;
      msg << "solution escaped at s=" << static_cast<double>(i + 1) * h;
      throw Error(ErrorKind::solver, msg.str());
    }
    out.s[i + 1] = static_cast<double>(i + 1) * h;
    out.k[i + 1] = k;
    out.dk[i + 1] = dk;
  }
  return out;
}

FrameInit default_initial_frame(const SpaceFormFrame& frame) {
  return {frame.o, lift_plane(frame, Vec3(0, 1, 0), 0.0), frame.axes[0]};
}

namespace {

struct State {
  PseudoVector f, v, t;
};

State rhs(const ElasticaParams& p, const SpaceFormFrame& frame, const State& x, double k) {
  return {x.v, -p.kappa * x.f + p.chi * k * x.t + frame.q - k * frame.p, -k * x.v};
}

State axpy(const State& x, double h, const State& d) {
  return {x.f + h * d.f, x.v + h * d.v, x.t + h * d.t};
}

using Constraints = Eigen::Matrix<double, 12, 1>;

Constraints constraint_values(const State& x, const SpaceFormFrame& fr) {
  Constraints c;
  c << inner(x.f, x.f), inner(x.f, fr.q) + 1.0, inner(x.f, fr.p), inner(x.t, x.t), inner(x.t, fr.p) + 1.0,
      inner(x.t, fr.q), inner(x.f, x.t), inner(x.v, x.v) - 1.0, inner(x.v, x.f), inner(x.v, x.t), inner(x.v, fr.q),
      inner(x.v, fr.p);
  return c;
}

// Minimal-norm Gauss-Newton correction onto the constraint variety.
State renormalize(const State& x0, const SpaceFormFrame& fr) {
  State x = x0;
  const Matrix6& g = metric();
  for (int it = 0; it < 3; ++it) {
    Constraints c = constraint_values(x, fr);
    if (c.cwiseAbs().maxCoeff() < 1e-15) break;
    Eigen::Matrix<double, 12, 18> j = Eigen::Matrix<double, 12, 18>::Zero();
    // blocks: f -> cols 0..5, v -> 6..11, t -> 12..17
    j.block<1, 6>(0, 0) = 2.0 * (g * x.f).transpose();
    j.block<1, 6>(1, 0) = (g * fr.q).transpose();
    j.block<1, 6>(2, 0) = (g * fr.p).transpose();
    j.block<1, 6>(3, 12) = 2.0 * (g * x.t).transpose();
    j.block<1, 6>(4, 12) = (g * fr.p).transpose();
    j.block<1, 6>(5, 12) = (g * fr.q).transpose();
    j.block<1, 6>(6, 0) = (g * x.t).transpose();
    j.block<1, 6>(6, 12) = (g * x.f).transpose();
    j.block<1, 6>(7, 6) = 2.0 * (g * x.v).transpose();
    j.block<1, 6>(8, 6) = (g * x.f).transpose();
    j.block<1, 6>(8, 0) = (g * x.v).transpose();
    j.block<1, 6>(9, 6) = (g * x.t).transpose();
    j.block<1, 6>(9, 12) = (g * x.v).transpose();
    j.block<1, 6>(10, 6) = (g * fr.q).transpose();
    j.block<1, 6>(11, 6) = (g * fr.p).transpose();
    Eigen::Matrix<double, 12, 12> jjt = j * j.transpose();
    Eigen::Matrix<double, 12, 1> y = jjt.completeOrthogonalDecomposition().solve(c);
    Eigen::Matrix<double, 18, 1> dz = j.transpose() * y;
    x.f -= dz.segment<6>(0);
    x.v -= dz.segment<6>(6);
    x.t -= dz.segment<6>(12);
  }
  return x;
}

double hermite(double k0, double d0, double k1, double d1, double h, double tau) {
  double t2 = tau * tau, t3 = t2 * tau;
  return (2 * t3 - 3 * t2 + 1) * k0 + (t3 - 2 * t2 + tau) * h * d0 + (-2 * t3 + 3 * t2) * k1 + (t3 - t2) * h * d1;
}

}  // namespace

CurveGeometry integrate_frame(const ElasticaParams& p, const CurvatureProfile& prof, const FrameInit& init,
                              const SpaceFormFrame& frame, int renormalize_every) {
  p.validate();
  if (p.chi != frame.chi || std::abs(p.kappa - frame.kappa) > 1e-12)
    throw Error(ErrorKind::config, "elastica parameters do not match the space form frame");
  State x{init.f0, init.v0, init.t0};
  if (constraint_values(x, frame).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorKind::solver, "initial frame violates incidence relations");
  const std::size_t n = prof.k.size();
  if (n < 2) throw Error(ErrorKind::solver, "curvature profile too short");
  const double h = prof.s[1] - prof.s[0];

  CurveGeometry g;
  g.u = prof.s;
  g.s = prof.s;
  g.speed.assign(n, 1.0);
  g.k = prof.k;
  g.dk = prof.dk;
  g.ds = h;
  g.f.resize(n);
  g.t.resize(n);
  g.tangent.resize(n);
  g.f[0] = x.f;
  g.t[0] = x.t;
  g.tangent[0] = x.v;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double ka = prof.k[i], kb = prof.k[i + 1];
    double km = hermite(ka, prof.dk[i], kb, prof.dk[i + 1], h, 0.5);
    State d1 = rhs(p, frame, x, ka);
    State d2 = rhs(p, frame, axpy(x, 0.5 * h, d1), km);
    State d3 = rhs(p, frame, axpy(x, 0.5 * h, d2), km);
    State d4 = rhs(p, frame, axpy(x, h, d3), kb);
    x.f += h / 6.0 * (d1.f + 2 * d2.f + 2 * d3.f + d4.f);
    x.v += h / 6.0 * (d1.v + 2 * d2.v + 2 * d3.v + d4.v);
    x.t += h / 6.0 * (d1.t + 2 * d2.t + 2 * d3.t + d4.t);
    if (renormalize_every > 0 && (i + 1) % static_cast<std::size_t>(renormalize_every) == 0)
      x = renormalize(x, frame);
    g.f[i + 1] = x.f;
    g.t[i + 1] = x.t;
    g.tangent[i + 1] = x.v;
  }
  return g;
}

LegendreCurve legendre_lift(const CurveGeometry& g, const PseudoVector& ambient_line) {
  LegendreCurve c;
  c.u = g.u;
  c.closed = g.closed;
  c.ambient_line = ambient_line;
  c.frames.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double scale = ambient_line.norm() * std::max(g.f[i].norm(), g.t[i].norm());
    if (std::abs(inner(g.f[i], ambient_line)) > 1e-9 * scale || std::abs(inner(g.t[i], ambient_line)) > 1e-9 * scale)
      throw Error(ErrorKind::solver, "curve is not orthogonal to the ambient line");
    c.frames[i] = {g.f[i], g.t[i]};
  }
  return c;
}

ElasticaSolution solve_elastica(const ElasticaParams& p, const SpaceFormFrame& frame, const FrameInit& init) {
  ElasticaSolution sol;
  sol.profile = solve_curvature(p);
  sol.frame = integrate_frame(p, sol.profile, init, frame);
  sol.energy.resize(sol.profile.k.size());
  for (std::size_t i = 0; i < sol.energy.size(); ++i)
    sol.energy[i] = first_integral(p, sol.profile.k[i], sol.profile.dk[i]);
  double e0 = sol.energy[0];
  for (double e : sol.energy) sol.energy_drift = std::max(sol.energy_drift, std::abs(e - e0) / std::max(1.0, std::abs(e0)));
  return sol;
}

ElasticaSolution solve_elastica(const ElasticaParams& p, const SpaceFormFrame& frame) {
  return solve_elastica(p, frame, default_initial_frame(frame));
}

}  // namespace lsf
