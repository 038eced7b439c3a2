#include "lsf/evolution.hpp"

#include "lsf/parallel.hpp"

#include <cmath>

namespace lsf {

std::vector<double> uniform_grid(double start, double end, std::size_t n, bool closed) {
  if (n < 2) throw Error(ErrorKind::config, "grid needs at least two samples");
  std::vector<double> g(n);
  double h = (end - start) / static_cast<double>(closed ? n : n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = start + h * static_cast<double>(i);
  return g;
}

namespace {

int leading_sign(const PseudoVector& x) {
  for (int i = 0; i < 6; ++i)
    if (std::abs(x(i)) > 1e-14 * x.norm()) return x(i) > 0 ? 1 : -1;
  return 1;
}

PseudoVector unit_spacelike(const PseudoVector& x) {
  double n = inner(x, x);
  if (!(n > 0)) throw Error(ErrorKind::evolution, "complex curve is not spacelike");
  return x / std::sqrt(n);
}

}  // namespace

ComplexCurve make_complex_curve(std::vector<double> v, std::vector<PseudoVector> l, bool closed) {
  if (v.size() != l.size() || v.size() < 4) throw Error(ErrorKind::config, "complex curve needs at least 4 samples");
  ComplexCurve c;
  c.v = std::move(v);
  c.closed = closed;
  c.l.resize(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) c.l[i] = unit_spacelike(l[i]);
  if (leading_sign(c.l[0]) < 0) c.l[0] = -c.l[0];
  for (std::size_t i = 1; i < c.l.size(); ++i)
    if (inner(c.l[i], c.l[i - 1]) < 0) c.l[i] = -c.l[i];
  return c;
}

ComplexCurve make_complex_curve(std::vector<double> v, const ComplexFunction& fn, bool closed, std::string generator) {
  if (v.size() < 4) throw Error(ErrorKind::config, "complex curve needs at least 4 samples");
  ComplexCurve c;
  c.v = std::move(v);
  c.closed = closed;
  c.generator = std::move(generator);
  PseudoVector l0, d0;
  fn(c.v[0], l0, d0);
  double sign = leading_sign(l0);
  c.analytic = [fn, sign](double s, PseudoVector& l, PseudoVector& dl) {
    fn(s, l, dl);
    l *= sign;
    dl *= sign;
  };
  c.l.resize(c.v.size());
  for (std::size_t i = 0; i < c.v.size(); ++i) {
    PseudoVector d;
    c.analytic(c.v[i], c.l[i], d);
    if (std::abs(inner(c.l[i], c.l[i]) - 1.0) > 1e-10) throw Error(ErrorKind::evolution, "non-unit section");
  }
  return c;
}

ComplexCurve rotating_plane(const PseudoVector& a, const PseudoVector& b, double omega, std::vector<double> v,
                            bool closed) {
  if (std::abs(inner(a, a) - 1) > 1e-12 || std::abs(inner(b, b) - 1) > 1e-12 || std::abs(inner(a, b)) > 1e-12)
    throw Error(ErrorKind::config, "rotating plane needs orthonormal spacelike vectors");
  return make_complex_curve(
      std::move(v),
      [a, b, omega](double s, PseudoVector& l, PseudoVector& dl) {
        l = std::cos(omega * s) * a + std::sin(omega * s) * b;
        dl = omega * (-std::sin(omega * s) * a + std::cos(omega * s) * b);
      },
      closed, "rotating-plane");
}

ComplexCurve pencil(const PseudoVector& l0, const PseudoVector& m0, std::vector<double> v, bool closed) {
  if (std::abs(inner(l0, l0) - 1) > 1e-12 || std::abs(inner(l0, m0)) > 1e-12)
    throw Error(ErrorKind::config, "pencil needs unit l0 orthogonal to m0");
  double e = inner(m0, m0);
  return make_complex_curve(
      std::move(v),
      [l0, m0, e](double s, PseudoVector& l, PseudoVector& dl) {
        if (std::abs(e) < 1e-14) {
          l = l0 + s * m0;
          dl = m0;
        } else if (e > 0) {
          double w = std::sqrt(e);
          l = std::cos(w * s) * l0 + std::sin(w * s) / w * m0;
          dl = -w * std::sin(w * s) * l0 + std::cos(w * s) * m0;
        } else {
          double w = std::sqrt(-e);
          l = std::cosh(w * s) * l0 + std::sinh(w * s) / w * m0;
          dl = w * std::sinh(w * s) * l0 + std::cosh(w * s) * m0;
        }
      },
      closed, "pencil");
}

ComplexCurve rotating_sphere_center(const SpaceFormFrame& frame, const Vec3& c0, const Vec3& a, const Vec3& b,
                                    double radius, std::vector<double> v, bool closed) {
  if (!(radius > 0)) throw Error(ErrorKind::config, "sphere radius must be positive");
  if (!frame.is_euclidean()) throw Error(ErrorKind::config, "unsupported frame");
  return make_complex_curve(
      std::move(v),
      [frame, c0, a, b, radius](double s, PseudoVector& l, PseudoVector& dl) {
        Vec3 c = c0 + std::cos(s) * a + std::sin(s) * b;
        Vec3 dc = -std::sin(s) * a + std::cos(s) * b;
        PseudoVector pc = c(0) * frame.axes[0] + c(1) * frame.axes[1] + c(2) * frame.axes[2];
        PseudoVector pdc = dc(0) * frame.axes[0] + dc(1) * frame.axes[1] + dc(2) * frame.axes[2];
        l = (frame.o + pc + 0.5 * (c.squaredNorm() - radius * radius) * frame.q) / radius;
        dl = (pdc + c.dot(dc) * frame.q) / radius;
      },
      closed, "rotating-sphere-center");
}

ComplexCurve envelope_complex(const PseudoVector& l0, const PseudoVector& w1, const PseudoVector& w2,
                              const PseudoVector& w3, double alpha, double beta, std::vector<double> v, bool closed) {
  if (std::abs(inner(l0, l0) - 1) > 1e-12) throw Error(ErrorKind::config, "l0 must be a unit spacelike vector");
  for (const auto* w : {&w1, &w2, &w3})
    if (std::abs(inner(*w, l0)) > 1e-12) throw Error(ErrorKind::config, "envelope directions must be orthogonal to l0");
  return make_complex_curve(
      std::move(v),
      [=](double s, PseudoVector& l, PseudoVector& dl) {
        double sn = std::sin(s), cs = std::cos(s);
        PseudoVector x = w1 + alpha * sn * w2 + beta * (1.0 - cs) * w3;
        PseudoVector dx = alpha * cs * w2 + beta * sn * w3;
        double n2 = inner(x, x);
        if (!(n2 > 0)) throw Error(ErrorKind::evolution, "complex curve is not spacelike");
        double n = std::sqrt(n2);
        PseudoVector w = x / n;
        PseudoVector dw = dx / n - inner(x, dx) / (n2 * n) * x;
        l = cs * l0 + sn * w;
        dl = -sn * l0 + cs * w + sn * dw;
      },
      closed, "envelope");
}

std::vector<PseudoVector> section_derivative(const ComplexCurve& c) {
  const std::size_t n = c.size();
  std::vector<PseudoVector> d(n);
  if (c.analytic) {
    PseudoVector l;
    for (std::size_t i = 0; i < n; ++i) c.analytic(c.v[i], l, d[i]);
    return d;
  }
  if (n < 5) throw Error(ErrorKind::evolution, "too few samples for a derivative");
  const double h = c.step();
  auto at = [&](long i) -> const PseudoVector& {
    long m = static_cast<long>(n);
    return c.l[static_cast<std::size_t>(((i % m) + m) % m)];
  };
  for (std::size_t k = 0; k < n; ++k) {
    long i = static_cast<long>(k);
    bool interior = c.closed || (i >= 2 && i + 2 < static_cast<long>(n));
    if (interior) {
      d[k] = (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h);
    } else if (i < 2) {
      // one-sided fourth-order
      d[k] = (-25.0 * at(i) + 48.0 * at(i + 1) - 36.0 * at(i + 2) + 16.0 * at(i + 3) - 3.0 * at(i + 4)) / (12.0 * h);
    } else {
      d[k] = (25.0 * at(i) - 48.0 * at(i - 1) + 36.0 * at(i - 2) - 16.0 * at(i - 3) + 3.0 * at(i - 4)) / (12.0 * h);
    }
    d[k] -= inner(c.l[k], d[k]) * c.l[k];
  }
  return d;
}

std::vector<Bivector> connection_form(const ComplexCurve& c) {
  std::vector<PseudoVector> d = section_derivative(c);
  std::vector<Bivector> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (std::abs(inner(c.l[i], d[i])) > 1e-6 * std::max(1.0, d[i].norm()))
      throw Error(ErrorKind::evolution, "non-unit section");
    out[i] = Bivector(c.l[i], d[i]);
  }
  return out;
}

namespace {

struct Sampler {
  const ComplexCurve& c;
  const std::vector<PseudoVector>& d;

  // Connection operator at node i shifted by tau steps (tau in [-1, 1]).
  Matrix6 at(std::size_t i, double tau) const {
    const std::size_t n = c.size();
    if (tau == 0.0) return Bivector(c.l[i], d[i]).op();
    if (c.analytic) {
      PseudoVector l, dl;
      c.analytic(c.v[i] + tau * c.step(), l, dl);
      return Bivector(l, dl).op();
    }
    // cubic Hermite between i and its neighbour in the direction of tau
    std::size_t j = tau > 0 ? (i + 1) % n : (i + n - 1) % n;
    double h = c.step() * (tau > 0 ? 1.0 : -1.0);
    double s = std::abs(tau);
    double s2 = s * s, s3 = s2 * s;
    PseudoVector l = (2 * s3 - 3 * s2 + 1) * c.l[i] + (s3 - 2 * s2 + s) * h * d[i] + (-2 * s3 + 3 * s2) * c.l[j] +
                     (s3 - s2) * h * d[j];
    PseudoVector dl = ((6 * s2 - 6 * s) * c.l[i] + (3 * s2 - 4 * s + 1) * h * d[i] + (-6 * s2 + 6 * s) * c.l[j] +
                       (3 * s2 - 2 * s) * h * d[j]) / h;
    double n2 = inner(l, l);
    l /= std::sqrt(n2);
    dl = dl / std::sqrt(n2) - inner(l, dl) * l;
    return Bivector(l, dl).op();
  }
};

// One classical fourth-order step of A' = -A N from node i towards its neighbour.
Matrix6 rk4_step(const Matrix6& a, const Sampler& s, std::size_t i, double dir) {
  const double h = s.c.step() * dir;
  Matrix6 n0 = s.at(i, 0.0), nm = s.at(i, 0.5 * dir), n1 = s.at(i, dir);
  Matrix6 k1 = -a * n0;
  Matrix6 k2 = -(a + 0.5 * h * k1) * nm;
  Matrix6 k3 = -(a + 0.5 * h * k2) * nm;
  Matrix6 k4 = -(a + h * k3) * n1;
  return a + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
}

void check_group(Matrix6& a, std::size_t count, int every) {
  if (every > 0 && count % static_cast<std::size_t>(every) == 0) {
    a = project_to_group(a);
    if (ortho_defect(a) > 1e-6) throw Error(ErrorKind::evolution, "integration lost the group");
  }
}

}  // namespace

EvolutionMap integrate_evolution(const ComplexCurve& c, std::size_t v0_index, int reproject_every) {
  const std::size_t n = c.size();
  if (v0_index >= n) throw Error(ErrorKind::config, "base point outside the complex curve grid");
  EvolutionMap m;
  m.v = c.v;
  m.l = c.l;
  m.dl = section_derivative(c);
  m.v0_index = v0_index;
  m.closed = c.closed;
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(inner(c.l[i], m.dl[i])) > 1e-6 * std::max(1.0, m.dl[i].norm()))
      throw Error(ErrorKind::evolution, "non-unit section");
  Sampler s{c, m.dl};
  m.A.assign(n, Matrix6::Identity());
  Matrix6 a = Matrix6::Identity();
  for (std::size_t i = v0_index; i + 1 < n; ++i) {
    a = rk4_step(a, s, i, 1.0);
    check_group(a, i + 1 - v0_index, reproject_every);
    m.A[i + 1] = a;
  }
  if (c.closed) {
    Matrix6 end = rk4_step(a, s, n - 1, 1.0);
    // A at the start of the grid is reached backwards below; compare after.
    m.A.push_back(end);
  }
  a = Matrix6::Identity();
  for (std::size_t i = v0_index; i > 0; --i) {
    a = rk4_step(a, s, i, -1.0);
    check_group(a, v0_index - i + 1, reproject_every);
    m.A[i - 1] = a;
  }
  if (c.closed) {
    Matrix6 end = m.A.back();
    m.A.pop_back();
    m.closure = (end * metric_inverse(m.A[0]) - Matrix6::Identity()).cwiseAbs().maxCoeff();
  }
  for (const auto& x : m.A) m.max_defect = std::max(m.max_defect, ortho_defect(x));
  return m;
}

SurfaceGrid evolve_surface(const EvolutionMap& a, const LegendreCurve& c, Exec exec, double regularity_floor) {
  const std::size_t nu = c.size(), nv = a.size();
  if (nu < 2 || nv < 2) throw Error(ErrorKind::config, "grid sizes too small");
  const PseudoVector& l0 = a.l[a.v0_index];
  for (const auto& fr : c.frames) {
    double scale = std::max(fr.a.norm(), fr.b.norm());
    if (std::abs(inner(fr.a, l0)) > 1e-8 * scale || std::abs(inner(fr.b, l0)) > 1e-8 * scale)
      throw Error(ErrorKind::evolution, "curve is not orthogonal to the base complex");
  }
  SurfaceGrid g;
  g.u = c.u;
  g.v = a.v;
  g.v0_index = a.v0_index;
  g.base_line = l0;
  g.frames.resize(nu * nv);
  g.regularity.resize(nu * nv);
  g.valid.resize(nu * nv);

  std::vector<Matrix6> inv(nv);
  std::vector<PseudoVector> m(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    inv[j] = a.inverse(j);
    m[j] = a.A[j] * a.dl[j];  // Ad_A N restricted to C is sigma -> -(m, sigma) l0
  }
  // Euclidean-orthonormal basis of each curve plane for the regularity measure.
  std::vector<Eigen::Matrix<double, 6, 2>> q(nu);
  for (std::size_t i = 0; i < nu; ++i) {
    Eigen::Matrix<double, 6, 2> b;
    b << c.frames[i].a, c.frames[i].b;
    q[i] = b.householderQr().householderQ() * Eigen::Matrix<double, 6, 2>::Identity();
  }
  const double l0n = l0.norm();
  for_each_index(nu * nv, exec, [&](std::size_t k) {
    std::size_t i = k / nv, j = k % nv;
    g.frames[k] = {inv[j] * c.frames[i].a, inv[j] * c.frames[i].b};
    Eigen::Vector2d pairing(inner(m[j], q[i].col(0)), inner(m[j], q[i].col(1)));
    g.regularity[k] = pairing.norm() * l0n;
    g.valid[k] = g.regularity[k] > regularity_floor ? 1 : 0;
  });
  bool any = false;
  for (auto x : g.valid) any = any || x;
  if (!any) throw Error(ErrorKind::evolution, "degenerate evolution: no surface");
  g.wrap_u = c.closed;
  g.wrap_v = a.closed && a.closure <= 1e-6;
  return g;
}

EnvelopeFit fit_constant_envelope(const std::vector<PseudoVector>& l, std::size_t v0_index, double tol) {
  EnvelopeFit out;
  Eigen::MatrixXd m(6, l.size());
  for (std::size_t i = 0; i < l.size(); ++i) m.col(i) = l[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) {
    out.singular_values.push_back(sv(i));
    if (sv(i) > tol * sv(0)) ++r;
  }
  out.subspace.basis = svd.matrixU().leftCols(r);
  out.residual = r < sv.size() ? sv(r) / sv(0) : 0.0;
  out.signature = subspace_signature(out.subspace, 1e-8);
  out.no_constant_envelope = r == 6;
  if (r <= 4) {
    // elements B c of the envelope with (l0, B c) = 0
    Eigen::RowVectorXd row = l[v0_index].transpose() * metric() * out.subspace.basis;
    Eigen::JacobiSVD<Eigen::MatrixXd> s2(Eigen::MatrixXd(row), Eigen::ComputeFullV);
    out.w0.basis = out.subspace.basis * s2.matrixV().rightCols(r - 1);
  } else {
    out.w0.basis.resize(6, 0);
  }
  return out;
}

EnvelopeFit fit_constant_envelope(const ComplexCurve& c, std::size_t v0_index, double tol) {
  return fit_constant_envelope(c.l, v0_index, tol);
}

}  // namespace lsf
