#include "lsf/legendre_curves.hpp"

#include <cmath>

namespace lsf {

double isotropy_defect(const ContactFrame& c) {
  return std::max({std::abs(inner(c.a, c.a)), std::abs(inner(c.b, c.b)), std::abs(inner(c.a, c.b))});
}

double LegendreCurve::step() const { return u.size() > 1 ? u[1] - u[0] : 1.0; }

namespace {

template <class T>
T derivative_impl(const std::vector<T>& xs, std::size_t i, double h, bool closed) {
  const std::size_t n = xs.size();
  if (n < 5) throw Error(ErrorKind::analysis, "too few samples for a derivative");
  auto x = [&](long k) -> const T& { long m = static_cast<long>(n); return xs[static_cast<std::size_t>(((k % m) + m) % m)]; };
  const long c = static_cast<long>(i), m = static_cast<long>(n);
  if (closed || (c >= 2 && c + 2 < m)) return (-x(c + 2) + 8.0 * x(c + 1) - 8.0 * x(c - 1) + x(c - 2)) / (12.0 * h);
  if (c == 0) return (-25.0 * x(0) + 48.0 * x(1) - 36.0 * x(2) + 16.0 * x(3) - 3.0 * x(4)) / (12.0 * h);
  if (c == 1) return (-3.0 * x(0) - 10.0 * x(1) + 18.0 * x(2) - 6.0 * x(3) + x(4)) / (12.0 * h);
  if (c == m - 1)
    return (25.0 * x(m - 1) - 48.0 * x(m - 2) + 36.0 * x(m - 3) - 16.0 * x(m - 4) + 3.0 * x(m - 5)) / (12.0 * h);
  return (3.0 * x(m - 1) + 10.0 * x(m - 2) - 18.0 * x(m - 3) + 6.0 * x(m - 4) - x(m - 5)) / (12.0 * h);
}

// Metric-orthogonal projection onto the span of a non-degenerate set.
PseudoVector metric_projection(const std::vector<PseudoVector>& span, const PseudoVector& x) {
  const int m = static_cast<int>(span.size());
  Eigen::MatrixXd gram(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) gram(i, j) = inner(span[i], span[j]);
    rhs(i) = inner(span[i], x);
  }
  Eigen::VectorXd c = gram.fullPivLu().solve(rhs);
  PseudoVector out = PseudoVector::Zero();
  for (int i = 0; i < m; ++i) out += c(i) * span[i];
  return out;
}

// Element y of span{a, b} with (y, x1) = v1, (y, x2) = v2.
bool solve_in_plane(const ContactFrame& c, const PseudoVector& x1, double v1, const PseudoVector& x2,
                    double v2, PseudoVector& y) {
  Eigen::Matrix2d m;
  m << inner(c.a, x1), inner(c.b, x1), inner(c.a, x2), inner(c.b, x2);
  double scale = c.a.norm() * c.b.norm() * x1.norm() * x2.norm();
  if (std::abs(m.determinant()) <= 1e-12 * scale) return false;
  Eigen::Vector2d ab = m.inverse() * Eigen::Vector2d(v1, v2);
  y = ab(0) * c.a + ab(1) * c.b;
  return true;
}

}  // namespace

PseudoVector grid_derivative(const std::vector<PseudoVector>& xs, std::size_t i, double h, bool closed) {
  return derivative_impl(xs, i, h, closed);
}

double grid_derivative(const std::vector<double>& xs, std::size_t i, double h, bool closed) {
  return derivative_impl(xs, i, h, closed);
}

PseudoVector CurveGeometry::d_ds(const std::vector<PseudoVector>& xs, std::size_t i) const {
  return grid_derivative(xs, i, du(), closed) / speed[i];
}

double CurveGeometry::d_ds(const std::vector<double>& xs, std::size_t i) const {
  return grid_derivative(xs, i, du(), closed) / speed[i];
}

LegendreCurve contact_lift_curve(const std::vector<Vec2>& points, const std::vector<Vec2>& normals,
                                 const SpaceFormFrame& frame, bool closed, std::vector<double> u) {
  const std::size_t n = points.size();
  if (n != normals.size() || n < 3) throw Error(ErrorKind::config, "degenerate sampling");
  if (u.empty()) {
    u.resize(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<double>(i);
  }
  if (u.size() != n) throw Error(ErrorKind::config, "parameter grid does not match samples");
  LegendreCurve c;
  c.u = std::move(u);
  c.closed = closed;
  c.ambient_line = frame.axes[2];
  c.frames.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    if ((i + 1 < n || closed) && (points[j] - points[i]).norm() == 0.0)
      throw Error(ErrorKind::config, "degenerate sampling");
    Vec3 x(points[i](0), points[i](1), 0.0);
    Vec3 nn(normals[i](0), normals[i](1), 0.0);
    c.frames[i] = {lift_point(frame, x), lift_plane(frame, nn, x.dot(nn))};
  }
  return c;
}

CurveGeometry curve_geometry(const LegendreCurve& c, const SpaceFormFrame& frame) {
  const std::size_t n = c.size();
  if (n < 3) throw Error(ErrorKind::analysis, "too few samples for a derivative");
  CurveGeometry g;
  g.u = c.u;
  g.closed = c.closed;
  g.f.resize(n);
  g.t.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!solve_in_plane(c.frames[i], frame.q, -1.0, frame.p, 0.0, g.f[i]) ||
        !solve_in_plane(c.frames[i], frame.p, -1.0, frame.q, 0.0, g.t[i]))
      throw Error(ErrorKind::analysis, "curve not transversal to space form slice");
  }
  const double h = c.step();
  g.speed.resize(n);
  g.k.resize(n);
  g.tangent.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    PseudoVector df = grid_derivative(g.f, i, h, c.closed);
    PseudoVector dt = grid_derivative(g.t, i, h, c.closed);
    double ff = inner(df, df);
    if (ff <= 0) throw Error(ErrorKind::analysis, "degenerate sampling");
    g.speed[i] = std::sqrt(ff);
    g.k[i] = -inner(dt, df) / ff;
    PseudoVector tan = df - metric_projection({g.f[i], g.t[i], frame.p, frame.q, c.ambient_line}, df);
    g.tangent[i] = tan / std::sqrt(inner(tan, tan));
  }
  g.s.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) g.s[i] = g.s[i - 1] + 0.5 * h * (g.speed[i] + g.speed[i - 1]);
  double total = g.s.back() + (c.closed ? 0.5 * h * (g.speed.front() + g.speed.back()) : 0.0);
  g.ds = total / static_cast<double>(c.closed ? n : n - 1);
  g.dk.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.dk[i] = g.d_ds(g.k, i);
  return g;
}

double frame_relation_defect(const CurveGeometry& g, const SpaceFormFrame& frame) {
  double d = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const PseudoVector& f = g.f[i];
    const PseudoVector& t = g.t[i];
    const PseudoVector& v = g.tangent[i];
    d = std::max({d, std::abs(inner(f, f)), std::abs(inner(f, frame.q) + 1.0), std::abs(inner(f, frame.p)),
                  std::abs(inner(t, t)), std::abs(inner(t, frame.p) + 1.0), std::abs(inner(t, frame.q)),
                  std::abs(inner(f, t)), std::abs(inner(v, v) - 1.0)});
  }
  return d;
}

std::vector<PseudoVector> elastic_complex_vector(const CurveGeometry& g, double mu, double lambda,
                                                 const SpaceFormFrame& frame) {
  std::vector<PseudoVector> r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double k = g.k[i];
    r[i] = -(k * frame.kappa + lambda) * g.f[i] + (0.5 * k * k * frame.chi + mu) * g.t[i] - g.dk[i] * g.tangent[i] +
           k * frame.q - 0.5 * k * k * frame.p;
  }
  return r;
}

ElasticDetection detect_constrained_elastic(const CurveGeometry& g, const SpaceFormFrame& frame) {
  const std::size_t n = g.size();
  ElasticDetection out;
  double kmean = 0.0, kmax = 0.0;
  for (double k : g.k) {
    kmean += k / static_cast<double>(n);
    kmax = std::max(kmax, std::abs(k));
  }
  double kdev = 0.0;
  for (double k : g.k) kdev = std::max(kdev, std::abs(k - kmean));

  if (kdev <= 1e-9 * std::max(1.0, kmax)) {
    out.circular = true;
    out.mu = 0.0;
    out.lambda = -kmean * frame.kappa - 0.5 * frame.chi * kmean * kmean * kmean;
    out.note = "circular: (mu,lambda) non-unique, lambda = -chi k^3/2 - (mu+kappa) k for any mu";
  } else {
    // r(s) = r0(s) + mu t(s) - lambda f(s); choose (mu, lambda) minimizing the spread of r.
    std::vector<PseudoVector> r0 = elastic_complex_vector(g, 0.0, 0.0, frame);
    PseudoVector r0m = PseudoVector::Zero(), tm = PseudoVector::Zero(), fm = PseudoVector::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      r0m += r0[i];
      tm += g.t[i];
      fm += g.f[i];
    }
    r0m /= double(n);
    tm /= double(n);
    fm /= double(n);
    Eigen::Matrix2d ata = Eigen::Matrix2d::Zero();
    Eigen::Vector2d atb = Eigen::Vector2d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      PseudoVector a1 = g.t[i] - tm, a2 = -(g.f[i] - fm), b = -(r0[i] - r0m);
      ata(0, 0) += a1.dot(a1);
      ata(0, 1) += a1.dot(a2);
      ata(1, 1) += a2.dot(a2);
      atb(0) += a1.dot(b);
      atb(1) += a2.dot(b);
    }
    ata(1, 0) = ata(0, 1);
    Eigen::Vector2d x = ata.ldlt().solve(atb);
    out.mu = x(0);
    out.lambda = x(1);
  }

  std::vector<PseudoVector> r = elastic_complex_vector(g, out.mu, out.lambda, frame);
  PseudoVector mean = PseudoVector::Zero();
  for (const auto& x : r) mean += x / double(n);
  out.r_vec = mean;
  double mn = mean.norm();
  double res = 0.0, half = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    res = std::max(res, (r[i] - mean).norm());
    PseudoVector h = g.t[i] + 0.5 * g.k[i] * g.f[i];
    half = std::max(half, std::abs(inner(h, mean)) / (h.norm() * mn));
  }
  out.residual = mn > 0 ? res / mn : res;
  out.half_curvature_residual = half;
  if (out.circular) out.residual = 0.0;
  return out;
}

ConservedResiduals verify_linear_conserved(const CurveGeometry& g, const std::vector<PseudoVector>& r) {
  ConservedResiduals out;
  std::vector<PseudoVector> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = 2.0 * g.t[i] + g.k[i] * g.f[i];
  for (std::size_t i = 0; i < g.size(); ++i) {
    const PseudoVector& f = g.f[i];
    const PseudoVector& df = g.tangent[i];
    // xi = -f ^ df
    auto xi = [&](const PseudoVector& x) -> PseudoVector { return -wedge_apply(f, df, x); };
    out.res0 = std::max(out.res0, g.d_ds(r, i).norm());
    out.res1 = std::max(out.res1, (g.d_ds(w, i) + xi(r[i])).norm());
    out.res2 = std::max(out.res2, xi(w[i]).norm());
  }
  return out;
}

ConservedResiduals verify_linear_conserved(const CurveGeometry& g, const PseudoVector& r_vec) {
  return verify_linear_conserved(g, std::vector<PseudoVector>(g.size(), r_vec));
}

}  // namespace lsf
