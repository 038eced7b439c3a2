#include "support.hpp"

#include <doctest.h>

using namespace lsf;
using lsf::testing::Gen;

namespace {
const SpaceFormFrame F = SpaceFormFrame::euclidean();

double ellipse_curvature(double ra, double rb, double th) {
  double s = std::sin(th), c = std::cos(th);
  return ra * rb / std::pow(ra * ra * s * s + rb * rb * c * c, 1.5);
}
}  // namespace

TEST_CASE("grid derivative is fourth order") {
  auto err = [](std::size_t n, bool closed) {
    double h = (closed ? 2 * M_PI : 2.0) / (closed ? n : n - 1);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(1.3 * h * i + 0.2);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      e = std::max(e, std::abs(grid_derivative(x, i, h, closed) - 1.3 * std::cos(1.3 * h * i + 0.2)));
    return e;
  };
  CHECK(err(40, false) / err(80, false) > 14.0);
  std::vector<double> x(64);
  double h = 2 * M_PI / 64;
  for (std::size_t i = 0; i < 64; ++i) x[i] = std::sin(h * i);
  for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(grid_derivative(x, i, h, true) - std::cos(h * i)) < 1e-5);
  // exact on quartics
  std::vector<double> q(9);
  for (std::size_t i = 0; i < 9; ++i) q[i] = std::pow(0.1 * i, 4) - 0.1 * i;
  for (std::size_t i = 0; i < 9; ++i)
    CHECK(grid_derivative(q, i, 0.1, false) == doctest::Approx(4 * std::pow(0.1 * i, 3) - 1).epsilon(1e-10));
  CHECK_THROWS_AS(grid_derivative(std::vector<double>(4, 0.0), 0, 0.1, false), Error);
}

TEST_CASE("contact lifts are isotropic and Legendre") {
  LegendreCurve c = lsf::testing::ellipse(0.3, 2, 1, 0.6, 200);
  std::vector<PseudoVector> a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(isotropy_defect(c.frames[i]) < 1e-12);
    a[i] = c.frames[i].a;
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    CHECK(std::abs(inner(grid_derivative(a, i, c.step(), true), c.frames[i].b)) < 1e-6);
  CHECK_THROWS_AS(contact_lift_curve({Vec2(0, 0), Vec2(0, 0), Vec2(1, 0)}, {Vec2(0, 1), Vec2(0, 1), Vec2(0, 1)}, F, false),
                  Error);
  CHECK_THROWS_AS(contact_lift_curve({Vec2(0, 0), Vec2(1, 0)}, {Vec2(0, 1), Vec2(0, 1)}, F, false), Error);
}

TEST_CASE("curve geometry of an ellipse") {
  const double ra = 1.0, rb = 0.6;
  auto curvature_error = [&](std::size_t n) {
    CurveGeometry g = curve_geometry(lsf::testing::ellipse(0.3, 2, ra, rb, n), F);
    CHECK(frame_relation_defect(g, F) < 1e-9);
    double err = 0.0, sign = g.k[0] > 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      err = std::max(err, std::abs(sign * g.k[i] - ellipse_curvature(ra, rb, g.u[i])));
      double s = std::sin(g.u[i]), co = std::cos(g.u[i]);
      CHECK(g.speed[i] == doctest::Approx(std::sqrt(ra * ra * s * s + rb * rb * co * co)).epsilon(1e-6));
      CHECK(project_point(F, g.f[i])(0) == doctest::Approx(0.3 + ra * co).epsilon(1e-12));
    }
    return err;
  };
  double coarse = curvature_error(200), fine = curvature_error(400);
  CHECK(coarse / fine > 14.0);
  CHECK(fine < 2e-6);
  CurveGeometry g = curve_geometry(lsf::testing::ellipse(0.3, 2, ra, rb, 400), F);
  // Ramanujan's perimeter approximation is accurate to ~1e-7 at this eccentricity
  double hh = std::pow(ra - rb, 2) / std::pow(ra + rb, 2);
  double perimeter = M_PI * (ra + rb) * (1 + 3 * hh / (10 + std::sqrt(4 - 3 * hh)));
  CHECK(g.ds * g.size() == doctest::Approx(perimeter).epsilon(1e-6));
}

TEST_CASE("circle curvature is constant") {
  Gen gen(21);
  for (int trial = 0; trial < 5; ++trial) {
    double r = gen.uniform(0.3, 3);
    CurveGeometry g = curve_geometry(lsf::testing::circle(gen.uniform(-1, 1), gen.uniform(-1, 1), r, 128, 0.3), F);
    for (double k : g.k) CHECK(std::abs(std::abs(k) - 1 / r) < 1e-6 / r);
    ElasticDetection d = detect_constrained_elastic(g, F);
    CHECK(d.circular);
    CHECK(d.residual == 0.0);
    // for any mu, the conserved vector exists with lambda = -chi k^3/2 - mu k
    double k = g.k[0], mu = gen.uniform(-1, 1);
    auto r_field = elastic_complex_vector(g, mu, -0.5 * k * k * k - mu * k, F);
    for (const auto& x : r_field) CHECK((x - r_field[0]).norm() < 1e-5);
  }
}

TEST_CASE("sech elastica is detected with its parameters") {
  ElasticaParams p;
  p.mu = -1;
  p.k0 = 2;
  p.length = 6;
  ElasticaSolution sol = solve_elastica(p, F);
  ElasticDetection d = detect_constrained_elastic(sol.frame, F);
  CHECK_FALSE(d.circular);
  CHECK(d.mu == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(std::abs(d.lambda) < 1e-8);
  CHECK(d.residual < 1e-8);
  CHECK(d.half_curvature_residual < 1e-8);
  // value at s = 0: f = o, t = e2 + p, k = 2, k' = 0
  PseudoVector r0 = basis(2) + 2 * F.q - F.p;
  CHECK((d.r_vec - r0).norm() < 1e-8);
  auto res = verify_linear_conserved(sol.frame, d.r_vec);
  CHECK(res.res0 < 1e-12);
  CHECK(res.res1 < 1e-7);
  CHECK(res.res2 < 1e-12);
}

TEST_CASE("an ellipse is not constrained elastic") {
  CurveGeometry g = curve_geometry(lsf::testing::ellipse(0, 2, 1, 0.5, 256), F);
  ElasticDetection d = detect_constrained_elastic(g, F);
  CHECK_FALSE(d.circular);
  CHECK(d.residual > 1e-2);
  auto res = verify_linear_conserved(g, d.r_vec);
  CHECK(res.res0 < 1e-12);
  CHECK(res.res1 > 1e-2);
}

TEST_CASE("conserved vector contractions hold for any parameters") {
  Gen gen(22);
  for (int trial = 0; trial < 10; ++trial) {
    ElasticaParams p;
    p.mu = gen.uniform(-2, 2);
    p.lambda = gen.uniform(-1, 1);
    p.k0 = gen.uniform(-1.5, 1.5);
    p.dk0 = gen.uniform(-1, 1);
    p.length = 3;
    ElasticaSolution sol = solve_elastica(p, F);
    auto r = elastic_complex_vector(sol.frame, p.mu, p.lambda, F);
    for (std::size_t i = 0; i < r.size(); i += 100) {
      CHECK(std::abs(inner(r[i], F.q) - p.lambda) < 1e-10);
      CHECK(std::abs(inner(r[i], F.p) + p.mu) < 1e-10);
      CHECK((r[i] - r[0]).norm() < 1e-7 * r[0].norm());
    }
  }
}
