#pragma once

#include "lsf/io.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace lsf::testing {

// Contact lift of an ellipse, closed over [0, 2pi) or an open arc [t0, t1].
inline LegendreCurve ellipse(double cx, double cy, double ra, double rb, std::size_t n, bool closed = true,
                             double t0 = 0.2, double t1 = 1.4, double warp = 0.0) {
  auto u = closed ? uniform_grid(0, 2 * M_PI, n, true) : uniform_grid(t0, t1, n, false);
  std::vector<Vec2> p(n), nn(n);
  for (std::size_t i = 0; i < n; ++i) {
    double th = u[i] + warp * std::sin(u[i]);
    p[i] = Vec2(cx + ra * std::cos(th), cy + rb * std::sin(th));
    Vec2 t(-ra * std::sin(th), rb * std::cos(th));
    nn[i] = Vec2(-t(1), t(0)).normalized();
  }
  return contact_lift_curve(p, nn, SpaceFormFrame::euclidean(), closed, u);
}

inline LegendreCurve circle(double cx, double cy, double r, std::size_t n, double warp = 0.0) {
  return ellipse(cx, cy, r, r, n, true, 0, 0, warp);
}

inline ComplexCurve rotation_about_x1(std::size_t n) {
  return rotating_plane(basis(3), -basis(2), 1.0, uniform_grid(0, 2 * M_PI, n, true), true);
}

// Torus from the circle (0, 2) radius 1 rotated about the x1 axis.
inline SurfaceGrid torus(std::size_t n, double warp = 0.0) {
  return evolve_surface(integrate_evolution(rotation_about_x1(n)), circle(0, 2, 1, n, warp));
}

// Same contact elements, frame basis rotated by a smooth angle field.
inline SurfaceGrid regauge(SurfaceGrid g) {
  for (std::size_t i = 0; i < g.nu(); ++i)
    for (std::size_t j = 0; j < g.nv(); ++j) {
      double th = 0.4 + 0.3 * std::sin(g.u[i]) + 0.2 * std::cos(g.v[j]);
      auto& f = g.frames[g.index(i, j)];
      PseudoVector a = std::cos(th) * f.a + std::sin(th) * f.b, b = -std::sin(th) * f.a + std::cos(th) * f.b;
      f = {a, b};
    }
  return g;
}

// Open elliptic arc evolved by a complex in a fixed 4-space.
inline SurfaceGrid envelope_surface(std::size_t n) {
  auto c = ellipse(0.3, 2, 1, 0.7, n, false);
  auto cc = envelope_complex(basis(3), basis(2), basis(1), basis(4), 0.4, 0.3, uniform_grid(0, 2.5, n, false), false);
  return evolve_surface(integrate_evolution(cc), c);
}

// Point sphere of a contact element.
inline Vec3 point_of(const ContactFrame& f, const SpaceFormFrame& frame = SpaceFormFrame::euclidean()) {
  PseudoVector x = inner(f.b, frame.p) * f.a - inner(f.a, frame.p) * f.b;
  return project_point(frame, x);
}

inline std::vector<Vec3> obj_vertices(const std::string& mesh) {
  std::vector<Vec3> out;
  std::istringstream in(mesh);
  std::string tag;
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    ls >> tag;
    if (tag != "v") continue;
    Vec3 x;
    ls >> x(0) >> x(1) >> x(2);
    out.push_back(x);
  }
  return out;
}

// Taylor series of the matrix exponential with scaling and squaring.
inline Matrix6 taylor_exp(const Matrix6& m) {
  int k = 0;
  double nrm = m.cwiseAbs().rowwise().sum().maxCoeff();
  while (nrm > 0.5) {
    nrm /= 2;
    ++k;
  }
  Matrix6 x = m / std::pow(2.0, k), term = Matrix6::Identity(), sum = Matrix6::Identity();
  for (int i = 1; i < 30; ++i) {
    term = term * x / i;
    sum += term;
  }
  for (int i = 0; i < k; ++i) sum = sum * sum;
  return sum;
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(unsigned long seed) : rng(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  PseudoVector vec(double scale = 1.0) {
    PseudoVector x;
    for (int i = 0; i < 6; ++i) x(i) = uniform(-scale, scale);
    return x;
  }
  Vec3 vec3(double scale = 1.0) { return Vec3(uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)); }
  PseudoVector spacelike_unit() {
    for (;;) {
      PseudoVector x = vec();
      double n = inner(x, x);
      if (n > 0.1) return x / std::sqrt(n);
    }
  }
  // Orthonormal spacelike pair (a, b).
  std::pair<PseudoVector, PseudoVector> spacelike_pair() {
    for (;;) {
      PseudoVector a = spacelike_unit(), b = vec();
      b -= inner(a, b) * a;
      double n = inner(b, b);
      if (n > 0.1) return {a, b / std::sqrt(n)};
    }
  }
  // Product of random reflections: an element of O(4,2).
  Matrix6 group_element(int reflections = 4) {
    Matrix6 t = Matrix6::Identity();
    for (int i = 0; i < reflections; ++i) t = reflection(spacelike_unit()) * t;
    return t;
  }
};

}  // namespace lsf::testing
