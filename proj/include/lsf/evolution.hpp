#pragma once

#include "lsf/legendre_curves.hpp"

#include <functional>
#include <string>

namespace lsf {

enum class Exec { serial, parallel };

// Closed-form section: value and v-derivative at v.
using ComplexFunction = std::function<void(double v, PseudoVector& l, PseudoVector& dl)>;

struct ComplexCurve {
  std::vector<double> v;
  std::vector<PseudoVector> l;
  bool closed = false;
  ComplexFunction analytic;  // optional
  std::string generator;     // name of the closed-form family, empty for sampled data

  std::size_t size() const { return l.size(); }
  double step() const { return v.size() > 1 ? v[1] - v[0] : 1.0; }
};

std::vector<double> uniform_grid(double start, double end, std::size_t n, bool closed);

// Normalizes samples to (l,l) = 1 and fixes a continuous sign.
ComplexCurve make_complex_curve(std::vector<double> v, std::vector<PseudoVector> l, bool closed);
ComplexCurve make_complex_curve(std::vector<double> v, const ComplexFunction& fn, bool closed,
                                std::string generator = "function");

// l(v) = cos(omega v) a + sin(omega v) b, a and b orthonormal spacelike.
ComplexCurve rotating_plane(const PseudoVector& a, const PseudoVector& b, double omega, std::vector<double> v,
                            bool closed);
// Pencil through l0 with direction m0 (m0 orthogonal to l0, any causal type).
ComplexCurve pencil(const PseudoVector& l0, const PseudoVector& m0, std::vector<double> v, bool closed);
// Complex of spheres meeting the sphere with center c(v) = c0 + cos v a + sin v b, radius R, orthogonally.
ComplexCurve rotating_sphere_center(const SpaceFormFrame& frame, const Vec3& c0, const Vec3& a, const Vec3& b,
                                    double radius, std::vector<double> v, bool closed);
// l(v) = cos v l0 + sin v w(v), w(v) = unit(w1 + alpha sin v w2 + beta (1 - cos v) w3); stays in
// span{l0, w1, w2, w3}.
ComplexCurve envelope_complex(const PseudoVector& l0, const PseudoVector& w1, const PseudoVector& w2,
                              const PseudoVector& w3, double alpha, double beta, std::vector<double> v, bool closed);

// Derivative samples: exact for closed-form curves, otherwise fourth-order
// differences projected orthogonal to l.
std::vector<PseudoVector> section_derivative(const ComplexCurve& c);

std::vector<Bivector> connection_form(const ComplexCurve& c);

struct EvolutionMap {
  std::vector<double> v;
  std::vector<Matrix6> A;
  std::vector<PseudoVector> l;
  std::vector<PseudoVector> dl;
  std::size_t v0_index = 0;
  bool closed = false;
  double closure = 0.0;      // max |A(v_end) A(v_start)^-1 - id| around a closed curve
  double max_defect = 0.0;   // max ortho_defect over the grid

  std::size_t size() const { return A.size(); }
  Matrix6 inverse(std::size_t i) const { return metric_inverse(A[i]); }
};

EvolutionMap integrate_evolution(const ComplexCurve& c, std::size_t v0_index = 0, int reproject_every = 50);

struct SurfaceGrid {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<ContactFrame> frames;  // row-major: index(i, j) = i * nv + j, i along u
  std::vector<double> regularity;
  std::vector<unsigned char> valid;
  bool wrap_u = false;
  bool wrap_v = false;
  std::size_t v0_index = 0;
  PseudoVector base_line = basis(3);

  std::size_t nu() const { return u.size(); }
  std::size_t nv() const { return v.size(); }
  std::size_t index(std::size_t i, std::size_t j) const { return i * v.size() + j; }
  const ContactFrame& at(std::size_t i, std::size_t j) const { return frames[index(i, j)]; }
};

inline constexpr double kRegularityFloor = 1e-6;

SurfaceGrid evolve_surface(const EvolutionMap& a, const LegendreCurve& c, Exec exec = Exec::parallel,
                           double regularity_floor = kRegularityFloor);

struct EnvelopeFit {
  Subspace subspace;
  Signature signature;
  double residual = 0.0;  // largest discarded singular value relative to the largest
  Subspace w0;            // envelope intersected with l(v0)^perp, when dim <= 4
  bool no_constant_envelope = false;
  std::vector<double> singular_values;
};

EnvelopeFit fit_constant_envelope(const std::vector<PseudoVector>& l, std::size_t v0_index = 0, double tol = 1e-6);
EnvelopeFit fit_constant_envelope(const ComplexCurve& c, std::size_t v0_index = 0, double tol = 1e-6);

}  // namespace lsf
