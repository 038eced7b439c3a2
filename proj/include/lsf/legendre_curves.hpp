#pragma once

#include "lsf/space_forms.hpp"

#include <optional>
#include <vector>

namespace lsf {

using Vec2 = Eigen::Vector2d;

struct ContactFrame {
  PseudoVector a;
  PseudoVector b;
};

double isotropy_defect(const ContactFrame& c);

struct LegendreCurve {
  std::vector<double> u;
  std::vector<ContactFrame> frames;
  PseudoVector ambient_line = basis(3);
  bool closed = false;

  std::size_t size() const { return frames.size(); }
  double step() const;
};

// Fourth-order derivatives along a uniform grid: five-point central in the
// interior, one-sided at open ends, wrapped when closed.
PseudoVector grid_derivative(const std::vector<PseudoVector>& xs, std::size_t i, double h, bool closed);
double grid_derivative(const std::vector<double>& xs, std::size_t i, double h, bool closed);

struct CurveGeometry {
  std::vector<double> u;      // uniform parameter
  std::vector<double> speed;  // ds/du
  std::vector<double> s;
  std::vector<PseudoVector> f;
  std::vector<PseudoVector> t;
  std::vector<PseudoVector> tangent;  // df/ds
  std::vector<double> k;
  std::vector<double> dk;  // dk/ds
  double ds = 0.0;
  bool closed = false;

  std::size_t size() const { return f.size(); }
  double du() const { return u.size() > 1 ? u[1] - u[0] : 1.0; }
  // Arclength derivative of a per-sample field.
  PseudoVector d_ds(const std::vector<PseudoVector>& xs, std::size_t i) const;
  double d_ds(const std::vector<double>& xs, std::size_t i) const;
};

// Planar curve in the x3 = 0 plane; normals are unit 2D normals.
LegendreCurve contact_lift_curve(const std::vector<Vec2>& points, const std::vector<Vec2>& normals,
                                 const SpaceFormFrame& frame, bool closed,
                                 std::vector<double> u = {});

CurveGeometry curve_geometry(const LegendreCurve& c, const SpaceFormFrame& frame);

// Largest violation of the normalization relations of a curve geometry.
double frame_relation_defect(const CurveGeometry& g, const SpaceFormFrame& frame);

std::vector<PseudoVector> elastic_complex_vector(const CurveGeometry& g, double mu, double lambda,
                                                 const SpaceFormFrame& frame);

struct ElasticDetection {
  PseudoVector r_vec = PseudoVector::Zero();
  double mu = 0.0;
  double lambda = 0.0;
  double residual = 0.0;             // max ||r(s) - mean|| / ||mean||
  double half_curvature_residual = 0.0;  // max |(t + k/2 f, r)| / ||r||
  bool circular = false;
  std::string note;
};

ElasticDetection detect_constrained_elastic(const CurveGeometry& g, const SpaceFormFrame& frame);

struct ConservedResiduals {
  double res0 = 0.0;
  double res1 = 0.0;
  double res2 = 0.0;
};

ConservedResiduals verify_linear_conserved(const CurveGeometry& g, const std::vector<PseudoVector>& r_field);
ConservedResiduals verify_linear_conserved(const CurveGeometry& g, const PseudoVector& r_vec);

}  // namespace lsf
