#pragma once

#include "lsf/core_algebra.hpp"

#include <array>

namespace lsf {

using Vec3 = Eigen::Vector3d;

struct SpaceFormFrame {
  PseudoVector p;
  PseudoVector q;
  PseudoVector o;
  std::array<PseudoVector, 3> axes;  // images of e1, e2, e3 (Euclidean case)
  double chi = 1.0;
  double kappa = 0.0;

  static SpaceFormFrame euclidean();
  // Accepts arbitrary p, q as data; chi and kappa are read off the metric.
  static SpaceFormFrame from_vectors(const PseudoVector& p, const PseudoVector& q);
  bool is_euclidean() const { return has_point_model && std::abs(kappa) < 1e-12; }
  // Image of the frame under a metric-preserving map.
  SpaceFormFrame transformed(const Matrix6& t) const;

  bool has_point_model = true;
};

struct OrientedSphere {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;
};

PseudoVector lift_point(const SpaceFormFrame& frame, const Vec3& x);
PseudoVector lift_sphere(const SpaceFormFrame& frame, const OrientedSphere& s);
PseudoVector lift_plane(const SpaceFormFrame& frame, const Vec3& n, double d);
Vec3 project_point(const SpaceFormFrame& frame, const PseudoVector& y, double tol = 1e-8);

// Center and signed radius of the sphere represented by y (y, p) != 0.
OrientedSphere project_sphere(const SpaceFormFrame& frame, const PseudoVector& y);

// Euclidean translation x -> x + a acting on the lifts; fixes p and q.
Matrix6 translation(const SpaceFormFrame& frame, const Vec3& a);

}  // namespace lsf
