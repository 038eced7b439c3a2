#include "lsf/space_forms.hpp"

#include <cmath>

namespace lsf {

SpaceFormFrame SpaceFormFrame::euclidean() {
  SpaceFormFrame f;
  f.p = basis(6);
  f.q = basis(5) - basis(4);
  f.o = 0.5 * (basis(4) + basis(5));
  f.axes = {basis(1), basis(2), basis(3)};
  f.chi = 1.0;
  f.kappa = 0.0;
  return f;
}

SpaceFormFrame SpaceFormFrame::from_vectors(const PseudoVector& p, const PseudoVector& q) {
  if (std::abs(inner(p, q)) > 1e-10) throw Error(ErrorKind::config, "space form vectors not orthogonal");
  SpaceFormFrame f = euclidean();
  f.p = p;
  f.q = q;
  f.chi = -inner(p, p);
  f.kappa = -inner(q, q);
  if (std::abs(std::abs(f.chi) - 1.0) > 1e-10)
    throw Error(ErrorKind::config, "point sphere complex must satisfy (p,p) = -1 or 1");
  f.has_point_model = (p - basis(6)).norm() < 1e-14 && (q - (basis(5) - basis(4))).norm() < 1e-14;
  return f;
}

SpaceFormFrame SpaceFormFrame::transformed(const Matrix6& t) const {
  SpaceFormFrame f = *this;
  f.p = t * p;
  f.q = t * q;
  f.o = t * o;
  for (auto& a : f.axes) a = t * a;
  return f;
}

namespace {

void require_point_model(const SpaceFormFrame& frame) {
  if (!frame.is_euclidean()) throw Error(ErrorKind::config, "unsupported frame");
}

}  // namespace

PseudoVector lift_point(const SpaceFormFrame& frame, const Vec3& x) {
  require_point_model(frame);
  return frame.o + x(0) * frame.axes[0] + x(1) * frame.axes[1] + x(2) * frame.axes[2] +
         0.5 * x.squaredNorm() * frame.q;
}

PseudoVector lift_sphere(const SpaceFormFrame& frame, const OrientedSphere& s) {
  require_point_model(frame);
  if (s.radius == 0.0) throw Error(ErrorKind::config, "use lift_point");
  const Vec3& c = s.center;
  return frame.o + c(0) * frame.axes[0] + c(1) * frame.axes[1] + c(2) * frame.axes[2] +
         0.5 * (c.squaredNorm() - s.radius * s.radius) * frame.q + s.radius * frame.p;
}

PseudoVector lift_plane(const SpaceFormFrame& frame, const Vec3& n, double d) {
  require_point_model(frame);
  if (std::abs(n.norm() - 1.0) > 1e-9) throw Error(ErrorKind::config, "plane normal is not a unit vector");
  return n(0) * frame.axes[0] + n(1) * frame.axes[1] + n(2) * frame.axes[2] + d * frame.q + frame.p;
}

Vec3 project_point(const SpaceFormFrame& frame, const PseudoVector& y, double tol) {
  require_point_model(frame);
  double scale = y.norm();
  double yq = inner(y, frame.q);
  if (std::abs(yq) <= tol * scale) throw Error(ErrorKind::analysis, "point at infinity");
  PseudoVector z = -y / yq;
  if (std::abs(inner(z, frame.p)) > tol * std::max(1.0, z.norm()))
    throw Error(ErrorKind::analysis, "not a point sphere");
  return Vec3(inner(z, frame.axes[0]), inner(z, frame.axes[1]), inner(z, frame.axes[2]));
}

OrientedSphere project_sphere(const SpaceFormFrame& frame, const PseudoVector& y) {
  require_point_model(frame);
  double yq = inner(y, frame.q);
  if (std::abs(yq) <= 1e-12 * y.norm()) throw Error(ErrorKind::analysis, "point at infinity");
  PseudoVector z = -y / yq;
  OrientedSphere s;
  s.center = Vec3(inner(z, frame.axes[0]), inner(z, frame.axes[1]), inner(z, frame.axes[2]));
  s.radius = inner(z, frame.p) / inner(frame.p, frame.p);
  return s;
}

Matrix6 translation(const SpaceFormFrame& frame, const Vec3& a) {
  require_point_model(frame);
  // Coordinates in the basis (axis1, axis2, axis3, o, q, p).
  Matrix6 f;
  f << frame.axes[0], frame.axes[1], frame.axes[2], frame.o, frame.q, frame.p;
  Matrix6 k = Matrix6::Identity();
  for (int i = 0; i < 3; ++i) {
    k(4, i) = a(i);
    k(i, 3) = a(i);
  }
  k(4, 3) = 0.5 * a.squaredNorm();
  return f * k * f.inverse();
}

}  // namespace lsf
