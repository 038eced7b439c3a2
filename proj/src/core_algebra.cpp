#include "lsf/core_algebra.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace lsf {

const Matrix6& metric() {
  static const Matrix6 g = [] {
    Matrix6 m = Matrix6::Zero();
    m.diagonal() << 1, 1, 1, 1, -1, -1;
    return m;
  }();
  return g;
}

PseudoVector basis(int i) {
  if (i < 1 || i > 6) throw Error(ErrorKind::config, "basis index out of range");
  PseudoVector e = PseudoVector::Zero();
  e(i - 1) = 1.0;
  return e;
}

double inner(const PseudoVector& a, const PseudoVector& b) {
  return a(0) * b(0) + a(1) * b(1) + a(2) * b(2) + a(3) * b(3) - a(4) * b(4) - a(5) * b(5);
}

double euclid_norm(const PseudoVector& a) { return a.norm(); }

bool is_null(const PseudoVector& a, double tol) {
  double n = a.squaredNorm();
  return n > 0 && std::abs(inner(a, a)) <= tol * n;
}

Bivector::Bivector(const PseudoVector& a, const PseudoVector& b) {
  op_ = (b * a.transpose() - a * b.transpose()) * metric();
}

Bivector Bivector::conjugated(const Matrix6& t) const {
  return from_operator(t * op_ * metric_inverse(t));
}

PseudoVector wedge_apply(const PseudoVector& a, const PseudoVector& b, const PseudoVector& c) {
  return inner(a, c) * b - inner(b, c) * a;
}

std::string to_string(const Signature& s) {
  return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + "," +
         std::to_string(s.null) + ")";
}

Subspace Subspace::span(std::span<const PseudoVector> vs, double tol) {
  Subspace out;
  if (vs.empty()) {
    out.basis.resize(6, 0);
    return out;
  }
  Eigen::Matrix<double, 6, Eigen::Dynamic> m(6, vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) m.col(i) = vs[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int r = 0;
  double smax = sv.size() ? sv(0) : 0.0;
  for (int i = 0; i < sv.size(); ++i)
    if (smax > 0 && sv(i) > tol * smax) ++r;
  out.basis = svd.matrixU().leftCols(r);
  return out;
}

Subspace Subspace::span(std::initializer_list<PseudoVector> vs, double tol) {
  std::vector<PseudoVector> v(vs);
  return span(std::span<const PseudoVector>(v), tol);
}

bool Subspace::contains(const PseudoVector& x, double tol) const {
  double n = x.norm();
  if (n == 0) return true;
  return (x - project(x)).norm() <= tol * n;
}

Signature subspace_signature(const Subspace& s, double tol) {
  if (s.dim() == 0) throw Error(ErrorKind::analysis, "empty subspace");
  Eigen::MatrixXd gram = s.basis.transpose() * metric() * s.basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  Signature sig;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()(i);
    if (std::abs(l) <= tol) ++sig.null;
    else if (l > 0) ++sig.positive;
    else ++sig.negative;
  }
  return sig;
}

Signature subspace_signature(std::span<const PseudoVector> vs, double tol) {
  if (vs.empty()) throw Error(ErrorKind::analysis, "empty subspace");
  return subspace_signature(Subspace::span(vs, tol), tol);
}

Subspace ortho_complement(const Subspace& s, double tol) {
  Subspace out;
  if (s.dim() == 0) {
    out.basis = Matrix6::Identity();
    return out;
  }
  // x orthogonal to the span  <=>  B^T G x = 0
  Eigen::MatrixXd a = s.basis.transpose() * metric();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * std::max(1.0, sv(0))) ++r;
  out.basis = svd.matrixV().rightCols(6 - r);
  return out;
}

std::vector<double> principal_angles(const Subspace& a, const Subspace& b) {
  std::vector<double> out;
  if (a.dim() == 0 || b.dim() == 0) return out;
  Eigen::MatrixXd c = a.basis.transpose() * b.basis;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c);
  const auto& sv = svd.singularValues();
  for (int i = 0; i < sv.size(); ++i) out.push_back(std::acos(std::clamp(sv(i), -1.0, 1.0)));
  std::sort(out.begin(), out.end());
  return out;
}

double ortho_defect(const Matrix6& m) {
  return (m.transpose() * metric() * m - metric()).cwiseAbs().maxCoeff();
}

Matrix6 metric_inverse(const Matrix6& m) { return metric() * m.transpose() * metric(); }

Matrix6 exp_operator(const Matrix6& m) { return m.exp(); }

namespace {

// Gram-Schmidt with respect to the indefinite metric; columns are matched
// to the signs of the standard basis.
Matrix6 indefinite_gram_schmidt(const Matrix6& m) {
  Matrix6 out = m;
  const Matrix6& g = metric();
  for (int i = 0; i < 6; ++i) {
    PseudoVector c = out.col(i);
    for (int j = 0; j < i; ++j) c -= g(j, j) * inner(c, out.col(j)) * out.col(j);
    double n = inner(c, c);
    if (n * g(i, i) <= 0) return m;
    out.col(i) = c / std::sqrt(std::abs(n));
  }
  return out;
}

}  // namespace

Matrix6 project_to_group(const Matrix6& m) {
  Matrix6 out = m;
  for (int it = 0; it < 4; ++it) {
    double d = ortho_defect(out);
    if (d < 1e-15) break;
    Matrix6 x = metric_inverse(out) * out;
    out = out * (3.0 * Matrix6::Identity() - x) * 0.5;
  }
  if (ortho_defect(out) > 1e-12) {
    Matrix6 gs = indefinite_gram_schmidt(out);
    if (ortho_defect(gs) < ortho_defect(out)) out = gs;
  }
  return out;
}

Matrix6 reflection(const PseudoVector& w) {
  double ww = inner(w, w);
  if (std::abs(ww) < 1e-14 * std::max(1.0, w.squaredNorm()))
    throw Error(ErrorKind::config, "reflection vector is null");
  // x -> x - 2 (x,w)/(w,w) w
  return Matrix6::Identity() - (2.0 / ww) * w * (metric() * w).transpose();
}

}  // namespace lsf
