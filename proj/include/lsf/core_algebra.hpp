#pragma once

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsf {

using PseudoVector = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind { config = 1, solver = 2, evolution = 3, analysis = 4, ribaucour = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline constexpr double kRankTol = 1e-9;

// diag(1,1,1,1,-1,-1)
const Matrix6& metric();
PseudoVector basis(int i);  // 1-based, e1..e6

double inner(const PseudoVector& a, const PseudoVector& b);
double euclid_norm(const PseudoVector& a);
bool is_null(const PseudoVector& a, double tol = 1e-12);

// Operator c -> (a,c) b - (b,c) a of the bivector a ^ b.
class Bivector {
 public:
  Bivector() : op_(Matrix6::Zero()) {}
  Bivector(const PseudoVector& a, const PseudoVector& b);
  static Bivector from_operator(const Matrix6& m) { Bivector w; w.op_ = m; return w; }

  PseudoVector apply(const PseudoVector& c) const { return op_ * c; }
  const Matrix6& op() const { return op_; }
  Bivector operator+(const Bivector& o) const { return from_operator(op_ + o.op_); }
  Bivector operator*(double s) const { return from_operator(op_ * s); }
  // Conjugation Ad_T: T (a^b) T^{-1} = (Ta)^(Tb) for T in O(4,2).
  Bivector conjugated(const Matrix6& t) const;

 private:
  Matrix6 op_;
};

PseudoVector wedge_apply(const PseudoVector& a, const PseudoVector& b, const PseudoVector& c);

struct Signature {
  int positive = 0;
  int negative = 0;
  int null = 0;
  int dim() const { return positive + negative + null; }
  bool operator==(const Signature&) const = default;
};

std::string to_string(const Signature& s);

// Span of a set of vectors, Euclidean-orthonormal basis stored column-wise.
struct Subspace {
  Eigen::Matrix<double, 6, Eigen::Dynamic> basis;
  int dim() const { return static_cast<int>(basis.cols()); }
  static Subspace span(std::span<const PseudoVector> vs, double tol = kRankTol);
  static Subspace span(std::initializer_list<PseudoVector> vs, double tol = kRankTol);
  PseudoVector project(const PseudoVector& x) const { return basis * (basis.transpose() * x); }
  bool contains(const PseudoVector& x, double tol = 1e-9) const;
};

Signature subspace_signature(const Subspace& s, double tol = kRankTol);
Signature subspace_signature(std::span<const PseudoVector> vs, double tol = kRankTol);
Subspace ortho_complement(const Subspace& s, double tol = kRankTol);

// Principal angles (ascending) between two subspaces, Euclidean.
std::vector<double> principal_angles(const Subspace& a, const Subspace& b);

double ortho_defect(const Matrix6& m);
Matrix6 metric_inverse(const Matrix6& m);  // G m^T G
Matrix6 exp_operator(const Matrix6& m);
Matrix6 project_to_group(const Matrix6& m);

// Metric reflection in the hyperplane orthogonal to a non-null w.
Matrix6 reflection(const PseudoVector& w);

}  // namespace lsf
