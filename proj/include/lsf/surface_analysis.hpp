#pragma once

#include "lsf/evolution.hpp"

#include <array>
#include <string>

namespace lsf {

// Shape and spacing of a surface grid; derivatives use seven-point stencils,
// wrapped in closed directions and one-sided sixth order at open ends.
struct GridShape {
  std::size_t nu = 0, nv = 0;
  double hu = 1.0, hv = 1.0;
  bool wrap_u = false, wrap_v = false;

  static GridShape of(const SurfaceGrid& g);
  std::size_t index(std::size_t i, std::size_t j) const { return i * nv + j; }
  PseudoVector du(const std::vector<PseudoVector>& x, std::size_t i, std::size_t j) const;
  PseudoVector dv(const std::vector<PseudoVector>& x, std::size_t i, std::size_t j) const;
  double du(const std::vector<double>& x, std::size_t i, std::size_t j) const;
  double dv(const std::vector<double>& x, std::size_t i, std::size_t j) const;
};

SurfaceGrid contact_lift_surface(const std::vector<Vec3>& points, const std::vector<Vec3>& normals, std::size_t nu,
                                 std::size_t nv, const SpaceFormFrame& frame, bool wrap_u, bool wrap_v,
                                 std::vector<double> u = {}, std::vector<double> v = {});

// max |(d rho_a, rho_b)| relative to the vector sizes, over both directions.
double legendre_residual(const SurfaceGrid& g);
double isotropy_residual(const SurfaceGrid& g);

struct AnalysisTolerances {
  double alignment = 1e-2;     // largest admissible curvature-sphere residual on input grids
  double umbilic = 1e-6;       // kernels closer than this are treated as coincident
  double coupling_floor = 1e-3;  // relative coupling below which a cell counts as channel
  double spherical = 1e-6;
  double flag = 1e-6;          // planar / orthogonal gates
  double signature = 1e-3;
  double envelope = 1e-3;      // relative singular-value cut for the one-family test
  double elastica = 1e-4;
  double pde = 1e-3;
};

struct PrincipalData {
  GridShape shape;
  std::vector<PseudoVector> raw1, raw2;  // curvature sphere lifts with unit frame coefficients
  std::vector<PseudoVector> s1, s2;      // special lifts once computed, raw lifts before
  std::vector<double> beta, gamma;
  std::vector<unsigned char> umbilic;
  std::vector<unsigned char> valid;
  std::vector<double> residual_u, residual_v;  // curvature-sphere residuals
  std::vector<double> lift_residual_1, lift_residual_2;  // misfit of d_u s1, d_v s2 against span{s1, s2}
  std::vector<double> coupling_1, coupling_2;  // relative raw couplings
  std::array<bool, 2> channel{false, false};
  bool has_special_lifts = false;
  double alignment = 0.0;
};

// Cells within stencil reach of an invalid cell are marked invalid.
PrincipalData curvature_sphere_fields(const SurfaceGrid& g, Exec exec = Exec::parallel,
                                      const AnalysisTolerances& tol = {});

// Rescales the lifts so that d_u s1 = beta s2 and d_v s2 = gamma s1. Throws on
// channel surfaces after recording the lift residuals and which family is
// channel. gauge_u / gauge_v are the initial values of the log scalings along
// the first column / row.
void special_lifts(PrincipalData& pd, const AnalysisTolerances& tol = {}, const std::vector<double>& gauge_u = {},
                   const std::vector<double>& gauge_v = {});

// Largest derivative of the Euclidean-normalized curvature spheres along
// their own directions: s1 along u, s2 along v. Zero on Dupin cyclides.
std::array<double, 2> curvature_sphere_drift(const PrincipalData& pd);

// Channel test on the raw lifts without throwing.
std::array<bool, 2> channel_families(const PrincipalData& pd, const AnalysisTolerances& tol = {});

struct OsculatingData {
  GridShape shape;
  std::vector<PseudoVector> l1, l2;
  std::vector<unsigned char> used;  // valid and not umbilic
  std::array<std::vector<Subspace>, 2> h;      // per curvature line
  std::array<std::vector<Signature>, 2> h_signature;
  std::array<bool, 2> from_channel{false, false};
  double orthogonality = 0.0;  // max |(l_i, frame vectors)| relative
};

OsculatingData osculating_complexes(const SurfaceGrid& g, const PrincipalData& pd,
                                    const SpaceFormFrame& frame = SpaceFormFrame::euclidean(),
                                    Exec exec = Exec::parallel, const AnalysisTolerances& tol = {});

// Distance of the Euclidean-normalized l_i from its mean along the line,
// family 1 along u and family 2 along v. Zero when l_i is constant on lines.
std::vector<double> spherical_line_residual(const OsculatingData& od, int family);

struct FamilyReport {
  double spherical_max = 0.0;
  double spherical_median = 0.0;
  bool spherical = false;
  double planar_residual = 0.0;      // max |(l, q)|
  double orthogonal_residual = 0.0;  // max |(l, p)|
  bool planar = false;
  bool orthogonal = false;
  bool monge = false;
  bool channel = false;
  Signature h_signature;
  bool h_consistent = true;
};

struct OneFamilyTest {
  bool evaluated = false;
  int envelope_dim = 0;
  Signature envelope_signature;
  double envelope_residual = 0.0;
  double elastica_residual = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  bool circular = false;
  bool lie_applicable = false;
  std::string note;
};

struct SurfaceReport {
  std::array<FamilyReport, 2> family;
  std::string blaschke_case;
  bool special_lifts = false;
  double pde_residual_beta = 0.0;
  double pde_residual_gamma = 0.0;
  bool two_family_lie_applicable = false;
  OneFamilyTest one_family;
  double legendre_residual = 0.0;
  double alignment = 0.0;
  std::size_t umbilic_cells = 0;
  std::size_t invalid_cells = 0;
  double lift_residual_max = 0.0;
  AnalysisTolerances tolerances;
};

SurfaceReport classify_surface(const SurfaceGrid& g, const PrincipalData& pd, const OsculatingData& od,
                               const SpaceFormFrame& frame = SpaceFormFrame::euclidean(),
                               const AnalysisTolerances& tol = {});

// Full pipeline: fields, special lifts when defined, complexes, report.
SurfaceReport analyze_surface(const SurfaceGrid& g, const SpaceFormFrame& frame = SpaceFormFrame::euclidean(),
                              Exec exec = Exec::parallel, const AnalysisTolerances& tol = {});

}  // namespace lsf
