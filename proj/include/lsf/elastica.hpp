#pragma once

#include "lsf/legendre_curves.hpp"

namespace lsf {

struct ElasticaParams {
  double chi = 1.0;
  double kappa = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double k0 = 0.0;
  double dk0 = 0.0;
  double length = 1.0;
  double step = 1e-3;

  void validate() const;
  std::size_t steps() const;
};

struct CurvatureProfile {
  std::vector<double> s;
  std::vector<double> k;
  std::vector<double> dk;
};

CurvatureProfile solve_curvature(const ElasticaParams& p);
double first_integral(const ElasticaParams& p, double k, double dk);

struct FrameInit {
  PseudoVector f0;
  PseudoVector t0;
  PseudoVector v0;
};

// f = o, v = e1, t = lift_plane(e2, 0): curve through the origin in the x3 = 0 plane.
FrameInit default_initial_frame(const SpaceFormFrame& frame);

CurveGeometry integrate_frame(const ElasticaParams& p, const CurvatureProfile& k, const FrameInit& init,
                              const SpaceFormFrame& frame, int renormalize_every = 100);

LegendreCurve legendre_lift(const CurveGeometry& g, const PseudoVector& ambient_line);

struct ElasticaSolution {
  CurvatureProfile profile;
  CurveGeometry frame;
  std::vector<double> energy;
  double energy_drift = 0.0;  // max |E(s) - E(0)| / max(1, |E(0)|)
};

ElasticaSolution solve_elastica(const ElasticaParams& p, const SpaceFormFrame& frame);
ElasticaSolution solve_elastica(const ElasticaParams& p, const SpaceFormFrame& frame, const FrameInit& init);

}  // namespace lsf
