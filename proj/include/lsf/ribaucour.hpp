#pragma once

#include "lsf/surface_analysis.hpp"

#include <array>

namespace lsf {

struct RibaucourPair {
  SurfaceGrid f;
  SurfaceGrid f_hat;
  std::vector<PseudoVector> s0;  // common enveloped sphere congruence, grid layout
  LegendreCurve c_hat;
  std::vector<PseudoVector> c0;  // C ∩ C_hat along u
};

// Coordinates (center_x, center_y, signed radius) on the null lines of the
// curve slice l0^perp. Radius 0 gives point spheres. The chart misses
// oriented lines of the slice and the point at infinity.
struct CircleChart {
  static constexpr int dimension = 3;
  static PseudoVector to_lightcone(const std::array<double, 3>& params, const PseudoVector& l0,
                                   const SpaceFormFrame& frame = SpaceFormFrame::euclidean());
};

// Metric map taking e3 to l0 (up to sign); identity when l0 = e3.
Matrix6 slice_map(const PseudoVector& l0, const SpaceFormFrame& frame = SpaceFormFrame::euclidean());

// Channel partner curve C_hat(u) = <c_hat, c0(u)>, c0(u) = C(u) ∩ c_hat^perp.
LegendreCurve channel_partner_curve(const LegendreCurve& c, const PseudoVector& c_hat, const PseudoVector& l0,
                                    std::vector<PseudoVector>* c0 = nullptr);

RibaucourPair ribaucour_evolve(const EvolutionMap& a, const LegendreCurve& c, const PseudoVector& c_hat,
                               Exec exec = Exec::parallel);
RibaucourPair ribaucour_evolve(const EvolutionMap& a, const LegendreCurve& c, const LegendreCurve& c_hat,
                               Exec exec = Exec::parallel);

struct RibaucourTolerances {
  double incidence = 1e-8;
  double margin = 1e-3;
  double intersection = 1e-6;  // largest first principal angle for a non-empty intersection
  double correspondence = 1e-5;
};

struct RibaucourReport {
  double incidence = 0.0;        // max distance of s0 from either frame
  double rank1_margin = 0.0;     // min second principal angle
  double first_angle = 0.0;      // max first principal angle
  double correspondence_f = 0.0;
  double correspondence_f_hat = 0.0;
  bool intersection_empty = false;
  bool proper_pair = false;      // rank-1 intersection everywhere
  bool curvature_lines_correspond = false;
  bool ribaucour = false;
  std::string note;
  RibaucourTolerances tolerances;
};

RibaucourReport verify_ribaucour(const RibaucourPair& pair, Exec exec = Exec::parallel,
                                 const RibaucourTolerances& tol = {});

}  // namespace lsf
