#include "lsf/parallel.hpp"
#include "lsf/surface_analysis.hpp"

#include <omp.h>

namespace lsf {

namespace {

int g_thread_limit = 0;

// Seven-point first derivative at position i of a line of n samples.
template <class T, class Get>
T stencil(Get&& x, std::size_t n, std::size_t i, double h, bool wrap) {
  static constexpr double central[7] = {-1, 9, -45, 0, 45, -9, 1};
  static constexpr double edge[3][7] = {{-147, 360, -450, 400, -225, 72, -10},
                                        {-10, -77, 150, -100, 50, -15, 2},
                                        {2, -24, -35, 80, -30, 8, -1}};
  if (n < 7) throw Error(ErrorKind::analysis, "grid needs at least 7 samples per direction");
  const double s = 1.0 / (60.0 * h);
  const long m = static_cast<long>(n), c = static_cast<long>(i);
  auto at = [&](long k) { return x(static_cast<std::size_t>(((k % m) + m) % m)); };
  T acc = T(at(c) * 0.0);
  if (wrap || (c >= 3 && c + 3 < m)) {
    for (int t = 0; t < 7; ++t)
      if (central[t] != 0) acc = T(acc + central[t] * at(c + t - 3));
  } else if (c < 3) {
    for (int t = 0; t < 7; ++t) acc = T(acc + edge[c][t] * at(t));
  } else {
    const long r = m - 1 - c;
    for (int t = 0; t < 7; ++t) acc = T(acc - edge[r][t] * at(m - 1 - t));
  }
  return T(acc * s);
}

}  // namespace

void set_thread_limit(int threads) {
  g_thread_limit = threads;
  if (threads > 0) omp_set_num_threads(threads);
}

int thread_limit() { return g_thread_limit > 0 ? g_thread_limit : omp_get_max_threads(); }

GridShape GridShape::of(const SurfaceGrid& g) {
  GridShape s;
  s.nu = g.nu();
  s.nv = g.nv();
  s.hu = g.u.size() > 1 ? g.u[1] - g.u[0] : 1.0;
  s.hv = g.v.size() > 1 ? g.v[1] - g.v[0] : 1.0;
  s.wrap_u = g.wrap_u;
  s.wrap_v = g.wrap_v;
  return s;
}

PseudoVector GridShape::du(const std::vector<PseudoVector>& x, std::size_t i, std::size_t j) const {
  return stencil<PseudoVector>([&](std::size_t k) -> PseudoVector { return x[k * nv + j]; }, nu, i, hu, wrap_u);
}

PseudoVector GridShape::dv(const std::vector<PseudoVector>& x, std::size_t i, std::size_t j) const {
  return stencil<PseudoVector>([&](std::size_t k) -> PseudoVector { return x[i * nv + k]; }, nv, j, hv, wrap_v);
}

double GridShape::du(const std::vector<double>& x, std::size_t i, std::size_t j) const {
  return stencil<double>([&](std::size_t k) { return x[k * nv + j]; }, nu, i, hu, wrap_u);
}

double GridShape::dv(const std::vector<double>& x, std::size_t i, std::size_t j) const {
  return stencil<double>([&](std::size_t k) { return x[i * nv + k]; }, nv, j, hv, wrap_v);
}

}  // namespace lsf
