#include "lsf/io.hpp"
#include "lsf/parallel.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

using namespace lsf;

namespace {

LegendreCurve circle(std::size_t n) {
  auto u = uniform_grid(0, 2 * M_PI, n, true);
  std::vector<Vec2> p(n), nn(n);
  for (std::size_t i = 0; i < n; ++i) {
    nn[i] = -Vec2(std::cos(u[i]), std::sin(u[i]));
    p[i] = Vec2(0, 2) - nn[i];
  }
  return contact_lift_curve(p, nn, SpaceFormFrame::euclidean(), true, u);
}

// Best of `reps` wall-clock runs after one warm-up, in milliseconds.
double best_ms(int reps, const std::function<void()>& fn) {
  fn();
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, std::size_t n, int reps, const std::function<void(Exec)>& fn, bool same) {
  double s = best_ms(reps, [&] { fn(Exec::serial); });
  double p = best_ms(reps, [&] { fn(Exec::parallel); });
  std::printf("%-24s %6zu %12.2f %12.2f %8.2fx %s\n", name, n, s, p, s / p, same ? "identical" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP kernel timings"};
  std::vector<std::size_t> sizes{100, 200, 400};
  int reps = 3, threads = 0;
  app.add_option("--sizes", sizes, "grid sizes n (n x n surfaces)");
  app.add_option("--reps", reps, "repetitions, best time is reported")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "OpenMP threads, 0 for the runtime default");
  CLI11_PARSE(app, argc, argv);
  set_thread_limit(threads);

  std::printf("threads %d\n", omp_get_max_threads());
  std::printf("%-24s %6s %12s %12s %9s %s\n", "kernel", "n", "serial ms", "parallel ms", "speedup", "outputs");
  for (std::size_t n : sizes) {
    EvolutionMap a = integrate_evolution(rotating_plane(basis(3), -basis(2), 1.0, uniform_grid(0, 2 * M_PI, n, true), true));
    LegendreCurve c = circle(n);

    SurfaceGrid gs = evolve_surface(a, c, Exec::serial), gp = evolve_surface(a, c, Exec::parallel);
    bool same = true;
    for (std::size_t k = 0; k < gs.frames.size(); ++k) same = same && gs.frames[k].a == gp.frames[k].a;
    row("evolve_surface", n, reps, [&](Exec e) { evolve_surface(a, c, e); }, same);

    PrincipalData ps = curvature_sphere_fields(gs, Exec::serial), pp = curvature_sphere_fields(gs, Exec::parallel);
    same = true;
    for (std::size_t k = 0; k < ps.s1.size(); ++k) same = same && ps.s1[k] == pp.s1[k] && ps.s2[k] == pp.s2[k];
    row("curvature_sphere_fields", n, reps, [&](Exec e) { curvature_sphere_fields(gs, e); }, same);

    OsculatingData os = osculating_complexes(gs, ps, SpaceFormFrame::euclidean(), Exec::serial);
    OsculatingData op = osculating_complexes(gs, ps, SpaceFormFrame::euclidean(), Exec::parallel);
    same = true;
    for (std::size_t k = 0; k < os.l1.size(); ++k) same = same && os.l1[k] == op.l1[k] && os.l2[k] == op.l2[k];
    row("osculating_complexes", n, reps,
        [&](Exec e) { osculating_complexes(gs, ps, SpaceFormFrame::euclidean(), e); }, same);

    SurfaceReport rs = analyze_surface(gs, SpaceFormFrame::euclidean(), Exec::serial);
    SurfaceReport rp = analyze_surface(gs, SpaceFormFrame::euclidean(), Exec::parallel);
    same = io::dump(io::report_to_json(rs)) == io::dump(io::report_to_json(rp));
    row("analyze_surface", n, reps, [&](Exec e) { analyze_surface(gs, SpaceFormFrame::euclidean(), e); }, same);
  }
  return 0;
}
