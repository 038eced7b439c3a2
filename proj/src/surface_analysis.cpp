#include "lsf/surface_analysis.hpp"

#include "lsf/elastica.hpp"
#include "lsf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lsf {

SurfaceGrid contact_lift_surface(const std::vector<Vec3>& points, const std::vector<Vec3>& normals, std::size_t nu,
                                 std::size_t nv, const SpaceFormFrame& frame, bool wrap_u, bool wrap_v,
                                 std::vector<double> u, std::vector<double> v) {
  if (points.size() != nu * nv || normals.size() != nu * nv || nu < 2 || nv < 2)
    throw Error(ErrorKind::config, "degenerate sampling");
  if (u.empty())
    for (std::size_t i = 0; i < nu; ++i) u.push_back(static_cast<double>(i));
  if (v.empty())
    for (std::size_t j = 0; j < nv; ++j) v.push_back(static_cast<double>(j));
  if (u.size() != nu || v.size() != nv) throw Error(ErrorKind::config, "parameter grid does not match samples");
  SurfaceGrid g;
  g.u = std::move(u);
  g.v = std::move(v);
  g.wrap_u = wrap_u;
  g.wrap_v = wrap_v;
  g.frames.resize(nu * nv);
  g.regularity.assign(nu * nv, 1.0);
  g.valid.assign(nu * nv, 1);
  for (std::size_t i = 0; i < nu; ++i)
    for (std::size_t j = 0; j < nv; ++j) {
      std::size_t k = i * nv + j;
      if ((i + 1 < nu && (points[k + nv] - points[k]).norm() == 0.0) ||
          (j + 1 < nv && (points[k + 1] - points[k]).norm() == 0.0))
        throw Error(ErrorKind::config, "degenerate sampling");
      g.frames[k] = {lift_point(frame, points[k]), lift_plane(frame, normals[k], points[k].dot(normals[k]))};
    }
  return g;
}

namespace {

std::vector<PseudoVector> component(const SurfaceGrid& g, int which) {
  std::vector<PseudoVector> out(g.frames.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = which == 0 ? g.frames[k].a : g.frames[k].b;
  return out;
}

int leading_sign(const PseudoVector& x) {
  for (int i = 0; i < 6; ++i)
    if (std::abs(x(i)) > 1e-12 * x.norm()) return x(i) > 0 ? 1 : -1;
  return 1;
}

// Consistent signs over the grid: first cell by leading component, then
// along the first row in v and down every column in u.
void propagate_signs(std::vector<PseudoVector>& x, const GridShape& s) {
  if (x.empty()) return;
  if (leading_sign(x[0]) < 0) x[0] = -x[0];
  for (std::size_t j = 1; j < s.nv; ++j)
    if (x[j].dot(x[j - 1]) < 0) x[j] = -x[j];
  for (std::size_t i = 1; i < s.nu; ++i)
    for (std::size_t j = 0; j < s.nv; ++j) {
      std::size_t k = s.index(i, j);
      if (x[k].dot(x[k - s.nv]) < 0) x[k] = -x[k];
    }
}

struct Kernel2 {
  Eigen::Vector2d vec;
  double residual = 0.0;  // part of the kernel derivative outside span{a, b}, relative
  bool ok = false;
};

// Kernel of the metric Gram matrix of (d1, d2). For a curvature sphere the
// derivative v0 d1 + v1 d2 lies in the contact element span{a, b}.
Kernel2 kernel_of(const PseudoVector& d1, const PseudoVector& d2, const Eigen::Matrix<double, 6, 2>& ab) {
  Eigen::Matrix2d b;
  b << inner(d1, d1), inner(d1, d2), inner(d1, d2), inner(d2, d2);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(b);
  Kernel2 k;
  k.vec = es.eigenvectors().col(0);
  Eigen::Matrix<double, 6, 2> d;
  d << d1, d2;
  Eigen::Matrix<double, 6, 2> perp = d - ab * (ab.transpose() * d);
  double scale = perp.norm();
  k.ok = es.eigenvalues()(1) > 0 && scale > 0;
  if (k.ok) k.residual = (perp * k.vec).norm() / scale;
  return k;
}

// Least-squares coefficients of x in span{e1, e2} (Euclidean).
Eigen::Vector2d coefficients(const PseudoVector& x, const PseudoVector& e1, const PseudoVector& e2) {
  Eigen::Matrix<double, 6, 2> m;
  m << e1, e2;
  return m.colPivHouseholderQr().solve(x);
}

double median(std::vector<double> x) {
  if (x.empty()) return 0.0;
  std::size_t mid = x.size() / 2;
  std::nth_element(x.begin(), x.begin() + static_cast<long>(mid), x.end());
  return x[mid];
}

// Cumulative integral of samples on a uniform line, fourth order.
std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double inc;
    if (n < 4) {
      inc = 0.5 * h * (f[i] + f[i + 1]);
    } else if (i == 0) {
      inc = h / 24.0 * (9 * f[0] + 19 * f[1] - 5 * f[2] + f[3]);
    } else if (i + 2 >= n) {
      inc = h / 24.0 * (f[i - 2] - 5 * f[i - 1] + 19 * f[i] + 9 * f[i + 1]);
    } else {
      inc = h / 24.0 * (-f[i - 1] + 13 * f[i] + 13 * f[i + 1] - f[i + 2]);
    }
    out[i + 1] = out[i] + inc;
  }
  return out;
}

}  // namespace

double legendre_residual(const SurfaceGrid& g) {
  GridShape s = GridShape::of(g);
  auto ra = component(g, 0), rb = component(g, 1);
  double res = 0.0;
  for (std::size_t i = 0; i < s.nu; ++i)
    for (std::size_t j = 0; j < s.nv; ++j) {
      std::size_t k = s.index(i, j);
      if (!g.valid[k]) continue;
      for (int dir = 0; dir < 2; ++dir) {
        PseudoVector da = dir == 0 ? s.du(ra, i, j) : s.dv(ra, i, j);
        PseudoVector db = dir == 0 ? s.du(rb, i, j) : s.dv(rb, i, j);
        double scale = std::max(da.norm(), db.norm()) * std::max(ra[k].norm(), rb[k].norm());
        if (scale == 0) continue;
        res = std::max({res, std::abs(inner(da, rb[k])) / scale, std::abs(inner(db, ra[k])) / scale});
      }
    }
  return res;
}

double isotropy_residual(const SurfaceGrid& g) {
  double r = 0.0;
  for (const auto& f : g.frames) r = std::max(r, isotropy_defect(f) / std::max(f.a.squaredNorm(), f.b.squaredNorm()));
  return r;
}

PrincipalData curvature_sphere_fields(const SurfaceGrid& g, Exec exec, const AnalysisTolerances& tol) {
  PrincipalData pd;
  const GridShape s = GridShape::of(g);
  pd.shape = s;
  const std::size_t n = s.nu * s.nv;
  auto ra = component(g, 0), rb = component(g, 1);
  pd.s1.resize(n);
  pd.s2.resize(n);
  pd.umbilic.assign(n, 0);
  pd.valid.assign(n, 0);
  pd.residual_u.assign(n, 0.0);
  pd.residual_v.assign(n, 0.0);
  for_each_index(n, exec, [&](std::size_t k) {
    std::size_t i = k / s.nv, j = k % s.nv;
    Eigen::Matrix<double, 6, 2> ab;
    ab << ra[k], rb[k];
    ab = ab.householderQr().householderQ() * Eigen::Matrix<double, 6, 2>::Identity();
    Kernel2 ku = kernel_of(s.du(ra, i, j), s.du(rb, i, j), ab);
    Kernel2 kv = kernel_of(s.dv(ra, i, j), s.dv(rb, i, j), ab);
    pd.s1[k] = ku.vec(0) * ra[k] + ku.vec(1) * rb[k];
    pd.s2[k] = kv.vec(0) * ra[k] + kv.vec(1) * rb[k];
    bool ok = g.valid[k] && ku.ok && kv.ok;
    pd.valid[k] = ok ? 1 : 0;
    if (!ok) return;
    pd.residual_u[k] = ku.residual;
    pd.residual_v[k] = kv.residual;
    double cross = std::abs(ku.vec(0) * kv.vec(1) - ku.vec(1) * kv.vec(0));
    pd.umbilic[k] = cross <= tol.umbilic ? 1 : 0;
  });
  // cells whose stencils reach an invalid cell are excluded as well
  const long reach = 3;
  std::vector<unsigned char> ok = pd.valid;
  for (std::size_t i = 0; i < s.nu; ++i)
    for (std::size_t j = 0; j < s.nv; ++j) {
      if (!ok[s.index(i, j)]) continue;
      for (long di = -reach; di <= reach && pd.valid[s.index(i, j)]; ++di)
        for (long dj = -reach; dj <= reach; ++dj) {
          long a = static_cast<long>(i) + di, b = static_cast<long>(j) + dj;
          long nu = static_cast<long>(s.nu), nv = static_cast<long>(s.nv);
          if (s.wrap_u) a = (a % nu + nu) % nu;
          if (s.wrap_v) b = (b % nv + nv) % nv;
          if (a < 0 || a >= nu || b < 0 || b >= nv) continue;
          if (!ok[s.index(static_cast<std::size_t>(a), static_cast<std::size_t>(b))]) {
            pd.valid[s.index(i, j)] = 0;
            pd.umbilic[s.index(i, j)] = 0;
            break;
          }
        }
    }
  propagate_signs(pd.s1, s);
  propagate_signs(pd.s2, s);
  pd.raw1 = pd.s1;
  pd.raw2 = pd.s2;
  for (std::size_t k = 0; k < n; ++k)
    if (pd.valid[k] && !pd.umbilic[k])
      pd.alignment = std::max({pd.alignment, pd.residual_u[k], pd.residual_v[k]});
  if (pd.alignment > tol.alignment) throw Error(ErrorKind::analysis, "reparametrize input");
  return pd;
}

namespace {

// d_u s1 = a s1 + b s2 and d_v s2 = c s1 + d s2 on the raw lifts.
struct Couplings {
  std::vector<double> a, b, c, d;
  std::vector<double> rel_b, rel_c;
  std::vector<double> fit_1, fit_2;  // relative least-squares misfit
};

Couplings couplings(const PrincipalData& pd, Exec exec) {
  const GridShape& s = pd.shape;
  const std::size_t n = s.nu * s.nv;
  Couplings cp;
  for (auto* x : {&cp.a, &cp.b, &cp.c, &cp.d, &cp.rel_b, &cp.rel_c, &cp.fit_1, &cp.fit_2}) x->assign(n, 0.0);
  const double lu = s.hu * static_cast<double>(s.nu), lv = s.hv * static_cast<double>(s.nv);
  for_each_index(n, exec, [&](std::size_t k) {
    std::size_t i = k / s.nv, j = k % s.nv;
    const PseudoVector& s1 = pd.raw1[k];
    const PseudoVector& s2 = pd.raw2[k];
    PseudoVector d1 = s.du(pd.raw1, i, j), d2 = s.dv(pd.raw2, i, j);
    Eigen::Vector2d ab = coefficients(d1, s1, s2), cd = coefficients(d2, s1, s2);
    cp.a[k] = ab(0);
    cp.b[k] = ab(1);
    cp.c[k] = cd(0);
    cp.d[k] = cd(1);
    double n1 = s1.norm(), n2 = s2.norm();
    cp.rel_b[k] = std::abs(ab(1)) * n2 / (std::abs(ab(0)) * n1 + std::abs(ab(1)) * n2 + n1 / lu);
    cp.rel_c[k] = std::abs(cd(0)) * n1 / (std::abs(cd(1)) * n2 + std::abs(cd(0)) * n1 + n2 / lv);
    double m1 = d1.norm() + n1 / lu, m2 = d2.norm() + n2 / lv;
    cp.fit_1[k] = m1 > 0 ? (d1 - ab(0) * s1 - ab(1) * s2).norm() / m1 : 0.0;
    cp.fit_2[k] = m2 > 0 ? (d2 - cd(0) * s1 - cd(1) * s2).norm() / m2 : 0.0;
  });
  return cp;
}

std::array<bool, 2> channel_from(const PrincipalData& pd, const Couplings& cp, const AnalysisTolerances& tol) {
  std::size_t total = 0, low_b = 0, low_c = 0;
  for (std::size_t k = 0; k < pd.s1.size(); ++k) {
    if (!pd.valid[k] || pd.umbilic[k]) continue;
    ++total;
    if (cp.rel_b[k] < tol.coupling_floor) ++low_b;
    if (cp.rel_c[k] < tol.coupling_floor) ++low_c;
  }
  if (total == 0) return {true, true};
  return {2 * low_b > total, 2 * low_c > total};
}

}  // namespace

std::array<double, 2> curvature_sphere_drift(const PrincipalData& pd) {
  const GridShape& s = pd.shape;
  const std::size_t n = s.nu * s.nv;
  std::vector<PseudoVector> n1(n), n2(n);
  for (std::size_t k = 0; k < n; ++k) {
    n1[k] = pd.raw1[k].normalized();
    n2[k] = pd.raw2[k].normalized();
  }
  std::array<double, 2> out{0.0, 0.0};
  for (std::size_t i = 0; i < s.nu; ++i)
    for (std::size_t j = 0; j < s.nv; ++j) {
      std::size_t k = s.index(i, j);
      if (!pd.valid[k] || pd.umbilic[k]) continue;
      out[0] = std::max(out[0], s.du(n1, i, j).norm());
      out[1] = std::max(out[1], s.dv(n2, i, j).norm());
    }
  return out;
}

std::array<bool, 2> channel_families(const PrincipalData& pd, const AnalysisTolerances& tol) {
  return channel_from(pd, couplings(pd, Exec::serial), tol);
}

void special_lifts(PrincipalData& pd, const AnalysisTolerances& tol, const std::vector<double>& gauge_u,
                   const std::vector<double>& gauge_v) {
  const GridShape& s = pd.shape;
  Couplings cp = couplings(pd, Exec::serial);
  pd.coupling_1 = cp.rel_b;
  pd.coupling_2 = cp.rel_c;
  pd.lift_residual_1 = cp.fit_1;
  pd.lift_residual_2 = cp.fit_2;
  pd.channel = channel_from(pd, cp, tol);
  if (pd.channel[0] || pd.channel[1]) throw Error(ErrorKind::analysis, "channel surface: special lifts undefined");
  const std::size_t n = s.nu * s.nv;
  // log phi along u (per column), log psi along v (per row)
  std::vector<double> lphi(n), lpsi(n);
  for (std::size_t j = 0; j < s.nv; ++j) {
    std::vector<double> f(s.nu);
    for (std::size_t i = 0; i < s.nu; ++i) f[i] = -cp.a[s.index(i, j)];
    std::vector<double> c = cumulative_integral(f, s.hu);
    double g0 = gauge_u.empty() ? 0.0 : gauge_u[j];
    for (std::size_t i = 0; i < s.nu; ++i) lphi[s.index(i, j)] = g0 + c[i];
  }
  for (std::size_t i = 0; i < s.nu; ++i) {
    std::vector<double> f(s.nv);
    for (std::size_t j = 0; j < s.nv; ++j) f[j] = -cp.d[s.index(i, j)];
    std::vector<double> c = cumulative_integral(f, s.hv);
    double g0 = gauge_v.empty() ? 0.0 : gauge_v[i];
    for (std::size_t j = 0; j < s.nv; ++j) lpsi[s.index(i, j)] = g0 + c[j];
  }
  pd.beta.resize(n);
  pd.gamma.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double phi = std::exp(lphi[k]), psi = std::exp(lpsi[k]);
    pd.beta[k] = phi * cp.b[k] / psi;
    pd.gamma[k] = psi * cp.c[k] / phi;
    pd.s1[k] *= phi;
    pd.s2[k] *= psi;
  }
  pd.has_special_lifts = true;
}

OsculatingData osculating_complexes(const SurfaceGrid& g, const PrincipalData& pd, const SpaceFormFrame& frame,
                                    Exec exec, const AnalysisTolerances& tol) {
  const GridShape& s = pd.shape;
  const std::size_t n = s.nu * s.nv;
  std::size_t regular = 0;
  for (std::size_t k = 0; k < n; ++k) regular += pd.valid[k] && !pd.umbilic[k];
  if (regular == 0) throw Error(ErrorKind::analysis, "no regular non-umbilic cells");
  OsculatingData od;
  od.shape = s;
  Couplings cp = couplings(pd, exec);
  std::array<bool, 2> channel = pd.has_special_lifts ? pd.channel : channel_from(pd, cp, tol);
  od.from_channel = channel;
  std::vector<double> logb(n), logc(n);
  for (std::size_t k = 0; k < n; ++k) {
    logb[k] = std::log(std::abs(cp.b[k]) + 1e-300);
    logc[k] = std::log(std::abs(cp.c[k]) + 1e-300);
  }
  od.l1.resize(n);
  od.l2.resize(n);
  od.used.resize(n);
  for (std::size_t k = 0; k < n; ++k) od.used[k] = pd.valid[k] && !pd.umbilic[k];
  std::vector<unsigned char> bad(n, 0);
  for_each_index(n, exec, [&](std::size_t k) {
    std::size_t i = k / s.nv, j = k % s.nv;
    const PseudoVector& s1 = pd.raw1[k];
    const PseudoVector& s2 = pd.raw2[k];
    PseudoVector x1, x2;
    if (!channel[0]) {
      // b s1_v - (b_v + b d) s1, independent of the lift gauge
      x1 = cp.b[k] * s.dv(pd.raw1, i, j) - (s.dv(cp.b, i, j) + cp.b[k] * cp.d[k]) * s1;
    } else {
      PseudoVector d = s.dv(pd.raw1, i, j);
      double sp = inner(s1, frame.p);
      x1 = std::abs(sp) > 1e-12 * s1.norm() ? PseudoVector(d - inner(d, frame.p) / sp * s1) : d;
    }
    if (!channel[1]) {
      x2 = cp.c[k] * s.du(pd.raw2, i, j) - (s.du(cp.c, i, j) + cp.c[k] * cp.a[k]) * s2;
    } else {
      PseudoVector d = s.du(pd.raw2, i, j);
      double sp = inner(s2, frame.p);
      x2 = std::abs(sp) > 1e-12 * s2.norm() ? PseudoVector(d - inner(d, frame.p) / sp * s2) : d;
    }
    double n1 = inner(x1, x1), n2 = inner(x2, x2);
    if (pd.valid[k] && !pd.umbilic[k] && (!(n1 > 0) || !(n2 > 0))) bad[k] = 1;
    od.l1[k] = n1 > 0 ? PseudoVector(x1 / std::sqrt(n1)) : x1;
    od.l2[k] = n2 > 0 ? PseudoVector(x2 / std::sqrt(n2)) : x2;
  });
  for (std::size_t k = 0; k < n; ++k)
    if (bad[k]) throw Error(ErrorKind::analysis, "regularity violated");
  propagate_signs(od.l1, s);
  propagate_signs(od.l2, s);
  for (std::size_t k = 0; k < n; ++k) {
    if (!pd.valid[k] || pd.umbilic[k]) continue;
    const ContactFrame& f = g.frames[k];
    for (const PseudoVector* l : {&od.l1[k], &od.l2[k]})
      od.orthogonality = std::max({od.orthogonality, std::abs(inner(*l, f.a)) / (f.a.norm() * l->norm()),
                                   std::abs(inner(*l, f.b)) / (f.b.norm() * l->norm())});
  }
  // Osculating bundles along the transverse direction of each curvature line.
  for (int fam = 0; fam < 2; ++fam) {
    const std::vector<PseudoVector>& l = fam == 0 ? od.l1 : od.l2;
    std::size_t lines = fam == 0 ? s.nv : s.nu, along = fam == 0 ? s.nu : s.nv;
    std::vector<PseudoVector> mean(lines, PseudoVector::Zero());
    for (std::size_t a = 0; a < lines; ++a) {
      for (std::size_t b = 0; b < along; ++b) mean[a] += fam == 0 ? l[s.index(b, a)] : l[s.index(a, b)];
      mean[a] /= std::sqrt(std::abs(inner(mean[a], mean[a])) + 1e-300);
    }
    // transverse derivatives on the line-indexed curve
    GridShape line;
    if (fam == 0) {
      line = {1, s.nv, 1.0, s.hv, false, s.wrap_v};
    } else {
      line = {1, s.nu, 1.0, s.hu, false, s.wrap_u};
    }
    std::vector<PseudoVector> d1(lines), d2(lines);
    for (std::size_t a = 0; a < lines; ++a) d1[a] = line.dv(mean, 0, a);
    for (std::size_t a = 0; a < lines; ++a) d2[a] = line.dv(d1, 0, a);
    od.h[fam].resize(lines);
    od.h_signature[fam].resize(lines);
    for (std::size_t a = 0; a < lines; ++a) {
      od.h[fam][a] = Subspace::span({mean[a], d1[a], d2[a]}, tol.signature);
      od.h_signature[fam][a] = subspace_signature(od.h[fam][a], tol.signature);
    }
  }
  return od;
}

std::vector<double> spherical_line_residual(const OsculatingData& od, int family) {
  if (family != 1 && family != 2) throw Error(ErrorKind::analysis, "family must be 1 or 2");
  const GridShape& s = od.shape;
  const std::vector<PseudoVector>& l = family == 1 ? od.l1 : od.l2;
  std::size_t lines = family == 1 ? s.nv : s.nu, along = family == 1 ? s.nu : s.nv;
  auto at = [&](std::size_t a, std::size_t b) { return family == 1 ? s.index(b, a) : s.index(a, b); };
  auto used = [&](std::size_t k) { return od.used.empty() || od.used[k]; };
  std::vector<double> out(s.nu * s.nv, 0.0);
  for (std::size_t a = 0; a < lines; ++a) {
    PseudoVector m = PseudoVector::Zero();
    for (std::size_t b = 0; b < along; ++b)
      if (used(at(a, b))) m += l[at(a, b)].normalized();
    if (!(m.norm() > 0)) continue;
    m.normalize();
    for (std::size_t b = 0; b < along; ++b) {
      PseudoVector x = l[at(a, b)].normalized();
      out[at(a, b)] = std::min((x - m).norm(), (x + m).norm());
    }
  }
  return out;
}

namespace {

Signature modal_signature(const std::vector<Signature>& sigs, bool& consistent) {
  std::map<std::tuple<int, int, int>, std::size_t> count;
  for (const auto& x : sigs) ++count[{x.positive, x.negative, x.null}];
  consistent = count.size() <= 1;
  std::tuple<int, int, int> best{0, 0, 0};
  std::size_t bc = 0;
  for (const auto& [key, c] : count)
    if (c > bc) {
      best = key;
      bc = c;
    }
  return {std::get<0>(best), std::get<1>(best), std::get<2>(best)};
}

std::string blaschke_case(const Signature& a, const Signature& b) {
  auto is = [](const Signature& s, int p, int n) { return s.positive == p && s.negative == n && s.null == 0; };
  if (is(a, 2, 1) && is(b, 2, 1)) return "joachimsthal";
  if ((is(a, 3, 0) && is(b, 1, 2)) || (is(a, 1, 2) && is(b, 3, 0))) return "monge-cone";
  if (a.dim() == 3 && b.dim() == 3 && a.null > 0 && b.null > 0) return "doubly-planar";
  return "none";
}

}  // namespace

SurfaceReport classify_surface(const SurfaceGrid& g, const PrincipalData& pd, const OsculatingData& od,
                               const SpaceFormFrame& frame, const AnalysisTolerances& tol) {
  SurfaceReport r;
  r.tolerances = tol;
  const GridShape& s = pd.shape;
  const std::size_t n = s.nu * s.nv;
  r.legendre_residual = legendre_residual(g);
  r.alignment = pd.alignment;
  for (std::size_t k = 0; k < n; ++k) {
    if (pd.umbilic[k]) ++r.umbilic_cells;
    if (!pd.valid[k]) ++r.invalid_cells;
  }
  std::array<bool, 2> channel = pd.has_special_lifts ? pd.channel : channel_families(pd, tol);
  for (int fam = 0; fam < 2; ++fam) {
    FamilyReport& f = r.family[fam];
    std::vector<double> sr = spherical_line_residual(od, fam + 1);
    const std::vector<PseudoVector>& l = fam == 0 ? od.l1 : od.l2;
    std::vector<double> used;
    for (std::size_t k = 0; k < n; ++k) {
      if (!pd.valid[k] || pd.umbilic[k]) continue;
      used.push_back(sr[k]);
      f.spherical_max = std::max(f.spherical_max, sr[k]);
      f.planar_residual = std::max(f.planar_residual, std::abs(inner(l[k], frame.q)));
      f.orthogonal_residual = std::max(f.orthogonal_residual, std::abs(inner(l[k], frame.p)));
    }
    f.spherical_median = median(used);
    f.spherical = !used.empty() && f.spherical_max <= tol.spherical;
    f.planar = f.spherical && f.planar_residual <= tol.flag;
    f.orthogonal = f.spherical && f.orthogonal_residual <= tol.flag;
    f.monge = f.planar && f.orthogonal;
    f.channel = channel[fam];
    f.h_signature = modal_signature(od.h_signature[fam], f.h_consistent);
  }
  r.blaschke_case = blaschke_case(r.family[0].h_signature, r.family[1].h_signature);

  r.special_lifts = pd.has_special_lifts;
  if (!pd.lift_residual_1.empty())
    for (std::size_t k = 0; k < n; ++k)
      if (pd.valid[k] && !pd.umbilic[k])
        r.lift_residual_max = std::max({r.lift_residual_max, pd.lift_residual_1[k], pd.lift_residual_2[k]});
  if (pd.has_special_lifts) {
    // (ln beta)_uv - beta gamma in gauge-free form: -a_v + (ln|b|)_uv + d_u - b c
    Couplings cp = couplings(pd, Exec::serial);
    std::vector<double> logb(n), logc(n), logb_v(n), logc_v(n);
    for (std::size_t k = 0; k < n; ++k) {
      logb[k] = std::log(std::abs(cp.b[k]));
      logc[k] = std::log(std::abs(cp.c[k]));
    }
    for (std::size_t i = 0; i < s.nu; ++i)
      for (std::size_t j = 0; j < s.nv; ++j) {
        logb_v[s.index(i, j)] = s.dv(logb, i, j);
        logc_v[s.index(i, j)] = s.dv(logc, i, j);
      }
    double scale = 0.0;
    for (std::size_t i = 0; i < s.nu; ++i)
      for (std::size_t j = 0; j < s.nv; ++j) {
        std::size_t k = s.index(i, j);
        if (!pd.valid[k] || pd.umbilic[k]) continue;
        double bc = cp.b[k] * cp.c[k];
        double av = s.dv(cp.a, i, j), du = s.du(cp.d, i, j);
        double rb = -av + s.du(logb_v, i, j) + du - bc;
        double rc = -du + s.du(logc_v, i, j) + av - bc;
        r.pde_residual_beta = std::max(r.pde_residual_beta, std::abs(rb));
        r.pde_residual_gamma = std::max(r.pde_residual_gamma, std::abs(rc));
        scale = std::max(scale, std::abs(bc));
      }
    r.two_family_lie_applicable =
        std::max(r.pde_residual_beta, r.pde_residual_gamma) <= tol.pde * std::max(1.0, scale);
  }

  // One-family test: recovered L1 curve and the base curve C = f(., v0).
  OneFamilyTest& t = r.one_family;
  try {
    std::vector<PseudoVector> lcurve(s.nv, PseudoVector::Zero());
    for (std::size_t j = 0; j < s.nv; ++j) {
      for (std::size_t i = 0; i < s.nu; ++i) lcurve[j] += od.l1[s.index(i, j)];
      lcurve[j] /= std::sqrt(std::abs(inner(lcurve[j], lcurve[j])) + 1e-300);
    }
    EnvelopeFit fit = fit_constant_envelope(lcurve, g.v0_index, tol.envelope);
    t.envelope_dim = fit.subspace.dim();
    t.envelope_signature = fit.signature;
    t.envelope_residual = fit.residual;
    LegendreCurve c;
    c.u = g.u;
    c.closed = g.wrap_u;
    c.ambient_line = lcurve[g.v0_index];
    for (std::size_t i = 0; i < s.nu; ++i) c.frames.push_back(g.at(i, g.v0_index));
    CurveGeometry geo = curve_geometry(c, frame);
    ElasticDetection det = detect_constrained_elastic(geo, frame);
    t.elastica_residual = det.residual;
    t.mu = det.mu;
    t.lambda = det.lambda;
    t.circular = det.circular;
    t.evaluated = true;
    t.lie_applicable = t.envelope_dim <= 4 && det.residual <= tol.elastica;
    t.note = t.lie_applicable ? "constant 4-space and constrained elastic base curve"
                              : "not detected for the conserved-quantity basis checked";
  } catch (const Error& e) {
    t.evaluated = false;
    t.note = e.what();
  }
  return r;
}

SurfaceReport analyze_surface(const SurfaceGrid& g, const SpaceFormFrame& frame, Exec exec,
                              const AnalysisTolerances& tol) {
  PrincipalData pd = curvature_sphere_fields(g, exec, tol);
  try {
    special_lifts(pd, tol);
  } catch (const Error&) {
    // channel family recorded in pd; complexes fall back per family
  }
  OsculatingData od = osculating_complexes(g, pd, frame, exec, tol);
  return classify_surface(g, pd, od, frame, tol);
}

}  // namespace lsf
