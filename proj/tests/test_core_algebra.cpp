#include "support.hpp"

#include <doctest.h>

using namespace lsf;
using lsf::testing::Gen;

TEST_CASE("metric has signature (4,2)") {
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 6; ++j) CHECK(inner(basis(i), basis(j)) == (i != j ? 0.0 : i <= 4 ? 1.0 : -1.0));
  CHECK(subspace_signature(Subspace::span({basis(1), basis(2), basis(3), basis(4), basis(5), basis(6)})) ==
        Signature{4, 2, 0});
  CHECK_THROWS_AS(basis(0), Error);
  CHECK_THROWS_AS(basis(7), Error);
}

TEST_CASE("null vectors") {
  CHECK(is_null(basis(4) + basis(5)));
  CHECK(is_null(basis(1) + basis(6)));
  CHECK_FALSE(is_null(basis(1)));
  CHECK_FALSE(is_null(PseudoVector::Zero()));
}

TEST_CASE("bivector operator matches the wedge formula") {
  Gen g(1);
  for (int trial = 0; trial < 50; ++trial) {
    PseudoVector a = g.vec(), b = g.vec(), c = g.vec(), d = g.vec();
    Bivector w(a, b);
    CHECK((w.apply(c) - (inner(a, c) * b - inner(b, c) * a)).norm() < 1e-13);
    CHECK((w.apply(c) - wedge_apply(a, b, c)).norm() < 1e-13);
    // skew with respect to the metric
    CHECK(std::abs(inner(w.apply(c), d) + inner(c, w.apply(d))) < 1e-12);
    CHECK((Bivector(b, a).op() + w.op()).norm() < 1e-14);
    CHECK(((w + Bivector(c, d)).apply(a) - w.apply(a) - wedge_apply(c, d, a)).norm() < 1e-12);
    CHECK(((w * 2.5).op() - 2.5 * w.op()).norm() < 1e-14);
  }
}

TEST_CASE("conjugation transports the wedge") {
  Gen g(2);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix6 t = g.group_element();
    PseudoVector a = g.vec(), b = g.vec();
    CHECK((Bivector(a, b).conjugated(t).op() - Bivector(t * a, t * b).op()).norm() < 1e-10);
  }
}

TEST_CASE("reflections are metric involutions") {
  Gen g(3);
  for (int trial = 0; trial < 20; ++trial) {
    PseudoVector w = g.vec();
    if (std::abs(inner(w, w)) < 0.1) continue;
    Matrix6 r = reflection(w);
    CHECK(ortho_defect(r) < 1e-12);
    CHECK((r * r - Matrix6::Identity()).norm() < 1e-12);
    CHECK((r * w + w).norm() < 1e-12);
    PseudoVector x = g.vec();
    x -= inner(x, w) / inner(w, w) * w;
    CHECK((r * x - x).norm() < 1e-12);
  }
  CHECK_THROWS_AS(reflection(basis(4) + basis(5)), Error);
}

TEST_CASE("metric inverse inverts group elements") {
  Gen g(4);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix6 t = g.group_element(5);
    CHECK((t * metric_inverse(t) - Matrix6::Identity()).norm() < 1e-9 * t.norm() * t.norm());
    CHECK((metric_inverse(t) - metric() * t.transpose() * metric()).norm() == 0.0);
  }
}

TEST_CASE("exponential agrees with a Taylor series") {
  Gen g(5);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix6 x = Bivector(g.vec(), g.vec()).op() + Bivector(g.vec(), g.vec()).op();
    Matrix6 e = exp_operator(x), oracle = lsf::testing::taylor_exp(x);
    CHECK((e - oracle).norm() <= 1e-10 * std::max(1.0, oracle.norm()));
    CHECK(ortho_defect(e) < 1e-8 * std::max(1.0, e.norm() * e.norm()));
  }
}

TEST_CASE("exponential of a spacelike rotation is periodic") {
  Gen g(6);
  auto [a, b] = g.spacelike_pair();
  Matrix6 n = Bivector(a, b).op();
  CHECK((exp_operator(2 * M_PI * n) - Matrix6::Identity()).norm() < 1e-10);
  CHECK((exp_operator(0.5 * M_PI * n) * a - b).norm() < 1e-10);
}

TEST_CASE("projection to the group removes small defects") {
  Gen g(7);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix6 t = g.group_element(2);
    Matrix6 noisy = t + 1e-7 * Matrix6::Random();
    Matrix6 p = project_to_group(noisy);
    double scale = t.squaredNorm();
    CHECK(ortho_defect(p) < 1e-15 * scale);
    CHECK((p - t).norm() < 1e-7 * scale);
  }
}

TEST_CASE("subspace signatures") {
  PseudoVector n1 = basis(1) + basis(5), n2 = basis(2) + basis(6);
  CHECK(subspace_signature(Subspace::span({basis(1), basis(5)})) == Signature{1, 1, 0});
  CHECK(subspace_signature(Subspace::span({n1})) == Signature{0, 0, 1});
  CHECK(subspace_signature(Subspace::span({n1, n2})) == Signature{0, 0, 2});
  CHECK(subspace_signature(Subspace::span({n1, basis(1) - basis(5)})) == Signature{1, 1, 0});
  CHECK(to_string(Signature{2, 1, 0}) == "(2,1,0)");
  CHECK(Signature{2, 1, 1}.dim() == 4);
  std::vector<PseudoVector> none;
  CHECK_THROWS_AS(subspace_signature(std::span<const PseudoVector>(none)), Error);
}

TEST_CASE("span detects rank") {
  Gen g(8);
  PseudoVector a = g.vec(), b = g.vec();
  Subspace s = Subspace::span({a, b, a + 2 * b});
  CHECK(s.dim() == 2);
  CHECK(s.contains(3 * a - b));
  CHECK_FALSE(s.contains(g.vec()));
  CHECK((s.basis.transpose() * s.basis - Eigen::Matrix2d::Identity()).norm() < 1e-12);
}

TEST_CASE("orthogonal complement") {
  Gen g(9);
  for (int trial = 0; trial < 20; ++trial) {
    int k = 1 + trial % 4;
    std::vector<PseudoVector> vs;
    for (int i = 0; i < k; ++i) vs.push_back(g.vec());
    Subspace s = Subspace::span(std::span<const PseudoVector>(vs));
    Subspace c = ortho_complement(s);
    CHECK(c.dim() == 6 - k);
    for (int i = 0; i < c.dim(); ++i)
      for (const auto& v : vs) CHECK(std::abs(inner(c.basis.col(i), v)) < 1e-12);
  }
  // a null line lies in its own complement
  PseudoVector n = basis(1) + basis(5);
  CHECK(ortho_complement(Subspace::span({n})).contains(n));
}

TEST_CASE("principal angles") {
  Subspace a = Subspace::span({basis(1), basis(2)});
  Subspace b = Subspace::span({basis(1), std::cos(0.3) * basis(2) + std::sin(0.3) * basis(3)});
  auto angles = principal_angles(a, b);
  REQUIRE(angles.size() == 2);
  CHECK(angles[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(angles[1] == doctest::Approx(0.3).epsilon(1e-12));
  auto ortho = principal_angles(a, Subspace::span({basis(3)}));
  REQUIRE(ortho.size() == 1);
  CHECK(ortho[0] == doctest::Approx(M_PI / 2));
}
