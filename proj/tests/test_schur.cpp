#include <gtest/gtest.h>

#include "support.hpp"

using namespace qwalk;
using qwalk::testing::Rng;

namespace {

const double s2 = 1.0 / std::sqrt(2.0);

// Points of the circle at least `gap` away (in angle) from the branch points of a.
double angle_off_branch(Rng& rng, cplx a, double gap) {
  const double t0 = std::asin(std::abs(a));
  for (;;) {
    const double th = rng.uniform(0, 2 * pi);
    const double d = std::min({std::abs(th - t0), std::abs(th - (pi - t0)), std::abs(th - (pi + t0)),
                               std::abs(th - (2 * pi - t0)), std::abs(th + t0), std::abs(th - 2 * pi - t0)});
    if (d > gap) return th;
  }
}

}  // namespace

TEST(DeltaA, Values) {
  const cplx a(0.3, -0.4);
  EXPECT_EQ(delta_a(a, cplx(0.0)), cplx(1.0));
  EXPECT_LT(std::abs(delta_a(a, branch_point(a))), 1e-15);
  // (-1/4 - 1)^2 + 4 (1/2)(-1/4)
  EXPECT_LT(std::abs(delta_a(I * s2, 0.5 * I) - 1.0625), 1e-15);
}

TEST(DeltaA, BranchSquaresToDelta) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const cplx a = rng.in_disk(), z = rng.in_disk(1.0);
    const cplx r = sqrt_delta_a(a, z);
    EXPECT_LT(std::abs(r * r - delta_a(a, z)), 1e-13);
    EXPECT_GT(r.real(), -1e-15);
  }
  EXPECT_EQ(sqrt_delta_a(cplx(0.5, 0.1), cplx(0.0)), cplx(1.0));
}

TEST(FA, ValueAtOriginIsA) {
  Rng rng(32);
  for (int i = 0; i < 20; ++i) {
    const cplx a = rng.in_disk();
    EXPECT_LT(std::abs(f_a(a, cplx(0.0)) - a), 1e-15);
  }
  EXPECT_THROW(f_a(cplx(0.0), cplx(0.1)), Error);
}

TEST(FA, InDiskRootOfQuadratic) {
  // Roots of conj(a) z^2 f^2 + (1 - z^2) f - a = 0 at z = 1/2: 0.794...i and -5.04i.
  const cplx f = f_a(I * s2, cplx(0.5));
  EXPECT_LT(std::abs(f - cplx(0.0, 0.7941556038630078)), 1e-14);
}

TEST(FA, QuadraticResidual) {
  Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    const cplx a = rng.in_disk(), z = rng.in_disk();
    const cplx f = f_a(a, z);
    EXPECT_LE(std::abs(std::conj(a) * z * z * f * f + (1.0 - z * z) * f - a), 1e-12);
    EXPECT_LT(std::abs(f), 1.0);
  }
}

TEST(FA, EvenExactly) {
  Rng rng(34);
  for (int i = 0; i < 100; ++i) {
    const cplx a = rng.in_disk(), b = rng.in_disk(), z = rng.in_disk();
    EXPECT_EQ(f_a(a, z), f_a(a, -z));
    EXPECT_EQ(f_ab(a, b, z), f_ab(a, b, -z));
    EXPECT_EQ(g_ab(a, b, z), g_ab(a, b, -z));
  }
}

TEST(FABoundary, UnimodularExactlyOnGamma) {
  const cplx a(0.2, 0.5);
  EXPECT_NEAR(std::abs(f_a_boundary(a, 0.0)), 1.0, 1e-15);
  // theta = pi/2 with a = i/sqrt2: f = i(sqrt2 - 1)
  EXPECT_LT(std::abs(f_a_boundary(I * s2, pi / 2) - cplx(0.0, std::sqrt(2.0) - 1.0)), 1e-15);
  Rng rng(35);
  for (int i = 0; i < 200; ++i) {
    const double th = rng.uniform(0, 2 * pi);
    const double m = std::abs(f_a_boundary(a, th));
    if (std::abs(std::sin(th)) <= std::abs(a))
      EXPECT_NEAR(m, 1.0, 1e-14);
    else
      EXPECT_LT(m, 1.0);
  }
}

TEST(FABoundary, MatchesRadialLimit) {
  Rng rng(36);
  for (int i = 0; i < 20; ++i) {
    const cplx a = rng.in_disk(0.95);
    const double th = angle_off_branch(rng, a, 0.01);
    const cplx fb = f_a_boundary(a, th);
    EXPECT_LT(std::abs(f_a(a, std::polar(1.0 - 1e-12, th)) - fb), 1e-8);
    EXPECT_LT(std::abs(f_a(a, std::polar(1.0 - 1e-6, th)) - fb), 1e-4);
    EXPECT_LT(std::abs(f_a(a, std::polar(1.0, th)) - fb), 1e-12);
  }
}

TEST(FAB, ValueAtOriginAndReduction) {
  Rng rng(37);
  for (int i = 0; i < 20; ++i) {
    const cplx a = rng.in_disk(), b = rng.in_disk(), z = rng.in_disk();
    EXPECT_LT(std::abs(f_ab(a, b, cplx(0.0)) - b), 1e-15);
    EXPECT_LT(std::abs(f_ab(a, a, z) - f_a(a, z)), 1e-14);
  }
}

TEST(FAB, SchurBound) {
  Rng rng(38);
  for (int i = 0; i < 200; ++i) {
    const cplx a = rng.in_disk(), b = rng.in_disk(), z = rng.in_disk();
    EXPECT_LT(std::abs(f_ab(a, b, z)), 1.0);
    const double th = rng.uniform(0, 2 * pi);
    EXPECT_LE(std::abs(f_ab_boundary(a, b, th)), 1.0 + 1e-12);
    EXPECT_LE(std::abs(f_a_boundary(a, th)), 1.0 + 1e-12);
  }
}

TEST(FAB, UnimodularOnSameArcs) {
  Rng rng(39);
  for (int i = 0; i < 200; ++i) {
    const cplx a = rng.in_disk(), b = rng.in_disk();
    const double th = angle_off_branch(rng, a, 1e-6);
    const bool on_fa = std::abs(std::abs(f_a_boundary(a, th)) - 1.0) < 1e-12;
    const bool on_fab = std::abs(std::abs(f_ab_boundary(a, b, th)) - 1.0) < 1e-12;
    EXPECT_EQ(on_fa, on_fab);
  }
}

TEST(SchurStep, ZeroParameterDividesByZ) {
  const cplx f(0.3, 0.2), z(0.1, -0.5);
  EXPECT_LT(std::abs(schur_step(f, cplx(0.0), z) - f / z), 1e-15);
}

TEST(SchurStep, RoundTrip) {
  Rng rng(40);
  for (int i = 0; i < 100; ++i) {
    const cplx f = rng.in_disk(), alpha = rng.in_disk(), z = rng.in_disk();
    EXPECT_LT(std::abs(schur_inverse_step(schur_step(f, alpha, z), alpha, z) - f), 1e-12);
  }
}

TEST(SchurStep, SecondIterateOfFabIsFa) {
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const cplx a = rng.in_disk(), b = rng.in_disk(), z = rng.in_disk();
    const cplx f1 = schur_step(f_ab(a, b, z), b, z);
    const cplx f2 = schur_step(f1, cplx(0.0), z);
    EXPECT_LT(std::abs(f2 - f_a(a, z)), 1e-12);
  }
}

TEST(SchurStep, ParameterStreams) {
  const std::vector<cplx> zeros(10, cplx(0.0));
  EXPECT_EQ(schur_from_parameters<double>(zeros, cplx(0.0), cplx(0.3, 0.4)), cplx(0.0));
  // (b, 0) followed by f_a rebuilds f_ab.
  const cplx a(0.1, 0.6), b(-0.3, 0.2), z(0.5, 0.1);
  const std::vector<cplx> head{b, cplx(0.0)};
  EXPECT_LT(std::abs(schur_from_parameters<double>(head, f_a(a, z), z) - f_ab(a, b, z)), 1e-14);
  EXPECT_THROW(schur_step(cplx(0.1), cplx(1.0), z), Error);
}

TEST(Weight, VanishesOnGamma) {
  const cplx a(0.4, 0.5), b(0.1, -0.3), omega = unimodular(0.7);
  for (double th : {0.05, 0.3, pi - 0.2, pi + 0.1, 2 * pi - 0.4}) {
    ASSERT_TRUE(in_gamma(a, th));
    EXPECT_EQ(halfline_weight(a, b, th), 0.0);
    EXPECT_EQ(line_weight(a, b, omega, th).cwiseAbs().maxCoeff(), 0.0);
  }
  EXPECT_THROW(halfline_weight(a, b, std::asin(std::abs(a))), Error);
}

TEST(Weight, PositiveOffGamma) {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const cplx a = rng.in_disk(), b = rng.in_disk(), omega = unimodular(rng.angle());
    const double th = angle_off_branch(rng, a, 1e-6);
    if (in_gamma(a, th)) continue;
    EXPECT_GT(halfline_weight(a, b, th), 0.0);
    const Mat2c w = line_weight(a, b, omega, th);
    Eigen::SelfAdjointEigenSolver<Mat2c> es(w);
    EXPECT_GT(es.eigenvalues()(0), -1e-12);
  }
}

TEST(Weight, HalfLineNormalization) {
  Rng rng(43);
  for (int i = 0; i < 20; ++i) {
    const cplx a = rng.in_disk(0.9), b = rng.in_disk(0.9);
    const auto r = integrate_outside_gamma(std::abs(a), [&](double th) { return halfline_weight_unchecked(a, b, th); });
    double masses = 0.0;
    for (const auto& m : halfline_roots(a, b)) masses += m.mu;
    EXPECT_NEAR(r.value + masses, 1.0, 1e-6);
  }
}

TEST(Weight, LineNormalization) {
  Rng rng(44);
  for (int i = 0; i < 20; ++i) {
    const cplx a = rng.in_disk(0.9), b = rng.in_disk(0.9), omega = unimodular(rng.angle());
    const auto r = integrate_outside_gamma(
        std::abs(a), [&](double th) -> Mat2c { return line_weight_unchecked(a, b, omega, th); });
    Mat2c total = r.value;
    for (const auto& m : classify_line(a, b, omega).points) total += m.mass_matrix();
    EXPECT_NEAR(total.trace().real(), 2.0, 1e-6);
    EXPECT_LT((total - Mat2c::Identity()).cwiseAbs().maxCoeff(), 1e-6);
  }
}
