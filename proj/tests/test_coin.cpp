#include <gtest/gtest.h>

#include "support.hpp"

using namespace qwalk;
using qwalk::testing::Rng;

namespace {

constexpr double tol = 1e-12;
const double s2 = 1.0 / std::sqrt(2.0);

void expect_near(cplx x, cplx y, double t = tol) { EXPECT_LT(std::abs(x - y), t) << x << " vs " << y; }

}  // namespace

TEST(ValidateCoin, IdentityHasZeroPhases) {
  const Coin c = validate_coin(coins::identity());
  EXPECT_EQ(c.sigma1, 0.0);
  EXPECT_EQ(c.sigma2, 0.0);
}

TEST(ValidateCoin, HadamardPhases) {
  const Coin c = validate_coin(coins::hadamard());
  EXPECT_NEAR(c.sigma1, 0.0, tol);
  EXPECT_NEAR(c.sigma2, pi, tol);
}

TEST(ValidateCoin, NotUnitaryBeforeReducible) {
  Mat2 m;
  m << 1, 0, 0, 0;
  try {
    validate_coin(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
  }
}

TEST(ValidateCoin, ZeroDiagonalIsReducible) {
  Mat2 m;
  m << 0, 1, 1, 0;
  try {
    validate_coin(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReducibleCoin);
  }
}

TEST(ValidateCoin, SlightlyOffUnitaryRejected) {
  Mat2 m = coins::hadamard();
  m(0, 0) += 1e-9;
  EXPECT_THROW(validate_coin(m), Error);
}

TEST(DefectParams, HadamardOnLine) {
  const DefectParams p = defect_params(make_spec(Lattice::Line, coins::hadamard(), coins::hadamard()));
  expect_near(p.a, I * s2);
  expect_near(p.b, I * s2);
  expect_near(p.omega, 1.0);
  EXPECT_NEAR(p.vartheta, pi / 2, tol);
}

TEST(DefectParams, KonnoModel) {
  for (double phi : {0.3, 1.0, pi / 2, pi, -2.0}) {
    const DefectParams p = defect_params(make_spec(Lattice::Line, coins::hadamard(), coins::konno(phi)));
    expect_near(p.a, I * s2);
    expect_near(p.b, I * unimodular(phi) * s2);
    expect_near(p.omega, 1.0);
  }
}

TEST(DefectParams, HadamardOnHalfLine) {
  const DefectParams p = defect_params(make_spec(Lattice::HalfLine, coins::hadamard(), coins::hadamard()));
  expect_near(p.a, I * s2);
  expect_near(p.b, I * s2);
  expect_near(p.omega, 1.0);
}

TEST(DefectParams, DiagonalCoinGivesZeroA) {
  for (Lattice lat : {Lattice::Line, Lattice::HalfLine}) {
    const DefectParams p = defect_params(make_spec(lat, coins::identity(), coins::hadamard()));
    EXPECT_TRUE(p.diagonal_coin());
    EXPECT_NEAR(std::abs(p.b), s2, tol);
  }
}

TEST(DefectParams, ModuliArePreserved) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i)
    for (Lattice lat : {Lattice::Line, Lattice::HalfLine}) {
      const WalkSpec s = rng.spec(lat);
      const DefectParams p = defect_params(s);
      EXPECT_NEAR(std::abs(p.a), std::abs(s.coin.c21), tol);
      EXPECT_NEAR(std::abs(p.b), std::abs(s.defect.c21), tol);
      EXPECT_NEAR(std::abs(p.omega), 1.0, tol);
    }
}

TEST(DefectParams, LineBEqualsAExactlyOnTheMatchingDefect) {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const Mat2 c = rng.coin();
    const Coin cc = validate_coin(c);
    const double t1 = rng.angle(), t2 = rng.angle();
    // d21 = c21 e^{i(tau - sigma)}
    const double chi = std::arg(cc.c21) + (t1 + t2) - cc.sigma();
    const Mat2 d = qwalk::testing::coin_from(std::abs(cc.c21), t1, t2, chi);
    const DefectParams p = defect_params(make_spec(Lattice::Line, c, d));
    expect_near(p.b, p.a, 1e-12);
    const Mat2 d_off = qwalk::testing::coin_from(std::abs(cc.c21), t1, t2, chi + 0.1);
    const DefectParams q = defect_params(make_spec(Lattice::Line, c, d_off));
    EXPECT_GT(std::abs(q.b - q.a), 1e-3);
  }
}

TEST(DefectParams, ConstantCoinOnLineGivesBEqualA) {
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    const Mat2 c = rng.coin();
    const DefectParams p = defect_params(make_spec(Lattice::Line, c, c));
    expect_near(p.b, p.a, 1e-12);
  }
}

TEST(HatQubit, OriginWithIdenticalCoins) {
  const WalkSpec s = make_spec(Lattice::Line, coins::identity(), coins::identity());
  const Qubit h = hat_qubit({1.0, 0.0}, 0, s);
  EXPECT_NEAR(std::abs(h.alpha), 1.0, tol);
  EXPECT_EQ(h.beta, 0.0);
}

TEST(HatQubit, KonnoOrigin) {
  // tau2 = pi and vartheta = pi/2, so beta picks up e^{i pi/2}.
  const WalkSpec s = make_spec(Lattice::Line, coins::hadamard(), coins::konno(pi));
  const Qubit h = hat_qubit({s2, I * s2}, 0, s);
  expect_near(h.alpha, s2);
  expect_near(h.beta, -s2);
}

TEST(HatQubit, ModulusAndRoundTrip) {
  Rng rng(14);
  for (int i = 0; i < 100; ++i)
    for (Lattice lat : {Lattice::Line, Lattice::HalfLine}) {
      const WalkSpec s = rng.spec(lat);
      const Qubit q = rng.qubit();
      const long k = lat == Lattice::Line ? static_cast<long>(rng.uniform(-20, 20)) : static_cast<long>(rng.uniform(0, 20));
      const Qubit h = hat_qubit(q, k, s);
      EXPECT_NEAR(std::abs(h.alpha), std::abs(q.alpha), tol);
      EXPECT_NEAR(std::abs(h.beta), std::abs(q.beta), tol);
      EXPECT_NEAR(h.norm2(), 1.0, tol);
      const Qubit back = unhat_qubit(h, k, s);
      expect_near(back.alpha, q.alpha);
      expect_near(back.beta, q.beta);
    }
}

TEST(SiteIndex, OrderingOnTheLine) {
  EXPECT_EQ(site_index(Lattice::Line, 0).up, 0);
  EXPECT_EQ(site_index(Lattice::Line, -1).down, 1);
  EXPECT_EQ(site_index(Lattice::Line, -1).up, 2);
  EXPECT_EQ(site_index(Lattice::Line, 0).down, 3);
  EXPECT_EQ(site_index(Lattice::Line, 1).up, 4);
  EXPECT_EQ(site_index(Lattice::HalfLine, 3).down, 7);
  EXPECT_THROW(site_index(Lattice::HalfLine, -1), Error);
}
