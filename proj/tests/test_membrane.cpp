#include <gtest/gtest.h>

#include <cmath>

#include "nfom/constants.hpp"
#include "nfom/membrane.hpp"

using namespace nfom;

namespace {

MembraneGeometry square40() {
  return {40e-6, 40e-6, 50e-9, 2700.0, 1e9};
}

MembraneGeometry square50() {
  return {50e-6, 50e-6, 50e-9, 2700.0, 1e9};
}

}  // namespace

TEST(Eigenfrequency, FlagshipFundamental) {
  const double f = eigenfrequency(square40(), 1, 1) / constants::two_pi;
  EXPECT_NEAR(f, 10.758287e6, 1e-4 * 10.758287e6);
}

TEST(Eigenfrequency, SquareMembraneDoubling) {
  const MembraneGeometry g = square40();
  EXPECT_DOUBLE_EQ(eigenfrequency(g, 2, 2), 2.0 * eigenfrequency(g, 1, 1));
}

TEST(Eigenfrequency, OneTwoOnFiftyMicron) {
  const double f = eigenfrequency(square50(), 1, 2) / constants::two_pi;
  EXPECT_NEAR(f, 13.608276e6, 1e-6 * 13.608276e6);
}

TEST(Eigenfrequency, StrictlyIncreasingInEachIndex) {
  const MembraneGeometry g = {43e-6, 61e-6, 50e-9, 2700.0, 1e9};
  for (int j = 1; j <= 6; ++j)
    for (int k = 1; k <= 6; ++k) {
      EXPECT_LT(eigenfrequency(g, j, k), eigenfrequency(g, j + 1, k));
      EXPECT_LT(eigenfrequency(g, j, k), eigenfrequency(g, j, k + 1));
    }
}

TEST(Eigenfrequency, RejectsBadIndices) {
  EXPECT_THROW(eigenfrequency(square40(), 0, 1), std::domain_error);
  EXPECT_THROW(eigenfrequency(square40(), 1, -2), std::domain_error);
  EXPECT_THROW(eigenfrequency(square40(), 51, 1), std::domain_error);
}

TEST(ModeShape, CentralAntinode) {
  EXPECT_DOUBLE_EQ(mode_shape(square40(), 1, 1, 0.0, 0.0), 1.0);
}

TEST(ModeShape, NodalLineOfSecondHarmonic) {
  const MembraneGeometry g = square40();
  for (double x : {-15e-6, -3e-6, 0.0, 7e-6, 19e-6})
    EXPECT_NEAR(mode_shape(g, 1, 2, x, 0.0), 0.0, 1e-15);
}

TEST(ModeShape, VanishesOnAllClampedEdges) {
  const MembraneGeometry g = {40e-6, 55e-6, 50e-9, 2700.0, 1e9};
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k)
      for (int i = 0; i < 100; ++i) {
        const double fx = -0.5 + i / 99.0;
        EXPECT_LE(std::abs(mode_shape(g, j, k, 0.5 * g.length_x, fx * g.length_y)), 1e-12);
        EXPECT_LE(std::abs(mode_shape(g, j, k, -0.5 * g.length_x, fx * g.length_y)), 1e-12);
        EXPECT_LE(std::abs(mode_shape(g, j, k, fx * g.length_x, 0.5 * g.length_y)), 1e-12);
        EXPECT_LE(std::abs(mode_shape(g, j, k, fx * g.length_x, -0.5 * g.length_y)), 1e-12);
      }
}

TEST(ModeShape, ParityUnderYReflection) {
  // u_{j,k}(x, -y) = (-1)^{k+1} u_{j,k}(x, y)
  const MembraneGeometry g = square40();
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k)
      for (double y : {3e-6, 9.5e-6, 17e-6}) {
        const double x = 5e-6;
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        EXPECT_NEAR(mode_shape(g, j, k, x, -y), sign * mode_shape(g, j, k, x, y), 1e-14);
      }
}

TEST(ModeShape, RejectsPointOutsideMembrane) {
  EXPECT_THROW(mode_shape(square40(), 1, 1, 21e-6, 0.0), std::domain_error);
  EXPECT_THROW(mode_shape(square40(), 1, 1, 0.0, -20.1e-6), std::domain_error);
}

TEST(EffectiveMass, FlagshipValues) {
  EXPECT_NEAR(effective_mass(square40()), 5.40e-14, 1e-16);
  EXPECT_NEAR(effective_mass(square50()), 8.4375e-14, 1e-16);
}

TEST(EffectiveMass, LinearInThickness) {
  MembraneGeometry g = square40();
  const double m1 = effective_mass(g);
  g.thickness *= 2.0;
  EXPECT_DOUBLE_EQ(effective_mass(g), 2.0 * m1);
}

TEST(ZeroPointAmplitude, FlagshipValues) {
  EXPECT_NEAR(zero_point_amplitude(5.4e-14, constants::two_pi * 10e6), 3.9422e-15,
              1e-18);
  EXPECT_NEAR(zero_point_amplitude(5.4e-14, constants::two_pi * 17e6), 3.0235e-15,
              1e-18);
}

TEST(ZeroPointAmplitude, SquareRootMassScaling) {
  const double x1 = zero_point_amplitude(5.4e-14, 1e8);
  const double x4 = zero_point_amplitude(4.0 * 5.4e-14, 1e8);
  EXPECT_NEAR(x4, 0.5 * x1, 1e-12 * x1);
}

TEST(BuildMode, FlagshipDampingNearOneHertz) {
  const MechanicalMode m = build_mode(square40(), 1, 1, 1.076e7);
  EXPECT_NEAR(m.gamma_m / constants::two_pi, 1.0, 2e-3);
}

TEST(BuildMode, GammaIsOmegaOverQ) {
  const MechanicalMode m = build_mode(square40(), 1, 2, 1e6);
  EXPECT_DOUBLE_EQ(m.gamma_m, m.omega_m / 1e6);
  // Table-style arithmetic: 12 MHz at Q = 1.2e7 gives 1 Hz.
  EXPECT_DOUBLE_EQ(constants::two_pi * 12e6 / 1.2e7, constants::two_pi * 1.0);
}

TEST(BuildMode, ZeroPointClosure) {
  // x_zpf^2 * 2 m_eff omega_m = hbar
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) {
      const MechanicalMode m = build_mode(square50(), j, k, 1e7);
      const double closure = m.x_zpf * m.x_zpf * 2.0 * m.m_eff * m.omega_m;
      EXPECT_NEAR(closure, constants::hbar, 1e-12 * constants::hbar);
    }
}

TEST(Geometry, ValidationAndThinFlag) {
  EXPECT_THROW((MembraneGeometry{-40e-6, 40e-6, 50e-9, 2700.0, 1e9}.validate()),
               std::invalid_argument);
  EXPECT_THROW((MembraneGeometry{40e-6, 40e-6, 50e-9, 2700.0, 0.0}.validate()),
               std::invalid_argument);
  EXPECT_TRUE(square40().is_thin());
  const MembraneGeometry thick = {40e-6, 40e-6, 0.5e-6, 2700.0, 1e9};
  EXPECT_FALSE(thick.is_thin());
}
