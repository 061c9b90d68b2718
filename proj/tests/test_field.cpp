#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nfom/constants.hpp"
#include "nfom/field.hpp"
#include "nfom/numerics/quadrature.hpp"

using namespace nfom;
using nfom::constants::two_pi;

namespace {

ToroidGeometry toroid24() { return {20e-6, 2.4e-6, 15e-9}; }

OpticalParams optics850() {
  return make_optical_params(850e-9, two_pi * 5e6, {2.0, 0.6e-6});
}

// Point-A calibration: omega_s' = 2pi*7 GHz/nm, omega_s'' = -2pi*120 MHz/nm^2.
FieldModel point_a() {
  return calibrate_field_model(two_pi * 7e18, -two_pi * 1.2e26, 15e-9, 0.5e-6, 0.15,
                               toroid24(), optics850(), 50e-9);
}

}  // namespace

TEST(Calibration, PointADecayLength) {
  const FieldModel m = point_a();
  EXPECT_NEAR(m.decay_length, 58.333e-9, 1e-3 * 58.333e-9);
}

TEST(Calibration, UnitRatioGivesUnitLength) {
  const FieldModel m = calibrate_field_model(two_pi * 1.0, -two_pi * 1.0, 15e-9, 0.5e-6,
                                             0.15, toroid24(), optics850(), 50e-9);
  EXPECT_NEAR(m.decay_length, 1.0, 1e-12);
}

TEST(Calibration, HomogeneousInDerivativeScale) {
  const FieldModel a = point_a();
  const FieldModel b =
      calibrate_field_model(10.0 * two_pi * 7e18, -10.0 * two_pi * 1.2e26, 15e-9,
                            0.5e-6, 0.15, toroid24(), optics850(), 50e-9);
  EXPECT_DOUBLE_EQ(a.decay_length, b.decay_length);
}

TEST(Calibration, RejectsSignViolations) {
  EXPECT_THROW(calibrate_field_model(-two_pi * 7e18, -two_pi * 1.2e26, 15e-9, 0.5e-6,
                                     0.15, toroid24(), optics850(), 50e-9),
               std::invalid_argument);
  EXPECT_THROW(calibrate_field_model(two_pi * 7e18, two_pi * 1.2e26, 15e-9, 0.5e-6,
                                     0.15, toroid24(), optics850(), 50e-9),
               std::invalid_argument);
}

TEST(Calibration, DerivedDocumentationFieldsPositive) {
  const FieldModel m = point_a();
  EXPECT_GT(m.interaction_area, 0.0);
  EXPECT_GT(m.mode_volume, 0.0);
  // Mode volume of a d ~ 2.4 um toroid should land in the tens of um^3.
  EXPECT_GT(m.mode_volume, 1e-18);
  EXPECT_LT(m.mode_volume, 1e-15);
}

TEST(StaticShift, PointAAnchor) {
  const FieldModel m = point_a();
  EXPECT_NEAR(static_shift(m, 15e-9) / two_pi, -408.333e9, 1e-3 * 408.333e9);
}

TEST(StaticShift, ExponentialGapDependence) {
  const FieldModel m = point_a();
  const double z0 = 22e-9;
  EXPECT_NEAR(static_shift(m, z0 + m.decay_length) / static_shift(m, z0),
              std::exp(-1.0), 1e-12);
  EXPECT_NEAR(static_shift(m, 60.0 * m.decay_length), 0.0, 1e-14 * two_pi * 408e9);
}

TEST(StaticDerivatives, MatchCalibrationAtReference) {
  const FieldModel m = point_a();
  const StaticDerivatives d = static_derivatives(m, 15e-9);
  EXPECT_NEAR(d.first, two_pi * 7e18, 1e-12 * two_pi * 7e18);
  EXPECT_NEAR(d.second, -two_pi * 1.2e26, 1e-12 * two_pi * 1.2e26);
}

TEST(StaticDerivatives, DecayOneLengthAway) {
  const FieldModel m = point_a();
  const StaticDerivatives d = static_derivatives(m, 15e-9 + m.decay_length);
  EXPECT_NEAR(d.first, two_pi * 7e18 * std::exp(-1.0), 1e-12 * d.first);
  EXPECT_NEAR(d.second, -two_pi * 1.2e26 * std::exp(-1.0), 1e-12 * std::abs(d.second));
}

TEST(StaticDerivatives, ModelClosureAtRandomGaps) {
  const FieldModel m = point_a();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> gap(1e-9, 200e-9);
  for (int i = 0; i < 100; ++i) {
    const double z0 = gap(rng);
    const double shift = static_shift(m, z0);
    const StaticDerivatives d = static_derivatives(m, z0);
    EXPECT_DOUBLE_EQ(d.first, -shift / m.decay_length);
    EXPECT_DOUBLE_EQ(d.second, shift / (m.decay_length * m.decay_length));
    EXPECT_NEAR(d.second * m.decay_length, -d.first, 1e-12 * d.first);
  }
}

TEST(StaticQuantities, StrictlyDecreasingInGap) {
  const FieldModel m = point_a();
  const OpticalParams optics = optics850();
  double prev_shift = std::abs(static_shift(m, 5e-9));
  double prev_first = static_derivatives(m, 5e-9).first;
  double prev_second = std::abs(static_derivatives(m, 5e-9).second);
  double prev_kappa = static_linewidth_shift(m, optics, 5e-9);
  for (double z0 = 10e-9; z0 <= 100e-9; z0 += 5e-9) {
    const double shift = std::abs(static_shift(m, z0));
    const double first = static_derivatives(m, z0).first;
    const double second = std::abs(static_derivatives(m, z0).second);
    const double kappa = static_linewidth_shift(m, optics, z0);
    EXPECT_LT(shift, prev_shift);
    EXPECT_LT(first, prev_first);
    EXPECT_LT(second, prev_second);
    EXPECT_LT(kappa, prev_kappa);
    prev_shift = shift;
    prev_first = first;
    prev_second = second;
    prev_kappa = kappa;
  }
}

TEST(LinewidthShift, LosslessMembraneGivesZero) {
  const FieldModel m = point_a();
  const OpticalParams lossless = make_optical_params(850e-9, two_pi * 5e6, {2.0, 0.0});
  EXPECT_DOUBLE_EQ(static_linewidth_shift(m, lossless, 15e-9), 0.0);
}

TEST(LinewidthShift, PointAEstimate) {
  // 2 * 408.3 GHz * Im(eps)/(Re(eps)-1) with eps = (2 + 0.6e-6 i)^2.
  const FieldModel m = point_a();
  const double dks = static_linewidth_shift(m, optics850(), 15e-9);
  EXPECT_NEAR(dks / two_pi, 0.6533e6, 1e-3 * 0.6533e6);
}

TEST(LinewidthShift, RatioToDispersiveShiftIsGapIndependent) {
  const FieldModel m = point_a();
  const OpticalParams optics = optics850();
  const double ref = static_linewidth_shift(m, optics, 10e-9) /
                     std::abs(static_shift(m, 10e-9));
  for (double z0 = 20e-9; z0 <= 120e-9; z0 += 10e-9) {
    const double ratio = static_linewidth_shift(m, optics, z0) /
                         std::abs(static_shift(m, z0));
    EXPECT_DOUBLE_EQ(ratio, ref);
  }
}

TEST(IntensityProfile, RingGeometry) {
  const FieldModel m = point_a();
  const ToroidGeometry t = toroid24();
  EXPECT_DOUBLE_EQ(intensity_profile(m, t, 10e-6, 0.0), 1.0);
  EXPECT_NEAR(intensity_profile(m, t, 0.0, 10e-6 + m.ring_width), std::exp(-2.0),
              1e-15);
}

TEST(IntensityProfile, IntegralMatchesAnalyticRingArea) {
  const FieldModel m = point_a();
  const ToroidGeometry t = toroid24();
  const double half = t.ring_radius() + 6.0 * m.ring_width;
  numerics::QuadratureSpec spec;
  spec.node_count = 128;
  spec.rel_tol = 1e-9;
  spec.abs_tol = 0.0;
  const double integral = numerics::integrate_2d(
      [&](double x, double y) { return intensity_profile(m, t, x, y); },
      {-half, half, -half, half}, spec);
  const double analytic = ring_interaction_area(t.major_diameter, m.ring_width);
  EXPECT_NEAR(integral, analytic, 1e-6 * analytic);
  EXPECT_DOUBLE_EQ(m.interaction_area, analytic);
}

TEST(OpticalParams, Validation) {
  EXPECT_THROW(make_optical_params(850e-9, two_pi * 5e6, {0.9, 0.0}),
               std::invalid_argument);
  OpticalParams p = optics850();
  p.omega0 *= 1.001;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(ToroidGeometry, Validation) {
  EXPECT_THROW((ToroidGeometry{2.4e-6, 20e-6, 15e-9}.validate()), std::invalid_argument);
  EXPECT_THROW((ToroidGeometry{20e-6, 2.4e-6, 0.0}.validate()), std::invalid_argument);
}
