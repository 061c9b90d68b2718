#pragma once

// Bridge coefficients eta^(m) between static and dynamic optomechanical
// coupling, single-photon coupling rates g1/g2, cooperativity, and
// misalignment thresholds.
//
// eta_ring:       delta-ring average of u^m over the cavity perimeter.
// eta_full:       Gaussian-ring-weighted average over the membrane footprint;
//                 converges to eta_ring as the ring width goes to zero.
// eta_misaligned: perimeter average with displaced/tilted membrane, the tilt
//                 entering through the gap factor exp(-[ax y' + ay x']/L).

#include <cmath>
#include <stdexcept>
#include <string>

#include "nfom/field.hpp"
#include "nfom/membrane.hpp"
#include "nfom/numerics/quadrature.hpp"
#include "nfom/numerics/roots.hpp"

namespace nfom {

struct Misalignment {
  double dx = 0.0;       // m
  double dy = 0.0;       // m
  double alpha_x = 0.0;  // rad, tilt about the x axis
  double alpha_y = 0.0;  // rad, tilt about the y axis

  bool is_zero() const {
    return dx == 0.0 && dy == 0.0 && alpha_x == 0.0 && alpha_y == 0.0;
  }

  void validate(const MembraneGeometry& g) const {
    const double lim = 0.25 * std::min(g.length_x, g.length_y);
    if (std::abs(dx) >= lim || std::abs(dy) >= lim)
      throw std::invalid_argument("Misalignment: displacement outside small-displacement validity");
    if (std::abs(alpha_x) >= 1e-3 || std::abs(alpha_y) >= 1e-3)
      throw std::invalid_argument("Misalignment: tilt outside small-angle validity");
  }
};

struct CouplingRates {
  double eta1 = 0.0;           // dimensionless
  double eta2 = 0.0;           // dimensionless
  double g1 = 0.0;             // rad/s
  double g2 = 0.0;             // rad/s, >= 0 for centered configurations
  double cooperativity = 0.0;  // 4 g1^2 / (kappa gamma_m)
};

// Default theta quadrature for the coupling integrals.
inline numerics::QuadratureSpec coupling_quadrature() {
  numerics::QuadratureSpec spec;
  spec.node_count = 256;
  spec.abs_tol = 1e-14;
  spec.rel_tol = 1e-10;
  return spec;
}

namespace detail {

// Mode shape extended by zero outside the membrane footprint: the coupling
// integrals only collect contributions where the membrane overlaps the ring.
inline double mode_shape_clipped(const MembraneGeometry& g, int j, int k,
                                 double x, double y) {
  if (std::abs(x) > 0.5 * g.length_x || std::abs(y) > 0.5 * g.length_y) return 0.0;
  return std::sin(j * constants::pi * (x / g.length_x + 0.5)) *
         std::sin(k * constants::pi * (y / g.length_y + 0.5));
}

inline void check_eta_args(const MembraneGeometry& membrane,
                           const ToroidGeometry& toroid, int j, int k, int m) {
  membrane.validate();
  toroid.validate();
  if (j < 1 || k < 1 || j > kMaxModeIndex || k > kMaxModeIndex)
    throw std::domain_error("eta: mode indices must be in [1, 50]");
  if (m != 1 && m != 2) throw std::domain_error("eta: order m must be 1 or 2");
}

}  // namespace detail

// Validity of the delta-ring approximation: membrane larger than the ring.
inline bool ring_inside_membrane(const MembraneGeometry& membrane,
                                 const ToroidGeometry& toroid) {
  return membrane.length_x > toroid.major_diameter &&
         membrane.length_y > toroid.major_diameter;
}

// eta^(m)_{j,k} = (1/2pi) \oint u^m(R cos t, R sin t) dt
inline double eta_ring(const MembraneGeometry& membrane, const ToroidGeometry& toroid,
                       int j, int k, int m,
                       const numerics::QuadratureSpec& spec = coupling_quadrature()) {
  detail::check_eta_args(membrane, toroid, j, k, m);
  const double radius = toroid.ring_radius();
  return numerics::integrate_periodic(
      [&](double theta) {
        const double u = detail::mode_shape_clipped(
            membrane, j, k, radius * std::cos(theta), radius * std::sin(theta));
        return m == 1 ? u : u * u;
      },
      spec);
}

// Gaussian-ring weighted average of f over the membrane footprint,
// normalized by the analytic ring area. Used by eta_full and its tests.
template <class F>
double gaussian_ring_average(F&& f, const MembraneGeometry& membrane,
                             const ToroidGeometry& toroid, const FieldModel& field,
                             const numerics::QuadratureSpec& spec) {
  const numerics::Rect footprint{-0.5 * membrane.length_x, 0.5 * membrane.length_x,
                                 -0.5 * membrane.length_y, 0.5 * membrane.length_y};
  const double area = ring_interaction_area(toroid.major_diameter, field.ring_width);
  const double integral = numerics::integrate_2d(
      [&](double x, double y) {
        return intensity_profile(field, toroid, x, y) * f(x, y);
      },
      footprint, spec);
  return integral / area;
}

// eta^(m) with the finite-width ring profile (full 2-D overlap integral).
inline double eta_full(const MembraneGeometry& membrane, const ToroidGeometry& toroid,
                       const FieldModel& field, int j, int k, int m,
                       const numerics::QuadratureSpec& spec = coupling_quadrature()) {
  detail::check_eta_args(membrane, toroid, j, k, m);
  return gaussian_ring_average(
      [&](double x, double y) {
        const double u = detail::mode_shape_clipped(membrane, j, k, x, y);
        return m == 1 ? u : u * u;
      },
      membrane, toroid, field, spec);
}

// eta^(m) for a displaced (dx, dy) and tilted (alpha_x, alpha_y) membrane:
// (1/2pi) \oint u^m(x', y') exp(-[ax y' + ay x']/L) dt,
// x'(t) = R cos t - dx, y'(t) = R sin t - dy.
inline double eta_misaligned(const MembraneGeometry& membrane,
                             const ToroidGeometry& toroid, const FieldModel& field,
                             int j, int k, int m, const Misalignment& mis,
                             const numerics::QuadratureSpec& spec = coupling_quadrature()) {
  detail::check_eta_args(membrane, toroid, j, k, m);
  mis.validate(membrane);
  const double radius = toroid.ring_radius();
  const double inv_l = 1.0 / field.decay_length;
  return numerics::integrate_periodic(
      [&](double theta) {
        const double xp = radius * std::cos(theta) - mis.dx;
        const double yp = radius * std::sin(theta) - mis.dy;
        const double u = detail::mode_shape_clipped(membrane, j, k, xp, yp);
        const double base = m == 1 ? u : u * u;
        if (base == 0.0) return 0.0;
        return base * std::exp(-(mis.alpha_x * yp + mis.alpha_y * xp) * inv_l);
      },
      spec);
}

// Single-photon rates at the configured gap:
//   g1 = eta1 x_zpf omega_s'(z0),  g2 = -eta2 x_zpf^2 omega_s''(z0),
//   C = 4 g1^2 / (kappa gamma_m).
inline CouplingRates coupling_rates(const MechanicalMode& mode, const FieldModel& field,
                                    const ToroidGeometry& toroid,
                                    const MembraneGeometry& membrane,
                                    const Misalignment& mis, double kappa,
                                    const numerics::QuadratureSpec& spec = coupling_quadrature()) {
  if (!(kappa > 0)) throw std::invalid_argument("coupling_rates: kappa must be > 0");
  if (!(mode.gamma_m > 0))
    throw std::invalid_argument("coupling_rates: gamma_m must be > 0");
  CouplingRates r;
  r.eta1 = eta_misaligned(membrane, toroid, field, mode.j, mode.k, 1, mis, spec);
  r.eta2 = eta_misaligned(membrane, toroid, field, mode.j, mode.k, 2, mis, spec);
  const StaticDerivatives d = static_derivatives(field, toroid.gap);
  r.g1 = r.eta1 * mode.x_zpf * d.first;
  r.g2 = -r.eta2 * mode.x_zpf * mode.x_zpf * d.second;
  r.cooperativity = 4.0 * r.g1 * r.g1 / (kappa * mode.gamma_m);
  return r;
}

// |g1/g2| for the given misalignment.
inline double linear_quadratic_ratio(const MechanicalMode& mode, const FieldModel& field,
                                     const ToroidGeometry& toroid,
                                     const MembraneGeometry& membrane,
                                     const Misalignment& mis, double kappa,
                                     const numerics::QuadratureSpec& spec = coupling_quadrature()) {
  const CouplingRates r = coupling_rates(mode, field, toroid, membrane, mis, kappa, spec);
  if (std::abs(r.eta2) < 1e-15)
    throw std::domain_error("quadratic coupling vanishes: |eta2| below 1e-15");
  return std::abs(r.g1 / r.g2);
}

enum class MisalignAxis { dy, alpha_x, dx, alpha_y };

inline const char* to_string(MisalignAxis a) {
  switch (a) {
    case MisalignAxis::dy: return "dy";
    case MisalignAxis::alpha_x: return "alpha_x";
    case MisalignAxis::dx: return "dx";
    case MisalignAxis::alpha_y: return "alpha_y";
  }
  return "?";
}

// Smallest positive value of the chosen misalignment component at which
// |g1/g2| crosses unity. Throws (bracketing error) when the ratio never
// reaches 1 inside [0, window] -- the flat directions do exactly that.
inline double misalignment_threshold(MisalignAxis axis, const MechanicalMode& mode,
                                     const FieldModel& field, const ToroidGeometry& toroid,
                                     const MembraneGeometry& membrane, double kappa,
                                     double window,
                                     const numerics::QuadratureSpec& spec = coupling_quadrature()) {
  if (!(window > 0)) throw std::invalid_argument("misalignment_threshold: window must be > 0");
  auto ratio_minus_one = [&](double v) {
    Misalignment mis;
    switch (axis) {
      case MisalignAxis::dy: mis.dy = v; break;
      case MisalignAxis::alpha_x: mis.alpha_x = v; break;
      case MisalignAxis::dx: mis.dx = v; break;
      case MisalignAxis::alpha_y: mis.alpha_y = v; break;
    }
    return linear_quadratic_ratio(mode, field, toroid, membrane, mis, kappa, spec) - 1.0;
  };
  numerics::RootOptions opt;
  opt.rel_tol = 1e-10;
  return numerics::find_root(ratio_minus_one, 0.0, window, opt);
}

}  // namespace nfom
