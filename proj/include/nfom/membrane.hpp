#pragma once

// Mechanical eigenmodes of a rectangular stressed membrane clamped on all
// four edges: eigenfrequencies, sine mode shapes, effective mass and
// zero-point amplitude.

#include <cmath>
#include <stdexcept>

#include "nfom/constants.hpp"

namespace nfom {

inline constexpr int kMaxModeIndex = 50;  // bounds sweep sizes

struct MembraneGeometry {
  double length_x;  // m
  double length_y;  // m
  double thickness; // m
  double density;   // kg/m^3
  double tension;   // Pa (tensile stress)

  void validate() const {
    if (!(length_x > 0) || !(length_y > 0) || !(thickness > 0) ||
        !(density > 0) || !(tension > 0))
      throw std::invalid_argument("MembraneGeometry: all dimensions and material constants must be > 0");
  }

  // Thin-membrane validity: h << l_x, l_y.
  bool is_thin() const { return thickness < 0.01 * std::min(length_x, length_y); }
};

struct MechanicalMode {
  int j = 0;
  int k = 0;
  double omega_m = 0.0;  // rad/s
  double m_eff = 0.0;    // kg
  double x_zpf = 0.0;    // m
  double gamma_m = 0.0;  // rad/s
};

namespace detail {
inline void check_indices(int j, int k) {
  if (j < 1 || k < 1) throw std::domain_error("mode indices must be >= 1");
  if (j > kMaxModeIndex || k > kMaxModeIndex)
    throw std::domain_error("mode indices capped at 50 per axis");
}
}  // namespace detail

// omega_m(j,k) = 2pi sqrt(T/4rho) sqrt(j^2/lx^2 + k^2/ly^2)
inline double eigenfrequency(const MembraneGeometry& g, int j, int k) {
  g.validate();
  detail::check_indices(j, k);
  const double speed = std::sqrt(g.tension / (4.0 * g.density));
  const double jx = j / g.length_x;
  const double ky = k / g.length_y;
  return constants::two_pi * speed * std::sqrt(jx * jx + ky * ky);
}

// u_{j,k}(x, y) = sin[j pi (x/lx + 1/2)] sin[k pi (y/ly + 1/2)], clamped edges.
inline double mode_shape(const MembraneGeometry& g, int j, int k, double x, double y) {
  g.validate();
  detail::check_indices(j, k);
  if (std::abs(x) > 0.5 * g.length_x || std::abs(y) > 0.5 * g.length_y)
    throw std::domain_error("mode_shape: point outside the membrane");
  return std::sin(j * constants::pi * (x / g.length_x + 0.5)) *
         std::sin(k * constants::pi * (y / g.length_y + 0.5));
}

// Effective mass is 1/4 of the physical mass, independent of (j, k).
inline double effective_mass(const MembraneGeometry& g) {
  g.validate();
  return g.density * g.length_x * g.length_y * g.thickness / 4.0;
}

inline double zero_point_amplitude(double m_eff, double omega_m) {
  if (!(m_eff > 0) || !(omega_m > 0))
    throw std::invalid_argument("zero_point_amplitude: m_eff and omega_m must be > 0");
  return std::sqrt(constants::hbar / (2.0 * m_eff * omega_m));
}

inline MechanicalMode build_mode(const MembraneGeometry& g, int j, int k,
                                 double quality_factor) {
  if (!(quality_factor > 0))
    throw std::invalid_argument("build_mode: quality_factor must be > 0");
  MechanicalMode m;
  m.j = j;
  m.k = k;
  m.omega_m = eigenfrequency(g, j, k);
  m.m_eff = effective_mass(g);
  m.x_zpf = zero_point_amplitude(m.m_eff, m.omega_m);
  m.gamma_m = m.omega_m / quality_factor;
  return m;
}

}  // namespace nfom
