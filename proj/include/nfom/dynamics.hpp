#pragma once

// Application-layer figures of merit: OMIT transparency and group delay,
// switching thresholds, drive photon number, thermal occupation, the
// steady-state covariance of the linearized system, logarithmic negativity,
// and the per-phonon dispersive shift.
//
// Covariance conventions: quadratures (q, p, X, Y), mechanical pair in
// zero-point units and optical pair in vacuum units, so every vacuum
// variance is 1/2. Drift for pump detuning Delta (pump red of cavity for
// Delta = +omega_m), total linewidth kappa (FWHM), effective coupling
// G = sqrt(n) g1:
//
//   d/dt (q, p, X, Y) = A (q, p, X, Y) + noise,
//   A = [[0, wm, 0, 0], [-wm, -gm, 2G, 0], [0, 0, -k/2, Delta],
//        [2G, 0, -Delta, -k/2]],
//   D = diag(0, gm (2 nth + 1), k/2, k/2).
//
// The 2G off-diagonals follow from linearizing g (b + b†) a†a with vacuum-1/2
// quadratures; they reproduce the optomechanical damping n C gamma_m that the
// OMIT window width and group delay assume.

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "nfom/constants.hpp"
#include "nfom/membrane.hpp"
#include "nfom/numerics/linalg.hpp"

namespace nfom {

struct DriveConfig {
  double power = 0.0;          // W
  double wavelength = 850e-9;  // laser vacuum wavelength, m
  double detuning = 0.0;       // pump relative to cavity, rad/s
  double kappa = 0.0;          // total cavity linewidth, rad/s
  double kappa_ext = 0.0;      // external (taper) contribution, rad/s

  void validate() const {
    if (!(kappa > 0) || !(kappa_ext > 0) || kappa_ext > kappa)
      throw std::invalid_argument("DriveConfig: need 0 < kappa_ext <= kappa");
    if (power < 0) throw std::invalid_argument("DriveConfig: power must be >= 0");
    if (!(wavelength > 0))
      throw std::invalid_argument("DriveConfig: wavelength must be > 0");
  }
};

// Bose occupation of the mechanical bath; 0 at T = 0.
inline double thermal_occupation(double omega_m, double temperature) {
  if (!(omega_m > 0)) throw std::invalid_argument("thermal_occupation: omega_m must be > 0");
  if (temperature < 0)
    throw std::invalid_argument("thermal_occupation: temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  const double x = constants::hbar * omega_m / (constants::k_boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

// Intracavity mean photon number from the input-output relation:
// n = P kext / (hbar wL (Delta^2 + (kappa/2)^2)).
inline double drive_photon_number(const DriveConfig& d) {
  d.validate();
  const double omega_laser = constants::two_pi * constants::speed_of_light / d.wavelength;
  const double half_k = 0.5 * d.kappa;
  return d.power * d.kappa_ext /
         (constants::hbar * omega_laser * (d.detuning * d.detuning + half_k * half_k));
}

// Peak transmission of the transparency window at critical coupling:
// (nC)^2 / (nC + 1)^2.
inline double transparency_peak(double n, double cooperativity) {
  if (n < 0 || cooperativity < 0)
    throw std::invalid_argument("transparency_peak: n and C must be >= 0");
  const double nc = n * cooperativity;
  return nc * nc / ((nc + 1.0) * (nc + 1.0));
}

// Resonant-probe group delay 2/(n C gamma_m); meaningful for n C >> 1.
inline double group_delay(double n, double cooperativity, double gamma_m) {
  if (!(n > 0) || !(cooperativity > 0) || !(gamma_m > 0))
    throw std::invalid_argument("group_delay: inputs must be > 0");
  return 2.0 / (n * cooperativity * gamma_m);
}

// Photons required in the control pulse: (omega_m^2 + kappa^2/4)/g1^2.
inline double control_pulse_photon_threshold(double omega_m, double kappa, double g1) {
  if (!(omega_m > 0) || !(kappa > 0) || !(g1 > 0))
    throw std::invalid_argument("control_pulse_photon_threshold: inputs must be > 0");
  return (omega_m * omega_m + 0.25 * kappa * kappa) / (g1 * g1);
}

// Switching threshold N_c = (kappa/g1)^2.
inline double switching_threshold(double kappa, double g1) {
  if (!(kappa > 0) || !(g1 > 0))
    throw std::invalid_argument("switching_threshold: inputs must be > 0");
  const double r = kappa / g1;
  return r * r;
}

struct OmitPoint {
  double detuning;      // probe detuning from cavity resonance, rad/s
  double transmission;  // power transmission, [0, 1]
};

struct OmitResult {
  double peak_transmission = 0.0;  // on-resonance value
  double group_delay = 0.0;        // s
  std::vector<OmitPoint> spectrum;
  bool regime_ok = true;  // omega_m > kappa > sqrt(n) g1 > gamma_m
};

// Probe power transmission for a red-sideband pump at the given coupling.
// Resolved-sideband linearized input-output lineshape:
//   t(d) = 1 - kext / (kappa/2 - i d + G^2 / (gamma_m/2 - i d)),  G = sqrt(n) g1.
// The on-resonance value equals transparency_peak(n, C) identically at
// critical coupling.
inline OmitResult omit_spectrum(const MechanicalMode& mode, double g1, double n,
                                const DriveConfig& drive,
                                std::span<const double> probe_detunings) {
  drive.validate();
  if (n < 0) throw std::invalid_argument("omit_spectrum: n must be >= 0");
  if (g1 < 0) throw std::invalid_argument("omit_spectrum: g1 must be >= 0");
  if (!(mode.gamma_m > 0))
    throw std::invalid_argument("omit_spectrum: gamma_m must be > 0");

  const double coupling = std::sqrt(n) * g1;
  OmitResult result;
  result.regime_ok = mode.omega_m > drive.kappa && drive.kappa > coupling &&
                     coupling > mode.gamma_m;

  const double g2n = coupling * coupling;
  auto transmission = [&](double delta) {
    const std::complex<double> den =
        std::complex<double>(0.5 * drive.kappa, -delta) +
        g2n / std::complex<double>(0.5 * mode.gamma_m, -delta);
    const std::complex<double> t = 1.0 - drive.kappa_ext / den;
    return std::norm(t);
  };

  result.spectrum.reserve(probe_detunings.size());
  for (double d : probe_detunings) result.spectrum.push_back({d, transmission(d)});
  result.peak_transmission = transmission(0.0);

  const double coop = 4.0 * g1 * g1 / (drive.kappa * mode.gamma_m);
  result.group_delay = n * coop > 0 ? 2.0 / (n * coop * mode.gamma_m) : 0.0;
  return result;
}

struct CovarianceState {
  numerics::Matrix4 V;   // symmetric, ordering (q, p, X, Y)
  double E_N = 0.0;      // logarithmic negativity
  double n_th = 0.0;     // bath occupation used
  double G = 0.0;        // effective coupling sqrt(n) g1, rad/s
};

namespace detail {

struct SymplecticPair {
  double nu_minus;
  double nu_plus;
};

// Symplectic eigenvalues of a two-mode covariance matrix from the invariants
// Sigma = det A + det B + 2 s det C (s = +1) or of the partial transpose
// (s = -1).
inline SymplecticPair symplectic_eigenvalues(const numerics::Matrix4& v, double s) {
  const double det_a = numerics::block2_det(v, 0, 0);
  const double det_b = numerics::block2_det(v, 2, 2);
  const double det_c = v(0, 2) * v(1, 3) - v(0, 3) * v(1, 2);
  const double det_v = numerics::det4(v);
  const double sigma = det_a + det_b + 2.0 * s * det_c;
  const double disc = std::max(0.0, sigma * sigma - 4.0 * det_v);
  const double root = std::sqrt(disc);
  const double lo = 0.5 * (sigma - root);
  const double hi = 0.5 * (sigma + root);
  return {std::sqrt(std::max(0.0, lo)), std::sqrt(std::max(0.0, hi))};
}

}  // namespace detail

// Physicality: V symmetric and V + (i/2) Omega >= 0, i.e. both symplectic
// eigenvalues >= 1/2 in the vacuum-1/2 convention.
inline bool is_physical_covariance(const numerics::Matrix4& v, double tol = 1e-9) {
  if (!v.all_finite()) return false;
  for (int r = 0; r < 4; ++r)
    for (int c = r + 1; c < 4; ++c)
      if (std::abs(v(r, c) - v(c, r)) > tol * std::max(1.0, v.max_abs())) return false;
  const auto nu = detail::symplectic_eigenvalues(v, +1.0);
  return nu.nu_minus >= 0.5 * (1.0 - tol);
}

// E_N = max(0, -ln 2 eta-) with eta- the smaller symplectic eigenvalue of
// the partially transposed covariance matrix.
inline double logarithmic_negativity(const numerics::Matrix4& v) {
  if (!is_physical_covariance(v))
    throw std::domain_error("logarithmic_negativity: unphysical covariance matrix");
  const auto nu = detail::symplectic_eigenvalues(v, -1.0);
  if (!(nu.nu_minus > 0.0))
    throw std::domain_error("logarithmic_negativity: degenerate covariance matrix");
  return std::max(0.0, -std::log(2.0 * nu.nu_minus));
}

inline double logarithmic_negativity(const CovarianceState& s) {
  return logarithmic_negativity(s.V);
}

// Drift matrix of the linearized dynamics (see header comment).
inline numerics::Matrix4 drift_matrix(double omega_m, double gamma_m, double coupling_G,
                                      double detuning, double kappa) {
  numerics::Matrix4 a;
  a(0, 1) = omega_m;
  a(1, 0) = -omega_m;
  a(1, 1) = -gamma_m;
  a(1, 2) = 2.0 * coupling_G;
  a(2, 2) = -0.5 * kappa;
  a(2, 3) = detuning;
  a(3, 0) = 2.0 * coupling_G;
  a(3, 2) = -detuning;
  a(3, 3) = -0.5 * kappa;
  return a;
}

// Steady-state covariance of the linearized optomechanical system.
// Throws UnstableDynamicsError in the parametric-instability regime.
inline CovarianceState steady_covariance(const MechanicalMode& mode, double coupling_G,
                                         double detuning, double kappa, double n_th) {
  if (!(kappa > 0)) throw std::invalid_argument("steady_covariance: kappa must be > 0");
  if (coupling_G < 0 || n_th < 0)
    throw std::invalid_argument("steady_covariance: G and n_th must be >= 0");
  if (!(mode.omega_m > 0) || mode.gamma_m < 0)
    throw std::invalid_argument("steady_covariance: invalid mechanical mode");

  const numerics::Matrix4 a =
      drift_matrix(mode.omega_m, mode.gamma_m, coupling_G, detuning, kappa);
  const numerics::Matrix4 d = numerics::Matrix4::diagonal(
      0.0, mode.gamma_m * (2.0 * n_th + 1.0), 0.5 * kappa, 0.5 * kappa);

  CovarianceState state;
  state.V = numerics::solve_lyapunov(a, d);
  state.n_th = n_th;
  state.G = coupling_G;
  state.E_N = logarithmic_negativity(state.V);
  return state;
}

struct QndShift {
  double shift_per_phonon;  // magnitude of the cavity shift per phonon, rad/s
  bool resolved_sideband;   // omega_m >> kappa validity flag
};

// Per-phonon dispersive shift from the quadratic interaction
// H = -hbar g2 (b†b + 1/2) a†a: one added phonon moves the cavity by -g2;
// the magnitude is reported, the sign is fixed by that Hamiltonian.
inline QndShift qnd_shift_per_phonon(double g2, double omega_m, double kappa) {
  if (g2 < 0) throw std::invalid_argument("qnd_shift_per_phonon: g2 must be >= 0");
  return {g2, omega_m > 10.0 * kappa};
}

}  // namespace nfom
