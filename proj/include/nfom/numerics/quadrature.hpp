#pragma once

// Adaptive quadrature kernels.
//
// integrate_periodic: equal-spaced trapezoid rule for the mean of a smooth
// 2pi-periodic function. On periodic integrands the trapezoid rule is
// spectrally accurate, and it is exact for trigonometric polynomials of
// degree < N/2. Refinement doubles the node count, reusing previous
// evaluations, until two successive estimates agree within tolerance.
//
// integrate_2d: tensor-product composite 8-point Gauss-Legendre over a
// rectangle, refined by doubling the panel count per axis. Chosen over a
// plain trapezoid tensor because the ring-profile integrands have features
// (the Gaussian ring width) much narrower than the membrane footprint.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nfom::numerics {

struct QuadratureSpec {
  int node_count = 64;     // initial nodes (per axis for integrate_2d)
  double abs_tol = 1e-14;
  double rel_tol = 1e-10;

  void validate() const {
    if (node_count < 8 || node_count % 2 != 0)
      throw std::invalid_argument("QuadratureSpec: node_count must be >= 8 and even");
    if (abs_tol < 0 || rel_tol < 0)
      throw std::invalid_argument("QuadratureSpec: tolerances must be >= 0");
    if (abs_tol == 0 && rel_tol == 0)
      throw std::invalid_argument("QuadratureSpec: at least one tolerance must be > 0");
  }
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double previous, double last)
      : std::runtime_error(what + " (last estimates " + std::to_string(previous) +
                           ", " + std::to_string(last) + ")"),
        previous_(previous),
        last_(last) {}

  double previous_estimate() const { return previous_; }
  double last_estimate() const { return last_; }

 private:
  double previous_;
  double last_;
};

inline constexpr int kMaxPeriodicNodes = 1 << 16;
inline constexpr int kMaxPanelsPerAxis = 1 << 10;  // 8 Gauss nodes per panel

namespace detail {

inline bool converged(double previous, double current, const QuadratureSpec& spec) {
  return std::abs(current - previous) <=
         std::max(spec.abs_tol, spec.rel_tol * std::abs(current));
}

template <class F>
double periodic_mean(F&& f, int n, double offset) {
  // Mean of f over n equally spaced nodes theta = 2pi*(i + offset)/n.
  const double step = 2.0 * std::numbers::pi / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = f(step * (i + offset));
    if (!std::isfinite(v))
      throw std::invalid_argument("integrate_periodic: integrand not finite");
    sum += v;
  }
  return sum / n;
}

}  // namespace detail

// Mean value (1/2pi) \oint f(theta) dtheta over [0, 2pi).
template <class F>
double integrate_periodic(F&& f, const QuadratureSpec& spec = {}) {
  spec.validate();
  int n = spec.node_count;
  double estimate = detail::periodic_mean(f, n, 0.0);
  while (true) {
    // Doubling adds the midpoints; the refined mean is the average of the
    // coarse mean and the midpoint mean.
    const double midpoints = detail::periodic_mean(f, n, 0.5);
    const double refined = 0.5 * (estimate + midpoints);
    if (detail::converged(estimate, refined, spec)) return refined;
    n *= 2;
    if (n >= kMaxPeriodicNodes)
      throw QuadratureError("quadrature failure: integrate_periodic did not converge",
                            estimate, refined);
    estimate = refined;
  }
}

struct Rect {
  double x_lo, x_hi;
  double y_lo, y_hi;

  void validate() const {
    if (!(x_hi > x_lo) || !(y_hi > y_lo))
      throw std::invalid_argument("Rect: degenerate integration domain");
  }
};

namespace detail {

// 8-point Gauss-Legendre abscissae/weights on [-1, 1].
inline constexpr double kGauss8X[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
inline constexpr double kGauss8W[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

inline void gauss_nodes(double lo, double hi, int panels,
                        std::vector<double>& x, std::vector<double>& w) {
  const double h = (hi - lo) / panels;
  x.resize(static_cast<std::size_t>(panels) * 8);
  w.resize(x.size());
  std::size_t idx = 0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (int g = 0; g < 8; ++g, ++idx) {
      x[idx] = mid + 0.5 * h * kGauss8X[g];
      w[idx] = 0.5 * h * kGauss8W[g];
    }
  }
}

template <class F>
double tensor_gauss(F&& f, const Rect& dom, int panels) {
  std::vector<double> xs, wx, ys, wy;
  gauss_nodes(dom.x_lo, dom.x_hi, panels, xs, wx);
  gauss_nodes(dom.y_lo, dom.y_hi, panels, ys, wy);
  double total = 0.0;
  for (std::size_t iy = 0; iy < ys.size(); ++iy) {
    double row = 0.0;
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      const double v = f(xs[ix], ys[iy]);
      if (!std::isfinite(v))
        throw std::invalid_argument("integrate_2d: integrand not finite");
      row += wx[ix] * v;
    }
    total += wy[iy] * row;
  }
  return total;
}

}  // namespace detail

// Integral of f over the rectangle, refined to tolerance.
template <class F>
double integrate_2d(F&& f, const Rect& dom, const QuadratureSpec& spec = {}) {
  spec.validate();
  dom.validate();
  int panels = std::max(1, spec.node_count / 8);
  double estimate = detail::tensor_gauss(f, dom, panels);
  while (true) {
    const double refined = detail::tensor_gauss(f, dom, 2 * panels);
    if (detail::converged(estimate, refined, spec)) return refined;
    panels *= 2;
    if (panels >= kMaxPanelsPerAxis)
      throw QuadratureError("quadrature failure: integrate_2d did not converge",
                            estimate, refined);
    estimate = refined;
  }
}

}  // namespace nfom::numerics
