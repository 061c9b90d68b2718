#pragma once

// Scalar root finding on a sign-changing bracket: safeguarded secant with
// bisection fallback. A bisection step is forced whenever the previous step
// failed to halve the bracket, so convergence is never slower than twice
// bisection. Terminates when the bracket width drops below
// rel_tol * max(|lo|, |hi|) (plus an absolute floor), so picometre-scale
// roots resolve correctly.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nfom::numerics {

struct RootOptions {
  double rel_tol = 1e-12;
  double f_tol = 0.0;  // optional |f| early-exit, 0 disables
  int max_iter = 256;
};

template <class F>
double find_root(F&& f, double lo, double hi, const RootOptions& opt = {}) {
  if (!(lo < hi)) throw std::invalid_argument("find_root: invalid bracket");
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!(fa * fb < 0.0))
    throw std::invalid_argument("find_root: no sign change on bracket");

  bool force_bisect = false;
  for (int it = 0; it < opt.max_iter; ++it) {
    const double width = b - a;
    const double width_tol =
        std::max(opt.rel_tol * std::max(std::abs(a), std::abs(b)),
                 8.0 * std::numeric_limits<double>::denorm_min());
    if (width <= width_tol) break;

    double x;
    if (!force_bisect && fb != fa) {
      x = (a * fb - b * fa) / (fb - fa);  // secant through the bracket ends
      const double margin = 1e-3 * width;
      if (!(x > a + margin && x < b - margin)) x = a + 0.5 * width;
    } else {
      x = a + 0.5 * width;
    }

    const double fx = f(x);
    if (fx == 0.0 || (opt.f_tol > 0.0 && std::abs(fx) <= opt.f_tol)) return x;
    if (fa * fx < 0.0) {
      b = x;
      fb = fx;
    } else {
      a = x;
      fa = fx;
    }
    force_bisect = (b - a) > 0.5 * width;
  }
  return a + 0.5 * (b - a);
}

}  // namespace nfom::numerics
