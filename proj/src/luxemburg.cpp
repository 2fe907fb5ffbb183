#include <cmath>
#include <string>

#include "campanato/error.hpp"
#include "campanato/spaces.hpp"

namespace campanato {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kBracketTolerance = 1e-12;
constexpr double kResidualTolerance = 1e-14;

}  // namespace

double solve_luxemburg(const std::function<double(double)>& log_modular, double log_scale) {
  if (!std::isfinite(log_scale)) throw Error(ErrorKind::numeric_failure, "non-finite Luxemburg scale");

  // Bracket [lo, hi] in u = log λ with ψ(lo) > 0 ≥ ψ(hi). Steps grow
  // geometrically so even extreme scales are reached in a few dozen calls.
  double hi = log_scale, psi_hi = log_modular(hi);
  double lo = log_scale, psi_lo = psi_hi;
  if (std::isnan(psi_hi)) throw Error(ErrorKind::numeric_failure, "modular evaluated to NaN");
  double step = 1.0;
  int guard = 0;
  if (psi_hi > 0.0) {
    while (psi_hi > 0.0) {
      lo = hi;
      psi_lo = psi_hi;
      hi += step;
      step *= 2.0;
      psi_hi = log_modular(hi);
      if (++guard > 64 || std::isnan(psi_hi))
        throw Error(ErrorKind::numeric_failure, "cannot bracket Luxemburg norm from above");
    }
  } else {
    while (!(psi_lo > 0.0)) {
      hi = lo;
      psi_hi = psi_lo;
      lo -= step;
      step *= 2.0;
      psi_lo = log_modular(lo);
      if (++guard > 64 || std::isnan(psi_lo))
        throw Error(ErrorKind::numeric_failure, "cannot bracket Luxemburg norm from below");
    }
  }

  int retained = 0;  // +1 when lo moved last, -1 when hi moved last
  for (int it = 0; it < kMaxIterations; ++it) {
    if (-std::expm1(lo - hi) <= kBracketTolerance) return std::exp(hi);
    double u = 0.5 * (lo + hi);
    if (std::isfinite(psi_lo) && std::isfinite(psi_hi)) {
      const double secant = (lo * psi_hi - hi * psi_lo) / (psi_hi - psi_lo);
      if (secant > lo && secant < hi) u = secant;
    }
    const double psi = log_modular(u);
    if (std::isnan(psi)) throw Error(ErrorKind::numeric_failure, "modular evaluated to NaN");
    if (std::fabs(psi) <= kResidualTolerance) return std::exp(u);
    if (psi > 0.0) {
      lo = u;
      psi_lo = psi;
      if (retained == 1) psi_hi *= 0.5;
      retained = 1;
    } else {
      hi = u;
      psi_hi = psi;
      if (retained == -1) psi_lo *= 0.5;
      retained = -1;
    }
  }
  throw Error(ErrorKind::numeric_failure,
              "Luxemburg iteration did not converge in " + std::to_string(kMaxIterations) + " steps");
}

}  // namespace campanato
