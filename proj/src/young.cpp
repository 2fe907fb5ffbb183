#include "campanato/young.hpp"

#include <cmath>
#include <numbers>

#include "campanato/error.hpp"
#include "campanato/io.hpp"

namespace campanato {

namespace {

double power_eval(double t, double p) {
  if (p == 1.0) return t;
  if (p == 2.0) return t * t;
  return std::pow(t, p);
}

double solve_unit_level(const std::function<double(double)>& phi) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 2100 && !(phi(hi) >= 1.0); ++i) hi *= 2.0;
  if (!(phi(hi) >= 1.0)) throw Error(ErrorKind::invalid_spec, "Young function never reaches 1");
  for (int i = 0; i < 2200 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (phi(mid) >= 1.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

YoungFunction::YoungFunction(Descriptor d, std::function<double(double)> fn)
    : descriptor_(std::move(d)), eval_(std::move(fn)) {
  validate();
  inverse_at_one_ = std::holds_alternative<Power>(descriptor_) ? 1.0 : solve_unit_level(eval_);
}

YoungFunction YoungFunction::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_spec, "power Young function needs p >= 1");
  return YoungFunction(Power{p}, [p](double t) { return power_eval(t, p); });
}

YoungFunction YoungFunction::power_log(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw Error(ErrorKind::invalid_spec, "power-log Young function needs p >= 1");
  return YoungFunction(PowerLog{p}, [p](double t) { return power_eval(t, p) * std::log(std::numbers::e + t); });
}

YoungFunction YoungFunction::exponential() {
  return YoungFunction(Exponential{}, [](double t) { return std::expm1(t); });
}

YoungFunction YoungFunction::custom(std::string name, std::function<double(double)> fn) {
  return YoungFunction(Custom{std::move(name)}, std::move(fn));
}

std::string YoungFunction::describe() const {
  struct {
    std::string operator()(const Power& d) const { return "power,p=" + format_round_trip(d.p); }
    std::string operator()(const PowerLog& d) const { return "powerlog,p=" + format_round_trip(d.p); }
    std::string operator()(const Exponential&) const { return "exp"; }
    std::string operator()(const Custom& d) const { return "custom," + d.name; }
  } visitor;
  return std::visit(visitor, descriptor_);
}

void YoungFunction::validate() const {
  if (eval_(0.0) != 0.0) throw Error(ErrorKind::invalid_spec, "Young function must vanish at 0");
  constexpr int kPoints = 64;
  constexpr double kTol = 1e-9;
  double prev_t = 0.0, prev_v = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double t = std::exp2(-20.0 + 40.0 * i / (kPoints - 1));
    const double v = eval_(t);
    if (std::isnan(v)) throw Error(ErrorKind::invalid_spec, "Young function returned NaN");
    if (!(v > 0.0)) throw Error(ErrorKind::invalid_spec, "Young function must be positive on (0, inf)");
    if (v < prev_v) throw Error(ErrorKind::invalid_spec, "Young function must be nondecreasing");
    if (std::isfinite(v)) {
      const double half = eval_(0.5 * t);
      if (half > 0.5 * v * (1.0 + kTol)) throw Error(ErrorKind::invalid_spec, "Young function is not convex");
      if (i > 0) {
        const double mid = eval_(0.5 * (prev_t + t));
        if (mid > 0.5 * (prev_v + v) * (1.0 + kTol))
          throw Error(ErrorKind::invalid_spec, "Young function is not convex");
      }
    }
    prev_t = t;
    prev_v = v;
  }
}

}  // namespace campanato
