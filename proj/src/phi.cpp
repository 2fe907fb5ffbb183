#include "campanato/phi.hpp"

#include <cmath>
#include <numbers>

#include "campanato/error.hpp"
#include "campanato/io.hpp"

namespace campanato {

namespace {

double scale_factor(double r, double theta) {
  if (theta == 0.0) return 1.0;
  return std::pow(2.0 * r, -theta);
}

void require_theta(double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorKind::invalid_spec, "phi exponent must be finite");
}

}  // namespace

PhiParameter PhiParameter::constant() {
  return PhiParameter(Constant{}, [](const Point&, double) { return 1.0; });
}

PhiParameter PhiParameter::power(double theta) {
  require_theta(theta);
  return PhiParameter(Power{theta}, [theta](const Point&, double r) { return scale_factor(r, theta); });
}

PhiParameter PhiParameter::oscillating(double theta) {
  require_theta(theta);
  return PhiParameter(Oscillating{theta}, [theta](const Point& x, double r) {
    const double s = std::sin(std::numbers::pi * x[0]);
    return (1.0 + s * s) * scale_factor(r, theta);
  });
}

PhiParameter PhiParameter::custom(std::string name, std::function<double(const Point&, double)> fn) {
  return PhiParameter(Custom{std::move(name)}, std::move(fn));
}

double PhiParameter::operator()(const Point& x, double r) const {
  const double v = eval_(x, r);
  if (!(v > 0.0) || !std::isfinite(v))
    throw Error(ErrorKind::invalid_spec, "phi must be positive and finite, got " + format_round_trip(v));
  return v;
}

std::string PhiParameter::describe() const {
  struct {
    std::string operator()(const Constant&) const { return "constant"; }
    std::string operator()(const Power& d) const { return "power:theta=" + format_round_trip(d.theta); }
    std::string operator()(const Oscillating& d) const { return "oscillating:theta=" + format_round_trip(d.theta); }
    std::string operator()(const Custom& d) const { return "custom:" + d.name; }
  } visitor;
  return std::visit(visitor, descriptor_);
}

}  // namespace campanato
