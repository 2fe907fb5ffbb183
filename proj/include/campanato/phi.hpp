#pragma once

#include <functional>
#include <string>
#include <variant>

#include "campanato/grid.hpp"

namespace campanato {

/// Positive φ(x, r) on [0,1)^n × (0, ∞). On a cube, φ(Q) = φ(center, ℓ(Q)/2).
class PhiParameter {
 public:
  struct Constant {};
  struct Power {  // (2r)^-θ, so that φ(Q) = ℓ(Q)^-θ
    double theta;
  };
  struct Oscillating {  // (1 + sin²(π x₁)) (2r)^-θ
    double theta;
  };
  struct Custom {
    std::string name;
  };
  using Descriptor = std::variant<Constant, Power, Oscillating, Custom>;

  static PhiParameter constant();
  static PhiParameter power(double theta);
  static PhiParameter oscillating(double theta);
  static PhiParameter custom(std::string name, std::function<double(const Point&, double)> fn);

  double operator()(const Point& x, double r) const;
  double operator()(const Cube& q) const { return (*this)(q.center(), 0.5 * q.side_length()); }

  const Descriptor& descriptor() const noexcept { return descriptor_; }
  std::string describe() const;

 private:
  PhiParameter(Descriptor d, std::function<double(const Point&, double)> fn)
      : descriptor_(std::move(d)), eval_(std::move(fn)) {}

  Descriptor descriptor_;
  std::function<double(const Point&, double)> eval_;
};

}  // namespace campanato
