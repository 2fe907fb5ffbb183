#pragma once

#include <functional>
#include <string>
#include <variant>

namespace campanato {

/// Convex Φ: [0,∞) → [0,∞) with Φ(0) = 0 and Φ > 0 on (0,∞).
///
/// Construction checks Φ(0) = 0, positivity, monotonicity and midpoint
/// convexity at 64 log-spaced points in [2^-20, 2^20] (relative tolerance
/// 1e-9) and throws ErrorKind::invalid_spec when any of them fails.
class YoungFunction {
 public:
  struct Power {  // t^p
    double p;
  };
  struct PowerLog {  // t^p log(e + t)
    double p;
  };
  struct Exponential {};  // e^t - 1
  struct Custom {
    std::string name;
  };
  using Descriptor = std::variant<Power, PowerLog, Exponential, Custom>;

  static YoungFunction power(double p);
  static YoungFunction power_log(double p);
  static YoungFunction exponential();
  static YoungFunction custom(std::string name, std::function<double(double)> fn);

  double operator()(double t) const { return eval_(t); }

  // Φ^{-1}(1), the unique t with Φ(t) = 1.
  double inverse_at_one() const noexcept { return inverse_at_one_; }
  const Descriptor& descriptor() const noexcept { return descriptor_; }
  std::string describe() const;

 private:
  YoungFunction(Descriptor d, std::function<double(double)> fn);
  void validate() const;

  Descriptor descriptor_;
  std::function<double(double)> eval_;
  double inverse_at_one_ = 1.0;
};

}  // namespace campanato
