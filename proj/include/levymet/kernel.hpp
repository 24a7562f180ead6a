#pragma once

// Tempered Levy measure, its normalization, and the boundary tail terms that
// every solver uses for the mass jumping out of the domain.

#include <string>
#include <string_view>

namespace levymet {

/// Deterministic drift preset. The CLI spells these `zero`, `linear:k`,
/// `cubic:a,b`.
class DriftSpec {
 public:
  enum class Kind { zero, linear, cubic };

  static DriftSpec zero() { return {}; }
  /// f(x) = k x
  static DriftSpec linear(double k);
  /// f(x) = a x + b x^3
  static DriftSpec cubic(double a, double b);
  /// Parses the CLI spelling; throws InvalidParams on malformed input.
  static DriftSpec parse(std::string_view text);

  double operator()(double x) const;
  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::zero; }
  /// Round-trips through parse() exactly.
  std::string to_string() const;

  bool operator==(const DriftSpec&) const = default;

 private:
  Kind kind_ = Kind::zero;
  double c1_ = 0.0;
  double c3_ = 0.0;
};

/// Full problem description shared by the 1D, 2D and Monte Carlo paths.
struct ModelParams {
  double alpha = 0.5;       ///< stable index, (0,1) or (1,2)
  double lambda = 0.0;      ///< tempering rate; 0 selects the pure stable case
  double intensity = 1.0;   ///< jump intensity (multiplies the Levy measure)
  double diffusion = 0.0;   ///< Brownian coefficient d, generator term d/2 u''
  DriftSpec drift;
  double half_width = 1.0;  ///< domain (-L, L), square (-L, L)^2 or disc of radius L

  /// Throws InvalidParams when any field is outside its admissible range.
  void validate() const;
};

enum class Side { left, right };

/// 1 / (2 |Gamma(-alpha)|).
double c_alpha(double alpha);

/// Density of the symmetric tempered measure, c_alpha e^(-lambda|y|) |y|^(-1-alpha).
/// Intensity is not included.
double levy_density(double y, const ModelParams& params);

/// int_distance^inf e^(-lambda y) y^(-1-alpha) dy for distance > 0.
/// lambda = 0 uses the closed form distance^(-alpha) / alpha.
double tail_mass(double distance, double alpha, double lambda);

/// Boundary tail terms for x in (-L, L):
///   left  (W1): int_{L+x}^inf e^(-lambda y) y^(-1-alpha) dy
///   right (W2): int_{L-x}^inf e^(-lambda y) y^(-1-alpha) dy
double tail_w(double x, Side side, const ModelParams& params);

}  // namespace levymet
