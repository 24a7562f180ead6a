#include "levymet/kernel.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "levymet/errors.hpp"
#include "levymet/specfun.hpp"

namespace levymet {
namespace {

double parse_number(std::string_view s, std::string_view whole) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw InvalidParams("malformed drift coefficient in '" + std::string(whole) + "'");
  }
  return v;
}

// shortest text that parses back to the same double
std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

DriftSpec DriftSpec::linear(double k) {
  DriftSpec d;
  d.kind_ = Kind::linear;
  d.c1_ = k;
  return d;
}

DriftSpec DriftSpec::cubic(double a, double b) {
  DriftSpec d;
  d.kind_ = Kind::cubic;
  d.c1_ = a;
  d.c3_ = b;
  return d;
}

DriftSpec DriftSpec::parse(std::string_view text) {
  if (text == "zero" || text == "0") return zero();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidParams("unknown drift preset '" + std::string(text) +
                        "' (expected zero, linear:k or cubic:a,b)");
  }
  const auto name = text.substr(0, colon);
  const auto args = text.substr(colon + 1);
  if (name == "linear") return linear(parse_number(args, text));
  if (name == "cubic") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw InvalidParams("cubic drift needs two coefficients: '" + std::string(text) + "'");
    }
    return cubic(parse_number(args.substr(0, comma), text),
                 parse_number(args.substr(comma + 1), text));
  }
  throw InvalidParams("unknown drift preset '" + std::string(text) + "'");
}

double DriftSpec::operator()(double x) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::linear:
      return c1_ * x;
    case Kind::cubic:
      return c1_ * x + c3_ * x * x * x;
  }
  return 0.0;
}

std::string DriftSpec::to_string() const {
  switch (kind_) {
    case Kind::zero:
      return "zero";
    case Kind::linear:
      return "linear:" + shortest(c1_);
    case Kind::cubic:
      return "cubic:" + shortest(c1_) + "," + shortest(c3_);
  }
  return "zero";
}

void ModelParams::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
    throw InvalidParams("alpha must lie in (0,1) or (1,2), got " + shortest(alpha));
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidParams("lambda must be finite and non-negative, got " + shortest(lambda));
  }
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw InvalidParams("intensity must be positive, got " + shortest(intensity));
  }
  if (!(diffusion >= 0.0) || !std::isfinite(diffusion)) {
    throw InvalidParams("diffusion must be non-negative, got " + shortest(diffusion));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidParams("half-width must be positive, got " + shortest(half_width));
  }
  for (double x : {-2.0 * half_width, 2.0 * half_width}) {
    if (!std::isfinite(drift(x))) throw InvalidParams("drift is not finite on [-2L, 2L]");
  }
}

double c_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
    throw DomainError("c_alpha: alpha must lie in (0,1) or (1,2), got " + shortest(alpha));
  }
  return 1.0 / (2.0 * std::abs(std::tgamma(-alpha)));
}

double levy_density(double y, const ModelParams& params) {
  if (y == 0.0) throw DomainError("levy_density: singular at y = 0");
  const double ay = std::abs(y);
  return c_alpha(params.alpha) * std::exp(-params.lambda * ay) * std::pow(ay, -1.0 - params.alpha);
}

double tail_mass(double distance, double alpha, double lambda) {
  if (!(distance > 0.0)) throw DomainError("tail_mass: distance must be positive");
  if (lambda == 0.0) return std::pow(distance, -alpha) / alpha;
  // substitute t = lambda y: lambda^alpha Gamma(-alpha, lambda distance)
  return std::pow(lambda, alpha) * specfun::whittaker_tail(1.0 + alpha, lambda * distance);
}

double tail_w(double x, Side side, const ModelParams& params) {
  const double L = params.half_width;
  if (!(std::abs(x) < L)) {
    throw DomainError("tail_w: x must lie strictly inside (-L, L), got " + shortest(x));
  }
  const double distance = side == Side::left ? L + x : L - x;
  return tail_mass(distance, params.alpha, params.lambda);
}

}  // namespace levymet
