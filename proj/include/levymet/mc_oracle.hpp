#pragma once

// Monte Carlo estimate of the mean exit time: Euler steps of
// dX = f(X) dt + sqrt(d) dB + dL with exit detected after each step.
//
// 1D increments are exact. A symmetric tempered stable increment is the
// difference of two independent one-sided ones, and a one-sided tempered
// stable law is an exponentially tilted totally skewed stable law, drawn by
// Chambers-Mallows-Stuck plus rejection. Isotropic 2D increments use
// compound-Poisson big jumps plus a Gaussian stand-in for jumps below a
// cutoff; the horizontal-vertical case draws one 1D increment per axis.

#include <array>
#include <cstdint>
#include <random>

#include "levymet/kernel.hpp"

namespace levymet {

enum class Geometry { interval, square, disc };

struct McConfig {
  int n_paths = 10000;
  double dt = 1e-3;
  double t_max = 200.0;  ///< censoring horizon
  std::uint64_t seed = 1;
  /// Paths are split into this many independently seeded shards; the
  /// estimate depends on the shard count but not on the thread count.
  int shards = 64;
  int threads = 0;  ///< 0 picks std::thread::hardware_concurrency()

  /// Throws InvalidParams unless n_paths >= 100, 0 < dt <= 1e-2, t_max > dt.
  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  ///< sample standard deviation / sqrt(n_paths)
  int n_paths = 0;
  double censored_fraction = 0.0;  ///< censored paths enter the mean at t_max
};

/// One increment of the 1D symmetric tempered stable process over dt
/// (intensity included). lambda = 0 returns a plain symmetric stable draw.
/// Throws ConvergenceError if the rejection loop exceeds its cap.
class IncrementSampler1D {
 public:
  IncrementSampler1D(const ModelParams& params, double dt);
  double operator()(std::mt19937_64& rng) const;

 private:
  double one_sided(std::mt19937_64& rng) const;

  double alpha_;
  double lambda_;
  double scale_sym_;   // scale of the symmetric stable draw (lambda = 0)
  double scale_one_;   // scale of each one-sided draw
  double shift_;       // rejection threshold s0: accept with e^(-lambda (S - s0))
};

/// Isotropic 2D increment over dt for the measure
/// intensity C~ e^(-lambda|y|) |y|^(-2-alpha) dy.
class IncrementSamplerIso {
 public:
  IncrementSamplerIso(const ModelParams& params, double dt);
  std::array<double, 2> operator()(std::mt19937_64& rng) const;

  double cutoff() const { return cutoff_; }

 private:
  double alpha_;
  double lambda_;
  double cutoff_;       // jumps shorter than this are replaced by a Gaussian
  double jump_rate_dt_; // expected number of big jumps per step
  double small_sd_;     // per-component standard deviation of the small jumps
};

/// Uniform on the open interval (0, 1).
double open_uniform(std::mt19937_64& rng);

/// Convenience wrapper around IncrementSampler1D.
double sample_increment(const ModelParams& params, double dt, std::mt19937_64& rng);

/// x0 must lie strictly inside the domain; its second coordinate is ignored
/// for the interval. Throws DomainError for x0 outside, InvalidParams for a
/// bad config, ConvergenceError when every path is censored.
McEstimate estimate_met(std::array<double, 2> x0, Geometry geometry, const ModelParams& params,
                        const McConfig& cfg);

}  // namespace levymet
