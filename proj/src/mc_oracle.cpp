#include "levymet/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "levymet/errors.hpp"
#include "levymet/solver2d_iso.hpp"
#include "levymet/specfun.hpp"

namespace levymet {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxRejections = 100000;
// For alpha > 1 the skewed stable law has a left tail decaying like
// exp(-c |x|^(alpha/(alpha-1))); below -kLeftCut scales it is negligible.
constexpr double kLeftCut = 6.0;

// Chambers-Mallows-Stuck draw from S_alpha(1, beta, 0), alpha != 1.
double cms(double alpha, double beta, std::mt19937_64& rng) {
  const double v = kPi * (open_uniform(rng) - 0.5);
  const double w = -std::log(open_uniform(rng));
  const double t = beta * std::tan(0.5 * kPi * alpha);
  const double b = std::atan(t) / alpha;
  const double s = std::pow(1.0 + t * t, 0.5 / alpha);
  const double av = alpha * (v + b);
  return s * std::sin(av) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos(v - av) / w, (1.0 - alpha) / alpha);
}

int poisson(double mean, std::mt19937_64& rng) {
  return std::poisson_distribution<int>(mean)(rng);
}

bool inside(Geometry g, double L, double x1, double x2) {
  switch (g) {
    case Geometry::interval: return std::abs(x1) < L;
    case Geometry::square: return std::abs(x1) < L && std::abs(x2) < L;
    case Geometry::disc: return x1 * x1 + x2 * x2 < L * L;
  }
  return false;
}

}  // namespace

void McConfig::validate() const {
  if (n_paths < 100) throw InvalidParams("McConfig: n_paths must be at least 100");
  if (!(dt > 0.0 && dt <= 1e-2)) throw InvalidParams("McConfig: dt must lie in (0, 1e-2]");
  if (!(t_max > dt) || !std::isfinite(t_max)) throw InvalidParams("McConfig: t_max must exceed dt");
  if (shards < 1) throw InvalidParams("McConfig: shards must be positive");
  if (threads < 0) throw InvalidParams("McConfig: threads must be non-negative");
}

double open_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

IncrementSampler1D::IncrementSampler1D(const ModelParams& params, double dt) {
  params.validate();
  if (!(dt > 0.0)) throw InvalidParams("IncrementSampler1D: dt must be positive");
  alpha_ = params.alpha;
  lambda_ = params.lambda;
  // c |y|^(-1-alpha) on one side has stable scale sigma^alpha = c |Gamma(-alpha) cos(pi alpha/2)|
  const double k = params.intensity * dt * std::abs(std::cos(0.5 * kPi * alpha_));
  scale_sym_ = std::pow(k, 1.0 / alpha_);
  scale_one_ = std::pow(0.5 * k, 1.0 / alpha_);
  shift_ = alpha_ < 1.0 ? 0.0 : -kLeftCut * scale_one_;
}

double IncrementSampler1D::one_sided(std::mt19937_64& rng) const {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const double s = scale_one_ * cms(alpha_, 1.0, rng);
    if (s <= shift_) return s;
    if (open_uniform(rng) < std::exp(-lambda_ * (s - shift_))) return s;
  }
  throw ConvergenceError("tempered stable rejection sampler exceeded its attempt cap");
}

double IncrementSampler1D::operator()(std::mt19937_64& rng) const {
  if (lambda_ == 0.0) return scale_sym_ * cms(alpha_, 0.0, rng);
  const double up = one_sided(rng);
  return up - one_sided(rng);
}

IncrementSamplerIso::IncrementSamplerIso(const ModelParams& params, double dt) {
  params.validate();
  if (!(dt > 0.0)) throw InvalidParams("IncrementSamplerIso: dt must be positive");
  alpha_ = params.alpha;
  lambda_ = params.lambda;
  const double radial = 2.0 * kPi * params.intensity * c_tilde_alpha(alpha_);
  // about 16 big jumps per step, so the Gaussian only covers the bulk
  cutoff_ = std::pow(radial * dt / (16.0 * alpha_), 1.0 / alpha_);
  jump_rate_dt_ = radial * tail_mass(cutoff_, alpha_, lambda_) * dt;
  // per-component variance: (1/2) int_{|y|<eps} |y|^2 nu(dy)
  double second_moment;
  if (lambda_ == 0.0) {
    second_moment = std::pow(cutoff_, 2.0 - alpha_) / (2.0 - alpha_);
  } else {
    second_moment = std::pow(lambda_, alpha_ - 2.0) *
                    specfun::lower_incomplete_gamma(2.0 - alpha_, lambda_ * cutoff_);
  }
  small_sd_ = std::sqrt(0.5 * radial * second_moment * dt);
}

std::array<double, 2> IncrementSamplerIso::operator()(std::mt19937_64& rng) const {
  std::normal_distribution<double> normal;
  std::array<double, 2> out{small_sd_ * normal(rng), small_sd_ * normal(rng)};
  const int n = poisson(jump_rate_dt_, rng);
  for (int j = 0; j < n; ++j) {
    double rho = 0.0;
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxRejections) {
        throw ConvergenceError("isotropic jump sampler exceeded its attempt cap");
      }
      rho = cutoff_ * std::pow(open_uniform(rng), -1.0 / alpha_);
      if (lambda_ == 0.0 || open_uniform(rng) < std::exp(-lambda_ * (rho - cutoff_))) break;
    }
    const double phi = 2.0 * kPi * open_uniform(rng);
    out[0] += rho * std::cos(phi);
    out[1] += rho * std::sin(phi);
  }
  return out;
}

double sample_increment(const ModelParams& params, double dt, std::mt19937_64& rng) {
  return IncrementSampler1D(params, dt)(rng);
}

McEstimate estimate_met(std::array<double, 2> x0, Geometry geometry, const ModelParams& params,
                        const McConfig& cfg) {
  params.validate();
  cfg.validate();
  const double L = params.half_width;
  if (geometry == Geometry::interval) x0[1] = 0.0;
  if (!inside(geometry, L, x0[0], x0[1])) {
    throw DomainError("estimate_met: starting point must lie inside the domain");
  }
  const IncrementSampler1D axis(params, cfg.dt);
  const IncrementSamplerIso iso(params, cfg.dt);
  const double sd_brownian = std::sqrt(params.diffusion * cfg.dt);
  const long long max_steps = static_cast<long long>(std::ceil(cfg.t_max / cfg.dt));

  std::vector<double> times(cfg.n_paths);
  std::vector<char> censored(cfg.n_paths, 0);

  auto run_shard = [&](int shard) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(shard)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    const long long first = static_cast<long long>(cfg.n_paths) * shard / cfg.shards;
    const long long last = static_cast<long long>(cfg.n_paths) * (shard + 1) / cfg.shards;
    for (long long p = first; p < last; ++p) {
      double x1 = x0[0];
      double x2 = x0[1];
      long long step = 0;
      bool out = false;
      while (step < max_steps) {
        ++step;
        double f1, f2 = 0.0;
        if (geometry == Geometry::disc) {
          const double r = std::hypot(x1, x2);
          const double fr = r > 0.0 ? params.drift(r) / r : 0.0;
          f1 = fr * x1;
          f2 = fr * x2;
        } else {
          f1 = params.drift(x1);
          if (geometry == Geometry::square) f2 = params.drift(x2);
        }
        double d1 = f1 * cfg.dt;
        double d2 = f2 * cfg.dt;
        if (sd_brownian > 0.0) {
          d1 += sd_brownian * normal(rng);
          if (geometry != Geometry::interval) d2 += sd_brownian * normal(rng);
        }
        if (geometry == Geometry::disc) {
          const auto j = iso(rng);
          d1 += j[0];
          d2 += j[1];
        } else {
          d1 += axis(rng);
          if (geometry == Geometry::square) d2 += axis(rng);
        }
        x1 += d1;
        x2 += d2;
        if (!inside(geometry, L, x1, x2)) {
          out = true;
          break;
        }
      }
      times[p] = step * cfg.dt;
      censored[p] = out ? 0 : 1;
    }
  };

  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, cfg.shards);
  std::vector<std::exception_ptr> errors(threads);
  if (threads == 1) {
    for (int s = 0; s < cfg.shards; ++s) run_shard(s);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int s = t; s < cfg.shards; s += threads) run_shard(s);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const int n = cfg.n_paths;
  long long n_censored = 0;
  double sum = 0.0;
  for (int p = 0; p < n; ++p) {
    sum += times[p];
    n_censored += censored[p];
  }
  if (n_censored == n) throw ConvergenceError("estimate_met: every path was censored at t_max");
  const double mean = sum / n;
  double sq = 0.0;
  for (int p = 0; p < n; ++p) sq += (times[p] - mean) * (times[p] - mean);
  McEstimate est;
  est.mean = mean;
  est.std_error = std::sqrt(sq / (n - 1)) / std::sqrt(static_cast<double>(n));
  est.n_paths = n;
  est.censored_fraction = static_cast<double>(n_censored) / n;
  return est;
}

}  // namespace levymet
