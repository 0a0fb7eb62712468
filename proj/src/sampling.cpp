#include "gsieve/sampling.hpp"

#include "gsieve/error.hpp"

#include <cmath>
#include <limits>

namespace gsieve {

PolytopeSampler::PolytopeSampler(CenteredPolytope body, const SamplerConfig& cfg,
                                 std::uint64_t stream)
    : body_(std::move(body)), cfg_(cfg), rng_(cfg.seed, stream) {
  if (cfg_.eta < 0.0 || cfg_.eta >= 1.0) throw InvalidInput("sampler: eta must be in [0,1)");
  if (cfg_.method == SamplerMethod::hit_and_run && (cfg_.burn_in < 1 || cfg_.thinning < 1)) {
    throw InvalidInput("sampler: burn_in and thinning must be >= 1");
  }
  walker_ = body_.center_double();
}

bool PolytopeSampler::accept(const Eigen::VectorXd& x) const {
  Eigen::VectorXd slack = body_.b_double() - body_.A_double() * x;
  double worst = slack.minCoeff();
  double scale = 1e-9 * (1.0 + body_.b_double().cwiseAbs().maxCoeff());
  if (worst > scale) return true;
  if (worst < -scale) return false;
  return body_.contains_exact(to_rvector(x));
}

Eigen::VectorXd PolytopeSampler::sample_rejection() {
  const auto& lo = body_.box_lo();
  const auto& hi = body_.box_hi();
  Eigen::VectorXd x(lo.size());
  for (std::size_t attempt = 0; attempt < cfg_.max_rejections; ++attempt) {
    for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = rng_.uniform(lo[j], hi[j]);
    if (accept(x)) return x;
  }
  throw BudgetExhausted("rejection sampler: no point accepted after " +
                        std::to_string(cfg_.max_rejections) + " proposals");
}

void PolytopeSampler::hit_and_run_step() {
  const auto& A = body_.A_double();
  const auto& b = body_.b_double();
  const Eigen::Index n = walker_.size();
  for (int retry = 0; retry < 64; ++retry) {
    Eigen::VectorXd dir(n);
    for (Eigen::Index j = 0; j < n; ++j) dir[j] = rng_.normal();
    double len = dir.norm();
    if (len == 0.0) continue;
    dir /= len;
    Eigen::VectorXd ad = A * dir;
    Eigen::VectorXd slack = b - A * walker_;
    double tmin = -std::numeric_limits<double>::infinity();
    double tmax = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < ad.size(); ++i) {
      if (ad[i] > 0.0) tmax = std::min(tmax, slack[i] / ad[i]);
      else if (ad[i] < 0.0) tmin = std::max(tmin, slack[i] / ad[i]);
    }
    if (!std::isfinite(tmin) || !std::isfinite(tmax) || tmax <= tmin) continue;
    Eigen::VectorXd next = walker_ + rng_.uniform(tmin, tmax) * dir;
    if (accept(next)) {
      walker_ = std::move(next);
      return;
    }
  }
}

Eigen::VectorXd PolytopeSampler::sample_hit_and_run() {
  if (!burned_in_) {
    for (std::size_t i = 0; i < cfg_.burn_in; ++i) hit_and_run_step();
    burned_in_ = true;
  }
  for (std::size_t i = 0; i < cfg_.thinning; ++i) hit_and_run_step();
  return walker_;
}

Eigen::VectorXd PolytopeSampler::sample() {
  return cfg_.method == SamplerMethod::rejection ? sample_rejection() : sample_hit_and_run();
}

std::pair<Eigen::VectorXd, int> PolytopeSampler::sample_signed(double beta) {
  if (!(beta > 0.0)) throw InvalidInput("sample_signed: beta must be positive");
  Eigen::VectorXd x = sample();
  int s = rng_.sign();
  return {static_cast<double>(s) * beta * x, s};
}

Eigen::VectorXd uniform_sample(const CenteredPolytope& K, const SamplerConfig& cfg) {
  PolytopeSampler sampler(K, cfg);
  return sampler.sample();
}

std::pair<Eigen::VectorXd, int> sample_signed(const CenteredPolytope& C, double beta,
                                              const SamplerConfig& cfg) {
  PolytopeSampler sampler(C, cfg);
  return sampler.sample_signed(beta);
}

}  // namespace gsieve
