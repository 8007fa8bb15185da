#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "nbl/gaussian.hpp"
#include "nbl/seedmix.hpp"

namespace nbl {

/// Parameters of the stationary Gaussian AR(1) noise model.
/// rho is the one-step autocorrelation, sigma the stationary standard
/// deviation; lag-k autocorrelation is rho^k.
struct OuConfig {
    double rho = 0.9;
    double sigma = 1.0;
    std::uint64_t seed = 0;
};

struct OuState {
    double x = 0.0;
    std::uint64_t t = 0;
};

/// Stationary Ornstein-Uhlenbeck (AR(1)) process:
///   x' = rho * x + sigma * sqrt(1 - rho^2) * xi,  xi ~ N(0, 1),
/// initialized from the stationary law x0 ~ N(0, sigma^2).
class OuProcess {
  public:
    explicit OuProcess(const OuConfig& cfg)
        : cfg_(validated(cfg)),
          gauss_(stream_seed(cfg.seed, kGaussianDomain, 0)),
          noise_scale_(cfg.sigma * std::sqrt(1.0 - cfg.rho * cfg.rho)) {
        state_.x = cfg_.sigma * gauss_.next();
    }

    double step() {
        state_.x = cfg_.rho * state_.x + noise_scale_ * gauss_.next();
        ++state_.t;
        return state_.x;
    }

    const OuState& state() const noexcept { return state_; }
    const OuConfig& config() const noexcept { return cfg_; }

  private:
    static const OuConfig& validated(const OuConfig& cfg) {
        if (!(cfg.rho >= 0.0 && cfg.rho < 1.0))
            throw std::invalid_argument("OuConfig: rho must be in [0, 1)");
        if (!(cfg.sigma > 0.0))
            throw std::invalid_argument("OuConfig: sigma must be > 0");
        return cfg;
    }

    OuConfig cfg_;
    GaussianStream gauss_;
    double noise_scale_;
    OuState state_;
};

} // namespace nbl
