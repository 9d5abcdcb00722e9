#include "ofdmim/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ofdmim {

ChannelParams::ChannelParams(std::size_t n_t, double mu_1, double mu_2, double n_0)
    : n_t(n_t), mu_1(mu_1), mu_2(mu_2), n_0(n_0) {
  if (n_t < 2) {
    throw std::invalid_argument("n_t must be at least 2, got " + std::to_string(n_t));
  }
  if (!(mu_1 > 0.0) || !std::isfinite(mu_1)) {
    throw std::invalid_argument("mu_1 must be positive and finite");
  }
  if (!(mu_2 > 0.0) || !std::isfinite(mu_2)) {
    throw std::invalid_argument("mu_2 must be positive and finite");
  }
  if (!(n_0 > 0.0) || !std::isfinite(n_0)) {
    throw std::invalid_argument("n_0 must be positive and finite");
  }
}

ChannelRealization sample_realization(const ChannelParams& params, rng::Stream& stream) {
  ChannelRealization r;
  r.gains_hop1.resize(params.n_t);
  r.gains_hop2.resize(params.n_t);
  for (std::size_t n = 0; n < params.n_t; ++n) {
    r.gains_hop1[n] = exp_inverse_cdf(stream.next_unit(), params.mu_1);
  }
  for (std::size_t n = 0; n < params.n_t; ++n) {
    r.gains_hop2[n] = exp_inverse_cdf(stream.next_unit(), params.mu_2);
  }
  return r;
}

double exp_cdf(double s, double mu) {
  if (s < 0.0) throw std::domain_error("exp_cdf: s must be nonnegative");
  if (!(mu > 0.0)) throw std::domain_error("exp_cdf: mu must be positive");
  return -std::expm1(-s / mu);
}

double exp_inverse_cdf(double u, double mu) {
  if (!(u >= 0.0) || u >= 1.0) throw std::domain_error("exp_inverse_cdf: u must be in [0, 1)");
  if (!(mu > 0.0)) throw std::domain_error("exp_inverse_cdf: mu must be positive");
  return -mu * std::log1p(-u);
}

}  // namespace ofdmim
