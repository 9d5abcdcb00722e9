#ifndef OFDMIM_CHANNEL_HPP
#define OFDMIM_CHANNEL_HPP

#include <cstddef>
#include <vector>

#include "ofdmim/rng.hpp"

namespace ofdmim {

// Two-hop frequency-selective Rayleigh setup: per-subcarrier channel gains
// |h_i(n)|^2 are i.i.d. exponential with mean mu_i, hop noise power n_0.
struct ChannelParams {
  std::size_t n_t;
  double mu_1;
  double mu_2;
  double n_0;

  // Throws std::invalid_argument when n_t < 2 or any of mu_1, mu_2, n_0 <= 0.
  ChannelParams(std::size_t n_t, double mu_1, double mu_2, double n_0);
};

struct ChannelRealization {
  std::vector<double> gains_hop1;
  std::vector<double> gains_hop2;

  std::size_t n_t() const { return gains_hop1.size(); }
};

// Draws one quasi-static realization by inverse-CDF transform
// gain = -mu * ln(1 - u). Draw order is hop 1 subcarriers 0..n_t-1 followed
// by hop 2, so a given stream state fixes the realization bitwise.
ChannelRealization sample_realization(const ChannelParams& params, rng::Stream& stream);

// CDF of the exponential gain distribution, 1 - exp(-s / mu).
// Throws std::domain_error for s < 0.
double exp_cdf(double s, double mu);

// Inverse of exp_cdf on u in [0, 1): -mu * ln(1 - u). u = 1 is outside the
// uniform support, so ln(0) never arises.
double exp_inverse_cdf(double u, double mu);

}  // namespace ofdmim

#endif
