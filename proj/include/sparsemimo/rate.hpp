#ifndef SPARSEMIMO_RATE_HPP
#define SPARSEMIMO_RATE_HPP

#include <vector>

#include "sparsemimo/channel.hpp"
#include "sparsemimo/edof.hpp"

namespace sparsemimo {

/// Transmit power budget; rx_snr is Pbar = |beta|^2 P / sigma^2.
struct PowerBudget {
  double total_power;  // P, linear watts
  double noise_power;  // sigma^2, linear

  PowerBudget(double p, double sigma2) : total_power(p), noise_power(sigma2) {
    if (p <= 0.0 || sigma2 <= 0.0)
      throw std::invalid_argument("PowerBudget: P and sigma^2 must be > 0");
  }
  double rx_snr(double beta_mag) const {
    return beta_mag * beta_mag * total_power / noise_power;
  }
};

enum class SnrRegime { Low, Mid, High };

struct RateRegime {
  SnrRegime regime = SnrRegime::Low;
  double boundary_low = 0.0;   // Pbar = 4 / (Nmin Nbar)
  double boundary_high = 0.0;  // Pbar = 4 Nmin / Nbar
  double optimal_edof = 1.0;
  double max_rate = 0.0;  // bits/s/Hz
};

/// log2 det(I + P/(N_UE sigma^2) HH^H), equal power across antennas.
double rate_no_csit(const MatrixXcd& h, const PowerBudget& budget);

/// Water-filling power allocation over parallel subchannels.
std::vector<double> waterfill(const std::vector<double>& singular_values,
                              const PowerBudget& budget);

/// Rate achieved by the water-filling allocation.
double waterfill_rate(const std::vector<double>& singular_values,
                      const PowerBudget& budget);

/// Equal power over the positive subchannels.
double rate_equal_power(const std::vector<double>& singular_values,
                        const PowerBudget& budget);

/// EDoF-based rate approximation: e * log2(1 + N_BS N_UE Pbar / e^2).
double rate_edof_approx(double edof, int n_ue, int n_bs, double rx_snr);

/// Root of 2Cx^2/(1+Cx^2) = ln(1+Cx^2) for x > 0 (bisection to 1e-12).
double x_opt(double capacity_coeff);

/// The 2/sqrt(C) approximation of x_opt.
double x_opt_approx(double capacity_coeff);

/// Classify Pbar into the three regimes and return R_max and optimal EDoF.
RateRegime max_rate_regime(int n_ue, int n_bs, double rx_snr);

struct SparsitySelection {
  double eta = 1.0;  // recommended product sparsity
  double eta_bs = 1.0;
  double eta_ue = 1.0;
  SnrRegime regime = SnrRegime::Low;
  double target_edof = 1.0;
};

/// Sparsity-selection strategy. The per-side split defaults to all sparsity
/// at the BS; pass ue_share in (0, 1] to move part of it to the UE as
/// eta_ue = eta^ue_share.
SparsitySelection select_sparsity(int n_ue, int n_bs, const LinkGeometry& geo,
                                  double rx_snr, const LobeFit& fit,
                                  double wavelength, double ue_share = 0.0);

}  // namespace sparsemimo

#endif
