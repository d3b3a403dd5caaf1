#ifndef SPARSEMIMO_MULTIUSER_HPP
#define SPARSEMIMO_MULTIUSER_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "sparsemimo/channel.hpp"
#include "sparsemimo/edof.hpp"
#include "sparsemimo/rate.hpp"

namespace sparsemimo {

enum class PlacementLaw { UniformSin, UniformAngle };

/// K users at common range, bearings drawn per the placement law.
struct UserPlacement {
  int n_users;
  double range;
  double phi_max;  // radians, in (0, pi/2]
  PlacementLaw law = PlacementLaw::UniformSin;

  UserPlacement(int k, double l, double phi, PlacementLaw law_)
      : n_users(k), range(l), phi_max(phi), law(law_) {
    if (k < 1) throw std::invalid_argument("UserPlacement: K must be >= 1");
    if (phi <= 0.0 || phi > 1.5707963267948966)
      throw std::invalid_argument("UserPlacement: phi_max must be in (0, pi/2]");
    if (l <= 0.0) throw std::invalid_argument("UserPlacement: range must be > 0");
  }
};

/// Draw user bearings; deterministic per seed.
std::vector<double> draw_bearings(const UserPlacement& placement,
                                  std::uint64_t seed);

/// Normalized two-lobe beam pattern of Eq-style MRC combining.
struct TwoLobeBeamFit {
  double g_main = 1.0;
  double g_side = 0.0;
  double alpha = 1.0;
};

/// |sin(pi N eta Delta / 2) / (N sin(pi eta Delta / 2))|^2 in [0, 1];
/// removable singularities resolve to 1.
double beam_pattern(double delta, int n_bs, double eta_bs);

/// Far-field MRT/MRC SINR for user i given all users' bearings.
double mrt_mrc_sinr(const std::vector<double>& bearings,
                    const std::vector<double>& rx_snrs, int n_ue, int n_bs,
                    double eta_bs, int user);

/// General linear-beamforming SINR evaluated literally from the channel
/// matrices and unit-norm transmit/receive vectors.
double general_sinr(const std::vector<MatrixXcd>& channels,
                    const std::vector<VectorXcd>& tx_vectors,
                    const VectorXcd& rx_vector,
                    const std::vector<double>& tx_powers, double noise_power,
                    int user);

/// Far-field MRT/MRC sum rate; independent of eta_ue by construction.
double sum_rate_far(const UserPlacement& placement,
                    const std::vector<double>& rx_snrs, int n_ue, int n_bs,
                    double eta_bs, double eta_ue, std::uint64_t seed);

/// Closed-form probability that two users lie in the same main/grating lobe.
double collision_probability(double eta_bs, int n_bs, double phi_max,
                             double alpha);

/// (sin phi_lo, sin phi_hi) interval over which p(eta_bs) < p(1).
struct AdvantageInterval {
  double sin_lo = 0.0;
  double sin_hi = 0.0;
};
AdvantageInterval sparse_advantage_interval(double eta_bs, int n_bs,
                                            double alpha);

/// Closed-form CDF of the per-user rate under the two-lobe interference model.
double rate_cdf_closed(double rate_threshold, int n_users, double rx_snr,
                       const TwoLobeBeamFit& fit, int n_bs, double eta_bs,
                       double sin_phi_max);

/// Equal-power no-CSIT rate of user k under inter-user interference.
double near_field_user_rate(const std::vector<ChannelMatrix>& channels,
                            const PowerBudget& budget, int user);

/// Sum of near_field_user_rate over all users.
double sum_rate_near(const std::vector<ChannelMatrix>& channels,
                     const PowerBudget& budget);

struct Histogram {
  std::vector<double> bin_edges;  // size bins + 1
  std::vector<double> density;    // size bins, integrates to ~1
};

/// Empirical PDF of the spatial angle difference over random user pairs.
Histogram angle_diff_histogram(const UserPlacement& placement, int bins,
                               int trials, std::uint64_t seed);

}  // namespace sparsemimo

#endif
