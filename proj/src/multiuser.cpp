#include "sparsemimo/multiuser.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sparsemimo/rng.hpp"

namespace sparsemimo {

namespace {
constexpr double kPi = 3.141592653589793;
constexpr double kLn2 = 0.6931471805599453;

double sample_bearing(const UserPlacement& placement, Rng& rng) {
  const double s = std::sin(placement.phi_max);
  if (placement.law == PlacementLaw::UniformSin)
    return std::asin(rng.uniform(-s, s));
  return rng.uniform(-placement.phi_max, placement.phi_max);
}

// log det of a Hermitian positive definite matrix via Cholesky.
double logdet_hpd(const MatrixXcd& m) {
  Eigen::LLT<MatrixXcd> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("logdet_hpd: matrix not positive definite");
  double acc = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    acc += std::log(std::real(l(i, i)));
  return 2.0 * acc;
}
}  // namespace

std::vector<double> draw_bearings(const UserPlacement& placement,
                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> bearings(placement.n_users);
  for (auto& b : bearings) b = sample_bearing(placement, rng);
  return bearings;
}

double beam_pattern(double delta, int n_bs, double eta_bs) {
  if (n_bs < 1) throw std::invalid_argument("beam_pattern: N_BS must be >= 1");
  if (eta_bs < 1.0)
    throw std::invalid_argument("beam_pattern: eta_BS must be >= 1");
  const double u = 0.5 * kPi * eta_bs * delta;
  const double den = std::sin(u);
  if (std::abs(den) < 1e-12) return 1.0;  // main or grating lobe peak
  const double r = std::sin(n_bs * u) / (n_bs * den);
  return r * r;
}

double mrt_mrc_sinr(const std::vector<double>& bearings,
                    const std::vector<double>& rx_snrs, int n_ue, int n_bs,
                    double eta_bs, int user) {
  const int k = static_cast<int>(bearings.size());
  if (static_cast<int>(rx_snrs.size()) != k)
    throw std::invalid_argument("mrt_mrc_sinr: bearings/rx_snrs size mismatch");
  if (user < 0 || user >= k)
    throw std::invalid_argument("mrt_mrc_sinr: user index out of range");
  const double gain = static_cast<double>(n_ue) * n_bs;
  double interference = 0.0;
  for (int i = 0; i < k; ++i) {
    if (i == user) continue;
    const double delta = std::sin(bearings[i]) - std::sin(bearings[user]);
    interference += rx_snrs[i] * beam_pattern(delta, n_bs, eta_bs);
  }
  return rx_snrs[user] * gain / (gain * interference + 1.0);
}

double general_sinr(const std::vector<MatrixXcd>& channels,
                    const std::vector<VectorXcd>& tx_vectors,
                    const VectorXcd& rx_vector,
                    const std::vector<double>& tx_powers, double noise_power,
                    int user) {
  const size_t k = channels.size();
  if (tx_vectors.size() != k || tx_powers.size() != k)
    throw std::invalid_argument("general_sinr: per-user input size mismatch");
  if (user < 0 || static_cast<size_t>(user) >= k)
    throw std::invalid_argument("general_sinr: user index out of range");
  if (noise_power <= 0.0)
    throw std::invalid_argument("general_sinr: noise power must be > 0");
  if (std::abs(rx_vector.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("general_sinr: rx vector must be unit norm");
  for (const auto& t : tx_vectors)
    if (std::abs(t.norm() - 1.0) > 1e-6)
      throw std::invalid_argument("general_sinr: tx vectors must be unit norm");

  double signal = 0.0, interference = 0.0;
  for (size_t i = 0; i < k; ++i) {
    const Complex coupling = rx_vector.dot(channels[i] * tx_vectors[i]);
    const double term = tx_powers[i] * std::norm(coupling);
    if (static_cast<int>(i) == user)
      signal = term;
    else
      interference += term;
  }
  return signal / (interference + noise_power);
}

double sum_rate_far(const UserPlacement& placement,
                    const std::vector<double>& rx_snrs, int n_ue, int n_bs,
                    double eta_bs, double eta_ue, std::uint64_t seed) {
  if (eta_ue < 1.0)
    throw std::invalid_argument("sum_rate_far: eta_UE must be >= 1");
  (void)eta_ue;  // MRT at the UE removes any dependence on the transmit spacing
  const auto bearings = draw_bearings(placement, seed);
  double rate = 0.0;
  for (int i = 0; i < placement.n_users; ++i)
    rate += std::log1p(mrt_mrc_sinr(bearings, rx_snrs, n_ue, n_bs, eta_bs, i)) /
            kLn2;
  return rate;
}

double collision_probability(double eta_bs, int n_bs, double phi_max,
                             double alpha) {
  if (eta_bs < 1.0 || n_bs < 1)
    throw std::invalid_argument("collision_probability: bad array parameters");
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("collision_probability: alpha must be in [0,1]");
  if (phi_max <= 0.0 || phi_max > 0.5 * kPi)
    throw std::invalid_argument("collision_probability: phi_max out of range");
  const double s = std::sin(phi_max);
  if (s < alpha / (2.0 * n_bs * eta_bs)) return 1.0;
  const double n_max =
      std::floor(eta_bs * s - alpha / (2.0 * static_cast<double>(n_bs)));
  const double p = alpha *
                   ((2.0 * n_max + 1.0) * s - alpha / (4.0 * n_bs * eta_bs) -
                    n_max * (n_max + 1.0) / eta_bs) /
                   (s * s * n_bs * eta_bs);
  return std::clamp(p, 0.0, 1.0);
}

AdvantageInterval sparse_advantage_interval(double eta_bs, int n_bs,
                                            double alpha) {
  if (eta_bs < 1.0 || n_bs < 1)
    throw std::invalid_argument("sparse_advantage_interval: bad parameters");
  AdvantageInterval iv;
  iv.sin_lo = alpha / (2.0 * n_bs * eta_bs);
  const double a = alpha / static_cast<double>(n_bs);
  const double disc = eta_bs * eta_bs - a * (eta_bs * eta_bs + 1.0 - a);
  iv.sin_hi = (eta_bs + std::sqrt(std::max(disc, 0.0))) / (2.0 * eta_bs);
  return iv;
}

double rate_cdf_closed(double rate_threshold, int n_users, double rx_snr,
                       const TwoLobeBeamFit& fit, int n_bs, double eta_bs,
                       double sin_phi_max) {
  if (n_users < 1)
    throw std::invalid_argument("rate_cdf_closed: K must be >= 1");
  if (fit.g_main <= fit.g_side || fit.g_side < 0.0 || fit.g_main > 1.0)
    throw std::invalid_argument("rate_cdf_closed: need 0 <= G_s < G_m <= 1");
  if (rate_threshold <= 0.0) return 0.0;
  const double y = 1.0 / std::expm1(rate_threshold * kLn2) -
                   1.0 / (rx_snr * static_cast<double>(n_bs));
  const double t_real =
      std::floor((y - (n_users - 1) * fit.g_side) / (fit.g_main - fit.g_side));
  if (t_real < 0.0) return 1.0;
  if (t_real >= static_cast<double>(n_users - 1)) return 0.0;
  const long long t = static_cast<long long>(t_real);

  const double p =
      collision_probability(eta_bs, n_bs, std::asin(sin_phi_max), fit.alpha);
  const long long m = n_users - 1;
  double sum = 0.0;
  double term = std::pow(1.0 - p, static_cast<double>(m));  // q = 0
  for (long long q = 0; q <= t; ++q) {
    sum += term;
    term *= static_cast<double>(m - q) / static_cast<double>(q + 1) * p /
            (1.0 - p);
  }
  return std::clamp(1.0 - sum, 0.0, 1.0);
}

double near_field_user_rate(const std::vector<ChannelMatrix>& channels,
                            const PowerBudget& budget, int user) {
  const size_t k = channels.size();
  if (user < 0 || static_cast<size_t>(user) >= k)
    throw std::invalid_argument("near_field_user_rate: user index out of range");
  const Eigen::Index n_bs = channels[user].entries.rows();
  const Eigen::Index n_ue = channels[user].entries.cols();
  for (const auto& h : channels)
    if (h.entries.rows() != n_bs || h.entries.cols() != n_ue)
      throw std::invalid_argument("near_field_user_rate: shape mismatch");

  const double reg =
      budget.noise_power * static_cast<double>(n_ue) / budget.total_power;
  MatrixXcd denom = reg * MatrixXcd::Identity(n_bs, n_bs);
  for (size_t i = 0; i < k; ++i) {
    if (static_cast<int>(i) == user) continue;
    denom += channels[i].entries * channels[i].entries.adjoint();
  }
  const MatrixXcd numer =
      denom + channels[user].entries * channels[user].entries.adjoint();
  return (logdet_hpd(numer) - logdet_hpd(denom)) / kLn2;
}

double sum_rate_near(const std::vector<ChannelMatrix>& channels,
                     const PowerBudget& budget) {
  double rate = 0.0;
  for (size_t k = 0; k < channels.size(); ++k)
    rate += near_field_user_rate(channels, budget, static_cast<int>(k));
  return rate;
}

Histogram angle_diff_histogram(const UserPlacement& placement, int bins,
                               int trials, std::uint64_t seed) {
  if (bins < 1 || trials < 1)
    throw std::invalid_argument("angle_diff_histogram: bins and trials >= 1");
  const double s = std::sin(placement.phi_max);
  Histogram h;
  h.bin_edges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b)
    h.bin_edges[b] = -2.0 * s + 4.0 * s * b / bins;
  std::vector<long long> counts(bins, 0);
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const double d = std::sin(sample_bearing(placement, rng)) -
                     std::sin(sample_bearing(placement, rng));
    int b = static_cast<int>(std::floor((d + 2.0 * s) / (4.0 * s) * bins));
    b = std::clamp(b, 0, bins - 1);
    ++counts[b];
  }
  const double width = 4.0 * s / bins;
  h.density.resize(bins);
  for (int b = 0; b < bins; ++b)
    h.density[b] = static_cast<double>(counts[b]) / (trials * width);
  return h;
}

}  // namespace sparsemimo
