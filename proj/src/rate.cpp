#include "sparsemimo/rate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sparsemimo {

namespace {
constexpr double kLn2 = 0.6931471805599453;

double log2_1p(double x) { return std::log1p(x) / kLn2; }
}  // namespace

double rate_no_csit(const MatrixXcd& h, const PowerBudget& budget) {
  const double scale =
      budget.total_power / (static_cast<double>(h.cols()) * budget.noise_power);
  // log det via the eigenvalues of the smaller Gram matrix.
  const MatrixXcd gram =
      h.cols() <= h.rows() ? MatrixXcd(h.adjoint() * h) : MatrixXcd(h * h.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  double rate = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    rate += log2_1p(scale * std::max(es.eigenvalues()(i), 0.0));
  return rate;
}

std::vector<double> waterfill(const std::vector<double>& singular_values,
                              const PowerBudget& budget) {
  std::vector<double> gains;  // gamma_i = sigma_i^2 P / sigma^2 at full power
  for (double s : singular_values)
    if (s > 0.0) gains.push_back(s * s * budget.total_power / budget.noise_power);
  if (gains.empty())
    throw std::invalid_argument("waterfill: all singular values are zero");
  std::sort(gains.begin(), gains.end(), std::greater<>());

  // Water level mu over active channels: sum_i (mu - 1/g_i) = P.
  const double p = budget.total_power;
  size_t active = gains.size();
  double mu = 0.0;
  while (active > 0) {
    double inv_sum = 0.0;
    for (size_t i = 0; i < active; ++i) inv_sum += p / gains[i];
    mu = (p + inv_sum) / static_cast<double>(active);
    if (mu >= p / gains[active - 1]) break;  // weakest active channel still above cutoff
    --active;
  }

  std::vector<double> powers(singular_values.size(), 0.0);
  std::vector<size_t> order(singular_values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return singular_values[a] > singular_values[b];
  });
  for (size_t i = 0; i < active; ++i) {
    const size_t j = order[i];
    const double g = singular_values[j] * singular_values[j] * p / budget.noise_power;
    powers[j] = mu - p / g;
  }
  return powers;
}

double waterfill_rate(const std::vector<double>& singular_values,
                      const PowerBudget& budget) {
  const auto powers = waterfill(singular_values, budget);
  double rate = 0.0;
  for (size_t i = 0; i < powers.size(); ++i)
    if (powers[i] > 0.0)
      rate += log2_1p(powers[i] * singular_values[i] * singular_values[i] /
                      budget.noise_power);
  return rate;
}

double rate_equal_power(const std::vector<double>& singular_values,
                        const PowerBudget& budget) {
  int r = 0;
  for (double s : singular_values)
    if (s > 0.0) ++r;
  if (r == 0) return 0.0;
  double rate = 0.0;
  for (double s : singular_values)
    if (s > 0.0)
      rate += log2_1p(budget.total_power * s * s / (r * budget.noise_power));
  return rate;
}

double rate_edof_approx(double edof, int n_ue, int n_bs, double rx_snr) {
  if (edof < 1.0) throw std::invalid_argument("rate_edof_approx: edof must be >= 1");
  const double c = static_cast<double>(n_ue) * n_bs * rx_snr;
  return edof * log2_1p(c / (edof * edof));
}

double x_opt(double capacity_coeff) {
  if (capacity_coeff <= 0.0) throw std::invalid_argument("x_opt: C must be > 0");
  const double c = capacity_coeff;
  auto g = [c](double x) {
    const double y = c * x * x;
    return 2.0 * y / (1.0 + y) - std::log1p(y);
  };
  // g > 0 near 0+, g -> -inf; bracket around the known scale 2/sqrt(C).
  double lo = 0.1 / std::sqrt(c);
  double hi = 10.0 / std::sqrt(c);
  while (g(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

double x_opt_approx(double capacity_coeff) {
  return 2.0 / std::sqrt(capacity_coeff);
}

RateRegime max_rate_regime(int n_ue, int n_bs, double rx_snr) {
  const double n_min = std::min(n_ue, n_bs);
  const double n_bar = std::max(n_ue, n_bs);
  const double c = n_min * n_bar * rx_snr;
  RateRegime r;
  r.boundary_low = 4.0 / (n_min * n_bar);
  r.boundary_high = 4.0 * n_min / n_bar;
  if (rx_snr < r.boundary_low) {
    r.regime = SnrRegime::Low;
    r.optimal_edof = 1.0;
    r.max_rate = std::log1p(c) / kLn2;
  } else if (rx_snr > r.boundary_high) {
    r.regime = SnrRegime::High;
    r.optimal_edof = n_min;
    r.max_rate = n_min * std::log1p(n_bar * rx_snr / n_min) / kLn2;
  } else {
    r.regime = SnrRegime::Mid;  // boundaries belong to the mid branch
    r.optimal_edof = std::sqrt(c) / 2.0;
    r.max_rate = std::sqrt(c) / 2.0 * std::log2(5.0);
  }
  return r;
}

SparsitySelection select_sparsity(int n_ue, int n_bs, const LinkGeometry& geo,
                                  double rx_snr, const LobeFit& fit,
                                  double wavelength, double ue_share) {
  if (ue_share < 0.0 || ue_share > 1.0)
    throw std::invalid_argument("select_sparsity: ue_share must be in [0, 1]");
  const auto regime = max_rate_regime(n_ue, n_bs, rx_snr);
  const double n_bar = std::max(n_ue, n_bs);
  const double cos_nu = geo.cos_nu();
  const double eta_saturate =
      4.0 * fit.alpha * geo.range / (wavelength * n_bar * cos_nu);

  SparsitySelection sel;
  sel.regime = regime.regime;
  sel.target_edof = regime.optimal_edof;
  switch (regime.regime) {
    case SnrRegime::Low:
      sel.eta = 1.0;
      break;
    case SnrRegime::High:
      sel.eta = std::max(1.0, eta_saturate);
      break;
    case SnrRegime::Mid: {
      // Smallest eta whose closed-form EDoF reaches the target.
      const double lo = 1.0;
      const double hi = std::max(1.0, eta_saturate);
      double eta = hi;
      const int steps = 4000;
      for (int i = 0; i <= steps; ++i) {
        const double cand = lo + (hi - lo) * i / steps;
        LobeParams p{geo.range, wavelength, cand, cos_nu,
                     std::max(n_ue, n_bs), std::min(n_ue, n_bs)};
        if (edof_closed_form(p, fit).value >= regime.optimal_edof) {
          eta = cand;
          break;
        }
      }
      sel.eta = eta;
      break;
    }
  }
  sel.eta_ue = std::max(1.0, std::pow(sel.eta, ue_share));
  sel.eta_bs = std::max(1.0, sel.eta / sel.eta_ue);
  return sel;
}

}  // namespace sparsemimo
