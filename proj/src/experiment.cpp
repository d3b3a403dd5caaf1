#include "sparsemimo/experiment.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "sparsemimo/channel.hpp"
#include "sparsemimo/edof.hpp"
#include "sparsemimo/geometry.hpp"
#include "sparsemimo/rate.hpp"
#include "sparsemimo/rng.hpp"

namespace sparsemimo {

namespace {
constexpr double kPi = 3.141592653589793;
constexpr char kVersion[] = "1.0.0";

double deg2rad(double deg) { return deg * kPi / 180.0; }

double db2lin(double db) { return std::pow(10.0, db / 10.0); }

std::vector<double> sweep_grid(const ScenarioConfig& cfg) {
  std::vector<double> grid(cfg.sweep_points);
  for (int i = 0; i < cfg.sweep_points; ++i)
    grid[i] = cfg.sweep_points == 1
                  ? cfg.sweep_start
                  : cfg.sweep_start + (cfg.sweep_stop - cfg.sweep_start) * i /
                                          (cfg.sweep_points - 1);
  return grid;
}

LinkGeometry link_geometry(const ScenarioConfig& cfg) {
  return LinkGeometry(cfg.range, deg2rad(cfg.bearing_deg),
                      deg2rad(cfg.tilt_deg));
}

UserPlacement user_placement(const ScenarioConfig& cfg) {
  return UserPlacement(cfg.n_users, cfg.range, deg2rad(cfg.phi_max_deg),
                       cfg.placement_law == "uniform-angle"
                           ? PlacementLaw::UniformAngle
                           : PlacementLaw::UniformSin);
}

// Single-user channel with the sparsity budget split evenly across the two
// sides (sqrt(eta) each) and beta = 1; rates are evaluated against P = Pbar,
// sigma^2 = 1, which is equivalent. The even split keeps both apertures small
// relative to the link range, so the exact-distance channel stays in the
// regime the lobe model describes; piling the whole budget on one side blows
// up that side's aperture at high eta and detaches the two curves.
MatrixXcd unit_gain_channel(const ScenarioConfig& cfg, double eta) {
  const double side = std::sqrt(eta);
  const ArrayPair pair(ArrayConfig(cfg.n_ue, side, cfg.wavelength),
                       ArrayConfig(cfg.n_bs, side, cfg.wavelength));
  return los_channel(pair, link_geometry(cfg), Complex{1.0, 0.0},
                     DistanceModel::Exact)
      .entries;
}

LobeParams lobe_params(const ScenarioConfig& cfg, double eta) {
  return LobeParams{cfg.range,
                    cfg.wavelength,
                    eta,
                    link_geometry(cfg).cos_nu(),
                    std::max(cfg.n_ue, cfg.n_bs),
                    std::min(cfg.n_ue, cfg.n_bs)};
}

std::vector<double> singular_values(const MatrixXcd& h) {
  Eigen::JacobiSVD<MatrixXcd> svd(h);
  return {svd.singularValues().data(),
          svd.singularValues().data() + svd.singularValues().size()};
}

ResultTable edof_sweep(const ScenarioConfig& cfg) {
  ResultTable t;
  t.columns = {"eta", "edof_exact", "edof_closed", "dominant_count", "branch"};
  for (double eta : sweep_grid(cfg)) {
    const MatrixXcd h = unit_gain_channel(cfg, eta);
    const auto p = lobe_params(cfg, eta);
    const auto breakdown = edof_closed_form(p, two_lobe_fit(p));
    t.add_row({eta, edof_exact(h), breakdown.value,
               static_cast<double>(dominant_singular_count(h)),
               static_cast<double>(breakdown.branch)});
  }
  return t;
}

ResultTable rate_sweep(const ScenarioConfig& cfg) {
  ResultTable t;
  t.columns = {"eta", "rate_waterfill", "rate_equal_power", "rate_edof_approx",
               "edof_closed"};
  const double pbar = db2lin(cfg.rx_snr_db);
  const PowerBudget budget(pbar, 1.0);
  for (double eta : sweep_grid(cfg)) {
    const auto svals = singular_values(unit_gain_channel(cfg, eta));
    const auto p = lobe_params(cfg, eta);
    const double edof = edof_closed_form(p, two_lobe_fit(p)).value;
    t.add_row({eta, waterfill_rate(svals, budget),
               rate_equal_power(svals, budget),
               rate_edof_approx(edof, cfg.n_ue, cfg.n_bs, pbar), edof});
  }
  return t;
}

ResultTable sumrate_far_sweep(const ScenarioConfig& cfg) {
  ResultTable t;
  t.columns = {"eta_bs", "sum_rate"};
  const auto placement = user_placement(cfg);
  const std::vector<double> snrs(cfg.n_users, db2lin(cfg.rx_snr_db));
  for (double eta_bs : sweep_grid(cfg)) {
    double acc = 0.0;
    for (int trial = 0; trial < cfg.trials; ++trial)
      acc += sum_rate_far(placement, snrs, cfg.n_ue, cfg.n_bs, eta_bs,
                          cfg.eta_ue, Rng::derive(cfg.seed, trial));
    t.add_row({eta_bs, acc / cfg.trials});
  }
  return t;
}

ResultTable sumrate_near_sweep(const ScenarioConfig& cfg) {
  ResultTable t;
  t.columns = {"eta_bs", "sum_rate"};
  const auto placement = user_placement(cfg);
  const Complex beta = default_beta(cfg.wavelength, cfg.range);
  const double f_lin = db2lin(cfg.rician_f_db);
  // Pbar = |beta|^2 P / sigma^2 with sigma^2 = 1.
  const PowerBudget budget(db2lin(cfg.rx_snr_db) / std::norm(beta), 1.0);

  for (double eta_bs : sweep_grid(cfg)) {
    const ArrayPair pair(ArrayConfig(cfg.n_ue, cfg.eta_ue, cfg.wavelength),
                         ArrayConfig(cfg.n_bs, eta_bs, cfg.wavelength));
    double acc = 0.0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t trial_seed = Rng::derive(cfg.seed, trial);
      const auto bearings = draw_bearings(placement, trial_seed);
      std::vector<ChannelMatrix> channels;
      channels.reserve(bearings.size());
      for (size_t k = 0; k < bearings.size(); ++k) {
        const LinkGeometry geo(cfg.range, bearings[k], deg2rad(cfg.tilt_deg));
        const auto los = los_channel(pair, geo, beta, DistanceModel::Exact);
        const auto ring = one_ring_scatterers(
            geo, cfg.ring_radius, cfg.ring_paths, Rng::derive(trial_seed, k));
        channels.push_back(
            rician_combine(los, nlos_channel(pair, geo, ring), f_lin));
      }
      acc += sum_rate_near(channels, budget);
    }
    t.add_row({eta_bs, acc / cfg.trials});
  }
  return t;
}

ResultTable cdf_sweep(const ScenarioConfig& cfg) {
  ResultTable t;
  t.columns = {"rate", "cdf_closed", "cdf_mc"};
  const double s_max = std::sin(deg2rad(cfg.phi_max_deg));
  const auto fit = fit_beam_pattern(cfg.n_bs, cfg.eta_bs, s_max);
  const double pbar = db2lin(cfg.rx_snr_db);
  const double p = collision_probability(cfg.eta_bs, cfg.n_bs,
                                         deg2rad(cfg.phi_max_deg), fit.alpha);

  // Two-lobe interference model: each interferer contributes g_main with
  // probability p, else g_side; the SINR uses the same N_BS normalization
  // as the closed form.
  std::vector<double> mc_rates(cfg.trials);
  const double c = pbar * cfg.n_bs;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(Rng::derive(cfg.seed, trial));
    double interference = 0.0;
    for (int k = 1; k < cfg.n_users; ++k)
      interference += rng.uniform() < p ? fit.g_main : fit.g_side;
    mc_rates[trial] = std::log2(1.0 + c / (c * interference + 1.0));
  }

  for (double rate : sweep_grid(cfg)) {
    long long below = 0;
    for (double r : mc_rates)
      if (r <= rate) ++below;
    t.add_row({rate,
               rate_cdf_closed(rate, cfg.n_users, pbar, fit, cfg.n_bs,
                               cfg.eta_bs, s_max),
               static_cast<double>(below) / cfg.trials});
  }
  return t;
}

ResultTable fit_lobes_sweep(const ScenarioConfig& cfg) {
  ResultTable t;
  t.columns = {"eta",           "alpha",          "g_high",
               "g_low",         "threshold_low",  "threshold_high",
               "edof_closed"};
  for (double eta : sweep_grid(cfg)) {
    const auto p = lobe_params(cfg, eta);
    const auto fit = two_lobe_fit(p);
    const auto breakdown = edof_closed_form(p, fit);
    t.add_row({eta, fit.alpha, fit.g_high, fit.g_low, breakdown.threshold_low,
               breakdown.threshold_high, breakdown.value});
  }
  return t;
}
}  // namespace

TwoLobeBeamFit fit_beam_pattern(int n_bs, double eta_bs, double sin_phi_max) {
  if (sin_phi_max <= 0.0 || sin_phi_max > 1.0)
    throw std::invalid_argument("fit_beam_pattern: sin_phi_max in (0, 1]");
  // Map the beam pattern onto the generic lobe shape: with range 1 and
  // wavelength 2 the phase step is pi*eta/2 and grating lobes sit at 2k/eta.
  LobeParams p{1.0,
               2.0,
               eta_bs,
               1.0,
               n_bs,
               1 + static_cast<int>(std::ceil(2.0 * sin_phi_max))};
  const int half = 4096;
  std::vector<double> deltas, samples;
  deltas.reserve(2 * half + 1);
  samples.reserve(2 * half + 1);
  for (int i = -half; i <= half; ++i) {
    const double d = 2.0 * sin_phi_max * i / half;
    deltas.push_back(d);
    samples.push_back(f_eta(d, p));
  }
  const auto fit = two_lobe_fit(deltas, samples, p);
  const double peak = static_cast<double>(n_bs) * n_bs;
  TwoLobeBeamFit out;
  out.alpha = fit.alpha;
  out.g_main = fit.g_high / peak;
  out.g_side = fit.g_low / peak;
  return out;
}

ResultTable run_experiment(const ScenarioConfig& cfg) {
  ResultTable t;
  switch (cfg.kind) {
    case ExperimentKind::EdofSweep: t = edof_sweep(cfg); break;
    case ExperimentKind::RateSweep: t = rate_sweep(cfg); break;
    case ExperimentKind::SumRateFar: t = sumrate_far_sweep(cfg); break;
    case ExperimentKind::SumRateNear: t = sumrate_near_sweep(cfg); break;
    case ExperimentKind::Cdf: t = cdf_sweep(cfg); break;
    case ExperimentKind::FitLobes: t = fit_lobes_sweep(cfg); break;
  }
  t.metadata.emplace_back("version", kVersion);
  auto echo = cfg.echo();
  t.metadata.insert(t.metadata.end(), echo.begin(), echo.end());
  return t;
}

}  // namespace sparsemimo
