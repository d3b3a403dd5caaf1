#include "sparsemimo/edof.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sparsemimo {

namespace {
constexpr double kPi = 3.141592653589793;

// Gram matrix of the smaller side; shares nonzero eigenvalues with HH^H.
MatrixXcd small_gram(const MatrixXcd& h) {
  if (h.cols() <= h.rows()) return h.adjoint() * h;
  return h * h.adjoint();
}

double phase_step(const LobeParams& p) {
  return p.wavelength * kPi * p.eta * p.cos_nu / (4.0 * p.range);
}

double grating_spacing(const LobeParams& p) {
  return 4.0 * p.range / (p.wavelength * p.eta * p.cos_nu);
}

// Integers delta with |delta| strictly inside the half-open lobe width t,
// per side, clamped to the available index range.
int support_radius(double t, int n_min) {
  const int per_side = std::max(0, static_cast<int>(std::ceil(t)) - 1);
  return std::min(per_side, n_min - 1);
}
}  // namespace

double edof_exact(const MatrixXcd& h) {
  const double fro2 = h.squaredNorm();
  if (fro2 <= 0.0) throw std::invalid_argument("edof_exact: zero matrix");
  const double quart = small_gram(h).squaredNorm();  // sum sigma_i^4
  return fro2 * fro2 / quart;
}

double edof_exact(const ChannelMatrix& h) { return edof_exact(h.entries); }

int dominant_singular_count(const MatrixXcd& h, double fraction) {
  if (fraction <= 0.0 || fraction >= 1.0)
    throw std::invalid_argument("dominant_singular_count: fraction must be in (0,1)");
  if (h.squaredNorm() <= 0.0)
    throw std::invalid_argument("dominant_singular_count: zero matrix");
  Eigen::JacobiSVD<MatrixXcd> svd(h);
  const auto& s = svd.singularValues();
  const double cutoff = fraction * s(0);
  int count = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) >= cutoff) ++count;
  return count;
}

MatrixXcd correlation_matrix(const MatrixXcd& h) {
  if (h.cols() > h.rows()) return h * h.adjoint();
  return h.adjoint() * h;
}

double f_eta(double delta, const LobeParams& p) {
  const double u = phase_step(p) * delta;
  const double den = std::sin(u);
  if (std::abs(den) < 1e-12) return static_cast<double>(p.n_max) * p.n_max;
  const double r = std::sin(p.n_max * u) / den;
  return r * r;
}

LobeGeometry lobe_geometry(const LobeParams& p) {
  LobeGeometry g;
  g.null_to_null_bw =
      8.0 * p.range / (p.wavelength * p.eta * p.n_max * p.cos_nu);
  const double spacing = grating_spacing(p);
  const int k_max = static_cast<int>(std::floor((p.n_min - 1) / spacing));
  for (int k = 1; k <= k_max; ++k) {
    g.grating_locations.push_back(-k * spacing);
    g.grating_locations.push_back(k * spacing);
  }
  std::sort(g.grating_locations.begin(), g.grating_locations.end());
  g.grating_exists = k_max >= 1;
  return g;
}

int weight_w(int delta, int n_min) {
  if (std::abs(delta) > n_min - 1)
    throw std::invalid_argument("weight_w: |delta| must be <= n_min - 1");
  return n_min - std::abs(delta);
}

double lobe_half_width(const LobeParams& p, double alpha) {
  return 4.0 * alpha * p.range /
         (p.wavelength * p.n_max * p.eta * p.cos_nu);
}

LobeFit two_lobe_fit(const std::vector<double>& deltas,
                     const std::vector<double>& samples, const LobeParams& p) {
  if (deltas.size() != samples.size() || deltas.size() < 3)
    throw std::invalid_argument("two_lobe_fit: need >= 3 matching samples");
  {
    auto sorted = deltas;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("two_lobe_fit: degenerate grid");
  }
  const size_t n = deltas.size();
  const double spacing = grating_spacing(p);
  const int k_max = static_cast<int>(std::floor((p.n_min - 1) / spacing));

  std::vector<double> logs(n), weights(n);
  for (size_t i = 0; i < n; ++i) {
    logs[i] = std::log10(std::max(samples[i], 1e-12));
    weights[i] = std::max(p.n_min - std::abs(deltas[i]), 0.0);
  }

  double best_resid = std::numeric_limits<double>::infinity();
  LobeFit best;
  std::vector<char> inside(n);
  for (int step = 100; step >= 0; --step) {
    const double alpha = step / 100.0;
    const double t = lobe_half_width(p, alpha);
    double log_in = 0.0, log_out = 0.0;
    size_t n_in = 0;
    for (size_t i = 0; i < n; ++i) {
      const double k = std::clamp(std::round(deltas[i] / spacing),
                                  static_cast<double>(-k_max),
                                  static_cast<double>(k_max));
      const double dist = std::abs(deltas[i] - spacing * k);  // nearest lobe center
      inside[i] = dist < t ? 1 : 0;
      if (inside[i]) {
        log_in += logs[i];
        ++n_in;
      } else {
        log_out += logs[i];
      }
    }
    if (n_in == 0 || n_in == n) continue;
    log_in /= static_cast<double>(n_in);
    log_out /= static_cast<double>(n - n_in);
    double resid = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double d = logs[i] - (inside[i] ? log_in : log_out);
      resid += d * d;
    }
    if (resid < best_resid - 1e-12) {
      best_resid = resid;
      double num_in = 0.0, den_in = 0.0, num_out = 0.0, den_out = 0.0;
      for (size_t i = 0; i < n; ++i) {
        const double w = weights[i] > 0.0 ? weights[i] : 1.0;
        if (inside[i]) {
          num_in += w * samples[i];
          den_in += w;
        } else {
          num_out += w * samples[i];
          den_out += w;
        }
      }
      best.alpha = alpha;
      best.g_high = num_in / den_in;
      best.g_low = den_out > 0.0 ? num_out / den_out : 0.0;
    }
  }
  if (!std::isfinite(best_resid)) {
    // All partitions degenerate (t never splits the grid); treat the peak
    // sample as the lobe and the rest as floor.
    best.alpha = 1.0;
    const auto it = std::max_element(samples.begin(), samples.end());
    best.g_high = *it;
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < n; ++i) {
      if (samples[i] == *it) continue;
      const double w = weights[i] > 0.0 ? weights[i] : 1.0;
      num += w * samples[i];
      den += w;
    }
    best.g_low = den > 0.0 ? num / den : 0.0;
  }
  return best;
}

LobeFit two_lobe_fit(const LobeParams& p) {
  std::vector<double> deltas, samples;
  for (int d = -(p.n_min - 1); d <= p.n_min - 1; ++d) {
    deltas.push_back(d);
    samples.push_back(f_eta(d, p));
  }
  return two_lobe_fit(deltas, samples, p);
}

LobeCountSums lobe_count_sums(const LobeParams& p, const LobeFit& fit) {
  const double t = lobe_half_width(p, fit.alpha);
  const double spacing = grating_spacing(p);
  LobeCountSums sums;

  const int radius = support_radius(t, p.n_min);
  sums.s0 = -static_cast<long long>(radius) * radius +
            (2LL * p.n_min - 1) * radius + p.n_min;
  sums.s0 = std::min<long long>(sums.s0, static_cast<long long>(p.n_min) * p.n_min);

  const int k_max = static_cast<int>(std::floor((p.n_min - 1) / spacing));
  for (int k = 1; k <= k_max; ++k) {
    const double center = k * spacing;
    long long lo = static_cast<long long>(std::floor(center - t)) + 1;
    long long hi = static_cast<long long>(std::ceil(center + t)) - 1;
    lo = std::max<long long>(lo, radius + 1);  // never recount the main lobe
    hi = std::min<long long>(hi, p.n_min - 1);
    for (long long d = lo; d <= hi; ++d) sums.s_plus += p.n_min - d;
  }
  return sums;
}

EdofBreakdown edof_closed_form(const LobeParams& p, const LobeFit& fit) {
  EdofBreakdown out;
  const double n_bar = p.n_max;
  const double n_min = p.n_min;
  out.threshold_high =
      4.0 * fit.alpha * p.range / (p.wavelength * n_bar * p.cos_nu);
  out.threshold_low =
      p.n_min > 1
          ? 4.0 * p.range / (p.wavelength * n_bar * (n_min - 1.0) * p.cos_nu)
          : std::numeric_limits<double>::infinity();

  if (p.eta >= out.threshold_high) {
    out.branch = EdofBranch::Saturated;
    out.value = n_bar * n_bar * n_min / (fit.g_high + fit.g_low * (n_min - 1.0));
  } else if (p.eta >= out.threshold_low) {
    out.branch = EdofBranch::Rising;
    const auto sums = lobe_count_sums(p, fit);
    out.value = n_bar * n_bar * n_min * n_min /
                ((fit.g_high - fit.g_low) * static_cast<double>(sums.s0) +
                 fit.g_low * n_min * n_min);
  } else {
    out.branch = EdofBranch::FarUnit;
    out.value = n_bar * n_bar / fit.g_high;
  }
  return out;
}

}  // namespace sparsemimo
