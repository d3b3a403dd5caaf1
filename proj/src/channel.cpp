#include "sparsemimo/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "sparsemimo/rng.hpp"

namespace sparsemimo {

namespace {
constexpr double kPi = 3.141592653589793;

double point_distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}
}  // namespace

Complex default_beta(double wavelength, double range) {
  return {wavelength / (4.0 * kPi * range), 0.0};
}

ChannelMatrix los_channel(const ArrayPair& pair, const LinkGeometry& geo,
                          Complex beta, DistanceModel model) {
  if (std::abs(beta) <= 0.0) throw std::invalid_argument("los_channel: |beta| must be > 0");
  const auto m_idx = element_indices(pair.ue.n_elements);
  const auto n_idx = element_indices(pair.bs.n_elements);
  const double lam = pair.wavelength();
  ChannelMatrix h;
  h.beta = beta;
  h.model_tag = model;
  h.entries.resize(pair.bs.n_elements, pair.ue.n_elements);
  for (int n = 0; n < pair.bs.n_elements; ++n) {
    for (int m = 0; m < pair.ue.n_elements; ++m) {
      double d;
      switch (model) {
        case DistanceModel::Exact:
          d = exact_distance(m_idx[m], n_idx[n], pair, geo);
          break;
        case DistanceModel::Near:
          d = near_distance(m_idx[m], n_idx[n], pair, geo);
          break;
        default:
          d = far_distance(m_idx[m], n_idx[n], pair, geo);
      }
      const double phase = -2.0 * kPi / lam * (d - geo.range);
      h.entries(n, m) = beta * std::polar(1.0, phase);
    }
  }
  return h;
}

VectorXcd steering_vector_far(const ArrayConfig& cfg, double angle) {
  const auto idx = element_indices(cfg.n_elements);
  VectorXcd v(cfg.n_elements);
  const double s = std::sin(angle);
  for (int i = 0; i < cfg.n_elements; ++i)
    v(i) = std::polar(1.0, -kPi * idx[i] * cfg.sparsity * s);
  return v;
}

VectorXcd steering_vector_near(const ArrayConfig& cfg,
                               const std::vector<Point2>& elements,
                               const Point2& source) {
  if (static_cast<int>(elements.size()) != cfg.n_elements)
    throw std::invalid_argument("steering_vector_near: element count mismatch");
  Point2 center{0.0, 0.0};
  for (const auto& p : elements) {
    center.x += p.x / elements.size();
    center.y += p.y / elements.size();
  }
  const double ref = point_distance(source, center);
  VectorXcd v(cfg.n_elements);
  for (int i = 0; i < cfg.n_elements; ++i) {
    const double d = point_distance(source, elements[static_cast<size_t>(i)]);
    if (d <= 0.0)
      throw std::domain_error("steering_vector_near: source coincides with an element");
    v(i) = std::polar(1.0, -2.0 * kPi / cfg.wavelength * (d - ref));
  }
  return v;
}

ChannelMatrix nlos_channel(const ArrayPair& pair, const LinkGeometry& geo,
                           const ScattererSet& set) {
  if (set.scatterers.empty())
    throw std::invalid_argument("nlos_channel: at least one scatterer required");
  const double lam = pair.wavelength();
  const auto ue_pts = element_positions(pair.ue, geo, Side::UE);
  const auto bs_pts = element_positions(pair.bs, geo, Side::BS);
  const Point2 ue_center{-geo.range * std::cos(geo.bearing),
                         geo.range * std::sin(geo.bearing)};
  const Point2 origin{0.0, 0.0};

  // rho: total NLoS path power at the reference point.
  double rho = 0.0;
  for (const auto& s : set.scatterers) {
    const double r = point_distance(s.position, ue_center);
    const double d_bs = point_distance(s.position, origin);
    rho += lam * lam * s.rcs_weight /
           (std::pow(4.0 * kPi, 3) * r * r * d_bs * d_bs);
  }

  ChannelMatrix h;
  h.model_tag = DistanceModel::Exact;
  h.entries = MatrixXcd::Zero(pair.bs.n_elements, pair.ue.n_elements);
  const double q = static_cast<double>(set.scatterers.size());
  for (const auto& s : set.scatterers) {
    const double r = point_distance(s.position, ue_center);
    const VectorXcd b = steering_vector_near(pair.bs, bs_pts, s.position);
    const VectorXcd a = steering_vector_near(pair.ue, ue_pts, s.position);
    const Complex phase =
        s.coefficient * std::polar(1.0, -2.0 * kPi * r / lam + s.extra_phase);
    h.entries += phase * b * a.adjoint();
  }
  h.entries *= std::sqrt(rho / q);
  h.beta = Complex{std::sqrt(rho), 0.0};
  return h;
}

ChannelMatrix rician_combine(const ChannelMatrix& los, const ChannelMatrix& nlos,
                             double rician_factor) {
  if (los.entries.rows() != nlos.entries.rows() ||
      los.entries.cols() != nlos.entries.cols())
    throw std::invalid_argument("rician_combine: shape mismatch");
  if (rician_factor < 0.0)
    throw std::invalid_argument("rician_combine: F must be >= 0");
  ChannelMatrix h;
  const double f = rician_factor;
  h.entries = std::sqrt(f / (f + 1.0)) * los.entries +
              std::sqrt(1.0 / (f + 1.0)) * nlos.entries;
  h.beta = los.beta;
  h.model_tag = los.model_tag;
  return h;
}

ScattererSet one_ring_scatterers(const LinkGeometry& geo, double ring_radius,
                                 int n_paths, std::uint64_t seed) {
  if (ring_radius <= 0.0)
    throw std::invalid_argument("one_ring_scatterers: ring_radius must be > 0");
  if (n_paths < 1) throw std::invalid_argument("one_ring_scatterers: Q must be >= 1");
  const Point2 center{-geo.range * std::cos(geo.bearing),
                      geo.range * std::sin(geo.bearing)};
  Rng rng(seed);
  ScattererSet set;
  set.scatterers.reserve(static_cast<size_t>(n_paths));
  for (int q = 0; q < n_paths; ++q) {
    const double angle = rng.uniform(0.0, 2.0 * kPi);
    Scatterer s;
    s.position = {center.x + ring_radius * std::cos(angle),
                  center.y + ring_radius * std::sin(angle)};
    s.coefficient = rng.std_complex_normal();
    s.extra_phase = rng.uniform(0.0, 2.0 * kPi);
    s.rcs_weight = 1.0;
    set.scatterers.push_back(s);
  }
  return set;
}

VectorXcd receive_combine(const std::vector<ChannelMatrix>& channels,
                          const std::vector<VectorXcd>& tx_signals,
                          double noise_power, std::uint64_t seed) {
  if (channels.empty() || channels.size() != tx_signals.size())
    throw std::invalid_argument("receive_combine: channel/signal count mismatch");
  const Eigen::Index n_bs = channels.front().entries.rows();
  VectorXcd y = VectorXcd::Zero(n_bs);
  for (size_t k = 0; k < channels.size(); ++k) {
    if (channels[k].entries.rows() != n_bs ||
        channels[k].entries.cols() != tx_signals[k].size())
      throw std::invalid_argument("receive_combine: dimension mismatch");
    y += channels[k].entries * tx_signals[k];
  }
  if (noise_power > 0.0) {
    Rng rng(seed);
    const double sigma = std::sqrt(noise_power);
    for (Eigen::Index i = 0; i < n_bs; ++i)
      y(i) += sigma * rng.std_complex_normal();
  }
  return y;
}

}  // namespace sparsemimo
