#include "sparsemimo/geometry.hpp"

#include <cmath>

namespace sparsemimo {

double LinkGeometry::cos_nu() const { return std::cos(tilt) * std::cos(bearing); }

std::vector<double> element_indices(int n_elements) {
  std::vector<double> idx(static_cast<size_t>(n_elements));
  const double offset = (n_elements - 1) / 2.0;
  for (int i = 0; i < n_elements; ++i) idx[static_cast<size_t>(i)] = i - offset;
  return idx;
}

std::vector<Point2> element_positions(const ArrayConfig& cfg,
                                      const LinkGeometry& geo, Side side) {
  const auto idx = element_indices(cfg.n_elements);
  std::vector<Point2> pts;
  pts.reserve(idx.size());
  const double d = cfg.spacing();
  if (side == Side::BS) {
    for (double n : idx) pts.push_back({0.0, n * d});
    return pts;
  }
  const double cx = -geo.range * std::cos(geo.bearing);
  const double cy = geo.range * std::sin(geo.bearing);
  const double rot = geo.tilt - geo.bearing;
  for (double m : idx)
    pts.push_back({cx - m * d * std::sin(rot), cy + m * d * std::cos(rot)});
  return pts;
}

double exact_distance(double m, double n, const ArrayPair& pair,
                      const LinkGeometry& geo) {
  const double l = geo.range;
  const double lam = pair.wavelength();
  const double eu = pair.ue.sparsity;
  const double eb = pair.bs.sparsity;
  const double radicand =
      1.0 + lam / l * (m * eu * std::sin(geo.tilt) - n * eb * std::sin(geo.bearing)) +
      lam * lam / (4.0 * l * l) *
          (m * eu * m * eu + n * eb * n * eb -
           2.0 * m * n * eu * eb * std::cos(geo.bearing - geo.tilt));
  if (radicand <= 0.0)
    throw std::domain_error("exact_distance: non-positive radicand (corrupted geometry)");
  return l * std::sqrt(radicand);
}

double far_distance(double m, double n, const ArrayPair& pair,
                    const LinkGeometry& geo) {
  return geo.range + m * pair.ue.spacing() * std::sin(geo.tilt) -
         n * pair.bs.spacing() * std::sin(geo.bearing);
}

double near_distance(double m, double n, const ArrayPair& pair,
                     const LinkGeometry& geo) {
  const double l = geo.range;
  const double lam = pair.wavelength();
  const double eu = pair.ue.sparsity;
  const double eb = pair.bs.sparsity;
  const double ct = std::cos(geo.tilt);
  const double cp = std::cos(geo.bearing);
  const double mu = m * eu;
  const double nb = n * eb;
  return l + lam / 2.0 * (mu * std::sin(geo.tilt) - nb * std::sin(geo.bearing)) +
         (lam * mu * ct) * (lam * mu * ct) / (8.0 * l) +
         lam * lam * (nb * cp) * (nb * cp) / (8.0 * l) -
         lam * lam / (4.0 * l) * mu * nb * cp * ct;
}

double rayleigh_distance(const ArrayConfig& bs, const ArrayConfig& ue) {
  const double d = ue.aperture() + bs.aperture();
  return 2.0 * d * d / bs.wavelength;
}

double near_far_boundary(const ArrayPair& pair, const LinkGeometry& geo) {
  return pair.wavelength() * pair.n_max() * (pair.n_min() - 1) * geo.cos_nu() *
         pair.eta_product() / 4.0;
}

}  // namespace sparsemimo
