#ifndef SPARSEMIMO_CHANNEL_HPP
#define SPARSEMIMO_CHANNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "sparsemimo/geometry.hpp"

namespace sparsemimo {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;

enum class DistanceModel { Exact, Near, Far };

/// N_BS x N_UE channel matrix together with its reference gain and provenance.
struct ChannelMatrix {
  MatrixXcd entries;  // rows: BS elements, cols: UE elements
  Complex beta{1.0, 0.0};
  DistanceModel model_tag = DistanceModel::Exact;
};

struct Scatterer {
  Point2 position;
  Complex coefficient;  // alpha_q
  double extra_phase;   // psi_q in [0, 2pi)
  double rcs_weight;    // rho_tilde_q
};

struct ScattererSet {
  std::vector<Scatterer> scatterers;
  double rician_factor = 1.0;  // F, linear
};

/// Free-space reference gain magnitude lambda / (4 pi l), zero phase.
Complex default_beta(double wavelength, double range);

/// LoS channel: entry (n, m) = beta * exp(-j 2pi/lambda (l_{m,n} - l)).
ChannelMatrix los_channel(const ArrayPair& pair, const LinkGeometry& geo,
                          Complex beta, DistanceModel model);

/// Far-field steering vector: entry exp(-j pi n eta sin(angle)).
VectorXcd steering_vector_far(const ArrayConfig& cfg, double angle);

/// Near-field steering vector phased against the array center; the source
/// point must not coincide with any element.
VectorXcd steering_vector_near(const ArrayConfig& cfg,
                               const std::vector<Point2>& elements,
                               const Point2& source);

/// One-ring NLoS component, Q scatterers on a circle around the UE center.
ChannelMatrix nlos_channel(const ArrayPair& pair, const LinkGeometry& geo,
                           const ScattererSet& scatterers);

/// sqrt(F/(F+1)) H_LoS + sqrt(1/(F+1)) H_NLoS.
ChannelMatrix rician_combine(const ChannelMatrix& los, const ChannelMatrix& nlos,
                             double rician_factor);

/// Q scatterers uniform on the ring of given radius around the UE center,
/// i.i.d. standard complex Gaussian coefficients; deterministic per seed.
ScattererSet one_ring_scatterers(const LinkGeometry& geo, double ring_radius,
                                 int n_paths, std::uint64_t seed);

/// y = sum_k H_k x_k + z with z ~ CN(0, noise_power I); deterministic per seed.
VectorXcd receive_combine(const std::vector<ChannelMatrix>& channels,
                          const std::vector<VectorXcd>& tx_signals,
                          double noise_power, std::uint64_t seed);

}  // namespace sparsemimo

#endif
