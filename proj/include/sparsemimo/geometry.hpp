#ifndef SPARSEMIMO_GEOMETRY_HPP
#define SPARSEMIMO_GEOMETRY_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sparsemimo {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// One uniform sparse linear array: N elements spaced d = sparsity * lambda/2.
struct ArrayConfig {
  int n_elements;
  double sparsity;    // eta >= 1, real valued
  double wavelength;  // meters

  ArrayConfig(int n, double eta, double lambda)
      : n_elements(n), sparsity(eta), wavelength(lambda) {
    if (n_elements < 1) throw std::invalid_argument("n_elements must be >= 1");
    if (sparsity < 1.0) throw std::invalid_argument("sparsity must be >= 1");
    if (wavelength <= 0.0) throw std::invalid_argument("wavelength must be > 0");
  }

  double spacing() const { return sparsity * wavelength / 2.0; }
  double aperture() const { return (n_elements - 1) * spacing(); }
};

/// Geometry of one UE-BS link: range l, bearing phi, array tilt theta.
struct LinkGeometry {
  double range;    // l > 0, meters
  double bearing;  // phi in [-pi/2, pi/2]
  double tilt;     // theta in [-pi/2, pi/2]

  LinkGeometry(double l, double phi = 0.0, double theta = 0.0)
      : range(l), bearing(phi), tilt(theta) {
    constexpr double half_pi = 1.5707963267948966;
    if (range <= 0.0) throw std::invalid_argument("range must be > 0");
    if (bearing < -half_pi || bearing > half_pi)
      throw std::invalid_argument("bearing must be in [-pi/2, pi/2]");
    if (tilt < -half_pi || tilt > half_pi)
      throw std::invalid_argument("tilt must be in [-pi/2, pi/2]");
  }

  double cos_nu() const;  // cos(theta) * cos(phi)
};

enum class Side { BS, UE };

/// Symmetric element indices {i - (N-1)/2}; half-integer steps for even N.
std::vector<double> element_indices(int n_elements);

/// BS elements on the y-axis, UE elements around (-l cos phi, l sin phi).
std::vector<Point2> element_positions(const ArrayConfig& cfg,
                                      const LinkGeometry& geo, Side side);

struct ArrayPair {
  ArrayConfig ue;
  ArrayConfig bs;

  ArrayPair(ArrayConfig ue_, ArrayConfig bs_) : ue(ue_), bs(bs_) {
    if (ue.wavelength != bs.wavelength)
      throw std::invalid_argument("UE and BS wavelengths must match");
  }
  double wavelength() const { return bs.wavelength; }
  int n_min() const { return std::min(ue.n_elements, bs.n_elements); }
  int n_max() const { return std::max(ue.n_elements, bs.n_elements); }
  /// Product sparsity eta = eta_BS * eta_UE.
  double eta_product() const { return ue.sparsity * bs.sparsity; }
};

/// Exact element-to-element distance (m: UE index, n: BS index).
double exact_distance(double m, double n, const ArrayPair& pair,
                      const LinkGeometry& geo);

/// First-order (plane-wave) distance.
double far_distance(double m, double n, const ArrayPair& pair,
                    const LinkGeometry& geo);

/// Second-order (spherical-wave) distance.
double near_distance(double m, double n, const ArrayPair& pair,
                     const LinkGeometry& geo);

/// Classic Rayleigh distance 2 (D_UE + D_BS)^2 / lambda.
double rayleigh_distance(const ArrayConfig& bs, const ArrayConfig& ue);

/// EDoF-based near/far boundary: lambda * Nmax * (Nmin - 1) * cos(nu) * eta / 4.
double near_far_boundary(const ArrayPair& pair, const LinkGeometry& geo);

}  // namespace sparsemimo

#endif
