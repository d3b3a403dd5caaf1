#ifndef SPARSEMIMO_EDOF_HPP
#define SPARSEMIMO_EDOF_HPP

#include <Eigen/Dense>
#include <vector>

#include "sparsemimo/channel.hpp"

namespace sparsemimo {

/// Two-lobe approximation of a lobe pattern.
struct LobeFit {
  double alpha = 0.0;  // effective beamwidth fraction, in [0, 1]
  double g_high = 0.0;
  double g_low = 0.0;
};

/// Parameters of the correlation lobe pattern f_eta(Delta).
struct LobeParams {
  double range;       // l, meters
  double wavelength;  // lambda
  double eta;         // eta_BS * eta_UE
  double cos_nu;      // cos(theta) cos(phi)
  int n_max;          // Nbar = max(N_UE, N_BS)
  int n_min;          // Nmin = min(N_UE, N_BS)
};

enum class EdofBranch { FarUnit, Rising, Saturated };

struct EdofBreakdown {
  double value = 1.0;
  EdofBranch branch = EdofBranch::FarUnit;
  double threshold_low = 0.0;   // eta breakpoint into the rising branch
  double threshold_high = 0.0;  // eta breakpoint into the saturated branch
};

/// (tr(HH^H) / ||HH^H||_F)^2 == (sum sigma_i^2)^2 / sum sigma_i^4.
double edof_exact(const MatrixXcd& h);
double edof_exact(const ChannelMatrix& h);

/// Count of singular values >= fraction * sigma_1.
int dominant_singular_count(const MatrixXcd& h, double fraction = 0.1);

/// HH^H when N_UE > N_BS, else H^H H.
MatrixXcd correlation_matrix(const MatrixXcd& h);

/// Lobe pattern sin^2(c Nbar Delta) / sin^2(c Delta), c = lambda pi eta cos_nu / (4 l);
/// removable singularities resolve to Nbar^2.
double f_eta(double delta, const LobeParams& p);

struct LobeGeometry {
  double null_to_null_bw = 0.0;
  std::vector<double> grating_locations;
  bool grating_exists = false;
};

/// Main-lobe beamwidth and grating-lobe locations within |Delta| <= Nmin - 1.
LobeGeometry lobe_geometry(const LobeParams& p);

/// Occurrence count of an integer spacing Delta among Nmin x Nmin index pairs.
int weight_w(int delta, int n_min);

/// Half-width of the effective lobe support: t = 4 alpha l / (lambda Nbar eta cos_nu).
double lobe_half_width(const LobeParams& p, double alpha);

/// Least-squares two-lobe fit of f_eta sampled on the integer grid
/// Delta in [-(Nmin-1), Nmin-1]. Deterministic: alpha is scanned on a 0.01
/// grid (largest alpha wins ties); for each alpha the level assignment is
/// scored on log10 samples, and the returned gains are the occurrence-
/// weighted means of the raw samples inside/outside the lobe supports.
LobeFit two_lobe_fit(const std::vector<double>& deltas,
                     const std::vector<double>& samples, const LobeParams& p);

/// Convenience overload sampling f_eta on the integer grid itself.
LobeFit two_lobe_fit(const LobeParams& p);

struct LobeCountSums {
  long long s0 = 0;      // weighted count inside the main lobe
  long long s_plus = 0;  // weighted count inside positive grating lobes
};

/// Closed-form weighted counts over the two-lobe support.
LobeCountSums lobe_count_sums(const LobeParams& p, const LobeFit& fit);

/// Piecewise closed-form EDoF in eta, with tagged branch and breakpoints.
EdofBreakdown edof_closed_form(const LobeParams& p, const LobeFit& fit);

}  // namespace sparsemimo

#endif
