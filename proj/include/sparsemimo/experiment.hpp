#ifndef SPARSEMIMO_EXPERIMENT_HPP
#define SPARSEMIMO_EXPERIMENT_HPP

#include "sparsemimo/config.hpp"
#include "sparsemimo/multiuser.hpp"
#include "sparsemimo/table.hpp"

namespace sparsemimo {

/// Deterministic sweep runner: one row per sweep point, columns per kind.
ResultTable run_experiment(const ScenarioConfig& cfg);

/// Two-lobe fit of the normalized receive beam pattern, sampled on a dense
/// grid over the spatial-angle support [-2 sin(phi_max), 2 sin(phi_max)].
TwoLobeBeamFit fit_beam_pattern(int n_bs, double eta_bs, double sin_phi_max);

}  // namespace sparsemimo

#endif
