#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sparsemimo/channel.hpp"
#include "sparsemimo/config.hpp"
#include "sparsemimo/edof.hpp"
#include "sparsemimo/experiment.hpp"
#include "sparsemimo/geometry.hpp"
#include "sparsemimo/multiuser.hpp"
#include "sparsemimo/rate.hpp"
#include "sparsemimo/table.hpp"

namespace py = pybind11;
using namespace sparsemimo;

PYBIND11_MODULE(_sparsemimo, m) {
  m.doc() = "Sparse-array MIMO link analysis core";

  py::class_<ArrayConfig>(m, "ArrayConfig")
      .def(py::init<int, double, double>(), py::arg("n_elements"),
           py::arg("sparsity"), py::arg("wavelength"))
      .def_readonly("n_elements", &ArrayConfig::n_elements)
      .def_readonly("sparsity", &ArrayConfig::sparsity)
      .def_readonly("wavelength", &ArrayConfig::wavelength)
      .def("spacing", &ArrayConfig::spacing)
      .def("aperture", &ArrayConfig::aperture);

  py::class_<LinkGeometry>(m, "LinkGeometry")
      .def(py::init<double, double, double>(), py::arg("range"),
           py::arg("bearing") = 0.0, py::arg("tilt") = 0.0)
      .def_readonly("range", &LinkGeometry::range)
      .def_readonly("bearing", &LinkGeometry::bearing)
      .def_readonly("tilt", &LinkGeometry::tilt)
      .def("cos_nu", &LinkGeometry::cos_nu);

  py::class_<ArrayPair>(m, "ArrayPair")
      .def(py::init<ArrayConfig, ArrayConfig>(), py::arg("ue"), py::arg("bs"))
      .def_readonly("ue", &ArrayPair::ue)
      .def_readonly("bs", &ArrayPair::bs)
      .def("n_min", &ArrayPair::n_min)
      .def("n_max", &ArrayPair::n_max)
      .def("eta_product", &ArrayPair::eta_product);

  m.def("exact_distance", &exact_distance, py::arg("m"), py::arg("n"),
        py::arg("pair"), py::arg("geo"));
  m.def("far_distance", &far_distance, py::arg("m"), py::arg("n"),
        py::arg("pair"), py::arg("geo"));
  m.def("near_distance", &near_distance, py::arg("m"), py::arg("n"),
        py::arg("pair"), py::arg("geo"));
  m.def("rayleigh_distance", &rayleigh_distance, py::arg("bs"), py::arg("ue"));
  m.def("near_far_boundary", &near_far_boundary, py::arg("pair"),
        py::arg("geo"));

  py::enum_<DistanceModel>(m, "DistanceModel")
      .value("EXACT", DistanceModel::Exact)
      .value("NEAR", DistanceModel::Near)
      .value("FAR", DistanceModel::Far);

  m.def(
      "los_channel",
      [](const ArrayPair& pair, const LinkGeometry& geo, Complex beta,
         DistanceModel model) {
        return los_channel(pair, geo, beta, model).entries;
      },
      py::arg("pair"), py::arg("geo"), py::arg("beta") = Complex{1.0, 0.0},
      py::arg("model") = DistanceModel::Exact);
  m.def("default_beta", &default_beta, py::arg("wavelength"),
        py::arg("range"));

  m.def("edof_exact",
        py::overload_cast<const MatrixXcd&>(&edof_exact), py::arg("h"));
  m.def("dominant_singular_count", &dominant_singular_count, py::arg("h"),
        py::arg("fraction") = 0.1);

  py::class_<LobeParams>(m, "LobeParams")
      .def(py::init([](double range, double wavelength, double eta,
                       double cos_nu, int n_max, int n_min) {
             return LobeParams{range, wavelength, eta, cos_nu, n_max, n_min};
           }),
           py::arg("range"), py::arg("wavelength"), py::arg("eta"),
           py::arg("cos_nu"), py::arg("n_max"), py::arg("n_min"))
      .def_readwrite("eta", &LobeParams::eta);

  py::class_<LobeFit>(m, "LobeFit")
      .def(py::init<>())
      .def_readwrite("alpha", &LobeFit::alpha)
      .def_readwrite("g_high", &LobeFit::g_high)
      .def_readwrite("g_low", &LobeFit::g_low);

  py::enum_<EdofBranch>(m, "EdofBranch")
      .value("FAR_UNIT", EdofBranch::FarUnit)
      .value("RISING", EdofBranch::Rising)
      .value("SATURATED", EdofBranch::Saturated);

  py::class_<EdofBreakdown>(m, "EdofBreakdown")
      .def_readonly("value", &EdofBreakdown::value)
      .def_readonly("branch", &EdofBreakdown::branch)
      .def_readonly("threshold_low", &EdofBreakdown::threshold_low)
      .def_readonly("threshold_high", &EdofBreakdown::threshold_high);

  m.def("f_eta", &f_eta, py::arg("delta"), py::arg("params"));
  m.def("two_lobe_fit", py::overload_cast<const LobeParams&>(&two_lobe_fit),
        py::arg("params"));
  m.def("edof_closed_form", &edof_closed_form, py::arg("params"),
        py::arg("fit"));

  py::class_<PowerBudget>(m, "PowerBudget")
      .def(py::init<double, double>(), py::arg("total_power"),
           py::arg("noise_power"))
      .def_readonly("total_power", &PowerBudget::total_power)
      .def_readonly("noise_power", &PowerBudget::noise_power)
      .def("rx_snr", &PowerBudget::rx_snr, py::arg("beta_mag"));

  py::enum_<SnrRegime>(m, "SnrRegime")
      .value("LOW", SnrRegime::Low)
      .value("MID", SnrRegime::Mid)
      .value("HIGH", SnrRegime::High);

  py::class_<RateRegime>(m, "RateRegime")
      .def_readonly("regime", &RateRegime::regime)
      .def_readonly("boundary_low", &RateRegime::boundary_low)
      .def_readonly("boundary_high", &RateRegime::boundary_high)
      .def_readonly("optimal_edof", &RateRegime::optimal_edof)
      .def_readonly("max_rate", &RateRegime::max_rate);

  m.def("rate_no_csit", &rate_no_csit, py::arg("h"), py::arg("budget"));
  m.def("waterfill", &waterfill, py::arg("singular_values"),
        py::arg("budget"));
  m.def("waterfill_rate", &waterfill_rate, py::arg("singular_values"),
        py::arg("budget"));
  m.def("rate_equal_power", &rate_equal_power, py::arg("singular_values"),
        py::arg("budget"));
  m.def("rate_edof_approx", &rate_edof_approx, py::arg("edof"),
        py::arg("n_ue"), py::arg("n_bs"), py::arg("rx_snr"));
  m.def("x_opt", &x_opt, py::arg("capacity_coeff"));
  m.def("x_opt_approx", &x_opt_approx, py::arg("capacity_coeff"));
  m.def("max_rate_regime", &max_rate_regime, py::arg("n_ue"), py::arg("n_bs"),
        py::arg("rx_snr"));

  m.def("beam_pattern", &beam_pattern, py::arg("delta"), py::arg("n_bs"),
        py::arg("eta_bs"));
  m.def("mrt_mrc_sinr", &mrt_mrc_sinr, py::arg("bearings"),
        py::arg("rx_snrs"), py::arg("n_ue"), py::arg("n_bs"),
        py::arg("eta_bs"), py::arg("user"));
  m.def("collision_probability", &collision_probability, py::arg("eta_bs"),
        py::arg("n_bs"), py::arg("phi_max"), py::arg("alpha"));

  py::class_<TwoLobeBeamFit>(m, "TwoLobeBeamFit")
      .def(py::init<>())
      .def_readwrite("g_main", &TwoLobeBeamFit::g_main)
      .def_readwrite("g_side", &TwoLobeBeamFit::g_side)
      .def_readwrite("alpha", &TwoLobeBeamFit::alpha);

  m.def("rate_cdf_closed", &rate_cdf_closed, py::arg("rate_threshold"),
        py::arg("n_users"), py::arg("rx_snr"), py::arg("fit"),
        py::arg("n_bs"), py::arg("eta_bs"), py::arg("sin_phi_max"));
  m.def("fit_beam_pattern", &fit_beam_pattern, py::arg("n_bs"),
        py::arg("eta_bs"), py::arg("sin_phi_max"));

  py::class_<UserPlacement>(m, "UserPlacement")
      .def(py::init([](int k, double range, double phi_max,
                       const std::string& law) {
             return UserPlacement(k, range, phi_max,
                                  law == "uniform-angle"
                                      ? PlacementLaw::UniformAngle
                                      : PlacementLaw::UniformSin);
           }),
           py::arg("n_users"), py::arg("range"), py::arg("phi_max"),
           py::arg("law") = "uniform-sin");

  m.def("sum_rate_far", &sum_rate_far, py::arg("placement"),
        py::arg("rx_snrs"), py::arg("n_ue"), py::arg("n_bs"),
        py::arg("eta_bs"), py::arg("eta_ue"), py::arg("seed"));

  m.def(
      "run_experiment_text",
      [](const std::string& config_text, const std::string& format) {
        const auto cfg =
            parse_config(config_text, ExperimentKind::EdofSweep);
        const auto table = run_experiment(cfg);
        return format == "json" ? to_json(table) : to_csv(table);
      },
      py::arg("config_text"), py::arg("format") = "csv",
      "Run a key=value scenario (must set 'experiment') and return the "
      "rendered table.");
}
