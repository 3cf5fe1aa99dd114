#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wpcn/config.hpp"
#include "wpcn/report.hpp"
#include "wpcn/solver.hpp"
#include "wpcn/sweep.hpp"

namespace py = pybind11;
using namespace wpcn;

namespace {

py::dict sweep_row(const SweepRow& r) {
  const Solution& s = r.solution;
  py::dict d;
  d["abscissa"] = r.abscissa;
  d["scheme"] = to_string(r.scheme.scheme);
  d["rb"] = r.scheme.rb;
  d["common_throughput"] = s.common_throughput;
  d["allocation"] = s.allocation;
  d["exchange_energies"] = s.exchange_energies;
  d["status"] = r.status;
  return d;
}

}  // namespace

PYBIND11_MODULE(_wpcn, m) {
  m.doc() = "Two-user wireless powered network with backscatter-assisted cooperation.";

  static py::exception<SolverError> solver_error(m, "SolverError", PyExc_RuntimeError);
  static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SolverError& e) {
      PyErr_SetString(solver_error.ptr(), e.what());
    } catch (const ConfigError& e) {
      PyErr_SetString(config_error.ptr(), e.what());
    }
  });

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("p0", &SystemParams::p0)
      .def_readwrite("eta", &SystemParams::eta)
      .def_readwrite("beta", &SystemParams::beta)
      .def_readwrite("mu1", &SystemParams::mu1)
      .def_readwrite("mu2", &SystemParams::mu2)
      .def_readwrite("sigma0_sq", &SystemParams::sigma0_sq)
      .def_readwrite("sigmas_sq", &SystemParams::sigmas_sq)
      .def_readwrite("rb", &SystemParams::rb)
      .def_readwrite("s_rate", &SystemParams::s_rate)
      .def_readwrite("t0", &SystemParams::t0)
      .def_readwrite("bandwidth", &SystemParams::bandwidth)
      .def_readwrite("ga", &SystemParams::ga)
      .def_readwrite("fd", &SystemParams::fd)
      .def_readwrite("lambda_pl", &SystemParams::lambda_pl)
      .def("samples_per_bit", &SystemParams::samples_per_bit);

  py::class_<ChannelGains>(m, "ChannelGains")
      .def(py::init<>())
      .def_readwrite("h_e1", &ChannelGains::h_e1)
      .def_readwrite("h_e2", &ChannelGains::h_e2)
      .def_readwrite("h_1a", &ChannelGains::h_1a)
      .def_readwrite("h_2a", &ChannelGains::h_2a)
      .def_readwrite("h_12", &ChannelGains::h_12)
      .def_readwrite("h_21", &ChannelGains::h_21);

  py::class_<Topology>(m, "Topology")
      .def(py::init<>())
      .def(py::init([](double d_e1, double d_e2, double d_1a, double d_2a, double d_12) {
             return Topology{d_e1, d_e2, d_1a, d_2a, d_12};
           }),
           py::arg("d_e1"), py::arg("d_e2"), py::arg("d_1a"), py::arg("d_2a"), py::arg("d_12"))
      .def_readwrite("d_e1", &Topology::d_e1)
      .def_readwrite("d_e2", &Topology::d_e2)
      .def_readwrite("d_1a", &Topology::d_1a)
      .def_readwrite("d_2a", &Topology::d_2a)
      .def_readwrite("d_12", &Topology::d_12);

  py::class_<TimeAllocation>(m, "TimeAllocation")
      .def(py::init<>())
      .def_static("with_symmetric_joint", &TimeAllocation::with_symmetric_joint, py::arg("t0"),
                  py::arg("t1"), py::arg("t21"), py::arg("t22"), py::arg("t3"))
      .def_readwrite("t0", &TimeAllocation::t0)
      .def_readwrite("t1", &TimeAllocation::t1)
      .def_readwrite("t21", &TimeAllocation::t21)
      .def_readwrite("t22", &TimeAllocation::t22)
      .def_readwrite("t31", &TimeAllocation::t31)
      .def_readwrite("t32", &TimeAllocation::t32)
      .def("t3", &TimeAllocation::t3)
      .def("total", &TimeAllocation::total)
      .def("__repr__", [](const TimeAllocation& t) {
        return py::str("TimeAllocation(t0={}, t1={}, t21={}, t22={}, t31={}, t32={})")
            .format(t.t0, t.t1, t.t21, t.t22, t.t31, t.t32);
      });

  py::enum_<OwnSlotMode>(m, "OwnSlotMode")
      .value("none", OwnSlotMode::none)
      .value("full", OwnSlotMode::full)
      .value("bit_averaged", OwnSlotMode::bit_averaged);

  py::class_<HarvestPolicy>(m, "HarvestPolicy")
      .def(py::init<>())
      .def_readwrite("own_slot_mode", &HarvestPolicy::own_slot_mode)
      .def_readwrite("include_cross_term", &HarvestPolicy::include_cross_term);

  py::enum_<Link>(m, "Link")
      .value("one_to_two", Link::one_to_two)
      .value("two_to_one", Link::two_to_one);

  py::class_<EnergyLedger>(m, "EnergyLedger")
      .def_readonly("e1_wet", &EnergyLedger::e1_wet)
      .def_readonly("e2_wet", &EnergyLedger::e2_wet)
      .def_readonly("e1_bs", &EnergyLedger::e1_bs)
      .def_readonly("e2_bs", &EnergyLedger::e2_bs);

  py::class_<LinkQuality>(m, "LinkQuality")
      .def_readonly("pe1", &LinkQuality::pe1)
      .def_readonly("pe2", &LinkQuality::pe2)
      .def_readonly("c1", &LinkQuality::c1)
      .def_readonly("c2", &LinkQuality::c2);

  py::class_<RateBreakdown>(m, "RateBreakdown")
      .def_readonly("r1_ex", &RateBreakdown::r1_ex)
      .def_readonly("r2_ex", &RateBreakdown::r2_ex)
      .def_readonly("r3", &RateBreakdown::r3)
      .def_readonly("r1", &RateBreakdown::r1)
      .def_readonly("r2", &RateBreakdown::r2)
      .def_readonly("link", &RateBreakdown::link)
      .def_readonly("p1", &RateBreakdown::p1)
      .def_readonly("p2", &RateBreakdown::p2)
      .def_readonly("ledger", &RateBreakdown::ledger)
      .def("common", &RateBreakdown::common);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("z_tolerance", &SolverConfig::z_tolerance)
      .def_readwrite("inner_tolerance", &SolverConfig::inner_tolerance)
      .def_readwrite("max_iterations", &SolverConfig::max_iterations)
      .def_readwrite("grid_resolution", &SolverConfig::grid_resolution);

  py::class_<SolverDiagnostics>(m, "SolverDiagnostics")
      .def_readonly("iterations", &SolverDiagnostics::iterations)
      .def_readonly("converged", &SolverDiagnostics::converged)
      .def_readonly("upper_bound", &SolverDiagnostics::upper_bound)
      .def_readonly("active_constraints", &SolverDiagnostics::active_constraints)
      .def_readonly("note", &SolverDiagnostics::note);

  py::class_<Solution>(m, "Solution")
      .def_readonly("allocation", &Solution::allocation)
      .def_readonly("exchange_energies", &Solution::exchange_energies)
      .def_readonly("common_throughput", &Solution::common_throughput)
      .def_readonly("breakdown", &Solution::breakdown)
      .def_readonly("diagnostics", &Solution::diagnostics);

  py::enum_<SignalModel>(m, "SignalModel")
      .value("gaussian_energy_signal", SignalModel::gaussian_energy_signal)
      .value("unit_modulus_random_phase", SignalModel::unit_modulus_random_phase);

  py::class_<DetectorScenario>(m, "DetectorScenario")
      .def(py::init<>())
      .def(py::init([](Link direction, std::uint64_t n_bits, std::uint64_t seed,
                       SignalModel model) { return DetectorScenario{direction, n_bits, seed, model}; }),
           py::arg("direction") = Link::one_to_two, py::arg("n_bits") = 100000,
           py::arg("seed") = 1, py::arg("signal_model") = SignalModel::gaussian_energy_signal)
      .def_readwrite("direction", &DetectorScenario::direction)
      .def_readwrite("n_bits", &DetectorScenario::n_bits)
      .def_readwrite("seed", &DetectorScenario::seed)
      .def_readwrite("signal_model", &DetectorScenario::signal_model);

  py::class_<BerEstimate>(m, "BerEstimate")
      .def_readonly("p_hat", &BerEstimate::p_hat)
      .def_readonly("ci_halfwidth", &BerEstimate::ci_halfwidth)
      .def_readonly("n_bits", &BerEstimate::n_bits)
      .def_readonly("threshold", &BerEstimate::threshold)
      .def_readonly("best_threshold", &BerEstimate::best_threshold)
      .def_readonly("best_threshold_ber", &BerEstimate::best_threshold_ber);

  py::class_<LemmaComparison>(m, "LemmaComparison")
      .def_readonly("lemma_ber", &LemmaComparison::lemma_ber)
      .def_readonly("monte_carlo", &LemmaComparison::monte_carlo)
      .def_readonly("ratio", &LemmaComparison::ratio)
      .def_readonly("samples_per_bit", &LemmaComparison::samples_per_bit);

  py::class_<Config>(m, "Config")
      .def_readonly("params", &Config::params)
      .def_readonly("gains", &Config::gains)
      .def_readonly("policy", &Config::policy)
      .def_readonly("solver", &Config::solver)
      .def("describe", [](const Config& c) { return describe(c); });

  m.def("path_loss_gain", &path_loss_gain, py::arg("d"), py::arg("params") = SystemParams{});
  m.def("reference_gains", &reference_gains, py::arg("params") = SystemParams{});
  m.def("gains_from_topology", &gains_from_topology, py::arg("topology"),
        py::arg("params") = SystemParams{});
  m.def("validate", py::overload_cast<const SystemParams&, const ChannelGains&>(&validate),
        py::arg("params"), py::arg("gains"));

  m.def("harvest_wet", &harvest_wet, py::arg("t1"), py::arg("gains"), py::arg("params"));
  m.def("harvest_backscatter", &harvest_backscatter, py::arg("t21"), py::arg("t22"),
        py::arg("gains"), py::arg("params"), py::arg("policy") = HarvestPolicy{});
  m.def("ber_backscatter", &ber_backscatter, py::arg("direction"), py::arg("gains"),
        py::arg("params"));
  m.def("bsc_capacity", &bsc_capacity, py::arg("pe"));
  m.def("overall_rates", &overall_rates, py::arg("allocation"), py::arg("gains"),
        py::arg("params"), py::arg("policy") = HarvestPolicy{});
  m.def("benchmark_rates", &benchmark_rates, py::arg("allocation"), py::arg("e_ex1"),
        py::arg("e_ex2"), py::arg("gains"), py::arg("params"));

  m.def("maximize_common_throughput", &maximize_common_throughput, py::arg("gains"),
        py::arg("params"), py::arg("policy") = HarvestPolicy{},
        py::arg("config") = SolverConfig{}, py::call_guard<py::gil_scoped_release>());
  m.def("maximize_benchmark", &maximize_benchmark, py::arg("gains"), py::arg("params"),
        py::arg("config") = SolverConfig{}, py::call_guard<py::gil_scoped_release>());
  m.def("grid_oracle", &grid_oracle, py::arg("gains"), py::arg("params"),
        py::arg("policy") = HarvestPolicy{}, py::arg("resolution") = 0.005,
        py::call_guard<py::gil_scoped_release>());

  m.def("simulate_ber", &simulate_ber, py::arg("scenario"), py::arg("gains"), py::arg("params"),
        py::call_guard<py::gil_scoped_release>());
  m.def("compare_with_lemma", &compare_with_lemma, py::arg("scenario"), py::arg("gains"),
        py::arg("params"), py::call_guard<py::gil_scoped_release>());

  m.def("load_config", [](const std::string& path) { return load_config(path); },
        py::arg("path"));
  m.def(
      "run_preset",
      [](const std::string& name) {
        if (name != "fig4" && name != "fig5") {
          throw py::value_error("preset must be 'fig4' or 'fig5'");
        }
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(name == "fig4" ? fig4_preset() : fig5_preset());
        }
        py::list out;
        for (const auto& r : rows) out.append(sweep_row(r));
        return out;
      },
      py::arg("name"), "Run a built-in sweep and return one dict per row.");
}
