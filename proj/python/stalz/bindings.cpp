// bindings.cpp — pybind11 surface for the stalz core
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "stalz/sweep.hpp"

namespace py = pybind11;
using namespace stalz;

namespace {

py::object states_as_list(const EvolutionResult& result) {
    py::list out;
    if (result.is_pure()) {
        for (const PureState& psi : result.pure()) out.append(Vector(psi.amplitudes()));
    } else {
        for (const DensityMatrix& rho : result.density()) out.append(Matrix(rho.entries()));
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Shortcuts-to-adiabaticity toolkit for the driven two-level system";

    py::register_exception<config_error>(m, "ConfigError");
    py::register_exception<numeric_error>(m, "NumericError");
    py::register_exception<io_error>(m, "IoError");

    // ---- qops ----------------------------------------------------------------
    py::class_<Operator>(m, "Operator")
        .def(py::init<Matrix>(), py::arg("entries"))
        .def_static("zero", &Operator::zero)
        .def_static("identity", &Operator::identity)
        .def_static("sigma_x", &Operator::sigma_x)
        .def_static("sigma_y", &Operator::sigma_y)
        .def_static("sigma_z", &Operator::sigma_z)
        .def_property_readonly("dim", &Operator::dim)
        .def_property_readonly("entries",
                               [](const Operator& op) { return Matrix(op.entries()); })
        .def("is_hermitian", &Operator::is_hermitian, py::arg("tol") = 1e-12)
        .def("dagger", &Operator::dagger)
        .def("max_abs", &Operator::max_abs)
        .def(
            "__add__", [](const Operator& a, const Operator& b) { return a + b; },
            py::is_operator())
        .def(
            "__sub__", [](const Operator& a, const Operator& b) { return a - b; },
            py::is_operator())
        .def(
            "__matmul__", [](const Operator& a, const Operator& b) { return a * b; },
            py::is_operator())
        .def(
            "__rmul__", [](const Operator& a, Complex c) { return c * a; }, py::is_operator());

    py::class_<PureState>(m, "PureState")
        .def(py::init<Vector, double>(), py::arg("amplitudes"), py::arg("norm_tol") = 1e-10)
        .def_static("basis", &PureState::basis)
        .def_static("normalized", &PureState::normalized)
        .def_property_readonly("dim", &PureState::dim)
        .def_property_readonly("amplitudes",
                               [](const PureState& s) { return Vector(s.amplitudes()); })
        .def("overlap", &PureState::overlap)
        .def("projector", &PureState::projector);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init<Matrix, double, double>(), py::arg("entries"), py::arg("tol") = 1e-10,
             py::arg("psd_tol") = 1e-8)
        .def_static("pure", &DensityMatrix::pure)
        .def_static("maximally_mixed", &DensityMatrix::maximally_mixed)
        .def_property_readonly("dim", &DensityMatrix::dim)
        .def_property_readonly("entries",
                               [](const DensityMatrix& r) { return Matrix(r.entries()); })
        .def("purity", &DensityMatrix::purity)
        .def("population", &DensityMatrix::population)
        .def("coherence", &DensityMatrix::coherence);

    py::class_<EigDecomposition>(m, "EigDecomposition")
        .def_readonly("values", &EigDecomposition::values)
        .def_readonly("vectors", &EigDecomposition::vectors);

    m.def("commutator", &commutator);
    m.def("expm_herm", &expm_herm, py::arg("h"), py::arg("t"));
    m.def("eig_herm", &eig_herm);
    m.def("hs_norm_sq", &hs_norm_sq);
    m.def("fidelity",
          py::overload_cast<const DensityMatrix&, const PureState&>(&fidelity));
    m.def("fidelity_pure", py::overload_cast<const PureState&, const PureState&>(&fidelity));

    // ---- protocols -------------------------------------------------------------
    py::class_<LZParams>(m, "LZParams")
        .def(py::init<double, double, double>(), py::arg("delta"), py::arg("theta0"),
             py::arg("tau"))
        .def_readonly("delta", &LZParams::delta)
        .def_readonly("theta0", &LZParams::theta0)
        .def_readonly("tau", &LZParams::tau);

    py::class_<Schedule>(m, "Schedule")
        .def(py::init<std::function<double(double)>, std::function<double(double)>>(),
             py::arg("theta"), py::arg("dtheta"))
        .def_static("linear", &Schedule::linear)
        .def("theta", &Schedule::theta)
        .def("dtheta", &Schedule::dtheta);

    py::class_<PhaseChoice>(m, "PhaseChoice")
        .def_static("adiabatic", &PhaseChoice::adiabatic)
        .def_static("null_phase", &PhaseChoice::null_phase)
        .def_static("custom", &PhaseChoice::custom);

    py::enum_<ProtocolKind>(m, "ProtocolKind")
        .value("adiabatic", ProtocolKind::adiabatic)
        .value("traditional_tqd", ProtocolKind::traditional_tqd)
        .value("optimal_tqd", ProtocolKind::optimal_tqd)
        .value("generalized_tqd", ProtocolKind::generalized_tqd);

    py::class_<ProtocolSpec>(m, "ProtocolSpec")
        .def_static("adiabatic",
                    py::overload_cast<const LZParams&>(&ProtocolSpec::adiabatic))
        .def_static("traditional_tqd",
                    py::overload_cast<const LZParams&>(&ProtocolSpec::traditional_tqd))
        .def_static("optimal_tqd",
                    py::overload_cast<const LZParams&>(&ProtocolSpec::optimal_tqd))
        .def_static("generalized_tqd", py::overload_cast<const LZParams&, const PhaseChoice&>(
                                           &ProtocolSpec::generalized_tqd))
        .def_property_readonly("kind", &ProtocolSpec::kind)
        .def("hamiltonian", &ProtocolSpec::hamiltonian);

    m.def("rabi", py::overload_cast<const LZParams&, double>(&rabi));
    m.def("h0", py::overload_cast<const LZParams&, double>(&h0));
    m.def("gap", py::overload_cast<const LZParams&, double>(&gap));
    m.def("h_cd", py::overload_cast<const LZParams&, double>(&h_cd));
    m.def("h_sa", py::overload_cast<const LZParams&, double>(&h_sa));
    m.def("h_opsa", py::overload_cast<const LZParams&, double>(&h_opsa));
    m.def("gsa_lz",
          py::overload_cast<const LZParams&, double, const PhaseChoice&>(&gsa_lz));
    m.def("gsa_general", &gsa_general);
    m.def("target_state", py::overload_cast<const LZParams&, double>(&target_state));
    m.def(
        "eigenpair",
        [](const LZParams& params, double s) {
            const EigenPair pair = eigenpair(params, s);
            return py::make_tuple(pair.e_plus, pair.v_plus, pair.e_minus, pair.v_minus);
        },
        py::arg("params"), py::arg("s"));
    m.def("accumulated_phase", &accumulated_phase, py::arg("spec"), py::arg("s"),
          py::arg("level") = 0);

    // ---- dynamics --------------------------------------------------------------
    py::class_<NoiseConfig>(m, "NoiseConfig")
        .def(py::init<double, int, std::uint64_t>(), py::arg("gamma"),
             py::arg("ensemble_size") = 1, py::arg("rng_seed") = 0)
        .def_readonly("gamma", &NoiseConfig::gamma)
        .def_readonly("ensemble_size", &NoiseConfig::ensemble_size)
        .def_readonly("rng_seed", &NoiseConfig::rng_seed);

    py::class_<EvolutionResult>(m, "EvolutionResult")
        .def_readonly("times", &EvolutionResult::times)
        .def_readonly("final_fidelity", &EvolutionResult::final_fidelity)
        .def_property_readonly("is_pure", &EvolutionResult::is_pure)
        .def_property_readonly("states", &states_as_list);

    m.def("propagate_unitary",
          py::overload_cast<const ProtocolSpec&, int, int>(&propagate_unitary),
          py::arg("spec"), py::arg("steps"), py::arg("record_stride") = 0);
    m.def("propagate_lindblad",
          py::overload_cast<const ProtocolSpec&, const NoiseConfig&, int, int>(
              &propagate_lindblad),
          py::arg("spec"), py::arg("noise"), py::arg("steps"), py::arg("record_stride") = 0);
    m.def("propagate_stochastic",
          py::overload_cast<const ProtocolSpec&, const NoiseConfig&, int, int>(
              &propagate_stochastic),
          py::arg("spec"), py::arg("noise"), py::arg("steps"), py::arg("record_stride") = 0);
    m.def("stable_steps", &stable_steps);

    // ---- metrics ---------------------------------------------------------------
    py::class_<CostReport>(m, "CostReport")
        .def_readonly("tau", &CostReport::tau)
        .def_readonly("i_ad", &CostReport::i_ad)
        .def_readonly("i_sa", &CostReport::i_sa)
        .def_readonly("i_opsa", &CostReport::i_opsa)
        .def_readonly("sigma_ad", &CostReport::sigma_ad)
        .def_readonly("sigma_sa", &CostReport::sigma_sa)
        .def_readonly("sigma_opsa", &CostReport::sigma_opsa);

    m.def("avg_intensity", &avg_intensity);
    m.def("relative_intensities",
          py::overload_cast<const LZParams&, double>(&relative_intensities));
    m.def("sigma_cost", &sigma_cost, py::arg("spec"), py::arg("nodes") = 64);
    m.def("tau_adiabatic", py::overload_cast<const LZParams&>(&tau_adiabatic));
    m.def("tau_boundary_intensity",
          py::overload_cast<const LZParams&>(&tau_boundary_intensity));
    m.def("tau_boundary_sigma", py::overload_cast<const LZParams&>(&tau_boundary_sigma));

    // ---- runner ----------------------------------------------------------------
    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("delta_khz", &RunConfig::delta_khz)
        .def_readwrite("theta0", &RunConfig::theta0)
        .def_readwrite("gamma_per_ms", &RunConfig::gamma_per_ms)
        .def_readwrite("tau_grid", &RunConfig::tau_grid)
        .def_readwrite("steps", &RunConfig::steps)
        .def_readwrite("ensemble_size", &RunConfig::ensemble_size)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("threads", &RunConfig::threads)
        .def_readwrite("output_path", &RunConfig::output_path)
        .def("validate", &RunConfig::validate)
        .def("lz", &RunConfig::lz);

    py::class_<SweepRecord>(m, "SweepRecord")
        .def_readonly("tau_ms", &SweepRecord::tau_ms)
        .def_readonly("protocol", &SweepRecord::protocol)
        .def_readonly("fidelity_unitary", &SweepRecord::fidelity_unitary)
        .def_readonly("fidelity_dephasing", &SweepRecord::fidelity_dephasing)
        .def_readonly("rel_intensity", &SweepRecord::rel_intensity)
        .def_readonly("sigma_cost", &SweepRecord::sigma_cost)
        .def_readonly("fidelity_stochastic", &SweepRecord::fidelity_stochastic);

    py::class_<BoundaryReport>(m, "BoundaryReport")
        .def_readonly("tau_adiabatic_ms", &BoundaryReport::tau_adiabatic_ms)
        .def_readonly("tau_boundary_intensity_ms",
                      &BoundaryReport::tau_boundary_intensity_ms)
        .def_readonly("tau_boundary_sigma_ms", &BoundaryReport::tau_boundary_sigma_ms);

    m.def("parse_config", &parse_config_string);
    m.def("serialize_config", &serialize_config);
    m.def("config_hash", &config_hash);
    m.def("logspace", &logspace);
    m.def("run_sweep", &run_sweep);
    m.def("compute_boundaries", &compute_boundaries);
    m.def("sweep_csv", [](const RunConfig& config) {
        std::ostringstream out;
        write_sweep_csv(out, config, run_sweep(config));
        return out.str();
    });
    m.def("protocol_name", &protocol_name);
}
