#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crcep/errors.hpp"
#include "crcep/line.hpp"
#include "crcep/periodic.hpp"
#include "crcep/smoother.hpp"
#include "crcep/spectral_factor.hpp"
#include "crcep/toeplitz.hpp"
#include "crcep/vector_model.hpp"

namespace py = pybind11;
using namespace crcep;

PYBIND11_MODULE(_crcep, mod) {
    mod.doc() =
        "Circulant rational covariance extension: periodic ARMA solvers and "
        "the banded two-sweep smoother";

    // ----- exceptions -----
    static py::exception<Error> exc_base(mod, "Error", PyExc_RuntimeError);
    static py::exception<DimensionError> exc_dim(mod, "DimensionError",
                                                 exc_base);
    static py::exception<DataError> exc_data(mod, "DataError", exc_base);
    static py::exception<SingularityError> exc_sing(mod, "SingularityError",
                                                    exc_base);
    static py::exception<FactorizationError> exc_fact(mod,
                                                      "FactorizationError",
                                                      exc_base);
    static py::exception<InfeasibleAtNError> exc_infeas(mod,
                                                        "InfeasibleAtNError",
                                                        exc_fact);
    static py::exception<DegenerateScalingError> exc_degen(
        mod, "DegenerateScalingError", exc_base);
    static py::exception<ConvergenceError> exc_conv(mod, "ConvergenceError",
                                                    exc_base);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DimensionError& e) {
            exc_dim(e.what());
        } catch (const DataError& e) {
            exc_data(e.what());
        } catch (const SingularityError& e) {
            exc_sing(e.what());
        } catch (const InfeasibleAtNError& e) {
            exc_infeas(e.what());
        } catch (const FactorizationError& e) {
            exc_fact(e.what());
        } catch (const DegenerateScalingError& e) {
            exc_degen(e.what());
        } catch (const ConvergenceError& e) {
            exc_conv(e.what());
        } catch (const Error& e) {
            exc_base(e.what());
        }
    });

    // ----- configuration and reports -----
    py::enum_<SolveStatus>(mod, "SolveStatus")
        .value("converged", SolveStatus::converged)
        .value("max_iterations", SolveStatus::max_iterations)
        .value("infeasible", SolveStatus::infeasible);

    py::class_<SolverConfig>(mod, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("delta", &SolverConfig::delta)
        .def_readwrite("gradient_tol", &SolverConfig::gradient_tol)
        .def_readwrite("max_iterations", &SolverConfig::max_iterations)
        .def_readwrite("max_backtrack", &SolverConfig::max_backtrack)
        .def_readwrite("positivity_tol", &SolverConfig::positivity_tol);

    py::class_<SolveReport>(mod, "SolveReport")
        .def_readonly("iterations", &SolveReport::iterations)
        .def_readonly("gradient_norm", &SolveReport::gradient_norm)
        .def_readonly("moment_residual", &SolveReport::moment_residual)
        .def_readonly("sigma2_trajectory", &SolveReport::sigma2_trajectory)
        .def_readonly("status", &SolveReport::status);

    // ----- models -----
    py::class_<PeriodicArmaModel>(mod, "PeriodicArmaModel")
        .def_readonly("a", &PeriodicArmaModel::a)
        .def_readonly("b", &PeriodicArmaModel::b)
        .def_readonly("sigma2", &PeriodicArmaModel::sigma2)
        .def_readonly("N", &PeriodicArmaModel::N);

    py::class_<LineArmaModel>(mod, "LineArmaModel")
        .def_readonly("a", &LineArmaModel::a)
        .def_readonly("b", &LineArmaModel::b)
        .def_readonly("sigma2", &LineArmaModel::sigma2);

    py::class_<VectorPeriodicArmaModel>(mod, "VectorPeriodicArmaModel")
        .def(py::init([](std::vector<Mat> A, Vec b, Mat D, int N) {
                 VectorPeriodicArmaModel model;
                 model.m = static_cast<int>(A.empty() ? 0 : A[0].rows());
                 model.A = std::move(A);
                 model.b = std::move(b);
                 model.D = std::move(D);
                 model.N = N;
                 return model;
             }),
             py::arg("A"), py::arg("b"), py::arg("D"), py::arg("N"))
        .def_readonly("A", &VectorPeriodicArmaModel::A)
        .def_readonly("b", &VectorPeriodicArmaModel::b)
        .def_readonly("D", &VectorPeriodicArmaModel::D)
        .def_readonly("N", &VectorPeriodicArmaModel::N)
        .def_readonly("m", &VectorPeriodicArmaModel::m);

    py::class_<StateSpaceModel>(mod, "StateSpaceModel")
        .def(py::init([](Mat A_ss, Mat C, Mat W, Mat R) {
                 return StateSpaceModel{std::move(A_ss), std::move(C),
                                        std::move(W), std::move(R)};
             }),
             py::arg("A_ss"), py::arg("C"), py::arg("W"), py::arg("R"))
        .def_readwrite("A_ss", &StateSpaceModel::A_ss)
        .def_readwrite("C", &StateSpaceModel::C)
        .def_readwrite("W", &StateSpaceModel::W)
        .def_readwrite("R", &StateSpaceModel::R);

    py::class_<ObservationChannel>(mod, "ObservationChannel")
        .def(py::init([](Mat C, Mat R) {
                 return ObservationChannel{std::move(C), std::move(R)};
             }),
             py::arg("C"), py::arg("R"))
        .def_readwrite("C", &ObservationChannel::C)
        .def_readwrite("R", &ObservationChannel::R);

    py::class_<SmoothingResult>(mod, "SmoothingResult")
        .def_readonly("xhat", &SmoothingResult::xhat)
        .def_readonly("posterior_residual",
                      &SmoothingResult::posterior_residual)
        .def_readonly("forward_residual", &SmoothingResult::forward_residual)
        .def_readonly("backward_residual",
                      &SmoothingResult::backward_residual);

    // ----- scalar periodic problem -----
    mod.def("solve_periodic", &solve, py::arg("c"), py::arg("b"), py::arg("N"),
            py::arg("config") = SolverConfig{},
            "Quasi-Newton covariance extension on the discrete circle; "
            "returns (PeriodicArmaModel, SolveReport)");
    mod.def("spectrum_lags", &spectrum_lags, py::arg("a"), py::arg("b"),
            py::arg("sigma2"), py::arg("N"), py::arg("count"),
            "Covariance lags 0..count of sigma2 |b/a|^2 on the discrete "
            "circle");
    mod.def("objective", &objective, py::arg("a"), py::arg("b"), py::arg("c"),
            py::arg("N"));
    mod.def("gradient", &gradient, py::arg("a"), py::arg("b"), py::arg("c"),
            py::arg("N"));
    mod.def(
        "verify_moments",
        [](const PeriodicArmaModel& model, const Vec& c) {
            double jury = 0.0;
            Vec res = verify_moments(model, c, &jury);
            return py::make_tuple(res, jury);
        },
        py::arg("model"), py::arg("c"),
        "Moment residual through the Jury-matrix identity; returns "
        "(residual, jury_determinant)");

    // ----- integer-line problem -----
    mod.def("solve_line", &solve_line, py::arg("c"), py::arg("b"),
            py::arg("config") = SolverConfig{},
            "Quasi-Newton covariance extension on the integer line; returns "
            "(LineArmaModel, SolveReport)");
    mod.def(
        "line_lags",
        [](const Vec& a, const Vec& b, double sigma2, int count) {
            return line_lags(a, b, sigma2, count);
        },
        py::arg("a"), py::arg("b"), py::arg("sigma2"), py::arg("count"),
        "Stationary lags 0..count of sigma2 |b/a|^2 on the full circle");

    // ----- vector periodic problem -----
    mod.def("solve_vector", &solve_vec, py::arg("C"), py::arg("b"),
            py::arg("N"), py::arg("config") = SolverConfig{},
            "Block covariance extension; returns (VectorPeriodicArmaModel, "
            "SolveReport)");
    mod.def("vector_model_lags", &model_lags_vec, py::arg("model"),
            py::arg("count"),
            "Block lags 0..count implied by a vector periodic model");
    mod.def("fixed_point_residual", &fixed_point_residual, py::arg("model"),
            py::arg("C"));

    // ----- spectral factorization and Toeplitz utilities -----
    mod.def("schur_factor", &schur_factor, py::arg("p"),
            "Outer (Schur, a_0 > 0) factor of a positive symmetric "
            "pseudo-polynomial given by its coefficients p_0..p_n");
    mod.def("matrix_schur_factor", &matrix_schur_factor, py::arg("Q"),
            "Right outer factor of a positive block pseudo-polynomial");
    mod.def("is_schur", &is_schur, py::arg("a"), py::arg("margin") = 0.0);
    mod.def(
        "toeplitz_pd",
        [](const Vec& c) { return toeplitz_pd(c); },
        py::arg("c"));
    mod.def(
        "block_toeplitz_pd",
        [](const std::vector<Mat>& C) { return toeplitz_pd(C); },
        py::arg("C"));

    // ----- smoothing -----
    mod.def("solve_discrete_lyapunov", &solve_discrete_lyapunov, py::arg("A"),
            py::arg("W"));
    mod.def("lyapunov_lags", &lyapunov_lags, py::arg("state_model"),
            py::arg("n"),
            "Stationary state covariances C_k = A_ss^k P, k = 0..n");
    mod.def(
        "smooth",
        [](const VectorPeriodicArmaModel& prior,
           const ObservationChannel& channel, const Mat& y) {
            return smooth(SmoothingProblem{prior, channel, y});
        },
        py::arg("prior"), py::arg("channel"), py::arg("y"),
        "Banded two-sweep fixed-interval smoother; y is 2N x p with row p "
        "holding time t = p - (N-1)");
    mod.def(
        "direct_smooth_oracle",
        [](const VectorPeriodicArmaModel& prior,
           const ObservationChannel& channel, const Mat& y) {
            return direct_smooth_oracle(SmoothingProblem{prior, channel, y});
        },
        py::arg("prior"), py::arg("channel"), py::arg("y"),
        "Node-wise spectral solve of the posterior system (reference "
        "implementation)");
    mod.def("simulate_trajectory", &simulate_trajectory, py::arg("model"),
            py::arg("channel"), py::arg("seed"),
            "Draw (x, y) from the prior and the observation channel; "
            "deterministic per seed");
}
