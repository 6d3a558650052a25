#ifndef CRCEP_PERIODIC_HPP
#define CRCEP_PERIODIC_HPP

#include <utility>
#include <vector>

#include "crcep/dft.hpp"

namespace crcep {

/// Unilateral periodic ARMA model a(z) y = b(z) w on Z_2N, with noise
/// variance sigma2.  Solver output is normalized monic (a_0 = 1).
struct PeriodicArmaModel {
    Vec a;
    Vec b;
    double sigma2 = 1.0;
    int N = 0;
};

struct SolverConfig {
    double delta = 1e-10;        ///< convergence threshold on ||a' - a||
    double gradient_tol = 1e-8;  ///< additional test on the gradient norm
    int max_iterations = 500;
    int max_backtrack = 20;      ///< step-halving budget when J_P increases
    double positivity_tol = 1e-10;
};

enum class SolveStatus { converged, max_iterations, infeasible };

struct SolveReport {
    int iterations = 0;
    double gradient_norm = 0.0;
    Vec moment_residual;
    std::vector<double> sigma2_trajectory;
    SolveStatus status = SolveStatus::max_iterations;
};

/// Periodic impulse response: inverse DFT of b(zeta)/a(zeta), length 2N in
/// the symmetric layout.  Throws SingularityError if a vanishes at a node.
Vec gamma_of(const Vec& a, const Vec& b, int N);

/// (n+1)x(n+1) matrix with (j,k) entry gamma_{k-j} (periodic indexing).
Mat toeplitz_gamma(const Vec& gamma, int N, int n);

/// sigma^2(a) = sum_k c_k a_k / sum_k gamma_k b_k.
double sigma_sq(const Vec& a, const Vec& b, const Vec& gamma, const Vec& c);

/// Covariance lags 0..count of the discrete spectrum
/// sigma2 |b(zeta)|^2 / |a(zeta)|^2.
Vec spectrum_lags(const Vec& a, const Vec& b, double sigma2, int N, int count);
Vec model_lags(const PeriodicArmaModel& model, int count);

/// J_P(a) = a^T T_n a - (1/2N) sum_j |b(zeta_j)|^2 log |a(zeta_j)|^2.
double objective(const Vec& a, const Vec& b, const Vec& c, int N);

/// Gradient of J_P; computed as 2 [T_n a - T_gamma(a) b].
Vec gradient(const Vec& a, const Vec& b, const Vec& c, int N);

/// Second closed form of the half-gradient: [T_n - T_n(a)] a, where T_n(a)
/// is the Toeplitz matrix of the lags of |b|^2/|a|^2.
Vec half_gradient_via_lags(const Vec& a, const Vec& b, const Vec& c, int N);

/// One raw fixed-point update sigma^2(a) T_n^{-1} T_gamma(a) b, without the
/// factorization projection.
Vec iterate_step_raw(const Vec& a, const Vec& b, const Vec& c, int N);

/// Project onto S_n: outer Schur factor of the symmetric square of a_raw,
/// normalized a_0 > 0.  Distinguishes infeasible-at-N from plain
/// non-factorizability.
Vec project_schur(const Vec& a_raw, int N);

/// Raw update followed by the projection.
Vec iterate_step(const Vec& a, const Vec& b, const Vec& c, int N);

/// The quasi-Newton solver.  b must be Schur with b_0 = 1 and n < N.
std::pair<PeriodicArmaModel, SolveReport> solve(const Vec& c, const Vec& b,
                                                int N,
                                                const SolverConfig& config = {});

/// Jury matrix M(a); M(a) c = T_n(c) a identically.
Mat jury_matrix(const Vec& a);

/// det M(a) = prod_{i,j} (1 - r_i r_j) over the roots of z^n a(z).
double jury_determinant(const Vec& a);

/// Solve M(a) chat = sigma^2 T_gamma(a) b and return chat - c.  Sets
/// *jury_det to the determinant diagnostic when non-null.
Vec verify_moments(const PeriodicArmaModel& model, const Vec& c,
                   double* jury_det = nullptr);

/// R = c_0 I + T_n - [ctilde_0 I + T_n(a)] with ctilde the lags of
/// |b|^2/|a|^2; vanishes at the (sigma-normalized) optimum.
Mat hessian_residual(const Vec& a, const Vec& b, const Vec& c, int N);

/// Chain-rule residual 2 [T_n - T_n(a)]: the exact correction term in
/// nabla^2 J_P(a) = J^T H J + R_chain (verified by finite differences; the
/// displayed form above doubles only the zero-lag entry but has the same
/// optimum-vanishing property).
Mat chain_rule_residual(const Vec& a, const Vec& b, const Vec& c, int N);

/// Hessian of the dual functional in the q-coordinates, evaluated with
/// Q = a a^* and P = b b^*; diagnostic for the Hessian decomposition.
Mat dual_hessian_q(const Vec& a, const Vec& b, int N);

/// Jacobian dq/da of the symmetric-square map.
Mat symmetric_square_jacobian(const Vec& a);

}  // namespace crcep

#endif  // CRCEP_PERIODIC_HPP
