#ifndef CRCEP_VECTOR_MODEL_HPP
#define CRCEP_VECTOR_MODEL_HPP

#include <utility>
#include <vector>

#include "crcep/periodic.hpp"

namespace crcep {

/// Unilateral periodic vector ARMA model sum A_k y(t-k) = sum b_k w(t-k)
/// with scalar numerator b and noise covariance D.  Implied spectrum
/// Phi(zeta) = [A(zeta^{-1})^T D^{-1} A(zeta)]^{-1} b(zeta) b(zeta^{-1}).
struct VectorPeriodicArmaModel {
    std::vector<Mat> A;  ///< A_0..A_n, A_0 = I after the final rescale
    Vec b;               ///< b_0 = 1, Schur
    Mat D;               ///< symmetric PD
    int N = 0;
    int m = 0;
};

/// Block impulse response Gamma_t = (1/2N) sum_j zeta_j^t A(zeta_j)^{-1}
/// b(zeta_j), t = -N+1..N in the symmetric layout.
std::vector<Mat> gamma_blocks(const std::vector<Mat>& A, const Vec& b, int N);

/// m(n+1) x m(n+1) matrix with block (i,j) = Gamma_{i-j}^T.
Mat toeplitz_gamma_blocks(const std::vector<Mat>& Gamma, int N, int n);

/// D(A) = (sum_k A_k C_{-k}) (sum_k b_k Gamma_k^T)^{-1}, symmetrized.
Mat scaling_D(const std::vector<Mat>& A, const Vec& b,
              const std::vector<Mat>& C, const std::vector<Mat>& Gamma);

/// Raw row-block update [A_0 .. A_n] = D B T_Gamma T_n^{-1}.
std::vector<Mat> iterate_vec_raw(const std::vector<Mat>& A, const Vec& b,
                                 const std::vector<Mat>& C, int N);

/// Raw update followed by the matrix spectral-factorization projection:
/// factor sum_k A_k^T D^{-1} A_{k+d} and return the outer factor (A_0
/// lower-triangular with positive diagonal; implied D = I).
std::vector<Mat> iterate_vec(const std::vector<Mat>& A, const Vec& b,
                             const std::vector<Mat>& C, int N);

/// tr(A T_n A^T) - (1/2N) sum_j |b(zeta_j)|^2 log det[A(zeta_j)^* A(zeta_j)].
double objective_vec(const std::vector<Mat>& A, const Vec& b,
                     const std::vector<Mat>& C, int N);

/// Block lags 0..count of the model spectrum by inverse DFT.
std::vector<Mat> model_lags_vec(const VectorPeriodicArmaModel& model,
                                int count);
std::vector<Mat> spectrum_lags_vec(const std::vector<Mat>& A, const Vec& b,
                                   const Mat& D, int N, int count);

/// max-norm of A T_n - D B T_Gamma(A): zero at fixed points.
double fixed_point_residual(const VectorPeriodicArmaModel& model,
                            const std::vector<Mat>& C);

/// Quasi-Newton solver; returns the model rescaled so A_0 = I, with D
/// adjusted consistently.
std::pair<VectorPeriodicArmaModel, SolveReport> solve_vec(
    const std::vector<Mat>& C, const Vec& b, int N,
    const SolverConfig& config = {});

}  // namespace crcep

#endif  // CRCEP_VECTOR_MODEL_HPP
