#ifndef CRCEP_SMOOTHER_HPP
#define CRCEP_SMOOTHER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "crcep/circulant.hpp"
#include "crcep/vector_model.hpp"

namespace crcep {

/// x(t+1) = A_ss x(t) + w(t), y(t) = C x(t) + v(t).
struct StateSpaceModel {
    Mat A_ss;
    Mat C;
    Mat W;  ///< process noise covariance
    Mat R;  ///< measurement noise covariance
};

struct ObservationChannel {
    Mat C;  ///< p x m output matrix
    Mat R;  ///< p x p symmetric PD noise covariance
};

/// Trajectories are stored as 2N x d matrices: row p holds time
/// t = p - (N-1), matching the symmetric layout everywhere else.
struct SmoothingProblem {
    VectorPeriodicArmaModel prior;
    ObservationChannel channel;
    Mat y;  ///< 2N x p observations
};

struct SmoothingResult {
    Mat xhat;                  ///< 2N x m smoothed trajectory
    double posterior_residual; ///< max-norm of Qhat xhat - yhat
    double forward_residual;   ///< max-norm of Ahat z - yhat
    double backward_residual;  ///< max-norm of Ahat^T xhat - z
};

/// Fixed-point solution of X = A X A^T + W by doubling.  Requires
/// spectral radius of A below one.
Mat solve_discrete_lyapunov(const Mat& A, const Mat& W);

/// Stationary state covariances C_k = A_ss^k P, k = 0..n, with P from the
/// Lyapunov equation.
std::vector<Mat> lyapunov_lags(const StateSpaceModel& ss, int n);

/// Prior circulants of the model: Q with blocks sum_k A_k^T D^{-1} A_{k+d}
/// and P with blocks (sum_k b_k b_{k+d}) I_m; Sigma = Q^{-1} P.
std::pair<BandedCirculant, BandedCirculant> prior_circulants(
    const VectorPeriodicArmaModel& model);

/// Qhat = Q + P * blockdiag(C^T R^{-1} C); stays banded with bandwidth n.
BandedCirculant posterior_circulant(const BandedCirculant& Q,
                                    const BandedCirculant& P, const Mat& C,
                                    const Mat& R);

/// Lower-banded factor with Qhat = Ahat Ahat^T.
BandedCirculant factor_posterior(const BandedCirculant& Qhat);

/// yhat = P * blockdiag(C^T R^{-1}) * y, as a 2N x m trajectory.
Mat posterior_rhs(const BandedCirculant& P, const Mat& C, const Mat& R,
                  const Mat& y);

/// Forward sweep Ahat z = yhat given boundary values z(N-n+1)..z(N)
/// (rows of an n x m matrix, earliest time first).
Mat forward_sweep(const BandedCirculant& Ahat, const Mat& yhat,
                  const Mat& z_boundary);

/// Backward sweep Ahat^T xhat = z given xhat(N-n+1)..xhat(N).
Mat backward_sweep(const BandedCirculant& Ahat, const Mat& z,
                   const Mat& x_boundary);

/// Full pipeline: posterior assembly, banded factorization, boundary
/// resolution via a spectral solve, then the two sweeps.
SmoothingResult smooth(const SmoothingProblem& problem);

/// Node-wise spectral solve of Qhat xhat = yhat; reference implementation.
Mat direct_smooth_oracle(const SmoothingProblem& problem);

/// Draw a state trajectory x from the prior and observations y = Cx + v.
/// Deterministic per seed.
std::pair<Mat, Mat> simulate_trajectory(const VectorPeriodicArmaModel& model,
                                        const ObservationChannel& channel,
                                        std::uint64_t seed);

}  // namespace crcep

#endif  // CRCEP_SMOOTHER_HPP
