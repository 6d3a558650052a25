#include "crcep/smoother.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "crcep/spectral_factor.hpp"

namespace crcep {

namespace {

Vec stack_rows(const Mat& traj) {
    const int rows = static_cast<int>(traj.rows());
    const int m = static_cast<int>(traj.cols());
    Vec x(rows * m);
    for (int p = 0; p < rows; ++p)
        x.segment(p * m, m) = traj.row(p).transpose();
    return x;
}

Mat unstack_rows(const Vec& x, int m) {
    const int rows = static_cast<int>(x.size()) / m;
    Mat traj(rows, m);
    for (int p = 0; p < rows; ++p)
        traj.row(p) = x.segment(p * m, m).transpose();
    return traj;
}

BandedCirculant transpose_lower(const BandedCirculant& lower) {
    std::vector<Mat> blocks(lower.blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k)
        blocks[k] = lower.blocks[k].transpose();
    return {lower.N, Band::upper, std::move(blocks)};
}

double spectral_radius(const Mat& A) {
    Eigen::EigenSolver<Mat> es(A, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

Mat solve_discrete_lyapunov(const Mat& A, const Mat& W) {
    if (spectral_radius(A) >= 1.0)
        throw DataError("solve_discrete_lyapunov: A is not stable");
    Mat X = W;
    Mat Aj = A;
    for (int it = 0; it < 200; ++it) {
        const Mat update = Aj * X * Aj.transpose();
        X += update;
        Aj = Aj * Aj;
        if (update.cwiseAbs().maxCoeff() <=
            1e-16 * std::max(1.0, X.cwiseAbs().maxCoeff()))
            break;
    }
    return (X + Mat(X.transpose())) / 2.0;
}

std::vector<Mat> lyapunov_lags(const StateSpaceModel& ss, int n) {
    const Mat P = solve_discrete_lyapunov(ss.A_ss, ss.W);
    std::vector<Mat> C(n + 1);
    C[0] = P;
    for (int k = 1; k <= n; ++k) C[k] = ss.A_ss * C[k - 1];
    return C;
}

std::pair<BandedCirculant, BandedCirculant> prior_circulants(
    const VectorPeriodicArmaModel& model) {
    const int n = static_cast<int>(model.A.size()) - 1;
    const int m = model.m;
    const Mat Dinv = model.D.ldlt().solve(Mat::Identity(m, m));
    std::vector<Mat> Qb(n + 1, Mat::Zero(m, m));
    std::vector<Mat> Pb(n + 1, Mat::Zero(m, m));
    for (int d = 0; d <= n; ++d) {
        double pd = 0.0;
        for (int k = 0; k + d <= n; ++k) {
            Qb[d] += model.A[k].transpose() * Dinv * model.A[k + d];
            pd += model.b[k] * model.b[k + d];
        }
        Pb[d] = pd * Mat::Identity(m, m);
    }
    return {BandedCirculant(model.N, Band::symmetric, std::move(Qb)),
            BandedCirculant(model.N, Band::symmetric, std::move(Pb))};
}

BandedCirculant posterior_circulant(const BandedCirculant& Q,
                                    const BandedCirculant& P, const Mat& C,
                                    const Mat& R) {
    const Mat S = C.transpose() * R.ldlt().solve(C);
    std::vector<Mat> blocks(Q.blocks.size());
    for (std::size_t d = 0; d < blocks.size(); ++d)
        blocks[d] = Q.blocks[d] + P.blocks[d] * S;
    return {Q.N, Band::symmetric, std::move(blocks)};
}

BandedCirculant factor_posterior(const BandedCirculant& Qhat) {
    try {
        return {Qhat.N, Band::lower, matrix_schur_factor_left(Qhat.blocks)};
    } catch (const FactorizationError&) {
        if (is_positive_discrete(Qhat.blocks, Qhat.N).positive)
            throw InfeasibleAtNError(
                "factor_posterior: posterior positive on T_2N but not on the "
                "full circle; increase N");
        throw;
    }
}

Mat posterior_rhs(const BandedCirculant& P, const Mat& C, const Mat& R,
                  const Mat& y) {
    const int twoN = static_cast<int>(y.rows());
    const Mat G = C.transpose() * R.ldlt().solve(Mat::Identity(R.rows(),
                                                               R.cols()));
    Mat v(twoN, P.m);
    for (int p = 0; p < twoN; ++p)
        v.row(p) = (G * y.row(p).transpose()).transpose();
    return unstack_rows(circ_apply(P, stack_rows(v)), P.m);
}

Mat forward_sweep(const BandedCirculant& Ahat, const Mat& yhat,
                  const Mat& z_boundary) {
    const DiscreteCircle circle(Ahat.N);
    const int N = Ahat.N, n = Ahat.n, m = Ahat.m;
    Mat z = Mat::Zero(2 * N, m);
    for (int i = 0; i < n; ++i)
        z.row(circle.pos(N - n + 1 + i)) = z_boundary.row(i);
    Eigen::PartialPivLU<Mat> A0(Ahat.blocks[0]);
    if (std::abs(A0.determinant()) <= 1e-300)
        throw SingularityError("forward_sweep: A_0 block is singular");
    for (int t = -N + 1; t <= N - n; ++t) {
        Vec acc = yhat.row(circle.pos(t)).transpose();
        for (int i = 1; i <= n; ++i) {
            int s = t - i;
            if (s < -N + 1) s += 2 * N;  // cyclic wrap onto the boundary rows
            acc -= Ahat.blocks[i] * z.row(circle.pos(s)).transpose();
        }
        z.row(circle.pos(t)) = A0.solve(acc).transpose();
    }
    return z;
}

Mat backward_sweep(const BandedCirculant& Ahat, const Mat& z,
                   const Mat& x_boundary) {
    const DiscreteCircle circle(Ahat.N);
    const int N = Ahat.N, n = Ahat.n, m = Ahat.m;
    Mat x = Mat::Zero(2 * N, m);
    for (int i = 0; i < n; ++i)
        x.row(circle.pos(N - n + 1 + i)) = x_boundary.row(i);
    Eigen::PartialPivLU<Mat> A0t(Mat(Ahat.blocks[0].transpose()));
    if (std::abs(A0t.determinant()) <= 1e-300)
        throw SingularityError("backward_sweep: A_0 block is singular");
    for (int t = N - n; t >= -N + 1; --t) {
        Vec acc = z.row(circle.pos(t)).transpose();
        for (int i = 1; i <= n; ++i) {
            int s = t + i;
            if (s > N) s -= 2 * N;
            acc -= Ahat.blocks[i].transpose() * x.row(circle.pos(s)).transpose();
        }
        x.row(circle.pos(t)) = A0t.solve(acc).transpose();
    }
    return x;
}

SmoothingResult smooth(const SmoothingProblem& problem) {
    const int N = problem.prior.N, m = problem.prior.m;
    const int n = static_cast<int>(problem.prior.A.size()) - 1;
    const DiscreteCircle circle(N);

    auto [Q, P] = prior_circulants(problem.prior);
    const BandedCirculant Qhat =
        posterior_circulant(Q, P, problem.channel.C, problem.channel.R);
    const BandedCirculant Ahat = factor_posterior(Qhat);
    const BandedCirculant AhatT = transpose_lower(Ahat);
    const Mat yhat =
        posterior_rhs(P, problem.channel.C, problem.channel.R, problem.y);

    // boundary values from a node-wise spectral solve
    const Vec yhat_s = stack_rows(yhat);
    const Mat z_full = unstack_rows(circ_solve(Ahat, yhat_s), m);
    const Mat x_full = unstack_rows(circ_solve(AhatT, stack_rows(z_full)), m);
    Mat z_bnd(n, m), x_bnd(n, m);
    for (int i = 0; i < n; ++i) {
        z_bnd.row(i) = z_full.row(circle.pos(N - n + 1 + i));
        x_bnd.row(i) = x_full.row(circle.pos(N - n + 1 + i));
    }

    SmoothingResult res;
    const Mat z = forward_sweep(Ahat, yhat, z_bnd);
    res.xhat = backward_sweep(Ahat, z, x_bnd);

    res.forward_residual =
        (unstack_rows(circ_apply(Ahat, stack_rows(z)), m) - yhat)
            .cwiseAbs()
            .maxCoeff();
    res.backward_residual =
        (unstack_rows(circ_apply(AhatT, stack_rows(res.xhat)), m) - z)
            .cwiseAbs()
            .maxCoeff();
    res.posterior_residual =
        (unstack_rows(circ_apply(Qhat, stack_rows(res.xhat)), m) - yhat)
            .cwiseAbs()
            .maxCoeff();
    return res;
}

Mat direct_smooth_oracle(const SmoothingProblem& problem) {
    auto [Q, P] = prior_circulants(problem.prior);
    const BandedCirculant Qhat =
        posterior_circulant(Q, P, problem.channel.C, problem.channel.R);
    const Mat yhat =
        posterior_rhs(P, problem.channel.C, problem.channel.R, problem.y);
    return unstack_rows(circ_solve(Qhat, stack_rows(yhat)), problem.prior.m);
}

std::pair<Mat, Mat> simulate_trajectory(const VectorPeriodicArmaModel& model,
                                        const ObservationChannel& channel,
                                        std::uint64_t seed) {
    const int N = model.N, m = model.m;
    const int p = static_cast<int>(channel.C.rows());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Eigen::LLT<Mat> lltD(model.D);
    Eigen::LLT<Mat> lltR(channel.R);
    if (lltD.info() != Eigen::Success || lltR.info() != Eigen::Success)
        throw DataError("simulate_trajectory: D and R must be PD");

    Mat w(2 * N, m);
    for (int t = 0; t < 2 * N; ++t) {
        Vec eta(m);
        for (int i = 0; i < m; ++i) eta[i] = gauss(rng);
        w.row(t) = (lltD.matrixL() * eta).transpose();
    }

    // x solves the circulant system A x = B w
    std::vector<Mat> bblocks(model.b.size());
    for (int k = 0; k < model.b.size(); ++k)
        bblocks[k] = model.b[k] * Mat::Identity(m, m);
    const BandedCirculant B(N, Band::lower, std::move(bblocks));
    const BandedCirculant A(N, Band::lower, model.A);
    const Mat x =
        unstack_rows(circ_solve(A, circ_apply(B, stack_rows(w))), m);

    Mat y(2 * N, p);
    for (int t = 0; t < 2 * N; ++t) {
        Vec eta(p);
        for (int i = 0; i < p; ++i) eta[i] = gauss(rng);
        y.row(t) = (channel.C * x.row(t).transpose() +
                    lltR.matrixL() * eta)
                       .transpose();
    }
    return {x, y};
}

}  // namespace crcep
