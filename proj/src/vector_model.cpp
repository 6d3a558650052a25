#include "crcep/vector_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include <Eigen/Dense>

#include "crcep/spectral_factor.hpp"
#include "crcep/toeplitz.hpp"

namespace crcep {

namespace {

bool log_enabled() {
    const char* lvl = std::getenv("CRCEP_LOG");
    return lvl && (std::strcmp(lvl, "info") == 0 ||
                   std::strcmp(lvl, "debug") == 0);
}

CMat block_poly(const std::vector<Mat>& A, cd zeta) {
    const int m = static_cast<int>(A[0].rows());
    CMat out = CMat::Zero(m, m);
    cd zk(1.0, 0.0);
    for (std::size_t k = 0; k < A.size(); ++k) {
        out += A[k].cast<cd>() * zk;
        zk /= zeta;
    }
    return out;
}

cd scalar_poly(const Vec& b, cd zeta) {
    cd out(0.0, 0.0), zk(1.0, 0.0);
    for (int k = 0; k < b.size(); ++k) {
        out += b[k] * zk;
        zk /= zeta;
    }
    return out;
}

// [b_0 I  b_1 I .. b_n I]
Mat numerator_row(const Vec& b, int m) {
    const int n = static_cast<int>(b.size()) - 1;
    Mat B = Mat::Zero(m, m * (n + 1));
    for (int k = 0; k <= n; ++k)
        B.block(0, k * m, m, m) = b[k] * Mat::Identity(m, m);
    return B;
}

Mat row_of(const std::vector<Mat>& A) {
    const int m = static_cast<int>(A[0].rows());
    Mat row(m, m * A.size());
    for (std::size_t k = 0; k < A.size(); ++k)
        row.block(0, static_cast<int>(k) * m, m, m) = A[k];
    return row;
}

std::vector<Mat> split_row(const Mat& row, int m) {
    const int cnt = static_cast<int>(row.cols()) / m;
    std::vector<Mat> out(cnt);
    for (int k = 0; k < cnt; ++k) out[k] = row.block(0, k * m, m, m);
    return out;
}

// outer factor of Q_d = sum_k A_k^T D^{-1} A_{k+d}, classifying
// infeasible-at-N separately
std::vector<Mat> project_vec(const std::vector<Mat>& A, const Mat& D, int N) {
    const int n = static_cast<int>(A.size()) - 1;
    const int m = static_cast<int>(A[0].rows());
    const Mat Dinv = D.ldlt().solve(Mat::Identity(m, m));
    std::vector<Mat> Q(n + 1, Mat::Zero(m, m));
    for (int d = 0; d <= n; ++d)
        for (int k = 0; k + d <= n; ++k)
            Q[d] += A[k].transpose() * Dinv * A[k + d];
    try {
        return matrix_schur_factor(Q);
    } catch (const FactorizationError&) {
        if (is_positive_discrete(Q, N).positive)
            throw InfeasibleAtNError(
                "vector projection: spectrum positive on T_2N but not on the "
                "full circle; infeasible at this N");
        throw;
    }
}

double normalized_step(const std::vector<Mat>& A, const std::vector<Mat>& B) {
    // compare the A_0 = I representatives
    const Mat La = A[0].partialPivLu().inverse();
    const Mat Lb = B[0].partialPivLu().inverse();
    double d = 0.0;
    for (std::size_t k = 0; k < A.size(); ++k)
        d = std::max(d, (La * A[k] - Lb * B[k]).cwiseAbs().maxCoeff());
    return d;
}

}  // namespace

std::vector<Mat> gamma_blocks(const std::vector<Mat>& A, const Vec& b, int N) {
    const DiscreteCircle circle(N);
    const int m = static_cast<int>(A[0].rows());
    std::vector<CMat> spec(circle.size());
    for (int p = 0; p < circle.size(); ++p) {
        const cd z = circle.node(circle.index(p));
        const CMat Az = block_poly(A, z);
        Eigen::PartialPivLU<CMat> lu(Az);
        if (std::abs(lu.determinant()) <= 1e-12)
            throw SingularityError("gamma_blocks: A(zeta) singular at a node",
                                   circle.index(p));
        spec[p] = lu.solve(CMat::Identity(m, m)) * scalar_poly(b, z);
    }
    return idft_real(spec, circle);
}

Mat toeplitz_gamma_blocks(const std::vector<Mat>& Gamma, int N, int n) {
    const DiscreteCircle circle(N);
    const int m = static_cast<int>(Gamma[0].rows());
    Mat T(m * (n + 1), m * (n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            T.block(i * m, j * m, m, m) = Gamma[circle.pos(i - j)].transpose();
    return T;
}

Mat scaling_D(const std::vector<Mat>& A, const Vec& b,
              const std::vector<Mat>& C, const std::vector<Mat>& Gamma) {
    const int n = static_cast<int>(A.size()) - 1;
    const int m = static_cast<int>(A[0].rows());
    const DiscreteCircle circle(static_cast<int>(Gamma.size()) / 2);
    Mat num = A[0] * C[0];
    for (int k = 1; k <= n; ++k) num += A[k] * C[k].transpose();
    Mat den = Mat::Zero(m, m);
    for (int k = 0; k <= n; ++k)
        den += b[k] * Gamma[circle.pos(k)].transpose();
    Eigen::PartialPivLU<Mat> lu(Mat(den.transpose()));
    if (std::abs(lu.determinant()) <= 1e-14)
        throw DegenerateScalingError(
            "scaling_D: sum b_k Gamma_k^T is numerically singular");
    Mat D = lu.solve(num.transpose()).transpose();  // num * den^{-1}
    const double asym = (D - D.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-6 * std::max(1.0, D.cwiseAbs().maxCoeff()) && log_enabled())
        std::fprintf(stderr,
                     "[crcep] scaling_D: asymmetry %.3e before symmetrization\n",
                     asym);
    return (D + D.transpose()) / 2.0;
}

std::vector<Mat> iterate_vec_raw(const std::vector<Mat>& A, const Vec& b,
                                 const std::vector<Mat>& C, int N) {
    const int n = static_cast<int>(A.size()) - 1;
    const int m = static_cast<int>(A[0].rows());
    const std::vector<Mat> Gamma = gamma_blocks(A, b, N);
    const Mat D = scaling_D(A, b, C, Gamma);
    const Mat TG = toeplitz_gamma_blocks(Gamma, N, n);
    const Mat Tn = block_toeplitz(C);
    const Mat row = D * numerator_row(b, m) * TG *
                    Tn.ldlt().solve(Mat::Identity(Tn.rows(), Tn.cols()));
    return split_row(row, m);
}

std::vector<Mat> iterate_vec(const std::vector<Mat>& A, const Vec& b,
                             const std::vector<Mat>& C, int N) {
    const std::vector<Mat> Gamma = gamma_blocks(A, b, N);
    const Mat D = scaling_D(A, b, C, Gamma);
    return project_vec(iterate_vec_raw(A, b, C, N), D, N);
}

double objective_vec(const std::vector<Mat>& A, const Vec& b,
                     const std::vector<Mat>& C, int N) {
    const DiscreteCircle circle(N);
    const Mat row = row_of(A);
    double J = (row * block_toeplitz(C) * row.transpose()).trace();
    for (int p = 0; p < circle.size(); ++p) {
        const cd z = circle.node(circle.index(p));
        const cd det = block_poly(A, z).determinant();
        const double mod2 = std::norm(det);
        if (mod2 <= 0.0)
            throw SingularityError("objective_vec: det A(zeta) vanishes",
                                   circle.index(p));
        J -= std::norm(scalar_poly(b, z)) * std::log(mod2) / (2.0 * N);
    }
    return J;
}

std::vector<Mat> spectrum_lags_vec(const std::vector<Mat>& A, const Vec& b,
                                   const Mat& D, int N, int count) {
    const DiscreteCircle circle(N);
    const int m = static_cast<int>(A[0].rows());
    const Mat Dinv = D.ldlt().solve(Mat::Identity(m, m));
    std::vector<CMat> phi(circle.size());
    for (int p = 0; p < circle.size(); ++p) {
        const cd z = circle.node(circle.index(p));
        const CMat Az = block_poly(A, z);
        const CMat Q = Az.adjoint() * Dinv.cast<cd>() * Az;
        phi[p] = Q.inverse() * std::norm(scalar_poly(b, z));
    }
    const std::vector<Mat> lags = idft_real(phi, circle);
    std::vector<Mat> out(count + 1);
    for (int k = 0; k <= count; ++k) out[k] = lags[circle.pos(k)];
    return out;
}

std::vector<Mat> model_lags_vec(const VectorPeriodicArmaModel& model,
                                int count) {
    return spectrum_lags_vec(model.A, model.b, model.D, model.N, count);
}

double fixed_point_residual(const VectorPeriodicArmaModel& model,
                            const std::vector<Mat>& C) {
    const int n = static_cast<int>(model.A.size()) - 1;
    const std::vector<Mat> Gamma = gamma_blocks(model.A, model.b, model.N);
    const Mat lhs = row_of(model.A) * block_toeplitz(C);
    const Mat rhs = model.D * numerator_row(model.b, model.m) *
                    toeplitz_gamma_blocks(Gamma, model.N, n);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

std::pair<VectorPeriodicArmaModel, SolveReport> solve_vec(
    const std::vector<Mat>& C, const Vec& b, int N,
    const SolverConfig& config) {
    const int n = static_cast<int>(C.size()) - 1;
    const int m = static_cast<int>(C[0].rows());
    if (b.size() != static_cast<Eigen::Index>(C.size()))
        throw DimensionError("solve_vec: b and C must share a degree");
    if (n >= N) throw DimensionError("solve_vec: requires n < N");
    if (std::abs(b[0] - 1.0) > 1e-12)
        throw DataError("solve_vec: b must be normalized with b_0 = 1");
    if (!is_schur(b)) throw DataError("solve_vec: b must be Schur");
    if (!toeplitz_pd(C))
        throw DataError("solve_vec: block covariance data is not PD");

    SolveReport report;
    std::vector<Mat> A = levinson_whittle(C).A;

    auto canonical = [&](const std::vector<Mat>& X) {
        // representative with implied D = I: S^{-1} X for D = S S^T
        const std::vector<Mat> G = gamma_blocks(X, b, N);
        const Mat D = scaling_D(X, b, C, G);
        Eigen::LLT<Mat> llt(D);
        if (llt.info() != Eigen::Success)
            throw DegenerateScalingError("solve_vec: D(A) is not PD");
        std::vector<Mat> out(X.size());
        for (std::size_t k = 0; k < X.size(); ++k)
            out[k] = llt.matrixL().solve(X[k]);
        return out;
    };

    // every iterate is kept on the canonical D = I slice, where the update
    // has its descent/quasi-Newton meaning
    A = canonical(A);
    double J = objective_vec(A, b, C, N);

    for (int it = 1; it <= config.max_iterations; ++it) {
        report.iterations = it;
        std::vector<Mat> target = canonical(iterate_vec(A, b, C, N));

        std::vector<Mat> cand = target;
        double J_cand = objective_vec(cand, b, C, N);
        double lambda = 1.0;
        int tries = 0;
        while (J_cand > J + 1e-12 && tries < config.max_backtrack) {
            lambda /= 2.0;
            std::vector<Mat> blend(A.size());
            for (std::size_t k = 0; k < A.size(); ++k)
                blend[k] = A[k] + lambda * (target[k] - A[k]);
            cand = canonical(project_vec(blend, Mat::Identity(m, m), N));
            J_cand = objective_vec(cand, b, C, N);
            ++tries;
        }

        const double step = normalized_step(A, cand);
        A = cand;
        J = J_cand;
        if (step <= config.delta) {
            report.status = SolveStatus::converged;
            break;
        }
    }

    VectorPeriodicArmaModel model;
    model.b = b;
    model.N = N;
    model.m = m;
    // rescale to A_0 = I and extract the consistent D
    const Mat L = A[0].partialPivLu().inverse();
    model.A.resize(A.size());
    for (std::size_t k = 0; k < A.size(); ++k) model.A[k] = L * A[k];
    model.D = scaling_D(model.A, b, C, gamma_blocks(model.A, b, N));

    const std::vector<Mat> lags = model_lags_vec(model, n);
    report.moment_residual = Vec(n + 1);
    for (int k = 0; k <= n; ++k)
        report.moment_residual[k] = (lags[k] - C[k]).cwiseAbs().maxCoeff();

    // stationarity diagnostic by central finite differences on the
    // canonical representative
    {
        std::vector<Mat> X = canonical(model.A);
        const double h = 1e-6;
        double gmax = 0.0;
        for (std::size_t k = 0; k < X.size(); ++k)
            for (int r = 0; r < m; ++r)
                for (int cidx = 0; cidx < m; ++cidx) {
                    X[k](r, cidx) += h;
                    const double Jp = objective_vec(X, b, C, N);
                    X[k](r, cidx) -= 2 * h;
                    const double Jm = objective_vec(X, b, C, N);
                    X[k](r, cidx) += h;
                    gmax = std::max(gmax, std::abs(Jp - Jm) / (2 * h));
                }
        report.gradient_norm = gmax;
    }

    if (report.status != SolveStatus::converged)
        throw ConvergenceError(
            "solve_vec: iteration budget exhausted before convergence");
    return {model, report};
}

}  // namespace crcep
