#include "crcep/toeplitz.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace crcep {

Mat toeplitz_from_lags(const Vec& c) {
    const int n = static_cast<int>(c.size()) - 1;
    Mat T(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) T(i, j) = c[std::abs(i - j)];
    return T;
}

Mat block_toeplitz(const std::vector<Mat>& C) {
    const int n = static_cast<int>(C.size()) - 1;
    const int m = static_cast<int>(C[0].rows());
    Mat T(m * (n + 1), m * (n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            T.block(i * m, j * m, m, m) =
                j >= i ? C[j - i] : Mat(C[i - j].transpose());
    return T;
}

namespace {

bool chol_pd(const Mat& T) {
    Eigen::LLT<Mat> llt(T);
    return llt.info() == Eigen::Success;
}

PdReport eig_report(const Mat& T) {
    Eigen::SelfAdjointEigenSolver<Mat> es(T, Eigen::EigenvaluesOnly);
    PdReport rep;
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    rep.positive = rep.min_eigenvalue > 0.0;
    return rep;
}

}  // namespace

bool toeplitz_pd(const Vec& c) { return chol_pd(toeplitz_from_lags(c)); }
bool toeplitz_pd(const std::vector<Mat>& C) { return chol_pd(block_toeplitz(C)); }

PdReport toeplitz_pd_report(const Vec& c) {
    return eig_report(toeplitz_from_lags(c));
}
PdReport toeplitz_pd_report(const std::vector<Mat>& C) {
    return eig_report(block_toeplitz(C));
}

LevinsonResult levinson(const Vec& c) {
    const int n = static_cast<int>(c.size()) - 1;
    if (c[0] <= 0.0) throw DataError("levinson: c_0 must be positive");
    LevinsonResult res;
    res.a = Vec::Zero(n + 1);
    res.a[0] = 1.0;
    res.reflection = Vec::Zero(n);
    double err = c[0];
    for (int k = 1; k <= n; ++k) {
        double acc = c[k];
        for (int j = 1; j < k; ++j) acc += res.a[j] * c[k - j];
        const double kappa = acc / err;
        if (std::abs(kappa) >= 1.0)
            throw DataError("levinson: covariance data is not positive definite");
        res.reflection[k - 1] = kappa;
        Vec prev = res.a;
        res.a[k] = -kappa;
        for (int j = 1; j < k; ++j) res.a[j] = prev[j] - kappa * prev[k - j];
        err *= 1.0 - kappa * kappa;
    }
    res.sigma2 = err;
    return res;
}

WhittleResult levinson_whittle(const std::vector<Mat>& C) {
    const int n = static_cast<int>(C.size()) - 1;
    const int m = static_cast<int>(C[0].rows());
    if (!toeplitz_pd(C))
        throw DataError(
            "levinson_whittle: block covariance data is not positive definite");
    WhittleResult res;
    res.A.assign(n + 1, Mat::Zero(m, m));
    res.A[0] = Mat::Identity(m, m);
    if (n > 0) {
        auto lag = [&](int d) -> Mat {
            return d >= 0 ? C[d] : Mat(C[-d].transpose());
        };
        // solve X M = -[C_1 .. C_n] for X = [A_1 .. A_n]
        Mat M(m * n, m * n);
        Mat rhs(m, m * n);
        for (int k = 1; k <= n; ++k)
            for (int j = 1; j <= n; ++j)
                M.block((k - 1) * m, (j - 1) * m, m, m) = lag(j - k);
        for (int j = 1; j <= n; ++j) rhs.block(0, (j - 1) * m, m, m) = -C[j];
        Mat X = M.transpose().partialPivLu().solve(rhs.transpose()).transpose();
        for (int k = 1; k <= n; ++k) res.A[k] = X.block(0, (k - 1) * m, m, m);
    }
    res.D = C[0];
    for (int k = 1; k <= n; ++k) res.D += res.A[k] * C[k].transpose();
    res.D = (res.D + Mat(res.D.transpose())) / 2.0;
    return res;
}

}  // namespace crcep
