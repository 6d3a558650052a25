#include "crcep/spectral_factor.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace crcep {

namespace {

constexpr double kRootCircleMargin = 1e-6;
constexpr double kPositivityTol = 1e-10;
constexpr int kCircleGrid = 4096;

int effective_degree(const Vec& p, double rel_tol = 1e-13) {
    const double scale = p.cwiseAbs().maxCoeff();
    int d = 0;
    for (int k = 0; k < p.size(); ++k)
        if (std::abs(p[k]) > rel_tol * scale) d = k;
    return d;
}

}  // namespace

double pseudo_eval(const Vec& p, cd zeta) {
    cd acc(p[0], 0.0);
    cd zk(1.0, 0.0);
    for (int k = 1; k < p.size(); ++k) {
        zk /= zeta;
        acc += p[k] * (zk + cd(1.0, 0.0) / zk);
    }
    return acc.real();
}

CMat pseudo_eval(const std::vector<Mat>& P, cd zeta) {
    CMat acc = P[0].cast<cd>();
    cd zk(1.0, 0.0);
    for (std::size_t k = 1; k < P.size(); ++k) {
        zk /= zeta;
        acc += P[k].cast<cd>() * zk +
               P[k].transpose().cast<cd>() * (cd(1.0, 0.0) / zk);
    }
    return acc;
}

PositivityReport is_positive_discrete(const Vec& p, int N, double tolerance) {
    const DiscreteCircle circle(N);
    PositivityReport rep;
    rep.min_value = std::numeric_limits<double>::infinity();
    for (int p_ = 0; p_ < circle.size(); ++p_) {
        const int j = circle.index(p_);
        const double v = pseudo_eval(p, circle.node(j));
        if (v < rep.min_value) {
            rep.min_value = v;
            rep.argmin_node = j;
        }
    }
    rep.positive = rep.min_value > tolerance;
    return rep;
}

PositivityReport is_positive_discrete(const std::vector<Mat>& P, int N,
                                      double tolerance) {
    const DiscreteCircle circle(N);
    PositivityReport rep;
    rep.min_value = std::numeric_limits<double>::infinity();
    for (int p_ = 0; p_ < circle.size(); ++p_) {
        const int j = circle.index(p_);
        CMat v = pseudo_eval(P, circle.node(j));
        Eigen::SelfAdjointEigenSolver<CMat> es((v + v.adjoint()) / 2.0);
        const double lam = es.eigenvalues().minCoeff();
        if (lam < rep.min_value) {
            rep.min_value = lam;
            rep.argmin_node = j;
        }
    }
    rep.positive = rep.min_value > tolerance;
    return rep;
}

std::vector<cd> poly_roots(const Vec& coeffs) {
    const double scale = coeffs.cwiseAbs().maxCoeff();
    if (scale == 0.0) return {};
    int d = 0;
    for (int k = 0; k < coeffs.size(); ++k)
        if (std::abs(coeffs[k]) > 1e-14 * scale) d = k;
    if (d == 0) return {};
    Mat companion = Mat::Zero(d, d);
    for (int j = 0; j < d; ++j) companion(0, j) = -coeffs[d - 1 - j] / coeffs[d];
    companion.block(1, 0, d - 1, d - 1).setIdentity();
    Eigen::EigenSolver<Mat> es(companion, false);
    std::vector<cd> roots(d);
    for (int i = 0; i < d; ++i) roots[i] = es.eigenvalues()[i];
    return roots;
}

bool is_schur(const Vec& a, double margin) {
    // roots of z^n a(z): ascending coefficients are a reversed
    Vec rev = a.reverse();
    if (a.cwiseAbs().maxCoeff() == 0.0) return false;
    if (std::abs(a[0]) <= 1e-14 * a.cwiseAbs().maxCoeff()) return false;
    for (const cd& r : poly_roots(rev))
        if (std::abs(r) >= 1.0 - margin) return false;
    return true;
}

bool is_schur_matrix(const std::vector<Mat>& A, double margin) {
    const int n = static_cast<int>(A.size()) - 1;
    const int m = static_cast<int>(A[0].rows());
    if (n == 0) return Eigen::FullPivLU<Mat>(A[0]).isInvertible();
    Eigen::FullPivLU<Mat> lu(A[0]);
    if (!lu.isInvertible()) return false;
    // block companion of z^n A(z) = A_0 z^n + ... + A_n
    Mat comp = Mat::Zero(m * n, m * n);
    for (int k = 1; k <= n; ++k)
        comp.block(0, (k - 1) * m, m, m) = -lu.solve(A[k]);
    if (n > 1) comp.block(m, 0, m * (n - 1), m * (n - 1)).setIdentity();
    Eigen::EigenSolver<Mat> es(comp, false);
    for (int i = 0; i < comp.rows(); ++i)
        if (std::abs(es.eigenvalues()[i]) >= 1.0 - margin) return false;
    return true;
}

bool is_positive_circle(const Vec& p) {
    const int d = effective_degree(p);
    if (d == 0) return p[0] > kPositivityTol;
    // grid minimum
    double grid_min = std::numeric_limits<double>::infinity();
    for (int u = 0; u < kCircleGrid; ++u) {
        const double theta = 2.0 * M_PI * u / kCircleGrid;
        grid_min = std::min(grid_min,
                            pseudo_eval(p, cd(std::cos(theta), std::sin(theta))));
    }
    if (grid_min <= kPositivityTol) return false;
    // no root of z^d p(z) close to the unit circle
    Vec f(2 * d + 1);
    for (int j = 0; j <= 2 * d; ++j) f[j] = p[std::abs(d - j)];
    for (const cd& r : poly_roots(f))
        if (std::abs(std::abs(r) - 1.0) < kRootCircleMargin) return false;
    return true;
}

Vec coefficient_match_check(const Vec& a) {
    const int n = static_cast<int>(a.size()) - 1;
    Vec q = Vec::Zero(n + 1);
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j + k <= n; ++j) q[k] += a[j] * a[j + k];
    return q;
}

Vec schur_factor(const Vec& p) {
    const int n = static_cast<int>(p.size()) - 1;
    const int d = effective_degree(p);
    if (!is_positive_circle(p)) {
        throw FactorizationError(
            "schur_factor: pseudo-polynomial is not strictly positive on the "
            "unit circle");
    }
    Vec a = Vec::Zero(n + 1);
    if (d == 0) {
        a[0] = std::sqrt(p[0]);
        return a;
    }
    Vec f(2 * d + 1);
    for (int j = 0; j <= 2 * d; ++j) f[j] = p[std::abs(d - j)];
    std::vector<cd> inside;
    for (const cd& r : poly_roots(f))
        if (std::abs(r) < 1.0) inside.push_back(r);
    if (static_cast<int>(inside.size()) != d)
        throw FactorizationError(
            "schur_factor: root pairing failed (roots too close to the unit "
            "circle)");
    // monic-in-delay factor prod (1 - r_i z^{-1}), coefficients by convolution
    std::vector<cd> coef{cd(1.0, 0.0)};
    for (const cd& r : inside) {
        std::vector<cd> next(coef.size() + 1, cd(0.0, 0.0));
        for (std::size_t i = 0; i < coef.size(); ++i) {
            next[i] += coef[i];
            next[i + 1] -= r * coef[i];
        }
        coef = std::move(next);
    }
    Vec base = Vec::Zero(n + 1);
    for (int k = 0; k <= d; ++k) base[k] = coef[k].real();
    const Vec q = coefficient_match_check(base);
    const double alpha = std::sqrt(p[0] / q[0]);
    a = alpha * base;

    const Vec check = coefficient_match_check(a);
    const double scale = p.cwiseAbs().maxCoeff();
    if ((check - p).cwiseAbs().maxCoeff() > 1e-8 * std::max(scale, 1.0))
        throw FactorizationError("schur_factor: coefficient verification failed");
    return a;
}

std::vector<Mat> coefficient_match_left(const std::vector<Mat>& A) {
    const int n = static_cast<int>(A.size()) - 1;
    const int m = static_cast<int>(A[0].rows());
    std::vector<Mat> Q(n + 1, Mat::Zero(m, m));
    for (int dlag = 0; dlag <= n; ++dlag)
        for (int k = 0; k + dlag <= n; ++k) Q[dlag] += A[k + dlag] * A[k].transpose();
    return Q;
}

std::vector<Mat> coefficient_match_right(const std::vector<Mat>& A) {
    const int n = static_cast<int>(A.size()) - 1;
    const int m = static_cast<int>(A[0].rows());
    std::vector<Mat> Q(n + 1, Mat::Zero(m, m));
    for (int dlag = 0; dlag <= n; ++dlag)
        for (int k = 0; k + dlag <= n; ++k) Q[dlag] += A[k].transpose() * A[k + dlag];
    return Q;
}

namespace {

// Bauer: banded block Cholesky of the Toeplitz embedding [Q_{i-j}]; the
// bottom row converges (linearly) to the outer factor coefficients.
std::vector<Mat> bauer_initial(const std::vector<Mat>& Q, int max_rows,
                               double tol) {
    const int n = static_cast<int>(Q.size()) - 1;
    const int m = static_cast<int>(Q[0].rows());
    auto Qlag = [&](int d) -> Mat {
        if (d >= 0) return Q[d];
        return Q[-d].transpose();
    };
    // rolling window of the last n+1 factor rows; row i keeps L_{i,i-k}=G_k
    std::vector<std::vector<Mat>> rows;
    std::vector<Mat> prev;
    for (int i = 0; i < max_rows; ++i) {
        std::vector<Mat> row(n + 1, Mat::Zero(m, m));  // row[k] = L_{i,i-k}
        for (int k = n; k >= 0; --k) {
            const int j = i - k;
            if (j < 0) continue;
            Mat S = Qlag(k);
            // sum over common columns l of rows i and j; for the diagonal
            // block (j == i) the second factor lives in the current row
            for (int l = std::max(0, i - n); l < j; ++l) {
                const Mat& Li = row[i - l];
                const Mat& Lj = (j == i)
                                    ? row[i - l]
                                    : rows[rows.size() - (i - j)][j - l];
                S -= Li * Lj.transpose();
            }
            if (k > 0) {
                const std::vector<Mat>& rj = rows[rows.size() - k];
                row[k] = rj[0].transpose().triangularView<Eigen::Upper>()
                             .solve<Eigen::OnTheRight>(S);
            } else {
                Eigen::LLT<Mat> llt((S + S.transpose()) / 2.0);
                if (llt.info() != Eigen::Success)
                    throw FactorizationError(
                        "matrix factorization: Toeplitz embedding is not "
                        "positive definite");
                row[0] = llt.matrixL();
            }
        }
        if (i >= n && !prev.empty()) {
            double diff = 0.0;
            for (int k = 0; k <= n; ++k)
                diff = std::max(diff, (row[k] - prev[k]).cwiseAbs().maxCoeff());
            if (diff < tol) return row;
        }
        if (i >= n) prev = row;
        rows.push_back(std::move(row));
        if (static_cast<int>(rows.size()) > n + 1)
            rows.erase(rows.begin());
    }
    return prev.empty() ? rows.back() : prev;
}

// one Wilson sweep: G <- G * [P_+(G^{-1} Q G^{-*}) + I/2], on an M-point grid
struct WilsonGrid {
    int M;
    int m;
    std::vector<CMat> values;

    std::vector<CMat> coefficients() const {
        std::vector<cd> chan(M);
        std::vector<CMat> coef(M, CMat::Zero(m, m));
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                for (int u = 0; u < M; ++u) chan[u] = values[u](r, c);
                fft_inverse(chan);  // coef_k = (1/M) sum_u X(u) e^{ik theta_u}
                for (int k = 0; k < M; ++k) coef[k](r, c) = chan[k];
            }
        return coef;
    }

    static WilsonGrid from_coefficients(const std::vector<CMat>& coef, int M,
                                        int m) {
        WilsonGrid g{M, m, std::vector<CMat>(M, CMat::Zero(m, m))};
        std::vector<cd> chan(M);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                for (int k = 0; k < M; ++k)
                    chan[k] = k < static_cast<int>(coef.size()) ? coef[k](r, c)
                                                                : cd(0, 0);
                fft_forward(chan);  // X(u) = sum_k g_k e^{-ik theta_u}
                for (int u = 0; u < M; ++u) g.values[u](r, c) = chan[u];
            }
        return g;
    }
};

std::vector<Mat> wilson_refine(const std::vector<Mat>& Q,
                               const std::vector<Mat>& G0, int M) {
    const int n = static_cast<int>(Q.size()) - 1;
    const int m = static_cast<int>(Q[0].rows());

    // Q on the grid
    std::vector<CMat> qc(n + 1);
    for (int k = 0; k <= n; ++k) qc[k] = Q[k].cast<cd>();
    std::vector<CMat> Qg(M);
    for (int u = 0; u < M; ++u) {
        const double theta = 2.0 * M_PI * u / M;
        const cd z(std::cos(theta), std::sin(theta));
        CMat v = qc[0];
        cd zk(1, 0);
        for (int k = 1; k <= n; ++k) {
            zk /= z;
            v += qc[k] * zk + qc[k].adjoint() * std::conj(zk);
        }
        Qg[u] = v;
        Eigen::SelfAdjointEigenSolver<CMat> es((v + v.adjoint()) / 2.0);
        if (es.eigenvalues().minCoeff() <= 0.0)
            throw FactorizationError(
                "matrix factorization: spectrum not positive definite on the "
                "unit circle");
    }

    std::vector<CMat> gc(G0.size());
    for (std::size_t k = 0; k < G0.size(); ++k) gc[k] = G0[k].cast<cd>();
    WilsonGrid G = WilsonGrid::from_coefficients(gc, M, m);

    double best_err = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 60; ++iter) {
        WilsonGrid X{M, m, std::vector<CMat>(M)};
        for (int u = 0; u < M; ++u) {
            Eigen::PartialPivLU<CMat> lu(G.values[u]);
            CMat Gi = lu.inverse();
            X.values[u] = Gi * Qg[u] * Gi.adjoint();
        }
        std::vector<CMat> xc = X.coefficients();
        double err = (xc[0] - CMat::Identity(m, m)).cwiseAbs().maxCoeff();
        for (int k = 1; k <= M / 2; ++k)
            err = std::max(err, xc[k].cwiseAbs().maxCoeff());
        if (err < 1e-14 || err >= best_err * 0.999) break;
        best_err = err;
        // causal projection: S_0 = X_0/2 + I/2, S_k = X_k for 1 <= k <= M/2-1
        std::vector<CMat> sc(M, CMat::Zero(m, m));
        sc[0] = xc[0] / 2.0 + CMat::Identity(m, m) / 2.0;
        for (int k = 1; k < M / 2; ++k) sc[k] = xc[k];
        WilsonGrid S = WilsonGrid::from_coefficients(sc, M, m);
        for (int u = 0; u < M; ++u) G.values[u] = G.values[u] * S.values[u];
    }

    std::vector<CMat> final_coef = G.coefficients();
    std::vector<Mat> out(n + 1);
    double scale = 0.0;
    for (int k = 0; k <= n; ++k) {
        out[k] = final_coef[k].real();
        scale = std::max(scale, out[k].cwiseAbs().maxCoeff());
    }
    double leaked = 0.0;
    for (int k = n + 1; k <= M / 2; ++k)
        leaked = std::max(leaked, final_coef[k].cwiseAbs().maxCoeff());
    if (leaked > 1e-7 * std::max(scale, 1.0))
        throw FactorizationError(
            "matrix factorization: outer factor is not banded to the expected "
            "degree");
    return out;
}

// right-multiply all coefficients by an orthogonal U making A_0 lower
// triangular with positive diagonal
void normalize_lower_right(std::vector<Mat>& A) {
    const int m = static_cast<int>(A[0].rows());
    Eigen::HouseholderQR<Mat> qr(A[0].transpose());
    Mat U = qr.householderQ();
    Mat L = (Mat(qr.matrixQR().triangularView<Eigen::Upper>())).transpose();
    Vec signs(m);
    for (int i = 0; i < m; ++i) signs[i] = L(i, i) < 0 ? -1.0 : 1.0;
    U = U * signs.asDiagonal();
    for (Mat& Ak : A) Ak = Ak * U;
}

// left-multiply by orthogonal U making A_0 lower triangular positive diagonal
void normalize_lower_left(std::vector<Mat>& A) {
    const int m = static_cast<int>(A[0].rows());
    // QL via the flip trick: J A J = Q R  =>  A = (J Q J)(J R J), JRJ lower
    Mat J = Mat::Zero(m, m);
    for (int i = 0; i < m; ++i) J(i, m - 1 - i) = 1.0;
    Eigen::HouseholderQR<Mat> qr(J * A[0] * J);
    Mat Qq = J * Mat(qr.householderQ()) * J;
    Mat L = J * Mat(qr.matrixQR().triangularView<Eigen::Upper>()) * J;
    Vec signs(m);
    for (int i = 0; i < m; ++i) signs[i] = L(i, i) < 0 ? -1.0 : 1.0;
    Mat U = signs.asDiagonal() * Qq.transpose();
    for (Mat& Ak : A) Ak = U * Ak;
}

int wilson_grid_size(int n) {
    int M = 512;
    while (M < 16 * (n + 1)) M *= 2;
    return M;
}

}  // namespace

std::vector<Mat> matrix_schur_factor_left(const std::vector<Mat>& Q) {
    const int n = static_cast<int>(Q.size()) - 1;
    std::vector<Mat> G0 = bauer_initial(Q, 64 * (n + 1) + 64, 1e-9);
    std::vector<Mat> G = wilson_refine(Q, G0, wilson_grid_size(n));
    normalize_lower_right(G);
    return G;
}

std::vector<Mat> matrix_schur_factor(const std::vector<Mat>& Q) {
    // factor the transposed-coefficient symbol and transpose back:
    // R_d := Q_d^T, R = G G^*  =>  Q(z) = H(z^{-1})^T H(z) with H_k = G_k^T
    std::vector<Mat> R(Q.size());
    for (std::size_t k = 0; k < Q.size(); ++k) R[k] = Q[k].transpose();
    const int n = static_cast<int>(Q.size()) - 1;
    std::vector<Mat> G0 = bauer_initial(R, 64 * (n + 1) + 64, 1e-9);
    std::vector<Mat> G = wilson_refine(R, G0, wilson_grid_size(n));
    std::vector<Mat> H(G.size());
    for (std::size_t k = 0; k < G.size(); ++k) H[k] = G[k].transpose();
    normalize_lower_left(H);
    return H;
}

}  // namespace crcep
