#include "crcep/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "crcep/spectral_factor.hpp"
#include "crcep/toeplitz.hpp"

namespace crcep {

namespace {

// One-sided polynomial p(zeta_j) = sum_k p_k zeta_j^{-k} at every node,
// symmetric layout.
CVec poly_spectrum(const Vec& coeffs, const DiscreteCircle& circle) {
    CVec spec(circle.size());
    for (int p = 0; p < circle.size(); ++p) {
        const int j = circle.index(p);
        cd acc(0.0, 0.0);
        for (int k = 0; k < coeffs.size(); ++k)
            acc += coeffs[k] * circle.node(-j * k);
        spec[p] = acc;
    }
    return spec;
}

void check_degrees(const Vec& a, const Vec& b, int N) {
    if (a.size() != b.size())
        throw DimensionError("periodic solver: a and b must share a degree");
    if (static_cast<int>(a.size()) - 1 >= N)
        throw DimensionError("periodic solver: requires n < N");
}

}  // namespace

Vec gamma_of(const Vec& a, const Vec& b, int N) {
    check_degrees(a, b, N);
    const DiscreteCircle circle(N);
    const CVec sa = poly_spectrum(a, circle);
    const CVec sb = poly_spectrum(b, circle);
    const double amax = sa.cwiseAbs().maxCoeff();
    CVec ratio(circle.size());
    for (int p = 0; p < circle.size(); ++p) {
        if (std::abs(sa[p]) <= 1e-12 * std::max(amax, 1.0))
            throw SingularityError("gamma_of: a(zeta) vanishes at a node",
                                   circle.index(p));
        ratio[p] = sb[p] / sa[p];
    }
    return idft_real(ratio, circle);
}

Mat toeplitz_gamma(const Vec& gamma, int N, int n) {
    const DiscreteCircle circle(N);
    Mat T(n + 1, n + 1);
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) T(j, k) = gamma[circle.pos(k - j)];
    return T;
}

double sigma_sq(const Vec& a, const Vec& b, const Vec& gamma, const Vec& c) {
    const int n = static_cast<int>(a.size()) - 1;
    const DiscreteCircle circle(static_cast<int>(gamma.size()) / 2);
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= n; ++k) {
        num += c[k] * a[k];
        den += gamma[circle.pos(k)] * b[k];
    }
    if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(num)))
        throw DegenerateScalingError(
            "sigma_sq: denominator sum gamma_k b_k is numerically zero");
    return num / den;
}

Vec spectrum_lags(const Vec& a, const Vec& b, double sigma2, int N, int count) {
    const DiscreteCircle circle(N);
    const CVec sa = poly_spectrum(a, circle);
    const CVec sb = poly_spectrum(b, circle);
    CVec phi(circle.size());
    for (int p = 0; p < circle.size(); ++p)
        phi[p] = sigma2 * std::norm(sb[p]) / std::norm(sa[p]);
    const Vec lags = idft_real(phi, circle);
    Vec out(count + 1);
    for (int k = 0; k <= count; ++k) out[k] = lags[circle.pos(k)];
    return out;
}

Vec model_lags(const PeriodicArmaModel& model, int count) {
    return spectrum_lags(model.a, model.b, model.sigma2, model.N, count);
}

double objective(const Vec& a, const Vec& b, const Vec& c, int N) {
    const DiscreteCircle circle(N);
    const Mat T = toeplitz_from_lags(c);
    double J = a.dot(T * a);
    const CVec sa = poly_spectrum(a, circle);
    const CVec sb = poly_spectrum(b, circle);
    for (int p = 0; p < circle.size(); ++p) {
        const double mod2 = std::norm(sa[p]);
        if (mod2 <= 0.0)
            throw SingularityError("objective: a(zeta) vanishes at a node",
                                   circle.index(p));
        J -= std::norm(sb[p]) * std::log(mod2) / (2.0 * N);
    }
    return J;
}

Vec gradient(const Vec& a, const Vec& b, const Vec& c, int N) {
    const int n = static_cast<int>(a.size()) - 1;
    const Vec gamma = gamma_of(a, b, N);
    return 2.0 * (toeplitz_from_lags(c) * a - toeplitz_gamma(gamma, N, n) * b);
}

Vec half_gradient_via_lags(const Vec& a, const Vec& b, const Vec& c, int N) {
    const int n = static_cast<int>(a.size()) - 1;
    const Vec ctilde = spectrum_lags(a, b, 1.0, N, n);
    return (toeplitz_from_lags(c) - toeplitz_from_lags(ctilde)) * a;
}

Vec iterate_step_raw(const Vec& a, const Vec& b, const Vec& c, int N) {
    const int n = static_cast<int>(a.size()) - 1;
    const Vec gamma = gamma_of(a, b, N);
    const double s2 = sigma_sq(a, b, gamma, c);
    const Mat T = toeplitz_from_lags(c);
    return s2 * T.ldlt().solve(toeplitz_gamma(gamma, N, n) * b);
}

Vec project_schur(const Vec& a_raw, int N) {
    const Vec q = coefficient_match_check(a_raw);
    try {
        return schur_factor(q);
    } catch (const FactorizationError&) {
        if (is_positive_discrete(q, N).positive)
            throw InfeasibleAtNError(
                "projection: symmetric square is positive on T_2N but not on "
                "the full circle; the instance is infeasible at this N");
        throw;
    }
}

Vec iterate_step(const Vec& a, const Vec& b, const Vec& c, int N) {
    return project_schur(iterate_step_raw(a, b, c, N), N);
}

std::pair<PeriodicArmaModel, SolveReport> solve(const Vec& c, const Vec& b,
                                                int N,
                                                const SolverConfig& config) {
    const int n = static_cast<int>(c.size()) - 1;
    if (b.size() != c.size())
        throw DimensionError("solve: c and b must have n+1 entries each");
    if (n >= N) throw DimensionError("solve: requires n < N");
    if (std::abs(b[0] - 1.0) > 1e-12)
        throw DataError("solve: b must be normalized with b_0 = 1");
    if (!is_schur(b)) throw DataError("solve: b must be a Schur polynomial");
    if (!toeplitz_pd(c))
        throw DataError("solve: covariance data is not positive definite");

    SolveReport report;

    // the quasi-Newton/descent interpretation of the update holds on the
    // sigma^2 = 1 slice, so every iterate is kept sigma-normalized
    auto normalize = [&](const Vec& x) {
        const Vec gamma = gamma_of(x, b, N);
        const double s2 = sigma_sq(x, b, gamma, c);
        if (s2 <= 0.0)
            throw DegenerateScalingError(
                "solve: nonpositive sigma^2 along the iteration");
        return Vec(x / std::sqrt(s2));
    };

    Vec a = normalize(levinson(c).a);  // maximum-entropy start, in S_n
    double J = objective(a, b, c, N);

    PeriodicArmaModel model;
    model.b = b;
    model.N = N;

    for (int it = 1; it <= config.max_iterations; ++it) {
        report.iterations = it;
        Vec target;
        try {
            target = normalize(iterate_step(a, b, c, N));
        } catch (const InfeasibleAtNError&) {
            report.status = SolveStatus::infeasible;
            throw;
        }

        // step damping: halve toward the previous iterate while J_P increases
        Vec cand = target;
        double J_cand = objective(cand, b, c, N);
        double lambda = 1.0;
        int tries = 0;
        while (J_cand > J + 1e-12 && tries < config.max_backtrack) {
            lambda /= 2.0;
            cand = normalize(project_schur(a + lambda * (target - a), N));
            J_cand = objective(cand, b, c, N);
            ++tries;
        }

        const double step = (cand - a).norm();
        a = cand;
        J = J_cand;
        // sigma^2 of the monic representative: sigma^2(a/a_0) = 1/a_0^2
        report.sigma2_trajectory.push_back(1.0 / (a[0] * a[0]));
        report.gradient_norm = gradient(a, b, c, N).lpNorm<Eigen::Infinity>();

        if (step <= config.delta &&
            report.gradient_norm <= config.gradient_tol) {
            report.status = SolveStatus::converged;
            break;
        }
    }

    // normalize monic and fold the leading coefficient into sigma^2
    const double a0 = a[0];
    model.a = a / a0;
    const Vec gamma = gamma_of(model.a, b, N);
    model.sigma2 = sigma_sq(model.a, b, gamma, c);
    report.moment_residual = verify_moments(model, c);

    if (report.status != SolveStatus::converged)
        throw ConvergenceError(
            "solve: iteration budget exhausted before meeting the convergence "
            "test");
    return {model, report};
}

Mat jury_matrix(const Vec& a) {
    const int n = static_cast<int>(a.size()) - 1;
    Mat M = Mat::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i + j <= n) M(i, j) += a[i + j];
            if (j >= 1 && i >= j) M(i, j) += a[i - j];
        }
    return M;
}

double jury_determinant(const Vec& a) {
    const int n = static_cast<int>(a.size()) - 1;
    // roots of z^n a(z): ascending coefficients a_n .. a_0
    Vec f(n + 1);
    for (int j = 0; j <= n; ++j) f[j] = a[n - j];
    const std::vector<cd> roots = poly_roots(f);
    cd det(1.0, 0.0);
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i; j < roots.size(); ++j)
            det *= cd(1.0, 0.0) - roots[i] * roots[j];
    // M(ta) = t M(a), and the root product is scale invariant
    return std::pow(a[0], n + 1) * det.real();
}

Vec verify_moments(const PeriodicArmaModel& model, const Vec& c,
                   double* jury_det) {
    const int n = static_cast<int>(c.size()) - 1;
    const Mat M = jury_matrix(model.a);
    if (jury_det) *jury_det = jury_determinant(model.a);
    const Vec gamma = gamma_of(model.a, model.b, model.N);
    const Vec rhs =
        model.sigma2 * toeplitz_gamma(gamma, model.N, n) * model.b;
    const Vec chat = M.partialPivLu().solve(rhs);
    return chat - c;
}

Mat hessian_residual(const Vec& a, const Vec& b, const Vec& c, int N) {
    const int n = static_cast<int>(a.size()) - 1;
    const Vec ctilde = spectrum_lags(a, b, 1.0, N, n);
    return (c[0] * Mat::Identity(n + 1, n + 1) + toeplitz_from_lags(c)) -
           (ctilde[0] * Mat::Identity(n + 1, n + 1) +
            toeplitz_from_lags(ctilde));
}

Mat chain_rule_residual(const Vec& a, const Vec& b, const Vec& c, int N) {
    const int n = static_cast<int>(a.size()) - 1;
    const Vec ctilde = spectrum_lags(a, b, 1.0, N, n);
    return 2.0 * (toeplitz_from_lags(c) - toeplitz_from_lags(ctilde));
}

Mat dual_hessian_q(const Vec& a, const Vec& b, int N) {
    const int n = static_cast<int>(a.size()) - 1;
    const DiscreteCircle circle(N);
    const CVec sa = poly_spectrum(a, circle);
    const CVec sb = poly_spectrum(b, circle);
    Mat H = Mat::Zero(n + 1, n + 1);
    for (int p = 0; p < circle.size(); ++p) {
        const int j = circle.index(p);
        const double theta = M_PI * j / N;
        const double w = std::norm(sb[p]) /
                         (std::norm(sa[p]) * std::norm(sa[p]) * 2.0 * N);
        Vec g(n + 1);
        g[0] = 1.0;
        for (int k = 1; k <= n; ++k) g[k] = 2.0 * std::cos(k * theta);
        H += w * g * g.transpose();
    }
    return H;
}

Mat symmetric_square_jacobian(const Vec& a) {
    const int n = static_cast<int>(a.size()) - 1;
    Mat J = Mat::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int l = 0; l <= n; ++l) {
            if (l + i <= n) J(i, l) += a[l + i];
            if (l - i >= 0) J(i, l) += a[l - i];
        }
    return J;
}

}  // namespace crcep
