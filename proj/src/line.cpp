#include "crcep/line.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "crcep/spectral_factor.hpp"
#include "crcep/toeplitz.hpp"

namespace crcep {

namespace {

constexpr int kBaseGrid = 1 << 13;
constexpr int kMaxGrid = 1 << 20;

Vec lags_on_grid(const Vec& a, const Vec& b, double sigma2, int count, int M) {
    std::vector<cd> phi(M);
    for (int u = 0; u < M; ++u) {
        const double theta = 2.0 * M_PI * u / M;
        cd ea(0.0, 0.0), eb(0.0, 0.0);
        for (int k = 0; k < a.size(); ++k)
            ea += a[k] * std::polar(1.0, -theta * k);
        for (int k = 0; k < b.size(); ++k)
            eb += b[k] * std::polar(1.0, -theta * k);
        const double mod2 = std::norm(ea);
        if (mod2 <= 0.0)
            throw SingularityError("line_lags: a vanishes on the unit circle");
        phi[u] = sigma2 * std::norm(eb) / mod2;
    }
    fft_inverse(phi);
    Vec out(count + 1);
    for (int k = 0; k <= count; ++k) out[k] = phi[k].real();
    return out;
}

double log_term_on_grid(const Vec& a, const Vec& b, int M) {
    double acc = 0.0;
    for (int u = 0; u < M; ++u) {
        const double theta = 2.0 * M_PI * u / M;
        cd ea(0.0, 0.0), eb(0.0, 0.0);
        for (int k = 0; k < a.size(); ++k)
            ea += a[k] * std::polar(1.0, -theta * k);
        for (int k = 0; k < b.size(); ++k)
            eb += b[k] * std::polar(1.0, -theta * k);
        const double mod2 = std::norm(ea);
        if (mod2 <= 0.0)
            throw SingularityError("objective_line: a vanishes on the circle");
        acc += std::norm(eb) * std::log(mod2);
    }
    return acc / M;
}

}  // namespace

Vec impulse_head(const Vec& a, const Vec& b, int count) {
    const int n = static_cast<int>(a.size()) - 1;
    if (a[0] == 0.0)
        throw SingularityError("impulse_head: a_0 must be nonzero");
    Vec gamma(count + 1);
    for (int t = 0; t <= count; ++t) {
        double acc = t <= static_cast<int>(b.size()) - 1 ? b[t] : 0.0;
        for (int i = 1; i <= std::min(t, n); ++i) acc -= a[i] * gamma[t - i];
        gamma[t] = acc / a[0];
    }
    return gamma;
}

Mat hankel_b(const Vec& b) {
    const int n = static_cast<int>(b.size()) - 1;
    Mat H = Mat::Zero(n + 1, n + 1);
    for (int j = 0; j <= n; ++j)
        for (int k = 0; j + k <= n; ++k) H(j, k) = b[j + k];
    return H;
}

double sigma_sq_line(const Vec& a, const Vec& b, const Vec& c) {
    const int n = static_cast<int>(a.size()) - 1;
    double s2;
    if (std::abs(b[n]) > 1e-8) {
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) acc += a[k] * c[n - k];
        s2 = a[0] / b[n] * acc;
    } else {
        // least-squares fit of sigma^2 in T_n a = sigma^2 H_b gamma(a)
        const Vec lhs = toeplitz_from_lags(c) * a;
        const Vec v = hankel_b(b) * impulse_head(a, b, n);
        const double vv = v.squaredNorm();
        if (vv <= 1e-28)
            throw DegenerateScalingError(
                "sigma_sq_line: H_b gamma is numerically zero");
        s2 = v.dot(lhs) / vv;
    }
    if (s2 <= 1e-14 * std::max(1.0, c[0]))
        throw DegenerateScalingError(
            "sigma_sq_line: nonpositive variance; data and numerator are "
            "inconsistent (boundary case)");
    return s2;
}

Vec line_lags(const Vec& a, const Vec& b, double sigma2, int count) {
    int M = kBaseGrid;
    Vec prev = lags_on_grid(a, b, sigma2, count, M);
    while (M < kMaxGrid) {
        M *= 2;
        Vec next = lags_on_grid(a, b, sigma2, count, M);
        const double change = (next - prev).lpNorm<Eigen::Infinity>();
        prev = next;
        if (change < 1e-10) break;
    }
    return prev;
}

Vec line_lags(const LineArmaModel& model, int count) {
    return line_lags(model.a, model.b, model.sigma2, count);
}

double objective_line(const Vec& a, const Vec& b, const Vec& c) {
    const double quad = a.dot(toeplitz_from_lags(c) * a);
    int M = kBaseGrid;
    double prev = log_term_on_grid(a, b, M);
    while (M < kMaxGrid) {
        M *= 2;
        const double next = log_term_on_grid(a, b, M);
        const double change = std::abs(next - prev);
        prev = next;
        if (change < 1e-12) break;
    }
    return quad - prev;
}

Vec gradient_line(const Vec& a, const Vec& b, const Vec& c) {
    const int n = static_cast<int>(a.size()) - 1;
    const Vec ctilde = line_lags(a, b, 1.0, n);
    return 2.0 * (toeplitz_from_lags(c) - toeplitz_from_lags(ctilde)) * a;
}

Vec iterate_line_raw(const Vec& a, const Vec& b, const Vec& c) {
    const int n = static_cast<int>(a.size()) - 1;
    const double s2 = sigma_sq_line(a, b, c);
    const Vec v = hankel_b(b) * impulse_head(a, b, n);
    return s2 * toeplitz_from_lags(c).ldlt().solve(v);
}

Vec iterate_line(const Vec& a, const Vec& b, const Vec& c) {
    return schur_factor(coefficient_match_check(iterate_line_raw(a, b, c)));
}

std::pair<LineArmaModel, SolveReport> solve_line(const Vec& c, const Vec& b,
                                                 const SolverConfig& config) {
    const int n = static_cast<int>(c.size()) - 1;
    if (b.size() != c.size())
        throw DimensionError("solve_line: c and b must have n+1 entries each");
    if (std::abs(b[0] - 1.0) > 1e-12)
        throw DataError("solve_line: b must be normalized with b_0 = 1");
    if (!is_schur(b))
        throw DataError("solve_line: b must be a Schur polynomial");
    if (!toeplitz_pd(c))
        throw DataError("solve_line: covariance data is not positive definite");

    SolveReport report;

    // keep every iterate on the sigma^2 = 1 slice, where the update has its
    // descent/quasi-Newton meaning; the scale is fixed by minimizing J over
    // t -> t a, which gives t^2 a' T(c) a = sum b_k^2 and is strictly
    // positive for PD data (the closed-form estimate can change sign away
    // from the fixed point, where it agrees with this one)
    const Mat Tc = toeplitz_from_lags(c);
    const double bb = b.squaredNorm();
    auto normalize = [&](const Vec& x) {
        const double s2 = x.dot(Tc * x) / bb;
        return Vec(x / std::sqrt(s2));
    };

    Vec a = normalize(levinson(c).a);
    double J = objective_line(a, b, c);
    int stagnant = 0;

    for (int it = 1; it <= config.max_iterations; ++it) {
        report.iterations = it;
        // the sigma^2 prefactor of the update only sets a scale, which the
        // projection and normalization erase; drop it so the closed-form
        // estimate cannot fail on intermediate iterates
        const Vec dir = Tc.ldlt().solve(hankel_b(b) * impulse_head(a, b, n));
        const Vec target = normalize(schur_factor(coefficient_match_check(dir)));

        Vec cand = target;
        double J_cand = objective_line(cand, b, c);
        double lambda = 1.0;
        int tries = 0;
        while (J_cand > J + 1e-12 && tries < config.max_backtrack) {
            lambda /= 2.0;
            cand = normalize(schur_factor(
                coefficient_match_check(a + lambda * (target - a))));
            J_cand = objective_line(cand, b, c);
            ++tries;
        }
        stagnant = J_cand > J + 1e-12 ? stagnant + 1 : 0;

        const double step = (cand - a).norm();
        a = cand;
        J = J_cand;
        report.sigma2_trajectory.push_back(1.0 / (a[0] * a[0]));
        report.gradient_norm =
            gradient_line(a, b, c).lpNorm<Eigen::Infinity>();

        if (step <= config.delta &&
            report.gradient_norm <= config.gradient_tol) {
            report.status = SolveStatus::converged;
            break;
        }
        if (stagnant >= 10)
            throw ConvergenceError(
                "solve_line: objective stagnated; iteration makes no progress");
    }

    LineArmaModel model;
    model.b = b;
    model.a = a / a[0];
    model.sigma2 = sigma_sq_line(model.a, b, c);
    report.moment_residual = line_lags(model, n) - c;

    if (report.status != SolveStatus::converged)
        throw ConvergenceError(
            "solve_line: iteration budget exhausted before convergence");
    return {model, report};
}

}  // namespace crcep
