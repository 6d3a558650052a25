#ifndef CRCEP_LINE_HPP
#define CRCEP_LINE_HPP

#include <utility>

#include "crcep/periodic.hpp"

namespace crcep {

/// Causal ARMA model a(z) y = b(z) w on the integer line.
struct LineArmaModel {
    Vec a;  ///< Schur, normalized monic by the solver
    Vec b;  ///< Schur, b_0 = 1
    double sigma2 = 1.0;
};

/// First count+1 impulse-response coefficients gamma = T(a)^{-1} b by
/// forward substitution (T(a) lower-triangular Toeplitz of a).
Vec impulse_head(const Vec& a, const Vec& b, int count);

/// (n+1)x(n+1) Hankel matrix of b: (j,k) entry b_{j+k}, zero past degree n.
Mat hankel_b(const Vec& b);

/// sigma^2(a) = (a_0/b_n) sum_k a_k c_{n-k} when b_n is usable; otherwise a
/// least-squares fit of sigma^2 in T_n a = sigma^2 H_b gamma(a).
double sigma_sq_line(const Vec& a, const Vec& b, const Vec& c);

/// Stationary covariance lags 0..count of sigma2 |b|^2/|a|^2 on the full
/// circle, by uniform grid quadrature with the grid doubled until the lags
/// change by less than 1e-10.
Vec line_lags(const Vec& a, const Vec& b, double sigma2, int count);
Vec line_lags(const LineArmaModel& model, int count);

/// J(a) = a^T T_n a - (1/2pi) int |b|^2 log |a|^2 dtheta.
double objective_line(const Vec& a, const Vec& b, const Vec& c);

/// Gradient 2 [T_n - T_n(a)] a with T_n(a) built from the line lags of
/// |b|^2/|a|^2.
Vec gradient_line(const Vec& a, const Vec& b, const Vec& c);

/// One raw update sigma^2(a) T_n^{-1} H_b T(a)^{-1} b.
Vec iterate_line_raw(const Vec& a, const Vec& b, const Vec& c);

/// Raw update projected onto the Schur polynomials via the outer factor of
/// its symmetric square.
Vec iterate_line(const Vec& a, const Vec& b, const Vec& c);

/// Quasi-Newton solver for the line problem.
std::pair<LineArmaModel, SolveReport> solve_line(const Vec& c, const Vec& b,
                                                 const SolverConfig& config = {});

}  // namespace crcep

#endif  // CRCEP_LINE_HPP
