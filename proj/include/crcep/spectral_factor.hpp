#ifndef CRCEP_SPECTRAL_FACTOR_HPP
#define CRCEP_SPECTRAL_FACTOR_HPP

#include <vector>

#include "crcep/dft.hpp"

namespace crcep {

// Scalar pseudo-polynomials p(zeta) = sum_{k=-n}^{n} p_k zeta^{-k} with
// p_{-k} = p_k are stored as the one-sided coefficient vector (p_0 .. p_n).
// Matrix pseudo-polynomials store P_0 .. P_n with P_{-k} = P_k^T implied.

struct PositivityReport {
    bool positive = false;
    double min_value = 0.0;  ///< min over nodes (matrix case: min eigenvalue)
    int argmin_node = 0;     ///< node index j attaining the minimum
};

/// Evaluate p at zeta_j.
double pseudo_eval(const Vec& p, cd zeta);
CMat pseudo_eval(const std::vector<Mat>& P, cd zeta);

/// Strict positivity on the discrete circle T_2N.
PositivityReport is_positive_discrete(const Vec& p, int N,
                                      double tolerance = 1e-10);
PositivityReport is_positive_discrete(const std::vector<Mat>& P, int N,
                                      double tolerance = 1e-10);

/// Strict positivity on the whole unit circle: dense grid sampling plus the
/// requirement that no root of z^n p(z) lies within 1e-6 of |z| = 1.
bool is_positive_circle(const Vec& p);

/// Roots of the polynomial c_0 + c_1 z + ... + c_d z^d via the companion
/// matrix.  Leading zero coefficients are trimmed.
std::vector<cd> poly_roots(const Vec& coeffs);

/// True iff all roots of z^n a(z) lie strictly inside the unit disk.
bool is_schur(const Vec& a, double margin = 0.0);
bool is_schur_matrix(const std::vector<Mat>& A, double margin = 0.0);

/// Outer (Schur) factor of a positive scalar pseudo-polynomial:
/// p(z) = a(z) a(z^{-1}) with a Schur and a_0 > 0.  Throws
/// FactorizationError / InfeasibleAtNError on positivity failure.
Vec schur_factor(const Vec& p);

/// q_k = sum_j a_j a_{j+k}: the symmetric square of a; roundtrip oracle for
/// schur_factor.
Vec coefficient_match_check(const Vec& a);

/// Matrix symmetric squares.
/// left:  Q_d = sum_k A_{k+d} A_k^T  (Q(z) = A(z) A(z^{-1})^T)
/// right: Q_d = sum_k A_k^T A_{k+d}  (Q(z) = A(z^{-1})^T A(z))
std::vector<Mat> coefficient_match_left(const std::vector<Mat>& A);
std::vector<Mat> coefficient_match_right(const std::vector<Mat>& A);

/// Outer factor with Q(z) = A(z) A(z^{-1})^T, A Schur, A_0 lower-triangular
/// with positive diagonal.  Bauer iteration on a block-Toeplitz embedding
/// refined by a Wilson fixed-point sweep on a fine grid.
std::vector<Mat> matrix_schur_factor_left(const std::vector<Mat>& Q);

/// Outer factor with Q(z) = A(z^{-1})^T A(z), same normalization of A_0.
/// This is the convention used by the vector covariance-extension solver.
std::vector<Mat> matrix_schur_factor(const std::vector<Mat>& Q);

}  // namespace crcep

#endif  // CRCEP_SPECTRAL_FACTOR_HPP
