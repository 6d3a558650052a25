#ifndef CRCEP_TOEPLITZ_HPP
#define CRCEP_TOEPLITZ_HPP

#include <vector>

#include "crcep/dft.hpp"

namespace crcep {

/// Symmetric (n+1)x(n+1) Toeplitz matrix of the lags c_0..c_n.
Mat toeplitz_from_lags(const Vec& c);

/// Block-Toeplitz matrix of C_0..C_n with C_{j-i} above the diagonal and
/// transposes below.
Mat block_toeplitz(const std::vector<Mat>& C);

struct PdReport {
    bool positive = false;
    double min_eigenvalue = 0.0;
};

/// Cheap positive-definiteness test (Cholesky attempt).
bool toeplitz_pd(const Vec& c);
bool toeplitz_pd(const std::vector<Mat>& C);

/// PD test with the smallest eigenvalue computed.
PdReport toeplitz_pd_report(const Vec& c);
PdReport toeplitz_pd_report(const std::vector<Mat>& C);

struct LevinsonResult {
    Vec a;              ///< monic Schur polynomial (a_0 = 1)
    double sigma2 = 0;  ///< n-step prediction error variance
    Vec reflection;     ///< reflection coefficients, all in (-1,1) for PD data
};

/// Levinson-Durbin recursion: maximum-entropy AR fit to c_0..c_n.
/// Throws DataError on non-PD data.
LevinsonResult levinson(const Vec& c);

struct WhittleResult {
    std::vector<Mat> A;  ///< A_0 = I, A_1..A_n
    Mat D;               ///< innovation covariance
};

/// Block Yule-Walker initialization: [A_0..A_n] T_n = [D 0..0] with A_0 = I.
WhittleResult levinson_whittle(const std::vector<Mat>& C);

}  // namespace crcep

#endif  // CRCEP_TOEPLITZ_HPP
