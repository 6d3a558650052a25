#ifndef CRCEP_DFT_HPP
#define CRCEP_DFT_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "crcep/errors.hpp"

namespace crcep {

using cd = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

/// The discrete unit circle T_2N: nodes zeta_j = exp(i j pi / N) for
/// j = -N+1 .. N.  Sequences and spectra over it are stored in the same
/// symmetric layout: position p in a length-2N array holds index
/// k = p - (N-1).  The bijection to FFT order 0..2N-1 is u = k mod 2N.
class DiscreteCircle {
public:
    explicit DiscreteCircle(int half_period);

    int N() const { return N_; }
    int size() const { return 2 * N_; }

    /// zeta_j for any integer j (periodic in j with period 2N).
    cd node(int j) const;

    /// Storage position of index k in the symmetric layout.
    int pos(int k) const;

    /// Index k = -N+1..N stored at position p.
    int index(int p) const { return p - (N_ - 1); }

private:
    int N_;
};

/// DFT on Z_2N: spec(zeta_j) = sum_k g_k zeta_j^{-k}.  Input and output use
/// the symmetric layout of `circle`.
CVec dft(const CVec& g, const DiscreteCircle& circle);
CVec dft(const Vec& g, const DiscreteCircle& circle);

/// Inverse DFT: g_k = (1/2N) sum_j zeta_j^k spec(zeta_j).
CVec idft(const CVec& spec, const DiscreteCircle& circle);

/// Inverse DFT of a Hermitian-symmetric spectrum; checks the imaginary
/// residue and returns the real part.
Vec idft_real(const CVec& spec, const DiscreteCircle& circle);

/// Entry-wise block transforms for sequences of m x m blocks.
std::vector<CMat> dft(const std::vector<Mat>& g, const DiscreteCircle& circle);
std::vector<CMat> dft(const std::vector<CMat>& g, const DiscreteCircle& circle);
std::vector<CMat> idft(const std::vector<CMat>& spec, const DiscreteCircle& circle);
std::vector<Mat> idft_real(const std::vector<CMat>& spec, const DiscreteCircle& circle);

/// Plain length-M FFT used by the factorization and quadrature code:
/// X_u = sum_t x_t exp(-2 pi i u t / M) and its unscaled inverse.
void fft_forward(std::vector<cd>& data);
void fft_inverse(std::vector<cd>& data);  // includes the 1/M scale

}  // namespace crcep

#endif  // CRCEP_DFT_HPP
