#ifndef CRCEP_CIRCULANT_HPP
#define CRCEP_CIRCULANT_HPP

#include <vector>

#include "crcep/dft.hpp"

namespace crcep {

enum class Band {
    lower,      ///< Circ{M_0, M_1, .., M_n, 0, ..}; symbol sum M_k zeta^{-k}
    upper,      ///< transpose-style band; symbol sum M_k zeta^{+k}
    symmetric,  ///< two-sided band with M_{-k} = M_k^T; blocks store k = 0..n
};

/// A 2mN x 2mN (block-)circulant matrix stored by its n+1 defining m x m
/// blocks.  Never materialized densely outside test oracles; all arithmetic
/// goes through the symbol.
struct BandedCirculant {
    int N = 0;          ///< half-period
    int n = 0;          ///< bandwidth
    int m = 1;          ///< block dimension
    Band orientation = Band::symmetric;
    std::vector<Mat> blocks;  ///< M_0 .. M_n

    BandedCirculant() = default;
    BandedCirculant(int N, Band orientation, std::vector<Mat> blocks);

    /// Scalar convenience: blocks are 1x1.
    static BandedCirculant scalar(int N, Band orientation,
                                  const Vec& coefficients);

    CMat symbol_at(int j) const;  ///< symbol evaluated at node zeta_j
};

/// Symbol at all 2N nodes, symmetric layout.
std::vector<CMat> symbol_of(const BandedCirculant& circ);

/// Rebuild a banded circulant from its symbol; coefficients outside the band
/// must vanish below tol_scale * max|coefficient| or a BandViolationError is
/// thrown reporting the largest leaked magnitude.
BandedCirculant from_symbol(const std::vector<CMat>& spec, int N, int bandwidth,
                            Band orientation, double tol_scale = 1e-9);

/// Apply the circulant to a stacked 2mN-vector in the spectral domain.
Vec circ_apply(const BandedCirculant& circ, const Vec& x);

/// Solve circ * x = rhs node-wise; throws SingularityError naming the node
/// where the symbol is (near-)singular.
Vec circ_solve(const BandedCirculant& circ, const Vec& rhs);

/// Dense 2mN x 2mN assembly.  Test oracle only; O(N^2) storage.
Mat assemble_dense(const BandedCirculant& circ);

}  // namespace crcep

#endif  // CRCEP_CIRCULANT_HPP
