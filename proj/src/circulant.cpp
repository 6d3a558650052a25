#include "crcep/circulant.hpp"

#include <algorithm>
#include <cmath>

namespace crcep {

BandedCirculant::BandedCirculant(int N_, Band orient, std::vector<Mat> blks)
    : N(N_), orientation(orient), blocks(std::move(blks)) {
    if (blocks.empty()) throw DimensionError("BandedCirculant: no blocks");
    n = static_cast<int>(blocks.size()) - 1;
    m = static_cast<int>(blocks[0].rows());
    if (n >= 2 * N) throw DimensionError("BandedCirculant: bandwidth >= 2N");
    for (const Mat& b : blocks)
        if (b.rows() != m || b.cols() != m)
            throw DimensionError("BandedCirculant: inconsistent block sizes");
}

BandedCirculant BandedCirculant::scalar(int N, Band orientation,
                                        const Vec& coefficients) {
    std::vector<Mat> blocks(coefficients.size());
    for (int k = 0; k < coefficients.size(); ++k) {
        blocks[k] = Mat::Constant(1, 1, coefficients[k]);
    }
    return {N, orientation, std::move(blocks)};
}

CMat BandedCirculant::symbol_at(int j) const {
    const DiscreteCircle circle(N);
    CMat s = blocks[0].cast<cd>();
    for (int k = 1; k <= n; ++k) {
        const cd zk = circle.node(-j * k);  // zeta_j^{-k}
        switch (orientation) {
            case Band::lower:
                s += blocks[k] * zk;
                break;
            case Band::upper:
                s += blocks[k] * std::conj(zk);
                break;
            case Band::symmetric:
                s += blocks[k] * zk + blocks[k].transpose() * std::conj(zk);
                break;
        }
    }
    return s;
}

std::vector<CMat> symbol_of(const BandedCirculant& circ) {
    const DiscreteCircle circle(circ.N);
    std::vector<CMat> spec(circle.size());
    for (int p = 0; p < circle.size(); ++p)
        spec[p] = circ.symbol_at(circle.index(p));
    return spec;
}

BandedCirculant from_symbol(const std::vector<CMat>& spec, int N, int bandwidth,
                            Band orientation, double tol_scale) {
    const DiscreteCircle circle(N);
    std::vector<Mat> g = idft_real(spec, circle);

    auto coeff = [&](int k) -> const Mat& { return g[circle.pos(k)]; };
    const int n = bandwidth;

    std::vector<Mat> blocks(n + 1);
    double max_mag = 0.0;
    for (int k = 0; k <= n; ++k) {
        switch (orientation) {
            case Band::lower:
            case Band::symmetric:
                blocks[k] = coeff(k);
                break;
            case Band::upper:
                blocks[k] = coeff(-k);
                break;
        }
        max_mag = std::max(max_mag, blocks[k].cwiseAbs().maxCoeff());
    }

    // every index outside the declared band must be numerically zero
    double leaked = 0.0;
    for (int p = 0; p < circle.size(); ++p) {
        const int k = circle.index(p);
        bool in_band = false;
        switch (orientation) {
            case Band::lower: in_band = (k >= 0 && k <= n); break;
            case Band::upper: in_band = (k <= 0 && k >= -n); break;
            case Band::symmetric: in_band = (std::abs(k) <= n); break;
        }
        if (!in_band) leaked = std::max(leaked, g[p].cwiseAbs().maxCoeff());
    }
    if (leaked > tol_scale * std::max(max_mag, 1e-300))
        throw BandViolationError(
            "from_symbol: coefficients leak outside bandwidth " +
                std::to_string(n) + " (max leaked magnitude " +
                std::to_string(leaked) + ")",
            leaked);
    return {N, orientation, std::move(blocks)};
}

namespace {

std::vector<CMat> vector_to_blockseq(const Vec& x, int N, int m) {
    if (x.size() != 2 * N * m)
        throw DimensionError("circulant: vector length must equal 2mN");
    std::vector<CMat> seq(2 * N, CMat::Zero(m, 1));
    for (int p = 0; p < 2 * N; ++p)
        seq[p] = x.segment(p * m, m).cast<cd>();
    return seq;
}

Vec blockseq_to_vector(const std::vector<CMat>& seq, int N, int m) {
    Vec x(2 * N * m);
    for (int p = 0; p < 2 * N; ++p)
        x.segment(p * m, m) = seq[p].real();
    return x;
}

// channel-wise DFT of a sequence of m-vectors
std::vector<CMat> vecseq_dft(const std::vector<CMat>& seq,
                             const DiscreteCircle& circle, bool inverse) {
    const int m = static_cast<int>(seq[0].rows());
    std::vector<CMat> out(circle.size(), CMat::Zero(m, 1));
    CVec chan(circle.size());
    for (int r = 0; r < m; ++r) {
        for (int p = 0; p < circle.size(); ++p) chan[p] = seq[p](r, 0);
        CVec t = inverse ? idft(chan, circle) : dft(chan, circle);
        for (int p = 0; p < circle.size(); ++p) out[p](r, 0) = t[p];
    }
    return out;
}

}  // namespace

Vec circ_apply(const BandedCirculant& circ, const Vec& x) {
    const DiscreteCircle circle(circ.N);
    auto seq = vector_to_blockseq(x, circ.N, circ.m);
    auto xhat = vecseq_dft(seq, circle, false);
    for (int p = 0; p < circle.size(); ++p)
        xhat[p] = circ.symbol_at(circle.index(p)) * xhat[p];
    return blockseq_to_vector(vecseq_dft(xhat, circle, true), circ.N, circ.m);
}

Vec circ_solve(const BandedCirculant& circ, const Vec& rhs) {
    const DiscreteCircle circle(circ.N);
    auto seq = vector_to_blockseq(rhs, circ.N, circ.m);
    auto rhat = vecseq_dft(seq, circle, false);

    // scale against which singularity is judged
    double max_sym = 0.0;
    std::vector<CMat> symbols(circle.size());
    for (int p = 0; p < circle.size(); ++p) {
        symbols[p] = circ.symbol_at(circle.index(p));
        max_sym = std::max(max_sym, symbols[p].cwiseAbs().maxCoeff());
    }
    for (int p = 0; p < circle.size(); ++p) {
        Eigen::JacobiSVD<CMat> svd(symbols[p],
                                   Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.singularValues().minCoeff() <= 1e-12 * std::max(max_sym, 1.0))
            throw SingularityError(
                "circ_solve: symbol singular at node j=" +
                    std::to_string(circle.index(p)),
                circle.index(p));
        rhat[p] = svd.solve(rhat[p]);
    }
    return blockseq_to_vector(vecseq_dft(rhat, circle, true), circ.N, circ.m);
}

Mat assemble_dense(const BandedCirculant& circ) {
    const int twoN = 2 * circ.N;
    const int m = circ.m;
    Mat dense = Mat::Zero(twoN * m, twoN * m);
    auto add = [&](int i, int j, const Mat& block) {
        dense.block(i * m, j * m, m, m) += block;
    };
    for (int i = 0; i < twoN; ++i)
        for (int j = 0; j < twoN; ++j) {
            const int down = ((i - j) % twoN + twoN) % twoN;  // sub-diagonal lag
            const int up = (twoN - down) % twoN;
            switch (circ.orientation) {
                case Band::lower:
                    if (down <= circ.n) add(i, j, circ.blocks[down]);
                    break;
                case Band::upper:
                    if (up <= circ.n && (up > 0 || down == 0))
                        add(i, j, circ.blocks[up]);
                    break;
                case Band::symmetric:
                    if (down <= circ.n && down > 0) add(i, j, circ.blocks[down]);
                    if (up <= circ.n && up > 0)
                        add(i, j, circ.blocks[up].transpose());
                    if (down == 0) add(i, j, circ.blocks[0]);
                    break;
            }
        }
    return dense;
}

}  // namespace crcep
