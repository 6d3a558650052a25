#ifndef CRCEP_TESTS_HELPERS_HPP
#define CRCEP_TESTS_HELPERS_HPP

#include <complex>
#include <random>
#include <vector>

#include "crcep/dft.hpp"

namespace testutil {

using crcep::cd;
using crcep::Mat;
using crcep::Vec;

// Random Schur polynomial of exact degree n with real coefficients: product
// of real roots and conjugate pairs inside the disk of the given radius.
inline Vec random_schur(std::mt19937_64& rng, int n, double radius = 0.9) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.05, 1.0);
    std::vector<cd> roots;
    int left = n;
    while (left > 0) {
        if (left >= 2 && unif(rng) > 0.0) {
            const double r = pos(rng) * radius;
            const double th = unif(rng) * M_PI;
            roots.emplace_back(r * std::cos(th), r * std::sin(th));
            roots.emplace_back(std::conj(roots.back()));
            left -= 2;
        } else {
            roots.emplace_back(unif(rng) * radius, 0.0);
            left -= 1;
        }
    }
    // a(z) = prod (1 - r_i z^{-1})
    std::vector<cd> coef{cd(1.0, 0.0)};
    for (const cd& r : roots) {
        std::vector<cd> next(coef.size() + 1, cd(0.0, 0.0));
        for (std::size_t i = 0; i < coef.size(); ++i) {
            next[i] += coef[i];
            next[i + 1] -= r * coef[i];
        }
        coef = std::move(next);
    }
    Vec a(n + 1);
    for (int k = 0; k <= n; ++k) a[k] = coef[k].real();
    return a;
}

// Monic (b_0 = 1) random Schur numerator.
inline Vec random_numerator(std::mt19937_64& rng, int n, double radius = 0.7) {
    Vec b = random_schur(rng, n, radius);
    return b / b[0];
}

inline Vec random_vec(std::mt19937_64& rng, int len, double scale = 1.0) {
    std::uniform_real_distribution<double> unif(-scale, scale);
    Vec v(len);
    for (int i = 0; i < len; ++i) v[i] = unif(rng);
    return v;
}

inline Mat random_mat(std::mt19937_64& rng, int rows, int cols,
                      double scale = 1.0) {
    std::uniform_real_distribution<double> unif(-scale, scale);
    Mat M(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) M(i, j) = unif(rng);
    return M;
}

inline Mat random_spd(std::mt19937_64& rng, int m, double scale = 1.0) {
    const Mat G = random_mat(rng, m, m, scale);
    return G * G.transpose() + 0.2 * scale * scale * Mat::Identity(m, m);
}

}  // namespace testutil

#endif  // CRCEP_TESTS_HELPERS_HPP
