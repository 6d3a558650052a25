#include "crcep/dft.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

namespace crcep {

namespace {

std::mutex planner_mutex;

void run_fftw(std::vector<cd>& data, int sign) {
    const int M = static_cast<int>(data.size());
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_1d(M, buf, buf, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
}

int mod2N(int k, int twoN) {
    int u = k % twoN;
    return u < 0 ? u + twoN : u;
}

}  // namespace

DiscreteCircle::DiscreteCircle(int half_period) : N_(half_period) {
    if (N_ < 1) throw DimensionError("DiscreteCircle: N must be positive");
}

cd DiscreteCircle::node(int j) const {
    const double theta = M_PI * static_cast<double>(mod2N(j, 2 * N_)) / N_;
    return {std::cos(theta), std::sin(theta)};
}

int DiscreteCircle::pos(int k) const { return mod2N(k + N_ - 1, 2 * N_); }

void fft_forward(std::vector<cd>& data) { run_fftw(data, FFTW_FORWARD); }

void fft_inverse(std::vector<cd>& data) {
    run_fftw(data, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= scale;
}

CVec dft(const CVec& g, const DiscreteCircle& circle) {
    const int twoN = circle.size();
    if (g.size() != twoN)
        throw DimensionError("dft: sequence length must equal 2N");
    // reorder symmetric layout -> FFT order, transform, reorder back
    std::vector<cd> buf(twoN);
    for (int p = 0; p < twoN; ++p) buf[mod2N(circle.index(p), twoN)] = g[p];
    fft_forward(buf);
    CVec spec(twoN);
    for (int p = 0; p < twoN; ++p) spec[p] = buf[mod2N(circle.index(p), twoN)];
    return spec;
}

CVec dft(const Vec& g, const DiscreteCircle& circle) {
    return dft(CVec(g.cast<cd>()), circle);
}

CVec idft(const CVec& spec, const DiscreteCircle& circle) {
    const int twoN = circle.size();
    if (spec.size() != twoN)
        throw DimensionError("idft: spectrum length must equal 2N");
    std::vector<cd> buf(twoN);
    for (int p = 0; p < twoN; ++p) buf[mod2N(circle.index(p), twoN)] = spec[p];
    fft_inverse(buf);
    CVec g(twoN);
    for (int p = 0; p < twoN; ++p) g[p] = buf[mod2N(circle.index(p), twoN)];
    return g;
}

Vec idft_real(const CVec& spec, const DiscreteCircle& circle) {
    return idft(spec, circle).real();
}

std::vector<CMat> dft(const std::vector<Mat>& g, const DiscreteCircle& circle) {
    std::vector<CMat> gc(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) gc[i] = g[i].cast<cd>();
    return dft(gc, circle);
}

std::vector<CMat> dft(const std::vector<CMat>& g, const DiscreteCircle& circle) {
    const int twoN = circle.size();
    if (static_cast<int>(g.size()) != twoN)
        throw DimensionError("dft: block sequence length must equal 2N");
    const int m = static_cast<int>(g[0].rows());
    std::vector<CMat> spec(twoN, CMat::Zero(m, m));
    CVec chan(twoN);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            for (int p = 0; p < twoN; ++p) chan[p] = g[p](r, c);
            CVec out = dft(chan, circle);
            for (int p = 0; p < twoN; ++p) spec[p](r, c) = out[p];
        }
    return spec;
}

std::vector<CMat> idft(const std::vector<CMat>& spec, const DiscreteCircle& circle) {
    const int twoN = circle.size();
    if (static_cast<int>(spec.size()) != twoN)
        throw DimensionError("idft: spectrum length must equal 2N");
    const int m = static_cast<int>(spec[0].rows());
    std::vector<CMat> g(twoN, CMat::Zero(m, m));
    CVec chan(twoN);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            for (int p = 0; p < twoN; ++p) chan[p] = spec[p](r, c);
            CVec out = idft(chan, circle);
            for (int p = 0; p < twoN; ++p) g[p](r, c) = out[p];
        }
    return g;
}

std::vector<Mat> idft_real(const std::vector<CMat>& spec, const DiscreteCircle& circle) {
    std::vector<CMat> g = idft(spec, circle);
    std::vector<Mat> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i].real();
    return out;
}

}  // namespace crcep
