// spectral.cpp
#include "memblab/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace memblab {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_pow2(std::vector<cplx>& a, int sign) {
    const size_t n = a.size();
    // bit-reversal permutation
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * two_pi / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

SpectralField forward_transform(const SampledField& u) {
    const int n = u.grid.n_samples;
    SpectralField s;
    s.n = n;
    if (is_power_of_two(n)) {
        std::vector<cplx> a(u.values.begin(), u.values.end());
        fft_pow2(a, -1);
        for (cplx& c : a) c /= static_cast<double>(n);
        s.coeffs = std::move(a);
        return s;
    }
    return forward_transform_direct(u);
}

SpectralField forward_transform_direct(const SampledField& u) {
    const int n = u.grid.n_samples;
    SpectralField s;
    s.n = n;
    s.coeffs.assign(static_cast<size_t>(n), cplx(0.0, 0.0));
    for (int idx = 0; idx < n; ++idx) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const double ph = -two_pi * static_cast<double>(idx) * j / n;
            acc += u.values[static_cast<size_t>(j)] * cplx(std::cos(ph), std::sin(ph));
        }
        s.coeffs[static_cast<size_t>(idx)] = acc / static_cast<double>(n);
    }
    return s;
}

namespace {

std::vector<cplx> inverse_complex(const SpectralField& s) {
    const int n = s.n;
    std::vector<cplx> a = s.coeffs;
    if (is_power_of_two(n)) {
        fft_pow2(a, +1);
        return a;
    }
    std::vector<cplx> out(static_cast<size_t>(n), cplx(0.0, 0.0));
    for (int j = 0; j < n; ++j) {
        cplx acc(0.0, 0.0);
        for (int idx = 0; idx < n; ++idx) {
            const double ph = two_pi * static_cast<double>(idx) * j / n;
            acc += a[static_cast<size_t>(idx)] * cplx(std::cos(ph), std::sin(ph));
        }
        out[static_cast<size_t>(j)] = acc;
    }
    return out;
}

}  // namespace

SampledField inverse_transform(const SpectralField& s) {
    std::vector<cplx> a = inverse_complex(s);
    SampledField u{Grid1D(s.n)};
    for (int j = 0; j < s.n; ++j) u.values[static_cast<size_t>(j)] = a[static_cast<size_t>(j)].real();
    return u;
}

double inverse_transform_imag_residual(const SpectralField& s) {
    std::vector<cplx> a = inverse_complex(s);
    double m = 0.0;
    for (const cplx& c : a) m = std::max(m, std::fabs(c.imag()));
    return m;
}

SpectralField derivative(const SpectralField& s, int order) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("derivative: order must be 1 or 2");
    SpectralField d = s;
    const int n = s.n;
    for (int idx = 0; idx < n; ++idx) {
        const int k = d.freq_of_index(idx);
        const double w = two_pi * k;
        cplx factor = (order == 1) ? cplx(0.0, w) : cplx(-w * w, 0.0);
        d.coeffs[static_cast<size_t>(idx)] *= factor;
    }
    if (order % 2 == 1) d.at_freq(n / 2) = cplx(0.0, 0.0);
    return d;
}

double parseval_sum(const SpectralField& s) {
    double acc = 0.0;
    for (const cplx& c : s.coeffs) acc += std::norm(c);
    return acc;
}

}  // namespace memblab
