#include <vector>

#include <doctest.h>

#include "sumprod/field.hpp"
#include "sumprod/rng.hpp"
#include "sumprod/spectral.hpp"

using namespace sumprod;

namespace {

std::vector<std::complex<double>> random_signal(const Field& f, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::complex<double>> v(f.q());
    for (auto& z : v) z = {rng.signed_unit(), rng.signed_unit()};
    return v;
}

const std::pair<std::uint64_t, std::uint32_t> kFields[] = {
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}, {13, 1},
};

}  // namespace

TEST_CASE("character sums vanish off zero and count the field at zero") {
    for (const auto& [p, l] : kFields) {
        const Field f(p, l);
        for (Elem m = 0; m < f.q(); ++m) {
            const auto s = orthogonality_sum(f, m);
            if (m == 0) {
                CHECK(std::abs(s - std::complex<double>(double(f.q()), 0.0)) < 1e-9);
            } else {
                CHECK(std::abs(s) < 1e-9);
            }
        }
    }
}

TEST_CASE("the two transform implementations agree on random signals") {
    for (const auto& [p, l] : kFields) {
        const Field f(p, l);
        CAPTURE(f.to_string());
        for (int rep = 0; rep < 4; ++rep) {
            const auto v = random_signal(f, derive_seed(0xabcdef, p * 1000 + l * 10 + rep));
            const auto slow = fourier_forward(f, v);
            const auto fast = fourier_fast(f, v);
            CHECK(max_abs_diff(slow, fast) < 1e-9);
            CHECK(plancherel_defect(f, v, fast) < 1e-9);
        }
    }
}

TEST_CASE("point masses transform to flat spectra and constants to point masses") {
    const Field f(3, 2);
    const double inv_q = 1.0 / double(f.q());

    std::vector<std::complex<double>> delta(f.q(), 0.0);
    delta[4] = 1.0;
    const auto dhat = fourier_fast(f, delta);
    for (Elem m = 0; m < f.q(); ++m) CHECK(std::abs(std::abs(dhat[m]) - inv_q) < 1e-12);
    CHECK(std::abs(dhat[0] - std::complex<double>(inv_q, 0.0)) < 1e-12);

    const std::vector<std::complex<double>> ones(f.q(), 1.0);
    const auto ohat = fourier_fast(f, ones);
    CHECK(std::abs(ohat[0] - std::complex<double>(1.0, 0.0)) < 1e-12);
    for (Elem m = 1; m < f.q(); ++m) CHECK(std::abs(ohat[m]) < 1e-12);
}

TEST_CASE("the prime subfield indicator has an exactly supported spectrum") {
    // H = F_3 inside F_9: coefficients vanish off the trace-zero line, where they equal 1/3.
    const Field f(3, 2);
    std::vector<std::complex<double>> h(f.q(), 0.0);
    h[0] = h[1] = h[2] = 1.0;
    const auto hhat = fourier_fast(f, h);
    for (Elem m = 0; m < f.q(); ++m) {
        const bool trace_zero = f.trace(m) == 0;
        CHECK(trace_zero == (m == 0 || m == 3 || m == 6));
        const std::complex<double> want = trace_zero ? std::complex<double>(1.0 / 3.0, 0.0) : 0.0;
        CHECK(std::abs(hhat[m] - want) < 1e-12);
    }
}

TEST_CASE("translation modulates the spectrum by a character") {
    const Field f(5, 2);
    const auto v = random_signal(f, 0x715);
    const auto vhat = fourier_fast(f, v);
    const Elem s = 7;
    std::vector<std::complex<double>> shifted(f.q());
    for (Elem x = 0; x < f.q(); ++x) shifted[x] = v[f.sub(x, s)];
    const auto shat = fourier_fast(f, shifted);
    for (Elem m = 0; m < f.q(); ++m) {
        const auto want = std::conj(f.chi(f.mul(s, m))) * vhat[m];
        CHECK(std::abs(shat[m] - want) < 1e-9);
    }
}

TEST_CASE("transforms reject signals of the wrong length") {
    const Field f(5, 1);
    const std::vector<std::complex<double>> bad(4, 0.0);
    CHECK_THROWS_AS(fourier_forward(f, bad), Error);
    CHECK_THROWS_AS(fourier_fast(f, bad), Error);
    const std::vector<std::complex<double>> good(5, 0.0);
    CHECK_THROWS_AS(plancherel_defect(f, bad, good), Error);
    CHECK_THROWS_AS(max_abs_diff(bad, good), Error);
    try {
        fourier_fast(f, bad);
        FAIL("expected a length error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::length_mismatch);
    }
}
