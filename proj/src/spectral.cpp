#include "sumprod/spectral.hpp"

#include <cmath>

namespace sumprod {
namespace {

void require_length(const Field& field, const DensityFn& f, const char* what) {
    if (f.size() != field.q()) {
        throw Error(Errc::length_mismatch,
                    std::string(what) + " has length " + std::to_string(f.size()) +
                        ", field has q = " + std::to_string(field.q()));
    }
}

}  // namespace

Spectrum fourier_forward(const Field& field, const DensityFn& f) {
    require_length(field, f, "density");
    const std::uint64_t q = field.q();
    Spectrum out(q);
    std::vector<std::uint32_t> tr;
    const double inv_q = 1.0 / double(q);
    for (Elem m = 0; m < q; ++m) {
        field.trace_mul_table(m, tr);
        std::complex<double> acc = 0.0;
        for (Elem x = 0; x < q; ++x) {
            // chi(-x*m) = conj(chi(x*m)) since |chi| = 1
            acc += std::conj(field.chi_root(tr[x])) * f[x];
        }
        out[m] = acc * inv_q;
    }
    return out;
}

Spectrum fourier_fast(const Field& field, const DensityFn& f) {
    require_length(field, f, "density");
    const std::uint64_t q = field.q();
    const std::uint64_t p = field.p();
    const std::uint32_t l = field.l();

    // Kernel row omega^{-r}, r in [0, p).
    std::vector<std::complex<double>> kern(p);
    for (std::uint64_t r = 0; r < p; ++r) kern[r] = std::conj(field.chi_root(std::uint32_t(r)));

    // Per-axis length-p DFT over the digit grid. Element indices already are
    // the row-major digit grid, so axis i has stride p^i.
    DensityFn work = f;
    std::vector<std::complex<double>> line(p), dft(p);
    std::uint64_t stride = 1;
    for (std::uint32_t axis = 0; axis < l; ++axis) {
        const std::uint64_t block = stride * p;
        for (std::uint64_t base = 0; base < q; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                std::complex<double>* slot = work.data() + base + off;
                for (std::uint64_t j = 0; j < p; ++j) line[j] = slot[j * stride];
                for (std::uint64_t k = 0; k < p; ++k) {
                    std::complex<double> acc = 0.0;
                    std::uint64_t jk = 0;
                    for (std::uint64_t j = 0; j < p; ++j) {
                        acc += kern[jk] * line[j];
                        jk += k;
                        if (jk >= p) jk -= p;
                    }
                    dft[k] = acc;
                }
                for (std::uint64_t k = 0; k < p; ++k) slot[k * stride] = dft[k];
            }
        }
        stride = block;
    }
    // work[d] now holds sum_x f(x) omega^{-<digits(x), d>}; evaluating the
    // character transform at m means reading off d = G * digits(m).
    std::vector<std::vector<std::uint32_t>> gram(l, std::vector<std::uint32_t>(l));
    for (std::uint32_t i = 0; i < l; ++i) {
        for (std::uint32_t j = i; j < l; ++j) {
            gram[i][j] = gram[j][i] = field.trace(field.pow(l == 1 ? 1 : Elem(p), i + j));
        }
    }
    Spectrum out(q);
    const double inv_q = 1.0 / double(q);
    std::vector<std::uint32_t> md(l);
    for (Elem m = 0; m < q; ++m) {
        for (std::uint32_t i = 0; i < l; ++i) md[i] = field.digit(m, i);
        std::uint64_t idx = 0;
        std::uint64_t scale = 1;
        for (std::uint32_t i = 0; i < l; ++i) {
            std::uint64_t e = 0;
            for (std::uint32_t j = 0; j < l; ++j) e += std::uint64_t(gram[i][j]) * md[j];
            idx += (e % p) * scale;
            scale *= p;
        }
        out[m] = work[idx] * inv_q;
    }
    return out;
}

std::complex<double> orthogonality_sum(const Field& field, Elem s) {
    std::vector<std::uint32_t> tr;
    field.trace_mul_table(s, tr);
    std::complex<double> acc = 0.0;
    for (Elem x = 0; x < field.q(); ++x) acc += field.chi_root(tr[x]);
    return acc;
}

double plancherel_defect(const Field& field, const DensityFn& f, const Spectrum& fhat) {
    require_length(field, f, "density");
    require_length(field, fhat, "spectrum");
    double lhs = 0.0, rhs = 0.0;
    for (const auto& v : fhat) lhs += std::norm(v);
    for (const auto& v : f) rhs += std::norm(v);
    return std::abs(lhs - rhs / double(field.q()));
}

double max_abs_diff(const Spectrum& a, const Spectrum& b) {
    if (a.size() != b.size()) {
        throw Error(Errc::length_mismatch, "spectra of different lengths");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace sumprod
