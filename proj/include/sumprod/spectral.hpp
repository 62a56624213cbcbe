#pragma once

#include <complex>
#include <vector>

#include "sumprod/field.hpp"

namespace sumprod {

// A complex-valued function on F_q, stored densely by element index.
using DensityFn = std::vector<std::complex<double>>;
using Spectrum = DensityFn;

// fhat(m) = q^{-1} sum_x chi(-x*m) f(x), evaluated literally per output
// element. O(q^2); the reference the fast transform is checked against.
Spectrum fourier_forward(const Field& field, const DensityFn& f);

// Same transform in O(q l p): an l-dimensional length-p DFT over the digit
// grid, then index remapping by the Gram matrix of the trace form,
// G_{ij} = Tr(t^{i+j}), since Tr(x*m) = digits(x)^T G digits(m).
Spectrum fourier_fast(const Field& field, const DensityFn& f);

// sum_x chi(x*s); equals q when s = 0 and vanishes otherwise.
std::complex<double> orthogonality_sum(const Field& field, Elem s);

// | sum_m |fhat(m)|^2 - q^{-1} sum_x |f(x)|^2 |
double plancherel_defect(const Field& field, const DensityFn& f, const Spectrum& fhat);

// max_m |a(m) - b(m)|
double max_abs_diff(const Spectrum& a, const Spectrum& b);

}  // namespace sumprod
