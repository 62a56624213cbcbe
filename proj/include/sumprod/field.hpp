#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sumprod/error.hpp"

namespace sumprod {

// Elements of F_{p^l} are dense integer indices in [0, q): the coefficient
// vector (c_0, ..., c_{l-1}) of the residue class encodes as sum c_i * p^i.
// Index 0 is the additive identity and index 1 the multiplicative identity.
using Elem = std::uint64_t;

// q = p^l is capped so that length-q tables and the quadratic-cost reference
// transform stay feasible. SUMPROD_CAP in the environment overrides it.
std::uint64_t field_cap();

bool is_prime_u64(std::uint64_t n);

// The field F_q = F_p[t]/(modulus), q = p^l. Construction picks the monic
// irreducible modulus of smallest element encoding (coefficients read as the
// integer sum c_i p^i including the leading 1), so a given (p, l) names the
// same field on every run. Immutable after construction; every member
// function is a pure function of its arguments.
class Field {
public:
    Field(std::uint64_t p, std::uint32_t l);

    // Text form "p^l" for prime fields, "p^l/modulus-encoding" otherwise,
    // e.g. "3^2/10" for F_9 = F_3[t]/(t^2+1).
    static Field parse(std::string_view text);
    std::string to_string() const;

    std::uint64_t p() const { return p_; }
    std::uint32_t l() const { return l_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    std::uint64_t modulus_encoding() const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;  // throws DivisionByZero on a == 0
    Elem pow(Elem a, std::uint64_t e) const;

    // Tr(a) = a + a^p + ... + a^{p^{l-1}}, an element of the prime subfield,
    // reported as an integer in [0, p).
    std::uint32_t trace(Elem a) const { check(a); return trace_tab_[a]; }

    // Canonical additive character chi(a) = exp(2*pi*i*Tr(a)/p). For l = 1
    // this is exp(2*pi*i*a/q).
    std::complex<double> chi(Elem a) const { return chi_root(trace(a)); }
    std::complex<double> chi_root(std::uint32_t r) const;

    // Fills out[x] = Tr(x*m) for every x, in O(q) after l multiplications.
    // Tr(x*m) is F_p-linear in x, so the table is a digit-wise block fill
    // from the values Tr(t^j * m). Backbone of the quadratic-cost transform.
    void trace_mul_table(Elem m, std::vector<std::uint32_t>& out) const;

    std::uint32_t digit(Elem a, std::uint32_t i) const {
        return std::uint32_t((a / pow_p_[i]) % p_);
    }

private:
    void check(Elem a) const;
    std::uint32_t trace_direct(Elem a) const;

    std::uint64_t p_;
    std::uint32_t l_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;          // l+1 coefficients, monic
    std::vector<std::uint64_t> pow_p_;            // p^0 .. p^l
    std::vector<std::uint32_t> trace_tab_;        // Tr(x) for every index
    std::vector<std::complex<double>> chi_roots_; // exp(2*pi*i*r/p); empty for huge p
};

inline Field make_field(std::uint64_t p, std::uint32_t l) { return Field(p, l); }

}  // namespace sumprod
