#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sumprod/setstats.hpp"

namespace sumprod {

using BigRat = boost::multiprecision::cpp_rational;

// Which composite image a report is about.
enum class Mode { ba_plus_c, b_a_plus_c };
const char* mode_name(Mode m);  // "BA+C" or "B(A+C)"

// Holder step: |L|^3 |A|^3 <= E_3 * |image|^2, in exact integers with
// denominators cleared.
struct HolderCheck {
    BigInt lhs, rhs;
    bool pass;
};
HolderCheck holder_check(std::uint64_t lines, std::uint64_t a_size, const BigInt& e3,
                         std::uint64_t image_size);
HolderCheck holder_check(const Field& field, const LineFamily& lines, const SubsetFq& a);

// Third-moment step: for nonnegative f on a finite domain and n >= 2,
//   sum f^n <= |X| mu^n + n(n-1)/2 * M^{n-2} * sum (f - mu)^2
// with mu the mean and M the max, in exact rationals. Equality at n = 2.
struct ThirdMomentCheck {
    BigRat lhs, rhs;
    bool pass;
};
ThirdMomentCheck third_moment_check(const std::vector<BigRat>& values, unsigned n);
ThirdMomentCheck third_moment_check(const std::vector<std::uint64_t>& values, unsigned n);

// sum over nonzero frequencies of |nu_hat|^2, nu the representation count of
// the family over a.
double spectral_tail(const Field& field, const LineFamily& lines, const SubsetFq& a);

// Tail step: sum_{xi != 0} |nu_hat(xi)|^2 <= |A||B||C|, within tolerance.
// The set form builds the (b, c) line family itself; the family form accepts
// any product-structured family and rejects the rest, since the proof leans
// on the B x C factorization.
struct TailCheck {
    double tail_sum, bound;
    bool pass;
};
TailCheck fourier_tail_check(const Field& field, const SubsetFq& a, const SubsetFq& b,
                             const SubsetFq& c, double tolerance = 1e-9);
TailCheck fourier_tail_check(const Field& field, const LineFamily& lines, const SubsetFq& a,
                             double tolerance = 1e-9);

// Energy step: E_3 <= |L|^3 |A|^3 / q^2 + 3 |L|^2 |A| q, compared in exact
// rationals. Product-structured families only.
struct EnergyUpperCheck {
    BigInt e3;
    BigRat rhs;
    bool pass;
};
EnergyUpperCheck energy_upper_check(const Field& field, const LineFamily& lines, const SubsetFq& a);

// What the chain guarantees for the image size once the Holder and energy
// steps hold: sqrt(L^3 A^3 / (L^3 A^3 / q^2 + 3 L^2 A q)).
double exact_lower_bound(std::uint64_t q, std::uint64_t lines, std::uint64_t a_size);
// The comparison |image| >= exact_lower_bound without any rounding:
// image^2 * (L^3 A^3 + 3 L^2 A q^3) >= L^3 A^3 q^2.
bool image_bound_holds(std::uint64_t q, std::uint64_t lines, std::uint64_t a_size,
                       std::uint64_t image_size);

// min{q, sqrt(|B||C|) |A| / sqrt(q)}, the growth rate the guarantee tracks.
double asymptotic_bound(std::uint64_t q, std::uint64_t b_size, std::uint64_t c_size,
                        std::uint64_t a_size);

// Attained size of the composite set for the mode, divided by
// asymptotic_bound. Diagnostic only; no constant is asserted.
double asymptotic_ratio(const Field& field, const SubsetFq& a, const SubsetFq& b,
                        const SubsetFq& c, Mode mode);

// Deterministic decimal rendering used everywhere a double reaches a report:
// %.10g, with ".0" restored on integral values.
std::string format_double(double v);

// One verified instance: sizes, the exact numbers on both sides of every
// step, each verdict, and the bound comparison.
struct BoundReport {
    std::string field_text;
    std::uint64_t q = 0, p = 0;
    std::uint32_t l = 0;
    std::string family;
    Mode mode = Mode::ba_plus_c;
    std::uint64_t size_a = 0, size_b = 0, size_c = 0;
    std::uint64_t size_l = 0;        // nominal |B| * |C|
    std::uint64_t size_l_chain = 0;  // rows actually run, zero slope dropped
    std::uint64_t size_image = 0;
    BigInt e3 = 0;
    BigInt lemma1_lhs = 0, lemma1_rhs = 0;
    BigRat lemma2_lhs = 0, lemma2_rhs = 0;
    double tail_sum = 0.0, tail_bound = 0.0;
    BigRat energy_upper_rhs = 0;
    double exact_bound = 0.0, asymptotic = 0.0, ratio = 0.0;
    bool all_slopes_nonzero = false;
    bool lemma1_pass = false, lemma2_pass = false, tail_pass = false, energy_upper_pass = false;
    bool image_at_least_exact = false;
    bool checks_passed = false;  // all of the above on a non-degenerate instance
    std::uint64_t seed = 0;
    std::string status = "ok";

    static std::string csv_header();
    std::string csv_row() const;
    nlohmann::ordered_json to_json() const;
};

// Runs the whole chain on one (B, A, C) triple: builds the line family for
// the mode (dropping a zero slope from B if present and noting that in the
// status), images it over A, cross-checks against the element-wise
// composite, and evaluates every step. A slope set that is exactly {0}
// yields a degenerate report with the checks marked failed.
BoundReport verify_instance(const Field& field, const SubsetFq& b, const SubsetFq& a,
                            const SubsetFq& c, Mode mode, const std::string& family,
                            std::uint64_t seed);

}  // namespace sumprod
