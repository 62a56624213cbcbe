#include "sumprod/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sumprod {
namespace {

BigRat rat_pow(const BigRat& x, unsigned n) {
    BigRat r = 1;
    for (unsigned i = 0; i < n; ++i) r *= x;
    return r;
}

BigInt cube(const BigInt& x) { return x * x * x; }

void require_nonempty(const LineFamily& lines, const SubsetFq& a) {
    if (lines.empty()) throw Error(Errc::empty_input, "empty line family");
    if (a.empty()) throw Error(Errc::empty_input, "empty evaluation set");
}

// Shared core: E_3 <= L^3 A^3 / q^2 + 3 L^2 A q in exact rationals.
EnergyUpperCheck energy_upper_core(BigInt e3, std::uint64_t lines, std::uint64_t a_size,
                                   std::uint64_t q) {
    const BigInt lq = lines, aq = a_size, qq = q;
    BigRat rhs = BigRat(cube(lq) * cube(aq), qq * qq) + BigRat(3) * lq * lq * aq * qq;
    const bool pass = BigRat(e3) <= rhs;
    return {std::move(e3), std::move(rhs), pass};
}

}  // namespace

const char* mode_name(Mode m) { return m == Mode::ba_plus_c ? "BA+C" : "B(A+C)"; }

HolderCheck holder_check(std::uint64_t lines, std::uint64_t a_size, const BigInt& e3,
                         std::uint64_t image_size) {
    if (lines == 0 || a_size == 0) throw Error(Errc::empty_input, "empty line family or evaluation set");
    BigInt lhs = cube(BigInt(lines)) * cube(BigInt(a_size));
    BigInt rhs = e3 * BigInt(image_size) * BigInt(image_size);
    const bool pass = lhs <= rhs;
    return {std::move(lhs), std::move(rhs), pass};
}

HolderCheck holder_check(const Field& field, const LineFamily& lines, const SubsetFq& a) {
    require_nonempty(lines, a);
    return holder_check(lines.size(), a.size(), energy3(field, lines, a),
                        image_set(field, lines, a).size());
}

ThirdMomentCheck third_moment_check(const std::vector<BigRat>& values, unsigned n) {
    if (values.empty()) throw Error(Errc::empty_domain, "third moment over an empty domain");
    if (n < 2) throw Error(Errc::invalid_argument, "moment exponent must be >= 2");
    BigRat sum = 0;
    BigRat max = 0;
    for (const BigRat& v : values) {
        if (v < 0) throw Error(Errc::negative_value, "third moment needs nonnegative values");
        sum += v;
        if (v > max) max = v;
    }
    const BigRat mean = sum / BigRat(values.size());
    BigRat lhs = 0;
    BigRat variance = 0;
    for (const BigRat& v : values) {
        lhs += rat_pow(v, n);
        variance += rat_pow(v - mean, 2);
    }
    BigRat rhs = BigRat(values.size()) * rat_pow(mean, n) +
                 BigRat(n * (n - 1), 2) * (n == 2 ? BigRat(1) : rat_pow(max, n - 2)) * variance;
    const bool pass = lhs <= rhs;
    return {std::move(lhs), std::move(rhs), pass};
}

ThirdMomentCheck third_moment_check(const std::vector<std::uint64_t>& values, unsigned n) {
    std::vector<BigRat> rs(values.begin(), values.end());
    return third_moment_check(rs, n);
}

double spectral_tail(const Field& field, const LineFamily& lines, const SubsetFq& a) {
    const auto r = rep_function(field, lines, a);
    DensityFn nu(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) nu[i] = double(r[i]);
    const Spectrum hat = fourier_fast(field, nu);
    double tail = 0.0;
    for (std::size_t m = 1; m < hat.size(); ++m) tail += std::norm(hat[m]);
    return tail;
}

TailCheck fourier_tail_check(const Field& field, const LineFamily& lines, const SubsetFq& a,
                             double tolerance) {
    require_nonempty(lines, a);
    if (!lines.product_structured()) {
        throw Error(Errc::non_product_family, "spectral tail bound is only proved for B x C families");
    }
    const double tail = spectral_tail(field, lines, a);
    const double bound = double(lines.size()) * double(a.size());
    return {tail, bound, tail <= bound + tolerance};
}

TailCheck fourier_tail_check(const Field& field, const SubsetFq& a, const SubsetFq& b,
                             const SubsetFq& c, double tolerance) {
    if (a.empty() || b.empty() || c.empty()) {
        throw Error(Errc::empty_input, "tail check needs nonempty A, B, C");
    }
    return fourier_tail_check(field, LineFamily::from_bc(field, b, c), a, tolerance);
}

EnergyUpperCheck energy_upper_check(const Field& field, const LineFamily& lines, const SubsetFq& a) {
    require_nonempty(lines, a);
    if (!lines.product_structured()) {
        throw Error(Errc::non_product_family, "energy bound is only proved for B x C families");
    }
    return energy_upper_core(energy3(field, lines, a), lines.size(), a.size(), field.q());
}

double exact_lower_bound(std::uint64_t q, std::uint64_t lines, std::uint64_t a_size) {
    if (lines == 0 || a_size == 0) throw Error(Errc::zero_size, "bound needs |L| >= 1 and |A| >= 1");
    const BigInt l3a3 = cube(BigInt(lines)) * cube(BigInt(a_size));
    const BigInt q3 = cube(BigInt(q));
    const BigRat val(l3a3 * BigInt(q) * BigInt(q), l3a3 + BigInt(3) * BigInt(lines) * BigInt(lines) * BigInt(a_size) * q3);
    return std::sqrt(val.convert_to<double>());
}

bool image_bound_holds(std::uint64_t q, std::uint64_t lines, std::uint64_t a_size,
                       std::uint64_t image_size) {
    if (lines == 0 || a_size == 0) throw Error(Errc::zero_size, "bound needs |L| >= 1 and |A| >= 1");
    const BigInt l3a3 = cube(BigInt(lines)) * cube(BigInt(a_size));
    const BigInt q3 = cube(BigInt(q));
    const BigInt img = image_size;
    return img * img * (l3a3 + BigInt(3) * BigInt(lines) * BigInt(lines) * BigInt(a_size) * q3) >=
           l3a3 * BigInt(q) * BigInt(q);
}

double asymptotic_bound(std::uint64_t q, std::uint64_t b_size, std::uint64_t c_size,
                        std::uint64_t a_size) {
    if (b_size == 0 || c_size == 0 || a_size == 0) {
        throw Error(Errc::empty_input, "bound needs nonempty A, B, C");
    }
    const double alt = std::sqrt(double(b_size) * double(c_size)) * double(a_size) / std::sqrt(double(q));
    return std::min(double(q), alt);
}

double asymptotic_ratio(const Field& field, const SubsetFq& a, const SubsetFq& b,
                        const SubsetFq& c, Mode mode) {
    if (a.empty() || b.empty() || c.empty()) {
        throw Error(Errc::empty_input, "ratio needs nonempty A, B, C");
    }
    const SubsetFq img = mode == Mode::ba_plus_c ? ba_plus_c(field, b, a, c) : b_a_plus_c(field, b, a, c);
    return double(img.size()) / asymptotic_bound(field.q(), b.size(), c.size(), a.size());
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    std::string s = buf;
    if (s.find_first_of(".einf") == std::string::npos) s += ".0";
    return s;
}

std::string BoundReport::csv_header() {
    return "q,p,l,family,mode,size_A,size_B,size_C,size_L,size_image,E3,"
           "lemma1_pass,lemma2_pass,tail_pass,energy_upper_pass,"
           "exact_bound,asymptotic_bound,ratio,seed,status";
}

std::string BoundReport::csv_row() const {
    auto b = [](bool v) { return v ? "true" : "false"; };
    std::string s;
    s += std::to_string(q) + ',' + std::to_string(p) + ',' + std::to_string(l) + ',';
    s += family + ',' + mode_name(mode) + ',';
    s += std::to_string(size_a) + ',' + std::to_string(size_b) + ',' + std::to_string(size_c) + ',';
    s += std::to_string(size_l) + ',' + std::to_string(size_image) + ',';
    s += e3.str();
    s += ',';
    s += b(lemma1_pass);
    s += ',';
    s += b(lemma2_pass);
    s += ',';
    s += b(tail_pass);
    s += ',';
    s += b(energy_upper_pass);
    s += ',';
    s += format_double(exact_bound) + ',' + format_double(asymptotic) + ',' + format_double(ratio) + ',';
    s += std::to_string(seed) + ',' + status;
    return s;
}

nlohmann::ordered_json BoundReport::to_json() const {
    nlohmann::ordered_json j;
    j["field"] = field_text;
    j["q"] = q;
    j["p"] = p;
    j["l"] = l;
    j["family"] = family;
    j["mode"] = mode_name(mode);
    j["size_A"] = size_a;
    j["size_B"] = size_b;
    j["size_C"] = size_c;
    j["size_L"] = size_l;
    j["size_L_chain"] = size_l_chain;
    j["size_image"] = size_image;
    j["E3"] = e3.str();
    j["lemma1_lhs"] = lemma1_lhs.str();
    j["lemma1_rhs"] = lemma1_rhs.str();
    j["lemma2_lhs"] = lemma2_lhs.str();
    j["lemma2_rhs"] = lemma2_rhs.str();
    j["tail_sum"] = tail_sum;
    j["tail_bound"] = tail_bound;
    j["energy_upper_rhs"] = energy_upper_rhs.str();
    j["exact_lower_bound"] = exact_bound;
    j["asymptotic_bound"] = asymptotic;
    j["ratio"] = ratio;
    j["all_slopes_nonzero"] = all_slopes_nonzero;
    j["lemma1_pass"] = lemma1_pass;
    j["lemma2_pass"] = lemma2_pass;
    j["tail_pass"] = tail_pass;
    j["energy_upper_pass"] = energy_upper_pass;
    j["image_at_least_exact"] = image_at_least_exact;
    j["checks_passed"] = checks_passed;
    j["seed"] = seed;
    j["status"] = status;
    return j;
}

BoundReport verify_instance(const Field& field, const SubsetFq& b, const SubsetFq& a,
                            const SubsetFq& c, Mode mode, const std::string& family,
                            std::uint64_t seed) {
    if (a.empty() || b.empty() || c.empty()) {
        throw Error(Errc::empty_input, "instance needs nonempty A, B, C");
    }
    BoundReport rpt;
    rpt.field_text = field.to_string();
    rpt.q = field.q();
    rpt.p = field.p();
    rpt.l = field.l();
    rpt.family = family;
    rpt.mode = mode;
    rpt.size_a = a.size();
    rpt.size_b = b.size();
    rpt.size_c = c.size();
    rpt.size_l = b.size() * c.size();
    rpt.seed = seed;
    rpt.asymptotic = asymptotic_bound(field.q(), b.size(), c.size(), a.size());
    rpt.all_slopes_nonzero = !b.contains(0);

    SubsetFq slopes = b;
    slopes.erase(0);
    if (slopes.empty()) {
        // B = {0}: no line family to run; report the composite size only.
        const SubsetFq img = mode == Mode::ba_plus_c ? ba_plus_c(field, b, a, c) : b_a_plus_c(field, b, a, c);
        rpt.size_image = img.size();
        rpt.ratio = double(rpt.size_image) / rpt.asymptotic;
        rpt.status = "degenerate;slope_set_only_zero";
        return rpt;
    }

    const LineFamily lines = mode == Mode::ba_plus_c ? LineFamily::from_bc(field, slopes, c)
                                                     : LineFamily::from_bc_scaled(field, slopes, c);
    rpt.size_l_chain = lines.size();

    const SubsetFq img = image_set(field, lines, a);
    const SubsetFq oracle =
        mode == Mode::ba_plus_c ? ba_plus_c(field, slopes, a, c) : b_a_plus_c(field, slopes, a, c);
    if (!(img == oracle)) throw std::logic_error("family image disagrees with element-wise composite");
    rpt.size_image = img.size();
    rpt.ratio = double(rpt.size_image) / rpt.asymptotic;

    const auto r = rep_function(field, lines, a);
    rpt.e3 = 0;
    for (std::uint64_t v : r) rpt.e3 += cube(BigInt(v));

    auto h = holder_check(lines.size(), a.size(), rpt.e3, rpt.size_image);
    rpt.lemma1_lhs = std::move(h.lhs);
    rpt.lemma1_rhs = std::move(h.rhs);
    rpt.lemma1_pass = h.pass;

    auto tm = third_moment_check(r, 3);
    rpt.lemma2_lhs = std::move(tm.lhs);
    rpt.lemma2_rhs = std::move(tm.rhs);
    rpt.lemma2_pass = tm.pass;

    auto tc = fourier_tail_check(field, lines, a);
    rpt.tail_sum = tc.tail_sum;
    rpt.tail_bound = tc.bound;
    rpt.tail_pass = tc.pass;

    auto eu = energy_upper_core(rpt.e3, lines.size(), a.size(), field.q());
    rpt.energy_upper_rhs = std::move(eu.rhs);
    rpt.energy_upper_pass = eu.pass;

    rpt.exact_bound = exact_lower_bound(field.q(), lines.size(), a.size());
    rpt.image_at_least_exact = image_bound_holds(field.q(), lines.size(), a.size(), rpt.size_image);

    rpt.checks_passed = rpt.lemma1_pass && rpt.lemma2_pass && rpt.tail_pass &&
                        rpt.energy_upper_pass && rpt.image_at_least_exact;
    rpt.status = rpt.all_slopes_nonzero ? "ok" : "ok;dropped_zero_slope";
    return rpt;
}

}  // namespace sumprod
