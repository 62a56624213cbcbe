#include "sumprod/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "sumprod/explorer.hpp"
#include "sumprod/rng.hpp"
#include "sumprod/spectral.hpp"

namespace sumprod {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

const std::pair<std::uint64_t, std::uint32_t> kSmallFields[] = {
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3},
};

constexpr std::uint64_t kSeedPlancherel = 0x5eed0002;
constexpr std::uint64_t kSeedOracle = 0x5eed0003;
constexpr std::uint64_t kSeedChain = 0x5eed0005;
constexpr std::uint64_t kSeedMoment = 0x5eed0006;
constexpr std::uint64_t kSeedLarge = 0x5eed0008;
constexpr std::uint64_t kSeedReplay = 0x5eed0009;

SubsetFq random_subset(const Field& field, std::uint64_t size, std::uint64_t seed) {
    FamilyDescriptor d;
    d.kind = "random";
    return generate_family(field, d, size, seed);
}

// size distinct elements of F_q minus {0}: Floyd's sampling over a shifted range
SubsetFq random_subset_nonzero(const Field& field, std::uint64_t size, std::uint64_t seed) {
    const std::uint64_t n = field.q() - 1;
    SplitMix64 rng(seed);
    SubsetFq s(field);
    for (std::uint64_t i = n - size; i < n; ++i) {
        const std::uint64_t r = rng.below(i + 1);
        s.insert(s.contains(r + 1) ? i + 1 : r + 1);
    }
    return s;
}

std::uint64_t ceil_q34(std::uint64_t q) {
    // smallest s with s^4 >= q^3
    const BigInt q3 = BigInt(q) * q * q;
    std::uint64_t s = 1;
    while (BigInt(s) * s * s * s < q3) ++s;
    return s;
}

std::string short_real(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---- deterministic instance rows shared by the chain criteria ----

std::vector<BoundReport> rows_exhaustive_q3() {
    const Field f3(3, 1);
    std::vector<BoundReport> rows;
    rows.reserve(343);
    auto from_mask = [&](unsigned mask) {
        SubsetFq s(f3);
        for (Elem e = 0; e < 3; ++e) {
            if (mask >> e & 1) s.insert(e);
        }
        return s;
    };
    for (unsigned am = 1; am < 8; ++am) {
        for (unsigned bm = 1; bm < 8; ++bm) {
            for (unsigned cm = 1; cm < 8; ++cm) {
                rows.push_back(verify_instance(f3, from_mask(bm), from_mask(am), from_mask(cm),
                                               Mode::ba_plus_c, "exhaustive-q3",
                                               am * 64 + bm * 8 + cm));
            }
        }
    }
    return rows;
}

std::vector<BoundReport> rows_random_chain() {
    std::vector<BoundReport> rows;
    rows.reserve(1000);
    for (std::uint64_t q : {5, 7, 11, 13}) {
        const Field field(q, 1);
        for (std::uint64_t i = 0; i < 125; ++i) {
            const std::uint64_t base = derive_seed(kSeedChain, q * 1000 + i);
            SplitMix64 szrng(base);
            const auto a = random_subset(field, 1 + szrng.below(q), derive_seed(base, 1));
            const auto b = random_subset_nonzero(field, 1 + szrng.below(q - 1), derive_seed(base, 2));
            const auto c = random_subset(field, 1 + szrng.below(q), derive_seed(base, 3));
            for (Mode mode : {Mode::ba_plus_c, Mode::b_a_plus_c}) {
                rows.push_back(verify_instance(field, b, a, c, mode, "random-chain", base));
            }
        }
    }
    return rows;
}

std::vector<BoundReport> rows_subfield() {
    std::vector<BoundReport> rows;
    for (std::uint64_t p : {2, 3, 5}) {
        const Field field(p, 2);
        FamilyDescriptor d;
        d.kind = "subfield";
        d.degree = 1;
        const SubsetFq s = generate_family(field, d, 0, 0);
        rows.push_back(verify_instance(field, s, s, s, Mode::ba_plus_c, "subfield", p));
    }
    return rows;
}

std::vector<BoundReport> rows_large_random() {
    std::vector<BoundReport> rows;
    for (std::uint64_t q : {101, 257}) {
        const Field field(q, 1);
        const std::uint64_t size = ceil_q34(q);
        for (std::uint64_t i = 0; i < 20; ++i) {
            const std::uint64_t seed = derive_seed(kSeedLarge, q * 100 + i);
            const SubsetFq s = random_subset(field, size, seed);
            rows.push_back(verify_instance(field, s, s, s, Mode::ba_plus_c, "large-random", seed));
        }
    }
    return rows;
}

ExperimentConfig replay_config() {
    ExperimentConfig cfg;
    cfg.fields = {{5, 1}, {3, 2}, {13, 1}};
    FamilyDescriptor rnd;
    rnd.kind = "random";
    FamilyDescriptor rnd_diag = rnd;
    rnd_diag.diagonal = true;
    FamilyDescriptor sub;
    sub.kind = "subfield";
    sub.degree = 1;
    FamilyDescriptor geo;
    geo.kind = "geometric";
    geo.ratio = 2;
    cfg.families = {rnd, sub, rnd_diag, geo};
    SizeSpec card3;
    card3.cardinality = 3;
    SizeSpec half;
    half.fraction = true;
    half.value = 0.5;
    cfg.sizes = {card3, half};
    cfg.trials_per_cell = 2;
    cfg.master_seed = kSeedReplay;
    cfg.modes = {Mode::ba_plus_c, Mode::b_a_plus_c};
    cfg.output = {"unused", "csv"};
    return cfg;
}

// ---- the criteria ----

CriterionResult criterion_orthogonality() {
    CriterionResult r{1, "orthogonality", false, 0.0, 1.0, ""};
    const auto start = Clock::now();
    double worst = 0.0;
    for (const auto& [p, l] : kSmallFields) {
        const Field field(p, l);
        for (Elem s = 0; s < field.q(); ++s) {
            const std::complex<double> want = s == 0 ? double(field.q()) : 0.0;
            worst = std::max(worst, std::abs(orthogonality_sum(field, s) - want));
        }
    }
    r.seconds = seconds_since(start);
    r.pass = worst < 1e-9 && r.seconds < r.limit_seconds;
    r.detail = "10 fields, every shift; max defect " + short_real(worst);
    return r;
}

CriterionResult criterion_plancherel() {
    CriterionResult r{2, "plancherel", false, 0.0, 5.0, ""};
    const auto start = Clock::now();
    double worst_defect = 0.0, worst_diff = 0.0;
    std::uint64_t field_index = 0;
    for (const auto& [p, l] : kSmallFields) {
        const Field field(p, l);
        for (std::uint64_t i = 0; i < 100; ++i) {
            SplitMix64 rng(derive_seed(kSeedPlancherel, field_index * 1000 + i));
            DensityFn f(field.q());
            for (auto& v : f) v = {rng.signed_unit(), rng.signed_unit()};
            const Spectrum fwd = fourier_forward(field, f);
            const Spectrum fst = fourier_fast(field, f);
            worst_defect = std::max(worst_defect, plancherel_defect(field, f, fwd));
            worst_diff = std::max(worst_diff, max_abs_diff(fwd, fst));
        }
        ++field_index;
    }
    r.seconds = seconds_since(start);
    r.pass = worst_defect < 1e-9 && worst_diff < 1e-9 && r.seconds < r.limit_seconds;
    r.detail = "100 densities x 10 fields; max defect " + short_real(worst_defect) +
               ", max fast-vs-forward " + short_real(worst_diff);
    return r;
}

CriterionResult criterion_energy_oracle() {
    CriterionResult r{3, "energy-oracle", false, 0.0, 10.0, ""};
    const auto start = Clock::now();
    const std::pair<std::uint64_t, std::uint32_t> fields[] = {
        {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1},
    };
    std::uint64_t matches = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const Field field(fields[i % 8].first, fields[i % 8].second);
        const std::uint64_t q = field.q();
        const std::uint64_t base = derive_seed(kSeedOracle, i);
        SplitMix64 szrng(base);
        const auto a = random_subset(field, 1 + szrng.below(std::min<std::uint64_t>(5, q)),
                                     derive_seed(base, 1));
        const auto b = random_subset_nonzero(field, 1 + szrng.below(std::min<std::uint64_t>(5, q - 1)),
                                             derive_seed(base, 2));
        const auto c = random_subset(field, 1 + szrng.below(std::min<std::uint64_t>(5, q)),
                                     derive_seed(base, 3));
        const LineFamily lines = LineFamily::from_bc(field, b, c);
        if (energy3(field, lines, a) == energy3_bruteforce(field, lines, a)) ++matches;
    }
    r.seconds = seconds_since(start);
    r.pass = matches == 100 && r.seconds < r.limit_seconds;
    r.detail = std::to_string(matches) + "/100 instances agree with the triple-count oracle";
    return r;
}

CriterionResult criterion_exhaustive_q3(const std::vector<BoundReport>& rows) {
    CriterionResult r{4, "exhaustive-q3", false, 0.0, 5.0, ""};
    std::uint64_t verified = 0, vacuous = 0, failed = 0;
    for (const auto& row : rows) {
        if (row.status.rfind("degenerate", 0) == 0) {
            ++vacuous;
            continue;
        }
        if (row.lemma1_pass && row.lemma2_pass && row.energy_upper_pass && row.image_at_least_exact) {
            ++verified;
        } else {
            ++failed;
        }
    }
    r.pass = rows.size() == 343 && failed == 0 && vacuous == 49;
    r.detail = std::to_string(rows.size()) + " triples: " + std::to_string(verified) +
               " verified, " + std::to_string(vacuous) + " vacuous (B = {0})";
    return r;
}

CriterionResult criterion_random_chain(const std::vector<BoundReport>& rows) {
    CriterionResult r{5, "random-chain", false, 0.0, 30.0, ""};
    std::uint64_t good = 0;
    for (const auto& row : rows) {
        if (row.lemma1_pass && row.lemma2_pass && row.tail_pass && row.energy_upper_pass &&
            row.image_at_least_exact && row.checks_passed) {
            ++good;
        }
    }
    r.pass = rows.size() >= 500 && good == rows.size();
    r.detail = std::to_string(good) + "/" + std::to_string(rows.size()) +
               " instances over q in {5,7,11,13} pass all chain checks";
    return r;
}

CriterionResult criterion_third_moment() {
    CriterionResult r{6, "third-moment", false, 0.0, 5.0, ""};
    const auto start = Clock::now();
    std::uint64_t good = 0, equalities = 0, want_equalities = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        SplitMix64 rng(derive_seed(kSeedMoment, i));
        std::vector<std::uint64_t> f(2 + rng.below(49));
        for (auto& v : f) v = rng.below(100);
        const unsigned n = 2 + unsigned(i % 3);
        const auto check = third_moment_check(f, n);
        if (check.pass) ++good;
        if (n == 2) {
            ++want_equalities;
            if (check.lhs == check.rhs) ++equalities;
        }
    }
    r.seconds = seconds_since(start);
    r.pass = good == 1000 && equalities == want_equalities && r.seconds < r.limit_seconds;
    r.detail = std::to_string(good) + "/1000 sequences pass; n=2 exact equality " +
               std::to_string(equalities) + "/" + std::to_string(want_equalities);
    return r;
}

CriterionResult criterion_tightness(const std::vector<BoundReport>& rows) {
    CriterionResult r{7, "subfield-tightness", false, 0.0, 1.0, ""};
    bool good = rows.size() == 3;
    for (const auto& row : rows) {
        good = good && row.size_image == row.p && row.ratio == 1.0 && row.checks_passed;
    }
    r.pass = good;
    r.detail = "q in {4,9,25} with the prime subfield: |AA+A| = p, ratio exactly 1.0";
    if (!good) r.detail = "subfield instances deviate from the tightness profile";
    return r;
}

CriterionResult criterion_large_sets(const std::vector<BoundReport>& rows) {
    CriterionResult r{8, "large-sets", false, 0.0, 60.0, ""};
    bool good = rows.size() == 40;
    double min_ratio = rows.empty() ? 0.0 : rows.front().ratio;
    for (const auto& row : rows) {
        good = good && row.image_at_least_exact && row.size_a == ceil_q34(row.q);
        min_ratio = std::min(min_ratio, row.ratio);
    }
    r.pass = good;
    r.detail = "40 instances at |A| = ceil(q^(3/4)); every image >= exact bound; min ratio " +
               short_real(min_ratio);
    return r;
}

CriterionResult criterion_determinism(const std::vector<BoundReport>& first_rows) {
    CriterionResult r{9, "determinism", false, 0.0, 0.0, ""};
    const auto start = Clock::now();
    std::vector<BoundReport> replay;
    for (auto&& part : {rows_exhaustive_q3(), rows_random_chain(), rows_subfield(), rows_large_random()}) {
        for (auto&& row : part) replay.push_back(row);
    }
    const bool rows_same = render_csv(first_rows) == render_csv(replay);
    const auto cfg = replay_config();
    const bool sweep_same = render_csv(run_suite(cfg).rows) == render_csv(run_suite(cfg).rows);
    r.seconds = seconds_since(start);
    r.pass = rows_same && sweep_same;
    r.detail = std::string("row replay ") + (rows_same ? "byte-identical" : "DIFFERS") +
               "; config sweep " + (sweep_same ? "byte-identical" : "DIFFERS");
    return r;
}

}  // namespace

bool AcceptanceResult::all_pass() const {
    return std::all_of(criteria.begin(), criteria.end(),
                       [](const CriterionResult& c) { return c.pass; });
}

AcceptanceResult run_acceptance() {
    AcceptanceResult result;
    result.criteria.push_back(criterion_orthogonality());
    result.criteria.push_back(criterion_plancherel());
    result.criteria.push_back(criterion_energy_oracle());

    auto timed_rows = [](auto&& builder, double& seconds) {
        const auto start = Clock::now();
        auto rows = builder();
        seconds = seconds_since(start);
        return rows;
    };

    double t4 = 0, t5 = 0, t7 = 0, t8 = 0;
    const auto rows4 = timed_rows(rows_exhaustive_q3, t4);
    const auto rows5 = timed_rows(rows_random_chain, t5);
    const auto rows7 = timed_rows(rows_subfield, t7);
    const auto rows8 = timed_rows(rows_large_random, t8);

    auto c4 = criterion_exhaustive_q3(rows4);
    c4.seconds = t4;
    c4.pass = c4.pass && t4 < c4.limit_seconds;
    result.criteria.push_back(std::move(c4));

    auto c5 = criterion_random_chain(rows5);
    c5.seconds = t5;
    c5.pass = c5.pass && t5 < c5.limit_seconds;
    result.criteria.push_back(std::move(c5));

    result.criteria.push_back(criterion_third_moment());

    auto c7 = criterion_tightness(rows7);
    c7.seconds = t7;
    c7.pass = c7.pass && t7 < c7.limit_seconds;
    result.criteria.push_back(std::move(c7));

    auto c8 = criterion_large_sets(rows8);
    c8.seconds = t8;
    c8.pass = c8.pass && t8 < c8.limit_seconds;
    result.criteria.push_back(std::move(c8));

    result.rows.reserve(rows4.size() + rows5.size() + rows7.size() + rows8.size());
    for (const auto* part : {&rows4, &rows5, &rows7, &rows8}) {
        result.rows.insert(result.rows.end(), part->begin(), part->end());
    }

    result.criteria.push_back(criterion_determinism(result.rows));

    std::sort(result.criteria.begin(), result.criteria.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.number < b.number; });
    return result;
}

int print_acceptance(std::ostream& out, const AcceptanceResult& result) {
    std::size_t passed = 0;
    for (const auto& c : result.criteria) {
        char timing[64];
        if (c.limit_seconds > 0) {
            std::snprintf(timing, sizeof timing, "%.2fs, limit %gs", c.seconds, c.limit_seconds);
        } else {
            std::snprintf(timing, sizeof timing, "%.2fs", c.seconds);
        }
        out << "criterion " << c.number << ' ' << c.name << ": " << (c.pass ? "pass" : "FAIL")
            << " (" << timing << ") - " << c.detail << '\n';
        if (c.pass) ++passed;
    }
    out << "acceptance: " << passed << '/' << result.criteria.size() << " criteria passed\n";
    return passed == result.criteria.size() ? 0 : 1;
}

}  // namespace sumprod
