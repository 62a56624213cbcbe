#include <cstdio>
#include <initializer_list>

#include <doctest.h>

#include "sumprod/rng.hpp"
#include "sumprod/setstats.hpp"

using namespace sumprod;

namespace {

SubsetFq make_set(const Field& f, std::initializer_list<Elem> xs) {
    SubsetFq s(f);
    for (Elem x : xs) s.insert(x);
    return s;
}

SubsetFq random_set(const Field& f, std::uint64_t seed, std::uint64_t size) {
    SplitMix64 rng(seed);
    SubsetFq s(f);
    while (s.size() < size) s.insert(rng.below(f.q()));
    return s;
}

}  // namespace

TEST_CASE("bitset subsets track membership and cardinality") {
    const Field f(3, 2);
    SubsetFq s(f);
    CHECK(s.empty());
    s.insert(4);
    s.insert(0);
    s.insert(4);  // idempotent
    CHECK(s.size() == 2);
    CHECK(s.contains(0));
    CHECK(s.contains(4));
    CHECK_FALSE(s.contains(1));
    CHECK(s.elements() == std::vector<Elem>{0, 4});
    s.erase(4);
    s.erase(7);  // absent, no-op
    CHECK(s.size() == 1);
    const auto ind = s.indicator();
    REQUIRE(ind.size() == 9);
    for (Elem a = 0; a < 9; ++a) CHECK(ind[a] == std::complex<double>(a == 0 ? 1.0 : 0.0, 0.0));
    CHECK(SubsetFq::full(f).size() == 9);
    CHECK_THROWS_AS(s.insert(9), Error);
    CHECK_THROWS_AS(SubsetFq(0), Error);
    CHECK(make_set(f, {1, 2}) == make_set(f, {2, 1}));
    CHECK_FALSE(make_set(f, {1}) == make_set(f, {2}));
}

TEST_CASE("sumsets and productsets match hand computations") {
    const Field f(5, 1);
    const auto s = make_set(f, {1, 2});
    CHECK(sumset(f, s, s) == make_set(f, {2, 3, 4}));
    CHECK(productset(f, s, s) == make_set(f, {1, 2, 4}));
    CHECK(sumset(f, make_set(f, {0}), s) == s);
    CHECK(productset(f, make_set(f, {1}), s) == s);
    CHECK(sumset(f, s, SubsetFq(f)).empty());
    CHECK(ba_plus_c(f, s, s, make_set(f, {0, 1})) == SubsetFq::full(f));
    // B*(A+C) with the same sets: (A+C) = {1,2,3}, so B*(A+C) = {1,2,3,4}
    CHECK(b_a_plus_c(f, s, s, make_set(f, {0, 1})) == make_set(f, {1, 2, 3, 4}));
    const Field g(7, 1);
    CHECK_THROWS_AS(sumset(g, s, make_set(g, {1})), Error);
}

TEST_CASE("line families enumerate product rows and reject zero slopes") {
    const Field f(5, 1);
    const auto b = make_set(f, {1, 2});
    const auto c = make_set(f, {0, 1});
    const auto plain = LineFamily::from_bc(f, b, c);
    CHECK(plain.size() == 4);
    CHECK(plain.product_structured());
    CHECK(plain.rows() == std::vector<std::pair<Elem, Elem>>{{1, 0}, {1, 1}, {2, 0}, {2, 1}});

    const auto scaled = LineFamily::from_bc_scaled(f, b, c);
    CHECK(scaled.size() == 4);
    CHECK(scaled.product_structured());
    CHECK(scaled.rows() == std::vector<std::pair<Elem, Elem>>{{1, 0}, {1, 1}, {2, 0}, {2, 2}});

    CHECK_THROWS_AS(LineFamily::from_bc(f, make_set(f, {0, 1}), c), Error);
    CHECK_THROWS_AS(LineFamily::from_bc_scaled(f, make_set(f, {0}), c), Error);

    const auto custom = LineFamily::from_pairs(f, {{2, 3}, {1, 1}, {2, 3}});
    CHECK(custom.size() == 2);
    CHECK_FALSE(custom.product_structured());
    CHECK(custom.rows() == std::vector<std::pair<Elem, Elem>>{{1, 1}, {2, 3}});
    CHECK_THROWS_AS(LineFamily::from_pairs(f, {{0, 1}}), Error);
    CHECK_THROWS_AS(LineFamily::from_pairs(f, {{1, 5}}), Error);
}

TEST_CASE("images, representation counts, and cubic energy on a worked instance") {
    const Field f(5, 1);
    const auto a = make_set(f, {1, 2});
    const auto b = make_set(f, {1, 2});
    const auto c = make_set(f, {0, 1});

    const auto plain = LineFamily::from_bc(f, b, c);
    CHECK(image_set(f, plain, a) == ba_plus_c(f, b, a, c));
    CHECK(image_set(f, plain, a).size() == 5);
    // evaluations: 1,2 | 2,3 | 2,4 | 3,0 so r = (1,1,3,2,1)
    CHECK(rep_function(f, plain, a) == std::vector<std::uint64_t>{1, 1, 3, 2, 1});
    CHECK(energy3(f, plain, a) == 38);
    CHECK(energy3_bruteforce(f, plain, a) == 38);

    const auto scaled = LineFamily::from_bc_scaled(f, b, c);
    CHECK(image_set(f, scaled, a) == b_a_plus_c(f, b, a, c));
    CHECK(image_set(f, scaled, a).size() == 4);
    CHECK(energy3(f, scaled, a) == 44);
    CHECK(energy3_bruteforce(f, scaled, a) == 44);
}

TEST_CASE("fast energy and image agree with brute force on random instances") {
    const std::pair<std::uint64_t, std::uint32_t> fields[] = {{2, 3}, {3, 2}, {7, 1}, {13, 1}};
    int idx = 0;
    for (const auto& [p, l] : fields) {
        const Field f(p, l);
        const std::uint64_t q = f.q();
        for (int rep = 0; rep < 6; ++rep, ++idx) {
            const std::uint64_t base = derive_seed(0x57a7, idx);
            SplitMix64 szrng(base);
            const auto a = random_set(f, derive_seed(base, 1), 1 + szrng.below(std::min<std::uint64_t>(q, 4)));
            auto b = random_set(f, derive_seed(base, 2), 1 + szrng.below(std::min<std::uint64_t>(q - 1, 3)));
            b.erase(0);
            if (b.empty()) b.insert(1);
            const auto c = random_set(f, derive_seed(base, 3), 1 + szrng.below(std::min<std::uint64_t>(q, 4)));
            CAPTURE(f.to_string());
            CAPTURE(base);

            for (const bool scaled_mode : {false, true}) {
                const auto fam = scaled_mode ? LineFamily::from_bc_scaled(f, b, c)
                                             : LineFamily::from_bc(f, b, c);
                const auto want = scaled_mode ? b_a_plus_c(f, b, a, c) : ba_plus_c(f, b, a, c);
                CHECK(image_set(f, fam, a) == want);
                CHECK(energy3(f, fam, a) == energy3_bruteforce(f, fam, a));
                const auto r = rep_function(f, fam, a);
                std::uint64_t total = 0, peak = 0;
                for (auto v : r) {
                    total += v;
                    peak = std::max(peak, v);
                }
                CHECK(total == fam.size() * a.size());
                // each line meets each fiber at most once since slopes are invertible
                CHECK(peak <= fam.size());
            }

            std::vector<std::pair<Elem, Elem>> rows;
            SplitMix64 rowrng(derive_seed(base, 4));
            for (int i = 0; i < 5; ++i) rows.emplace_back(1 + rowrng.below(q - 1), rowrng.below(q));
            const auto custom = LineFamily::from_pairs(f, rows);
            CHECK(energy3(f, custom, a) == energy3_bruteforce(f, custom, a));
        }
    }
}

TEST_CASE("subset files round-trip and malformed ones are rejected") {
    const Field f(3, 2);
    const auto s = make_set(f, {0, 3, 7});
    const std::string text = "field 3^2/10\n0\n3\n7\n";
    CHECK(subset_to_text(f, s) == text);

    auto [pf, ps] = parse_subset_text(text);
    CHECK(pf.to_string() == "3^2/10");
    CHECK(ps == s);

    // CRLF and blank lines are tolerated
    auto [cf, cs] = parse_subset_text("field 3^2/10\r\n0\r\n\r\n3\n\n7\r\n");
    CHECK(cs == s);
    CHECK(cf.q() == 9);

    // header-only file is the empty subset
    CHECK(parse_subset_text("field 5^1\n").second.empty());

    auto code_of = [](const char* text_in) {
        try {
            parse_subset_text(text_in);
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::io_failure;  // sentinel, never the real outcome here
    };
    CHECK(code_of("") == Errc::bad_descriptor);
    CHECK(code_of("subset 5^1\n1\n") == Errc::bad_descriptor);
    CHECK(code_of("field 4^1\n") == Errc::non_prime);
    CHECK(code_of("field 5^1\nx\n") == Errc::bad_descriptor);
    CHECK(code_of("field 5^1\n3 4\n") == Errc::bad_descriptor);
    CHECK(code_of("field 5^1\n5\n") == Errc::invalid_argument);
    CHECK(code_of("field 5^1\n99999999999999999999999999\n") == Errc::invalid_argument);
}

TEST_CASE("subset file IO hits the disk and reports failures") {
    const Field f(2, 3);
    const auto s = make_set(f, {1, 6});
    const std::string path = "tmp_subset_roundtrip.txt";
    write_subset(path, f, s);
    auto [rf, rs] = read_subset(path);
    CHECK(rf.to_string() == f.to_string());
    CHECK(rs == s);
    std::remove(path.c_str());

    CHECK_THROWS_AS(read_subset("no-such-file-anywhere.txt"), Error);
    CHECK_THROWS_AS(write_subset("no-such-dir/out.txt", f, s), Error);
    try {
        read_subset("no-such-file-anywhere.txt");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::io_failure);
    }
}
