#include <cstdlib>
#include <functional>

#include <doctest.h>

#include "sumprod/field.hpp"

using namespace sumprod;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("canonical moduli are the smallest irreducible encodings") {
    struct Case {
        std::uint64_t p;
        std::uint32_t l;
        std::uint64_t encoding;
        const char* text;
    };
    // t^2+t+1, t^3+t+1, t^2+1, t^4+t+1, t^2+2, t^3+2t+1
    const Case cases[] = {
        {2, 2, 7, "2^2/7"},   {2, 3, 11, "2^3/11"}, {3, 2, 10, "3^2/10"},
        {2, 4, 19, "2^4/19"}, {5, 2, 27, "5^2/27"}, {3, 3, 34, "3^3/34"},
    };
    for (const auto& c : cases) {
        const Field f(c.p, c.l);
        CHECK(f.modulus_encoding() == c.encoding);
        CHECK(f.to_string() == c.text);
        CHECK(f.q() == [&] { std::uint64_t q = 1; for (std::uint32_t i = 0; i < c.l; ++i) q *= c.p; return q; }());
        const Field parsed = Field::parse(c.text);
        CHECK(parsed.modulus_encoding() == c.encoding);
    }
    CHECK(Field(7, 1).to_string() == "7^1");
    CHECK(Field::parse("7^1").q() == 7);
}

TEST_CASE("field axioms hold on sampled elements") {
    for (const auto& [p, l] : {std::pair<std::uint64_t, std::uint32_t>{2, 4}, {3, 3}, {13, 1}, {5, 2}}) {
        const Field f(p, l);
        const std::uint64_t q = f.q();
        CAPTURE(f.to_string());
        for (Elem a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.mul(a, 0) == 0);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        }
        // sampled associativity/commutativity/distributivity
        for (Elem a = 0; a < q; a += 3) {
            for (Elem b = 1; b < q; b += 5) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (Elem c = 2; c < q; c += 7) {
                    CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        CHECK(f.sub(3 % q, 3 % q) == 0);
        // Fermat: a^q = a
        for (Elem a = 0; a < q; ++a) CHECK(f.pow(a, q) == a);
    }
}

TEST_CASE("multiplication matches the small worked products") {
    const Field f4(2, 2);
    CHECK(f4.mul(2, 2) == 3);  // t * t = t + 1
    CHECK(f4.mul(2, 3) == 1);  // t * (t+1) = t^2 + t = 1
    const Field f9(3, 2);
    CHECK(f9.mul(3, 3) == 2);  // t * t = -1 = 2 for modulus t^2 + 1
    const Field f7(7, 1);
    CHECK(f7.inv(3) == 5);
    CHECK(f7.mul(4, 5) == 6);
}

TEST_CASE("trace lands in the prime field, is additive, Frobenius-stable, equidistributed") {
    for (const auto& [p, l] : {std::pair<std::uint64_t, std::uint32_t>{2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}}) {
        const Field f(p, l);
        CAPTURE(f.to_string());
        std::vector<std::uint64_t> counts(p, 0);
        for (Elem a = 0; a < f.q(); ++a) {
            const std::uint32_t t = f.trace(a);
            REQUIRE(t < p);
            ++counts[t];
            CHECK(f.trace(f.pow(a, p)) == t);
            for (Elem b = 0; b < f.q(); b += 3) {
                CHECK(f.trace(f.add(a, b)) == (t + f.trace(b)) % p);
            }
        }
        for (auto c : counts) CHECK(c == f.q() / p);  // each fiber is a hyperplane
    }
    const Field f4(2, 2);
    CHECK(f4.trace(1) == 0);
    CHECK(f4.trace(2) == 1);
    const Field f9(3, 2);
    CHECK(f9.trace(1) == 2);
    CHECK(f9.trace(3) == 0);
}

TEST_CASE("character is multiplicative over addition and unimodular") {
    for (const auto& [p, l] : {std::pair<std::uint64_t, std::uint32_t>{2, 2}, {3, 2}, {7, 1}}) {
        const Field f(p, l);
        for (Elem a = 0; a < f.q(); ++a) {
            CHECK(std::abs(std::abs(f.chi(a)) - 1.0) < 1e-12);
            for (Elem b = 0; b < f.q(); ++b) {
                CHECK(std::abs(f.chi(f.add(a, b)) - f.chi(a) * f.chi(b)) < 1e-12);
            }
        }
    }
    const Field f4(2, 2);
    CHECK(std::abs(f4.chi(2) - std::complex<double>(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("trace_mul_table equals trace of products") {
    for (const auto& [p, l] : {std::pair<std::uint64_t, std::uint32_t>{2, 3}, {3, 2}, {11, 1}}) {
        const Field f(p, l);
        std::vector<std::uint32_t> tab;
        for (Elem m = 0; m < f.q(); ++m) {
            f.trace_mul_table(m, tab);
            for (Elem x = 0; x < f.q(); ++x) CHECK(tab[x] == f.trace(f.mul(x, m)));
        }
    }
}

TEST_CASE("digits decompose the element index") {
    const Field f(3, 3);
    for (Elem a = 0; a < f.q(); ++a) {
        Elem rebuilt = 0, scale = 1;
        for (std::uint32_t i = 0; i < 3; ++i, scale *= 3) rebuilt += scale * f.digit(a, i);
        CHECK(rebuilt == a);
    }
}

TEST_CASE("construction and parsing reject invalid descriptors") {
    CHECK(code_of([] { Field(4, 1); }) == Errc::non_prime);
    CHECK(code_of([] { Field(1, 1); }) == Errc::non_prime);
    CHECK(code_of([] { Field(6, 2); }) == Errc::non_prime);
    CHECK(code_of([] { Field(2, 0); }) == Errc::degree_out_of_range);
    CHECK(code_of([] { Field::parse("garbage"); }) == Errc::bad_descriptor);
    CHECK(code_of([] { Field::parse("3^"); }) == Errc::bad_descriptor);
    CHECK(code_of([] { Field::parse("^2"); }) == Errc::bad_descriptor);
    CHECK(code_of([] { Field::parse("3^2/11"); }) == Errc::bad_descriptor);  // not canonical
    CHECK(code_of([] { Field::parse("5^1/5"); }) == Errc::bad_descriptor);   // prime field
    CHECK(code_of([] { Field::parse("3^0"); }) == Errc::degree_out_of_range);
    const Field f5(5, 1);
    CHECK(code_of([&] { f5.add(5, 0); }) == Errc::invalid_argument);
    CHECK(code_of([&] { f5.inv(0); }) == Errc::division_by_zero);
}

TEST_CASE("the q cap bounds construction and is overridable") {
    unsetenv("SUMPROD_CAP");
    CHECK(field_cap() == (std::uint64_t(1) << 20));
    setenv("SUMPROD_CAP", "100", 1);
    CHECK(field_cap() == 100);
    CHECK(code_of([] { Field(11, 2); }) == Errc::field_too_large);  // 121 > 100
    CHECK(Field(7, 2).q() == 49);
    setenv("SUMPROD_CAP", "not-a-number", 1);
    CHECK(field_cap() == (std::uint64_t(1) << 20));
    unsetenv("SUMPROD_CAP");
}

TEST_CASE("primality screen is exact on the deterministic base set") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(101));
    CHECK(is_prime_u64(257));
    CHECK(is_prime_u64((std::uint64_t(1) << 61) - 1));
    CHECK_FALSE(is_prime_u64(0));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561));    // Carmichael
    CHECK_FALSE(is_prime_u64(341));    // 2-pseudoprime
    CHECK_FALSE(is_prime_u64(~std::uint64_t(0)));
}
