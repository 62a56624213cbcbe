#include "sumprod/field.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace sumprod {
namespace {

constexpr std::uint64_t kDefaultCap = std::uint64_t(1) << 20;
constexpr std::uint64_t kHardCap = std::uint64_t(1) << 24;

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return std::uint64_t((unsigned __int128)a * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// e^{2 pi i r / p}, with the quarter-turn values pinned exactly so that the
// p = 2 character is truly {1, -1} instead of picking up sin(pi) noise.
std::complex<double> unit_root(std::uint64_t r, std::uint64_t p) {
    if (r == 0) return {1.0, 0.0};
    if (2 * r == p) return {-1.0, 0.0};
    if (4 * r == p) return {0.0, 1.0};
    if (4 * r == 3 * p) return {0.0, -1.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * double(r) / double(p));
}

// ---------------------------------------------------------------------------
// Dense polynomials over F_p, little-endian coefficients, used only for the
// one-time modulus search. The divisor is always monic, so long division
// needs no inverses.
// ---------------------------------------------------------------------------

// Remainder of g by monic f, computed on a scratch copy; true iff zero.
bool divides_monic(const std::vector<std::uint32_t>& f, std::vector<std::uint32_t> r,
                   std::uint64_t p) {
    const std::size_t df = f.size() - 1;
    for (std::size_t k = r.size() - 1; k >= df; --k) {
        const std::uint64_t c = r[k];
        if (c != 0) {
            // f is monic, so this also zeroes r[k].
            for (std::size_t i = 0; i <= df; ++i) {
                r[k - df + i] = std::uint32_t((r[k - df + i] + (p - f[i]) * c) % p);
            }
        }
        if (k == df) break;
    }
    for (std::size_t i = 0; i < df; ++i) {
        if (r[i] != 0) return false;
    }
    return true;
}

bool is_irreducible(const std::vector<std::uint32_t>& g, std::uint64_t p) {
    const std::uint32_t deg = std::uint32_t(g.size() - 1);
    // Trial division by every monic polynomial of degree 1..deg/2. A
    // reducible g has a monic factor in that range.
    std::vector<std::uint32_t> f;
    for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        f.assign(d + 1, 0);
        f[d] = 1;
        for (std::uint64_t low = 0; low < count; ++low) {
            std::uint64_t rest = low;
            for (std::uint32_t i = 0; i < d; ++i) {
                f[i] = std::uint32_t(rest % p);
                rest /= p;
            }
            if (divides_monic(f, g, p)) return false;
        }
    }
    return true;
}

}  // namespace

std::uint64_t field_cap() {
    if (const char* env = std::getenv("SUMPROD_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v >= 4) {
            return v > kHardCap ? kHardCap : std::uint64_t(v);
        }
    }
    return kDefaultCap;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % d == 0) return n == d;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic Miller-Rabin base set for the full 64-bit range.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Field::Field(std::uint64_t p, std::uint32_t l) : p_(p), l_(l) {
    if (l < 1) throw Error(Errc::degree_out_of_range, "extension degree must be >= 1");
    if (!is_prime_u64(p)) throw Error(Errc::non_prime, "p = " + std::to_string(p) + " is not prime");

    const std::uint64_t cap = field_cap();
    q_ = 1;
    for (std::uint32_t i = 0; i < l; ++i) {
        if (q_ > cap / p) {
            throw Error(Errc::field_too_large,
                        std::to_string(p) + "^" + std::to_string(l) + " exceeds cap " + std::to_string(cap));
        }
        q_ *= p;
    }

    pow_p_.resize(l_ + 1);
    pow_p_[0] = 1;
    for (std::uint32_t i = 1; i <= l_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;

    if (l_ == 1) {
        modulus_ = {0, 1};  // t; never consulted for prime fields
    } else {
        // Scan monic degree-l polynomials in encoding order; the first
        // irreducible one is the canonical modulus.
        std::vector<std::uint32_t> g(l_ + 1, 0);
        g[l_] = 1;
        bool found = false;
        for (std::uint64_t low = 0; low < q_; ++low) {
            std::uint64_t rest = low;
            for (std::uint32_t i = 0; i < l_; ++i) {
                g[i] = std::uint32_t(rest % p_);
                rest /= p_;
            }
            if (is_irreducible(g, p_)) {
                modulus_ = g;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("no irreducible modulus found");  // cannot happen
    }

    if (p_ <= (std::uint64_t(1) << 16)) {
        chi_roots_.resize(p_);
        for (std::uint64_t r = 0; r < p_; ++r) chi_roots_[r] = unit_root(r, p_);
    }

    if (l_ > 1) {
        // Tr is F_p-linear, so the full table is a digit-wise block fill
        // from the traces of the power basis 1, t, ..., t^{l-1}.
        std::vector<std::uint32_t> basis(l_);
        for (std::uint32_t i = 0; i < l_; ++i) basis[i] = trace_direct(pow_p_[i]);
        trace_tab_.assign(q_, 0);
        std::uint64_t len = 1;
        for (std::uint32_t i = 0; i < l_; ++i) {
            for (std::uint64_t d = 1; d < p_; ++d) {
                const std::uint32_t addv = std::uint32_t((d * basis[i]) % p_);
                std::uint32_t* dst = trace_tab_.data() + d * len;
                for (std::uint64_t r = 0; r < len; ++r) {
                    dst[r] = std::uint32_t((trace_tab_[r] + addv) % p_);
                }
            }
            len *= p_;
        }
    } else {
        trace_tab_.assign(q_, 0);
        for (std::uint64_t x = 0; x < q_; ++x) trace_tab_[x] = std::uint32_t(x);
    }
}

void Field::check(Elem a) const {
    if (a >= q_) {
        throw Error(Errc::invalid_argument,
                    "element index " + std::to_string(a) + " out of range for q = " + std::to_string(q_));
    }
}

Elem Field::add(Elem a, Elem b) const {
    check(a);
    check(b);
    if (l_ == 1) return (a + b) % p_;
    Elem r = 0;
    for (std::uint32_t i = 0; i < l_; ++i) {
        const std::uint64_t da = (a / pow_p_[i]) % p_;
        const std::uint64_t db = (b / pow_p_[i]) % p_;
        r += ((da + db) % p_) * pow_p_[i];
    }
    return r;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::neg(Elem a) const {
    check(a);
    if (l_ == 1) return (p_ - a) % p_;
    Elem r = 0;
    for (std::uint32_t i = 0; i < l_; ++i) {
        const std::uint64_t da = (a / pow_p_[i]) % p_;
        r += ((p_ - da) % p_) * pow_p_[i];
    }
    return r;
}

Elem Field::mul(Elem a, Elem b) const {
    check(a);
    check(b);
    if (l_ == 1) return (a * b) % p_;

    std::uint64_t da[64], db[64], acc[127];
    for (std::uint32_t i = 0; i < l_; ++i) {
        da[i] = (a / pow_p_[i]) % p_;
        db[i] = (b / pow_p_[i]) % p_;
    }
    const std::uint32_t dlen = 2 * l_ - 1;
    for (std::uint32_t i = 0; i < dlen; ++i) acc[i] = 0;
    for (std::uint32_t i = 0; i < l_; ++i) {
        if (da[i] == 0) continue;
        for (std::uint32_t j = 0; j < l_; ++j) acc[i + j] += da[i] * db[j];
    }
    for (std::uint32_t i = 0; i < dlen; ++i) acc[i] %= p_;
    // Reduce modulo the monic modulus.
    for (std::uint32_t k = dlen; k-- > l_;) {
        const std::uint64_t c = acc[k];
        if (c == 0) continue;
        acc[k] = 0;
        for (std::uint32_t i = 0; i < l_; ++i) {
            acc[k - l_ + i] = (acc[k - l_ + i] + (p_ - modulus_[i]) * c) % p_;
        }
    }
    Elem r = 0;
    for (std::uint32_t i = 0; i < l_; ++i) r += acc[i] * pow_p_[i];
    return r;
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    check(a);
    Elem r = 1;
    Elem base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Elem Field::inv(Elem a) const {
    check(a);
    if (a == 0) throw Error(Errc::division_by_zero, "inv(0)");
    return pow(a, q_ - 2);
}

std::uint32_t Field::trace_direct(Elem a) const {
    Elem acc = a;
    Elem x = a;
    for (std::uint32_t i = 1; i < l_; ++i) {
        x = pow(x, p_);
        acc = add(acc, x);
    }
    if (acc >= p_) throw std::logic_error("trace left the prime subfield");
    return std::uint32_t(acc);
}

void Field::trace_mul_table(Elem m, std::vector<std::uint32_t>& out) const {
    check(m);
    out.assign(q_, 0);
    // v[j] = Tr(t^j * m); then Tr(x*m) = sum x_j v[j] mod p, filled blockwise.
    std::uint64_t len = 1;
    for (std::uint32_t j = 0; j < l_; ++j) {
        const std::uint32_t vj = trace(mul(pow_p_[j], m));
        if (vj != 0) {
            for (std::uint64_t d = 1; d < p_; ++d) {
                const std::uint32_t addv = std::uint32_t((d * vj) % p_);
                std::uint32_t* dst = out.data() + d * len;
                for (std::uint64_t r = 0; r < len; ++r) {
                    dst[r] = std::uint32_t((out[r] + addv) % p_);
                }
            }
        } else {
            for (std::uint64_t d = 1; d < p_; ++d) {
                std::uint32_t* dst = out.data() + d * len;
                for (std::uint64_t r = 0; r < len; ++r) dst[r] = out[r];
            }
        }
        len *= p_;
    }
}

std::complex<double> Field::chi_root(std::uint32_t r) const {
    if (!chi_roots_.empty()) return chi_roots_[r];
    return unit_root(r, p_);
}

std::uint64_t Field::modulus_encoding() const {
    std::uint64_t e = 0;
    for (std::uint32_t i = 0; i <= l_; ++i) e += std::uint64_t(modulus_[i]) * pow_p_[i];
    return e;
}

std::string Field::to_string() const {
    std::string s = std::to_string(p_) + "^" + std::to_string(l_);
    if (l_ > 1) s += "/" + std::to_string(modulus_encoding());
    return s;
}

Field Field::parse(std::string_view text) {
    const auto caret = text.find('^');
    if (caret == std::string_view::npos) {
        throw Error(Errc::bad_descriptor, "field text must look like p^l or p^l/encoding");
    }
    const auto slash = text.find('/', caret);
    auto parse_u64 = [&](std::string_view s) -> std::uint64_t {
        if (s.empty()) throw Error(Errc::bad_descriptor, "empty number in field text");
        std::uint64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') throw Error(Errc::bad_descriptor, "bad number in field text");
            v = v * 10 + std::uint64_t(c - '0');
        }
        return v;
    };
    const std::uint64_t p = parse_u64(text.substr(0, caret));
    const std::uint64_t l = parse_u64(slash == std::string_view::npos
                                          ? text.substr(caret + 1)
                                          : text.substr(caret + 1, slash - caret - 1));
    if (l == 0 || l > 63) throw Error(Errc::degree_out_of_range, "extension degree out of range");
    Field f(p, std::uint32_t(l));
    if (slash != std::string_view::npos) {
        if (f.l() == 1) {
            throw Error(Errc::bad_descriptor, "prime fields take no modulus encoding");
        }
        const std::uint64_t enc = parse_u64(text.substr(slash + 1));
        if (enc != f.modulus_encoding()) {
            throw Error(Errc::bad_descriptor,
                        "modulus encoding " + std::to_string(enc) + " is not the canonical modulus of " + f.to_string());
        }
    }
    return f;
}

}  // namespace sumprod
