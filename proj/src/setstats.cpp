#include "sumprod/setstats.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace sumprod {
namespace {

void require_same_q(const Field& field, const SubsetFq& s, const char* what) {
    if (s.q() != field.q()) {
        throw Error(Errc::length_mismatch,
                    std::string(what) + " lives in a field of size " + std::to_string(s.q()) +
                        ", expected " + std::to_string(field.q()));
    }
}

}  // namespace

SubsetFq::SubsetFq(std::uint64_t q) : q_(q), bits_((q + 63) / 64, 0) {
    if (q == 0) throw Error(Errc::invalid_argument, "subset of an empty field");
}

SubsetFq SubsetFq::full(const Field& field) {
    SubsetFq s(field);
    for (Elem a = 0; a < field.q(); ++a) s.insert(a);
    return s;
}

void SubsetFq::insert(Elem a) {
    if (a >= q_) {
        throw Error(Errc::invalid_argument,
                    "element index " + std::to_string(a) + " out of range for q = " + std::to_string(q_));
    }
    std::uint64_t& w = bits_[a >> 6];
    const std::uint64_t m = std::uint64_t(1) << (a & 63);
    if (!(w & m)) {
        w |= m;
        ++count_;
    }
}

void SubsetFq::erase(Elem a) {
    if (a >= q_) return;
    std::uint64_t& w = bits_[a >> 6];
    const std::uint64_t m = std::uint64_t(1) << (a & 63);
    if (w & m) {
        w &= ~m;
        --count_;
    }
}

std::vector<Elem> SubsetFq::elements() const {
    std::vector<Elem> out;
    out.reserve(count_);
    for (Elem a = 0; a < q_; ++a) {
        if (contains(a)) out.push_back(a);
    }
    return out;
}

DensityFn SubsetFq::indicator() const {
    DensityFn f(q_, 0.0);
    for (Elem a = 0; a < q_; ++a) {
        if (contains(a)) f[a] = 1.0;
    }
    return f;
}

SubsetFq sumset(const Field& field, const SubsetFq& s, const SubsetFq& t) {
    require_same_q(field, s, "left operand");
    require_same_q(field, t, "right operand");
    SubsetFq out(field);
    for (Elem a : s.elements()) {
        for (Elem b : t.elements()) out.insert(field.add(a, b));
    }
    return out;
}

SubsetFq productset(const Field& field, const SubsetFq& s, const SubsetFq& t) {
    require_same_q(field, s, "left operand");
    require_same_q(field, t, "right operand");
    SubsetFq out(field);
    for (Elem a : s.elements()) {
        for (Elem b : t.elements()) out.insert(field.mul(a, b));
    }
    return out;
}

SubsetFq ba_plus_c(const Field& field, const SubsetFq& b, const SubsetFq& a, const SubsetFq& c) {
    return sumset(field, productset(field, b, a), c);
}

SubsetFq b_a_plus_c(const Field& field, const SubsetFq& b, const SubsetFq& a, const SubsetFq& c) {
    return productset(field, b, sumset(field, a, c));
}

LineFamily LineFamily::from_bc(const Field& field, const SubsetFq& b, const SubsetFq& c) {
    require_same_q(field, b, "slope set");
    require_same_q(field, c, "offset set");
    if (b.contains(0)) {
        throw Error(Errc::zero_slope_present, "slope set contains 0; drop it before building lines");
    }
    LineFamily out(field.q(), true);
    out.rows_.reserve(b.size() * c.size());
    for (Elem m : b.elements()) {
        for (Elem off : c.elements()) out.rows_.emplace_back(m, off);
    }
    return out;
}

LineFamily LineFamily::from_bc_scaled(const Field& field, const SubsetFq& b, const SubsetFq& c) {
    require_same_q(field, b, "slope set");
    require_same_q(field, c, "offset set");
    if (b.contains(0)) {
        throw Error(Errc::zero_slope_present, "slope set contains 0; drop it before building lines");
    }
    LineFamily out(field.q(), true);
    out.rows_.reserve(b.size() * c.size());
    for (Elem m : b.elements()) {
        for (Elem off : c.elements()) out.rows_.emplace_back(m, field.mul(m, off));
    }
    std::sort(out.rows_.begin(), out.rows_.end());
    return out;
}

LineFamily LineFamily::from_pairs(const Field& field, std::vector<std::pair<Elem, Elem>> rows) {
    for (const auto& [m, b] : rows) {
        if (m >= field.q() || b >= field.q()) {
            throw Error(Errc::invalid_argument, "line coefficients out of range");
        }
        if (m == 0) throw Error(Errc::zero_slope_present, "line with slope 0");
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    LineFamily out(field.q(), false);
    out.rows_ = std::move(rows);
    return out;
}

SubsetFq image_set(const Field& field, const LineFamily& lines, const SubsetFq& a) {
    require_same_q(field, a, "evaluation set");
    SubsetFq out(field);
    for (const auto& [m, b] : lines.rows()) {
        for (Elem x : a.elements()) out.insert(field.add(field.mul(m, x), b));
    }
    return out;
}

std::vector<std::uint64_t> rep_function(const Field& field, const LineFamily& lines, const SubsetFq& a) {
    require_same_q(field, a, "evaluation set");
    std::vector<std::uint64_t> r(field.q(), 0);
    const auto pts = a.elements();
    for (const auto& [m, b] : lines.rows()) {
        for (Elem x : pts) ++r[field.add(field.mul(m, x), b)];
    }
    return r;
}

BigInt energy3(const Field& field, const LineFamily& lines, const SubsetFq& a) {
    BigInt acc = 0;
    for (std::uint64_t r : rep_function(field, lines, a)) {
        const BigInt rr = r;
        acc += rr * rr * rr;
    }
    return acc;
}

BigInt energy3_bruteforce(const Field& field, const LineFamily& lines, const SubsetFq& a) {
    require_same_q(field, a, "evaluation set");
    // Every pair (line, point) is one incidence; E_3 counts ordered triples
    // of incidences whose evaluations coincide.
    std::vector<Elem> values;
    for (const auto& [m, b] : lines.rows()) {
        for (Elem x : a.elements()) values.push_back(field.add(field.mul(m, x), b));
    }
    BigInt acc = 0;
    for (Elem u : values) {
        for (Elem v : values) {
            if (u != v) continue;
            for (Elem w : values) {
                if (u == w) ++acc;
            }
        }
    }
    return acc;
}

std::pair<Field, SubsetFq> parse_subset_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::bad_descriptor, "empty subset file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string prefix = "field ";
    if (line.rfind(prefix, 0) != 0) {
        throw Error(Errc::bad_descriptor, "subset file must start with a 'field <p^l>' header");
    }
    Field field = Field::parse(std::string_view(line).substr(prefix.size()));
    SubsetFq s(field);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        for (char ch : line) {
            if (ch < '0' || ch > '9') {
                throw Error(Errc::bad_descriptor,
                            "subset file line " + std::to_string(lineno) + " is not an element index");
            }
        }
        Elem a = 0;
        bool in_range = true;
        for (char ch : line) {
            const Elem d = Elem(ch - '0');
            if (a > (std::numeric_limits<Elem>::max() - d) / 10) {
                in_range = false;  // would overflow, so certainly >= q
                break;
            }
            a = a * 10 + d;
        }
        if (!in_range || a >= field.q()) {
            throw Error(Errc::invalid_argument,
                        "element index on line " + std::to_string(lineno) + " out of range for " +
                            field.to_string());
        }
        s.insert(a);
    }
    return {std::move(field), std::move(s)};
}

std::string subset_to_text(const Field& field, const SubsetFq& s) {
    require_same_q(field, s, "subset");
    std::string out = "field " + field.to_string() + "\n";
    for (Elem a : s.elements()) {
        out += std::to_string(a);
        out += '\n';
    }
    return out;
}

std::pair<Field, SubsetFq> read_subset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_failure, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_subset_text(buf.str());
}

void write_subset(const std::string& path, const Field& field, const SubsetFq& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_failure, "cannot open " + path + " for writing");
    out << subset_to_text(field, s);
    if (!out) throw Error(Errc::io_failure, "write to " + path + " failed");
}

}  // namespace sumprod
