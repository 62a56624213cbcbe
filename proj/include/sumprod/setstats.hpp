#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sumprod/field.hpp"
#include "sumprod/spectral.hpp"

namespace sumprod {

using BigInt = boost::multiprecision::cpp_int;

// A subset of F_q as a bitset over element indices. Carries only q, not the
// field; operations take the field and reject a size mismatch.
class SubsetFq {
public:
    explicit SubsetFq(std::uint64_t q);
    explicit SubsetFq(const Field& field) : SubsetFq(field.q()) {}
    static SubsetFq full(const Field& field);

    void insert(Elem a);
    void erase(Elem a);
    bool contains(Elem a) const {
        return a < q_ && (bits_[a >> 6] >> (a & 63)) & 1;
    }
    std::uint64_t q() const { return q_; }
    std::uint64_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    std::vector<Elem> elements() const;  // ascending
    DensityFn indicator() const;         // 0/1 values, length q

    bool operator==(const SubsetFq& o) const { return q_ == o.q_ && bits_ == o.bits_; }

private:
    std::uint64_t q_;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> bits_;
};

SubsetFq sumset(const Field& field, const SubsetFq& s, const SubsetFq& t);      // {s + t}
SubsetFq productset(const Field& field, const SubsetFq& s, const SubsetFq& t);  // {s * t}

// {b*a + c} and {b*(a + c)} over all (b, a, c), computed element-wise; these
// are the oracles the line-family image path is checked against.
SubsetFq ba_plus_c(const Field& field, const SubsetFq& b, const SubsetFq& a, const SubsetFq& c);
SubsetFq b_a_plus_c(const Field& field, const SubsetFq& b, const SubsetFq& a, const SubsetFq& c);

// A family of lines x -> m*x + b with all slopes nonzero, kept as sorted
// distinct (m, b) rows. Families built from two sets carry a product flag:
// the spectral tail bound is only proved for those.
class LineFamily {
public:
    // rows (b, c) for b in B, c in C; images over A are B*A + C
    static LineFamily from_bc(const Field& field, const SubsetFq& b, const SubsetFq& c);
    // rows (b, b*c); images over A are B*(A + C)
    static LineFamily from_bc_scaled(const Field& field, const SubsetFq& b, const SubsetFq& c);
    // explicit rows; duplicates collapse, zero slopes are rejected
    static LineFamily from_pairs(const Field& field, std::vector<std::pair<Elem, Elem>> rows);

    std::uint64_t q() const { return q_; }
    std::uint64_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }
    bool product_structured() const { return product_; }
    const std::vector<std::pair<Elem, Elem>>& rows() const { return rows_; }

private:
    LineFamily(std::uint64_t q, bool product) : q_(q), product_(product) {}
    std::uint64_t q_;
    bool product_;
    std::vector<std::pair<Elem, Elem>> rows_;
};

// {m*a + b : (m, b) in L, a in A}
SubsetFq image_set(const Field& field, const LineFamily& lines, const SubsetFq& a);

// r(x) = #{((m, b), a) : m*a + b = x}; sums to |L| * |A|
std::vector<std::uint64_t> rep_function(const Field& field, const LineFamily& lines, const SubsetFq& a);

// E_3 = sum_x r(x)^3, exactly
BigInt energy3(const Field& field, const LineFamily& lines, const SubsetFq& a);

// Same number by enumerating all triples of (line, point) incidences and
// counting coinciding evaluations. Cubic cost; small inputs only.
BigInt energy3_bruteforce(const Field& field, const LineFamily& lines, const SubsetFq& a);

// Subset file format: a header line "field <p^l or p^l/encoding>", then one
// decimal element index per line.
std::pair<Field, SubsetFq> parse_subset_text(std::string_view text);
std::string subset_to_text(const Field& field, const SubsetFq& s);
std::pair<Field, SubsetFq> read_subset(const std::string& path);
void write_subset(const std::string& path, const Field& field, const SubsetFq& s);

}  // namespace sumprod
