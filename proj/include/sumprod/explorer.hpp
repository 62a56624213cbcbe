#pragma once

#include <string>
#include <vector>

#include "sumprod/bounds.hpp"

namespace sumprod {

// How one of the three roles (A, B, C) gets its elements. "random" draws
// distinct elements from a seeded generator; the other kinds are fully
// determined by their parameters, so all three roles coincide for them.
struct FamilyDescriptor {
    std::string kind;           // random | subfield | interval | geometric | custom-file
    std::uint32_t degree = 1;   // subfield: subfield degree, must divide l
    Elem start = 1;             // interval / geometric first element
    Elem step = 1;              // interval increment
    Elem ratio = 0;             // geometric multiplier, required for that kind
    std::string path;           // custom-file
    bool diagonal = false;      // random: one draw shared by A, B, C

    std::string label() const;  // family column in reports
};

struct SizeSpec {
    bool fraction = false;
    std::uint64_t cardinality = 0;
    double value = 0.0;  // fraction of q when fraction is set
    std::uint64_t resolve(std::uint64_t q) const;
};

struct OutputSpec {
    std::string path;
    std::string format;  // csv | json
};

struct ExperimentConfig {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> fields;  // (p, l)
    std::vector<FamilyDescriptor> families;
    std::vector<SizeSpec> sizes;
    std::uint64_t trials_per_cell = 1;
    std::uint64_t master_seed = 0;
    std::vector<Mode> modes;  // one or both, from the "mode" key
    OutputSpec output;
};

// Strict JSON parsing: unknown keys, missing required keys, or out-of-range
// values are BadDescriptor errors. load reads the file first (IoFailure).
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Deterministic for fixed arguments. Random draws use Floyd's sampling over
// the element range; subfield returns the fixed points of x -> x^{p^d}.
SubsetFq generate_family(const Field& field, const FamilyDescriptor& desc, std::uint64_t size,
                         std::uint64_t seed);

struct SuiteResult {
    std::vector<BoundReport> rows;
    std::uint64_t ok_rows = 0;
    double min_ratio = 0.0, median_ratio = 0.0;  // over ok rows
    double c_min = 0.0;                          // empirical implied constant
    std::string summary() const;
};

// One cell per (field, family, size, trial), seeded by a stable hash of the
// master seed and the cell index; every requested mode reuses the cell's
// sets. Instance failures become per-row error statuses, never aborts.
SuiteResult run_suite(const ExperimentConfig& cfg);

std::string render_csv(const std::vector<BoundReport>& rows);
std::string render_json(const std::vector<BoundReport>& rows);
void emit_report(const std::vector<BoundReport>& rows, const OutputSpec& output);

}  // namespace sumprod
