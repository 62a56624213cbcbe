#include "sumprod/explorer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sumprod/rng.hpp"

namespace sumprod {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(Errc::bad_descriptor, msg); }

void expect_keys(const json& obj, const char* what, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return key == k; }) == allowed.end()) {
            bad(std::string(what) + " has unknown key '" + key + "'");
        }
    }
}

std::uint64_t get_u64(const json& v, const std::string& what) {
    if (!v.is_number_unsigned()) bad(what + " must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

FamilyDescriptor parse_family(const json& v) {
    if (!v.is_object()) bad("family descriptor must be an object");
    if (!v.contains("kind") || !v["kind"].is_string()) bad("family descriptor needs a 'kind' string");
    FamilyDescriptor d;
    d.kind = v["kind"].get<std::string>();
    if (d.kind == "random") {
        expect_keys(v, "random family", {"kind", "diagonal"});
        if (v.contains("diagonal")) {
            if (!v["diagonal"].is_boolean()) bad("'diagonal' must be a boolean");
            d.diagonal = v["diagonal"].get<bool>();
        }
    } else if (d.kind == "subfield") {
        expect_keys(v, "subfield family", {"kind", "degree"});
        d.degree = v.contains("degree") ? std::uint32_t(get_u64(v["degree"], "'degree'")) : 1;
        if (d.degree == 0) bad("subfield degree must be >= 1");
    } else if (d.kind == "interval") {
        expect_keys(v, "interval family", {"kind", "start", "step"});
        if (v.contains("start")) d.start = get_u64(v["start"], "'start'");
        if (v.contains("step")) d.step = get_u64(v["step"], "'step'");
    } else if (d.kind == "geometric") {
        expect_keys(v, "geometric family", {"kind", "ratio", "start"});
        if (!v.contains("ratio")) bad("geometric family needs a 'ratio'");
        d.ratio = get_u64(v["ratio"], "'ratio'");
        if (v.contains("start")) d.start = get_u64(v["start"], "'start'");
    } else if (d.kind == "custom-file") {
        expect_keys(v, "custom-file family", {"kind", "path"});
        if (!v.contains("path") || !v["path"].is_string()) bad("custom-file family needs a 'path'");
        d.path = v["path"].get<std::string>();
    } else {
        bad("unknown family kind '" + d.kind + "'");
    }
    return d;
}

SizeSpec parse_size(const json& v) {
    SizeSpec s;
    if (v.is_number_unsigned()) {
        s.cardinality = v.get<std::uint64_t>();
        if (s.cardinality < 1) bad("sizes must be >= 1 or a fraction in (0, 1]");
        return s;
    }
    if (v.is_number_float()) {
        const double f = v.get<double>();
        if (!(f > 0.0 && f <= 1.0)) bad("fractional sizes must lie in (0, 1]");
        s.fraction = true;
        s.value = f;
        return s;
    }
    bad("sizes must be cardinalities >= 1 or fractions in (0, 1]");
}

BoundReport error_row(const Field& field, const FamilyDescriptor& fam, Mode mode,
                      std::uint64_t seed, Errc code) {
    BoundReport r;
    r.field_text = field.to_string();
    r.q = field.q();
    r.p = field.p();
    r.l = field.l();
    r.family = fam.label();
    r.mode = mode;
    r.seed = seed;
    r.status = std::string("error;") + errc_name(code);
    return r;
}

}  // namespace

std::string FamilyDescriptor::label() const {
    if (kind == "random" && diagonal) return "random-diag";
    return kind;
}

std::uint64_t SizeSpec::resolve(std::uint64_t q) const {
    if (!fraction) return cardinality;
    const auto n = std::uint64_t(std::llround(value * double(q)));
    return std::max<std::uint64_t>(1, std::min(n, q));
}

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        bad(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) bad("config must be a JSON object");
    expect_keys(j, "config",
                {"fields", "families", "sizes", "trials_per_cell", "master_seed", "mode", "output"});
    for (const char* key : {"fields", "families", "sizes", "output"}) {
        if (!j.contains(key)) bad(std::string("config needs '") + key + "'");
    }

    ExperimentConfig cfg;
    if (!j["fields"].is_array()) bad("'fields' must be an array of [p, l] pairs");
    for (const auto& fv : j["fields"]) {
        if (!fv.is_array() || fv.size() != 2) bad("'fields' entries must be [p, l] pairs");
        cfg.fields.emplace_back(get_u64(fv[0], "field p"), std::uint32_t(get_u64(fv[1], "field l")));
    }
    if (!j["families"].is_array()) bad("'families' must be an array");
    for (const auto& fv : j["families"]) cfg.families.push_back(parse_family(fv));
    if (!j["sizes"].is_array()) bad("'sizes' must be an array");
    for (const auto& sv : j["sizes"]) cfg.sizes.push_back(parse_size(sv));

    cfg.trials_per_cell = j.contains("trials_per_cell") ? get_u64(j["trials_per_cell"], "'trials_per_cell'") : 1;
    if (cfg.trials_per_cell < 1) bad("'trials_per_cell' must be >= 1");
    cfg.master_seed = j.contains("master_seed") ? get_u64(j["master_seed"], "'master_seed'") : 0;

    std::string mode = "BA+C";
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) bad("'mode' must be a string");
        mode = j["mode"].get<std::string>();
    }
    if (mode == "BA+C") {
        cfg.modes = {Mode::ba_plus_c};
    } else if (mode == "B(A+C)") {
        cfg.modes = {Mode::b_a_plus_c};
    } else if (mode == "both") {
        cfg.modes = {Mode::ba_plus_c, Mode::b_a_plus_c};
    } else {
        bad("'mode' must be one of BA+C, B(A+C), both");
    }

    const json& out = j["output"];
    if (!out.is_object()) bad("'output' must be an object");
    expect_keys(out, "output", {"path", "format"});
    if (!out.contains("path") || !out["path"].is_string() || out["path"].get<std::string>().empty()) {
        bad("'output' needs a nonempty 'path'");
    }
    if (!out.contains("format") || !out["format"].is_string()) bad("'output' needs a 'format'");
    cfg.output.path = out["path"].get<std::string>();
    cfg.output.format = out["format"].get<std::string>();
    if (cfg.output.format != "csv" && cfg.output.format != "json") {
        bad("output format must be csv or json");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_failure, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

SubsetFq generate_family(const Field& field, const FamilyDescriptor& desc, std::uint64_t size,
                         std::uint64_t seed) {
    const std::uint64_t q = field.q();
    if (desc.kind == "random") {
        if (size == 0) throw Error(Errc::zero_size, "random family needs size >= 1");
        if (size > q) {
            throw Error(Errc::size_too_large,
                        "size " + std::to_string(size) + " exceeds q = " + std::to_string(q));
        }
        // Floyd's sampling: exactly `size` distinct elements, one rng draw each.
        SplitMix64 rng(seed);
        SubsetFq s(field);
        for (std::uint64_t i = q - size; i < q; ++i) {
            const std::uint64_t r = rng.below(i + 1);
            s.insert(s.contains(r) ? i : r);
        }
        return s;
    }
    if (desc.kind == "subfield") {
        if (field.l() % desc.degree != 0) {
            throw Error(Errc::bad_descriptor, "subfield degree " + std::to_string(desc.degree) +
                                                  " does not divide l = " + std::to_string(field.l()));
        }
        std::uint64_t pd = 1;
        for (std::uint32_t i = 0; i < desc.degree; ++i) pd *= field.p();
        SubsetFq s(field);
        for (Elem x = 0; x < q; ++x) {
            if (field.pow(x, pd) == x) s.insert(x);
        }
        if (s.size() != pd) throw std::logic_error("subfield has wrong order");
        return s;
    }
    if (desc.kind == "interval" || desc.kind == "geometric") {
        if (size == 0) throw Error(Errc::zero_size, desc.kind + " family needs size >= 1");
        if (size > q) {
            throw Error(Errc::size_too_large,
                        "size " + std::to_string(size) + " exceeds q = " + std::to_string(q));
        }
        if (desc.start >= q || desc.step >= q || desc.ratio >= q) {
            throw Error(Errc::bad_descriptor, "family parameters must be element indices below q");
        }
        if (desc.kind == "geometric" && desc.ratio == 0) {
            throw Error(Errc::bad_descriptor, "geometric ratio must be nonzero");
        }
        SubsetFq s(field);
        Elem x = desc.start;
        for (std::uint64_t i = 0; i < size; ++i) {
            if (s.contains(x)) {
                throw Error(Errc::bad_descriptor,
                            desc.kind + " family revisits element " + std::to_string(x) +
                                " before reaching size " + std::to_string(size));
            }
            s.insert(x);
            x = desc.kind == "interval" ? field.add(x, desc.step) : field.mul(x, desc.ratio);
        }
        return s;
    }
    if (desc.kind == "custom-file") {
        auto [ffield, s] = read_subset(desc.path);
        if (ffield.to_string() != field.to_string()) {
            throw Error(Errc::bad_descriptor, "subset file " + desc.path + " is over " +
                                                  ffield.to_string() + ", expected " + field.to_string());
        }
        return s;
    }
    throw Error(Errc::bad_descriptor, "unknown family kind '" + desc.kind + "'");
}

std::string SuiteResult::summary() const {
    std::string s = "rows=" + std::to_string(rows.size()) + " ok=" + std::to_string(ok_rows);
    if (ok_rows == 0) return s + " min_ratio=n/a median_ratio=n/a c_min=n/a";
    s += " min_ratio=" + format_double(min_ratio);
    s += " median_ratio=" + format_double(median_ratio);
    s += " c_min=" + format_double(c_min);
    return s;
}

SuiteResult run_suite(const ExperimentConfig& cfg) {
    SuiteResult res;
    std::uint64_t cell_index = 0;
    for (const auto& [p, l] : cfg.fields) {
        const Field field(p, l);
        for (const auto& fam : cfg.families) {
            const bool seeded_roles = fam.kind == "random" && !fam.diagonal;
            for (const auto& spec : cfg.sizes) {
                const std::uint64_t size = spec.resolve(field.q());
                for (std::uint64_t trial = 0; trial < cfg.trials_per_cell; ++trial, ++cell_index) {
                    const std::uint64_t cell_seed = derive_seed(cfg.master_seed, cell_index);
                    SubsetFq a(field.q()), b(field.q()), c(field.q());
                    bool resampled = false;
                    Errc gen_error{};
                    bool generated = true;
                    try {
                        if (seeded_roles) {
                            a = generate_family(field, fam, size, derive_seed(cell_seed, 1));
                            b = generate_family(field, fam, size, derive_seed(cell_seed, 2));
                            c = generate_family(field, fam, size, derive_seed(cell_seed, 3));
                            // keep the asserted chain meaningful: redraw a slope
                            // set that contains 0 whenever a 0-free one exists
                            if (b.contains(0) && b.size() < field.q()) {
                                const std::uint64_t bseed = derive_seed(cell_seed, 2);
                                for (std::uint64_t attempt = 1; attempt <= 64; ++attempt) {
                                    SubsetFq b2 = generate_family(field, fam, size,
                                                                  derive_seed(bseed, attempt));
                                    if (!b2.contains(0)) {
                                        b = std::move(b2);
                                        resampled = true;
                                        break;
                                    }
                                }
                            }
                        } else {
                            a = generate_family(field, fam, size, derive_seed(cell_seed, 1));
                            b = a;
                            c = a;
                        }
                    } catch (const Error& e) {
                        generated = false;
                        gen_error = e.code();
                    }
                    for (Mode mode : cfg.modes) {
                        if (!generated) {
                            res.rows.push_back(error_row(field, fam, mode, cell_seed, gen_error));
                            continue;
                        }
                        try {
                            BoundReport row = verify_instance(field, b, a, c, mode, fam.label(), cell_seed);
                            if (resampled) row.status += ";resampled_B";
                            res.rows.push_back(std::move(row));
                        } catch (const Error& e) {
                            res.rows.push_back(error_row(field, fam, mode, cell_seed, e.code()));
                        }
                    }
                }
            }
        }
    }

    std::vector<double> ratios;
    for (const auto& row : res.rows) {
        if (row.status.rfind("ok", 0) == 0) ratios.push_back(row.ratio);
    }
    res.ok_rows = ratios.size();
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        res.min_ratio = ratios.front();
        const std::size_t n = ratios.size();
        res.median_ratio = n % 2 ? ratios[n / 2] : (ratios[n / 2 - 1] + ratios[n / 2]) / 2.0;
        res.c_min = res.min_ratio;
    }
    return res;
}

std::string render_csv(const std::vector<BoundReport>& rows) {
    std::string out = BoundReport::csv_header() + "\n";
    for (const auto& row : rows) {
        out += row.csv_row();
        out += '\n';
    }
    return out;
}

std::string render_json(const std::vector<BoundReport>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) arr.push_back(row.to_json());
    return arr.dump(2) + "\n";
}

void emit_report(const std::vector<BoundReport>& rows, const OutputSpec& output) {
    if (output.format != "csv" && output.format != "json") {
        throw Error(Errc::bad_descriptor, "output format must be csv or json");
    }
    std::ofstream out(output.path, std::ios::binary);
    if (!out) throw Error(Errc::io_failure, "cannot open " + output.path + " for writing");
    out << (output.format == "csv" ? render_csv(rows) : render_json(rows));
    out.flush();
    if (!out) throw Error(Errc::io_failure, "write to " + output.path + " failed");
}

}  // namespace sumprod
