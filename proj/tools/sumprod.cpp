#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sumprod/explorer.hpp"
#include "sumprod/verify.hpp"

namespace {

int cmd_verify(const std::string& csv_path) {
    const auto result = sumprod::run_acceptance();
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw sumprod::Error(sumprod::Errc::io_failure, "cannot open " + csv_path);
        out << sumprod::render_csv(result.rows);
        if (!out.flush()) throw sumprod::Error(sumprod::Errc::io_failure, "write to " + csv_path + " failed");
        std::cout << "wrote " << result.rows.size() << " instance rows to " << csv_path << "\n";
    }
    return sumprod::print_acceptance(std::cout, result);
}

int cmd_experiment(const std::string& config_path) {
    const auto cfg = sumprod::load_config(config_path);
    const auto res = sumprod::run_suite(cfg);
    sumprod::emit_report(res.rows, cfg.output);
    std::cout << "wrote " << res.rows.size() << " rows to " << cfg.output.path << " ("
              << cfg.output.format << ")\n";
    std::cout << res.summary() << "\n";
    return 0;
}

int cmd_transform(const std::string& field_text, const std::string& set_path, bool reference) {
    const sumprod::Field field = sumprod::Field::parse(field_text);
    auto [file_field, subset] = sumprod::read_subset(set_path);
    if (file_field.to_string() != field.to_string()) {
        throw sumprod::Error(sumprod::Errc::bad_descriptor,
                             "subset file is over " + file_field.to_string() + ", requested " +
                                 field.to_string());
    }
    const sumprod::DensityFn f = subset.indicator();
    const sumprod::Spectrum hat =
        reference ? sumprod::fourier_forward(field, f) : sumprod::fourier_fast(field, f);
    std::cout << "m,re,im\n";
    for (std::size_t m = 0; m < hat.size(); ++m) {
        std::cout << m << ',' << sumprod::format_double(hat[m].real()) << ','
                  << sumprod::format_double(hat[m].imag()) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-field sum-product bound verifier"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run the fixed acceptance suite");
    std::string csv_path;
    verify->add_option("--csv", csv_path, "also write the deterministic instance rows as CSV");

    auto* experiment = app.add_subcommand("experiment", "run a configured sweep");
    std::string config_path;
    experiment->add_option("--config", config_path, "JSON experiment config")->required();

    auto* transform = app.add_subcommand("transform", "print the spectrum of a subset indicator");
    std::string field_text, set_path;
    bool reference = false;
    transform->add_option("--field", field_text, "field descriptor, e.g. 3^2/10")->required();
    transform->add_option("--set", set_path, "subset file")->required();
    transform->add_flag("--reference", reference, "use the quadratic-cost transform");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(csv_path);
        if (experiment->parsed()) return cmd_experiment(config_path);
        return cmd_transform(field_text, set_path, reference);
    } catch (const sumprod::Error& e) {
        std::cerr << "error: " << e.what() << " [" << sumprod::errc_name(e.code()) << "]\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
