// simulate: rate spectra, concurrence maps and special wavelengths for two
// emitters on opposite sides of a thin film.
//
//   simulate rates --config run.json
//   simulate concurrence --config run.json
//   simulate special-wavelengths --config run.json
//
// Exit codes: 0 success, 2 configuration error, 3 every wavelength failed.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "entfilm/errors.hpp"
#include "entfilm/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

using namespace entfilm;

bool all_failed(const std::vector<RateSpectrumRow>& rows) {
    return !rows.empty() &&
           std::all_of(rows.begin(), rows.end(), [](const RateSpectrumRow& r) { return !r.ok; });
}

void report_failures(const std::vector<RateSpectrumRow>& rows) {
    for (const RateSpectrumRow& r : rows)
        if (!r.ok) std::cerr << "warning: lambda = " << r.lambda_nm << " nm failed: " << r.error << '\n';
}

void write_metadata(const ConcurrenceMap& map, const std::string& path) {
    nlohmann::json meta;
    meta["config"] = nlohmann::json::parse(map.config_json);
    meta["time_unit"] = "1/gamma0";
    nlohmann::json failed = nlohmann::json::array();
    for (const RateSpectrumRow& r : map.rates)
        if (!r.ok) failed.push_back({{"lambda_nm", r.lambda_nm}, {"error", r.error}});
    meta["failed_wavelengths"] = failed;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << meta.dump(2) << '\n';
}

int run_rates(const SweepConfig& config) {
    const auto rows = run_rate_spectrum(config);
    report_failures(rows);
    if (config.output.rates_csv.empty()) {
        std::cout << rates_csv_text(rows);
    } else {
        write_csv(rows, config.output.rates_csv);
    }
    return all_failed(rows) ? kExitNumerical : 0;
}

int run_concurrence(const SweepConfig& config) {
    const ConcurrenceMap map = run_concurrence_map(config);
    report_failures(map.rates);
    if (config.output.concurrence_csv.empty()) {
        std::cout << map_csv_text(map);
    } else {
        write_csv(map, config.output.concurrence_csv);
        write_metadata(map, config.output.concurrence_csv + ".meta.json");
    }
    return all_failed(map.rates) ? kExitNumerical : 0;
}

int run_special(const SweepConfig& config) {
    std::string text = "kind,lambda_nm\n";
    auto emit = [&](SpecialKind kind, double lo_nm, double hi_nm) {
        for (double l : scan_special_wavelengths(config.film, kind, lo_nm * 1e-9, hi_nm * 1e-9, 1e-9)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%s,%.4f\n", std::string(to_string(kind)).c_str(), l * 1e9);
            text += buf;
        }
    };
    if (std::holds_alternative<DrudeMaterial>(config.film)) {
        emit(SpecialKind::EnzPerp, 150.0, 2000.0);
        emit(SpecialKind::SurfacePlasmon, 150.0, 2000.0);
    } else if (std::holds_alternative<EmtMaterial>(config.film)) {
        // The TiO2 fit has its pole near 283 nm; start above it.
        emit(SpecialKind::EnpPar, 300.0, 2000.0);
        emit(SpecialKind::EnzPerp, 300.0, 2000.0);
    }
    if (config.output.special_csv.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(config.output.special_csv, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + config.output.special_csv + "'");
        out << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement of two emitters across a thin film"};
    app.require_subcommand(1);

    std::string config_path;
    int threads = -1;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--threads", threads, "Worker threads (overrides sweep.threads)");
    };
    CLI::App* rates = app.add_subcommand("rates", "Rate spectrum gamma_s, gamma_c, Omega_c vs wavelength");
    CLI::App* conc = app.add_subcommand("concurrence", "Concurrence map over wavelength and time");
    CLI::App* special = app.add_subcommand("special-wavelengths", "ENZ / ENP / surface-plasmon wavelengths");
    add_common(rates);
    add_common(conc);
    add_common(special);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    SweepConfig config;
    try {
        config = load_config(config_path);
        if (threads >= 0) config.threads = threads;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (rates->parsed()) return run_rates(config);
        if (conc->parsed()) return run_concurrence(config);
        return run_special(config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
