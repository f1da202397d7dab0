#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "entfilm/dispersion.hpp"
#include "entfilm/dynamics.hpp"
#include "entfilm/greens.hpp"

namespace entfilm {

struct LambdaGrid {
    double min_nm = 260.0;
    double max_nm = 420.0;
    int count = 161;

    std::vector<double> points_nm() const;
};

// Time axis in units of 1/gamma0.
struct TimeGrid {
    double max = 1.0;
    int count = 201;

    std::vector<double> points() const;
};

struct OutputSpec {
    std::string rates_csv;
    std::string concurrence_csv;
    std::string special_csv;
};

struct SweepConfig {
    Geometry geometry{10e-9, 10e-9, Orientation::X};
    MaterialModel film = VacuumMaterial{};
    LambdaGrid lambda;
    TimeGrid time;
    QuadratureSpec quadrature;
    OutputSpec output;
    int threads = 0;  // 0: one per hardware thread

    // Throws ConfigError naming the offending field.
    void validate() const;
};

// JSON object with top-level keys geometry, film, sweep, quadrature, output.
// Unknown keys anywhere are rejected. Throws ConfigError.
SweepConfig parse_config(std::string_view text);
SweepConfig load_config(const std::string& path);

// Canonical JSON rendering of a config (defaults filled in).
std::string config_to_json(const SweepConfig& config);

// Minimum imaginary part imposed on film permittivities so that no pole of the
// layer coefficients can sit on the real kappa axis.
inline constexpr double kMinimumLoss = 1e-9;

// Medium of the film at one wavelength with the minimum-loss rule applied.
UniaxialMedium film_medium(const SweepConfig& config, double wavelength_m);

// Rates at one wavelength; the full pipeline from permittivity to RateTriple.
RateTriple rates_at(const SweepConfig& config, double wavelength_m);

struct RateSpectrumRow {
    double lambda_nm = 0.0;
    double gamma_s_over_gamma0 = 0.0;
    double gamma_c_over_gamma0 = 0.0;
    double omega_c_over_gamma0 = 0.0;
    double transmission_proxy = 0.0;
    bool ok = true;
    std::string error;  // set when !ok; numeric fields are NaN then
};

std::vector<RateSpectrumRow> run_rate_spectrum(const SweepConfig& config);

struct ConcurrenceMap {
    std::vector<double> lambda_nm;
    std::vector<double> t;                // units of 1/gamma0
    std::vector<double> concurrence;      // lambda-major, size lambda_nm.size() * t.size()
    std::vector<RateSpectrumRow> rates;   // per-wavelength rates and failure flags
    std::string config_json;              // provenance snapshot

    double at(std::size_t i_lambda, std::size_t i_t) const {
        return concurrence[i_lambda * t.size() + i_t];
    }
};

ConcurrenceMap run_concurrence_map(const SweepConfig& config);

// Every sign change of the condition on a uniform scan of [lo, hi] (m), refined by bisection.
std::vector<double> scan_special_wavelengths(const MaterialModel& model, SpecialKind kind,
                                             double lo, double hi, double step);

void write_csv(const std::vector<RateSpectrumRow>& rows, const std::string& path);
void write_csv(const ConcurrenceMap& map, const std::string& path);

// Same content as the files, for callers that want the text.
std::string rates_csv_text(const std::vector<RateSpectrumRow>& rows);
std::string map_csv_text(const ConcurrenceMap& map);

}  // namespace entfilm
