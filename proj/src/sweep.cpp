#include "entfilm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "entfilm/errors.hpp"

namespace entfilm {

namespace {

using nlohmann::json;

void expect_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key()))
            throw ConfigError("unknown key '" + (where.empty() ? "" : where + ".") + item.key() + "'");
    }
}

double number_at(const json& j, const std::string& key, const std::string& where, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

int integer_at(const json& j, const std::string& key, const std::string& where, int fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

std::string string_at(const json& j, const std::string& key, const std::string& where,
                      const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

DrudeParams parse_drude(const json& j, const std::string& where) {
    expect_object(j, where);
    reject_unknown(j, {"eps_inf", "omega_p", "tau"}, where);
    DrudeParams p;
    p.eps_inf = number_at(j, "eps_inf", where, p.eps_inf);
    p.omega_p = number_at(j, "omega_p", where, p.omega_p);
    p.tau = number_at(j, "tau", where, p.tau);
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return p;
}

MaterialModel parse_film(const json& j) {
    if (j.is_string()) {
        const std::string kind = j.get<std::string>();
        if (kind == "vacuum") return VacuumMaterial{};
        if (kind == "drude") return DrudeMaterial{};
        if (kind == "emt") return EmtMaterial{};
        throw ConfigError("film: unknown film type '" + kind + "'");
    }
    expect_object(j, "film");
    reject_unknown(j, {"vacuum", "drude", "emt"}, "film");
    if (j.size() != 1) throw ConfigError("film: exactly one of vacuum, drude, emt is required");

    if (j.contains("vacuum")) {
        const json& v = j.at("vacuum");
        if (!v.is_null() && !(v.is_object() && v.empty()) && !(v.is_boolean() && v.get<bool>()))
            throw ConfigError("film.vacuum: takes no parameters");
        return VacuumMaterial{};
    }
    if (j.contains("drude")) return DrudeMaterial{parse_drude(j.at("drude"), "film.drude")};

    const json& e = j.at("emt");
    expect_object(e, "film.emt");
    reject_unknown(e, {"fill_fraction", "drude", "tio2", "eps_dielectric"}, "film.emt");
    EmtMaterial m;
    m.fill_fraction = number_at(e, "fill_fraction", "film.emt", m.fill_fraction);
    if (!(m.fill_fraction >= 0.0 && m.fill_fraction <= 1.0))
        throw ConfigError("film.emt.fill_fraction: must lie in [0, 1]");
    if (e.contains("drude")) m.metal = parse_drude(e.at("drude"), "film.emt.drude");
    bool tio2 = true;
    if (e.contains("tio2")) {
        if (!e.at("tio2").is_boolean()) throw ConfigError("film.emt.tio2: expected a boolean");
        tio2 = e.at("tio2").get<bool>();
    }
    if (!tio2) {
        if (!e.contains("eps_dielectric"))
            throw ConfigError("film.emt.eps_dielectric: required when tio2 is false");
        const double eps = number_at(e, "eps_dielectric", "film.emt", 0.0);
        if (!(eps > 0.0)) throw ConfigError("film.emt.eps_dielectric: must be positive");
        m.eps_dielectric = eps;
    } else if (e.contains("eps_dielectric")) {
        throw ConfigError("film.emt.eps_dielectric: only allowed when tio2 is false");
    }
    return m;
}

json film_to_json(const MaterialModel& model) {
    auto drude = [](const DrudeParams& p) {
        return json{{"eps_inf", p.eps_inf}, {"omega_p", p.omega_p}, {"tau", p.tau}};
    };
    if (std::holds_alternative<VacuumMaterial>(model)) return json{{"vacuum", json::object()}};
    if (const auto* d = std::get_if<DrudeMaterial>(&model)) return json{{"drude", drude(d->params)}};
    const auto& e = std::get<EmtMaterial>(model);
    json emt{{"fill_fraction", e.fill_fraction}, {"drude", drude(e.metal)},
             {"tio2", !e.eps_dielectric.has_value()}};
    if (e.eps_dielectric) emt["eps_dielectric"] = *e.eps_dielectric;
    return json{{"emt", emt}};
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Runs body(i) for i in [0, n) on `threads` workers; each index owns its output slot.
template <class Body>
void parallel_for(std::size_t n, int threads, Body body) {
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    }
}

RateSpectrumRow compute_row(const SweepConfig& config, double lambda_nm) {
    RateSpectrumRow row;
    row.lambda_nm = lambda_nm;
    try {
        const RateTriple r = rates_at(config, lambda_nm * 1e-9);
        row.gamma_s_over_gamma0 = r.gamma_s;
        row.gamma_c_over_gamma0 = r.gamma_c;
        row.omega_c_over_gamma0 = r.omega_c;
        row.transmission_proxy = transmission_proxy(r);
    } catch (const std::exception& e) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        row.gamma_s_over_gamma0 = row.gamma_c_over_gamma0 = row.omega_c_over_gamma0 = nan;
        row.transmission_proxy = nan;
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

std::vector<double> LambdaGrid::points_nm() const {
    std::vector<double> pts(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i)
        pts[static_cast<std::size_t>(i)] =
            count == 1 ? min_nm : min_nm + (max_nm - min_nm) * i / (count - 1);
    return pts;
}

std::vector<double> TimeGrid::points() const {
    std::vector<double> pts(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i)
        pts[static_cast<std::size_t>(i)] = count == 1 ? 0.0 : max * i / (count - 1);
    return pts;
}

void SweepConfig::validate() const {
    if (!(geometry.z1 > 0.0)) throw ConfigError("geometry.z1_nm: must be positive");
    if (!(geometry.thickness >= 0.0)) throw ConfigError("geometry.d_nm: must be non-negative");
    if (!(lambda.min_nm > 0.0)) throw ConfigError("sweep.lambda_min_nm: must be positive");
    if (!(lambda.max_nm > lambda.min_nm))
        throw ConfigError("sweep.lambda_max_nm: must exceed lambda_min_nm");
    if (lambda.count < 2) throw ConfigError("sweep.lambda_count: must be at least 2");
    if (!(time.max > 0.0)) throw ConfigError("sweep.t_max: must be positive");
    if (time.count < 2) throw ConfigError("sweep.t_count: must be at least 2");
    if (threads < 0) throw ConfigError("sweep.threads: must be non-negative");
    if (!(quadrature.rel_tol > 0.0)) throw ConfigError("quadrature.rel_tol: must be positive");
    if (quadrature.max_subdivisions < 1)
        throw ConfigError("quadrature.max_subdivisions: must be at least 1");
    if (const auto* emt = std::get_if<EmtMaterial>(&film)) {
        if (!(emt->fill_fraction >= 0.0 && emt->fill_fraction <= 1.0))
            throw ConfigError("film.emt.fill_fraction: must lie in [0, 1]");
    }
}

SweepConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    expect_object(root, "config");
    reject_unknown(root, {"geometry", "film", "sweep", "quadrature", "output"}, "");

    SweepConfig c;
    if (root.contains("film")) c.film = parse_film(root.at("film"));
    if (std::holds_alternative<EmtMaterial>(c.film)) c.lambda = LambdaGrid{350.0, 650.0, 301};

    if (root.contains("geometry")) {
        const json& g = root.at("geometry");
        expect_object(g, "geometry");
        reject_unknown(g, {"z1_nm", "d_nm", "orientation"}, "geometry");
        c.geometry.z1 = number_at(g, "z1_nm", "geometry", 10.0) * 1e-9;
        c.geometry.thickness = number_at(g, "d_nm", "geometry", 10.0) * 1e-9;
        const std::string o = string_at(g, "orientation", "geometry", "x");
        if (o == "x" || o == "X") c.geometry.orientation = Orientation::X;
        else if (o == "z" || o == "Z") c.geometry.orientation = Orientation::Z;
        else throw ConfigError("geometry.orientation: expected 'x' or 'z'");
    }

    if (root.contains("sweep")) {
        const json& s = root.at("sweep");
        expect_object(s, "sweep");
        reject_unknown(s, {"lambda_min_nm", "lambda_max_nm", "lambda_count", "t_max", "t_count",
                           "threads"},
                       "sweep");
        c.lambda.min_nm = number_at(s, "lambda_min_nm", "sweep", c.lambda.min_nm);
        c.lambda.max_nm = number_at(s, "lambda_max_nm", "sweep", c.lambda.max_nm);
        c.lambda.count = integer_at(s, "lambda_count", "sweep", c.lambda.count);
        c.time.max = number_at(s, "t_max", "sweep", c.time.max);
        c.time.count = integer_at(s, "t_count", "sweep", c.time.count);
        c.threads = integer_at(s, "threads", "sweep", c.threads);
    }

    if (root.contains("quadrature")) {
        const json& q = root.at("quadrature");
        expect_object(q, "quadrature");
        reject_unknown(q, {"rel_tol", "abs_tol", "kappa_max", "max_subdivisions"}, "quadrature");
        c.quadrature.rel_tol = number_at(q, "rel_tol", "quadrature", c.quadrature.rel_tol);
        c.quadrature.abs_tol = number_at(q, "abs_tol", "quadrature", c.quadrature.abs_tol);
        c.quadrature.kappa_max = number_at(q, "kappa_max", "quadrature", c.quadrature.kappa_max);
        c.quadrature.max_subdivisions =
            integer_at(q, "max_subdivisions", "quadrature", c.quadrature.max_subdivisions);
    }

    if (root.contains("output")) {
        const json& o = root.at("output");
        expect_object(o, "output");
        reject_unknown(o, {"rates_csv", "concurrence_csv", "special_csv"}, "output");
        c.output.rates_csv = string_at(o, "rates_csv", "output", "");
        c.output.concurrence_csv = string_at(o, "concurrence_csv", "output", "");
        c.output.special_csv = string_at(o, "special_csv", "output", "");
    }

    c.validate();
    return c;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

// Metres back to nanometres, trimmed to 12 digits so 60 nm prints as 60.
double to_nm(double metres) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", metres * 1e9);
    return std::strtod(buf, nullptr);
}

}  // namespace

std::string config_to_json(const SweepConfig& c) {
    json j;
    j["geometry"] = {{"z1_nm", to_nm(c.geometry.z1)},
                     {"d_nm", to_nm(c.geometry.thickness)},
                     {"orientation", std::string(to_string(c.geometry.orientation))}};
    j["film"] = film_to_json(c.film);
    j["sweep"] = {{"lambda_min_nm", c.lambda.min_nm}, {"lambda_max_nm", c.lambda.max_nm},
                  {"lambda_count", c.lambda.count},   {"t_max", c.time.max},
                  {"t_count", c.time.count},          {"threads", c.threads}};
    j["quadrature"] = {{"rel_tol", c.quadrature.rel_tol},
                       {"abs_tol", c.quadrature.abs_tol},
                       {"kappa_max", c.quadrature.kappa_max},
                       {"max_subdivisions", c.quadrature.max_subdivisions}};
    j["output"] = {{"rates_csv", c.output.rates_csv},
                   {"concurrence_csv", c.output.concurrence_csv},
                   {"special_csv", c.output.special_csv}};
    return j.dump(2);
}

UniaxialMedium film_medium(const SweepConfig& config, double wavelength_m) {
    UniaxialMedium m = medium_at(config.film, wavelength_m);
    if (std::holds_alternative<VacuumMaterial>(config.film)) return m;
    auto lossy = [](cplx eps) { return cplx(eps.real(), std::max(eps.imag(), kMinimumLoss)); };
    m.eps_perp = lossy(m.eps_perp);
    m.eps_par = lossy(m.eps_par);
    return m;
}

RateTriple rates_at(const SweepConfig& config, double wavelength_m) {
    const double k0 = 2.0 * kPi / wavelength_m;
    const FilmStack film{film_medium(config, wavelength_m), config.geometry.thickness};
    const GreensValue single = g_single(config.geometry, film, k0, config.quadrature);
    const GreensValue cross = g_cross(config.geometry, film, k0, config.quadrature);
    return rates_from_greens(single, cross, k0);
}

std::vector<RateSpectrumRow> run_rate_spectrum(const SweepConfig& config) {
    config.validate();
    const std::vector<double> lambdas = config.lambda.points_nm();
    std::vector<RateSpectrumRow> rows(lambdas.size());
    parallel_for(lambdas.size(), config.threads,
                 [&](std::size_t i) { rows[i] = compute_row(config, lambdas[i]); });
    return rows;
}

ConcurrenceMap run_concurrence_map(const SweepConfig& config) {
    config.validate();
    ConcurrenceMap map;
    map.lambda_nm = config.lambda.points_nm();
    map.t = config.time.points();
    map.config_json = config_to_json(config);
    map.rates.resize(map.lambda_nm.size());
    map.concurrence.assign(map.lambda_nm.size() * map.t.size(), 0.0);

    const std::size_t nt = map.t.size();
    parallel_for(map.lambda_nm.size(), config.threads, [&](std::size_t i) {
        map.rates[i] = compute_row(config, map.lambda_nm[i]);
        const RateSpectrumRow& row = map.rates[i];
        const RateTriple r{row.gamma_s_over_gamma0, row.gamma_c_over_gamma0,
                           row.omega_c_over_gamma0};
        for (std::size_t j = 0; j < nt; ++j) {
            map.concurrence[i * nt + j] = row.ok ? concurrence_closed_form(r, map.t[j]).c
                                                 : std::numeric_limits<double>::quiet_NaN();
        }
    });
    return map;
}

std::vector<double> scan_special_wavelengths(const MaterialModel& model, SpecialKind kind,
                                             double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi > lo)) throw DomainError("invalid scan range");
    std::vector<double> roots;
    const int n = static_cast<int>(std::ceil((hi - lo) / step));
    double a = lo;
    double fa = special_condition(model, kind, a);
    for (int i = 1; i <= n; ++i) {
        const double b = std::min(hi, lo + i * step);
        const double fb = special_condition(model, kind, b);
        if ((fa > 0.0) != (fb > 0.0)) roots.push_back(find_special_wavelength(model, kind, {a, b}));
        a = b;
        fa = fb;
    }
    return roots;
}

std::string rates_csv_text(const std::vector<RateSpectrumRow>& rows) {
    std::string out = "lambda_nm,gamma_s,gamma_c,omega_c,transmission_proxy\n";
    for (const RateSpectrumRow& r : rows) {
        out += format_number(r.lambda_nm) + ',' + format_number(r.gamma_s_over_gamma0) + ',' +
               format_number(r.gamma_c_over_gamma0) + ',' + format_number(r.omega_c_over_gamma0) +
               ',' + format_number(r.transmission_proxy) + '\n';
    }
    return out;
}

std::string map_csv_text(const ConcurrenceMap& map) {
    std::string out = "lambda_nm,t_gamma0,concurrence\n";
    for (std::size_t i = 0; i < map.lambda_nm.size(); ++i) {
        const std::string lam = format_number(map.lambda_nm[i]) + ',';
        for (std::size_t j = 0; j < map.t.size(); ++j)
            out += lam + format_number(map.t[j]) + ',' + format_number(map.at(i, j)) + '\n';
    }
    return out;
}

void write_csv(const std::vector<RateSpectrumRow>& rows, const std::string& path) {
    write_text(rates_csv_text(rows), path);
}

void write_csv(const ConcurrenceMap& map, const std::string& path) {
    write_text(map_csv_text(map), path);
}

}  // namespace entfilm
