#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entfilm/errors.hpp"
#include "entfilm/sweep.hpp"

using namespace entfilm;

namespace {

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

SweepConfig small_vacuum() {
    SweepConfig c;
    c.lambda = {300.0, 500.0, 3};
    c.time = {1.0, 3};
    return c;
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("empty object gives the defaults") {
        const SweepConfig c = parse_config("{}");
        CHECK(c.geometry.z1 == doctest::Approx(10e-9));
        CHECK(c.geometry.thickness == doctest::Approx(10e-9));
        CHECK(c.geometry.orientation == Orientation::X);
        CHECK(std::holds_alternative<VacuumMaterial>(c.film));
        CHECK(c.lambda.count == 161);
    }
    SUBCASE("silver film scenario") {
        const SweepConfig c = parse_config(R"({
            "geometry": {"z1_nm": 10, "d_nm": 30, "orientation": "z"},
            "film": "drude",
            "sweep": {"lambda_min_nm": 280, "lambda_max_nm": 400, "lambda_count": 7, "threads": 2}
        })");
        CHECK(c.geometry.thickness == doctest::Approx(30e-9));
        CHECK(c.geometry.orientation == Orientation::Z);
        const auto* d = std::get_if<DrudeMaterial>(&c.film);
        REQUIRE(d != nullptr);
        CHECK(d->params.eps_inf == 3.7);
        CHECK(d->params.tau == 0.45e-14);
        CHECK(c.lambda.points_nm().front() == 280.0);
        CHECK(c.lambda.points_nm().back() == 400.0);
        CHECK(c.threads == 2);
    }
    SUBCASE("emt film defaults to the visible window") {
        const SweepConfig c = parse_config(R"({"film": {"emt": {"fill_fraction": 0.35}}})");
        CHECK(c.lambda.min_nm == 350.0);
        CHECK(c.lambda.max_nm == 650.0);
        CHECK(std::get<EmtMaterial>(c.film).fill_fraction == 0.35);
    }
    SUBCASE("errors name the field") {
        try {
            parse_config(R"({"geometry": {"d_nm": -5}})");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("d_nm") != std::string::npos);
        }
        try {
            parse_config(R"({"sweep": {"lambda_cnt": 5}})");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("lambda_cnt") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_config("{\"geometry\": "), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"film": "gold"})"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"film": {"emt": {"tio2": false}}})"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"geometry": {"orientation": "y"}})"), ConfigError);
    }
    SUBCASE("round trip through the canonical rendering") {
        const SweepConfig c = parse_config(R"({"film": {"emt": {"tio2": false, "eps_dielectric": 4.0}},
                                               "geometry": {"d_nm": 60}})");
        const SweepConfig again = parse_config(config_to_json(c));
        CHECK(config_to_json(again) == config_to_json(c));
    }
}

TEST_CASE("csv layout") {
    CHECK(rates_csv_text({}) == "lambda_nm,gamma_s,gamma_c,omega_c,transmission_proxy\n");

    const auto rows = run_rate_spectrum(small_vacuum());
    const std::string text = rates_csv_text(rows);
    CHECK(count_lines(text) == 4);

    SweepConfig c = small_vacuum();
    c.lambda = {300.0, 400.0, 2};
    const ConcurrenceMap map = run_concurrence_map(c);
    const std::string m = map_csv_text(map);
    CHECK(count_lines(m) == 7);
    std::istringstream in(m);
    std::string line;
    std::getline(in, line);
    CHECK(line == "lambda_nm,t_gamma0,concurrence");
    std::getline(in, line);
    CHECK(line.rfind("300,0,", 0) == 0);
    std::getline(in, line);
    CHECK(line.rfind("300,0.5,", 0) == 0);
    std::getline(in, line);
    CHECK(line.rfind("300,1,", 0) == 0);
    std::getline(in, line);
    CHECK(line.rfind("400,0,", 0) == 0);

    SUBCASE("failed rows print nan") {
        RateSpectrumRow bad;
        bad.lambda_nm = 123.0;
        bad.ok = false;
        bad.gamma_s_over_gamma0 = bad.gamma_c_over_gamma0 = bad.omega_c_over_gamma0 =
            bad.transmission_proxy = std::nan("");
        CHECK(rates_csv_text({bad}).find("123,nan,nan,nan,nan") != std::string::npos);
    }
}

TEST_CASE("vacuum spectrum has gamma_s = 1") {
    for (Orientation o : {Orientation::X, Orientation::Z}) {
        SweepConfig c = small_vacuum();
        c.geometry.orientation = o;
        for (const RateSpectrumRow& r : run_rate_spectrum(c)) {
            REQUIRE(r.ok);
            CHECK(std::abs(r.gamma_s_over_gamma0 - 1.0) < 1e-6);
            CHECK(std::abs(r.gamma_c_over_gamma0) <= r.gamma_s_over_gamma0);
        }
    }
}

TEST_CASE("maps are deterministic and independent of the thread count") {
    SweepConfig c = parse_config(R"({"film": "drude", "geometry": {"d_nm": 20},
        "sweep": {"lambda_min_nm": 300, "lambda_max_nm": 380, "lambda_count": 9, "t_count": 11}})");
    c.threads = 1;
    const ConcurrenceMap serial = run_concurrence_map(c);
    c.threads = 4;
    const ConcurrenceMap parallel = run_concurrence_map(c);
    const ConcurrenceMap again = run_concurrence_map(c);
    CHECK(map_csv_text(serial) == map_csv_text(parallel));
    CHECK(map_csv_text(parallel) == map_csv_text(again));
    for (std::size_t i = 0; i < serial.lambda_nm.size(); ++i) {
        CHECK(serial.at(i, 0) == 0.0);
        for (std::size_t j = 0; j < serial.t.size(); ++j) {
            CHECK(serial.at(i, j) >= 0.0);
            CHECK(serial.at(i, j) <= 1.0);
        }
    }
}

TEST_CASE("minimum loss is applied to films only") {
    SweepConfig c;
    CHECK(film_medium(c, 400e-9).eps_perp == cplx(1.0, 0.0));
    c.film = EmtMaterial{};
    const UniaxialMedium m = film_medium(c, 600e-9);
    CHECK(m.eps_perp.imag() >= kMinimumLoss);
    CHECK(m.eps_par.imag() >= kMinimumLoss);
}

TEST_CASE("special wavelength scan") {
    const auto enz = scan_special_wavelengths(EmtMaterial{}, SpecialKind::EnzPerp, 300e-9, 2000e-9, 5e-9);
    REQUIRE(enz.size() == 1);
    CHECK(std::abs(enz[0] * 1e9 - 551.0) < 2.0);
    CHECK_THROWS_AS(scan_special_wavelengths(EmtMaterial{}, SpecialKind::EnzPerp, 400e-9, 300e-9, 5e-9),
                    DomainError);
}
