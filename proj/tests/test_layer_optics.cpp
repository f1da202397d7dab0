#include <doctest.h>

#include <cmath>

#include "entfilm/errors.hpp"
#include "entfilm/layer_optics.hpp"
#include "oracles.hpp"

using namespace entfilm;

namespace {
constexpr double k0 = 2.0 * kPi / 500e-9;
}

TEST_CASE("vacuum wavenumber branch") {
    CHECK(kz_vacuum({0.0, k0}) == cplx(k0, 0.0));
    CHECK(std::abs(kz_vacuum({k0, k0})) == 0.0);
    const cplx kz = kz_vacuum({2.0 * k0, k0});
    CHECK(kz.real() == 0.0);
    CHECK(kz.imag() == doctest::Approx(std::sqrt(3.0) * k0));
    CHECK(branch_sqrt(cplx(-4.0, -0.0)) == cplx(0.0, 2.0));
    CHECK(branch_sqrt(cplx(4.0, 0.0)) == cplx(2.0, 0.0));
    CHECK(branch_sqrt(cplx(3.0, -1e-3)).imag() >= 0.0);
}

TEST_CASE("ordinary and extraordinary wavenumbers") {
    const cplx eps(2.25, 0.1);
    const UniaxialMedium iso = UniaxialMedium::isotropic(eps);
    for (double q : {0.0, 0.5, 1.0, 2.0, 7.0}) {
        const TransverseWave w{q * k0, k0};
        CHECK(std::abs(kz_ordinary(w, eps) - kz_extraordinary(w, iso)) < 1e-9 * k0);
    }
    const TransverseWave normal{0.0, k0};
    const UniaxialMedium aniso{cplx(2.0, 0.1), cplx(-3.0, 0.2)};
    CHECK(std::abs(kz_ordinary(normal, aniso.eps_perp) - k0 * std::sqrt(aniso.eps_perp)) < 1e-9 * k0);
    CHECK(std::abs(kz_extraordinary(normal, aniso) - k0 * std::sqrt(aniso.eps_perp)) < 1e-9 * k0);

    SUBCASE("type II lossless: extraordinary modes propagate at large kappa") {
        const UniaxialMedium type2{cplx(-1.2, 0.0), cplx(13.5, 0.0)};
        double previous = 0.0;
        for (double q = 5.0; q <= 50.0; q += 5.0) {
            const cplx ke = kz_extraordinary({q * k0, k0}, type2);
            CHECK(ke.imag() == 0.0);
            CHECK(ke.real() > previous);
            previous = ke.real();
        }
    }
    SUBCASE("eps_par = 0") {
        CHECK_THROWS_AS(kz_extraordinary({k0, k0}, UniaxialMedium{cplx(1.0, 0.0), cplx(0.0, 0.0)}),
                        PoleError);
    }
    SUBCASE("continuity in kappa for a lossy medium") {
        const UniaxialMedium lossy{cplx(-1.2, 0.5), cplx(13.5, 0.3)};
        const double h = 1e-4 * k0;
        for (double kap = 0.0; kap < 20.0 * k0; kap += h * 97.0) {
            const cplx a = kz_extraordinary({kap, k0}, lossy);
            const cplx b = kz_extraordinary({kap + h, k0}, lossy);
            CHECK(std::abs(a - b) < 1e-2 * k0);
            const cplx c = kz_ordinary({kap, k0}, lossy.eps_perp);
            const cplx d = kz_ordinary({kap + h, k0}, lossy.eps_perp);
            CHECK(std::abs(c - d) < 1e-2 * k0);
        }
    }
}

TEST_CASE("single-interface reflection") {
    const UniaxialMedium vac = UniaxialMedium::isotropic(1.0);
    for (double q : {0.0, 0.3, 1.5}) {
        CHECK(std::abs(interface_reflection(Polarization::S, {q * k0, k0}, vac)) == 0.0);
        CHECK(std::abs(interface_reflection(Polarization::P, {q * k0, k0}, vac)) == 0.0);
    }
    const UniaxialMedium four = UniaxialMedium::isotropic(4.0);
    CHECK(std::abs(interface_reflection(Polarization::S, {0.0, k0}, four) - cplx(-1.0 / 3.0)) < 1e-15);

    SUBCASE("matches textbook Fresnel and conserves energy") {
        const double n = 1.7;
        const UniaxialMedium glass = UniaxialMedium::isotropic(n * n);
        for (double theta = 0.0; theta < 1.5; theta += 0.1) {
            const TransverseWave w{k0 * std::sin(theta), k0};
            for (bool p : {false, true}) {
                const auto ref = oracle::fresnel_interface(p, n, theta);
                const cplx r = interface_reflection(p ? Polarization::P : Polarization::S, w, glass);
                CHECK(std::abs(r - ref.r) < 1e-12);
                CHECK(std::norm(r) + ref.transmittance == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("film coefficients") {
    SUBCASE("zero thickness is transparent") {
        const FilmStack film{UniaxialMedium{cplx(-3.0, 0.4), cplx(5.0, 0.2)}, 0.0};
        for (double q : {0.0, 0.7, 3.0}) {
            const TransverseWave w{q * k0, k0};
            for (auto pol : {Polarization::S, Polarization::P}) {
                CHECK(std::abs(film_transmission(pol, w, film) - 1.0) < 1e-14);
                CHECK(std::abs(film_reflection(pol, w, film)) < 1e-15);
            }
        }
    }
    SUBCASE("thick lossy film approaches the single interface") {
        const UniaxialMedium m = UniaxialMedium::isotropic(cplx(-8.0, 1.0));
        const FilmStack film{m, 2e-6};
        for (double q : {0.0, 0.7, 3.0}) {
            const TransverseWave w{q * k0, k0};
            for (auto pol : {Polarization::S, Polarization::P}) {
                CHECK(std::abs(film_reflection(pol, w, film) - interface_reflection(pol, w, m)) < 1e-12);
                CHECK(std::abs(film_transmission(pol, w, film)) < 1e-12);
            }
        }
    }
    SUBCASE("isotropic films against the transfer-matrix oracle") {
        for (cplx eps : {cplx(2.25, 0.0), cplx(2.25, 0.3), cplx(-5.0, 0.7)}) {
            for (double k0d : {0.1, 1.0, 5.0}) {
                const FilmStack film{UniaxialMedium::isotropic(eps), k0d / k0};
                for (double q = 0.0; q <= 3.0; q += 0.05) {
                    if (std::abs(q - 1.0) < 1e-9) continue;
                    const TransverseWave w{q * k0, k0};
                    for (bool p : {false, true}) {
                        const auto ref = oracle::slab_transfer_matrix(p, eps, k0, w.kappa, film.thickness);
                        const Polarization pol = p ? Polarization::P : Polarization::S;
                        const double scale = std::max({1.0, std::abs(ref.t), std::abs(ref.r)});
                        CHECK(std::abs(film_transmission(pol, w, film) - ref.t) < 1e-12 * scale);
                        CHECK(std::abs(film_reflection(pol, w, film) - ref.r) < 1e-12 * scale);
                    }
                }
            }
        }
    }
    SUBCASE("energy balance") {
        for (double k0d : {0.1, 1.0, 5.0}) {
            const FilmStack lossless{UniaxialMedium::isotropic(2.25), k0d / k0};
            const FilmStack lossy{UniaxialMedium::isotropic(cplx(2.25, 0.2)), k0d / k0};
            for (double q = 0.0; q < 1.0; q += 0.05) {
                const TransverseWave w{q * k0, k0};
                for (auto pol : {Polarization::S, Polarization::P}) {
                    const double sum = std::norm(film_transmission(pol, w, lossless)) +
                                       std::norm(film_reflection(pol, w, lossless));
                    CHECK(std::abs(sum - 1.0) < 1e-10);
                    const double lost = std::norm(film_transmission(pol, w, lossy)) +
                                        std::norm(film_reflection(pol, w, lossy));
                    CHECK(lost < 1.0);
                }
            }
        }
    }
    SUBCASE("lossless uniaxial films conserve energy") {
        const UniaxialMedium media[] = {{cplx(2.0, 0.0), cplx(4.0, 0.0)}, {cplx(6.0, 0.0), cplx(1.5, 0.0)},
                                        {cplx(3.0, 0.0), cplx(-2.0, 0.0)}};
        for (const UniaxialMedium& m : media) {
            for (double k0d : {0.1, 1.3, 5.0}) {
                const FilmStack film{m, k0d / k0};
                for (double q = 0.0; q < 1.0; q += 0.05) {
                    const TransverseWave w{q * k0, k0};
                    const double sum = std::norm(film_transmission(Polarization::P, w, film)) +
                                       std::norm(film_reflection(Polarization::P, w, film));
                    CHECK(std::abs(sum - 1.0) < 1e-10);
                }
            }
        }
    }
    SUBCASE("through-transmission is free of the vacuum phase") {
        const FilmStack film{UniaxialMedium{cplx(-1.2, 0.5), cplx(13.5, 0.3)}, 60e-9};
        const TransverseWave w{4.0 * k0, k0};
        const cplx kz = kz_vacuum(w);
        const FilmCoefficients c = film_coefficients(w, kz, film);
        CHECK(std::abs(c.ts - c.ts_through * std::exp(cplx(0, -1) * kz * film.thickness)) <
              1e-12 * std::abs(c.ts));
        CHECK(std::abs(c.tp - c.tp_through * std::exp(cplx(0, -1) * kz * film.thickness)) <
              1e-12 * std::abs(c.tp));
    }
}
