#include "entfilm/layer_optics.hpp"

#include <cmath>
#include <string>

#include "entfilm/errors.hpp"

namespace entfilm {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx checked_ratio(cplx num, cplx den, const char* what, double kappa) {
    if (den == cplx(0.0, 0.0))
        throw PoleError(std::string(what) + ": vanishing denominator at kappa = " +
                            std::to_string(kappa),
                        kappa);
    return num / den;
}

bool is_vacuum(const UniaxialMedium& m) {
    return m.eps_perp == cplx(1.0, 0.0) && m.eps_par == cplx(1.0, 0.0);
}

struct FilmWavenumbers {
    cplx ko;
    cplx ke;
};

FilmWavenumbers film_wavenumbers(TransverseWave w, cplx kz_vac, const UniaxialMedium& m) {
    if (is_vacuum(m)) return {kz_vac, kz_vac};
    return {kz_ordinary(w, m.eps_perp), kz_extraordinary(w, m)};
}

// exp(z) - 1 without cancellation for small |z|.
cplx expm1(cplx z) {
    const double half_sin = std::sin(0.5 * z.imag());
    return {std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * half_sin * half_sin,
            std::exp(z.real()) * std::sin(z.imag())};
}

// Both slab coefficients share (a + b)^2 - (a - b)^2 E with E = exp(2 i kf d),
// written as 4ab - (a - b)^2 (E - 1) so it stays accurate as kf -> 0.
// a is the film mode wavenumber, b the matching vacuum-side quantity.
cplx slab_denominator(cplx a, cplx b, cplx em1) {
    const cplx diff = a - b;
    return 4.0 * a * b - diff * diff * em1;
}

// Transmission without the exp(-i kz_vac d) factor.
cplx slab_transmission_through(cplx kf, cplx eta_kz, double d, double kappa, const char* what) {
    const cplx em1 = expm1(2.0 * kI * kf * d);
    return checked_ratio(4.0 * kf * eta_kz * std::exp(kI * kf * d),
                         slab_denominator(kf, eta_kz, em1), what, kappa);
}

// R (1 - E) / (1 - R^2 E) with R = (b - kf) / (b + kf).
cplx slab_reflection(cplx kf, cplx b, double d, double kappa, const char* what) {
    const cplx em1 = expm1(2.0 * kI * kf * d);
    return checked_ratio(-(b - kf) * (b + kf) * em1, slab_denominator(kf, b, em1), what, kappa);
}

cplx reflection_s(cplx kz_vac, cplx ko, double kappa) {
    return checked_ratio(kz_vac - ko, kz_vac + ko, "interface R_s", kappa);
}

cplx reflection_p(cplx kz_vac, cplx ke, cplx eps_perp, double kappa) {
    return checked_ratio(kz_vac * eps_perp - ke, kz_vac * eps_perp + ke, "interface R_p", kappa);
}

}  // namespace

cplx branch_sqrt(cplx z) {
    cplx root = std::sqrt(z);
    if (root.imag() < 0.0 || (root.imag() == 0.0 && root.real() < 0.0)) root = -root;
    return root;
}

cplx kz_vacuum(TransverseWave w) {
    return branch_sqrt(cplx((w.k0 - w.kappa) * (w.k0 + w.kappa), 0.0));
}

cplx kz_ordinary(TransverseWave w, cplx eps_perp) {
    return branch_sqrt(w.k0 * w.k0 * eps_perp - w.kappa * w.kappa);
}

cplx kz_extraordinary(TransverseWave w, const UniaxialMedium& m) {
    if (m.eps_par == cplx(0.0, 0.0))
        throw PoleError("extraordinary wavenumber: eps_par = 0", w.kappa);
    return branch_sqrt(w.k0 * w.k0 * m.eps_perp - w.kappa * w.kappa * (m.eps_perp / m.eps_par));
}

cplx interface_reflection(Polarization pol, TransverseWave w, const UniaxialMedium& m) {
    const cplx kz = kz_vacuum(w);
    const FilmWavenumbers k = film_wavenumbers(w, kz, m);
    return pol == Polarization::S ? reflection_s(kz, k.ko, w.kappa)
                                  : reflection_p(kz, k.ke, m.eps_perp, w.kappa);
}

FilmCoefficients film_coefficients(TransverseWave w, cplx kz_vac, const FilmStack& film) {
    const UniaxialMedium& m = film.medium;
    const double d = film.thickness;
    const FilmWavenumbers k = film_wavenumbers(w, kz_vac, m);

    FilmCoefficients c;
    c.ts_through = slab_transmission_through(k.ko, kz_vac, d, w.kappa, "film t_s");
    // TM admittance of the film is ke / eps_perp, as in R_p. Weighting kz_vac by eps_par
    // instead breaks |t|^2 + |r|^2 = 1 for lossless anisotropic films.
    c.tp_through = slab_transmission_through(k.ke, m.eps_perp * kz_vac, d, w.kappa, "film t_p");
    const cplx back_phase = std::exp(-kI * kz_vac * d);
    c.ts = c.ts_through * back_phase;
    c.tp = c.tp_through * back_phase;
    c.rs = slab_reflection(k.ko, kz_vac, d, w.kappa, "film r_s");
    c.rp = slab_reflection(k.ke, m.eps_perp * kz_vac, d, w.kappa, "film r_p");
    return c;
}

cplx film_transmission(Polarization pol, TransverseWave w, const FilmStack& film) {
    const FilmCoefficients c = film_coefficients(w, kz_vacuum(w), film);
    return pol == Polarization::S ? c.ts : c.tp;
}

cplx film_reflection(Polarization pol, TransverseWave w, const FilmStack& film) {
    const FilmCoefficients c = film_coefficients(w, kz_vacuum(w), film);
    return pol == Polarization::S ? c.rs : c.rp;
}

}  // namespace entfilm
