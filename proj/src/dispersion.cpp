#include "entfilm/dispersion.hpp"

#include <cmath>
#include <string>

#include "entfilm/errors.hpp"

namespace entfilm {

namespace {

constexpr double kTio2PoleUm2 = 0.0803;
constexpr double kConditionTolerance = 1e-6;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

cplx dielectric_of(const EmtMaterial& m, double wavelength_m) {
    if (m.eps_dielectric) return {*m.eps_dielectric, 0.0};
    return {tio2_permittivity(wavelength_m * 1e6), 0.0};
}

}  // namespace

double angular_frequency(double wavelength_m) {
    if (!(wavelength_m > 0.0)) throw DomainError("wavelength must be positive");
    return 2.0 * kPi * kSpeedOfLight / wavelength_m;
}

double wavelength_from_angular_frequency(double omega) {
    if (!(omega > 0.0)) throw DomainError("angular frequency must be positive");
    return 2.0 * kPi * kSpeedOfLight / omega;
}

void DrudeParams::validate() const {
    if (!(eps_inf >= 1.0)) throw DomainError("Drude eps_inf must be >= 1");
    if (!(omega_p > 0.0)) throw DomainError("Drude omega_p must be positive");
    if (!(tau > 0.0)) throw DomainError("Drude tau must be positive");
}

std::string_view to_string(BandKind kind) {
    switch (kind) {
        case BandKind::TypeI: return "type-I";
        case BandKind::TypeII: return "type-II";
        case BandKind::Dielectric: return "dielectric";
        case BandKind::Metallic: return "metallic";
    }
    return "?";
}

std::string_view to_string(SpecialKind kind) {
    switch (kind) {
        case SpecialKind::EnzPerp: return "enz";
        case SpecialKind::EnpPar: return "enp";
        case SpecialKind::SurfacePlasmon: return "sp";
    }
    return "?";
}

cplx drude_permittivity(double omega, const DrudeParams& p) {
    if (!(omega > 0.0)) throw DomainError("Drude model needs omega > 0");
    const cplx denom = omega * cplx(omega, 1.0 / p.tau);
    return p.eps_inf - p.omega_p * p.omega_p / denom;
}

double tio2_permittivity(double lambda_um) {
    const double l2 = lambda_um * lambda_um;
    if (!(l2 > kTio2PoleUm2))
        throw PoleError("TiO2 dispersion formula evaluated at or below its pole (lambda = " +
                        std::to_string(lambda_um) + " um)");
    return 5.913 + 0.2441 / (l2 - kTio2PoleUm2);
}

UniaxialMedium emt_permittivities(double f, cplx eps_m, cplx eps_d, double wavelength) {
    if (!(f >= 0.0 && f <= 1.0)) throw DomainError("fill fraction must lie in [0, 1]");
    const cplx denom = f * eps_d + (1.0 - f) * eps_m;
    if (denom == cplx(0.0, 0.0))
        throw PoleError("epsilon-near-pole: EMT eps_par denominator vanishes");
    return {f * eps_m + (1.0 - f) * eps_d, eps_m * eps_d / denom, wavelength};
}

BandKind classify_band(const UniaxialMedium& m) {
    const bool perp_pos = m.eps_perp.real() >= 0.0;
    const bool par_pos = m.eps_par.real() >= 0.0;
    if (perp_pos && par_pos) return BandKind::Dielectric;
    if (!perp_pos && !par_pos) return BandKind::Metallic;
    return perp_pos ? BandKind::TypeI : BandKind::TypeII;
}

UniaxialMedium medium_at(const MaterialModel& model, double wavelength_m) {
    return std::visit(
        overloaded{
            [&](const VacuumMaterial&) { return UniaxialMedium::isotropic(1.0, wavelength_m); },
            [&](const DrudeMaterial& m) {
                return UniaxialMedium::isotropic(
                    drude_permittivity(angular_frequency(wavelength_m), m.params), wavelength_m);
            },
            [&](const EmtMaterial& m) {
                const cplx eps_m = drude_permittivity(angular_frequency(wavelength_m), m.metal);
                return emt_permittivities(m.fill_fraction, eps_m, dielectric_of(m, wavelength_m),
                                          wavelength_m);
            },
        },
        model);
}

double special_condition(const MaterialModel& model, SpecialKind kind, double wavelength_m) {
    switch (kind) {
        case SpecialKind::EnzPerp:
            return medium_at(model, wavelength_m).eps_perp.real();
        case SpecialKind::EnpPar: {
            const auto* emt = std::get_if<EmtMaterial>(&model);
            if (!emt) throw UnsupportedError("epsilon-near-pole search needs an EMT material");
            const cplx eps_m = drude_permittivity(angular_frequency(wavelength_m), emt->metal);
            const cplx eps_d = dielectric_of(*emt, wavelength_m);
            const double f = emt->fill_fraction;
            return (f * eps_d + (1.0 - f) * eps_m).real();
        }
        case SpecialKind::SurfacePlasmon: {
            const UniaxialMedium m = medium_at(model, wavelength_m);
            if (!m.is_isotropic())
                throw UnsupportedError("surface-plasmon condition defined for isotropic media only");
            return m.eps_perp.real() + 1.0;
        }
    }
    throw UnsupportedError("unknown special wavelength kind");
}

double find_special_wavelength(const MaterialModel& model, SpecialKind kind,
                               WavelengthBracket bracket, double tolerance) {
    double lo = bracket.lo;
    double hi = bracket.hi;
    if (!(lo > 0.0 && hi > lo)) throw DomainError("wavelength bracket must be positive and increasing");
    double f_lo = special_condition(model, kind, lo);
    const double f_hi = special_condition(model, kind, hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw NotFoundError(std::string("no sign change of the ") + std::string(to_string(kind)) +
                            " condition in bracket");

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double f_mid = special_condition(model, kind, mid);
        if (f_mid == 0.0) return mid;
        if (hi - lo <= tolerance && std::abs(f_mid) < kConditionTolerance) return mid;
        if (mid <= lo || mid >= hi) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return mid;
}

}  // namespace entfilm
