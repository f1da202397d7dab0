#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <variant>

namespace entfilm {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

double angular_frequency(double wavelength_m);
double wavelength_from_angular_frequency(double omega);

struct DrudeParams {
    double eps_inf = 3.7;
    double omega_p = 1.4e16;  // rad/s
    double tau = 0.45e-14;    // s

    // Throws DomainError on eps_inf < 1, omega_p <= 0 or tau <= 0.
    void validate() const;
};

// Permittivity pair of a medium whose optical axis is the surface normal (z).
// eps_perp acts on the in-plane field components, eps_par on E_z.
struct UniaxialMedium {
    cplx eps_perp{1.0, 0.0};
    cplx eps_par{1.0, 0.0};
    double wavelength = 0.0;  // m, informational

    static UniaxialMedium isotropic(cplx eps, double wavelength = 0.0) {
        return {eps, eps, wavelength};
    }
    bool is_isotropic() const { return eps_perp == eps_par; }
    bool is_passive() const { return eps_perp.imag() >= 0.0 && eps_par.imag() >= 0.0; }
};

enum class BandKind { TypeI, TypeII, Dielectric, Metallic };

std::string_view to_string(BandKind kind);

// eps_inf - omega_p^2 / (omega (omega + i/tau)); throws DomainError for omega <= 0.
cplx drude_permittivity(double omega, const DrudeParams& params);

// Sellmeier-type fit for TiO2 in the visible, wavelength in micrometres.
// Throws PoleError when lambda^2 <= 0.0803.
double tio2_permittivity(double lambda_um);

// Effective medium of a metal/dielectric multilayer with metal fill fraction f.
// eps_perp is the arithmetic mean, eps_par the harmonic one. An exactly vanishing
// denominator of eps_par is the epsilon-near-pole condition and throws PoleError.
UniaxialMedium emt_permittivities(double fill_fraction, cplx eps_metal, cplx eps_dielectric,
                                  double wavelength = 0.0);

// Exactly zero real parts count as positive, so the partition is total.
BandKind classify_band(const UniaxialMedium& medium);

// Material models a film can be built from.
struct VacuumMaterial {};

struct DrudeMaterial {
    DrudeParams params;
};

struct EmtMaterial {
    double fill_fraction = 0.35;
    DrudeParams metal;
    // Constant dielectric permittivity; TiO2 dispersion when empty.
    std::optional<double> eps_dielectric;
};

using MaterialModel = std::variant<VacuumMaterial, DrudeMaterial, EmtMaterial>;

UniaxialMedium medium_at(const MaterialModel& model, double wavelength_m);

enum class SpecialKind { EnzPerp, EnpPar, SurfacePlasmon };

std::string_view to_string(SpecialKind kind);

struct WavelengthBracket {
    double lo;  // m
    double hi;  // m
};

// Real-valued function whose sign change marks the special wavelength:
//   EnzPerp         Re(eps_perp)
//   EnpPar          Re(f eps_d + (1 - f) eps_m)   (EMT only)
//   SurfacePlasmon  Re(eps) + 1                    (isotropic only)
double special_condition(const MaterialModel& model, SpecialKind kind, double wavelength_m);

// Bisection on the bracket. Stops once the bracket is narrower than `tolerance`
// and |condition| < 1e-6, or the bracket cannot shrink further.
// Throws NotFoundError without a sign change, UnsupportedError when the
// condition does not apply to the model.
double find_special_wavelength(const MaterialModel& model, SpecialKind kind,
                               WavelengthBracket bracket, double tolerance = 0.1e-9);

}  // namespace entfilm
