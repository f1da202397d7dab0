#pragma once

#include <functional>
#include <string_view>

#include "entfilm/layer_optics.hpp"

namespace entfilm {

enum class Orientation { X, Z };

std::string_view to_string(Orientation o);

// Mirror-symmetric pair of emitters on the film axis: the excited one at
// z = -z1 below the film (which spans 0 <= z <= d), its partner at z2 = d + z1.
struct Geometry {
    double z1 = 10e-9;        // m, distance of each emitter from its film face
    double thickness = 0.0;   // m
    Orientation orientation = Orientation::X;

    double z2() const { return thickness + z1; }
    double separation() const { return thickness + 2.0 * z1; }
    // Throws DomainError unless z1 > 0 and thickness >= 0.
    void validate() const;
};

enum class GreensKind { CrossFilm, SinglePosition };

// Diagonal (xx or zz) component of the dyadic Green's function, 1/m.
struct GreensValue {
    cplx value;
    GreensKind kind;
    Orientation orientation;
    double error_estimate = 0.0;
};

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;     // 1/m; <= 0 selects 1e-12 * k0
    double kappa_max = 0.0;   // 1/m; <= 0 selects k0 + 40 / decay length
    int max_subdivisions = 4000;
};

// Point of the Weyl integral. kz_vac is supplied alongside kappa so that the
// integrand never recomputes sqrt(k0^2 - kappa^2) near the branch point.
struct WeylPoint {
    double kappa;
    cplx kz_vac;
};

// Integrand per unit kappa, Jacobian kappa included.
using WeylIntegrand = std::function<cplx(const WeylPoint&)>;

cplx cross_integrand(Orientation o, const WeylPoint& p, double k0, const FilmStack& film,
                     const Geometry& geometry);
cplx cross_integrand(Orientation o, double kappa, double k0, const FilmStack& film,
                     const Geometry& geometry);

// Direct plus reflected field at the emitter.
cplx single_integrand(Orientation o, const WeylPoint& p, double k0, const FilmStack& film,
                      double z1);
cplx single_integrand(Orientation o, double kappa, double k0, const FilmStack& film, double z1);

// Reflected part only.
cplx single_reflected_integrand(Orientation o, const WeylPoint& p, double k0,
                                const FilmStack& film, double z1);

struct WeylResult {
    cplx value;
    double error_estimate = 0.0;
    double kappa_max = 0.0;  // final truncation point after tail extensions
    int subdivisions = 0;
};

// Approximates int_0^inf dkappa/(2 pi) f(kappa). The propagating range [0, k0]
// is mapped by kappa = k0 sin(theta), the evanescent range [k0, kappa_max] by
// kappa = k0 cosh(u); both remove the 1/kz_vac singularity. `evanescent` may
// differ from `propagating` when a term has to be left out above k0.
// kappa_max is doubled until |f(kappa_max)| kappa_max / 2pi drops below 1e-14 of
// the accumulated magnitude. Throws ConvergenceError when the subdivision budget
// runs out or the tail never decays.
WeylResult integrate_weyl(const WeylIntegrand& propagating, const WeylIntegrand& evanescent,
                          double k0, const QuadratureSpec& spec);
WeylResult integrate_weyl(const WeylIntegrand& f, double k0, const QuadratureSpec& spec);

// Green's function between the two emitters across the film.
// film.thickness must equal geometry.thickness.
GreensValue g_cross(const Geometry& geometry, const FilmStack& film, double k0,
                    const QuadratureSpec& spec = {});

// Green's function at the excited emitter. The imaginary part is complete; the
// real part carries only the film-reflected contribution, since the direct
// free-space self term has a divergent real part (absorbed in the bare frequency).
GreensValue g_single(const Geometry& geometry, const FilmStack& film, double k0,
                     const QuadratureSpec& spec = {});

// Free-space xx / zz component for two points separated by R along z.
// Throws DomainError for R <= 0.
cplx g_vacuum_closed_form(Orientation o, double separation, double k0);

}  // namespace entfilm
