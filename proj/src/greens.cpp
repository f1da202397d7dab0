#include "entfilm/greens.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entfilm/errors.hpp"
#include "entfilm/quadrature.hpp"

namespace entfilm {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kTailFraction = 1e-14;
constexpr int kMaxTailExtensions = 24;

void check_geometry(const Geometry& g, const FilmStack& film) {
    g.validate();
    if (std::abs(film.thickness - g.thickness) > 1e-12 * std::max(g.thickness, g.z1))
        throw DomainError("film thickness does not match the geometry");
}

QuadratureSpec resolved(const QuadratureSpec& spec, double k0, double decay_length) {
    QuadratureSpec s = spec;
    if (s.abs_tol <= 0.0) s.abs_tol = 1e-12 * k0;
    if (s.kappa_max <= 0.0) s.kappa_max = k0 + 40.0 / decay_length;
    return s;
}

}  // namespace

std::string_view to_string(Orientation o) { return o == Orientation::X ? "x" : "z"; }

void Geometry::validate() const {
    if (!(z1 > 0.0)) throw DomainError("emitter distance z1 must be positive");
    if (!(thickness >= 0.0)) throw DomainError("film thickness must be non-negative");
}

cplx cross_integrand(Orientation o, const WeylPoint& p, double k0, const FilmStack& film,
                     const Geometry& geometry) {
    const double kappa = p.kappa;
    const cplx kz = p.kz_vac;
    const FilmCoefficients c = film_coefficients({kappa, k0}, kz, film);
    // exp(i kz (d + 2 z1)) t  ==  exp(2 i kz z1) t_through
    const cplx prefactor = kappa * kI * std::exp(2.0 * kI * kz * geometry.z1) / (2.0 * kz);
    const double k02 = k0 * k0;
    if (o == Orientation::Z) return prefactor * c.tp_through * (kappa * kappa / k02);
    return prefactor * 0.5 * (c.ts_through + c.tp_through * (kz * kz / k02));
}

cplx cross_integrand(Orientation o, double kappa, double k0, const FilmStack& film,
                     const Geometry& geometry) {
    return cross_integrand(o, WeylPoint{kappa, kz_vacuum({kappa, k0})}, k0, film, geometry);
}

cplx single_reflected_integrand(Orientation o, const WeylPoint& p, double k0,
                                const FilmStack& film, double z1) {
    const double kappa = p.kappa;
    const cplx kz = p.kz_vac;
    const FilmCoefficients c = film_coefficients({kappa, k0}, kz, film);
    const cplx prefactor = kappa * kI / (2.0 * kz) * std::exp(2.0 * kI * kz * z1);
    const double k02 = k0 * k0;
    if (o == Orientation::Z) return prefactor * (kappa * kappa / k02) * c.rp;
    return prefactor * 0.5 * (c.rs - c.rp * (kz * kz / k02));
}

cplx single_integrand(Orientation o, const WeylPoint& p, double k0, const FilmStack& film,
                      double z1) {
    const double kappa = p.kappa;
    const cplx kz = p.kz_vac;
    const double k02 = k0 * k0;
    const cplx prefactor = kappa * kI / (2.0 * kz);
    const cplx direct = o == Orientation::Z ? cplx(kappa * kappa / k02)
                                            : (k02 + kz * kz) / (2.0 * k02);
    return prefactor * direct + single_reflected_integrand(o, p, k0, film, z1);
}

cplx single_integrand(Orientation o, double kappa, double k0, const FilmStack& film, double z1) {
    return single_integrand(o, WeylPoint{kappa, kz_vacuum({kappa, k0})}, k0, film, z1);
}

WeylResult integrate_weyl(const WeylIntegrand& propagating, const WeylIntegrand& evanescent,
                          double k0, const QuadratureSpec& spec_in) {
    if (!(k0 > 0.0)) throw DomainError("k0 must be positive");
    const QuadratureSpec spec = resolved(spec_in, k0, 1.0 / k0);
    if (spec.kappa_max <= k0) throw DomainError("kappa_max must exceed k0");

    constexpr double two_pi = 2.0 * kPi;
    AdaptiveIntegrator integrator(spec.rel_tol, spec.abs_tol, spec.max_subdivisions);

    auto fail = [](const std::string& why, double err) -> ConvergenceError {
        return ConvergenceError("Weyl integral: " + why + " (error estimate " +
                                    std::to_string(err) + ")",
                                err);
    };

    if (propagating) {
        const int fn = integrator.add_function([&, k0](double theta) {
            const double c = std::cos(theta);
            return propagating(WeylPoint{k0 * std::sin(theta), cplx(k0 * c, 0.0)}) * (k0 * c) /
                   two_pi;
        });
        integrator.add_interval(fn, 0.0, kPi / 2.0, 4);
    }

    double kappa_max = spec.kappa_max;
    int evan_fn = -1;
    auto evan_at_u = [&, k0](double u) {
        const double s = std::sinh(u);
        return evanescent(WeylPoint{k0 * std::cosh(u), cplx(0.0, k0 * s)}) * (k0 * s) / two_pi;
    };
    if (evanescent) {
        evan_fn = integrator.add_function(evan_at_u);
        integrator.add_interval(evan_fn, 0.0, std::acosh(kappa_max / k0), 8);
    }

    AdaptiveIntegrator::Result r = integrator.run();
    if (!r.converged) throw fail("subdivision budget exhausted", r.error_estimate);

    if (evanescent) {
        for (int ext = 0;; ++ext) {
            const double u_max = std::acosh(kappa_max / k0);
            const cplx f_end = evanescent(WeylPoint{kappa_max, cplx(0.0, k0 * std::sinh(u_max))});
            const double bound = std::abs(f_end) * kappa_max / two_pi;
            if (bound <= kTailFraction * std::abs(r.value) || bound <= 1e-3 * spec.abs_tol) break;
            if (ext == kMaxTailExtensions) throw fail("integrand tail does not decay", bound);
            const double next = 2.0 * kappa_max;
            integrator.add_interval(evan_fn, u_max, std::acosh(next / k0), 4);
            kappa_max = next;
            r = integrator.run();
            if (!r.converged) throw fail("subdivision budget exhausted", r.error_estimate);
        }
    }

    if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
        throw fail("non-finite result", r.error_estimate);
    return {r.value, r.error_estimate, kappa_max, r.subdivisions};
}

WeylResult integrate_weyl(const WeylIntegrand& f, double k0, const QuadratureSpec& spec) {
    return integrate_weyl(f, f, k0, spec);
}

GreensValue g_cross(const Geometry& geometry, const FilmStack& film, double k0,
                    const QuadratureSpec& spec) {
    check_geometry(geometry, film);
    const double decay = std::min(2.0 * geometry.z1, geometry.separation());
    const QuadratureSpec s = resolved(spec, k0, decay);
    const Orientation o = geometry.orientation;
    const WeylIntegrand f = [&](const WeylPoint& p) {
        return cross_integrand(o, p, k0, film, geometry);
    };
    const WeylResult r = integrate_weyl(f, k0, s);
    return {r.value, GreensKind::CrossFilm, o, r.error_estimate};
}

GreensValue g_single(const Geometry& geometry, const FilmStack& film, double k0,
                     const QuadratureSpec& spec) {
    check_geometry(geometry, film);
    const double decay = std::min(2.0 * geometry.z1, geometry.separation());
    const QuadratureSpec s = resolved(spec, k0, decay);
    const Orientation o = geometry.orientation;
    const double z1 = geometry.z1;
    const WeylIntegrand full = [&](const WeylPoint& p) {
        return single_integrand(o, p, k0, film, z1);
    };
    // Above k0 the direct term is purely real and not integrable; drop it there.
    const WeylIntegrand reflected = [&](const WeylPoint& p) {
        return single_reflected_integrand(o, p, k0, film, z1);
    };
    const WeylResult r = integrate_weyl(full, reflected, k0, s);
    return {r.value, GreensKind::SinglePosition, o, r.error_estimate};
}

cplx g_vacuum_closed_form(Orientation o, double separation, double k0) {
    if (!(separation > 0.0)) throw DomainError("closed-form Green's function needs R > 0");
    const double x = k0 * separation;
    const cplx scalar = std::exp(kI * x) / (4.0 * kPi * separation);
    if (o == Orientation::Z) return scalar * (2.0 / (x * x) - 2.0 * kI / x);
    return scalar * (1.0 + kI / x - 1.0 / (x * x));
}

}  // namespace entfilm
