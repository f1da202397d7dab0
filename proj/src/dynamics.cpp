#include "entfilm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entfilm/errors.hpp"

namespace entfilm {

namespace {

constexpr double kDegenerateFraction = 1e-8;

// (exp(-2 delta t) - 1) / delta, with its small-delta expansion once
// |delta| < 1e-8 gamma_s.
double feed_factor(double delta, double gamma_s, double t) {
    if (std::abs(delta) < kDegenerateFraction * gamma_s) return -2.0 * t * (1.0 - delta * t);
    return std::expm1(-2.0 * delta * t) / delta;
}

}  // namespace

void RateTriple::validate() const {
    if (!(gamma_s > 0.0))
        throw PhysicalityError("single-emitter rate must be positive, got " +
                               std::to_string(gamma_s));
    if (!(std::abs(gamma_c) <= gamma_s * (1.0 + 1e-9)))
        throw PhysicalityError("collective rate exceeds single rate: |gamma_c| = " +
                               std::to_string(std::abs(gamma_c)) +
                               ", gamma_s = " + std::to_string(gamma_s));
    if (!std::isfinite(omega_c)) throw PhysicalityError("collective shift is not finite");
}

RateTriple rates_from_greens(const GreensValue& single, const GreensValue& cross, double k0) {
    if (!(k0 > 0.0)) throw DomainError("k0 must be positive");
    if (single.kind != GreensKind::SinglePosition || cross.kind != GreensKind::CrossFilm)
        throw DomainError("rates_from_greens expects (single-position, cross-film) values");
    if (single.orientation != cross.orientation)
        throw DomainError("Green's function orientations differ");
    const double scale = 6.0 * kPi / k0;
    RateTriple r{scale * single.value.imag(), scale * cross.value.imag(),
                 -scale * cross.value.real()};
    r.validate();
    return r;
}

TwoQubitState TwoQubitState::first_excited() {
    TwoQubitState s;
    s.rho_ss = 0.5;
    s.rho_aa = 0.5;
    s.rho_as = 0.5;
    return s;
}

TwoQubitState TwoQubitState::symmetric_bell() {
    TwoQubitState s;
    s.rho_ss = 1.0;
    return s;
}

DensityMatrix to_product_basis(const TwoQubitState& st) {
    // Collective-basis matrix, order e, s, a, g.
    DensityMatrix coll = DensityMatrix::Zero();
    coll(0, 0) = st.rho_ee;
    coll(1, 1) = st.rho_ss;
    coll(2, 2) = st.rho_aa;
    coll(3, 3) = st.rho_gg;
    coll(2, 1) = st.rho_as;
    coll(1, 2) = std::conj(st.rho_as);
    coll(0, 3) = st.rho_eg;
    coll(3, 0) = std::conj(st.rho_eg);

    const double h = 1.0 / std::sqrt(2.0);
    DensityMatrix u = DensityMatrix::Zero();
    u(0, 0) = 1.0;
    u(1, 1) = h;
    u(1, 2) = h;
    u(2, 1) = h;
    u(2, 2) = -h;
    u(3, 3) = 1.0;
    return u * coll * u.adjoint();
}

TwoQubitState evolve(const RateTriple& r, const TwoQubitState& rho0, double t) {
    if (!(t >= 0.0)) throw DomainError("evolution time must be non-negative");
    if (std::abs(rho0.trace() - 1.0) > 1e-9)
        throw InvalidStateError("initial state trace differs from 1");

    const double gs = r.gamma_s;
    const double gc = r.gamma_c;
    const double decay_s = std::exp(-2.0 * (gs + gc) * t);
    const double decay_a = std::exp(-2.0 * (gs - gc) * t);

    TwoQubitState out;
    out.rho_ee = rho0.rho_ee * std::exp(-4.0 * gs * t);
    out.rho_eg = rho0.rho_eg * std::exp(-2.0 * gs * t);
    out.rho_as = rho0.rho_as * std::exp(cplx(-2.0 * gs * t, 2.0 * r.omega_c * t));
    // e^{-4 gs t} - e^{-2(gs -+ gc) t} == e^{-2(gs -+ gc) t} expm1(-2 (gs +- gc) t)
    out.rho_aa = rho0.rho_aa * decay_a -
                 (gs - gc) * rho0.rho_ee * decay_a * feed_factor(gs + gc, gs, t);
    out.rho_ss = rho0.rho_ss * decay_s -
                 (gs + gc) * rho0.rho_ee * decay_s * feed_factor(gs - gc, gs, t);
    out.rho_gg = rho0.trace() - out.rho_ee - out.rho_ss - out.rho_aa;
    return out;
}

ConcurrencePoint concurrence_closed_form(const RateTriple& r, double t) {
    if (!(t >= 0.0)) throw DomainError("time must be non-negative");
    const double sh = std::sinh(2.0 * r.gamma_c * t);
    const double sn = std::sin(2.0 * r.omega_c * t);
    double c = std::exp(-2.0 * r.gamma_s * t) * std::sqrt(sh * sh + sn * sn);
    // Large |gamma_c| t overflows sinh before the damping factor catches up.
    if (!std::isfinite(c)) {
        const double x = 2.0 * (std::abs(r.gamma_c) - r.gamma_s) * t;
        c = 0.5 * std::exp(x);
    }
    return {t, std::clamp(c, 0.0, 1.0)};
}

ConcurrencePoint concurrence_asymptotic(const RateTriple& r, double t) {
    if (!(t >= 0.0)) throw DomainError("time must be non-negative");
    return {t, 0.5 * std::exp(2.0 * (std::abs(r.gamma_c) - r.gamma_s) * t)};
}

double transmission_proxy(const RateTriple& r) {
    return r.gamma_c * r.gamma_c + r.omega_c * r.omega_c;
}

ConcurrencePoint peak_concurrence(const RateTriple& r) {
    if (!(r.gamma_s > 0.0)) throw PhysicalityError("peak concurrence needs gamma_s > 0");
    constexpr double kScaledHorizon = 40.0;
    const double horizon = kScaledHorizon / r.gamma_s;
    // At least ~16 samples per half period of sin(2 Omega_c t).
    const double periods = std::abs(r.omega_c) * horizon / kPi;
    const int n = static_cast<int>(std::clamp(32.0 * periods, 4000.0, 2.0e6));
    const double step = horizon / n;

    ConcurrencePoint best{0.0, 0.0};
    int best_i = 0;
    for (int i = 1; i <= n; ++i) {
        const ConcurrencePoint p = concurrence_closed_form(r, i * step);
        if (p.c > best.c) {
            best = p;
            best_i = i;
        }
    }
    if (best_i == 0) return best;

    double a = std::max(0.0, (best_i - 1) * step);
    double b = std::min(horizon, (best_i + 1) * step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = concurrence_closed_form(r, x1).c;
    double f2 = concurrence_closed_form(r, x2).c;
    for (int it = 0; it < 80 && (b - a) > 1e-15 * horizon; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = concurrence_closed_form(r, x2).c;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = concurrence_closed_form(r, x1).c;
        }
    }
    const ConcurrencePoint polished = f1 > f2 ? ConcurrencePoint{x1, f1} : ConcurrencePoint{x2, f2};
    return polished.c > best.c ? polished : best;
}

}  // namespace entfilm
