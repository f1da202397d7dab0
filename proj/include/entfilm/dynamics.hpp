#pragma once

#include <Eigen/Core>

#include "entfilm/greens.hpp"

namespace entfilm {

// Single-emitter decay rate, collective decay rate and collective level shift,
// all in units of the free-space rate gamma0.
struct RateTriple {
    double gamma_s = 1.0;
    double gamma_c = 0.0;
    double omega_c = 0.0;

    // gamma_s > 0 and |gamma_c| <= gamma_s (1 + 1e-9); throws PhysicalityError.
    void validate() const;
};

// gamma/gamma0 = (6 pi / k0) Im G,  Omega/gamma0 = -(6 pi / k0) Re G.
RateTriple rates_from_greens(const GreensValue& single, const GreensValue& cross, double k0);

// Density matrix in the collective basis {|e>, |s>, |a>, |g>} with
// |s>,|a> = (|e1 g2> +- |g1 e2>)/sqrt 2. Only the elements coupled by the
// collective-decay master equation are stored; the others stay zero.
// rho_eg is kept in the frame rotating at the transition frequency.
struct TwoQubitState {
    double rho_ee = 0.0;
    double rho_ss = 0.0;
    double rho_aa = 0.0;
    double rho_gg = 0.0;
    cplx rho_as{0.0, 0.0};
    cplx rho_eg{0.0, 0.0};

    double trace() const { return rho_ee + rho_ss + rho_aa + rho_gg; }

    // |e1 g2>: first emitter excited, second in the ground state.
    static TwoQubitState first_excited();
    // |s><s|, a maximally entangled state.
    static TwoQubitState symmetric_bell();
};

using DensityMatrix = Eigen::Matrix<cplx, 4, 4>;

// Product basis order: |e1e2>, |e1g2>, |g1e2>, |g1g2>.
DensityMatrix to_product_basis(const TwoQubitState& state);

// Analytic solution of the master equation for the symmetric configuration.
// When gamma_s -+ gamma_c nearly vanishes the feeding terms use their analytic
// limit. Throws DomainError for t < 0.
TwoQubitState evolve(const RateTriple& rates, const TwoQubitState& rho0, double t);

struct ConcurrencePoint {
    double t;
    double c;
};

// Concurrence for the |e1 g2> initial state:
// exp(-2 gamma_s t) sqrt(sinh^2(2 gamma_c t) + sin^2(2 Omega_c t)), clamped to [0, 1].
ConcurrencePoint concurrence_closed_form(const RateTriple& rates, double t);

// Wootters concurrence from the eigenvalues of rho * sigma_yy rho^* sigma_yy.
// The eigenvalues are computed in 50-digit arithmetic so that near-zero ones keep
// their accuracy after the square root. Throws InvalidStateError if rho is not
// Hermitian or its trace differs from 1 by more than 1e-9.
double wootters_concurrence(const DensityMatrix& rho_product);
double wootters_concurrence(const TwoQubitState& state);

// Long-time form 0.5 exp(2 (|gamma_c| - gamma_s) t); only meaningful for |gamma_c| t >> 1.
ConcurrencePoint concurrence_asymptotic(const RateTriple& rates, double t);

// gamma_c^2 + Omega_c^2, proportional to |G(r1, r2)|^2.
double transmission_proxy(const RateTriple& rates);

// Maximum over t >= 0 of the closed-form concurrence. Scans gamma_s t in [0, 40]
// on a fine grid and polishes the best sample with a golden-section search.
ConcurrencePoint peak_concurrence(const RateTriple& rates);

}  // namespace entfilm
