#pragma once

#include "entfilm/dispersion.hpp"

namespace entfilm {

// In-plane wavenumber magnitude and vacuum wavenumber omega/c, both in 1/m.
struct TransverseWave {
    double kappa;
    double k0;
};

// Uniaxial film of thickness d embedded in vacuum, optical axis along the normal.
struct FilmStack {
    UniaxialMedium medium;
    double thickness = 0.0;  // m
};

enum class Polarization { S, P };

// Square root on the branch Im >= 0 (Re >= 0 when the root is real).
cplx branch_sqrt(cplx z);

cplx kz_vacuum(TransverseWave w);
cplx kz_ordinary(TransverseWave w, cplx eps_perp);
// Throws PoleError when eps_par == 0.
cplx kz_extraordinary(TransverseWave w, const UniaxialMedium& medium);

// Single vacuum/medium interface, seen from the vacuum side.
cplx interface_reflection(Polarization pol, TransverseWave w, const UniaxialMedium& medium);

// Slab coefficients. The transmission carries the factor exp(-i kz_vac d),
// so a film of zero thickness gives t = 1, r = 0.
cplx film_transmission(Polarization pol, TransverseWave w, const FilmStack& film);
cplx film_reflection(Polarization pol, TransverseWave w, const FilmStack& film);

// All four coefficients at one transverse wavenumber. `kz_vac` is taken as
// given so callers that parametrise the Weyl integral can pass it exactly.
// The `through` transmissions are t * exp(i kz_vac d), i.e. without the
// vacuum phase bookkeeping; they stay finite for evanescent kz_vac and thick films.
struct FilmCoefficients {
    cplx ts;
    cplx tp;
    cplx rs;
    cplx rp;
    cplx ts_through;
    cplx tp_through;
};

FilmCoefficients film_coefficients(TransverseWave w, cplx kz_vac, const FilmStack& film);

}  // namespace entfilm
