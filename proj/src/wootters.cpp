#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "entfilm/dynamics.hpp"
#include "entfilm/errors.hpp"

namespace entfilm {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;
using RealMatrix8 = Eigen::Matrix<Real, 8, 8>;

constexpr double kStateTolerance = 1e-9;
constexpr double kImagTolerance = 1e-10;
constexpr double kNegativeClamp = 1e-12;

void check_state(const DensityMatrix& rho) {
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kStateTolerance) throw InvalidStateError("density matrix is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > kStateTolerance)
        throw InvalidStateError("density matrix trace differs from 1");
}

}  // namespace

double wootters_concurrence(const DensityMatrix& rho) {
    check_state(rho);

    // sigma_y (x) sigma_y is real: -1 on the anti-diagonal corners, +1 in the middle.
    constexpr std::array<int, 4> flip = {3, 2, 1, 0};
    constexpr std::array<int, 4> sign = {-1, 1, 1, -1};

    // rho and rho~ = Y rho^* Y in extended precision, split into real/imag parts.
    std::array<std::array<Real, 4>, 4> re{}, im{}, tre{}, tim{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            re[i][j] = rho(i, j).real();
            im[i][j] = rho(i, j).imag();
            const cplx v = rho(flip[i], flip[j]);
            const int s = sign[i] * sign[j];
            tre[i][j] = s * v.real();
            tim[i][j] = -s * v.imag();
        }
    }

    // rho rho~ embedded as the real 8x8 matrix [[A, -B], [B, A]]; each (real)
    // eigenvalue of the complex product shows up twice.
    RealMatrix8 m;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Real a = 0, b = 0;
            for (int k = 0; k < 4; ++k) {
                a += re[i][k] * tre[k][j] - im[i][k] * tim[k][j];
                b += re[i][k] * tim[k][j] + im[i][k] * tre[k][j];
            }
            m(i, j) = a;
            m(i + 4, j + 4) = a;
            m(i, j + 4) = -b;
            m(i + 4, j) = b;
        }
    }

    Eigen::EigenSolver<RealMatrix8> solver(m, false);
    if (solver.info() != Eigen::Success)
        throw InvalidStateError("eigenvalue solver failed on rho rho~");

    std::array<Real, 8> lambda;
    for (int i = 0; i < 8; ++i) {
        const auto ev = solver.eigenvalues()(i);
        if (abs(ev.imag()) > kImagTolerance)
            throw InvalidStateError("rho rho~ has a complex eigenvalue");
        lambda[static_cast<std::size_t>(i)] = ev.real();
    }
    std::sort(lambda.begin(), lambda.end(), [](const Real& x, const Real& y) { return x > y; });

    std::array<Real, 4> roots;
    for (int i = 0; i < 4; ++i) {
        Real l = lambda[static_cast<std::size_t>(2 * i)];
        if (l < 0) {
            if (l < -kNegativeClamp) throw InvalidStateError("rho rho~ has a negative eigenvalue");
            l = 0;
        }
        roots[static_cast<std::size_t>(i)] = sqrt(l);
    }
    const Real c = roots[0] - roots[1] - roots[2] - roots[3];
    return c > 0 ? static_cast<double>(c) : 0.0;
}

double wootters_concurrence(const TwoQubitState& state) {
    return wootters_concurrence(to_product_basis(state));
}

}  // namespace entfilm
