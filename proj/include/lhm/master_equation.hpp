#pragma once

#include <complex>

#include <Eigen/Dense>

#include "lhm/system_params.hpp"

namespace lhm {

using complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<complex, 4, 4>;
using Matrix16c = Eigen::Matrix<complex, 16, 16>;
using Vector16c = Eigen::Matrix<complex, 16, 1>;

/// Index of element (row, col) in the column-major vectorization, with
/// levels numbered 1..4: k = 4 (col - 1) + (row - 1).
constexpr int vec_index(Level row, Level col)
{
    return 4 * (col - 1) + (row - 1);
}

/// 4x4 density matrix of the four-level atom. Element access uses level
/// labels 1..4.
class DensityMatrix {
public:
    DensityMatrix() : rho_(Matrix4c::Zero()) {}
    explicit DensityMatrix(const Matrix4c& rho) : rho_(rho) {}

    static DensityMatrix ground_state(Level level = 1);
    static DensityMatrix from_vector(const Vector16c& v);

    complex operator()(Level row, Level col) const { return rho_(row - 1, col - 1); }

    const Matrix4c& matrix() const { return rho_; }
    Vector16c to_vector() const;

    /// max |rho - rho^dagger|
    double hermiticity_error() const;
    /// |Tr rho - 1|
    double trace_error() const;
    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;

    /// (rho + rho^dagger) / 2
    DensityMatrix hermitized() const;

private:
    Matrix4c rho_;
};

/// Linear generator acting on the vectorized density matrix,
/// d vec(rho)/dt = L vec(rho), in units of the rate scale gamma.
class GeneratorMatrix {
public:
    GeneratorMatrix() : l_(Matrix16c::Zero()) {}
    explicit GeneratorMatrix(const Matrix16c& l) : l_(l) {}

    const Matrix16c& matrix() const { return l_; }

    /// max |vec(I)^T L|: zero for a trace-preserving generator.
    double trace_residual() const;

    /// Applies L to a density matrix and returns d rho / dt.
    Matrix4c apply(const Matrix4c& rho) const;

private:
    Matrix16c l_;
};

/// Rotating-frame Hamiltonian H / hbar in units of gamma.
///
/// Diagonal (0, dc - ds, dc, dc - ds + dp); off-diagonal couplings
/// -omega_c on 1-3, -omega_s on 2-3, -omega_p on 2-4.
Matrix4c build_hamiltonian(const SystemParams& params);

/// Detuning seen by coherence rho_jk in the rotating frame, H_kk - H_jj.
double coherence_detuning(const Matrix4c& hamiltonian, Level j, Level k);

/// Coherent part plus population transfer plus dephasing; trace preserving.
GeneratorMatrix build_generator(const SystemParams& params);

/// Residual tolerance a steady state must meet.
inline constexpr double kSteadyStateTolerance = 1e-10;

/// Unique stationary state of `l`.
///
/// Replaces the rho_11 equation with the trace-one constraint and solves
/// the square system. Throws DegenerateSteadyState when the system is
/// singular, and Error when the dropped row is not satisfied afterwards.
DensityMatrix steady_state(const GeneratorMatrix& l);

/// Fixed-step classical Runge-Kutta integration of d vec(rho)/dt = L vec(rho)
/// from `rho0` over `t_final` (units 1/gamma).
///
/// The step is adjusted down so that an integer number of steps lands on
/// t_final exactly. Throws IntegrationError when the trace drifts by more
/// than 1e-6. The returned matrix is hermitized; the removed asymmetry is
/// reported through the debug log.
DensityMatrix time_evolve(const SystemParams& params, const DensityMatrix& rho0,
                          double t_final, double dt);

/// Same integration with an already built generator.
DensityMatrix time_evolve(const GeneratorMatrix& l, const DensityMatrix& rho0,
                          double t_final, double dt);

}  // namespace lhm
