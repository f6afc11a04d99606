#include "lhm/master_equation.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "lhm/errors.hpp"
#include "lhm/log.hpp"

namespace lhm {
namespace {

// Row of vec(I)^T: picks the four populations out of vec(rho).
constexpr int kTraceIndices[4] = {vec_index(1, 1), vec_index(2, 2), vec_index(3, 3),
                                  vec_index(4, 4)};

complex vector_trace(const Vector16c& v)
{
    complex t = 0.0;
    for (int k : kTraceIndices) {
        t += v(k);
    }
    return t;
}

void check_integration_args(double t_final, double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InvalidParams("time step must be positive and finite");
    }
    if (!(t_final >= dt) || !std::isfinite(t_final)) {
        throw InvalidParams("t_final must be finite and at least one time step");
    }
}

}  // namespace

DensityMatrix DensityMatrix::ground_state(Level level)
{
    Matrix4c rho = Matrix4c::Zero();
    rho(level - 1, level - 1) = 1.0;
    return DensityMatrix(rho);
}

DensityMatrix DensityMatrix::from_vector(const Vector16c& v)
{
    return DensityMatrix(Eigen::Map<const Matrix4c>(v.data()));
}

Vector16c DensityMatrix::to_vector() const
{
    return Eigen::Map<const Vector16c>(rho_.data());
}

double DensityMatrix::hermiticity_error() const
{
    return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_error() const
{
    return std::abs(rho_.trace() - 1.0);
}

double DensityMatrix::min_eigenvalue() const
{
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(hermitized().matrix(),
                                                   Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::hermitized() const
{
    return DensityMatrix(Matrix4c(0.5 * (rho_ + rho_.adjoint())));
}

double GeneratorMatrix::trace_residual() const
{
    Eigen::Matrix<complex, 1, 16> row = Eigen::Matrix<complex, 1, 16>::Zero();
    for (int k : kTraceIndices) {
        row(k) = 1.0;
    }
    return (row * l_).cwiseAbs().maxCoeff();
}

Matrix4c GeneratorMatrix::apply(const Matrix4c& rho) const
{
    Vector16c v = Eigen::Map<const Vector16c>(rho.data());
    Vector16c dv = l_ * v;
    return Eigen::Map<const Matrix4c>(dv.data());
}

Matrix4c build_hamiltonian(const SystemParams& p)
{
    validate(p);
    Matrix4c h = Matrix4c::Zero();
    h(1, 1) = p.delta_c - p.delta_s;
    h(2, 2) = p.delta_c;
    h(3, 3) = p.delta_c - p.delta_s + p.delta_p;

    auto couple = [&h](Level a, Level b, double omega) {
        h(a - 1, b - 1) = -omega;
        h(b - 1, a - 1) = -omega;
    };
    couple(1, 3, p.omega_c);
    couple(2, 3, p.omega_s);
    couple(2, 4, p.omega_p);
    return h;
}

double coherence_detuning(const Matrix4c& h, Level j, Level k)
{
    return (h(k - 1, k - 1) - h(j - 1, j - 1)).real();
}

GeneratorMatrix build_generator(const SystemParams& p)
{
    const Matrix4c h = build_hamiltonian(p);
    const Matrix4c id = Matrix4c::Identity();

    // vec(A X B) = (B^T kron A) vec(X), so -i[H, rho] maps to
    // -i (I kron H - H^T kron I).
    Matrix16c l = Matrix16c::Zero();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            l.block<4, 4>(4 * a, 4 * b) += complex(0.0, -1.0) * (id(a, b) * h - h(b, a) * id);
        }
    }

    for (DecayChannel ch : kDecayChannels) {
        const double rate = p.decay_rate(ch.from, ch.to);
        const int src = vec_index(ch.from, ch.from);
        l(vec_index(ch.to, ch.to), src) += rate;
        l(src, src) -= rate;
    }

    double loss[5] = {};
    for (Level lvl = 1; lvl <= 4; ++lvl) {
        loss[lvl] = p.population_loss(lvl);
    }
    for (Level j = 1; j <= 4; ++j) {
        for (Level k = 1; k <= 4; ++k) {
            if (j == k) {
                continue;
            }
            const double width = p.dephasing_rate(j, k) + 0.5 * (loss[j] + loss[k]);
            l(vec_index(j, k), vec_index(j, k)) -= width;
        }
    }
    return GeneratorMatrix(l);
}

DensityMatrix steady_state(const GeneratorMatrix& gen)
{
    constexpr int kReplacedRow = vec_index(1, 1);

    Matrix16c a = gen.matrix();
    a.row(kReplacedRow).setZero();
    for (int k : kTraceIndices) {
        a(kReplacedRow, k) = 1.0;
    }
    Vector16c rhs = Vector16c::Zero();
    rhs(kReplacedRow) = 1.0;

    Eigen::FullPivLU<Matrix16c> lu(a);
    lu.setThreshold(1e-12);
    if (lu.rank() < 16) {
        std::ostringstream msg;
        msg << "steady state is not unique: constrained generator has rank " << lu.rank()
            << " of 16";
        throw DegenerateSteadyState(msg.str());
    }
    const Vector16c x = lu.solve(rhs);

    const double residual = (gen.matrix() * x).cwiseAbs().maxCoeff();
    if (!(residual < kSteadyStateTolerance)) {
        std::ostringstream msg;
        msg << "steady state residual " << residual << " exceeds " << kSteadyStateTolerance
            << " (ill-conditioned generator)";
        throw DegenerateSteadyState(msg.str());
    }
    return DensityMatrix::from_vector(x);
}

DensityMatrix time_evolve(const SystemParams& params, const DensityMatrix& rho0,
                          double t_final, double dt)
{
    return time_evolve(build_generator(params), rho0, t_final, dt);
}

DensityMatrix time_evolve(const GeneratorMatrix& gen, const DensityMatrix& rho0,
                          double t_final, double dt)
{
    check_integration_args(t_final, dt);
    const auto steps = static_cast<long long>(std::ceil(t_final / dt - 1e-9));
    const double h = t_final / static_cast<double>(steps);

    // For an autonomous linear system one RK4 step is v += D v with D the
    // degree-4 Taylor polynomial of h L minus the identity (Horner form).
    const Matrix16c hl = h * gen.matrix();
    const Matrix16c id = Matrix16c::Identity();
    Matrix16c increment = hl * (id + 0.5 * hl * (id + (1.0 / 3.0) * hl * (id + 0.25 * hl)));

    // vec(I)^T D vanishes exactly in exact arithmetic. Restoring it in the
    // rho_11 row, together with compensated accumulation of v, keeps rounding
    // from building up a systematic trace drift over millions of steps.
    for (int col = 0; col < 16; ++col) {
        complex others = 0.0;
        for (int k : kTraceIndices) {
            if (k != kTraceIndices[0]) {
                others += increment(k, col);
            }
        }
        increment(kTraceIndices[0], col) = -others;
    }

    Vector16c v = rho0.to_vector();
    Vector16c carry = Vector16c::Zero();
    const complex trace0 = vector_trace(v);
    constexpr long long kCheckEvery = 4096;
    constexpr double kDriftLimit = 1e-6;
    // Entries of a physical density matrix are bounded by one; runaway growth
    // means the step is outside the stability region.
    constexpr double kGrowthLimit = 1e3;

    Vector16c dv;
    Vector16c sum;
    for (long long i = 1; i <= steps; ++i) {
        dv.noalias() = increment * v;
        dv -= carry;
        sum = v + dv;
        carry = (sum - v) - dv;
        v = sum;
        if (i % kCheckEvery == 0 || i == steps) {
            const double drift = std::abs(vector_trace(v) - trace0);
            const double largest = v.cwiseAbs().maxCoeff();
            if (!(drift <= kDriftLimit) || !(largest <= kGrowthLimit)) {
                std::ostringstream msg;
                msg << "unstable integration (trace drift " << drift << ", largest entry "
                    << largest << ") after " << i
                    << " steps; retry with a smaller time step than " << h;
                throw IntegrationError(msg.str());
            }
        }
    }

    const DensityMatrix raw = DensityMatrix::from_vector(v);
    const double drift = std::abs(vector_trace(v) - trace0);
    if (drift > 1e-10) {
        std::ostringstream msg;
        msg << "time_evolve: trace drift " << drift << " over " << steps << " steps";
        log(LogLevel::warning, msg.str());
    }
    std::ostringstream msg;
    msg << "time_evolve: removed asymmetry " << raw.hermiticity_error();
    log(LogLevel::debug, msg.str());
    return raw.hermitized();
}

}  // namespace lhm
