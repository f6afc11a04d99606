#include <doctest.h>

#include <cmath>
#include <random>

#include "lhm/checks.hpp"
#include "lhm/errors.hpp"
#include "lhm/master_equation.hpp"
#include "lhm/reference_equations.hpp"

using namespace lhm;

namespace {

Matrix4c random_density(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Matrix4c a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = {g(rng), g(rng)};
    Matrix4c rho = a * a.adjoint();
    return rho / rho.trace();
}

SystemParams exchange_only(double r)
{
    SystemParams p = zeroed(canonical_params());
    p.decay[{1, 2}] = r;
    p.decay[{2, 1}] = r;
    return p;
}

double max_abs(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("hamiltonian: zero drive gives the zero matrix")
{
    CHECK(max_abs(build_hamiltonian(zeroed(canonical_params()))) == 0.0);
}

TEST_CASE("hamiltonian: canonical couplings and diagonal")
{
    SystemParams p = canonical_params();
    p.delta_p = 2.0;
    const Matrix4c h = build_hamiltonian(p);
    CHECK(h(0, 2) == complex(-1.8));
    CHECK(h(1, 2) == complex(-3.8));
    CHECK(h(1, 3) == complex(-0.01));
    CHECK(h(0, 0) == complex(0.0));
    CHECK(h(1, 1) == complex(-1e-4));
    CHECK(h(2, 2) == complex(0.0));
    CHECK(h(3, 3) == complex(2.0 - 1e-4));
    CHECK(max_abs(h - h.adjoint()) == 0.0);
}

TEST_CASE("hamiltonian: coherence detunings compose over random draws")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const SystemParams p = random_params(rng);
        const Matrix4c h = build_hamiltonian(p);
        CHECK(coherence_detuning(h, 1, 3) == doctest::Approx(p.delta_c).epsilon(1e-14));
        CHECK(coherence_detuning(h, 2, 3) == doctest::Approx(p.delta_s).epsilon(1e-14));
        CHECK(coherence_detuning(h, 2, 4) == doctest::Approx(p.delta_p).epsilon(1e-14));
        CHECK(coherence_detuning(h, 1, 2) == doctest::Approx(p.delta_c - p.delta_s).epsilon(1e-14));
        CHECK(coherence_detuning(h, 3, 4) == doctest::Approx(p.delta_p - p.delta_s).epsilon(1e-14));
        const double d14 = coherence_detuning(h, 1, 4);
        CHECK(std::abs(d14 - (coherence_detuning(h, 1, 2) + coherence_detuning(h, 2, 4))) < 1e-12);
        CHECK(std::abs(d14 - (p.delta_c - p.delta_s + p.delta_p)) < 1e-12);
    }
}

TEST_CASE("hamiltonian: non-finite input is rejected")
{
    SystemParams p = canonical_params();
    p.delta_c = std::nan("");
    CHECK_THROWS_AS(build_hamiltonian(p), InvalidParams);
    p = canonical_params();
    p.omega_s = INFINITY;
    CHECK_THROWS_AS(build_hamiltonian(p), InvalidParams);
}

TEST_CASE("generator: empty system is the zero matrix")
{
    const GeneratorMatrix l = build_generator(zeroed(canonical_params()));
    CHECK(l.matrix().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("generator: missing channel is an error")
{
    SystemParams p = canonical_params();
    p.decay.erase({3, 4});
    CHECK_THROWS_AS(build_generator(p), InvalidParams);
    p = canonical_params();
    p.dephasing.erase({2, 4});
    CHECK_THROWS_AS(build_generator(p), InvalidParams);
    p = canonical_params();
    p.decay[{4, 1}] = -1e-3;
    CHECK_THROWS_AS(build_generator(p), InvalidParams);
}

TEST_CASE("generator: trace conservation, hermiticity and written-out equations")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const SystemParams p = random_params(rng);
        const GeneratorMatrix l = build_generator(p);
        CHECK(l.trace_residual() < 1e-12);
        const Matrix4c rho = random_density(rng);
        const Matrix4c drho = l.apply(rho);
        CHECK(max_abs(drho - drho.adjoint()) < 1e-12);
        CHECK(std::abs(drho.trace()) < 1e-12);
        CHECK(max_abs(drho - reference_rhs(p, rho)) < 1e-12);
    }
}

TEST_CASE("generator: vectorization layout")
{
    CHECK(vec_index(1, 1) == 0);
    CHECK(vec_index(4, 1) == 3);
    CHECK(vec_index(1, 2) == 4);
    CHECK(vec_index(4, 4) == 15);
    std::mt19937_64 rng(3);
    const Matrix4c rho = random_density(rng);
    const Vector16c v = DensityMatrix(rho).to_vector();
    CHECK(v(vec_index(2, 3)) == rho(1, 2));
    CHECK(DensityMatrix::from_vector(v).matrix() == rho);
}

TEST_CASE("steady state: exchange alone leaves levels 3 and 4 undetermined")
{
    CHECK_THROWS_AS(steady_state(build_generator(exchange_only(0.3))), DegenerateSteadyState);
}

TEST_CASE("steady state: symmetric exchange with levels 3 and 4 drained")
{
    SystemParams p = exchange_only(0.3);
    p.decay[{3, 1}] = 0.2;
    p.decay[{4, 2}] = 0.1;
    const DensityMatrix rho = steady_state(build_generator(p));
    Matrix4c expected = Matrix4c::Zero();
    expected(0, 0) = 0.5;
    expected(1, 1) = 0.5;
    CHECK(max_abs(rho.matrix() - expected) < 1e-14);
}

TEST_CASE("steady state: decay network without fields empties into levels 1 and 2")
{
    SystemParams p = zeroed(canonical_params());
    const SystemParams c = canonical_params();
    p.decay = c.decay;
    p.dephasing = c.dephasing;
    const DensityMatrix rho = steady_state(build_generator(p));
    CHECK(rho(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rho(2, 2).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(rho(3, 3)) < 1e-12);
    CHECK(std::abs(rho(4, 4)) < 1e-12);
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k)
            if (j != k) CHECK(std::abs(rho(j, k)) == 0.0);

    const DensityMatrix evolved = time_evolve(p, DensityMatrix::ground_state(4), 2e5, 1.0);
    CHECK(max_abs(evolved.matrix() - rho.matrix()) < 1e-6);
}

TEST_CASE("steady state: singular systems are reported")
{
    CHECK_THROWS_AS(steady_state(build_generator(zeroed(canonical_params()))),
                    DegenerateSteadyState);
    CHECK_THROWS_AS(steady_state(GeneratorMatrix()), DegenerateSteadyState);
}

TEST_CASE("steady state: density-matrix invariants over random parameters")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        SystemParams p = random_params(rng);
        for (auto& [ch, r] : p.decay) r += 1e-3;
        const GeneratorMatrix l = build_generator(p);
        const DensityMatrix rho = steady_state(l);
        CHECK(rho.hermiticity_error() < 1e-12);
        CHECK(rho.trace_error() < 1e-12);
        CHECK(rho.min_eigenvalue() > -1e-8);
        CHECK((l.matrix() * rho.to_vector()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("time evolution: zero generator leaves the state unchanged")
{
    std::mt19937_64 rng(2);
    const Matrix4c rho0 = random_density(rng);
    const DensityMatrix out = time_evolve(GeneratorMatrix(), DensityMatrix(rho0), 12.5, 0.1);
    CHECK(max_abs(out.matrix() - rho0) < 1e-15);
}

TEST_CASE("time evolution: exchange relaxes exponentially")
{
    const double r = 0.7;
    const SystemParams p = exchange_only(r);
    for (double t : {0.3, 1.0, 2.5}) {
        const DensityMatrix out = time_evolve(p, DensityMatrix::ground_state(1), t, 1e-3);
        const double expected = 0.5 + 0.5 * std::exp(-2.0 * r * t);
        CHECK(std::abs(out(1, 1).real() - expected) < 1e-10);
        CHECK(std::abs(out(2, 2).real() - (1.0 - expected)) < 1e-10);
    }
    const DensityMatrix late = time_evolve(p, DensityMatrix::ground_state(1), 40.0, 1e-2);
    CHECK(std::abs(late(1, 1).real() - 0.5) < 1e-6);
    CHECK(std::abs(late(2, 2).real() - 0.5) < 1e-6);
}

TEST_CASE("time evolution: unstable step is reported")
{
    CHECK_THROWS_AS(time_evolve(exchange_only(1.0), DensityMatrix::ground_state(1), 500.0, 5.0),
                    IntegrationError);
}

TEST_CASE("time evolution: distinct initial states converge to the steady state")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 3; ++i) {
        SystemParams p = random_params(rng);
        for (auto& [ch, r] : p.decay) r += 0.02;
        const DensityMatrix expected = steady_state(build_generator(p));
        const DensityMatrix a = time_evolve(p, DensityMatrix(random_density(rng)), 1500.0, 0.01);
        const DensityMatrix b = time_evolve(p, DensityMatrix(random_density(rng)), 1500.0, 0.01);
        CHECK(max_abs(a.matrix() - b.matrix()) < 1e-5);
        CHECK(max_abs(a.matrix() - expected.matrix()) < 1e-5);
    }
}

TEST_CASE("weak probe: rho_24 scales linearly with the probe")
{
    const CheckResult r = check_weak_probe_linearity();
    INFO(r.detail);
    CHECK(r.pass);
}
