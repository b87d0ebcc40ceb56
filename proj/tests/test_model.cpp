// test_model.cpp — domain types, operator construction, state observables.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qucap/model.hpp"

using namespace qucap;

namespace {

// Random density matrix via a Bloch vector inside the unit ball:
// rho = (I + r . sigma)/2 is Hermitian, unit trace, PSD for |r| <= 1.
DensityMatrix random_density(std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double x, y, z;
    do {
        x = uni(rng);
        y = uni(rng);
        z = uni(rng);
    } while (x * x + y * y + z * z > 0.999 * 0.999);
    Mat2 m;
    m.m[0] = 0.5 * (1.0 + z);
    m.m[3] = 0.5 * (1.0 - z);
    m.m[1] = Complex(0.5 * x, -0.5 * y);
    m.m[2] = std::conj(m.m[1]);
    return DensityMatrix(m);
}

SystemParams closed_params(double omega0, double omega) {
    return SystemParams(omega0, DriveSchedule::constant(omega));
}

}  // namespace

TEST_CASE("build_hamiltonian assembles (omega0/2) sigma_z + Omega sigma_x") {
    const Mat2 h1 = build_hamiltonian(closed_params(2.0, 0.0), 0.0);
    CHECK(h1.m[0] == Complex(1.0));
    CHECK(h1.m[1] == Complex(0.0));
    CHECK(h1.m[2] == Complex(0.0));
    CHECK(h1.m[3] == Complex(-1.0));

    const Mat2 h2 = build_hamiltonian(closed_params(0.0, 1.0), 0.0);
    CHECK(h2.m[0] == Complex(0.0));
    CHECK(h2.m[1] == Complex(1.0));
    CHECK(h2.m[2] == Complex(1.0));
    CHECK(h2.m[3] == Complex(0.0));

    const Mat2 h3 = build_hamiltonian(closed_params(8.0, 3.0), 0.0);
    CHECK(h3.m[0] == Complex(4.0));
    CHECK(h3.m[1] == Complex(3.0));
    CHECK(h3.m[2] == Complex(3.0));
    CHECK(h3.m[3] == Complex(-4.0));
}

TEST_CASE("build_hamiltonian rejects negative time") {
    CHECK_THROWS_AS(build_hamiltonian(closed_params(1.0, 1.0), -0.1), std::domain_error);
}

TEST_CASE("hamiltonian equals its own conjugate transpose exactly") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const Mat2 h = build_hamiltonian(closed_params(uni(rng), uni(rng)), uni(rng));
        const Mat2 hdag = h.adjoint();
        for (int k = 0; k < 4; ++k) CHECK(h.m[k] == hdag.m[k]);
    }
}

TEST_CASE("stored energy: ground 0, excited omega0, maximally mixed omega0/2") {
    CHECK(stored_energy_of_state(DensityMatrix::ground(), 8.0) == 0.0);
    CHECK(stored_energy_of_state(DensityMatrix::excited(), 8.0) == 8.0);
    CHECK(stored_energy_of_state(DensityMatrix::maximally_mixed(), 8.0) == 4.0);
}

TEST_CASE("stored energy matches the trace-form definition Tr[rho H0] - E0") {
    std::mt19937 rng(11);
    for (int i = 0; i < 500; ++i) {
        const auto rho = random_density(rng);
        const double omega0 = 5.0;
        const Mat2 h0{{0.5 * omega0, 0.0, 0.0, -0.5 * omega0}};
        const double trace_form = (rho.matrix() * h0).trace().real() + 0.5 * omega0;
        CHECK(std::abs(stored_energy_of_state(rho, omega0) - trace_form) <= 1e-11);
    }
}

TEST_CASE("stored energy is linear in the state") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> mix(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const auto a = random_density(rng);
        const auto b = random_density(rng);
        const double alpha = mix(rng);
        const Mat2 combined = alpha * a.matrix() + (1.0 - alpha) * b.matrix();
        const DensityMatrix mixed(combined);
        const double lhs = stored_energy_of_state(mixed, 3.0);
        const double rhs = alpha * stored_energy_of_state(a, 3.0) +
                           (1.0 - alpha) * stored_energy_of_state(b, 3.0);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("stored energy rejects negative omega0") {
    CHECK_THROWS_AS(stored_energy_of_state(DensityMatrix::ground(), -1.0), std::domain_error);
}

TEST_CASE("coherence: diagonal states 0, plus state 0.5, pure product c_e c_g*") {
    CHECK(coherence_of_state(DensityMatrix::ground()) == Complex(0.0));
    CHECK(coherence_of_state(DensityMatrix::plus()) == Complex(0.5));
    const PureState psi(0.8, 0.6);
    CHECK(coherence_of_state(psi.to_density_matrix()).real() == doctest::Approx(0.48));
    CHECK(coherence_of_state(psi.to_density_matrix()).imag() == doctest::Approx(0.0));
}

TEST_CASE("coherence magnitude bounded by sqrt(rho_ee rho_gg)") {
    std::mt19937 rng(17);
    for (int i = 0; i < 500; ++i) {
        const auto rho = random_density(rng);
        const double bound = std::sqrt(rho.rho_ee() * rho.rho_gg());
        CHECK(std::abs(coherence_of_state(rho)) <= bound + 1e-12);
    }
}

TEST_CASE("pure state construction normalizes small deviations, rejects large") {
    const double bump = 1.0 + 4e-10;
    const PureState nudged(bump, 0.0);
    CHECK(std::norm(nudged.c_g()) + std::norm(nudged.c_e()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(PureState(1.1, 0.0), InvariantError);
    CHECK_THROWS_AS(PureState(0.5, 0.5), InvariantError);
}

TEST_CASE("density matrix construction enforces invariants") {
    // Hermiticity violation beyond 1e-12
    const Mat2 bad_herm{{0.5, Complex(0.2, 0.0), Complex(0.2 + 1e-6, 0.0), 0.5}};
    CHECK_THROWS_AS(DensityMatrix{bad_herm}, InvariantError);

    // trace away from 1
    const Mat2 bad_trace{{0.6, 0.0, 0.0, 0.5}};
    CHECK_THROWS_AS(DensityMatrix{bad_trace}, InvariantError);

    // negative eigenvalue
    const Mat2 bad_psd{{-0.1, 0.0, 0.0, 1.1}};
    CHECK_THROWS_AS(DensityMatrix{bad_psd}, InvariantError);

    // coherence exceeding positivity (eigenvalue goes negative)
    const Mat2 bad_coh{{0.5, 0.6, 0.6, 0.5}};
    CHECK_THROWS_AS(DensityMatrix{bad_coh}, InvariantError);

    // tiny anti-Hermitian part is symmetrized away
    Mat2 tiny{{0.5, Complex(0.25, 1e-13), Complex(0.25, -1.5e-13), 0.5}};
    const DensityMatrix repaired(tiny);
    CHECK(repaired.matrix().m[1] == std::conj(repaired.matrix().m[2]));
    CHECK(repaired.matrix().hermiticity_deviation() == 0.0);

    // trace drift within 1e-12 is renormalized
    Mat2 drifted{{0.5 + 5e-13, 0.0, 0.0, 0.5}};
    const DensityMatrix renormed(drifted);
    CHECK(renormed.rho_ee() + renormed.rho_gg() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("drive schedule: constant") {
    const auto drive = DriveSchedule::constant(2.5);
    CHECK(drive.is_constant());
    CHECK(drive.amplitude(0.0) == 2.5);
    CHECK(drive.amplitude(123.0) == 2.5);
    CHECK(drive.max_amplitude() == 2.5);
    CHECK_THROWS_AS(DriveSchedule::constant(-1.0), std::invalid_argument);
}

TEST_CASE("drive schedule: piecewise right-continuous lookup") {
    const auto drive = DriveSchedule::piecewise({{0.0, 1.0}, {2.0, 3.0}, {5.0, 0.5}});
    CHECK_FALSE(drive.is_constant());
    CHECK(drive.amplitude(0.0) == 1.0);
    CHECK(drive.amplitude(1.999999) == 1.0);
    CHECK(drive.amplitude(2.0) == 3.0);
    CHECK(drive.amplitude(4.9) == 3.0);
    CHECK(drive.amplitude(5.0) == 0.5);
    CHECK(drive.amplitude(100.0) == 0.5);
    CHECK(drive.max_amplitude() == 3.0);
    CHECK_THROWS_AS(drive.amplitude(-1.0), std::domain_error);
}

TEST_CASE("drive schedule: piecewise validation") {
    CHECK_THROWS_AS(DriveSchedule::piecewise({}), std::invalid_argument);
    CHECK_THROWS_AS(DriveSchedule::piecewise({{1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(DriveSchedule::piecewise({{0.0, 1.0}, {0.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(DriveSchedule::piecewise({{0.0, 1.0}, {2.0, -1.0}}), std::invalid_argument);
}

TEST_CASE("system params reject negative rates") {
    CHECK_THROWS_AS(SystemParams(-1.0, DriveSchedule::constant(0.0)), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1.0, DriveSchedule::constant(0.0), -0.1), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1.0, DriveSchedule::constant(0.0), 0.0, -0.1),
                    std::invalid_argument);
    const SystemParams ok(0.0, DriveSchedule::constant(5.0));  // omega0 = 0 is allowed
    CHECK(ok.closed());
}

TEST_CASE("observable record: plus state saturates the coherence bound") {
    const auto rec = ObservableRecord::from_state(DensityMatrix::plus(), 8.0);
    CHECK(rec.p_e == doctest::Approx(0.5));
    CHECK(rec.energy == doctest::Approx(4.0));
    CHECK(rec.coherence_mag == doctest::Approx(0.5));
    CHECK(rec.coherence_mag <= std::sqrt(rec.p_e * (1.0 - rec.p_e)) + 1e-10);
}
