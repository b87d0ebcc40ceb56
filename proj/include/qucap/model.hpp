// model.hpp — Two-level system domain types: parameters, drive schedules,
// states, operators, and state-level observables. Basis ordering is (|e>, |g>)
// so that sigma_z = diag(+1, -1). Natural units, hbar = 1.

#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qucap {

using Complex = std::complex<double>;

// Thrown when a state fails its structural invariants (Hermiticity, trace,
// positivity) beyond the construction tolerances.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ----------------------------- Mat2 ----------------------------------------

// 2x2 complex matrix, row-major in the basis (|e>, |g>): [ee, eg, ge, gg].
struct Mat2 {
    std::array<Complex, 4> m{};

    Complex& operator()(int row, int col) { return m[2 * row + col]; }
    const Complex& operator()(int row, int col) const { return m[2 * row + col]; }

    Mat2 adjoint() const {
        return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }
    Complex trace() const { return m[0] + m[3]; }

    Mat2& operator+=(const Mat2& o) {
        for (int i = 0; i < 4; ++i) m[i] += o.m[i];
        return *this;
    }
    Mat2& operator-=(const Mat2& o) {
        for (int i = 0; i < 4; ++i) m[i] -= o.m[i];
        return *this;
    }
    Mat2& operator*=(Complex s) {
        for (auto& x : m) x *= s;
        return *this;
    }

    friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
    friend Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
    friend Mat2 operator*(Complex s, Mat2 a) { return a *= s; }
    friend Mat2 operator*(Mat2 a, Complex s) { return a *= s; }
    friend Mat2 operator*(double s, Mat2 a) { return a *= Complex(s, 0.0); }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return Mat2{{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
                     a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
    }

    // max elementwise |A - A†|
    double hermiticity_deviation() const;

    // Eigenvalues assuming Hermitian input, ascending.
    std::pair<double, double> hermitian_eigenvalues() const;

    static Mat2 zero() { return Mat2{}; }
    static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
};

inline Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }
inline Mat2 anticommutator(const Mat2& a, const Mat2& b) { return a * b + b * a; }

// Pauli operators in the (|e>, |g>) basis.
inline Mat2 pauli_z() { return Mat2{{1.0, 0.0, 0.0, -1.0}}; }
inline Mat2 pauli_x() { return Mat2{{0.0, 1.0, 1.0, 0.0}}; }
inline Mat2 sigma_plus() { return Mat2{{0.0, 1.0, 0.0, 0.0}}; }   // |e><g|
inline Mat2 sigma_minus() { return Mat2{{0.0, 0.0, 1.0, 0.0}}; }  // |g><e|

// ----------------------------- DriveSchedule --------------------------------

// Drive amplitude Omega(t): either constant or piecewise-constant with
// right-continuous segment lookup.
class DriveSchedule {
public:
    struct Segment {
        double t_start;
        double amplitude;
    };

    static DriveSchedule constant(double amplitude);
    // Segments must start at t = 0 with strictly increasing t_start and
    // non-negative amplitudes.
    static DriveSchedule piecewise(std::vector<Segment> segments);

    // Amplitude at time t >= 0; right-continuous at segment boundaries.
    double amplitude(double t) const;

    bool is_constant() const { return constant_; }
    double max_amplitude() const;
    const std::vector<Segment>& segments() const { return segments_; }

private:
    DriveSchedule(std::vector<Segment> segments, bool constant)
        : segments_(std::move(segments)), constant_(constant) {}

    std::vector<Segment> segments_;
    bool constant_;
};

// ----------------------------- SystemParams ---------------------------------

// Physical parameters: transition frequency omega0, drive schedule, dephasing
// rate gamma, relaxation rate kappa. All rates share angular-frequency units.
struct SystemParams {
    double omega0;
    DriveSchedule drive;
    double gamma;
    double kappa;

    SystemParams(double omega0_, DriveSchedule drive_, double gamma_ = 0.0, double kappa_ = 0.0);

    bool closed() const { return gamma == 0.0 && kappa == 0.0; }
};

// ----------------------------- states ---------------------------------------

class DensityMatrix;

// Pure state c_g|g> + c_e|e>. Construction renormalizes norm deviations up to
// 1e-9 and rejects anything larger.
class PureState {
public:
    PureState(Complex c_g, Complex c_e);

    static PureState ground() { return PureState(1.0, 0.0); }
    static PureState excited() { return PureState(0.0, 1.0); }
    static PureState plus();  // (|g> + |e>)/sqrt(2)

    Complex c_g() const { return c_g_; }
    Complex c_e() const { return c_e_; }
    double excited_population() const { return std::norm(c_e_); }

    DensityMatrix to_density_matrix() const;

private:
    Complex c_g_;
    Complex c_e_;
};

// Validated 2x2 density matrix. Construction symmetrizes Hermiticity
// deviations up to 1e-12, renormalizes trace deviations up to 1e-12, and
// requires both eigenvalues >= -1e-10.
class DensityMatrix {
public:
    explicit DensityMatrix(const Mat2& m);

    static DensityMatrix ground();
    static DensityMatrix excited();
    static DensityMatrix plus();
    static DensityMatrix maximally_mixed();

    const Mat2& matrix() const { return m_; }
    double rho_ee() const { return m_.m[0].real(); }
    double rho_gg() const { return m_.m[3].real(); }
    Complex rho_eg() const { return m_.m[1]; }

    std::pair<double, double> eigenvalues() const { return m_.hermitian_eigenvalues(); }

private:
    Mat2 m_;
};

// ----------------------------- observables ----------------------------------

// Per-sample observables. `power` is filled by trajectory assembly (centered
// differences of sampled energy); state-level construction leaves it at 0.
struct ObservableRecord {
    double p_e = 0.0;
    double energy = 0.0;
    double power = 0.0;
    Complex coherence{0.0, 0.0};
    double coherence_mag = 0.0;

    static ObservableRecord from_state(const DensityMatrix& rho, double omega0);
};

// ----------------------------- operations -----------------------------------

// H(t) = (omega0/2) sigma_z + Omega(t) sigma_x; real symmetric by construction.
Mat2 build_hamiltonian(const SystemParams& params, double t);

// Stored energy relative to the ground-state baseline: Tr[rho H0] + omega0/2,
// identically omega0 * rho_ee for unit-trace states.
double stored_energy_of_state(const DensityMatrix& rho, double omega0);

// Off-diagonal element rho_eg = <e|rho|g>.
Complex coherence_of_state(const DensityMatrix& rho);

}  // namespace qucap
