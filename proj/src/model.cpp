// model.cpp — construction/validation of domain types and state observables.

#include "qucap/model.hpp"

#include <algorithm>
#include <cmath>

namespace qucap {

namespace {
constexpr double kPureNormRepair = 1e-9;
constexpr double kHermitianRepair = 1e-12;
constexpr double kTraceRepair = 1e-12;
constexpr double kEigenvalueFloor = -1e-10;
}  // namespace

double Mat2::hermiticity_deviation() const {
    const double d_diag = std::max(std::abs(m[0].imag()), std::abs(m[3].imag()));
    const double d_off = std::abs(m[1] - std::conj(m[2]));
    return std::max(2.0 * d_diag, d_off);
}

std::pair<double, double> Mat2::hermitian_eigenvalues() const {
    const double a = m[0].real();
    const double d = m[3].real();
    const double half_sum = 0.5 * (a + d);
    const double half_diff = 0.5 * (a - d);
    const double disc = std::sqrt(half_diff * half_diff + std::norm(m[1]));
    return {half_sum - disc, half_sum + disc};
}

// ----------------------------- DriveSchedule --------------------------------

DriveSchedule DriveSchedule::constant(double amplitude) {
    if (!(amplitude >= 0.0)) {
        throw std::invalid_argument("DriveSchedule: constant amplitude must be >= 0");
    }
    return DriveSchedule({{0.0, amplitude}}, true);
}

DriveSchedule DriveSchedule::piecewise(std::vector<Segment> segments) {
    if (segments.empty()) {
        throw std::invalid_argument("DriveSchedule: piecewise schedule needs at least one segment");
    }
    if (segments.front().t_start != 0.0) {
        throw std::invalid_argument("DriveSchedule: first segment must start at t = 0");
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (!(segments[i].amplitude >= 0.0)) {
            throw std::invalid_argument("DriveSchedule: segment amplitude must be >= 0");
        }
        if (i > 0 && !(segments[i].t_start > segments[i - 1].t_start)) {
            throw std::invalid_argument("DriveSchedule: segment starts must be strictly increasing");
        }
    }
    return DriveSchedule(std::move(segments), false);
}

double DriveSchedule::amplitude(double t) const {
    if (!(t >= 0.0)) {
        throw std::domain_error("DriveSchedule: time must be >= 0");
    }
    if (constant_) return segments_.front().amplitude;
    // last segment with t_start <= t
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const Segment& s) { return v < s.t_start; });
    return std::prev(it)->amplitude;
}

double DriveSchedule::max_amplitude() const {
    double mx = 0.0;
    for (const auto& s : segments_) mx = std::max(mx, s.amplitude);
    return mx;
}

// ----------------------------- SystemParams ---------------------------------

SystemParams::SystemParams(double omega0_, DriveSchedule drive_, double gamma_, double kappa_)
    : omega0(omega0_), drive(std::move(drive_)), gamma(gamma_), kappa(kappa_) {
    if (!(omega0 >= 0.0)) throw std::invalid_argument("SystemParams: omega0 must be >= 0");
    if (!(gamma >= 0.0)) throw std::invalid_argument("SystemParams: gamma must be >= 0");
    if (!(kappa >= 0.0)) throw std::invalid_argument("SystemParams: kappa must be >= 0");
}

// ----------------------------- PureState ------------------------------------

PureState::PureState(Complex c_g, Complex c_e) : c_g_(c_g), c_e_(c_e) {
    const double norm = std::sqrt(std::norm(c_g_) + std::norm(c_e_));
    if (std::abs(norm - 1.0) > kPureNormRepair) {
        throw InvariantError("PureState: norm deviates from 1 by more than 1e-9");
    }
    c_g_ /= norm;
    c_e_ /= norm;
}

PureState PureState::plus() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return PureState(inv_sqrt2, inv_sqrt2);
}

DensityMatrix PureState::to_density_matrix() const {
    Mat2 rho;
    rho.m[0] = c_e_ * std::conj(c_e_);
    rho.m[1] = c_e_ * std::conj(c_g_);
    rho.m[2] = c_g_ * std::conj(c_e_);
    rho.m[3] = c_g_ * std::conj(c_g_);
    return DensityMatrix(rho);
}

// ----------------------------- DensityMatrix --------------------------------

DensityMatrix::DensityMatrix(const Mat2& m) : m_(m) {
    if (m_.hermiticity_deviation() > kHermitianRepair) {
        throw InvariantError("DensityMatrix: Hermiticity deviation exceeds 1e-12");
    }
    // symmetrize: (rho + rho†)/2 has exactly real diagonal and conjugate off-diagonals
    const Complex off = 0.5 * (m_.m[1] + std::conj(m_.m[2]));
    m_.m[0] = Complex(m_.m[0].real(), 0.0);
    m_.m[3] = Complex(m_.m[3].real(), 0.0);
    m_.m[1] = off;
    m_.m[2] = std::conj(off);

    const double tr = m_.m[0].real() + m_.m[3].real();
    if (std::abs(tr - 1.0) > kTraceRepair) {
        throw InvariantError("DensityMatrix: trace deviates from 1 by more than 1e-12");
    }
    m_ *= Complex(1.0 / tr, 0.0);

    const auto [lo, hi] = m_.hermitian_eigenvalues();
    (void)hi;
    if (lo < kEigenvalueFloor) {
        throw InvariantError("DensityMatrix: negative eigenvalue below -1e-10");
    }
}

DensityMatrix DensityMatrix::ground() { return DensityMatrix(Mat2{{0.0, 0.0, 0.0, 1.0}}); }
DensityMatrix DensityMatrix::excited() { return DensityMatrix(Mat2{{1.0, 0.0, 0.0, 0.0}}); }
DensityMatrix DensityMatrix::plus() { return DensityMatrix(Mat2{{0.5, 0.5, 0.5, 0.5}}); }
DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(Mat2{{0.5, 0.0, 0.0, 0.5}}); }

// ----------------------------- observables ----------------------------------

ObservableRecord ObservableRecord::from_state(const DensityMatrix& rho, double omega0) {
    ObservableRecord rec;
    rec.p_e = rho.rho_ee();
    rec.energy = omega0 * rec.p_e;
    rec.coherence = rho.rho_eg();
    rec.coherence_mag = std::abs(rec.coherence);
    if (rec.p_e < -1e-10 || rec.p_e > 1.0 + 1e-10) {
        throw InvariantError("ObservableRecord: p_e outside [0, 1]");
    }
    const double pe_clipped = std::clamp(rec.p_e, 0.0, 1.0);
    if (rec.coherence_mag > std::sqrt(pe_clipped * (1.0 - pe_clipped)) + 1e-10) {
        throw InvariantError("ObservableRecord: coherence exceeds positivity bound");
    }
    return rec;
}

// ----------------------------- operations -----------------------------------

Mat2 build_hamiltonian(const SystemParams& params, double t) {
    if (!(t >= 0.0)) {
        throw std::domain_error("build_hamiltonian: time must be >= 0");
    }
    const double omega = params.drive.amplitude(t);
    return Mat2{{0.5 * params.omega0, omega, omega, -0.5 * params.omega0}};
}

double stored_energy_of_state(const DensityMatrix& rho, double omega0) {
    if (!(omega0 >= 0.0)) {
        throw std::domain_error("stored_energy_of_state: omega0 must be >= 0");
    }
    return omega0 * rho.rho_ee();
}

Complex coherence_of_state(const DensityMatrix& rho) { return rho.rho_eg(); }

}  // namespace qucap
