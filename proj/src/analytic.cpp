// analytic.cpp — constant-drive closed forms.

#include "qucap/analytic.hpp"

#include <cmath>
#include <numbers>

namespace qucap::analytic {

namespace {

void require_time(double t) {
    if (!(t >= 0.0)) throw std::domain_error("analytic: time must be >= 0");
}

void require_rate(double gamma) {
    if (!(gamma >= 0.0)) throw std::domain_error("analytic: gamma must be >= 0");
}

}  // namespace

double rabi_frequency(const ConstantDriveParams& p) {
    return std::sqrt(p.omega * p.omega + 0.25 * p.omega0 * p.omega0);
}

double excited_population(const ConstantDriveParams& p, double t) {
    require_time(t);
    const double wr = rabi_frequency(p);
    if (wr == 0.0) return 0.0;
    const double s = std::sin(wr * t);
    return (p.omega * p.omega) / (wr * wr) * s * s;
}

double stored_energy(const ConstantDriveParams& p, double t) {
    require_time(t);
    return p.omega0 * excited_population(p, t);
}

double quantum_capacitance(const ConstantDriveParams& p, double t) {
    require_time(t);
    const double wr = rabi_frequency(p);
    if (wr == 0.0) return 0.0;
    const double wr2 = wr * wr;
    const double s = std::sin(wr * t);
    const double amplitude_term =
        p.omega0 * (2.0 * p.omega * (wr2 - p.omega * p.omega) / (wr2 * wr2)) * s * s;
    const double phase_term =
        p.omega0 * (p.omega * p.omega * p.omega * t / (wr2 * wr)) * std::sin(2.0 * wr * t);
    return amplitude_term + phase_term;
}

double weak_drive_energy(const ConstantDriveParams& p, double t) {
    require_time(t);
    if (p.omega0 == 0.0) throw std::domain_error("weak_drive_energy: omega0 must be > 0");
    const double s = std::sin(0.5 * p.omega0 * t);
    return 4.0 * p.omega * p.omega / p.omega0 * s * s;
}

double weak_drive_capacitance(const ConstantDriveParams& p, double t) {
    require_time(t);
    if (p.omega0 == 0.0) throw std::domain_error("weak_drive_capacitance: omega0 must be > 0");
    const double s = std::sin(0.5 * p.omega0 * t);
    return 8.0 * p.omega / p.omega0 * s * s;
}

double instantaneous_power(const ConstantDriveParams& p, double t) {
    require_time(t);
    const double wr = rabi_frequency(p);
    if (wr == 0.0) return 0.0;
    return p.omega0 * p.omega * p.omega / wr * std::sin(2.0 * wr * t);
}

double max_power(const ConstantDriveParams& p) {
    const double wr = rabi_frequency(p);
    if (wr == 0.0) return 0.0;
    return p.omega0 * p.omega * p.omega / wr;
}

double max_energy(const ConstantDriveParams& p) {
    const double wr = rabi_frequency(p);
    if (wr == 0.0) return 0.0;
    return p.omega0 * p.omega * p.omega / (wr * wr);
}

double charging_time(const ConstantDriveParams& p) {
    const double wr = rabi_frequency(p);
    if (wr == 0.0) {
        throw std::domain_error("charging_time: undefined when omega0 = omega = 0");
    }
    return 0.5 * std::numbers::pi / wr;
}

double damped_energy(const ConstantDriveParams& p, double gamma, double t) {
    require_rate(gamma);
    require_time(t);
    return stored_energy(p, t) * std::exp(-2.0 * gamma * t);
}

double damped_capacitance(const ConstantDriveParams& p, double gamma, double t) {
    require_rate(gamma);
    require_time(t);
    return quantum_capacitance(p, t) * std::exp(-2.0 * gamma * t);
}

double damped_power(const ConstantDriveParams& p, double gamma, double t) {
    require_rate(gamma);
    require_time(t);
    const double envelope = std::exp(-2.0 * gamma * t);
    return envelope * instantaneous_power(p, t) - 2.0 * gamma * stored_energy(p, t) * envelope;
}

}  // namespace qucap::analytic
