// analytic.hpp — Closed-form constant-drive formulas: Rabi oscillation,
// stored energy, quantum capacitance (dE/dOmega), power, peak structure,
// weak-drive limits, and dephasing-damped approximations.

#pragma once

#include <stdexcept>

namespace qucap::analytic {

struct ConstantDriveParams {
    double omega0;  // transition frequency, >= 0
    double omega;   // constant drive amplitude, >= 0

    ConstantDriveParams(double omega0_, double omega_) : omega0(omega0_), omega(omega_) {
        if (!(omega0 >= 0.0)) throw std::invalid_argument("ConstantDriveParams: omega0 must be >= 0");
        if (!(omega >= 0.0)) throw std::invalid_argument("ConstantDriveParams: omega must be >= 0");
    }
};

// Generalized Rabi frequency sqrt(Omega^2 + omega0^2/4).
double rabi_frequency(const ConstantDriveParams& p);

// Excited-state occupation (Omega^2/Omega_R^2) sin^2(Omega_R t); 0 when Omega_R = 0.
double excited_population(const ConstantDriveParams& p, double t);

// Stored energy omega0 * excited_population.
double stored_energy(const ConstantDriveParams& p, double t);

// dE/dOmega at fixed t:
//   omega0 [2 Omega (Omega_R^2 - Omega^2)/Omega_R^4] sin^2(Omega_R t)
// + omega0 [Omega^3 t / Omega_R^3] sin(2 Omega_R t); 0 when Omega_R = 0.
double quantum_capacitance(const ConstantDriveParams& p, double t);

// Weak-drive limit (4 Omega^2/omega0) sin^2(omega0 t / 2). Caller owns regime
// validity (Omega << omega0); omega0 = 0 is a domain error.
double weak_drive_energy(const ConstantDriveParams& p, double t);

// Weak-drive limit (8 Omega/omega0) sin^2(omega0 t / 2); omega0 = 0 is a domain error.
double weak_drive_capacitance(const ConstantDriveParams& p, double t);

// dE/dt = omega0 (Omega^2/Omega_R) sin(2 Omega_R t); positive while charging.
double instantaneous_power(const ConstantDriveParams& p, double t);

// omega0 Omega^2/Omega_R; 0 when Omega_R = 0.
double max_power(const ConstantDriveParams& p);

// omega0 Omega^2/Omega_R^2; 0 when Omega_R = 0. Never exceeds omega0.
double max_energy(const ConstantDriveParams& p);

// Time of the first stored-energy maximum, pi/(2 Omega_R). Domain error when
// Omega_R = 0 (no charging occurs).
double charging_time(const ConstantDriveParams& p);

// Dephasing-damped approximations: the coherent formula scaled by e^(-2 gamma t).
double damped_energy(const ConstantDriveParams& p, double gamma, double t);
double damped_capacitance(const ConstantDriveParams& p, double gamma, double t);

// e^(-2 gamma t) dE/dt - 2 gamma E(t) e^(-2 gamma t): coherent exchange plus
// irreversible degradation.
double damped_power(const ConstantDriveParams& p, double gamma, double t);

}  // namespace qucap::analytic
