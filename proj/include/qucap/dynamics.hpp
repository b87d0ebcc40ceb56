// dynamics.hpp — Numerical time evolution: closed-system Schrodinger
// propagation and open-system Lindblad propagation (dephasing + relaxation)
// under arbitrary drive schedules, with an adaptive embedded Runge-Kutta
// integrator (Dormand-Prince 5(4), PI step control).

#pragma once

#include <array>
#include <span>
#include <variant>
#include <vector>

#include "qucap/model.hpp"

namespace qucap::dynamics {

// ----------------------------- options --------------------------------------

struct SolverOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    // 0 = derive 0.05 / max(Omega_R, gamma, kappa, 2*pi/t_final) at solve time.
    double max_step = 0.0;
    // 0 = derive pi / (40 * Omega_R_effective) at solve time.
    double sample_dt = 0.0;

    // Throws std::invalid_argument on non-positive explicit values or abs_tol > 1e-4.
    void validate() const;
};

// ----------------------------- problem --------------------------------------

using InitialState = std::variant<PureState, DensityMatrix>;

struct EvolutionProblem {
    SystemParams params;
    InitialState initial;
    double t_final;
    SolverOptions options{};

    void validate() const;
};

// ----------------------------- trajectory -----------------------------------

struct TrajectorySample {
    double t;
    DensityMatrix state;
    ObservableRecord observables;
};

struct TrajectoryMeta {
    SystemParams params;
    SolverOptions options;  // resolved values actually used
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
    // worst pre-repair drifts observed over all accepted steps
    double max_trace_drift = 0.0;
    double max_hermiticity_drift = 0.0;
    double max_norm_drift = 0.0;  // pure-state path
    double min_eigenvalue = 0.0;  // over all emitted samples
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    TrajectoryMeta meta;
};

// Raised when the adaptive controller underflows the step size or exceeds the
// step budget; carries the time reached before failure.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t_reached_)
        : std::runtime_error(what), t_reached(t_reached_) {}
    double t_reached;
};

// ----------------------------- right-hand sides ------------------------------

// d|psi>/dt = -i H(t) |psi>, returned in (e, g) component order.
// Misuse error if params carry nonzero decoherence rates.
std::array<Complex, 2> schrodinger_rhs(const PureState& psi, double t, const SystemParams& params);

// drho/dt = -i[H(t), rho] + gamma (sz rho sz - rho)
//         + kappa (s- rho s+ - 1/2 {s+ s-, rho}).
Mat2 lindblad_rhs(const DensityMatrix& rho, double t, const SystemParams& params);

// ----------------------------- evolution ------------------------------------

// Integrates the appropriate equation of motion and samples observables at
// multiples of sample_dt (t_final always included). Pure initial states with
// nonzero rates are promoted to density matrices.
Trajectory evolve(const EvolutionProblem& problem);

// State-vector integration; requires a pure initial state and gamma = kappa = 0.
// Samples are reported as rank-1 density matrices.
Trajectory evolve_pure(const EvolutionProblem& problem);

// As evolve, but samples exactly at the given strictly increasing times
// (a t = 0 sample is always prepended; times beyond t_final are rejected).
Trajectory evolve_at(const EvolutionProblem& problem, std::span<const double> sample_times);

}  // namespace qucap::dynamics
