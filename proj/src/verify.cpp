// verify.cpp — oracle cross-checks between the analytic module and the
// integrator, with running-max relative error metrics.

#include "qucap/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace qucap::verify {

namespace {

constexpr double kPopulationTol = 1e-7;
constexpr double kCapacitanceTol = 1e-5;
constexpr double kPeakValueTol = 1e-6;
constexpr double kRelaxationTol = 1e-8;
constexpr double kRegimeSentinel = 1e9;  // measurement-only reports
constexpr double kStructuralFailure = 9e99;

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// no commas: case ids must stay single CSV fields
std::string drive_case_id(double omega0, double omega) {
    return "omega0=" + format_value(omega0) + ";omega=" + format_value(omega);
}

// Accumulates |candidate - reference| with the denominator taken as the
// running maximum of |reference| (absolute fallback while that max is zero).
struct ErrorAccumulator {
    double run_max = 0.0;
    double max_abs = 0.0;
    double max_rel = 0.0;

    void add(double reference, double candidate) {
        run_max = std::max(run_max, std::abs(reference));
        const double abs_err = std::abs(candidate - reference);
        max_abs = std::max(max_abs, abs_err);
        max_rel = std::max(max_rel, run_max > 0.0 ? abs_err / run_max : abs_err);
    }
};

std::vector<double> uniform_times(double t_final, std::size_t n) {
    std::vector<double> times(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        times[k] = t_final * static_cast<double>(k) / static_cast<double>(n);
    }
    return times;
}

dynamics::Trajectory integrate_closed_from_ground(double omega0, double omega,
                                                  const dynamics::SolverOptions& opts,
                                                  double t_final,
                                                  std::span<const double> times) {
    dynamics::EvolutionProblem problem{SystemParams(omega0, DriveSchedule::constant(omega)),
                                       PureState::ground(), t_final, opts};
    return dynamics::evolve_at(problem, times);
}

}  // namespace

void ComparisonGrid::validate() const {
    auto require_values = [](const std::vector<double>& v, const char* name) {
        if (v.empty()) throw std::invalid_argument(std::string("ComparisonGrid: ") + name + " empty");
        for (double x : v) {
            if (!(x >= 0.0)) {
                throw std::invalid_argument(std::string("ComparisonGrid: ") + name +
                                            " must be >= 0");
            }
        }
    };
    require_values(omega0_values, "omega0_values");
    require_values(omega_values, "omega_values");
    require_values(gamma_values, "gamma_values");
    require_values(kappa_values, "kappa_values");
    if (!(t_final_periods > 0.0)) {
        throw std::invalid_argument("ComparisonGrid: t_final_periods must be > 0");
    }
    if (samples_per_period < 8) {
        throw std::invalid_argument("ComparisonGrid: samples_per_period must be >= 8");
    }
}

std::vector<VerificationReport> check_population_formula(const ComparisonGrid& grid,
                                                         const dynamics::SolverOptions& opts) {
    grid.validate();
    std::vector<VerificationReport> reports;
    for (double omega0 : grid.omega0_values) {
        for (double omega : grid.omega_values) {
            const analytic::ConstantDriveParams p(omega0, omega);
            const double wr = analytic::rabi_frequency(p);
            // Omega_R = 0 has no Rabi period; any horizon exercises the
            // (identically zero) comparison.
            const double t_final =
                grid.t_final_periods * std::numbers::pi / (wr > 0.0 ? wr : 1.0);
            const auto n = static_cast<std::size_t>(
                std::ceil(grid.t_final_periods * grid.samples_per_period));
            const auto times = uniform_times(t_final, n);
            dynamics::Trajectory traj = [&] {
                try {
                    return integrate_closed_from_ground(omega0, omega, opts, t_final, times);
                } catch (const dynamics::IntegrationError& e) {
                    throw dynamics::IntegrationError(
                        drive_case_id(omega0, omega) + ": " + e.what(), e.t_reached);
                }
            }();

            ErrorAccumulator acc;
            for (const auto& s : traj.samples) {
                acc.add(analytic::excited_population(p, s.t), s.observables.p_e);
            }
            VerificationReport rep;
            rep.case_id = drive_case_id(omega0, omega);
            rep.quantity = "excited_population";
            rep.max_abs_error = acc.max_abs;
            rep.max_rel_error = acc.max_rel;
            rep.tolerance = kPopulationTol;
            rep.passed = rep.max_abs_error <= rep.tolerance;
            reports.push_back(std::move(rep));
        }
    }
    return reports;
}

VerificationReport check_capacitance_derivative(const analytic::ConstantDriveParams& p,
                                                const std::vector<double>& t_grid, double h) {
    if (!(h > 0.0)) throw std::domain_error("check_capacitance_derivative: h must be > 0");
    if (p.omega > 0.0 && h > p.omega / 10.0) {
        throw std::domain_error("check_capacitance_derivative: h must be <= omega/10");
    }
    for (double t : t_grid) {
        if (!(t >= 0.0)) throw std::domain_error("check_capacitance_derivative: t >= 0 required");
    }

    VerificationReport rep;
    rep.case_id = drive_case_id(p.omega0, p.omega);
    rep.quantity = "quantum_capacitance";
    rep.tolerance = kCapacitanceTol;

    if (p.omega == 0.0) {
        // dE/dOmega vanishes at Omega = 0 (E is even in Omega) and the formula
        // returns 0 identically; nothing to difference.
        rep.passed = true;
        return rep;
    }

    // Route A: central difference of the analytic energy.
    ErrorAccumulator acc;
    for (double t : t_grid) {
        const double reference = analytic::quantum_capacitance(p, t);
        const double fd =
            (analytic::stored_energy(analytic::ConstantDriveParams(p.omega0, p.omega + h), t) -
             analytic::stored_energy(analytic::ConstantDriveParams(p.omega0, p.omega - h), t)) /
            (2.0 * h);
        acc.add(reference, fd);
    }

    // Route B: central difference of integrator-computed energy. A coarser
    // step keeps the 1/h amplification of integration error below tolerance.
    const double h_num = std::max(h, 1e-4 * std::max(1.0, p.omega));
    const double t_max = *std::max_element(t_grid.begin(), t_grid.end());
    dynamics::SolverOptions tight;
    tight.abs_tol = 1e-12;
    tight.rel_tol = 1e-10;

    std::vector<double> sorted_times = t_grid;
    std::sort(sorted_times.begin(), sorted_times.end());
    sorted_times.erase(std::unique(sorted_times.begin(), sorted_times.end()), sorted_times.end());
    if (!sorted_times.empty() && sorted_times.front() == 0.0) {
        sorted_times.erase(sorted_times.begin());
    }

    double oracle_gap = 0.0;  // analytic vs integrated energy at the probes
    ErrorAccumulator acc_num;
    if (!sorted_times.empty() && t_max > 0.0) {
        const double om_hi = p.omega + h_num;
        const double om_lo = p.omega - h_num;
        const auto traj_hi =
            integrate_closed_from_ground(p.omega0, om_hi, tight, t_max, sorted_times);
        const auto traj_lo =
            integrate_closed_from_ground(p.omega0, om_lo, tight, t_max, sorted_times);
        for (std::size_t i = 0; i < traj_hi.samples.size(); ++i) {
            const double t = traj_hi.samples[i].t;
            const double e_hi = traj_hi.samples[i].observables.energy;
            const double e_lo = traj_lo.samples[i].observables.energy;
            oracle_gap = std::max(
                oracle_gap,
                std::abs(e_hi - analytic::stored_energy(
                                    analytic::ConstantDriveParams(p.omega0, om_hi), t)));
            oracle_gap = std::max(
                oracle_gap,
                std::abs(e_lo - analytic::stored_energy(
                                    analytic::ConstantDriveParams(p.omega0, om_lo), t)));
            acc_num.add(analytic::quantum_capacitance(p, t), (e_hi - e_lo) / (2.0 * h_num));
        }
    }

    rep.max_abs_error = oracle_gap;
    rep.max_rel_error = std::max(acc.max_rel, acc_num.max_rel);
    rep.passed = rep.max_rel_error <= rep.tolerance;
    return rep;
}

VerificationReport check_peak_structure(const analytic::ConstantDriveParams& p,
                                        const dynamics::SolverOptions& opts) {
    const double wr = analytic::rabi_frequency(p);
    if (!(wr > 0.0) || !(p.omega > 0.0)) {
        throw std::invalid_argument("check_peak_structure: requires omega > 0");
    }

    // Dense sampling so 3-point quadratic interpolation resolves the peak value
    // to the 1e-6 tolerance.
    const double dt = std::numbers::pi / (400.0 * wr);
    const double t_final = 1.25 * std::numbers::pi / wr;
    std::vector<double> times;
    for (double t = 0.0; t < t_final; t += dt) times.push_back(t);
    times.push_back(t_final);

    const auto traj = integrate_closed_from_ground(p.omega0, p.omega, opts, t_final, times);
    const bool use_population = p.omega0 == 0.0;
    auto signal = [&](const dynamics::TrajectorySample& s) {
        return use_population ? s.observables.p_e : s.observables.energy;
    };

    std::vector<double> sample_t;
    std::vector<double> sample_v;
    sample_t.reserve(traj.samples.size());
    sample_v.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        sample_t.push_back(s.t);
        sample_v.push_back(signal(s));
    }
    const auto peak = interpolate_peak(sample_t, sample_v);

    VerificationReport rep;
    rep.case_id = drive_case_id(p.omega0, p.omega);
    rep.quantity = use_population ? "first_peak_population" : "first_peak_energy";
    rep.tolerance = kPeakValueTol;

    if (!peak.found) {
        rep.max_abs_error = kStructuralFailure;
        rep.max_rel_error = kStructuralFailure;
        rep.passed = false;
        return rep;
    }
    const double t_hat = peak.t;
    const double v_hat = peak.value;

    const double expected_t = analytic::charging_time(p);
    const double expected_v =
        use_population ? p.omega * p.omega / (wr * wr) : analytic::max_energy(p);

    const double time_err = std::abs(t_hat - expected_t);
    const double value_rel = std::abs(v_hat - expected_v) / expected_v;

    rep.max_abs_error = time_err;
    // fold the one-sample-interval time criterion into the relative metric
    rep.max_rel_error = std::max(value_rel, time_err / dt * kPeakValueTol);
    rep.passed = rep.max_rel_error <= rep.tolerance;
    return rep;
}

VerificationReport check_dephasing_approximation(const analytic::ConstantDriveParams& p,
                                                 double gamma,
                                                 const dynamics::SolverOptions& opts) {
    if (!(gamma >= 0.0)) throw std::domain_error("check_dephasing_approximation: gamma >= 0");
    if (!(p.omega > 0.0)) {
        throw std::invalid_argument("check_dephasing_approximation: requires omega > 0");
    }

    const double wr = analytic::rabi_frequency(p);
    const double t_final = 3.0 * std::numbers::pi / wr;
    const std::array<double, 3> peaks = {0.5 * std::numbers::pi / wr,
                                         1.5 * std::numbers::pi / wr,
                                         2.5 * std::numbers::pi / wr};

    std::vector<double> times;
    const double dt = std::numbers::pi / (40.0 * wr);
    for (double t = 0.0; t < t_final; t += dt) times.push_back(t);
    times.push_back(t_final);
    times.insert(times.end(), peaks.begin(), peaks.end());
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end(),
                            [&](double a, double b) { return b - a <= 1e-12 * t_final; }),
                times.end());

    dynamics::EvolutionProblem problem{
        SystemParams(p.omega0, DriveSchedule::constant(p.omega), gamma, 0.0),
        DensityMatrix::ground(), t_final, opts};
    const auto traj = dynamics::evolve_at(problem, times);

    double run_max = 0.0;
    double first_abs = 0.0;
    double first_rel = 0.0;
    bool first_done = false;
    for (const auto& s : traj.samples) {
        const double reference = analytic::damped_energy(p, gamma, s.t);
        run_max = std::max(run_max, reference);
        if (!first_done && std::abs(s.t - peaks[0]) <= 1e-9 * t_final) {
            first_abs = std::abs(s.observables.energy - reference);
            first_rel = run_max > 0.0 ? first_abs / run_max : first_abs;
            first_done = true;
        }
    }

    VerificationReport rep;
    rep.case_id = drive_case_id(p.omega0, p.omega) + ";gamma=" + format_value(gamma);
    rep.quantity = "dephasing_envelope_first_peak";
    rep.max_abs_error = first_abs;
    rep.max_rel_error = first_rel;

    const double ratio = gamma / wr;
    if (gamma == 0.0) {
        rep.tolerance = 1e-8;  // integrator-level agreement when exact
    } else if (ratio <= 0.1 * (1.0 + 1e-12)) {
        const auto ref = dephasing_reference();
        // piecewise-linear bound through the pinned points, linear through the
        // origin below the first; deviation scales ~ gamma/Omega_R
        double bound;
        if (ratio <= ref.front().gamma_over_rabi) {
            bound = ref.front().first_peak_deviation * ratio / ref.front().gamma_over_rabi;
        } else {
            bound = ref.back().first_peak_deviation;
            for (std::size_t i = 0; i + 1 < ref.size(); ++i) {
                if (ratio <= ref[i + 1].gamma_over_rabi) {
                    const double w = (ratio - ref[i].gamma_over_rabi) /
                                     (ref[i + 1].gamma_over_rabi - ref[i].gamma_over_rabi);
                    bound = ref[i].first_peak_deviation +
                            w * (ref[i + 1].first_peak_deviation - ref[i].first_peak_deviation);
                    break;
                }
            }
        }
        rep.tolerance = 1.1 * bound;
    } else {
        // outside the pinned regime: report the measurement, flag no claim
        rep.quantity += "_regime_exceeded";
        rep.tolerance = kRegimeSentinel;
    }
    rep.passed = rep.max_rel_error <= rep.tolerance;
    return rep;
}

VerificationReport check_coherence_envelope(const analytic::ConstantDriveParams& p, double gamma,
                                            const dynamics::SolverOptions& opts) {
    if (!(gamma >= 0.0)) throw std::domain_error("check_coherence_envelope: gamma >= 0");
    if (!(p.omega > 0.0)) {
        throw std::invalid_argument("check_coherence_envelope: requires omega > 0");
    }
    const double wr = analytic::rabi_frequency(p);
    const double t_final = 3.0 * std::numbers::pi / wr;
    const auto n = static_cast<std::size_t>(120);
    const auto times = uniform_times(t_final, n);

    const auto closed = integrate_closed_from_ground(p.omega0, p.omega, opts, t_final, times);
    dynamics::EvolutionProblem problem{
        SystemParams(p.omega0, DriveSchedule::constant(p.omega), gamma, 0.0),
        DensityMatrix::ground(), t_final, opts};
    const auto damped = dynamics::evolve_at(problem, times);

    ErrorAccumulator acc;
    for (std::size_t i = 0; i < closed.samples.size(); ++i) {
        const double reference = closed.samples[i].observables.coherence_mag *
                                 std::exp(-2.0 * gamma * closed.samples[i].t);
        acc.add(reference, damped.samples[i].observables.coherence_mag);
    }

    VerificationReport rep;
    rep.case_id = drive_case_id(p.omega0, p.omega) + ";gamma=" + format_value(gamma);
    rep.quantity = "coherence_envelope_measured";
    rep.max_abs_error = acc.max_abs;
    rep.max_rel_error = acc.max_rel;
    rep.tolerance = kRegimeSentinel;
    rep.passed = true;
    return rep;
}

VerificationReport check_relaxation(double kappa, const std::vector<double>& t_grid,
                                    const dynamics::SolverOptions& opts) {
    if (!(kappa >= 0.0)) throw std::domain_error("check_relaxation: kappa must be >= 0");
    std::vector<double> times = t_grid;
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (times.empty() || !(times.front() >= 0.0)) {
        throw std::domain_error("check_relaxation: t_grid must be non-empty, times >= 0");
    }
    const double t_max = times.back();

    VerificationReport rep;
    rep.case_id = "kappa=" + format_value(kappa);
    rep.quantity = "relaxation_decay";
    rep.tolerance = kRelaxationTol;

    if (t_max == 0.0) {
        rep.passed = true;
        return rep;
    }

    dynamics::EvolutionProblem problem{
        SystemParams(1.0, DriveSchedule::constant(0.0), 0.0, kappa), DensityMatrix::excited(),
        t_max, opts};
    const auto traj = dynamics::evolve_at(problem, times);

    ErrorAccumulator acc;
    for (const auto& s : traj.samples) {
        acc.add(std::exp(-kappa * s.t), s.observables.p_e);
        // coherence must remain identically zero along the decay
        acc.max_abs = std::max(acc.max_abs, s.observables.coherence_mag);
    }
    rep.max_abs_error = acc.max_abs;
    rep.max_rel_error = acc.max_rel;
    rep.passed = rep.max_abs_error <= rep.tolerance;
    return rep;
}

PeakEstimate interpolate_peak(std::span<const double> times, std::span<const double> values) {
    PeakEstimate est;
    if (times.size() != values.size() || times.size() < 3) return est;
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    if (best == 0 || best + 1 >= values.size()) return est;
    const double y0 = values[best - 1];
    const double y1 = values[best];
    const double y2 = values[best + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    const double delta = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
    const double dt = 0.5 * (times[best + 1] - times[best - 1]);
    est.t = times[best] + delta * dt;
    est.value = y1 - 0.25 * (y0 - y2) * delta;
    est.found = true;
    return est;
}

std::span<const DephasingReferencePoint> dephasing_reference() {
    // First-peak relative deviation between the exact dephasing Lindblad
    // energy and E(t) e^(-2 gamma t) at omega0 = 8, omega = 3, pinned from an
    // abs_tol = 1e-12, rel_tol = 1e-12 reference integration.
    static constexpr DephasingReferencePoint kReference[] = {
        {1e-3, 0.0028627612213147609},
        {1e-2, 0.028982927610421119},
        {1e-1, 0.32568803240412675},
    };
    return kReference;
}

}  // namespace qucap::verify
