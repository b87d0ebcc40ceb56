// dynamics.cpp — Dormand-Prince 5(4) propagation of the Schrodinger and
// Lindblad equations. Steps never straddle drive-segment boundaries; states
// are repaired (renormalized / symmetrized) after every accepted step with
// drift beyond 1e-9 treated as an integrity failure.

#include "qucap/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qucap::dynamics {

namespace {

// ----------------------------- tableau --------------------------------------

constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// b5 - b4 difference for the embedded error estimate
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

// PI step-size controller constants
constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kShrinkLimit = 0.2;  // h never shrinks below 0.2 h per retry
constexpr double kGrowthLimit = 10.0;
constexpr std::size_t kMaxStepAttempts = 20'000'000;

struct StopPoint {
    double t;
    bool sample;
    bool breakpoint;
};

// Merged, strictly increasing stop schedule over (0, t_final].
std::vector<StopPoint> merge_stops(const std::vector<double>& samples,
                                   const std::vector<double>& breakpoints, double t_final) {
    std::vector<StopPoint> stops;
    for (double s : samples) {
        if (s > 0.0) stops.push_back({s, true, false});
    }
    for (double b : breakpoints) {
        if (b > 0.0 && b < t_final) stops.push_back({b, false, true});
    }
    stops.push_back({t_final, false, false});
    std::sort(stops.begin(), stops.end(),
              [](const StopPoint& a, const StopPoint& b) { return a.t < b.t; });
    std::vector<StopPoint> merged;
    const double tiny = 1e-12 * t_final;
    for (const auto& s : stops) {
        if (!merged.empty() && s.t - merged.back().t <= tiny) {
            merged.back().sample = merged.back().sample || s.sample;
            merged.back().breakpoint = merged.back().breakpoint || s.breakpoint;
        } else {
            merged.push_back(s);
        }
    }
    return merged;
}

// Generic adaptive driver over a fixed-size real state. The RHS sees the
// drive amplitude of the active segment only, so discontinuities never leak
// into a step's stages.
template <std::size_t N, typename Rhs, typename Repair, typename Emit>
void run_dopri5(std::array<double, N>& y, const SystemParams& params, double t_final,
                double abs_tol, double rel_tol, double max_step,
                const std::vector<double>& sample_times, Rhs rhs, Repair repair, Emit emit,
                TrajectoryMeta& meta) {
    using State = std::array<double, N>;

    std::vector<double> breakpoints;
    for (const auto& seg : params.drive.segments()) breakpoints.push_back(seg.t_start);
    const auto stops = merge_stops(sample_times, breakpoints, t_final);

    double omega = params.drive.amplitude(0.0);
    emit(0.0, y);

    double t = 0.0;
    double h = std::min(max_step, stops.front().t);
    double facold = 1e-4;
    bool rejected = false;
    std::size_t attempts = 0;

    State k1, k2, k3, k4, k5, k6, k7, ytmp, y5;

    for (const auto& stop : stops) {
        while (t < stop.t) {
            if (++attempts > kMaxStepAttempts) {
                throw IntegrationError("integration exceeded step budget", t);
            }
            const double h_ctrl = std::min(h, max_step);
            if (h_ctrl < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t)) {
                throw IntegrationError("step size underflow", t);
            }
            const bool clipped = h_ctrl >= stop.t - t;
            const double hs = clipped ? stop.t - t : h_ctrl;

            rhs(omega, y, k1);
            for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + hs * kA21 * k1[i];
            rhs(omega, ytmp, k2);
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + hs * (kA31 * k1[i] + kA32 * k2[i]);
            rhs(omega, ytmp, k3);
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + hs * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
            rhs(omega, ytmp, k4);
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + hs * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
            rhs(omega, ytmp, k5);
            for (std::size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + hs * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] +
                                       kA64 * k4[i] + kA65 * k5[i]);
            rhs(omega, ytmp, k6);
            for (std::size_t i = 0; i < N; ++i)
                y5[i] = y[i] + hs * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] + kB5 * k5[i] +
                                     kB6 * k6[i]);
            rhs(omega, y5, k7);

            double err_sq = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double e = hs * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                                       kE6 * k6[i] + kE7 * k7[i]);
                const double sc = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
                err_sq += (e / sc) * (e / sc);
            }
            const double err = std::sqrt(err_sq / static_cast<double>(N));

            if (std::isfinite(err) && err <= 1.0) {
                t = clipped ? stop.t : t + hs;
                y = y5;
                repair(y, meta);
                ++meta.steps_accepted;

                const double fac11 = std::pow(std::max(err, 1e-16), kExpo1);
                double fac = fac11 / std::pow(facold, kBeta);
                fac = std::clamp(fac / kSafety, 1.0 / kGrowthLimit, 1.0 / kShrinkLimit);
                double h_new = hs / fac;
                facold = std::max(err, 1e-4);
                if (rejected) h_new = std::min(h_new, hs);
                rejected = false;
                // a clipped step says nothing about what the controller could take
                h = clipped ? std::max(h_ctrl, h_new) : h_new;
            } else {
                ++meta.steps_rejected;
                const double fac11 = std::isfinite(err) ? std::pow(err, kExpo1) : 5.0 * kSafety;
                h = hs / std::min(1.0 / kShrinkLimit, fac11 / kSafety);
                rejected = true;
            }
        }
        if (stop.breakpoint) omega = params.drive.amplitude(stop.t);
        if (stop.sample) emit(stop.t, y);
    }
}

// ----------------------------- packing --------------------------------------

// pure state: (re c_e, im c_e, re c_g, im c_g)
std::array<double, 4> pack_pure(const PureState& psi) {
    return {psi.c_e().real(), psi.c_e().imag(), psi.c_g().real(), psi.c_g().imag()};
}

// density matrix: (re ee, im ee, re eg, im eg, re ge, im ge, re gg, im gg)
std::array<double, 8> pack_density(const Mat2& rho) {
    return {rho.m[0].real(), rho.m[0].imag(), rho.m[1].real(), rho.m[1].imag(),
            rho.m[2].real(), rho.m[2].imag(), rho.m[3].real(), rho.m[3].imag()};
}

Mat2 unpack_density(const std::array<double, 8>& y) {
    return Mat2{{Complex(y[0], y[1]), Complex(y[2], y[3]), Complex(y[4], y[5]),
                 Complex(y[6], y[7])}};
}

// ----------------------------- right-hand sides ------------------------------

void schrodinger_core(double omega0, double omega, const std::array<double, 4>& y,
                      std::array<double, 4>& dy) {
    const Complex ce(y[0], y[1]);
    const Complex cg(y[2], y[3]);
    const Complex i_unit(0.0, 1.0);
    const Complex dce = -i_unit * (0.5 * omega0 * ce + omega * cg);
    const Complex dcg = -i_unit * (omega * ce - 0.5 * omega0 * cg);
    dy = {dce.real(), dce.imag(), dcg.real(), dcg.imag()};
}

void lindblad_core(double omega0, double omega, double gamma, double kappa, const Mat2& rho,
                   Mat2& out) {
    const Mat2 h{{0.5 * omega0, omega, omega, -0.5 * omega0}};
    const Complex i_unit(0.0, 1.0);
    out = (-i_unit) * (h * rho - rho * h);
    if (gamma != 0.0) {
        // sigma_z rho sigma_z - rho flips the sign of the off-diagonals
        out.m[1] += -2.0 * gamma * rho.m[1];
        out.m[2] += -2.0 * gamma * rho.m[2];
    }
    if (kappa != 0.0) {
        const Complex ee = rho.m[0];
        out.m[0] += -kappa * ee;
        out.m[3] += kappa * ee;
        out.m[1] += -0.5 * kappa * rho.m[1];
        out.m[2] += -0.5 * kappa * rho.m[2];
    }
}

// ----------------------------- option resolution -----------------------------

struct ResolvedOptions {
    double abs_tol;
    double rel_tol;
    double max_step;
    double sample_dt;
};

ResolvedOptions resolve_options(const SolverOptions& opts, const SystemParams& params,
                                double t_final) {
    opts.validate();
    const double omega_max = params.drive.max_amplitude();
    const double rabi_eff =
        std::sqrt(omega_max * omega_max + 0.25 * params.omega0 * params.omega0);
    const double rate_floor = 2.0 * std::numbers::pi / t_final;
    const double omega_eff = std::max({rabi_eff, params.gamma, params.kappa, rate_floor});
    ResolvedOptions r{};
    r.abs_tol = opts.abs_tol;
    r.rel_tol = opts.rel_tol;
    r.max_step = opts.max_step > 0.0 ? opts.max_step : 0.05 / omega_eff;
    r.sample_dt = opts.sample_dt > 0.0 ? opts.sample_dt : std::numbers::pi / (40.0 * omega_eff);
    return r;
}

std::vector<double> uniform_sample_times(double sample_dt, double t_final) {
    std::vector<double> times;
    const double tiny = 1e-12 * t_final;
    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * sample_dt;
        if (t >= t_final - tiny) break;
        times.push_back(t);
    }
    times.push_back(t_final);
    return times;
}

// ----------------------------- repair ---------------------------------------

constexpr double kRepairTol = 1e-9;

void repair_pure(std::array<double, 4>& y, TrajectoryMeta& meta) {
    const double norm =
        std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3]);
    const double drift = std::abs(norm - 1.0);
    meta.max_norm_drift = std::max(meta.max_norm_drift, drift);
    if (drift > kRepairTol) {
        throw InvariantError("evolve_pure: state norm drifted beyond 1e-9");
    }
    for (auto& v : y) v /= norm;
}

void repair_density(std::array<double, 8>& y, TrajectoryMeta& meta) {
    Mat2 rho = unpack_density(y);
    const double herm = rho.hermiticity_deviation();
    meta.max_hermiticity_drift = std::max(meta.max_hermiticity_drift, herm);
    if (herm > kRepairTol) {
        throw InvariantError("evolve: Hermiticity drifted beyond 1e-9");
    }
    const Complex off = 0.5 * (rho.m[1] + std::conj(rho.m[2]));
    rho.m[0] = Complex(rho.m[0].real(), 0.0);
    rho.m[3] = Complex(rho.m[3].real(), 0.0);
    rho.m[1] = off;
    rho.m[2] = std::conj(off);
    const double tr = rho.m[0].real() + rho.m[3].real();
    const double drift = std::abs(tr - 1.0);
    meta.max_trace_drift = std::max(meta.max_trace_drift, drift);
    if (drift > kRepairTol) {
        throw InvariantError("evolve: trace drifted beyond 1e-9");
    }
    rho *= Complex(1.0 / tr, 0.0);
    y = pack_density(rho);
}

// ----------------------------- assembly -------------------------------------

void fill_power_by_differences(std::vector<TrajectorySample>& samples) {
    const std::size_t n = samples.size();
    if (n < 2) return;
    auto slope = [&](std::size_t a, std::size_t b) {
        return (samples[b].observables.energy - samples[a].observables.energy) /
               (samples[b].t - samples[a].t);
    };
    samples.front().observables.power = slope(0, 1);
    samples.back().observables.power = slope(n - 2, n - 1);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        samples[k].observables.power = slope(k - 1, k + 1);
    }
}

Trajectory run_problem(const EvolutionProblem& problem, const std::vector<double>& sample_times,
                       bool force_pure) {
    problem.validate();
    const auto& params = problem.params;
    const auto opts = resolve_options(problem.options, params, problem.t_final);

    Trajectory traj{{},
                    TrajectoryMeta{params,
                                   SolverOptions{opts.abs_tol, opts.rel_tol, opts.max_step,
                                                 opts.sample_dt}}};
    traj.meta.min_eigenvalue = std::numeric_limits<double>::infinity();

    auto emit_state = [&](double t, const Mat2& m) {
        DensityMatrix rho(m);
        traj.meta.min_eigenvalue = std::min(traj.meta.min_eigenvalue, rho.eigenvalues().first);
        auto rec = ObservableRecord::from_state(rho, params.omega0);
        traj.samples.push_back({t, std::move(rho), rec});
    };

    const bool pure_path = std::holds_alternative<PureState>(problem.initial) && params.closed();
    if (force_pure && !pure_path) {
        throw std::invalid_argument(
            "evolve_pure: requires a pure initial state and gamma = kappa = 0");
    }

    if (pure_path) {
        auto y = pack_pure(std::get<PureState>(problem.initial));
        run_dopri5<4>(
            y, params, problem.t_final, opts.abs_tol, opts.rel_tol, opts.max_step, sample_times,
            [&](double omega, const std::array<double, 4>& s, std::array<double, 4>& ds) {
                schrodinger_core(params.omega0, omega, s, ds);
            },
            repair_pure,
            [&](double t, const std::array<double, 4>& s) {
                const Complex ce(s[0], s[1]);
                const Complex cg(s[2], s[3]);
                Mat2 rho{{ce * std::conj(ce), ce * std::conj(cg), cg * std::conj(ce),
                          cg * std::conj(cg)}};
                emit_state(t, rho);
            },
            traj.meta);
    } else {
        const DensityMatrix initial =
            std::holds_alternative<DensityMatrix>(problem.initial)
                ? std::get<DensityMatrix>(problem.initial)
                : std::get<PureState>(problem.initial).to_density_matrix();
        auto y = pack_density(initial.matrix());
        run_dopri5<8>(
            y, params, problem.t_final, opts.abs_tol, opts.rel_tol, opts.max_step, sample_times,
            [&](double omega, const std::array<double, 8>& s, std::array<double, 8>& ds) {
                Mat2 rho = unpack_density(s);
                Mat2 drho;
                lindblad_core(params.omega0, omega, params.gamma, params.kappa, rho, drho);
                ds = pack_density(drho);
            },
            repair_density,
            [&](double t, const std::array<double, 8>& s) { emit_state(t, unpack_density(s)); },
            traj.meta);
    }

    fill_power_by_differences(traj.samples);
    return traj;
}

}  // namespace

// ----------------------------- public API -----------------------------------

void SolverOptions::validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("SolverOptions: abs_tol must be > 0");
    if (abs_tol > 1e-4) throw std::invalid_argument("SolverOptions: abs_tol must be <= 1e-4");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("SolverOptions: rel_tol must be > 0");
    if (max_step != 0.0 && !(max_step > 0.0)) {
        throw std::invalid_argument("SolverOptions: max_step must be > 0");
    }
    if (sample_dt != 0.0 && !(sample_dt > 0.0)) {
        throw std::invalid_argument("SolverOptions: sample_dt must be > 0");
    }
}

void EvolutionProblem::validate() const {
    if (!(t_final > 0.0)) throw std::invalid_argument("EvolutionProblem: t_final must be > 0");
    options.validate();
}

std::array<Complex, 2> schrodinger_rhs(const PureState& psi, double t,
                                       const SystemParams& params) {
    if (!params.closed()) {
        throw std::invalid_argument("schrodinger_rhs: decoherence rates must be zero");
    }
    std::array<double, 4> y = pack_pure(psi);
    std::array<double, 4> dy;
    schrodinger_core(params.omega0, params.drive.amplitude(t), y, dy);
    return {Complex(dy[0], dy[1]), Complex(dy[2], dy[3])};
}

Mat2 lindblad_rhs(const DensityMatrix& rho, double t, const SystemParams& params) {
    Mat2 out;
    lindblad_core(params.omega0, params.drive.amplitude(t), params.gamma, params.kappa,
                  rho.matrix(), out);
    return out;
}

Trajectory evolve(const EvolutionProblem& problem) {
    problem.validate();
    const auto opts = resolve_options(problem.options, problem.params, problem.t_final);
    return run_problem(problem, uniform_sample_times(opts.sample_dt, problem.t_final), false);
}

Trajectory evolve_pure(const EvolutionProblem& problem) {
    problem.validate();
    const auto opts = resolve_options(problem.options, problem.params, problem.t_final);
    return run_problem(problem, uniform_sample_times(opts.sample_dt, problem.t_final), true);
}

Trajectory evolve_at(const EvolutionProblem& problem, std::span<const double> sample_times) {
    problem.validate();
    std::vector<double> times;
    times.reserve(sample_times.size() + 1);
    double prev = -1.0;
    for (double t : sample_times) {
        if (!(t >= 0.0) || t > problem.t_final) {
            throw std::invalid_argument("evolve_at: sample times must lie in [0, t_final]");
        }
        if (t <= prev) {
            throw std::invalid_argument("evolve_at: sample times must be strictly increasing");
        }
        times.push_back(t);
        prev = t;
    }
    return run_problem(problem, times, false);
}

}  // namespace qucap::dynamics
