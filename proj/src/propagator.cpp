#include "scrap/propagator.hpp"

#include "scrap/errors.hpp"
#include "scrap/units.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace scrap {

namespace {

using cplx = std::complex<double>;

Eigen::MatrixXcd step_exponential(const Eigen::MatrixXcd& h, double dt) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw NumericalError("propagate: eigendecomposition of H(t) failed");
    const Eigen::VectorXd& energies = solver.eigenvalues();
    Eigen::VectorXcd phases(energies.size());
    for (Eigen::Index k = 0; k < energies.size(); ++k)
        phases[k] = std::polar(1.0, -dt * energies[k]);
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

// Fourth-order commutator-free Magnus step: two exponentials built from H at the Gauss points.
Eigen::MatrixXcd step_cf4(const TimeDependentHamiltonian& h, double t, double dt) {
    constexpr double root3_over_6 = 0.28867513459481287;
    constexpr double a1 = 0.25 - root3_over_6; // (3 - 2 sqrt 3) / 12
    constexpr double a2 = 0.25 + root3_over_6;
    const Eigen::MatrixXcd h1 = h(t + (0.5 - root3_over_6) * dt);
    const Eigen::MatrixXcd h2 = h(t + (0.5 + root3_over_6) * dt);
    return step_exponential(a1 * h1 + a2 * h2, dt) * step_exponential(a2 * h1 + a1 * h2, dt);
}

struct Evolution {
    std::vector<double> times;
    std::vector<Eigen::MatrixXcd> snapshots;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

std::string format_time(double t) {
    std::ostringstream os;
    os.precision(10);
    os << t;
    return os.str();
}

// Evolves the columns of `state` across tspan, recording them on the uniform output mesh.
Evolution evolve(const TimeDependentHamiltonian& h, Eigen::MatrixXcd state, TimeWindow tspan,
                 const PropagationOptions& options) {
    options.validate();
    if (!(tspan.start < tspan.end))
        throw ValidationError("propagate: tspan must satisfy t_start < t_end");
    if (static_cast<std::size_t>(state.rows()) != h.dimension())
        throw ValidationError("propagate: state dimension does not match the Hamiltonian");

    const double span = tspan.end - tspan.start;
    const std::size_t n_out = options.output_points;
    const double mesh_spacing = span / static_cast<double>(n_out - 1);
    const auto mesh = [&](std::size_t i) {
        return i + 1 == n_out ? tspan.end : tspan.start + mesh_spacing * static_cast<double>(i);
    };
    const double min_step = 1e-12 * std::max({1.0, std::abs(tspan.start), std::abs(tspan.end)});
    const double error_floor = 64.0 * std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(state.cols()));

    Evolution out;
    out.times.reserve(n_out);
    out.snapshots.reserve(n_out);
    out.times.push_back(tspan.start);
    out.snapshots.push_back(state);

    double t = tspan.start;
    double step = mesh_spacing / 8.0;
    std::size_t next = 1;
    while (next < n_out) {
        const double target = mesh(next);
        const bool truncated = step >= target - t;
        const double dt = truncated ? target - t : step;

        const Eigen::MatrixXcd full = step_cf4(h, t, dt) * state;
        const Eigen::MatrixXcd half = step_cf4(h, t + 0.5 * dt, 0.5 * dt) * (step_cf4(h, t, 0.5 * dt) * state);
        const double error = (full - half).colwise().norm().maxCoeff();
        const double allowed = std::max(options.tol, error_floor);

        if (!std::isfinite(error))
            throw NumericalError("propagate: non-finite Hamiltonian or state at t = " + format_time(t) + " ns");

        if (error <= allowed) {
            state = half;
            t = truncated ? target : t + dt;
            ++out.accepted;
            const double factor =
                error > 0.0 ? std::clamp(0.9 * std::pow(allowed / error, 0.2), 0.2, 5.0) : 5.0;
            step = truncated ? std::max(step, dt * factor) : dt * factor;
            if (truncated) {
                out.times.push_back(target);
                out.snapshots.push_back(state);
                ++next;
            }
        } else {
            ++out.rejected;
            step = dt * std::clamp(0.9 * std::pow(allowed / error, 0.2), 0.1, 0.9);
            if (step < min_step)
                throw NumericalError("propagate: step-size underflow at t = " + format_time(t) +
                                     " ns (stiff input or tolerance too tight)");
        }
        if (out.accepted + out.rejected > options.max_steps)
            throw NumericalError("propagate: step budget exhausted at t = " + format_time(t) + " ns");
    }
    return out;
}

} // namespace

void PropagationOptions::validate() const {
    if (!(tol > 1e-14 && tol < 1e-3))
        throw ValidationError("integrator.tol: must lie in (1e-14, 1e-3)");
    if (output_points < 2)
        throw ValidationError("integrator.output_points: need at least 2 points");
}

double Trajectory::max_norm_error() const {
    double worst = 0.0;
    for (const auto& s : states)
        worst = std::max(worst, std::abs(s.norm() - 1.0));
    return worst;
}

Trajectory propagate(const TimeDependentHamiltonian& h, const Eigen::VectorXcd& initial_state, TimeWindow tspan,
                     const PropagationOptions& options) {
    if (static_cast<std::size_t>(initial_state.size()) != h.dimension())
        throw ValidationError("propagate: initial state dimension " + std::to_string(initial_state.size()) +
                              " does not match Hamiltonian dimension " + std::to_string(h.dimension()));
    if (std::abs(initial_state.norm() - 1.0) > 1e-8)
        throw ValidationError("propagate: initial state must be normalized");

    Evolution ev = evolve(h, initial_state, tspan, options);

    Trajectory out;
    out.labels = h.basis_labels();
    out.times = std::move(ev.times);
    out.accepted_steps = ev.accepted;
    out.rejected_steps = ev.rejected;
    out.populations.resize(static_cast<Eigen::Index>(out.times.size()), initial_state.size());
    out.states.reserve(out.times.size());
    for (std::size_t i = 0; i < ev.snapshots.size(); ++i) {
        out.states.emplace_back(ev.snapshots[i].col(0));
        out.populations.row(static_cast<Eigen::Index>(i)) = out.states.back().cwiseAbs2().transpose();
    }
    return out;
}

Eigen::MatrixXcd propagate_unitary(const TimeDependentHamiltonian& h, TimeWindow tspan, double tol) {
    PropagationOptions options;
    options.tol = tol;
    options.output_points = 2;
    const auto n = static_cast<Eigen::Index>(h.dimension());
    Evolution ev = evolve(h, Eigen::MatrixXcd::Identity(n, n), tspan, options);
    return ev.snapshots.back();
}

Eigen::VectorXcd basis_state(std::size_t dimension, std::size_t index) {
    if (index >= dimension)
        throw ValidationError("basis_state: index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return v;
}

AdiabaticityReport adiabaticity_margin(const PulseSchedule& rabi, const PulseSchedule& detuning, TimeWindow tspan,
                                       std::size_t samples) {
    if (!(tspan.start < tspan.end))
        throw ValidationError("adiabaticity_margin: tspan must satisfy t_start < t_end");
    samples = std::max<std::size_t>(samples, 10001);

    AdiabaticityReport report;
    report.argmax_time = tspan.start;
    const double spacing = (tspan.end - tspan.start) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = i + 1 == samples ? tspan.end : tspan.start + spacing * static_cast<double>(i);
        const double omega = rabi(t);
        const double delta = detuning(t);
        const double gap_squared = delta * delta + omega * omega;
        if (gap_squared == 0.0)
            throw NumericalError("adiabaticity_margin: singular point Delta = Omega = 0 at t = " + format_time(t) +
                                 " ns");
        const double ratio = 0.5 * std::abs(omega * detuning.derivative(t) - delta * rabi.derivative(t)) /
                             std::pow(gap_squared, 1.5);
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.argmax_time = t;
        }
    }
    report.mixing_angle_start = mixing_angle(rabi(tspan.start), detuning(tspan.start));
    report.mixing_angle_end = mixing_angle(rabi(tspan.end), detuning(tspan.end));
    return report;
}

double landau_zener_probability(double rabi_gap, double sweep_rate) {
    if (!(rabi_gap >= 0.0))
        throw ValidationError("landau_zener_probability: rabi_gap must be non-negative");
    if (!(sweep_rate > 0.0))
        throw ValidationError("landau_zener_probability: sweep_rate must be positive");
    return std::exp(-units::pi * rabi_gap * rabi_gap / (2.0 * sweep_rate));
}

double mixing_angle(double rabi, double detuning) {
    if (rabi == 0.0 && detuning == 0.0)
        throw NumericalError("mixing_angle: undefined at Delta = Omega = 0");
    return 0.5 * std::atan2(std::abs(rabi), detuning);
}

InstantaneousEigenbasis instantaneous_eigenbasis(const TimeDependentHamiltonian& h, double t) {
    if (h.dimension() != 2)
        throw ValidationError("instantaneous_eigenbasis: needs a 2x2 Hamiltonian");
    const Eigen::MatrixXcd m = h(t);
    const double delta = m(1, 1).real() - m(0, 0).real();
    const double omega = 2.0 * std::abs(m(0, 1));
    if (delta == 0.0 && omega == 0.0)
        throw NumericalError("instantaneous_eigenbasis: degenerate point Delta = Omega = 0 at t = " +
                             format_time(t) + " ns");
    const double trace = m(0, 0).real() + m(1, 1).real();
    const double root = std::hypot(delta, omega);
    return {mixing_angle(omega, delta), 0.5 * (trace - root), 0.5 * (trace + root)};
}

} // namespace scrap
