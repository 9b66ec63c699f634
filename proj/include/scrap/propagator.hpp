#pragma once

#include "scrap/hamiltonians.hpp"
#include "scrap/pulse.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace scrap {

struct PropagationOptions {
    /// Local error target per accepted step (step-doubling estimate).
    double tol = 1e-9;
    /// Uniform output mesh size, both end points included.
    std::size_t output_points = 1000;
    std::size_t max_steps = 20'000'000;

    void validate() const;
};

/// Sampled evolution on a uniform output mesh.
struct Trajectory {
    std::vector<std::string> labels;
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
    Eigen::MatrixXd populations; ///< one row per mesh time, one column per basis state
    std::optional<Eigen::MatrixXcd> final_unitary;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    const Eigen::VectorXcd& final_state() const { return states.back(); }
    /// max_t | ||psi(t)|| - 1 |
    double max_norm_error() const;
};

/// Fourth-order commutator-free Magnus integration of i d/dt psi = H(t) psi with step-doubling
/// error control. Each step is a product of two Hermitian exponentials, unitary by construction.
/// Throws NumericalError on step-size underflow (with the offending time).
Trajectory propagate(const TimeDependentHamiltonian& h, const Eigen::VectorXcd& initial_state, TimeWindow tspan,
                     const PropagationOptions& options = {});

/// Propagator U(t_end, t_start); columns are the evolved basis states.
Eigen::MatrixXcd propagate_unitary(const TimeDependentHamiltonian& h, TimeWindow tspan, double tol = 1e-9);

/// Basis state |index> of dimension `dimension`.
Eigen::VectorXcd basis_state(std::size_t dimension, std::size_t index);

struct AdiabaticityReport {
    double max_ratio = 0.0;          ///< max of |Omega dDelta/dt - Delta dOmega/dt| / 2 / (Delta^2 + Omega^2)^{3/2}
    double argmax_time = 0.0;        ///< ns
    double mixing_angle_start = 0.0; ///< rad, in [0, pi/2]
    double mixing_angle_end = 0.0;
};

/// Dense scan (at least 10^4 samples) of the adiabaticity ratio with analytic pulse derivatives.
/// Throws NumericalError if Delta = Omega = 0 at a sample (ratio undefined).
AdiabaticityReport adiabaticity_margin(const PulseSchedule& rabi, const PulseSchedule& detuning, TimeWindow tspan,
                                       std::size_t samples = 20001);

/// Diabatic (transfer-failure) probability exp(-pi Omega^2 / (2 v)) for the chirped two-level
/// model with minimum gap Omega and sweep rate v = dDelta/dt.
double landau_zener_probability(double rabi_gap, double sweep_rate);

/// theta = arctan(|Omega| / Delta) / 2 on the branch [0, pi/2].
double mixing_angle(double rabi, double detuning);

struct InstantaneousEigenbasis {
    double mixing_angle = 0.0;
    double lower = 0.0; ///< (Delta - sqrt(Delta^2 + Omega^2)) / 2 for the chirped two-level form
    double upper = 0.0;
};

/// Adiabatic energies and mixing angle of a 2x2 Hamiltonian at time t, reading
/// Delta = H11 - H00 and Omega = 2 |H01|. Throws NumericalError at the degenerate point.
InstantaneousEigenbasis instantaneous_eigenbasis(const TimeDependentHamiltonian& h, double t);

} // namespace scrap
