#pragma once

#include "scrap/pulse.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace scrap {

enum class CorrectionSide { none, before, after };

/// Dynamical phases of the NOT-type gate and the phase-shift correction applied to it.
struct PhaseBookkeeping {
    double alpha = 0.0; ///< rad, argument of the corrective U_z(alpha)
    CorrectionSide side = CorrectionSide::none;
    double beta_plus = 0.0;
    double beta_minus = 0.0;
};

struct GateMatrix {
    Eigen::MatrixXcd matrix;
    std::vector<std::string> basis_labels;
    std::optional<PhaseBookkeeping> phases;

    std::size_t dimension() const { return static_cast<std::size_t>(matrix.rows()); }
    /// max |U^dagger U - I| elementwise
    double unitarity_error() const;
};

GateMatrix make_gate(Eigen::MatrixXcd matrix);

/// U_z(alpha) = diag(1, e^{i alpha}).
GateMatrix phase_shift_gate(double alpha);
GateMatrix pauli_x();
GateMatrix swap_gate();

struct UxPhases {
    double beta_plus = 0.0;
    double beta_minus = 0.0;
};

/// beta_pm = -int lambda_pm(t) dt with lambda_pm = (Delta +- sqrt(Delta^2 + Omega^2)) / 2, the
/// adiabatic energies of the chirped two-level model. The Delta part is integrated in closed
/// form and the square-root part by adaptive Gauss-Kronrod quadrature.
UxPhases expected_ux_phases(const PulseSchedule& rabi, const PulseSchedule& detuning, TimeWindow tspan,
                            double relative_tolerance = 1e-12);

/// Reads beta_pm off a propagated inverter U = [[0, e^{i beta+}], [-e^{i beta-}, 0]]:
/// beta+ = arg U_01, beta- = arg(-U_10).
///
/// This labeling holds when Delta sweeps from positive to negative, so that |1> starts on the
/// upper adiabatic branch and |0> on the lower one. For the opposite sweep the branches swap
/// and the matrix picks up a sign.
UxPhases extract_ux_phases(const Eigen::MatrixXcd& u);

/// Wraps a phase to (-pi, pi].
double wrap_phase(double phase);

/// Composes a phase shift before or after `u` so the product is sigma_x up to a global phase.
/// Both placements are tried; the better one is returned with its alpha and side recorded.
/// Throws ValidationError if neither reaches fidelity 0.5 (u does not invert populations).
GateMatrix cancel_phases(const GateMatrix& u, double beta_plus, double beta_minus);

/// |Tr(U^dagger V)|^2 / d^2.
double gate_fidelity(const GateMatrix& u, const GateMatrix& v);
double gate_fidelity(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v);

struct SwapScore {
    /// Mean population landing on the SWAP image of each computational basis input.
    double population = 0.0;
    /// gate_fidelity against SWAP dressed with the diagonal output phases of u4.
    double phase_sensitive = 0.0;
};

SwapScore swap_fidelity(const GateMatrix& u4);

} // namespace scrap
