#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace scrap {

/// Physical junction parameters plus discretization controls.
struct CbjjParams {
    double junction_capacitance_pF = 4.3;
    double critical_current_uA = 13.3;
    double bias_current_ratio = 0.9725; ///< I_b / I_0, must lie in [0, 1)
    std::size_t grid_points = 2048;
    double box_margin = 0.5; ///< box extension past each turning point, as a fraction of the well width

    /// Throws ValidationError naming the offending field.
    void validate() const;

    double josephson_energy() const;     ///< E_J in rad/ns
    double kinetic_coefficient() const;  ///< hbar^2/(2m) in rad/ns, m = C_J (Phi0/2pi)^2
    double plasma_frequency() const;     ///< small-oscillation frequency at the well bottom, rad/ns
};

/// Washboard potential sampled over one well, measured from the well bottom.
struct PotentialGrid {
    std::vector<double> grid;   ///< uniform phase samples (rad)
    std::vector<double> values; ///< U(delta) - U(delta_min), rad/ns; clamped to the barrier level outside the well
    double spacing = 0.0;
    double delta_min = 0.0;     ///< well minimum arcsin(I_b/I_0)
    double delta_barrier = 0.0; ///< barrier top pi - arcsin(I_b/I_0)
    double delta_left = 0.0;    ///< left classical turning point at the barrier energy
    double barrier_height = 0.0;
    double kinetic_coefficient = 0.0;
};

/// Bound states of the hard-wall discretized Hamiltonian p^2/2m + U.
///
/// Wavefunctions are real and normalized on the grid (sum psi^2 h = 1), columns of
/// `wavefunctions`. Each is signed so its value at the well minimum is non-negative; when
/// that value vanishes (odd states of a symmetric well) the slope there is made positive.
///
/// `momentum_matrix` holds d_ij = <i| d/d(delta) |j>, real and antisymmetric. The conjugate
/// momentum element is p_ij = -i hbar d_ij (hbar = 1), so p_ij is purely imaginary.
struct SpectrumResult {
    Eigen::VectorXd energies;       ///< rad/ns, relative to the well bottom
    Eigen::MatrixXd wavefunctions;  ///< grid_points x levels
    Eigen::MatrixXd delta_matrix;   ///< <i|delta|j>, symmetric
    Eigen::MatrixXd momentum_matrix;
    std::vector<double> grid;
    double spacing = 0.0;
    double kinetic_coefficient = 0.0;
    double barrier_height = 0.0;
    double delta_min = 0.0;

    std::size_t levels() const { return static_cast<std::size_t>(energies.size()); }
    /// Transition frequency (E_{i+1} - E_i), rad/ns.
    double transition(std::size_t lower) const;
    /// Effective mass in units where hbar = 1 and time is in ns: m = 1 / (2 * kinetic coefficient).
    double mass() const { return 0.5 / kinetic_coefficient; }
};

PotentialGrid build_washboard_potential(const CbjjParams& params);

/// Lowest `n_levels` states of the discretized well. Throws NumericalError if any requested
/// level lies at or above the barrier top.
SpectrumResult solve_bound_states(const PotentialGrid& potential, const CbjjParams& params,
                                  std::size_t n_levels);

/// Convenience: potential + bound states + matrix elements.
SpectrumResult compute_spectrum(const CbjjParams& params, std::size_t n_levels = 3);

Eigen::MatrixXd dipole_matrix(const SpectrumResult& spectrum);

/// d_ij = <i|d/d delta|j> by FFT differentiation of the wavefunctions; antisymmetrized.
Eigen::MatrixXd momentum_matrix(const SpectrumResult& spectrum);

/// Same matrix through the commutator identity [H, delta] = -i p/m:
/// d_ij = m (E_j - E_i) delta_ij. Independent of the differentiation route.
Eigen::MatrixXd momentum_matrix_from_commutator(const SpectrumResult& spectrum);

} // namespace scrap
