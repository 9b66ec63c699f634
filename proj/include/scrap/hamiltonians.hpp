#pragma once

#include "scrap/pulse.hpp"
#include "scrap/spectrum.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace scrap {

/// An evaluable map t -> Hermitian matrix (rad/ns) with fixed dimension and basis labels.
class TimeDependentHamiltonian {
public:
    using Matrix = Eigen::MatrixXcd;
    using Generator = std::function<Matrix(double)>;

    TimeDependentHamiltonian(std::vector<std::string> basis_labels, Generator generator, TimeWindow window);

    std::size_t dimension() const { return labels_.size(); }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    const TimeWindow& window() const { return window_; }

    Matrix evaluate(double t) const { return generator_(t); }
    Matrix operator()(double t) const { return generator_(t); }

private:
    std::vector<std::string> labels_;
    Generator generator_;
    TimeWindow window_;
};

/// max |H - H^dagger| elementwise.
double hermiticity_error(const Eigen::MatrixXcd& h);

/// Chirped two-level model, basis {|0>, |1>}:
///   H(t) = 1/2 [[0, Omega(t)], [Omega(t), 2 Delta(t)]].
/// Both schedules must share one window.
TimeDependentHamiltonian scrap_two_level(const PulseSchedule& rabi, const PulseSchedule& detuning);

/// Which transition the microwave is resonant with; fixes the rotating frame.
enum class DriveTransition { qubit_01, readout_12 };

/// Lowest three CBJJ levels under a dc current I_dc(t) (nA) and a microwave of envelope A(t) (nA),
/// in the frame rotating at the drive frequency, rotating-wave approximation:
///   diag: 0, (w10 - wd) + S_1(t), (w10 + w21 - 2 wd) + S_2(t),  S_n = -(Phi0/2pi) I_dc (delta_nn - delta_00)
///   (0,1): -(Phi0/2pi) A(t) delta_01 / 2,   (1,2): -(Phi0/2pi) A(t) delta_12 / 2
/// The (0,2) element is dropped. wd = w10 for the qubit drive, w21 for readout.
TimeDependentHamiltonian driven_three_level(const SpectrumResult& spectrum, const PulseSchedule& dc_current,
                                            const PulseSchedule& mw_envelope, DriveTransition drive);

/// Single-qubit SCRAP drive (rotating frame at w10).
TimeDependentHamiltonian single_qubit_three_level(const SpectrumResult& spectrum, const PulseSchedule& dc_current,
                                                  const PulseSchedule& mw_envelope);

/// The two-level reduction of the single-qubit drive: Omega = -(Phi0/2pi) A delta_01 and
/// Delta = -(Phi0/2pi) I_dc (delta_11 - delta_00), both in rad/ns.
struct EffectiveTwoLevelDrive {
    PulseSchedule rabi;
    PulseSchedule detuning;
};
EffectiveTwoLevelDrive effective_qubit_drive(const SpectrumResult& spectrum, const PulseSchedule& dc_current,
                                             const PulseSchedule& mw_envelope);
/// Same for the readout transition (frame at w21): Omega = -(Phi0/2pi) A delta_12,
/// Delta = -(Phi0/2pi) I_dc (delta_22 - delta_11).
EffectiveTwoLevelDrive effective_readout_drive(const SpectrumResult& spectrum, const PulseSchedule& dc_current,
                                               const PulseSchedule& mw_envelope);

/// XY two-qubit model, basis {|00>, |01>, |10>, |11>}:
///   H = 1/2 [[-D2, 0, 0, 0], [0, -D2, K, 0], [0, K, D2, 0], [0, 0, 0, D2]].
TimeDependentHamiltonian xy_two_qubit(const PulseSchedule& coupling, const PulseSchedule& detuning2);

/// Constants of two identical capacitively coupled CBJJs, all rad/ns.
/// `coupling_unit` is (2pi/Phi0)^2 hbar / C_m_eff with 1/C_m_eff = zeta / (C_J (1 + zeta));
/// products of momentum elements are evaluated with p_ij = -i d_ij exactly as they appear
/// (e.g. p_10^2 = -d_10^2), keeping the real part.
struct CoupledCbjjConstants {
    double coupling_unit = 0.0;
    double omega_bar = 0.0; ///< 2 g p_10^2
    double omega_ab = 0.0;  ///< g p_01 p_12
    double omega_ac = 0.0;  ///< g p_02^2
    double theta = 0.0;     ///< w10 - w21
};
CoupledCbjjConstants coupled_cbjj_constants(const SpectrumResult& spectrum, double coupling_zeta,
                                            double junction_capacitance_pF);

/// Subspace {|00>}: E_00(t) = -(Phi0/2pi) I2(t) delta_00 + g p_00^2.
TimeDependentHamiltonian coupled_cbjj_ground(const SpectrumResult& spectrum, double coupling_zeta,
                                             double junction_capacitance_pF, const PulseSchedule& dc_current2);

/// Subspace {|01>, |10>} in chirped two-level form with Omega = omega_bar and
/// Delta(t) = +(Phi0/2pi) I2(t) (delta_11 - delta_00).
TimeDependentHamiltonian coupled_cbjj_pair_subspace2(const SpectrumResult& spectrum, double coupling_zeta,
                                                     double junction_capacitance_pF,
                                                     const PulseSchedule& dc_current2);

/// The full four-state computational block of the coupled pair, as the XY model with
/// K = omega_bar and D2 = the subspace-2 detuning.
TimeDependentHamiltonian coupled_cbjj_xy(const SpectrumResult& spectrum, double coupling_zeta,
                                         double junction_capacitance_pF, const PulseSchedule& dc_current2);

/// Subspace {|02>, |11>, |20>} with the explicit e^{-i t theta} phases of the interaction picture.
TimeDependentHamiltonian coupled_cbjj_subspace3(const SpectrumResult& spectrum, double coupling_zeta,
                                                double junction_capacitance_pF,
                                                const PulseSchedule& dc_current2);

/// Places `h` on the basis states `indices` of a larger zero Hamiltonian.
TimeDependentHamiltonian embed(const TimeDependentHamiltonian& h, std::vector<std::string> labels,
                               std::vector<std::size_t> indices);

/// H'(t) = -H(t_start + t_end - t): propagating with it undoes the forward evolution.
TimeDependentHamiltonian time_mirrored(const TimeDependentHamiltonian& h);

} // namespace scrap
