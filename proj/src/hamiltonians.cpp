#include "scrap/hamiltonians.hpp"

#include "scrap/errors.hpp"
#include "scrap/units.hpp"

#include <cmath>
#include <complex>
#include <utility>

namespace scrap {

namespace {

using cplx = std::complex<double>;
constexpr double k_current = units::rad_per_ns_per_nA;

void require_common_window(const PulseSchedule& a, const PulseSchedule& b, const char* who) {
    const auto& wa = a.window();
    const auto& wb = b.window();
    if (wa.start != wb.start || wa.end != wb.end)
        throw ValidationError(std::string(who) + ": schedules must share one window");
}

void require_levels(const SpectrumResult& spectrum, std::size_t n, const char* who) {
    if (spectrum.levels() < n || spectrum.delta_matrix.rows() < static_cast<Eigen::Index>(n) ||
        spectrum.momentum_matrix.rows() < static_cast<Eigen::Index>(n))
        throw ValidationError(std::string(who) + ": spectrum must hold at least " + std::to_string(n) +
                              " levels");
}

} // namespace

TimeDependentHamiltonian::TimeDependentHamiltonian(std::vector<std::string> basis_labels, Generator generator,
                                                   TimeWindow window)
    : labels_(std::move(basis_labels)), generator_(std::move(generator)), window_(window) {
    if (labels_.empty())
        throw ValidationError("hamiltonian needs at least one basis state");
    if (!generator_)
        throw ValidationError("hamiltonian generator is empty");
    if (!(window_.start < window_.end))
        throw ValidationError("hamiltonian window must satisfy t_start < t_end");
}

double hermiticity_error(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols())
        throw ValidationError("hermiticity_error: matrix is not square");
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

TimeDependentHamiltonian scrap_two_level(const PulseSchedule& rabi, const PulseSchedule& detuning) {
    require_common_window(rabi, detuning, "scrap_two_level");
    return {{"|0>", "|1>"},
            [rabi, detuning](double t) {
                const double omega = rabi(t);
                Eigen::MatrixXcd h(2, 2);
                h << 0.0, 0.5 * omega, 0.5 * omega, detuning(t);
                return h;
            },
            rabi.window()};
}

TimeDependentHamiltonian driven_three_level(const SpectrumResult& spectrum, const PulseSchedule& dc_current,
                                            const PulseSchedule& mw_envelope, DriveTransition drive) {
    require_levels(spectrum, 3, "driven_three_level");
    require_common_window(dc_current, mw_envelope, "driven_three_level");

    const double w10 = spectrum.transition(0);
    const double w21 = spectrum.transition(1);
    const double wd = drive == DriveTransition::qubit_01 ? w10 : w21;
    const auto& d = spectrum.delta_matrix;
    const double offset1 = w10 - wd;
    const double offset2 = w10 + w21 - 2.0 * wd;
    const double stark1 = -k_current * (d(1, 1) - d(0, 0));
    const double stark2 = -k_current * (d(2, 2) - d(0, 0));
    const double rabi01 = -k_current * d(0, 1);
    const double rabi12 = -k_current * d(1, 2);

    return {{"|0>", "|1>", "|2>"},
            [=](double t) {
                const double current = dc_current(t);
                const double amplitude = mw_envelope(t);
                Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
                h(1, 1) = offset1 + stark1 * current;
                h(2, 2) = offset2 + stark2 * current;
                h(0, 1) = h(1, 0) = 0.5 * rabi01 * amplitude;
                h(1, 2) = h(2, 1) = 0.5 * rabi12 * amplitude;
                return h;
            },
            dc_current.window()};
}

TimeDependentHamiltonian single_qubit_three_level(const SpectrumResult& spectrum, const PulseSchedule& dc_current,
                                                  const PulseSchedule& mw_envelope) {
    return driven_three_level(spectrum, dc_current, mw_envelope, DriveTransition::qubit_01);
}

EffectiveTwoLevelDrive effective_qubit_drive(const SpectrumResult& spectrum, const PulseSchedule& dc_current,
                                             const PulseSchedule& mw_envelope) {
    require_levels(spectrum, 2, "effective_qubit_drive");
    const auto& d = spectrum.delta_matrix;
    return {mw_envelope.scaled(-k_current * d(0, 1)), dc_current.scaled(-k_current * (d(1, 1) - d(0, 0)))};
}

EffectiveTwoLevelDrive effective_readout_drive(const SpectrumResult& spectrum, const PulseSchedule& dc_current,
                                               const PulseSchedule& mw_envelope) {
    require_levels(spectrum, 3, "effective_readout_drive");
    const auto& d = spectrum.delta_matrix;
    return {mw_envelope.scaled(-k_current * d(1, 2)), dc_current.scaled(-k_current * (d(2, 2) - d(1, 1)))};
}

TimeDependentHamiltonian xy_two_qubit(const PulseSchedule& coupling, const PulseSchedule& detuning2) {
    require_common_window(coupling, detuning2, "xy_two_qubit");
    return {{"|00>", "|01>", "|10>", "|11>"},
            [coupling, detuning2](double t) {
                const double k = 0.5 * coupling(t);
                const double d = 0.5 * detuning2(t);
                Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
                h(0, 0) = -d;
                h(1, 1) = -d;
                h(2, 2) = d;
                h(3, 3) = d;
                h(1, 2) = h(2, 1) = k;
                return h;
            },
            coupling.window()};
}

CoupledCbjjConstants coupled_cbjj_constants(const SpectrumResult& spectrum, double coupling_zeta,
                                            double junction_capacitance_pF) {
    if (!(coupling_zeta > 0.0 && coupling_zeta < 1.0))
        throw ValidationError("coupling_zeta: must lie in (0, 1)");
    if (!(junction_capacitance_pF > 0.0))
        throw ValidationError("junction_capacitance_pF: must be positive");
    require_levels(spectrum, 3, "coupled_cbjj_constants");

    const double inverse_cm = coupling_zeta / (junction_capacitance_pF * units::pF * (1.0 + coupling_zeta));
    const double two_pi_over_phi0 = 1.0 / units::reduced_flux_quantum;
    // (2pi/Phi0)^2 * hbar^2 / C_m, divided by hbar for rad/s, then to rad/ns; p is in units of hbar.
    const double g = two_pi_over_phi0 * two_pi_over_phi0 * units::hbar * inverse_cm * 1e-9;

    const Eigen::MatrixXcd p = cplx(0.0, -1.0) * spectrum.momentum_matrix.cast<cplx>();
    CoupledCbjjConstants c;
    c.coupling_unit = g;
    c.omega_bar = 2.0 * g * (p(1, 0) * p(1, 0)).real();
    c.omega_ab = g * (p(0, 1) * p(1, 2)).real();
    c.omega_ac = g * (p(0, 2) * p(0, 2)).real();
    c.theta = spectrum.transition(0) - spectrum.transition(1);
    return c;
}

TimeDependentHamiltonian coupled_cbjj_ground(const SpectrumResult& spectrum, double coupling_zeta,
                                             double junction_capacitance_pF, const PulseSchedule& dc_current2) {
    const auto c = coupled_cbjj_constants(spectrum, coupling_zeta, junction_capacitance_pF);
    const Eigen::MatrixXcd p = cplx(0.0, -1.0) * spectrum.momentum_matrix.cast<cplx>();
    const double static_part = c.coupling_unit * (p(0, 0) * p(0, 0)).real();
    const double stark = -k_current * spectrum.delta_matrix(0, 0);
    return {{"|00>"},
            [=](double t) {
                Eigen::MatrixXcd h(1, 1);
                h(0, 0) = stark * dc_current2(t) + static_part;
                return h;
            },
            dc_current2.window()};
}

TimeDependentHamiltonian coupled_cbjj_pair_subspace2(const SpectrumResult& spectrum, double coupling_zeta,
                                                     double junction_capacitance_pF,
                                                     const PulseSchedule& dc_current2) {
    const auto c = coupled_cbjj_constants(spectrum, coupling_zeta, junction_capacitance_pF);
    const auto& d = spectrum.delta_matrix;
    const double chirp = k_current * (d(1, 1) - d(0, 0));
    const double omega = c.omega_bar;
    return {{"|01>", "|10>"},
            [=](double t) {
                Eigen::MatrixXcd h(2, 2);
                h << 0.0, 0.5 * omega, 0.5 * omega, chirp * dc_current2(t);
                return h;
            },
            dc_current2.window()};
}

TimeDependentHamiltonian coupled_cbjj_xy(const SpectrumResult& spectrum, double coupling_zeta,
                                         double junction_capacitance_pF, const PulseSchedule& dc_current2) {
    const auto c = coupled_cbjj_constants(spectrum, coupling_zeta, junction_capacitance_pF);
    const auto& d = spectrum.delta_matrix;
    return xy_two_qubit(PulseSchedule::constant(c.omega_bar, dc_current2.window()),
                        dc_current2.scaled(units::rad_per_ns_per_nA * (d(1, 1) - d(0, 0))));
}

TimeDependentHamiltonian coupled_cbjj_subspace3(const SpectrumResult& spectrum, double coupling_zeta,
                                                double junction_capacitance_pF,
                                                const PulseSchedule& dc_current2) {
    const auto c = coupled_cbjj_constants(spectrum, coupling_zeta, junction_capacitance_pF);
    const Eigen::MatrixXcd p = cplx(0.0, -1.0) * spectrum.momentum_matrix.cast<cplx>();
    const auto& d = spectrum.delta_matrix;
    const double g = c.coupling_unit;
    const double static_a = g * (p(0, 0) * p(2, 2)).real();
    const double static_b = g * (p(1, 1) * p(1, 1)).real();
    const double static_c = g * (p(2, 2) * p(0, 0)).real();
    const double stark_a = -k_current * d(2, 2);
    const double stark_b = -k_current * d(1, 1);
    const double stark_c = -k_current * d(0, 0);
    const double omega_ab = c.omega_ab;
    const double omega_ac = c.omega_ac;
    const double theta = c.theta;

    return {{"|02>", "|11>", "|20>"},
            [=](double t) {
                const double current = dc_current2(t);
                const cplx phase = std::polar(1.0, -t * theta);
                Eigen::MatrixXcd h(3, 3);
                h(0, 0) = stark_a * current + static_a;
                h(1, 1) = stark_b * current + static_b;
                h(2, 2) = stark_c * current + static_c;
                h(0, 1) = omega_ab * phase;
                h(1, 0) = omega_ab * std::conj(phase);
                h(1, 2) = omega_ab * std::conj(phase);
                h(2, 1) = omega_ab * phase;
                h(0, 2) = h(2, 0) = omega_ac;
                return h;
            },
            dc_current2.window()};
}

TimeDependentHamiltonian embed(const TimeDependentHamiltonian& h, std::vector<std::string> labels,
                               std::vector<std::size_t> indices) {
    if (indices.size() != h.dimension())
        throw ValidationError("embed: need one target index per basis state");
    for (auto i : indices)
        if (i >= labels.size())
            throw ValidationError("embed: target index out of range");
    const auto n = static_cast<Eigen::Index>(labels.size());
    return {std::move(labels),
            [h, indices, n](double t) {
                const Eigen::MatrixXcd small = h(t);
                Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(n, n);
                for (std::size_t a = 0; a < indices.size(); ++a)
                    for (std::size_t b = 0; b < indices.size(); ++b)
                        big(static_cast<Eigen::Index>(indices[a]), static_cast<Eigen::Index>(indices[b])) =
                            small(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                return big;
            },
            h.window()};
}

TimeDependentHamiltonian time_mirrored(const TimeDependentHamiltonian& h) {
    const double pivot = h.window().start + h.window().end;
    return {h.basis_labels(), [h, pivot](double t) -> Eigen::MatrixXcd { return -h(pivot - t); }, h.window()};
}

} // namespace scrap
