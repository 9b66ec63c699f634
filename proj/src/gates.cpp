#include "scrap/gates.hpp"

#include "scrap/errors.hpp"
#include "scrap/units.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace scrap {

namespace {

using cplx = std::complex<double>;

constexpr std::array<std::size_t, 4> swap_image{0, 2, 1, 3};

} // namespace

double GateMatrix::unitarity_error() const {
    const auto n = matrix.rows();
    return (matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

GateMatrix make_gate(Eigen::MatrixXcd matrix) {
    if (matrix.rows() != matrix.cols())
        throw ValidationError("gate matrix must be square");
    if (matrix.rows() != 2 && matrix.rows() != 4)
        throw ValidationError("gate matrix dimension must be 2 or 4");
    GateMatrix g;
    g.matrix = std::move(matrix);
    if (g.unitarity_error() > 1e-8)
        throw ValidationError("gate matrix is not unitary within 1e-8");
    if (g.matrix.rows() == 2)
        g.basis_labels = {"|0>", "|1>"};
    else
        g.basis_labels = {"|00>", "|01>", "|10>", "|11>"};
    return g;
}

GateMatrix phase_shift_gate(double alpha) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    m(1, 1) = std::polar(1.0, alpha);
    GateMatrix g = make_gate(std::move(m));
    g.phases = PhaseBookkeeping{alpha, CorrectionSide::none, 0.0, 0.0};
    return g;
}

GateMatrix pauli_x() {
    Eigen::MatrixXcd m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return make_gate(std::move(m));
}

GateMatrix swap_gate() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    for (std::size_t j = 0; j < 4; ++j)
        m(static_cast<Eigen::Index>(swap_image[j]), static_cast<Eigen::Index>(j)) = 1.0;
    return make_gate(std::move(m));
}

UxPhases expected_ux_phases(const PulseSchedule& rabi, const PulseSchedule& detuning, TimeWindow tspan,
                            double relative_tolerance) {
    if (!(tspan.start < tspan.end))
        throw ValidationError("expected_ux_phases: tspan must satisfy t_start < t_end");
    const auto gap = [&](double t) { return std::hypot(detuning(t), rabi(t)); };

    // Split at the origin and the window edges so the integrand is smooth on every piece.
    std::vector<double> cuts{tspan.start};
    for (double c : {rabi.window().start, rabi.window().end, detuning.window().start, detuning.window().end,
                     0.0})
        if (c > tspan.start && c < tspan.end) cuts.push_back(c);
    cuts.push_back(tspan.end);
    std::sort(cuts.begin(), cuts.end());

    double gap_integral = 0.0;
    for (std::size_t k = 1; k < cuts.size(); ++k) {
        if (!(cuts[k] > cuts[k - 1])) continue;
        gap_integral += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            gap, cuts[k - 1], cuts[k], 30, relative_tolerance);
    }
    const double detuning_integral = detuning.integral(tspan.start, tspan.end);
    return {-0.5 * (detuning_integral + gap_integral), -0.5 * (detuning_integral - gap_integral)};
}

UxPhases extract_ux_phases(const Eigen::MatrixXcd& u) {
    if (u.rows() != 2 || u.cols() != 2)
        throw ValidationError("extract_ux_phases: needs a 2x2 matrix");
    return {std::arg(u(0, 1)), std::arg(-u(1, 0))};
}

double wrap_phase(double phase) {
    double w = std::remainder(phase, units::two_pi);
    if (w <= -units::pi) w += units::two_pi;
    return w;
}

GateMatrix cancel_phases(const GateMatrix& u, double beta_plus, double beta_minus) {
    if (u.dimension() != 2)
        throw ValidationError("cancel_phases: needs a 2x2 gate");
    const GateMatrix target = pauli_x();

    // U_z(a) U_x = [[0, e^{i b+}], [-e^{i(b- + a)}, 0]] equals e^{i b+} sigma_x for a = b+ - b- - pi;
    // U_x U_z(b) needs b = b- + pi - b+ instead.
    const double alpha_after = wrap_phase(beta_plus - beta_minus - units::pi);
    const double alpha_before = wrap_phase(beta_minus + units::pi - beta_plus);
    const Eigen::MatrixXcd after = phase_shift_gate(alpha_after).matrix * u.matrix;
    const Eigen::MatrixXcd before = u.matrix * phase_shift_gate(alpha_before).matrix;
    const double f_after = gate_fidelity(after, target.matrix);
    const double f_before = gate_fidelity(before, target.matrix);

    const bool use_after = f_after >= f_before;
    const double best = use_after ? f_after : f_before;
    if (!(best > 0.5))
        throw ValidationError("cancel_phases: no phase correction reaches fidelity 0.5; the gate does not invert "
                              "the qubit populations");

    GateMatrix out = make_gate(use_after ? after : before);
    out.phases = PhaseBookkeeping{use_after ? alpha_after : alpha_before,
                                  use_after ? CorrectionSide::after : CorrectionSide::before, beta_plus, beta_minus};
    return out;
}

double gate_fidelity(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
        throw ValidationError("gate_fidelity: dimension mismatch");
    const double d = static_cast<double>(u.rows());
    return std::norm((u.adjoint() * v).trace()) / (d * d);
}

double gate_fidelity(const GateMatrix& u, const GateMatrix& v) {
    return gate_fidelity(u.matrix, v.matrix);
}

SwapScore swap_fidelity(const GateMatrix& u4) {
    if (u4.dimension() != 4 || u4.matrix.cols() != 4)
        throw ValidationError("swap_fidelity: needs a 4x4 gate");
    SwapScore score;
    Eigen::MatrixXcd dressed = Eigen::MatrixXcd::Zero(4, 4);
    for (std::size_t j = 0; j < 4; ++j) {
        const auto row = static_cast<Eigen::Index>(swap_image[j]);
        const auto col = static_cast<Eigen::Index>(j);
        const cplx element = u4.matrix(row, col);
        score.population += std::norm(element) / 4.0;
        dressed(row, col) = std::polar(1.0, std::arg(element));
    }
    score.phase_sensitive = gate_fidelity(u4.matrix, dressed);
    return score;
}

} // namespace scrap
