#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scrap/errors.hpp"
#include "scrap/gates.hpp"
#include "scrap/hamiltonians.hpp"
#include "scrap/propagator.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace scrap;
using cplx = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

Eigen::MatrixXcd inverter(double beta_plus, double beta_minus) {
    Eigen::MatrixXcd u(2, 2);
    u << 0.0, std::polar(1.0, beta_plus), -std::polar(1.0, beta_minus), 0.0;
    return u;
}

template <typename F>
double simpson(F f, double a, double b, int intervals) {
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int k = 1; k < intervals; ++k)
        sum += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

} // namespace

TEST_CASE("phase integrals in closed form") {
    // no detuning: lambda_pm = +-Omega0/2 for the whole window
    const TimeWindow w{-20.0, 30.0};
    const auto phases = expected_ux_phases(PulseSchedule::constant(0.8, w), PulseSchedule::constant(0.0, w), w);
    CHECK(phases.beta_plus == doctest::Approx(-0.8 * 50.0 / 2.0));
    CHECK(phases.beta_minus == doctest::Approx(0.8 * 50.0 / 2.0));
}

TEST_CASE("phase integrals against Simpson quadrature") {
    const TimeWindow w{-300.0, 200.0};
    const auto rabi = PulseSchedule::gaussian(2.0, 80.0, w, 10.0);
    const auto det = PulseSchedule::linear_ramp(-0.03, w, 0.5);
    const auto phases = expected_ux_phases(rabi, det, w);
    const auto lambda = [&](double t, double sign) {
        return 0.5 * (det(t) + sign * std::hypot(det(t), rabi(t)));
    };
    const double plus = -simpson([&](double t) { return lambda(t, 1.0); }, w.start, w.end, 200000);
    const double minus = -simpson([&](double t) { return lambda(t, -1.0); }, w.start, w.end, 200000);
    CHECK(phases.beta_plus == doctest::Approx(plus).epsilon(1e-10));
    CHECK(phases.beta_minus == doctest::Approx(minus).epsilon(1e-10));
    CHECK_THROWS_AS(expected_ux_phases(rabi, det, {1.0, 1.0}), ValidationError);
}

TEST_CASE("phase wrapping and extraction") {
    CHECK(wrap_phase(pi) == doctest::Approx(pi));
    CHECK(wrap_phase(-pi) == doctest::Approx(pi));
    CHECK(wrap_phase(3.0 * pi) == doctest::Approx(pi));
    CHECK(wrap_phase(0.25 - 8.0 * pi) == doctest::Approx(0.25));
    CHECK(wrap_phase(-1.0) == doctest::Approx(-1.0));

    const auto got = extract_ux_phases(inverter(0.7, -2.1));
    CHECK(got.beta_plus == doctest::Approx(0.7));
    CHECK(got.beta_minus == doctest::Approx(-2.1));
    CHECK_THROWS_AS(extract_ux_phases(Eigen::MatrixXcd::Identity(3, 3)), ValidationError);
}

TEST_CASE("phase cancellation restores sigma_x") {
    for (auto [bp, bm] : {std::pair{0.7, -2.1}, std::pair{3.0, 3.0}, std::pair{-1.2, 0.4}}) {
        const auto corrected = cancel_phases(make_gate(inverter(bp, bm)), bp, bm);
        CHECK(gate_fidelity(corrected, pauli_x()) == doctest::Approx(1.0).epsilon(1e-14));
        REQUIRE(corrected.phases.has_value());
        CHECK(corrected.phases->side != CorrectionSide::none);
        CHECK(corrected.phases->beta_plus == bp);

        const auto& bk = *corrected.phases;
        const auto z = phase_shift_gate(bk.alpha).matrix;
        const Eigen::MatrixXcd rebuilt =
            bk.side == CorrectionSide::after ? Eigen::MatrixXcd(z * inverter(bp, bm)) : Eigen::MatrixXcd(inverter(bp, bm) * z);
        CHECK((rebuilt - corrected.matrix).cwiseAbs().maxCoeff() < 1e-14);
    }
    CHECK_THROWS_AS(cancel_phases(make_gate(Eigen::MatrixXcd::Identity(2, 2)), 0.0, 0.0), ValidationError);
}

TEST_CASE("gate matrices") {
    CHECK_THROWS_AS(make_gate(Eigen::MatrixXcd::Identity(3, 3)), ValidationError);
    CHECK_THROWS_AS(make_gate(Eigen::MatrixXcd::Ones(2, 2)), ValidationError);
    CHECK_THROWS_AS(make_gate(Eigen::MatrixXcd::Identity(2, 3)), ValidationError);
    CHECK(phase_shift_gate(0.3).matrix(1, 1) == std::polar(1.0, 0.3));
    CHECK(swap_gate().unitarity_error() == 0.0);

    const auto x = pauli_x();
    CHECK(gate_fidelity(x.matrix * std::polar(1.0, 1.234), x.matrix) == doctest::Approx(1.0));
    CHECK(gate_fidelity(Eigen::MatrixXcd::Identity(2, 2), x.matrix) == doctest::Approx(0.0));
    CHECK_THROWS_AS(gate_fidelity(x.matrix, Eigen::MatrixXcd::Identity(4, 4)), ValidationError);
}

TEST_CASE("swap scoring") {
    const auto exact = swap_fidelity(swap_gate());
    CHECK(exact.population == doctest::Approx(1.0));
    CHECK(exact.phase_sensitive == doctest::Approx(1.0));

    const auto idle = swap_fidelity(make_gate(Eigen::MatrixXcd::Identity(4, 4)));
    CHECK(idle.population == doctest::Approx(0.5));

    // iSWAP-like output phases still score as a full exchange
    Eigen::MatrixXcd dressed = swap_gate().matrix;
    dressed(2, 1) = cplx(0.0, 1.0);
    dressed(1, 2) = cplx(0.0, -1.0);
    CHECK(swap_fidelity(make_gate(dressed)).phase_sensitive == doctest::Approx(1.0));

    // half-way exchange
    Eigen::MatrixXcd half = Eigen::MatrixXcd::Identity(4, 4);
    const double r = std::sqrt(0.5);
    half(1, 1) = half(2, 2) = r;
    half(1, 2) = half(2, 1) = cplx(0.0, r);
    const auto partial = swap_fidelity(make_gate(half));
    CHECK(partial.population == doctest::Approx(0.75));
    CHECK(partial.phase_sensitive < partial.population);
    CHECK_THROWS_AS(swap_fidelity(pauli_x()), ValidationError);
}

TEST_CASE("propagated inverter carries the quadrature phases") {
    // sweep from Delta > 0 to Delta < 0 so |1> starts on the upper branch
    const TimeWindow w{-200.0, 200.0};
    const auto rabi = PulseSchedule::gaussian(3.0, 60.0, w);
    const auto det = PulseSchedule::linear_ramp(-0.05, w);
    const Eigen::MatrixXcd u = propagate_unitary(scrap_two_level(rabi, det), w, 1e-12);
    const auto expected = expected_ux_phases(rabi, det, w);
    const auto got = extract_ux_phases(u);
    CHECK(std::abs(wrap_phase(got.beta_plus - expected.beta_plus)) < 1e-2);
    CHECK(std::abs(wrap_phase(got.beta_minus - expected.beta_minus)) < 1e-2);
    const auto corrected = cancel_phases(make_gate(u), expected.beta_plus, expected.beta_minus);
    CHECK(gate_fidelity(corrected, pauli_x()) > 1.0 - 1e-4);
}
