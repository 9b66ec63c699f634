#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scrap/errors.hpp"
#include "scrap/hamiltonians.hpp"
#include "scrap/propagator.hpp"

#include <cmath>
#include <complex>
#include <limits>

using namespace scrap;

namespace {

// Generalized Rabi formula for H = 1/2 [[0, W], [W, 2 D]] started in |0>.
double rabi_p1(double w, double d, double t) {
    const double r = std::sqrt(w * w + d * d);
    return w * w / (r * r) * std::pow(std::sin(0.5 * r * t), 2);
}

Eigen::VectorXcd chirped_final_state(double tol) {
    const TimeWindow w{-40.0, 40.0};
    const auto h = scrap_two_level(PulseSchedule::gaussian(1.3, 15.0, w), PulseSchedule::linear_ramp(0.12, w, 0.4));
    PropagationOptions o;
    o.tol = tol;
    o.output_points = 2;
    return propagate(h, basis_state(2, 0), w, o).final_state();
}

} // namespace

TEST_CASE("resonant and detuned Rabi oscillations") {
    const TimeWindow w{-5.0, 25.0};
    for (double detuning : {0.0, 0.45, -1.2}) {
        const auto h = scrap_two_level(PulseSchedule::constant(1.1, w), PulseSchedule::constant(detuning, w));
        PropagationOptions o;
        o.tol = 1e-11;
        o.output_points = 500;
        const auto tr = propagate(h, basis_state(2, 0), w, o);
        REQUIRE(tr.size() == 500);
        for (std::size_t i = 0; i < tr.size(); i += 7)
            CHECK(tr.populations(static_cast<Eigen::Index>(i), 1) ==
                  doctest::Approx(rabi_p1(1.1, detuning, tr.times[i] - w.start)).epsilon(1e-8).scale(1.0));
        CHECK(tr.max_norm_error() < 1e-8);
    }
}

TEST_CASE("tightening the tolerance reduces the error") {
    const Eigen::VectorXcd reference = chirped_final_state(1e-13);
    const double e5 = (chirped_final_state(1e-5) - reference).norm();
    const double e7 = (chirped_final_state(1e-7) - reference).norm();
    const double e9 = (chirped_final_state(1e-9) - reference).norm();
    CHECK(e7 < e5);
    CHECK(e9 < e7);
    CHECK(e9 < 1e-7);
}

TEST_CASE("output mesh") {
    const TimeWindow w{-3.0, 7.0};
    const auto h = scrap_two_level(PulseSchedule::constant(1.0, w), PulseSchedule::linear_ramp(0.2, w));
    PropagationOptions o;
    o.output_points = 11;
    const auto tr = propagate(h, basis_state(2, 1), w, o);
    REQUIRE(tr.size() == 11);
    CHECK(tr.times.front() == w.start);
    CHECK(tr.times.back() == w.end);
    for (std::size_t i = 0; i < tr.size(); ++i)
        CHECK(tr.times[i] == doctest::Approx(-3.0 + static_cast<double>(i)));
    CHECK(tr.populations(0, 1) == 1.0);
    CHECK(tr.labels == std::vector<std::string>{"|0>", "|1>"});
    CHECK(tr.accepted_steps >= 10);
}

TEST_CASE("Landau-Zener crossings") {
    for (auto [gap, rate] : {std::pair{1.0, 1.0}, std::pair{0.55, 2.1}, std::pair{1.64, 4.5}}) {
        const double half = 200.0 * std::max(gap / rate, 1.0 / std::sqrt(rate));
        const TimeWindow w{-half, half};
        const auto h = scrap_two_level(PulseSchedule::constant(gap, w), PulseSchedule::linear_ramp(rate, w));
        const auto tr = propagate(h, basis_state(2, 0), w);
        CHECK(tr.populations(static_cast<Eigen::Index>(tr.size() - 1), 0) ==
              doctest::Approx(std::exp(-std::numbers::pi * gap * gap / (2.0 * rate))).epsilon(1e-2).scale(1.0));
    }
    CHECK(landau_zener_probability(1.0, 1.0) == doctest::Approx(std::exp(-std::numbers::pi / 2.0)));
    CHECK(landau_zener_probability(0.0, 3.0) == 1.0);
    CHECK_THROWS_AS(landau_zener_probability(1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(landau_zener_probability(-1.0, 1.0), ValidationError);
}

TEST_CASE("propagator is unitary and time-reversible") {
    const TimeWindow w{-60.0, 60.0};
    const auto h = scrap_two_level(PulseSchedule::gaussian(0.9, 20.0, w), PulseSchedule::linear_ramp(0.05, w));
    const Eigen::MatrixXcd u = propagate_unitary(h, w, 1e-11);
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXcd back = propagate_unitary(time_mirrored(h), w, 1e-11);
    CHECK((back * u - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("pair subspace equals the embedded four-state block") {
    const auto spectrum = compute_spectrum(CbjjParams{}, 3);
    const TimeWindow w{-250.0, 250.0};
    const auto dc2 = PulseSchedule::linear_ramp(3.0, w);
    const Eigen::MatrixXcd u2 = propagate_unitary(coupled_cbjj_pair_subspace2(spectrum, 0.05, 4.3, dc2), w, 1e-11);
    const Eigen::MatrixXcd u4 = propagate_unitary(coupled_cbjj_xy(spectrum, 0.05, 4.3, dc2), w, 1e-11);
    // the four-state block differs by -D2/2 on its diagonal, a pure phase
    const std::complex<double> phase = u4(1, 1) / u2(0, 0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-8);
    CHECK((u4.block(1, 1, 2, 2) - phase * u2).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(u4(0, 1)) + std::abs(u4(0, 2)) + std::abs(u4(3, 1)) + std::abs(u4(3, 2)) < 1e-14);
    CHECK(std::abs(std::abs(u4(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(u4(3, 3)) - 1.0) < 1e-12);
}

TEST_CASE("adiabaticity monitor") {
    const TimeWindow w{-100.0, 100.0};
    const auto report = adiabaticity_margin(PulseSchedule::constant(2.0, w), PulseSchedule::linear_ramp(0.4, w), w);
    CHECK(report.max_ratio == doctest::Approx(0.4 / (2.0 * 4.0)).epsilon(1e-9));
    CHECK(std::abs(report.argmax_time) < 1e-9);
    CHECK(report.mixing_angle_start == doctest::Approx(0.5 * std::atan2(2.0, -40.0)));
    CHECK(report.mixing_angle_end == doctest::Approx(0.5 * std::atan2(2.0, 40.0)));
    CHECK_THROWS_AS(adiabaticity_margin(PulseSchedule::constant(0.0, w), PulseSchedule::linear_ramp(0.4, w), w),
                    NumericalError);
    CHECK(mixing_angle(1.0, 0.0) == doctest::Approx(std::numbers::pi / 4.0));
    CHECK(mixing_angle(0.0, 5.0) == 0.0);
    CHECK(mixing_angle(0.0, -5.0) == doctest::Approx(std::numbers::pi / 2.0));
}

TEST_CASE("instantaneous eigenbasis") {
    const TimeWindow w{-10.0, 10.0};
    const auto h = scrap_two_level(PulseSchedule::constant(1.5, w), PulseSchedule::linear_ramp(0.3, w));
    const auto basis = instantaneous_eigenbasis(h, 4.0);
    const double delta = 1.2, r = std::hypot(1.2, 1.5);
    CHECK(basis.lower == doctest::Approx(0.5 * (delta - r)));
    CHECK(basis.upper == doctest::Approx(0.5 * (delta + r)));
    CHECK(basis.mixing_angle == doctest::Approx(mixing_angle(1.5, delta)));
}

TEST_CASE("argument and failure handling") {
    const TimeWindow w{0.0, 10.0};
    const auto h = scrap_two_level(PulseSchedule::constant(1.0, w), PulseSchedule::constant(0.0, w));
    CHECK_THROWS_AS(propagate(h, basis_state(3, 0), w), ValidationError);
    CHECK_THROWS_AS(propagate(h, Eigen::VectorXcd::Ones(2), w), ValidationError);
    CHECK_THROWS_AS(propagate(h, basis_state(2, 0), {5.0, 5.0}), ValidationError);
    CHECK_THROWS_AS(basis_state(2, 2), ValidationError);

    PropagationOptions bad;
    bad.tol = 1e-2;
    CHECK_THROWS_AS(propagate(h, basis_state(2, 0), w, bad), ValidationError);
    bad.tol = 1e-9;
    bad.output_points = 1;
    CHECK_THROWS_AS(propagate(h, basis_state(2, 0), w, bad), ValidationError);

    PropagationOptions tiny_budget;
    tiny_budget.max_steps = 5;
    CHECK_THROWS_AS(propagate(h, basis_state(2, 0), w, tiny_budget), NumericalError);

    const TimeDependentHamiltonian broken({"|0>", "|1>"},
                                          [](double t) -> Eigen::MatrixXcd {
                                              Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
                                              m(0, 1) = m(1, 0) = t > 4.0 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
                                              return m;
                                          },
                                          w);
    CHECK_THROWS_AS(propagate(broken, basis_state(2, 0), w), NumericalError);
}
