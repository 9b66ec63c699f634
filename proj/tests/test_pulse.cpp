#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scrap/errors.hpp"
#include "scrap/pulse.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace scrap;

namespace {

const TimeWindow window{-40.0, 60.0};

std::vector<PulseSchedule> sample_pulses() {
    return {PulseSchedule::constant(1.7, window), PulseSchedule::linear_ramp(0.15, window, -2.0),
            PulseSchedule::gaussian(1.25, 12.0, window, 5.0),
            PulseSchedule::piecewise_linear({{-30.0, 0.0}, {-10.0, 2.0}, {20.0, -1.0}, {50.0, 0.5}}, window)};
}

// Composite Simpson, for checking the closed-form integrals.
template <typename F>
double simpson(F f, double a, double b, int intervals) {
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int k = 1; k < intervals; ++k)
        sum += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

} // namespace

TEST_CASE("closed forms") {
    const auto ramp = PulseSchedule::linear_ramp(0.15, window, 1.0);
    CHECK(ramp(10.0) == doctest::Approx(2.5));
    const auto g = PulseSchedule::gaussian(2.0, 10.0, window, 5.0);
    CHECK(g(5.0) == doctest::Approx(2.0));
    CHECK(g(15.0) == doctest::Approx(2.0 * std::exp(-1.0)));
    const auto pw = PulseSchedule::piecewise_linear({{0.0, 1.0}, {10.0, 3.0}}, window);
    CHECK(pw(5.0) == doctest::Approx(2.0));
    CHECK(pw(-20.0) == doctest::Approx(1.0));
    CHECK(pw(40.0) == doctest::Approx(3.0));
}

TEST_CASE("zero outside the window") {
    for (const auto& p : sample_pulses()) {
        CHECK(p(window.start - 1e-9) == 0.0);
        CHECK(p(window.end + 1.0) == 0.0);
        CHECK(p.derivative(window.end + 1.0) == 0.0);
    }
}

TEST_CASE("derivative matches central differences") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pick(window.start + 1.0, window.end - 1.0);
    for (const auto& p : sample_pulses()) {
        for (int i = 0; i < 200; ++i) {
            const double t = pick(rng);
            const double h = 1e-5;
            const double fd = (p(t + h) - p(t - h)) / (2.0 * h);
            if (p.shape() == PulseShape::piecewise_linear) {
                bool near_break = false;
                for (const auto& [tb, v] : p.points())
                    near_break |= std::abs(t - tb) < 2.0 * h;
                if (near_break)
                    continue;
            }
            CHECK(p.derivative(t) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("integral matches quadrature") {
    for (const auto& p : sample_pulses()) {
        const auto f = [&](double t) { return p(t); };
        CHECK(p.integral(window.start, window.end) ==
              doctest::Approx(simpson(f, window.start, window.end, 20000)).epsilon(1e-9));
        CHECK(p.integral(-13.0, 27.5) == doctest::Approx(simpson(f, -13.0, 27.5, 20000)).epsilon(1e-9));
        CHECK(p.integral(27.5, -13.0) == doctest::Approx(-p.integral(-13.0, 27.5)));
        // clipped to the window
        CHECK(p.integral(-100.0, 100.0) == doctest::Approx(p.integral(window.start, window.end)));
    }
    // Gaussian area amplitude * width * sqrt(pi) when the window covers the tails
    const auto wide = PulseSchedule::gaussian(1.25, 50.0, {-1000.0, 1000.0});
    CHECK(wide.integral(-1000.0, 1000.0) == doctest::Approx(1.25 * 50.0 * std::sqrt(std::numbers::pi)));
}

TEST_CASE("scaling and peak") {
    for (const auto& p : sample_pulses()) {
        const auto q = p.scaled(-3.0);
        for (double t : {-35.0, 0.0, 12.5, 59.0})
            CHECK(q(t) == doctest::Approx(-3.0 * p(t)));
        double brute = 0.0;
        for (int k = 0; k <= 100000; ++k)
            brute = std::max(brute, std::abs(p(window.start + k * window.duration() / 100000)));
        CHECK(p.peak_magnitude() == doctest::Approx(brute).epsilon(1e-6));
    }
}

TEST_CASE("shape names") {
    for (auto s : {PulseShape::constant, PulseShape::linear_ramp, PulseShape::gaussian, PulseShape::piecewise_linear})
        CHECK(parse_pulse_shape(to_string(s)) == s);
    CHECK_THROWS_AS(parse_pulse_shape("square"), ValidationError);
}

TEST_CASE("invalid pulses") {
    CHECK_THROWS_AS(PulseSchedule::constant(1.0, {5.0, 5.0}), ValidationError);
    CHECK_THROWS_AS(PulseSchedule::gaussian(1.0, 0.0, window), ValidationError);
    CHECK_THROWS_AS(PulseSchedule::gaussian(1.0, -2.0, window), ValidationError);
    CHECK_THROWS_AS(PulseSchedule::linear_ramp(NAN, window), ValidationError);
    CHECK_THROWS_AS(PulseSchedule::piecewise_linear({}, window), ValidationError);
    CHECK_THROWS_AS(PulseSchedule::piecewise_linear({{1.0, 0.0}, {1.0, 2.0}}, window), ValidationError);
}
