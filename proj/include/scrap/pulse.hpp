#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scrap {

struct TimeWindow {
    double start = 0.0; ///< ns
    double end = 0.0;   ///< ns

    double duration() const { return end - start; }
    bool contains(double t) const { return t >= start && t <= end; }
};

enum class PulseShape { constant, linear_ramp, gaussian, piecewise_linear };

std::string_view to_string(PulseShape shape);
PulseShape parse_pulse_shape(std::string_view name);

/// Analytic or piecewise envelope, zero outside its window.
///
///   constant          f(t) = amplitude
///   linear_ramp       f(t) = amplitude + rate * t
///   gaussian          f(t) = amplitude * exp(-(t - center)^2 / width^2)
///   piecewise_linear  linear interpolation through `points`, held flat beyond the end points
///
/// Units depend on role: rad/ns for Rabi and detuning pulses, nA for currents.
class PulseSchedule {
public:
    static PulseSchedule constant(double amplitude, TimeWindow window);
    static PulseSchedule linear_ramp(double rate, TimeWindow window, double offset = 0.0);
    static PulseSchedule gaussian(double amplitude, double width, TimeWindow window, double center = 0.0);
    static PulseSchedule piecewise_linear(std::vector<std::pair<double, double>> points, TimeWindow window);

    double operator()(double t) const { return value(t); }
    double value(double t) const;
    /// Analytic time derivative; zero outside the window and one-sided at piecewise breakpoints.
    double derivative(double t) const;
    /// Exact integral over [a, b] (closed forms for every shape).
    double integral(double a, double b) const;

    PulseShape shape() const { return shape_; }
    double amplitude() const { return amplitude_; }
    double rate() const { return rate_; }
    double width() const { return width_; }
    double center() const { return center_; }
    const TimeWindow& window() const { return window_; }
    const std::vector<std::pair<double, double>>& points() const { return points_; }

    /// Same envelope multiplied by `factor` (unit conversion, e.g. nA -> rad/ns).
    PulseSchedule scaled(double factor) const;

    /// Largest |f(t)| over the window.
    double peak_magnitude() const;

private:
    PulseSchedule(PulseShape shape, TimeWindow window);
    void check() const;

    PulseShape shape_;
    TimeWindow window_;
    double amplitude_ = 0.0;
    double rate_ = 0.0;
    double width_ = 0.0;
    double center_ = 0.0;
    std::vector<std::pair<double, double>> points_;
};

} // namespace scrap
