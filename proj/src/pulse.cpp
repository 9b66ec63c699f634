#include "scrap/pulse.hpp"

#include "scrap/errors.hpp"
#include "scrap/units.hpp"

#include <algorithm>
#include <cmath>

namespace scrap {

std::string_view to_string(PulseShape shape) {
    switch (shape) {
    case PulseShape::constant: return "constant";
    case PulseShape::linear_ramp: return "linear_ramp";
    case PulseShape::gaussian: return "gaussian";
    case PulseShape::piecewise_linear: return "piecewise_linear";
    }
    return "unknown";
}

PulseShape parse_pulse_shape(std::string_view name) {
    if (name == "constant") return PulseShape::constant;
    if (name == "linear_ramp") return PulseShape::linear_ramp;
    if (name == "gaussian") return PulseShape::gaussian;
    if (name == "piecewise_linear") return PulseShape::piecewise_linear;
    throw ValidationError("unknown pulse shape '" + std::string(name) + "'");
}

PulseSchedule::PulseSchedule(PulseShape shape, TimeWindow window) : shape_(shape), window_(window) {}

void PulseSchedule::check() const {
    if (!(window_.start < window_.end) || !std::isfinite(window_.start) || !std::isfinite(window_.end))
        throw ValidationError("pulse window must satisfy t_start < t_end");
    if (!std::isfinite(amplitude_) || !std::isfinite(rate_) || !std::isfinite(center_))
        throw ValidationError("pulse parameters must be finite");
    if (shape_ == PulseShape::gaussian && !(width_ > 0.0 && std::isfinite(width_)))
        throw ValidationError("gaussian pulse width must be positive");
    if (shape_ == PulseShape::piecewise_linear) {
        if (points_.empty())
            throw ValidationError("piecewise_linear pulse needs at least one point");
        for (std::size_t k = 1; k < points_.size(); ++k)
            if (!(points_[k].first > points_[k - 1].first))
                throw ValidationError("piecewise_linear breakpoints must be strictly increasing");
    }
}

PulseSchedule PulseSchedule::constant(double amplitude, TimeWindow window) {
    PulseSchedule p(PulseShape::constant, window);
    p.amplitude_ = amplitude;
    p.check();
    return p;
}

PulseSchedule PulseSchedule::linear_ramp(double rate, TimeWindow window, double offset) {
    PulseSchedule p(PulseShape::linear_ramp, window);
    p.rate_ = rate;
    p.amplitude_ = offset;
    p.check();
    return p;
}

PulseSchedule PulseSchedule::gaussian(double amplitude, double width, TimeWindow window, double center) {
    PulseSchedule p(PulseShape::gaussian, window);
    p.amplitude_ = amplitude;
    p.width_ = width;
    p.center_ = center;
    p.check();
    return p;
}

PulseSchedule PulseSchedule::piecewise_linear(std::vector<std::pair<double, double>> points,
                                              TimeWindow window) {
    PulseSchedule p(PulseShape::piecewise_linear, window);
    p.points_ = std::move(points);
    p.check();
    return p;
}

double PulseSchedule::value(double t) const {
    if (!window_.contains(t))
        return 0.0;
    switch (shape_) {
    case PulseShape::constant:
        return amplitude_;
    case PulseShape::linear_ramp:
        return amplitude_ + rate_ * t;
    case PulseShape::gaussian: {
        const double u = (t - center_) / width_;
        return amplitude_ * std::exp(-u * u);
    }
    case PulseShape::piecewise_linear: {
        if (t <= points_.front().first) return points_.front().second;
        if (t >= points_.back().first) return points_.back().second;
        const auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                         [](double x, const auto& p) { return x < p.first; });
        const auto& [t1, v1] = *it;
        const auto& [t0, v0] = *(it - 1);
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
    }
    }
    return 0.0;
}

double PulseSchedule::derivative(double t) const {
    if (!window_.contains(t))
        return 0.0;
    switch (shape_) {
    case PulseShape::constant:
        return 0.0;
    case PulseShape::linear_ramp:
        return rate_;
    case PulseShape::gaussian: {
        const double u = (t - center_) / width_;
        return -2.0 * u / width_ * amplitude_ * std::exp(-u * u);
    }
    case PulseShape::piecewise_linear: {
        if (t < points_.front().first || t >= points_.back().first) return 0.0;
        const auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                         [](double x, const auto& p) { return x < p.first; });
        const auto& [t1, v1] = *it;
        const auto& [t0, v0] = *(it - 1);
        return (v1 - v0) / (t1 - t0);
    }
    }
    return 0.0;
}

double PulseSchedule::integral(double a, double b) const {
    if (b < a)
        return -integral(b, a);
    const double lo = std::max(a, window_.start);
    const double hi = std::min(b, window_.end);
    if (!(hi > lo))
        return 0.0;
    switch (shape_) {
    case PulseShape::constant:
        return amplitude_ * (hi - lo);
    case PulseShape::linear_ramp:
        return amplitude_ * (hi - lo) + 0.5 * rate_ * (hi * hi - lo * lo);
    case PulseShape::gaussian: {
        const double scale = 0.5 * std::sqrt(units::pi) * width_ * amplitude_;
        return scale * (std::erf((hi - center_) / width_) - std::erf((lo - center_) / width_));
    }
    case PulseShape::piecewise_linear: {
        // Trapezoids between the clipped breakpoints are exact for a piecewise-linear function.
        std::vector<double> knots{lo};
        for (const auto& [t, v] : points_)
            if (t > lo && t < hi) knots.push_back(t);
        knots.push_back(hi);
        double sum = 0.0;
        for (std::size_t k = 1; k < knots.size(); ++k)
            sum += 0.5 * (value(knots[k - 1]) + value(knots[k])) * (knots[k] - knots[k - 1]);
        return sum;
    }
    }
    return 0.0;
}

PulseSchedule PulseSchedule::scaled(double factor) const {
    PulseSchedule out = *this;
    out.amplitude_ *= factor;
    out.rate_ *= factor;
    for (auto& point : out.points_)
        point.second *= factor;
    out.check();
    return out;
}

double PulseSchedule::peak_magnitude() const {
    switch (shape_) {
    case PulseShape::constant:
        return std::abs(amplitude_);
    case PulseShape::linear_ramp:
        return std::max(std::abs(value(window_.start)), std::abs(value(window_.end)));
    case PulseShape::gaussian:
        if (window_.contains(center_))
            return std::abs(amplitude_);
        return std::max(std::abs(value(window_.start)), std::abs(value(window_.end)));
    case PulseShape::piecewise_linear: {
        double peak = std::max(std::abs(value(window_.start)), std::abs(value(window_.end)));
        for (const auto& [t, v] : points_)
            if (window_.contains(t)) peak = std::max(peak, std::abs(v));
        return peak;
    }
    }
    return 0.0;
}

} // namespace scrap
