#include "scrap/spectrum.hpp"

#include "scrap/errors.hpp"
#include "scrap/units.hpp"

#include <boost/math/tools/roots.hpp>
#include <fftw3.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <string>

namespace scrap {

namespace {

double washboard(double delta, double ej, double s) {
    return -ej * (std::cos(delta) + s * delta);
}

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

void CbjjParams::validate() const {
    if (!(junction_capacitance_pF > 0.0) || !std::isfinite(junction_capacitance_pF))
        throw ValidationError("cbjj.junction_capacitance_pF: must be positive");
    if (!(critical_current_uA > 0.0) || !std::isfinite(critical_current_uA))
        throw ValidationError("cbjj.critical_current_uA: must be positive");
    if (!(bias_current_ratio >= 0.0 && bias_current_ratio < 1.0))
        throw ValidationError("cbjj.bias_current_ratio: must lie in [0, 1) for a bound well to exist, got " +
                              std::to_string(bias_current_ratio));
    if (grid_points < 256)
        throw ValidationError("cbjj.grid_points: must be at least 256");
    if (!(box_margin >= 0.0) || !std::isfinite(box_margin))
        throw ValidationError("cbjj.box_margin: must be non-negative");
}

double CbjjParams::josephson_energy() const {
    // E_J / hbar = (Phi0/2pi) I_0 / hbar
    return critical_current_uA * 1e3 * units::rad_per_ns_per_nA;
}

double CbjjParams::kinetic_coefficient() const {
    const double mass = junction_capacitance_pF * units::pF * units::reduced_flux_quantum *
                        units::reduced_flux_quantum;
    return units::hbar / (2.0 * mass) * 1e-9;
}

double CbjjParams::plasma_frequency() const {
    const double s = bias_current_ratio;
    const double curvature = josephson_energy() * std::sqrt(1.0 - s * s);
    return std::sqrt(2.0 * kinetic_coefficient() * curvature);
}

double SpectrumResult::transition(std::size_t lower) const {
    if (lower + 1 >= levels())
        throw ValidationError("transition index out of range");
    return energies[static_cast<Eigen::Index>(lower + 1)] - energies[static_cast<Eigen::Index>(lower)];
}

PotentialGrid build_washboard_potential(const CbjjParams& params) {
    params.validate();
    const double s = params.bias_current_ratio;
    const double ej = params.josephson_energy();

    PotentialGrid out;
    out.delta_min = std::asin(s);
    out.delta_barrier = units::pi - std::asin(s);
    out.kinetic_coefficient = params.kinetic_coefficient();

    const double u_min = washboard(out.delta_min, ej, s);
    const double u_top = washboard(out.delta_barrier, ej, s);
    out.barrier_height = u_top - u_min;

    // The neighbouring barrier on the left sits at -pi - arcsin(s), 2 pi s E_J above u_top,
    // so the turning point is bracketed by it and the minimum.
    const double lo = -units::pi - std::asin(s);
    const auto excess = [&](double d) { return washboard(d, ej, s) - u_top; };
    if (excess(lo) <= 0.0) {
        out.delta_left = lo;
    } else {
        boost::uintmax_t iterations = 200;
        const auto bracket = boost::math::tools::toms748_solve(
            excess, lo, out.delta_min, excess(lo), excess(out.delta_min),
            boost::math::tools::eps_tolerance<double>(52), iterations);
        out.delta_left = 0.5 * (bracket.first + bracket.second);
    }

    const double width = out.delta_barrier - out.delta_left;
    const double start = out.delta_left - params.box_margin * width;
    const double stop = out.delta_barrier + params.box_margin * width;
    const std::size_t n = params.grid_points;
    out.spacing = (stop - start) / static_cast<double>(n - 1);
    out.grid.resize(n);
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double d = start + out.spacing * static_cast<double>(k);
        out.grid[k] = d;
        const bool inside = d >= out.delta_left && d <= out.delta_barrier;
        out.values[k] = inside ? washboard(d, ej, s) - u_min : out.barrier_height;
    }
    return out;
}

SpectrumResult solve_bound_states(const PotentialGrid& potential, const CbjjParams& params,
                                  std::size_t n_levels) {
    params.validate();
    if (n_levels < 2)
        throw ValidationError("solve_bound_states: need at least 2 levels");
    const std::size_t n = potential.grid.size();
    if (n < 256 || potential.values.size() != n)
        throw ValidationError("solve_bound_states: malformed potential grid");
    if (n_levels > n)
        throw ValidationError("solve_bound_states: more levels than grid points");

    const double h = potential.spacing;
    const double hop = potential.kinetic_coefficient / (h * h);

    std::vector<double> diag(n), off(n - 1, -hop);
    for (std::size_t k = 0; k < n; ++k)
        diag[k] = 2.0 * hop + potential.values[k];

    const auto nl = static_cast<lapack_int>(n_levels);
    const auto nn = static_cast<lapack_int>(n);
    lapack_int found = 0;
    std::vector<double> eig(n);
    std::vector<double> vecs(n * n_levels);
    std::vector<lapack_int> ifail(n);
    const double abstol = 2.0 * LAPACKE_dlamch('S');
    const lapack_int info =
        LAPACKE_dstevx(LAPACK_COL_MAJOR, 'V', 'I', nn, diag.data(), off.data(), 0.0, 0.0, 1, nl,
                       abstol, &found, eig.data(), vecs.data(), nn, ifail.data());
    if (info != 0 || found != nl)
        throw NumericalError("solve_bound_states: tridiagonal eigensolver failed (info=" +
                             std::to_string(info) + ")");

    SpectrumResult out;
    out.grid = potential.grid;
    out.spacing = h;
    out.kinetic_coefficient = potential.kinetic_coefficient;
    out.barrier_height = potential.barrier_height;
    out.delta_min = potential.delta_min;
    out.energies.resize(nl);
    out.wavefunctions.resize(nn, nl);

    const auto nearest = static_cast<std::size_t>(std::clamp<long>(
        std::lround((potential.delta_min - potential.grid.front()) / h), 1, static_cast<long>(n) - 2));
    const double norm = 1.0 / std::sqrt(h);
    for (lapack_int j = 0; j < nl; ++j) {
        if (eig[j] >= potential.barrier_height)
            throw NumericalError("solve_bound_states: level " + std::to_string(j) + " at " +
                                 std::to_string(eig[j]) + " rad/ns is not below the barrier (" +
                                 std::to_string(potential.barrier_height) + " rad/ns)");
        out.energies[j] = eig[j];
        Eigen::Map<const Eigen::VectorXd> col(vecs.data() + static_cast<std::size_t>(j) * n, nn);
        Eigen::VectorXd psi = col * norm;

        const double peak = psi.cwiseAbs().maxCoeff();
        const auto c = static_cast<Eigen::Index>(nearest);
        double sign_probe = psi[c];
        if (std::abs(sign_probe) < 1e-6 * peak)
            sign_probe = psi[c + 1] - psi[c - 1];
        if (sign_probe < 0.0)
            psi = -psi;
        out.wavefunctions.col(j) = psi;
    }

    out.delta_matrix = dipole_matrix(out);
    out.momentum_matrix = momentum_matrix(out);
    return out;
}

SpectrumResult compute_spectrum(const CbjjParams& params, std::size_t n_levels) {
    return solve_bound_states(build_washboard_potential(params), params, n_levels);
}

Eigen::MatrixXd dipole_matrix(const SpectrumResult& spectrum) {
    const auto levels = spectrum.wavefunctions.cols();
    if (levels < 1 || static_cast<std::size_t>(spectrum.wavefunctions.rows()) != spectrum.grid.size())
        throw ValidationError("dipole_matrix: spectrum holds no states");
    const Eigen::Map<const Eigen::VectorXd> x(spectrum.grid.data(),
                                              static_cast<Eigen::Index>(spectrum.grid.size()));
    Eigen::MatrixXd out(levels, levels);
    for (Eigen::Index i = 0; i < levels; ++i) {
        const Eigen::VectorXd weighted = spectrum.wavefunctions.col(i).cwiseProduct(x);
        for (Eigen::Index j = i; j < levels; ++j) {
            out(i, j) = weighted.dot(spectrum.wavefunctions.col(j)) * spectrum.spacing;
            out(j, i) = out(i, j);
        }
    }
    return out;
}

Eigen::MatrixXd momentum_matrix(const SpectrumResult& spectrum) {
    const auto levels = spectrum.wavefunctions.cols();
    const auto n = spectrum.wavefunctions.rows();
    if (levels < 1 || n < 2)
        throw ValidationError("momentum_matrix: spectrum holds no states");

    const int ni = static_cast<int>(n);
    const int nc = ni / 2 + 1;
    std::vector<double> real(static_cast<std::size_t>(n));
    auto* freq = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(nc)));
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    {
        // FFTW's planner is not thread-safe; execution on distinct plans is.
        const std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        forward = fftw_plan_dft_r2c_1d(ni, real.data(), freq, FFTW_ESTIMATE);
        backward = fftw_plan_dft_c2r_1d(ni, freq, real.data(), FFTW_ESTIMATE);
    }

    const double length = spectrum.spacing * static_cast<double>(n);
    Eigen::MatrixXd derivs(n, levels);
    for (Eigen::Index j = 0; j < levels; ++j) {
        for (Eigen::Index k = 0; k < n; ++k)
            real[static_cast<std::size_t>(k)] = spectrum.wavefunctions(k, j);
        fftw_execute(forward);
        for (int k = 0; k < nc; ++k) {
            const double wavenumber = units::two_pi * k / length;
            const std::complex<double> c(freq[k][0], freq[k][1]);
            std::complex<double> d = std::complex<double>(0.0, wavenumber) * c;
            if (ni % 2 == 0 && k == ni / 2)
                d = 0.0;
            freq[k][0] = d.real() / ni;
            freq[k][1] = d.imag() / ni;
        }
        fftw_execute(backward);
        for (Eigen::Index k = 0; k < n; ++k)
            derivs(k, j) = real[static_cast<std::size_t>(k)];
    }
    {
        const std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
    }
    fftw_free(freq);

    Eigen::MatrixXd raw = spectrum.wavefunctions.transpose() * derivs * spectrum.spacing;
    return 0.5 * (raw - raw.transpose());
}

Eigen::MatrixXd momentum_matrix_from_commutator(const SpectrumResult& spectrum) {
    const auto levels = static_cast<Eigen::Index>(spectrum.levels());
    const Eigen::MatrixXd dipoles = dipole_matrix(spectrum);
    Eigen::MatrixXd out(levels, levels);
    for (Eigen::Index i = 0; i < levels; ++i)
        for (Eigen::Index j = 0; j < levels; ++j)
            out(i, j) = spectrum.mass() * (spectrum.energies[j] - spectrum.energies[i]) * dipoles(i, j);
    return out;
}

} // namespace scrap
