#pragma once

// Unit system used throughout the library:
//   hbar = 1, time in ns, energies and frequencies as angular frequencies in rad/ns,
//   currents in nA, phases (delta) in radians.
// Only the CLI and summaries convert to ordinary frequencies (GHz = rad/ns / 2pi).

#include <numbers>

namespace scrap::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// CODATA 2018 exact values.
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double flux_quantum = two_pi * hbar / (2.0 * elementary_charge); // Wb

// Reduced flux quantum Phi0/2pi in Wb.
inline constexpr double reduced_flux_quantum = flux_quantum / two_pi;

// (Phi0/2pi) * I / hbar for I = 1 nA, in rad/ns. Equals 1 nA / (2e).
inline constexpr double rad_per_ns_per_nA = reduced_flux_quantum * 1e-9 / hbar * 1e-9;

inline constexpr double pF = 1e-12;
inline constexpr double uA = 1e-6;

inline constexpr double to_GHz(double rad_per_ns) { return rad_per_ns / two_pi; }

} // namespace scrap::units
