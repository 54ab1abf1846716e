#pragma once

#include <set>
#include <string>

namespace emqm {

/// Fundamental constants in SI units. Defaults are CODATA-2018.
/// The electron charge is stored with its sign (negative).
struct ConstantsSet {
    double hbar;      // J s
    double e_charge;  // C, negative
    double m_e;       // kg
    double m_p;       // kg
    double eps0;      // F/m
    double mu0;       // H/m
    double c_light;   // m/s

    /// Throws std::invalid_argument if any invariant is violated:
    /// positive magnitudes, e_charge < 0, C^2 mu0 eps0 = 1 to 1e-12.
    void validate() const;
};

/// Quantities derived from a ConstantsSet.
struct DerivedConstants {
    double alpha;    // fine-structure constant, mu0 e^2 C / (4 pi hbar)
    double a0;       // Bohr radius, hbar / (alpha m_e C)  [m]
    double m_r;      // reduced electron-proton mass [kg]
    double rydberg;  // alpha^2 m_r C^2 / 2  [J]
};

/// Result of loading constants: values plus which keys were overridden.
struct LoadedConstants {
    ConstantsSet values;
    std::set<std::string> overridden;
};

ConstantsSet default_constants();

/// Loads defaults, then applies a key=value override file if `path` is
/// non-empty. Lines starting with '#' and blank lines are ignored.
/// Valid keys: hbar, e_charge, m_e, m_p, eps0, mu0, c_light.
/// Throws std::invalid_argument on unknown keys, non-numeric values or
/// invariant violations.
LoadedConstants load_constants(const std::string& path = "");

DerivedConstants derive(const ConstantsSet& c);

double reduced_mass(double m_a, double m_b);

}  // namespace emqm
