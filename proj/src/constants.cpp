#include "emqm/constants.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace emqm {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

double* field_by_key(ConstantsSet& c, const std::string& key) {
    static const std::map<std::string, double ConstantsSet::*> table = {
        {"hbar", &ConstantsSet::hbar},   {"e_charge", &ConstantsSet::e_charge},
        {"m_e", &ConstantsSet::m_e},     {"m_p", &ConstantsSet::m_p},
        {"eps0", &ConstantsSet::eps0},   {"mu0", &ConstantsSet::mu0},
        {"c_light", &ConstantsSet::c_light}};
    auto it = table.find(key);
    if (it == table.end()) return nullptr;
    return &(c.*(it->second));
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

void ConstantsSet::validate() const {
    auto require_positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string("constant ") + name +
                                        " must be positive and finite");
    };
    require_positive(hbar, "hbar");
    require_positive(m_e, "m_e");
    require_positive(m_p, "m_p");
    require_positive(eps0, "eps0");
    require_positive(mu0, "mu0");
    require_positive(c_light, "c_light");
    if (!(e_charge < 0.0) || !std::isfinite(e_charge))
        throw std::invalid_argument("e_charge must be negative (electron convention)");
    const double unity = c_light * c_light * mu0 * eps0;
    if (std::abs(unity - 1.0) > 1e-12)
        throw std::invalid_argument("constants violate C^2 mu0 eps0 = 1");
}

ConstantsSet default_constants() {
    ConstantsSet c;
    c.hbar = 6.62607015e-34 / (2.0 * kPi);  // h exact since 2019
    c.e_charge = -1.602176634e-19;          // exact magnitude, stored negative
    c.m_e = 9.1093837015e-31;
    c.m_p = 1.67262192369e-27;
    c.mu0 = 1.25663706212e-6;
    c.eps0 = 8.8541878128e-12;
    c.c_light = 299792458.0;
    return c;
}

LoadedConstants load_constants(const std::string& path) {
    LoadedConstants out;
    out.values = default_constants();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open constants file: " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("constants file line " + std::to_string(lineno) +
                                            ": expected key=value");
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            double* slot = field_by_key(out.values, key);
            if (!slot)
                throw std::invalid_argument("constants file line " + std::to_string(lineno) +
                                            ": unknown key '" + key + "'");
            std::size_t pos = 0;
            double parsed = 0.0;
            try {
                parsed = std::stod(val, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != val.size() || val.empty())
                throw std::invalid_argument("constants file line " + std::to_string(lineno) +
                                            ": non-numeric value '" + val + "'");
            *slot = parsed;
            out.overridden.insert(key);
        }
    }
    out.values.validate();
    return out;
}

DerivedConstants derive(const ConstantsSet& c) {
    c.validate();
    DerivedConstants d;
    const double e2 = c.e_charge * c.e_charge;
    d.alpha = c.mu0 * e2 * c.c_light / (4.0 * kPi * c.hbar);
    d.a0 = c.hbar / (d.alpha * c.m_e * c.c_light);
    d.m_r = reduced_mass(c.m_e, c.m_p);
    d.rydberg = 0.5 * d.alpha * d.alpha * d.m_r * c.c_light * c.c_light;
    return d;
}

double reduced_mass(double m_a, double m_b) {
    if (!(m_a > 0.0) || !(m_b > 0.0))
        throw std::invalid_argument("reduced_mass: masses must be positive");
    return m_a * m_b / (m_a + m_b);
}

}  // namespace emqm
