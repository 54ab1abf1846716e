#include "emqm/cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "emqm/constants.hpp"
#include "emqm/energy_terms.hpp"
#include "emqm/hydrogen.hpp"
#include "emqm/verify.hpp"

namespace emqm::cli {

namespace {

using json = nlohmann::ordered_json;
using hydrogen::QuantumLevel;

constexpr double kPi = std::numbers::pi_v<double>;
constexpr const char* kSpectroscopic = "spdfghiklm";

std::string fingerprint(const ConstantsSet& c) {
    const double vals[7] = {c.hbar, c.e_charge, c.m_e, c.m_p, c.eps0, c.mu0, c.c_light};
    std::uint64_t hash = 1469598103934665603ULL;  // FNV-1a
    const auto* bytes = reinterpret_cast<const unsigned char*>(vals);
    for (std::size_t i = 0; i < sizeof(vals); ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string half_int(int two_x) {
    if (two_x % 2 == 0) return std::to_string(two_x / 2);
    return std::to_string(two_x) + "/2";
}

std::string term_label(const QuantumLevel& q) {
    return std::to_string(q.n) + kSpectroscopic[q.l] + "_{" + half_int(q.two_j) + "}";
}

/// Parses "2p3/2", "2p_{3/2}" or "2p" (no j). Throws on malformed labels.
struct ParsedLevel {
    int n = 0;
    int l = 0;
    std::optional<int> two_j;
};

ParsedLevel parse_level_label(const std::string& text) {
    ParsedLevel out;
    std::size_t pos = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos == 0) throw std::invalid_argument("level label must start with n: " + text);
    out.n = std::stoi(text.substr(0, pos));
    if (pos >= text.size()) throw std::invalid_argument("level label needs l: " + text);
    const char lchar = static_cast<char>(std::tolower(text[pos]));
    const std::string letters = kSpectroscopic;
    const auto lpos = letters.find(lchar);
    if (lpos == std::string::npos)
        throw std::invalid_argument(std::string("unknown orbital letter: ") + lchar);
    out.l = static_cast<int>(lpos);
    ++pos;
    std::string rest = text.substr(pos);
    // strip optional _{...}
    std::string digits;
    for (char ch : rest)
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '/') digits += ch;
    if (!digits.empty()) {
        const auto slash = digits.find('/');
        if (slash == std::string::npos)
            out.two_j = 2 * std::stoi(digits);
        else {
            if (digits.substr(slash + 1) != "2")
                throw std::invalid_argument("j must be a half-integer: " + text);
            out.two_j = std::stoi(digits.substr(0, slash));
        }
    }
    return out;
}

struct CommonOptions {
    std::string constants_path;
    std::string output = "json";
    std::uint64_t seed = 1234;
    double b_field = 0.0;
    double e_field = 0.0;
    bool proton_spin = false;
    std::string mass_scale = "paper";
};

terms::SpinOrbitOptions spin_orbit_options(const CommonOptions& opt) {
    terms::SpinOrbitOptions so;
    so.include_proton_spin = opt.proton_spin;
    so.mass_scale = (opt.mass_scale == "reduced") ? terms::MassScale::reduced
                                                  : terms::MassScale::paper;
    return so;
}

json config_echo(const CommonOptions& opt, int nmax = -1) {
    json cfg;
    if (nmax >= 0) cfg["nmax"] = nmax;
    cfg["bfield"] = opt.b_field;
    cfg["efield"] = opt.e_field;
    cfg["proton_spin"] = opt.proton_spin;
    cfg["mass_scale"] = opt.mass_scale;
    cfg["output"] = opt.output;
    cfg["constants"] = opt.constants_path;
    cfg["seed"] = opt.seed;
    return cfg;
}

double total_energy(const QuantumLevel& q, const CommonOptions& opt,
                    const ConstantsSet& c, const DerivedConstants& d) {
    terms::Environment env;
    env.spin_orbit = spin_orbit_options(opt);
    return terms::level_breakdown(q, env, c, d).total;
}

int cmd_levels(const CommonOptions& opt, int nmax) {
    if (nmax < 1 || nmax > 10) throw std::invalid_argument("--nmax must be 1..10");
    const LoadedConstants lc = load_constants(opt.constants_path);
    const DerivedConstants d = derive(lc.values);
    const double ev = std::abs(lc.values.e_charge);

    struct Row {
        QuantumLevel q;
        std::optional<int> m_l;
        std::optional<double> m_s;
        terms::EnergyBreakdown b;
    };
    std::vector<Row> rows;
    for (int n = 1; n <= nmax; ++n)
        for (int l = 0; l < n; ++l)
            for (int two_j = std::max(2 * l - 1, 1); two_j <= 2 * l + 1; two_j += 2) {
                const QuantumLevel q = QuantumLevel::make(n, l, two_j);
                if (opt.b_field == 0.0) {
                    terms::Environment env;
                    env.spin_orbit = spin_orbit_options(opt);
                    rows.push_back({q, {}, {}, terms::level_breakdown(q, env, lc.values, d)});
                } else {
                    // uncoupled basis under external B: expand over (m_l, m_s)
                    if (two_j != 2 * l + 1) continue;  // one pass per (n, l)
                    for (int m_l = -l; m_l <= l; ++m_l)
                        for (int s = -1; s <= 1; s += 2) {
                            terms::Environment env;
                            env.spin_orbit = spin_orbit_options(opt);
                            env.b_field = opt.b_field;
                            env.m_l = m_l;
                            env.m_s_e = 0.5 * s;
                            rows.push_back({q, m_l, 0.5 * s,
                                            terms::level_breakdown(q, env, lc.values, d)});
                        }
                }
            }

    json out;
    out["command"] = "levels";
    out["config_echo"] = config_echo(opt, nmax);
    out["rows"] = json::array();
    for (const auto& row : rows) {
        json r;
        r["n"] = row.q.n;
        r["l"] = row.q.l;
        if (opt.b_field == 0.0) {
            r["j"] = half_int(row.q.two_j);
            r["term"] = term_label(row.q);
        } else {
            r["m_l"] = *row.m_l;
            r["m_s"] = *row.m_s;
            r["term"] = std::to_string(row.q.n) + kSpectroscopic[row.q.l];
        }
        r["E_total_J"] = row.b.total;
        r["E_total_eV"] = row.b.total / ev;
        r["bohr_J"] = row.b.bohr;
        r["coulomb_expectation_J"] = row.b.coulomb_expectation;
        r["spin_orbit_J"] = row.b.spin_orbit;
        r["zeeman_orbital_J"] = row.b.zeeman_orbital;
        r["zeeman_spin_J"] = row.b.zeeman_spin;
        r["spin_spin_J"] = row.b.spin_spin;
        r["stark_J"] = row.b.stark;
        out["rows"].push_back(r);
    }
    if (opt.e_field != 0.0) {
        out["stark_manifolds"] = json::array();
        for (int n = 1; n <= std::min(nmax, 3); ++n) {
            json m;
            m["n"] = n;
            m["shifts_J"] = terms::stark_energy(
                n, opt.e_field, lc.values, d,
                spin_orbit_options(opt).mass_scale);
            out["stark_manifolds"].push_back(m);
        }
    }
    out["constants_fingerprint"] = fingerprint(lc.values);

    if (opt.output == "json") {
        std::cout << out.dump(2) << "\n";
    } else if (opt.output == "csv") {
        std::cout << "n,l,";
        std::cout << (opt.b_field == 0.0 ? "j,term" : "m_l,m_s,term");
        std::cout << ",E_total_J,E_total_eV,bohr_J,coulomb_expectation_J,spin_orbit_J,"
                     "zeeman_orbital_J,zeeman_spin_J,spin_spin_J,stark_J\n";
        for (const auto& row : rows) {
            std::cout << row.q.n << "," << row.q.l << ",";
            if (opt.b_field == 0.0)
                std::cout << half_int(row.q.two_j) << "," << term_label(row.q);
            else
                std::cout << *row.m_l << "," << format_g17(*row.m_s) << ","
                          << row.q.n << kSpectroscopic[row.q.l];
            std::cout << "," << format_g17(row.b.total) << ","
                      << format_g17(row.b.total / ev) << "," << format_g17(row.b.bohr)
                      << "," << format_g17(row.b.coulomb_expectation) << ","
                      << format_g17(row.b.spin_orbit) << ","
                      << format_g17(row.b.zeeman_orbital) << ","
                      << format_g17(row.b.zeeman_spin) << ","
                      << format_g17(row.b.spin_spin) << "," << format_g17(row.b.stark)
                      << "\n";
        }
    } else {
        for (const auto& row : rows)
            std::printf("%-10s  E = %-24.17g J  (%.10g eV)\n",
                        (opt.b_field == 0.0
                             ? term_label(row.q)
                             : std::to_string(row.q.n) + kSpectroscopic[row.q.l] +
                                   " m_l=" + std::to_string(*row.m_l))
                            .c_str(),
                        row.b.total, row.b.total / ev);
    }
    return 0;
}

int cmd_transition(const CommonOptions& opt, const std::string& label_a,
                   const std::string& label_b) {
    const LoadedConstants lc = load_constants(opt.constants_path);
    const DerivedConstants d = derive(lc.values);

    auto mean_energy = [&](const ParsedLevel& p) {
        if (p.two_j) {
            return total_energy(QuantumLevel::make(p.n, p.l, *p.two_j), opt, lc.values,
                                d);
        }
        if (p.l == 0)
            return total_energy(QuantumLevel::make(p.n, 0, 1), opt, lc.values, d);
        const double hi =
            total_energy(QuantumLevel::make(p.n, p.l, 2 * p.l + 1), opt, lc.values, d);
        const double lo =
            total_energy(QuantumLevel::make(p.n, p.l, 2 * p.l - 1), opt, lc.values, d);
        return 0.5 * (hi + lo);
    };

    const ParsedLevel pa = parse_level_label(label_a);
    const ParsedLevel pb = parse_level_label(label_b);
    if (pa.n == pb.n && pa.l == pb.l && pa.two_j == pb.two_j)
        throw std::invalid_argument("transition: identical levels");

    const double ea = mean_energy(pa);
    const double eb = mean_energy(pb);
    const double de = ea - eb;
    const double lambda = 2.0 * kPi * lc.values.hbar * lc.values.c_light / std::abs(de);
    const double freq = std::abs(de) / (2.0 * kPi * lc.values.hbar);

    json out;
    out["command"] = "transition";
    out["config_echo"] = config_echo(opt);
    out["from"] = label_a;
    out["to"] = label_b;
    out["delta_E_J"] = de;
    out["wavelength_m"] = lambda;
    out["wavelength_angstrom"] = lambda * 1e10;
    out["frequency_Hz"] = freq;
    out["constants_fingerprint"] = fingerprint(lc.values);
    if (opt.output == "csv") {
        std::cout << "from,to,delta_E_J,wavelength_m,wavelength_angstrom,frequency_Hz\n"
                  << label_a << "," << label_b << "," << format_g17(de) << ","
                  << format_g17(lambda) << "," << format_g17(lambda * 1e10) << ","
                  << format_g17(freq) << "\n";
    } else if (opt.output == "plain") {
        std::printf("%s -> %s: dE = %.17g J, lambda = %.10g Angstrom, nu = %.10g Hz\n",
                    label_a.c_str(), label_b.c_str(), de, lambda * 1e10, freq);
    } else {
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

int cmd_verify(const CommonOptions& opt, const std::string& suite) {
    if (suite != "quick" && suite != "full")
        throw std::invalid_argument("--suite must be quick or full");
    const LoadedConstants lc = load_constants(opt.constants_path);
    verify::SuiteOptions so;
    so.preset = suite;
    so.seed = opt.seed;
    const verify::SuiteResult result = verify::run_suite(so, lc.values);

    json out;
    out["command"] = "verify";
    json cfg = config_echo(opt);
    cfg["suite"] = suite;
    out["config_echo"] = cfg;
    out["checks"] = json::array();
    for (const auto& rep : result.checks) {
        json r;
        r["check"] = rep.check;
        r["residual"] = rep.residual;
        r["tolerance"] = rep.tolerance;
        if (rep.order)
            r["order"] = *rep.order;
        else
            r["order"] = nullptr;
        r["passed"] = rep.passed;
        out["checks"].push_back(r);
        std::fprintf(stderr, "%-32s residual %.3e tol %.3e %s\n", rep.check.c_str(),
                     rep.residual, rep.tolerance, rep.passed ? "pass" : "FAIL");
    }
    out["all_passed"] = result.all_passed;
    out["constants_fingerprint"] = fingerprint(lc.values);
    std::cout << out.dump(2) << "\n";
    return result.all_passed ? 0 : 1;
}

int cmd_constants(const CommonOptions& opt) {
    const LoadedConstants lc = load_constants(opt.constants_path);
    const DerivedConstants d = derive(lc.values);
    json out;
    out["command"] = "constants";
    out["config_echo"] = config_echo(opt);
    json values;
    values["hbar"] = lc.values.hbar;
    values["e_charge"] = lc.values.e_charge;
    values["m_e"] = lc.values.m_e;
    values["m_p"] = lc.values.m_p;
    values["eps0"] = lc.values.eps0;
    values["mu0"] = lc.values.mu0;
    values["c_light"] = lc.values.c_light;
    out["values"] = values;
    json derived;
    derived["alpha"] = d.alpha;
    derived["a0"] = d.a0;
    derived["m_r"] = d.m_r;
    derived["rydberg"] = d.rydberg;
    out["derived"] = derived;
    json prov;
    for (const char* key : {"hbar", "e_charge", "m_e", "m_p", "eps0", "mu0", "c_light"})
        prov[key] = lc.overridden.count(key) ? "override" : "default";
    out["provenance"] = prov;
    out["constants_fingerprint"] = fingerprint(lc.values);
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"hydrogen spectroscopy and variational verification toolkit"};
    app.require_subcommand(1);

    CommonOptions opt;
    int nmax = 2;
    std::string suite = "quick";
    std::string label_a, label_b;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--constants", opt.constants_path,
                        "key=value constants override file");
        sub->add_option("--output", opt.output, "json|csv|plain")
            ->check(CLI::IsMember({"json", "csv", "plain"}));
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--bfield", opt.b_field, "uniform B along z [T]");
        sub->add_option("--efield", opt.e_field, "uniform E along z [V/m]");
        sub->add_flag("--proton-spin", opt.proton_spin,
                      "include the proton-spin term in spin-orbit");
        sub->add_option("--mass-scale", opt.mass_scale, "paper|reduced")
            ->check(CLI::IsMember({"paper", "reduced"}));
    };

    CLI::App* levels = app.add_subcommand("levels", "term table up to --nmax");
    levels->add_option("--nmax", nmax, "largest principal quantum number (<= 10)");
    add_common(levels);

    CLI::App* transition =
        app.add_subcommand("transition", "energy/wavelength between two levels");
    transition->add_option("from", label_a, "e.g. 2p3/2 or 2p")->required();
    transition->add_option("to", label_b, "e.g. 1s1/2 or 1s")->required();
    add_common(transition);

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the variational verification suite");
    verify_cmd->add_option("--suite", suite, "quick|full")
        ->check(CLI::IsMember({"quick", "full"}));
    add_common(verify_cmd);

    CLI::App* constants_cmd =
        app.add_subcommand("constants", "echo effective constants as JSON");
    add_common(constants_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (levels->parsed()) return cmd_levels(opt, nmax);
        if (transition->parsed()) return cmd_transition(opt, label_a, label_b);
        if (verify_cmd->parsed()) return cmd_verify(opt, suite);
        if (constants_cmd->parsed()) return cmd_constants(opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}

}  // namespace emqm::cli
