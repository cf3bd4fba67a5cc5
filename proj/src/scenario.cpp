#include "thermoecon/scenario.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace thermoecon {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

double raw_number(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* b = t.data();
    const char* e = b + t.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || p != e || !std::isfinite(v))
        fail(key + ": expected a finite number, got '" + text + "'");
    return v;
}

}  // namespace

// ============================================================
// INI reader
// ============================================================

const std::string* IniSection::find(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return &v;
    return nullptr;
}

const IniSection* IniFile::find(const std::string& name) const {
    for (const auto& s : sections)
        if (s.name == name) return &s;
    return nullptr;
}

IniFile IniFile::parse(const std::string& text) {
    IniFile file;
    IniSection* current = nullptr;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3)
                fail("line " + std::to_string(lineno) + ": malformed section header '" + t + "'");
            const std::string name = trim(t.substr(1, t.size() - 2));
            if (name.empty())
                fail("line " + std::to_string(lineno) + ": empty section name");
            if (file.find(name))
                fail("line " + std::to_string(lineno) + ": duplicate section [" + name + "]");
            file.sections.push_back(IniSection{name, {}});
            current = &file.sections.back();
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            fail("line " + std::to_string(lineno) + ": expected 'key = value', got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            fail("line " + std::to_string(lineno) + ": empty key");
        if (!current)
            fail("line " + std::to_string(lineno) + ": key '" + key + "' outside any [section]");
        if (current->find(key))
            fail("line " + std::to_string(lineno) + ": duplicate key '" + key + "' in [" + current->name + "]");
        current->entries.emplace_back(key, value);
    }
    return file;
}

// ============================================================
// Value parsing
// ============================================================

double parse_number(const std::string& text, const std::string& key) {
    return raw_number(text, key);
}

double parse_fraction(const std::string& text, const std::string& key) {
    std::string t = trim(text);
    if (!t.empty() && t.back() == '%') {
        t.pop_back();
        return raw_number(t, key) / 100.0;
    }
    return raw_number(t, key);
}

double parse_rate(const std::string& text, const std::string& key) {
    std::string t = trim(text);
    if (!t.empty() && t.back() == '%') {
        t.pop_back();
        return raw_number(t, key) / 100.0;
    }
    const double v = raw_number(t, key);
    if (std::fabs(v) > 0.5)
        fail(key + ": '" + text + "' looks like a percentage without the '%' sign; write '" +
             text + "%' or the per-year fraction");
    return v;
}

long long parse_integer(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    long long v = 0;
    const char* b = t.data();
    const char* e = b + t.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || p != e)
        fail(key + ": expected an integer, got '" + text + "'");
    return v;
}

std::uint64_t parse_seed(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const char* b = t.data();
    const char* e = b + t.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || p != e)
        fail(key + ": expected an unsigned integer seed, got '" + text + "'");
    return v;
}

// ============================================================
// Scenario assembly
// ============================================================

PhysicalSchedules PhysicalSettings::schedules() const {
    PhysicalSchedules s;
    s.discovery_tracks_consumption = discovery_tracks_consumption;
    if (!discovery_tracks_consumption) {
        const double D = initial.D;
        s.discovery = [D](double) { return D; };
    }
    const double del = initial.delta;
    s.decay_delta = [del](double) { return del; };
    if (eta_e != 0.0) {
        const double g = eta_e;
        s.e_s_growth = [g](double) { return g; };
    }
    return s;
}

namespace {

void read_scenario_section(const IniSection& sec, Scenario& out) {
    bool has_eta_tech = false;
    bool has_component = false;
    TechChange tech;
    for (const auto& [key, value] : sec.entries) {
        const std::string label = "[scenario] " + key;
        if (key == "eta0") {
            out.params.eta0 = parse_rate(value, label);
            out.has_fiscal_rates = true;
        } else if (key == "eta_tech") {
            out.params.eta_tech = parse_rate(value, label);
            has_eta_tech = true;
        } else if (key == "eta_delta") {
            tech.eta_delta = parse_rate(value, label);
            has_component = true;
        } else if (key == "eta_R_net") {
            tech.eta_R_net = parse_rate(value, label);
            has_component = true;
        } else if (key == "eta_e") {
            tech.eta_e = parse_rate(value, label);
            has_component = true;
        } else if (key == "C0") {
            out.params.C0 = parse_number(value, label);
            if (out.params.C0 <= 0.0) fail(label + ": must be positive");
        } else if (key == "dt") {
            out.params.dt = parse_number(value, label);
            if (out.params.dt <= 0.0) fail(label + ": must be positive");
        } else if (key == "horizon") {
            out.params.horizon = parse_number(value, label);
            if (out.params.horizon <= 0.0) fail(label + ": must be positive");
        } else if (key == "blowup_bound") {
            out.params.blowup_bound = parse_number(value, label);
            if (out.params.blowup_bound <= 0.0) fail(label + ": must be positive");
        } else if (key == "id") {
            out.id = value;
        } else {
            fail("unknown key '" + key + "' in [scenario]");
        }
    }
    if (has_eta_tech && has_component)
        fail("[scenario]: eta_tech conflicts with the component keys eta_delta/eta_R_net/eta_e");
    if (has_component) {
        out.tech = tech;
        out.params.eta_tech = tech.total();
    }
    const double ratio = out.params.horizon / out.params.dt;
    if (std::fabs(ratio - std::llround(ratio)) > 1e-6 * std::max(1.0, ratio))
        fail("[scenario]: horizon is not a whole number of dt steps");
}

void read_constants_section(const IniSection& sec, ModelConstants& c) {
    for (const auto& [key, value] : sec.entries) {
        const std::string label = "[constants] " + key;
        if (key == "lambda") c.lambda = parse_number(value, label);
        else if (key == "alpha") c.alpha = parse_number(value, label);
        else if (key == "k") c.k = parse_number(value, label);
        else if (key == "delta_mu") c.delta_mu = parse_number(value, label);
        else fail("unknown key '" + key + "' in [constants]");
    }
    if (c.lambda <= 0.0) fail("[constants] lambda: must be positive");
    if (c.alpha <= 0.0) fail("[constants] alpha: must be positive");
    if (c.k <= 0.0) fail("[constants] k: must be positive");
    if (c.delta_mu <= 0.0) fail("[constants] delta_mu: must be positive");
}

void read_ensemble_section(const IniSection& sec, Scenario& out) {
    EnsembleSettings e;
    for (const auto& [key, value] : sec.entries) {
        const std::string label = "[ensemble] " + key;
        if (key == "members") {
            const long long m = parse_integer(value, label);
            if (m < 1) fail(label + ": need at least one member");
            if (m > 50'000'000) fail(label + ": member count too large");
            e.members = static_cast<int>(m);
        } else if (key == "sigma") {
            e.noise.sigma = parse_rate(value, label);
            if (e.noise.sigma < 0.0) fail(label + ": must be >= 0");
        } else if (key == "seed") {
            e.noise.seed = parse_seed(value, label);
        } else {
            fail("unknown key '" + key + "' in [ensemble]");
        }
    }
    out.ensemble = e;
}

void read_physical_section(const IniSection& sec, Scenario& out) {
    PhysicalSettings p;
    for (const auto& [key, value] : sec.entries) {
        const std::string label = "[physical] " + key;
        if (key == "N_S") {
            p.initial.N_S = parse_number(value, label);
            if (p.initial.N_S <= 0.0) fail(label + ": must be positive");
        } else if (key == "delta_H_R") {
            p.initial.delta_H_R = parse_number(value, label);
            if (p.initial.delta_H_R < 0.0) fail(label + ": must be >= 0");
        } else if (key == "e_S_tot") {
            p.initial.e_S_tot = parse_number(value, label);
            if (p.initial.e_S_tot <= 0.0) fail(label + ": must be positive");
        } else if (key == "nu") {
            p.initial.nu = parse_number(value, label);
            if (p.initial.nu < 0.0) fail(label + ": must be >= 0");
        } else if (key == "delta") {
            p.initial.delta = parse_fraction(value, label);
            if (p.initial.delta < 0.0 || p.initial.delta >= 1.0)
                fail(label + ": must lie in [0, 1)");
        } else if (key == "D") {
            if (trim(value) == "track") {
                p.discovery_tracks_consumption = true;
            } else {
                p.initial.D = parse_number(value, label);
                if (p.initial.D < 0.0) fail(label + ": must be >= 0 or the word 'track'");
            }
        } else if (key == "eta_e") {
            p.eta_e = parse_rate(value, label);
        } else {
            fail("unknown key '" + key + "' in [physical]");
        }
    }
    out.physical = p;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    const IniFile file = IniFile::parse(text);
    Scenario out;
    for (const auto& sec : file.sections) {
        if (sec.name == "run" || sec.name == "result") continue;
        if (sec.name == "scenario") read_scenario_section(sec, out);
        else if (sec.name == "constants") read_constants_section(sec, out.params.constants);
        else if (sec.name == "ensemble") read_ensemble_section(sec, out);
        else if (sec.name == "physical") read_physical_section(sec, out);
        else fail("unknown section [" + sec.name + "]");
    }
    return out;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

// ============================================================
// Run manifest
// ============================================================

const char* version_string() { return "thermoecon 1.0.0"; }

std::string format_shortest(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

namespace {

// Rate keys re-parse through the bare-value guard in parse_rate, so the
// rare magnitudes above 0.5 are written in percent notation instead.
std::string format_rate(double v) {
    if (std::isfinite(v) && std::fabs(v) > 0.5)
        return format_shortest(100.0 * v) + "%";
    return format_shortest(v);
}

}  // namespace

std::string manifest_text(const Scenario& scenario, const RunInfo& run,
                          const std::optional<EnsembleOutcome>& outcome) {
    std::ostringstream out;
    out << "# " << version_string() << " run manifest; re-runnable as a config file\n";
    out << "[run]\n";
    out << "command = " << run.command << "\n";
    out << "format = " << run.format << "\n";
    out << "threads = " << run.threads << "\n";

    if (outcome) {
        out << "\n[result]\n";
        out << "collapse_fraction = " << format_shortest(outcome->collapse_fraction) << "\n";
        out << "members = " << outcome->members << "\n";
        out << "seed = " << outcome->seed << "\n";
    }

    const bool fiscal = run.command == "simulate" || run.command == "ensemble";
    out << "\n[scenario]\n";
    if (!scenario.id.empty()) out << "id = " << scenario.id << "\n";
    if (fiscal && scenario.has_fiscal_rates)
        out << "eta0 = " << format_rate(scenario.params.eta0) << "\n";
    if (fiscal) {
        if (scenario.tech) {
            out << "eta_delta = " << format_rate(scenario.tech->eta_delta) << "\n";
            out << "eta_R_net = " << format_rate(scenario.tech->eta_R_net) << "\n";
            out << "eta_e = " << format_rate(scenario.tech->eta_e) << "\n";
        } else {
            out << "eta_tech = " << format_rate(scenario.params.eta_tech) << "\n";
        }
        out << "C0 = " << format_shortest(scenario.params.C0) << "\n";
        out << "blowup_bound = " << format_shortest(scenario.params.blowup_bound) << "\n";
    }
    out << "dt = " << format_shortest(scenario.params.dt) << "\n";
    out << "horizon = " << format_shortest(scenario.params.horizon) << "\n";

    const ModelConstants& c = scenario.params.constants;
    out << "\n[constants]\n";
    out << "lambda = " << format_shortest(c.lambda) << "\n";
    out << "alpha = " << format_shortest(c.alpha) << "\n";
    out << "k = " << format_shortest(c.k) << "\n";
    out << "delta_mu = " << format_shortest(c.delta_mu) << "\n";

    if (run.command == "ensemble" && scenario.ensemble) {
        const EnsembleSettings& e = *scenario.ensemble;
        out << "\n[ensemble]\n";
        out << "members = " << e.members << "\n";
        out << "sigma = " << format_rate(e.noise.sigma) << "\n";
        out << "seed = " << e.noise.seed << "\n";
    }

    if (run.command == "physical" && scenario.physical) {
        const PhysicalSettings& p = *scenario.physical;
        out << "\n[physical]\n";
        out << "N_S = " << format_shortest(p.initial.N_S) << "\n";
        out << "delta_H_R = " << format_shortest(p.initial.delta_H_R) << "\n";
        out << "e_S_tot = " << format_shortest(p.initial.e_S_tot) << "\n";
        out << "nu = " << format_shortest(p.initial.nu) << "\n";
        out << "delta = " << format_shortest(p.initial.delta) << "\n";
        if (p.discovery_tracks_consumption) out << "D = track\n";
        else out << "D = " << format_shortest(p.initial.D) << "\n";
        out << "eta_e = " << format_rate(p.eta_e) << "\n";
    }

    return out.str();
}

}  // namespace thermoecon
