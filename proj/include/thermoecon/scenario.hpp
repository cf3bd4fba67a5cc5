#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thermoecon/core_model.hpp"
#include "thermoecon/dynamics.hpp"
#include "thermoecon/thermo_state.hpp"

// Run configuration: INI-style scenario files, value parsing with unit
// suffixes, and the run manifest that makes every output re-runnable.

namespace thermoecon {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ============================================================
// INI reader
// ============================================================

struct IniSection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;

    // First value stored under key, or null.
    const std::string* find(const std::string& key) const;
};

struct IniFile {
    std::vector<IniSection> sections;

    // Whole-line comments start with '#' or ';'. Keys must live inside a
    // [section]; duplicate keys within a section are errors.
    static IniFile parse(const std::string& text);

    const IniSection* find(const std::string& name) const;
};

// ============================================================
// Value parsing
// ============================================================

// Plain finite number; anything trailing is an error.
double parse_number(const std::string& text, const std::string& key);

// Number with an optional trailing '%': "20%" reads as 0.2, a bare value
// is used unchanged.
double parse_fraction(const std::string& text, const std::string& key);

// Per-year rate with an optional trailing '%'. A bare magnitude above 0.5
// is rejected as a missing '%' sign ("3" vs "3%" or "0.03").
double parse_rate(const std::string& text, const std::string& key);

long long parse_integer(const std::string& text, const std::string& key);
std::uint64_t parse_seed(const std::string& text, const std::string& key);

// ============================================================
// Resolved configuration
// ============================================================

struct EnsembleSettings {
    int members = 1000;
    NoiseSpec noise;
};

struct PhysicalSettings {
    PhysicalState initial;
    double eta_e = 0.0;                         // d ln e_S_tot/dt
    bool discovery_tracks_consumption = false;  // D = track

    PhysicalSchedules schedules() const;
};

struct Scenario {
    ScenarioParams params;
    bool has_fiscal_rates = false;   // [scenario] supplied eta0
    std::optional<TechChange> tech;  // eta_tech given by components
    std::optional<EnsembleSettings> ensemble;
    std::optional<PhysicalSettings> physical;
    std::string id;
};

// Sections: [scenario] (eta0, eta_tech or the component triple
// eta_delta/eta_R_net/eta_e, C0, dt, horizon, blowup_bound, id),
// [constants] (lambda, alpha, k, delta_mu), [ensemble] (members, sigma,
// seed), [physical] (N_S, delta_H_R, e_S_tot, nu, delta, D, eta_e).
// Unknown sections or keys raise ConfigError naming the offender. [run]
// and [result] are manifest bookkeeping and are skipped, so a manifest
// re-parses as the config it records.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// ============================================================
// Run manifest
// ============================================================

struct RunInfo {
    std::string command;
    std::string format = "csv";
    int threads = 1;
};

struct EnsembleOutcome {
    double collapse_fraction = 0.0;
    int members = 0;
    std::uint64_t seed = 0;
};

const char* version_string();

// Shortest decimal text that parses back to the same double.
std::string format_shortest(double v);

// Re-runnable echo of the resolved configuration, prefixed with [run]
// bookkeeping and, for ensembles, a [result] summary. Feeding the manifest
// back through the same command reproduces the data file byte for byte.
std::string manifest_text(const Scenario& scenario, const RunInfo& run,
                          const std::optional<EnsembleOutcome>& outcome);

}  // namespace thermoecon
