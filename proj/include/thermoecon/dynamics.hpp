#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "thermoecon/core_model.hpp"
#include "thermoecon/thermo_state.hpp"

// Time integration: deterministic fiscal trajectories, the coupled physical
// simulation, and stochastic ensembles with quantile-band statistics.

namespace thermoecon {

// ============================================================
// Scenario and trajectory types
// ============================================================

struct ScenarioParams {
    double eta0 = 0.0;
    double eta_tech = 0.0;
    double C0 = 100.0;          // index units unless the caller means trillions
    double dt = 0.05;           // years
    double horizon = 400.0;     // years
    double blowup_bound = 10.0; // |eta| beyond this is treated as divergence
    ModelConstants constants;
};

struct TrajectoryPoint {
    double t;
    double eta;
    double C;
    double Y;           // eta * C
    double a;           // lambda * C, in TW when C is in trillions
    double innovation;  // -2*eta + eta_tech
    double gdp_growth;  // -eta + eta_tech
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    GrowthMode terminal_mode;
    std::optional<double> blowup_time;
    std::string scenario_id;
};

// Classical fixed-step 4th-order integration of (eta, ln C). A trajectory
// that exceeds the blowup bound is truncated at the last valid point, with
// the analytic blowup time recorded when the mode provides one.
Trajectory integrate_fiscal(const ScenarioParams& params);

// 100 * C(t) / C(0). Throws std::invalid_argument on an empty trajectory.
std::vector<double> wealth_index(const Trajectory& traj);

// One deterministic step of the (eta, ln C) system, shared verbatim by
// integrate_fiscal and the ensemble engine so that a noise-free member is
// bit-identical to the deterministic trajectory.
struct FiscalStepState {
    double eta;
    double lnC;
};
FiscalStepState fiscal_rk4_step(FiscalStepState s, double eta_tech, double dt);

// ============================================================
// Stochastic ensembles
// ============================================================

enum class NoiseScheme { PerStepAdditive };

struct NoiseSpec {
    double sigma = 0.0;  // per-sqrt(year) standard deviation of eta noise
    NoiseScheme scheme = NoiseScheme::PerStepAdditive;
    std::uint64_t seed = 0;
};

struct QuantileBand {
    std::vector<double> q5, q25, q50, q75, q95;
};

struct EnsembleResult {
    std::vector<double> t;
    QuantileBand eta;
    QuantileBand wealth;
    std::vector<double> eta_deterministic;
    std::vector<double> wealth_deterministic;
    double collapse_fraction = 0.0;
    int member_count = 0;
    std::uint64_t seed = 0;
};

// Each member integrates the fiscal system with an independent counter-based
// noise stream; eta receives an additive Gaussian increment sigma*sqrt(dt)
// after every deterministic step. Members whose |eta| crosses the blowup
// bound are carried as collapsed and rank below every live member (-inf) in
// the per-step quantiles, from the crossing step onward. Results are
// invariant under the worker count. threads <= 0 selects the hardware count.
EnsembleResult run_ensemble(const ScenarioParams& params, const NoiseSpec& noise,
                            int members, int threads = 0);

// Nearest-rank quantile of an ascending-sorted range; q in [0, 100].
double nearest_rank_quantile(const std::vector<double>& sorted_values, double q);

// ============================================================
// Coupled physical simulation
// ============================================================

// Exogenous drivers. Null functions fall back to the initial state's values
// (discovery D and decay delta) or to zero (e_S_tot growth). When
// discovery_tracks_consumption is set, D == a at every instant and the
// discovery function is ignored.
struct PhysicalSchedules {
    std::function<double(double)> discovery;
    std::function<double(double)> decay_delta;
    std::function<double(double)> e_s_growth;
    bool discovery_tracks_consumption = false;
};

struct PhysicalPoint {
    double t;
    PhysicalState state;
    FlowPair flows;
    double eta;       // physical-state rate of return
    double eta_tech;  // d ln(1-delta)/dt + (D-a)/dH_R - eta_e
    double C;         // a/lambda read-out, trillions
    double Y;         // eta * C
    bool gdp_growing; // eta_tech > eta
};

struct PhysicalTrajectory {
    std::vector<PhysicalPoint> points;
    bool reserves_exhausted = false;
    double exhaustion_time = 0.0;
    double consumed_integral = 0.0;  // integral of a over the run
};

// Advances (N_S, dH_R, e_S_tot) with the same fixed-step 4th-order scheme:
// dN_S/dt = j_net, d(dH_R)/dt = D - a, d(e_S_tot)/dt = eta_e*e_S_tot, with
// a = alpha*k*N_S^(1/3)*dH_R. Reserves are clamped at zero (consumption
// stops when nothing is left) and the event is recorded.
PhysicalTrajectory integrate_physical(const PhysicalState& initial,
                                      const PhysicalSchedules& schedules,
                                      const ModelConstants& constants,
                                      double dt, double horizon);

}  // namespace thermoecon
