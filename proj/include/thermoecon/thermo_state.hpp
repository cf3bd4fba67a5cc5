#pragma once

#include "thermoecon/core_model.hpp"

// Physical-layer state and relations: interfaces, material flows, work and
// efficiency, and the rate of return expressed through thermodynamic
// quantities rather than currency.

namespace thermoecon {

struct PhysicalState {
    double N_S = 1.0;        // accumulated system matter, unit count
    double delta_H_R = 0.0;  // available reserve enthalpy, N_R * delta_mu
    double e_S_tot = 1.0;    // energy dissipated per matter unit incorporated
    double nu = 0.0;         // degrees of freedom per unit (0 = unspecified)
    double e_S = 0.0;        // energy per degree of freedom (0 = unspecified)
    double delta = 0.0;      // decay parameter j_d/j_a
    double D = 0.0;          // reserve discovery rate, power

    // Reserve count implied by the enthalpy, dH_R / delta_mu.
    double N_R(double delta_mu) const { return delta_H_R / delta_mu; }
};

struct FlowPair {
    double j_a = 0.0;   // matter consumption flux
    double j_d = 0.0;   // matter decay flux
    double j_net = 0.0; // j_a - j_d
    double a = 0.0;     // energy consumption rate backing j_a
    double d = 0.0;     // dissipation rate backing j_d
};

// N-breve = k * N_S^(1/3) * N_R. Throws std::domain_error on negative input.
double interface_size(double N_S, double N_R, double k);

// a = alpha * k * N_S^(1/3) * dH_R; equal to alpha * N-breve * delta_mu when
// dH_R = N_R * delta_mu.
double consumption_rate(const PhysicalState& state, double alpha, double k);

// j_a = a/e_S_tot, j_d = d/e_S_tot, j_net = (a-d)/e_S_tot.
// Throws std::domain_error when e_S_tot <= 0.
FlowPair material_flows(const PhysicalState& state, double a, double d);

struct WorkEfficiency {
    double w;        // rate of work done growing the interface
    double epsilon;  // w / a
    double eta;      // alpha * epsilon
};

// Throws std::domain_error when a <= 0.
WorkEfficiency work_and_efficiency(double a, double dG_dt, double alpha);

// eta = (alpha*k/3) * (1-delta) * dH_R / (N_S^(2/3) * e_S_tot), the
// physical-state form of the rate of return. Equal to
// (1/3)*(1-delta)*j_a/N_S for the state's own flow pair, and to d ln a/dt
// along a trajectory with constant reserves.
double eta_from_physical(const PhysicalState& state,
                         const ModelConstants& constants);

// d ln dH_R/dt = (D - a)/dH_R. Throws std::domain_error when dH_R <= 0
// (reserves exhausted).
double reserve_tendency(const PhysicalState& state, double a);

// eta_delta = -(1/j_a) * d j_d/dt, the longevity contribution to
// technological change. Throws std::domain_error when j_a <= 0.
double longevity_term(double j_a, double dj_d_dt);

// H_S = N_S * e_S_tot
double enthalpy(const PhysicalState& state);

// Diagnostic timescales. Zero-flow cases report +inf.
struct Timescales {
    double tau_heat;    // 2*delta_mu / a
    double tau_diss;    // 2*delta_mu / d
    double tau_growth;  // N_S / j_net
};
Timescales characteristic_timescales(const PhysicalState& state,
                                     const FlowPair& flows, double delta_mu);

}  // namespace thermoecon
