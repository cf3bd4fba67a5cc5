#include "thermoecon/thermo_state.hpp"

#include <stdexcept>

namespace thermoecon {

double interface_size(double N_S, double N_R, double k) {
    if (N_S <= 0.0 || N_R < 0.0)
        throw std::domain_error("interface size requires N_S > 0 and N_R >= 0");
    return k * std::cbrt(N_S) * N_R;
}

double consumption_rate(const PhysicalState& state, double alpha, double k) {
    return alpha * k * std::cbrt(state.N_S) * state.delta_H_R;
}

FlowPair material_flows(const PhysicalState& state, double a, double d) {
    if (state.e_S_tot <= 0.0)
        throw std::domain_error("material flows require e_S_tot > 0");
    FlowPair f;
    f.a = a;
    f.d = d;
    f.j_a = a / state.e_S_tot;
    f.j_d = d / state.e_S_tot;
    f.j_net = (a - d) / state.e_S_tot;
    return f;
}

WorkEfficiency work_and_efficiency(double a, double dG_dt, double alpha) {
    if (a <= 0.0)
        throw std::domain_error("efficiency requires a > 0");
    WorkEfficiency we;
    we.w = dG_dt;
    we.epsilon = dG_dt / a;
    we.eta = alpha * we.epsilon;
    return we;
}

double eta_from_physical(const PhysicalState& state,
                         const ModelConstants& constants) {
    const double ns23 = std::cbrt(state.N_S) * std::cbrt(state.N_S);
    return constants.alpha * constants.k * (1.0 - state.delta) *
           state.delta_H_R / (3.0 * ns23 * state.e_S_tot);
}

double reserve_tendency(const PhysicalState& state, double a) {
    if (state.delta_H_R <= 0.0)
        throw std::domain_error("reserves exhausted: dH_R <= 0");
    return (state.D - a) / state.delta_H_R;
}

double longevity_term(double j_a, double dj_d_dt) {
    if (j_a <= 0.0)
        throw std::domain_error("longevity term requires j_a > 0");
    return -dj_d_dt / j_a;
}

double enthalpy(const PhysicalState& state) {
    return state.N_S * state.e_S_tot;
}

Timescales characteristic_timescales(const PhysicalState& state,
                                     const FlowPair& flows, double delta_mu) {
    Timescales t;
    t.tau_heat = flows.a > 0.0 ? 2.0 * delta_mu / flows.a : kInf;
    t.tau_diss = flows.d > 0.0 ? 2.0 * delta_mu / flows.d : kInf;
    t.tau_growth = flows.j_net != 0.0 ? state.N_S / flows.j_net : kInf;
    return t;
}

}  // namespace thermoecon
