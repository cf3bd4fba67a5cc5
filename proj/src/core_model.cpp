#include "thermoecon/core_model.hpp"

#include <numbers>
#include <stdexcept>

namespace thermoecon {

namespace {
// Below this magnitude exp(-eta_tech*t) is indistinguishable from 1 over
// century horizons in double precision, so the eta_tech -> 0 limit is used.
constexpr double kEtaTechZeroThreshold = 1e-12;
}  // namespace

double spherical_shape_coefficient() {
    static const double k = std::cbrt(48.0 * std::numbers::pi * std::numbers::pi);
    return k;
}

double energy_tw_from_wealth(double wealth_trillion, double lambda_w_per_kusd) {
    // 1 trillion USD = 1e9 k$, and 1e12 W = 1 TW, so the net factor is 1e-3.
    return lambda_w_per_kusd * wealth_trillion * 1e-3;
}

double wealth_trillion_from_energy(double energy_tw, double lambda_w_per_kusd) {
    return energy_tw * 1e3 / lambda_w_per_kusd;
}

const char* regime_name(GrowthRegime r) {
    switch (r) {
        case GrowthRegime::Innovation: return "innovation";
        case GrowthRegime::DiminishingReturnsTC: return "diminishing-returns-and-technological-change";
        case GrowthRegime::DiminishingReturnsTD: return "diminishing-returns-and-technological-decay";
        case GrowthRegime::Decay: return "decay";
        case GrowthRegime::Collapse: return "collapse";
    }
    return "unknown";
}

double growth_number(double eta_tech, double eta0) {
    if (eta0 == 0.0)
        throw std::domain_error("growth number undefined for eta0 = 0");
    return eta_tech / (2.0 * eta0);
}

std::optional<double> collapse_time(double eta_tech, double eta0) {
    if (eta0 >= 0.0) return std::nullopt;
    if (std::abs(eta_tech) < kEtaTechZeroThreshold) return -1.0 / (2.0 * eta0);
    const double G = growth_number(eta_tech, eta0);
    if (G >= 1.0) return std::nullopt;
    return std::log1p(-G) / eta_tech;
}

GrowthMode classify_mode(double eta_tech, double eta0) {
    if (eta0 == 0.0) {
        if (eta_tech > 0.0)
            throw std::domain_error(
                "eta0 = 0 with eta_tech > 0: the zero fixed point is unstable "
                "and the growth mode is undetermined");
        return {GrowthRegime::DiminishingReturnsTD, 0.0, std::nullopt, true};
    }
    const double G = growth_number(eta_tech, eta0);
    const bool on_fixed_point = (G == 1.0);
    if (eta0 > 0.0) {
        if (G >= 1.0)
            return {GrowthRegime::Innovation, eta_tech / 2.0, std::nullopt,
                    on_fixed_point};
        if (G > 0.0)
            return {GrowthRegime::DiminishingReturnsTC, eta_tech / 2.0,
                    std::nullopt, false};
        return {GrowthRegime::DiminishingReturnsTD, 0.0, std::nullopt, false};
    }
    if (G >= 1.0)
        return {GrowthRegime::Decay, on_fixed_point ? eta_tech / 2.0 : 0.0,
                std::nullopt, on_fixed_point};
    return {GrowthRegime::Collapse, -kInf, collapse_time(eta_tech, eta0), false};
}

double eta_rhs(double eta, double eta_tech) {
    return eta_tech * eta - 2.0 * eta * eta;
}

double eta_closed_form(double t, double eta0, double eta_tech) {
    if (std::abs(eta_tech) < kEtaTechZeroThreshold) {
        const double den = 1.0 + 2.0 * eta0 * t;
        if (den <= 0.0) return -kInf;
        return eta0 / den;
    }
    const double G = eta_tech / (2.0 * eta0);
    const double den = 1.0 + (G - 1.0) * std::exp(-eta_tech * t);
    if (eta0 < 0.0 && G < 1.0) {
        // The denominator starts at G and crosses zero at t*; past the
        // crossing the formula no longer describes the trajectory.
        const bool past_blowup = (G > 0.0) ? (den <= 0.0) : (den >= 0.0);
        if (past_blowup) return -kInf;
    }
    return G * eta0 / den;
}

double innovation_rate(double eta, double eta_tech) {
    if (eta == 0.0)
        throw std::domain_error("d ln(eta)/dt undefined at eta = 0");
    return -2.0 * eta + eta_tech;
}

double gdp_growth_rate(double eta, double eta_tech) {
    return -eta + eta_tech;
}

SuperExponentialWealth wealth_super_exponential(double t, double C0,
                                                double eta, double tau_eta) {
    double exponent;
    if (std::isinf(tau_eta)) {
        exponent = eta * t;
    } else {
        exponent = eta * tau_eta * std::expm1(t / tau_eta);
    }
    const double value = C0 * std::exp(exponent);
    if (std::isinf(value)) return {kInf, true};
    return {value, false};
}

double inflation_from_coefficients(double beta, double gamma) {
    if (beta <= 0.0)
        throw std::domain_error("nominal production coefficient must be positive");
    return gamma / beta;
}

double gdp_deflator(double beta, double gamma) {
    return 1.0 + inflation_from_coefficients(beta, gamma);
}

double inflation_from_decay(double delta) {
    return delta;
}

FiscalState fiscal_from_wealth(double wealth_trillion, double eta,
                               const ModelConstants& constants,
                               double inflation) {
    FiscalState s;
    s.wealth_C = wealth_trillion;
    s.output_Y = eta * wealth_trillion;
    s.energy_a = energy_tw_from_wealth(wealth_trillion, constants.lambda);
    s.beta = eta / (1.0 - inflation);
    s.gamma = s.beta * inflation;
    return s;
}

}  // namespace thermoecon
