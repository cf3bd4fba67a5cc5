#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

// Closed-form fiscal-layer model: the logistic law for the rate of return
// eta, growth-mode classification, and the wealth/production/inflation
// identities that hang off it.
//
// Conventions used throughout the library:
//   rates        fraction per year (0.022 = 2.2 %/yr)
//   wealth       trillion 2005 USD (calibration files use billions; the
//                conversion helpers below bridge the two)
//   power        terawatts
//   lambda       watts per thousand 2005 USD

namespace thermoecon {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ============================================================
// Constants
// ============================================================

// Shape coefficient for a system spherical with respect to its reserves,
// (48 pi^2)^(1/3).
double spherical_shape_coefficient();

struct ModelConstants {
    double lambda = 7.1;    // W per $1000 of wealth
    double alpha = 1.0;     // rate coefficient, 1/yr
    double k = spherical_shape_coefficient();
    double delta_mu = 1.0;  // potential-energy step per matter unit
};

// a = lambda * C, expressed in the library's units (TW from trillion USD).
double energy_tw_from_wealth(double wealth_trillion, double lambda_w_per_kusd);
double wealth_trillion_from_energy(double energy_tw, double lambda_w_per_kusd);

// ============================================================
// Growth modes
// ============================================================

enum class GrowthRegime {
    Innovation,             // G > 1, eta0 > 0: eta rises to eta_tech/2
    DiminishingReturnsTC,   // 0 < G < 1, eta0 > 0: eta falls to eta_tech/2
    DiminishingReturnsTD,   // G <= 0, eta0 > 0: eta decays to zero
    Decay,                  // G > 1, eta0 < 0: eta relaxes to zero from below
    Collapse,               // G < 1, eta0 < 0: eta diverges at finite t*
};

struct GrowthMode {
    GrowthRegime regime;
    double limiting_rate;                // eta_tech/2, 0, or -inf
    std::optional<double> blowup_time;   // t*, Collapse only
    bool constant_trajectory = false;    // started exactly on a fixed point
};

const char* regime_name(GrowthRegime r);

// G = eta_tech / (2 eta0). Throws std::domain_error when eta0 == 0.
double growth_number(double eta_tech, double eta0);

// Finite-time blowup of the closed form, ln(1-G)/eta_tech; empty unless
// eta0 < 0 and G < 1.
std::optional<double> collapse_time(double eta_tech, double eta0);

// Total classification over (sign of eta0, G). eta0 == 0 with eta_tech <= 0
// degenerates to DiminishingReturnsTD (eta stays pinned at zero); eta0 == 0
// with eta_tech > 0 throws, since the zero fixed point is then unstable and
// the mode is not defined by the initial data.
GrowthMode classify_mode(double eta_tech, double eta0);

// ============================================================
// Logistic law
// ============================================================

// d(eta)/dt = eta_tech*eta - 2*eta^2
double eta_rhs(double eta, double eta_tech);

// eta(t) = G*eta0 / (1 + (G-1)*exp(-eta_tech*t)). Below |eta_tech| = 1e-12
// the analytic limit eta0/(1 + 2*eta0*t) is used. Returns -inf at or past
// the blowup time of a collapse trajectory.
double eta_closed_form(double t, double eta0, double eta_tech);

// d(ln eta)/dt = -2*eta + eta_tech. Throws std::domain_error at eta == 0
// where the logarithm is undefined.
double innovation_rate(double eta, double eta_tech);

// d(ln Y)/dt = -eta + eta_tech; identical to eta + innovation_rate(...).
double gdp_growth_rate(double eta, double eta_tech);

// ============================================================
// Wealth and inflation identities
// ============================================================

struct SuperExponentialWealth {
    double value;
    bool overflowed;  // saturated to +inf
};

// C(t) = C0 * exp(eta*tau_eta*(exp(t/tau_eta) - 1)); tau_eta = +inf selects
// the plain exponential C0*exp(eta*t).
SuperExponentialWealth wealth_super_exponential(double t, double C0,
                                                double eta, double tau_eta);

// <i> = gamma/beta. Throws std::domain_error for beta <= 0.
double inflation_from_coefficients(double beta, double gamma);

// Yhat/Y = 1 + <i>
double gdp_deflator(double beta, double gamma);

// Small-inflation approximation <i> ~ delta = j_d/j_a; valid while |i| << 1.
double inflation_from_decay(double delta);

// ============================================================
// Technological change decomposition
// ============================================================

struct TechChange {
    double eta_delta = 0.0;   // longevity gains, d ln(1-delta)/dt
    double eta_R_net = 0.0;   // net reserve tendency, (D - a)/dH_R
    double eta_e = 0.0;       // d ln e_S_tot/dt, entered subtractively
    double total() const { return eta_delta + eta_R_net - eta_e; }
};

// ============================================================
// Fiscal state snapshot
// ============================================================

struct FiscalState {
    double wealth_C = 0.0;  // trillion 2005 USD
    double output_Y = 0.0;  // trillion 2005 USD per year
    double energy_a = 0.0;  // TW
    double beta = 0.0;      // nominal production coefficient, 1/yr
    double gamma = 0.0;     // inflation correction coefficient, 1/yr
};

// Populate a snapshot from (C, eta) under a = lambda*C, Y = eta*C, and the
// deflator split beta = eta/(1-i), gamma = beta*i.
FiscalState fiscal_from_wealth(double wealth_trillion, double eta,
                               const ModelConstants& constants,
                               double inflation = 0.0);

}  // namespace thermoecon
