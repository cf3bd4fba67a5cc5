#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

#include "thermoecon/core_model.hpp"

using Catch::Approx;
using namespace thermoecon;

// ============================================================
// Constants and unit bridges
// ============================================================

TEST_CASE("spherical shape coefficient", "[core]") {
    REQUIRE(spherical_shape_coefficient() == Approx(7.795554179441507).epsilon(1e-15));
}

TEST_CASE("wealth and energy conversions invert each other", "[core]") {
    // 7.1 W per $1000 against 100 trillion USD is 0.71 TW.
    REQUIRE(energy_tw_from_wealth(100.0, 7.1) == Approx(0.71).epsilon(1e-15));
    REQUIRE(wealth_trillion_from_energy(0.71, 7.1) == Approx(100.0).epsilon(1e-15));
    const double c = 37.42;
    REQUIRE(wealth_trillion_from_energy(energy_tw_from_wealth(c, 7.1), 7.1) ==
            Approx(c).epsilon(1e-15));
}

// ============================================================
// Growth number and mode classification
// ============================================================

TEST_CASE("growth number", "[core]") {
    REQUIRE(growth_number(0.04, 0.01) == 2.0);
    REQUIRE(growth_number(0.01, 0.04) == 0.125);
    REQUIRE(growth_number(-0.01, 0.005) == -1.0);
    REQUIRE_THROWS_AS(growth_number(0.04, 0.0), std::domain_error);
}

TEST_CASE("mode truth table", "[core]") {
    SECTION("innovation: G > 1, eta0 > 0") {
        const GrowthMode m = classify_mode(0.04, 0.01);
        REQUIRE(m.regime == GrowthRegime::Innovation);
        REQUIRE(m.limiting_rate == Approx(0.02));
        REQUIRE_FALSE(m.blowup_time.has_value());
        REQUIRE_FALSE(m.constant_trajectory);
    }
    SECTION("diminishing returns with technological change: 0 < G < 1, eta0 > 0") {
        const GrowthMode m = classify_mode(0.01, 0.04);
        REQUIRE(m.regime == GrowthRegime::DiminishingReturnsTC);
        REQUIRE(m.limiting_rate == Approx(0.005));
    }
    SECTION("diminishing returns with technological decay: G <= 0, eta0 > 0") {
        const GrowthMode m = classify_mode(-0.01, 0.005);
        REQUIRE(m.regime == GrowthRegime::DiminishingReturnsTD);
        REQUIRE(m.limiting_rate == 0.0);

        const GrowthMode z = classify_mode(0.0, 0.022);
        REQUIRE(z.regime == GrowthRegime::DiminishingReturnsTD);
    }
    SECTION("decay: G > 1, eta0 < 0") {
        const GrowthMode m = classify_mode(-0.04, -0.01);
        REQUIRE(m.regime == GrowthRegime::Decay);
        REQUIRE(m.limiting_rate == 0.0);
        REQUIRE_FALSE(m.blowup_time.has_value());
    }
    SECTION("collapse: G < 1, eta0 < 0") {
        const GrowthMode m = classify_mode(-0.005, -0.005);
        REQUIRE(m.regime == GrowthRegime::Collapse);
        REQUIRE(m.limiting_rate == -kInf);
        REQUIRE(m.blowup_time.has_value());
        REQUIRE(*m.blowup_time == Approx(138.62943611198907).epsilon(1e-12));
    }
    SECTION("fixed-point starts are flagged, not misclassified") {
        const GrowthMode up = classify_mode(0.04, 0.02);
        REQUIRE(up.regime == GrowthRegime::Innovation);
        REQUIRE(up.constant_trajectory);
        REQUIRE(up.limiting_rate == Approx(0.02));

        const GrowthMode down = classify_mode(-0.04, -0.02);
        REQUIRE(down.regime == GrowthRegime::Decay);
        REQUIRE(down.constant_trajectory);
        REQUIRE(down.limiting_rate == Approx(-0.02));
    }
    SECTION("eta0 = 0 degenerates") {
        const GrowthMode m = classify_mode(-0.02, 0.0);
        REQUIRE(m.regime == GrowthRegime::DiminishingReturnsTD);
        REQUIRE(m.constant_trajectory);
        REQUIRE(m.limiting_rate == 0.0);

        REQUIRE(classify_mode(0.0, 0.0).constant_trajectory);
        REQUIRE_THROWS_AS(classify_mode(0.03, 0.0), std::domain_error);
    }
}

TEST_CASE("mode classification is sign-exhaustive", "[core]") {
    // Every (sign eta0, G bucket) combination lands in exactly one regime.
    const double etas[] = {-0.03, -0.01, -0.004, 0.004, 0.01, 0.03};
    const double techs[] = {-0.05, -0.02, -0.008, 0.0, 0.008, 0.02, 0.05};
    for (double e0 : etas) {
        for (double et : techs) {
            const GrowthMode m = classify_mode(et, e0);
            const double G = growth_number(et, e0);
            if (e0 > 0.0 && G >= 1.0) REQUIRE(m.regime == GrowthRegime::Innovation);
            else if (e0 > 0.0 && G > 0.0) REQUIRE(m.regime == GrowthRegime::DiminishingReturnsTC);
            else if (e0 > 0.0) REQUIRE(m.regime == GrowthRegime::DiminishingReturnsTD);
            else if (G >= 1.0) REQUIRE(m.regime == GrowthRegime::Decay);
            else REQUIRE(m.regime == GrowthRegime::Collapse);
            if (m.regime == GrowthRegime::Collapse) {
                REQUIRE(m.blowup_time.has_value());
                REQUIRE(*m.blowup_time > 0.0);
            }
        }
    }
}

TEST_CASE("regime names", "[core]") {
    REQUIRE(std::string(regime_name(GrowthRegime::Innovation)) == "innovation");
    REQUIRE(std::string(regime_name(GrowthRegime::Collapse)) == "collapse");
    REQUIRE(std::string(regime_name(GrowthRegime::DiminishingReturnsTC)) ==
            "diminishing-returns-and-technological-change");
}

// ============================================================
// Collapse time
// ============================================================

TEST_CASE("collapse time", "[core]") {
    REQUIRE(collapse_time(-0.005, -0.005).value() ==
            Approx(138.62943611198907).epsilon(1e-12));
    REQUIRE(collapse_time(0.04, -0.01).value() ==
            Approx(27.465307216702744).epsilon(1e-12));

    SECTION("eta_tech -> 0 limit is -1/(2 eta0)") {
        REQUIRE(collapse_time(0.0, -0.003).value() ==
                Approx(166.66666666666666).epsilon(1e-12));
    }
    SECTION("absent outside the collapse wedge") {
        REQUIRE_FALSE(collapse_time(0.04, 0.01).has_value());
        REQUIRE_FALSE(collapse_time(-0.04, -0.01).has_value());
        REQUIRE_FALSE(collapse_time(0.0, 0.01).has_value());
    }
}

// ============================================================
// Logistic law
// ============================================================

TEST_CASE("logistic right-hand side", "[core]") {
    REQUIRE(eta_rhs(0.01, 0.04) == Approx(0.04 * 0.01 - 2.0 * 0.01 * 0.01));
    SECTION("eta_tech/2 is a fixed point, exactly") {
        for (double et : {-0.1, -0.03, 0.0, 0.004, 0.03, 0.1})
            REQUIRE(eta_rhs(et / 2.0, et) == 0.0);
    }
}

TEST_CASE("closed-form trajectory values", "[core]") {
    REQUIRE(eta_closed_form(50.0, 0.01, 0.04) ==
            Approx(0.017615941559557646).epsilon(1e-13));
    REQUIRE(eta_closed_form(100.0, 0.02, 0.03) ==
            Approx(0.015189054625267857).epsilon(1e-13));
    REQUIRE(eta_closed_form(30.0, -0.01, -0.04) ==
            Approx(-0.0046295043300196475).epsilon(1e-13));
    REQUIRE(eta_closed_form(60.0, 0.005, -0.01) ==
            Approx(0.0018909042056293164).epsilon(1e-13));
    REQUIRE(eta_closed_form(0.0, 0.005, 0.03) == 0.005);
}

TEST_CASE("closed form approaches eta_tech/2", "[core]") {
    REQUIRE(std::fabs(eta_closed_form(500.0, 0.01, 0.04) - 0.02) < 1e-10);
}

TEST_CASE("closed form under pure diminishing returns", "[core]") {
    // eta_tech = 0 reduces to eta0/(1 + 2 eta0 t).
    const double eta0 = 0.02;
    REQUIRE(eta_closed_form(25.0, eta0, 0.0) == Approx(0.01).epsilon(1e-9));
    for (double t : {1.0, 10.0, 100.0, 1000.0}) {
        const double eta = eta_closed_form(t, eta0, 0.0);
        REQUIRE(eta * (1.0 + 2.0 * eta0 * t) == Approx(eta0).epsilon(1e-9));
    }
}

TEST_CASE("closed form diverges to -inf at the blowup time", "[core]") {
    const double eta0 = -0.005, eta_tech = -0.005;
    const double tstar = collapse_time(eta_tech, eta0).value();
    REQUIRE(eta_closed_form(0.5 * tstar, eta0, eta_tech) ==
            Approx(-0.008535533905932736).epsilon(1e-13));
    REQUIRE(eta_closed_form(tstar + 1.0, eta0, eta_tech) == -kInf);
    REQUIRE(eta_closed_form(1e6, eta0, eta_tech) == -kInf);

    // Same for the G < 0 wedge, where the denominator rises through zero.
    const double ts2 = collapse_time(0.04, -0.01).value();
    REQUIRE(std::isfinite(eta_closed_form(0.9 * ts2, -0.01, 0.04)));
    REQUIRE(eta_closed_form(ts2 + 1.0, -0.01, 0.04) == -kInf);
}

TEST_CASE("closed form satisfies the differential law", "[core]") {
    std::mt19937 gen(987654321u);
    std::uniform_real_distribution<double> rate(-0.1, 0.1);
    std::uniform_real_distribution<double> when(0.0, 50.0);
    const double h = 1e-4;
    int checked = 0;
    while (checked < 1000) {
        const double eta0 = rate(gen);
        const double eta_tech = rate(gen);
        if (eta0 == 0.0) continue;
        const double t = when(gen);
        const auto ts = collapse_time(eta_tech, eta0);
        if (ts && t + h > 0.8 * *ts) continue;
        const double fd =
            (eta_closed_form(t + h, eta0, eta_tech) - eta_closed_form(t - h, eta0, eta_tech)) /
            (2.0 * h);
        const double rhs = eta_rhs(eta_closed_form(t, eta0, eta_tech), eta_tech);
        REQUIRE(fd == Approx(rhs).epsilon(1e-5).margin(1e-12));
        ++checked;
    }
}

// ============================================================
// Derived rates
// ============================================================

TEST_CASE("innovation rate", "[core]") {
    REQUIRE(innovation_rate(0.01, 0.04) == Approx(0.02).epsilon(1e-15));
    REQUIRE(innovation_rate(0.022, 0.0) == Approx(-0.044).epsilon(1e-15));
    REQUIRE_THROWS_AS(innovation_rate(0.0, 0.04), std::domain_error);
}

TEST_CASE("GDP growth equals eta plus the innovation rate", "[core]") {
    std::mt19937 gen(24601u);
    std::uniform_real_distribution<double> rate(-0.1, 0.1);
    for (int i = 0; i < 1000; ++i) {
        double eta = rate(gen);
        if (eta == 0.0) eta = 0.05;
        const double eta_tech = rate(gen);
        const double direct = gdp_growth_rate(eta, eta_tech);
        const double composed = eta + innovation_rate(eta, eta_tech);
        REQUIRE(direct == Approx(composed).epsilon(1e-12).margin(1e-18));
    }
}

// ============================================================
// Wealth and inflation identities
// ============================================================

TEST_CASE("super-exponential wealth", "[core]") {
    REQUIRE(wealth_super_exponential(50.0, 100.0, 0.005, 50.0).value ==
            Approx(153.65973473134144).epsilon(1e-13));
    REQUIRE(wealth_super_exponential(30.0, 100.0, 0.022, 1.0 / 0.044).value ==
            Approx(394.20886167614594).epsilon(1e-13));

    SECTION("infinite tau selects plain exponential growth") {
        const auto w = wealth_super_exponential(10.0, 100.0, 0.02, kInf);
        REQUIRE_FALSE(w.overflowed);
        REQUIRE(w.value == Approx(100.0 * std::exp(0.2)).epsilon(1e-14));
    }
    SECTION("t = 0 returns C0") {
        REQUIRE(wealth_super_exponential(0.0, 42.0, 0.03, 25.0).value == 42.0);
    }
    SECTION("saturation is flagged instead of silently returning inf") {
        const auto w = wealth_super_exponential(2000.0, 100.0, 0.05, 20.0);
        REQUIRE(w.overflowed);
        REQUIRE(w.value == kInf);
    }
}

TEST_CASE("inflation bookkeeping", "[core]") {
    const double beta = 0.015306122448979591;
    const double gamma = 0.0003061224489795918;
    REQUIRE(inflation_from_coefficients(beta, gamma) == Approx(0.02).epsilon(1e-12));
    REQUIRE(gdp_deflator(beta, gamma) == Approx(1.02).epsilon(1e-12));
    REQUIRE(inflation_from_decay(0.2) == 0.2);
    REQUIRE_THROWS_AS(inflation_from_coefficients(0.0, 0.001), std::domain_error);
    REQUIRE_THROWS_AS(inflation_from_coefficients(-0.01, 0.001), std::domain_error);
}

TEST_CASE("fiscal snapshot from wealth", "[core]") {
    ModelConstants constants;
    const FiscalState s = fiscal_from_wealth(100.0, 0.015, constants, 0.02);
    REQUIRE(s.wealth_C == 100.0);
    REQUIRE(s.output_Y == Approx(1.5).epsilon(1e-15));
    REQUIRE(s.energy_a == Approx(0.71).epsilon(1e-15));
    REQUIRE(s.beta == Approx(0.015306122448979591).epsilon(1e-13));
    REQUIRE(s.gamma == Approx(0.0003061224489795918).epsilon(1e-13));
    // beta - gamma recovers the real rate of return exactly.
    REQUIRE(s.beta - s.gamma == Approx(0.015).epsilon(1e-13));

    SECTION("zero inflation collapses beta to eta") {
        const FiscalState z = fiscal_from_wealth(50.0, 0.02, constants);
        REQUIRE(z.beta == Approx(0.02).epsilon(1e-15));
        REQUIRE(z.gamma == 0.0);
    }
}

TEST_CASE("technological change components sum with the enthalpy sign", "[core]") {
    TechChange tc;
    tc.eta_delta = 0.01;
    tc.eta_R_net = 0.02;
    tc.eta_e = 0.005;
    REQUIRE(tc.total() == Approx(0.025).epsilon(1e-15));
    REQUIRE(TechChange{}.total() == 0.0);
}
