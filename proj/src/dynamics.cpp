#include "thermoecon/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "thermoecon/gaussian_counter_rng.hpp"

namespace thermoecon {

namespace {

void validate_grid(double dt, double horizon, double C0) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(horizon >= dt)) throw std::invalid_argument("horizon must cover at least one step");
    if (!(C0 > 0.0)) throw std::invalid_argument("C0 must be positive");
}

int step_count(double dt, double horizon) {
    return static_cast<int>(std::llround(horizon / dt));
}

// Run fn(begin, end) on nearly equal slices of [0, total) across workers.
void parallel_slices(int total, int workers,
                     const std::function<void(int, int)>& fn) {
    if (workers <= 1 || total <= 1) {
        fn(0, total);
        return;
    }
    workers = std::min(workers, total);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int base = total / workers, extra = total % workers;
    int begin = 0;
    for (int w = 0; w < workers; ++w) {
        const int end = begin + base + (w < extra ? 1 : 0);
        pool.emplace_back(fn, begin, end);
        begin = end;
    }
    for (auto& th : pool) th.join();
}

}  // namespace

FiscalStepState fiscal_rk4_step(FiscalStepState s, double eta_tech, double dt) {
    const double k1 = eta_rhs(s.eta, eta_tech);
    const double e2 = s.eta + 0.5 * dt * k1;
    const double k2 = eta_rhs(e2, eta_tech);
    const double e3 = s.eta + 0.5 * dt * k2;
    const double k3 = eta_rhs(e3, eta_tech);
    const double e4 = s.eta + dt * k3;
    const double k4 = eta_rhs(e4, eta_tech);
    FiscalStepState out;
    out.eta = s.eta + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    // ln C integrates eta itself, so its stage slopes are the eta stages.
    out.lnC = s.lnC + dt / 6.0 * (s.eta + 2.0 * e2 + 2.0 * e3 + e4);
    return out;
}

Trajectory integrate_fiscal(const ScenarioParams& p) {
    validate_grid(p.dt, p.horizon, p.C0);
    Trajectory traj;
    traj.terminal_mode = classify_mode(p.eta_tech, p.eta0);

    const int n = step_count(p.dt, p.horizon);
    traj.points.reserve(n + 1);

    FiscalStepState s{p.eta0, 0.0};
    for (int i = 0; i <= n; ++i) {
        const double t = i * p.dt;
        TrajectoryPoint pt;
        pt.t = t;
        pt.eta = s.eta;
        pt.C = p.C0 * std::exp(s.lnC);
        pt.Y = s.eta * pt.C;
        pt.a = energy_tw_from_wealth(pt.C, p.constants.lambda);
        pt.innovation = -2.0 * s.eta + p.eta_tech;
        pt.gdp_growth = gdp_growth_rate(s.eta, p.eta_tech);
        traj.points.push_back(pt);
        if (i == n) break;

        s = fiscal_rk4_step(s, p.eta_tech, p.dt);
        if (!std::isfinite(s.eta) || std::abs(s.eta) > p.blowup_bound) {
            traj.blowup_time = traj.terminal_mode.blowup_time
                                   ? traj.terminal_mode.blowup_time
                                   : std::optional<double>((i + 1) * p.dt);
            if (traj.terminal_mode.regime != GrowthRegime::Collapse) {
                traj.terminal_mode.regime = GrowthRegime::Collapse;
                traj.terminal_mode.limiting_rate = -kInf;
                traj.terminal_mode.blowup_time = traj.blowup_time;
            }
            break;
        }
    }
    return traj;
}

std::vector<double> wealth_index(const Trajectory& traj) {
    if (traj.points.empty())
        throw std::invalid_argument("wealth index of an empty trajectory");
    const double C0 = traj.points.front().C;
    std::vector<double> idx;
    idx.reserve(traj.points.size());
    for (const auto& pt : traj.points) idx.push_back(100.0 * pt.C / C0);
    return idx;
}

double nearest_rank_quantile(const std::vector<double>& sorted_values, double q) {
    const int n = static_cast<int>(sorted_values.size());
    int rank = static_cast<int>(std::ceil(q / 100.0 * n));
    rank = std::clamp(rank, 1, n);
    return sorted_values[rank - 1];
}

EnsembleResult run_ensemble(const ScenarioParams& p, const NoiseSpec& noise,
                            int members, int threads) {
    if (members < 1)
        throw std::invalid_argument("ensemble requires at least one member");
    validate_grid(p.dt, p.horizon, p.C0);

    const int n = step_count(p.dt, p.horizon);
    const int workers = threads > 0
                            ? threads
                            : std::max(1u, std::thread::hardware_concurrency());

    EnsembleResult res;
    res.member_count = members;
    res.seed = noise.seed;
    res.t.resize(n + 1);
    for (int i = 0; i <= n; ++i) res.t[i] = i * p.dt;
    for (auto* band : {&res.eta, &res.wealth}) {
        band->q5.assign(n + 1, 0.0);
        band->q25.assign(n + 1, 0.0);
        band->q50.assign(n + 1, 0.0);
        band->q75.assign(n + 1, 0.0);
        band->q95.assign(n + 1, 0.0);
    }
    res.eta_deterministic.assign(n + 1, -kInf);
    res.wealth_deterministic.assign(n + 1, -kInf);

    const Trajectory det = integrate_fiscal(p);
    for (std::size_t i = 0; i < det.points.size(); ++i) {
        res.eta_deterministic[i] = det.points[i].eta;
        res.wealth_deterministic[i] = det.points[i].C;
    }

    std::vector<double> etas(members, p.eta0);
    std::vector<double> lnCs(members, 0.0);
    std::vector<std::uint8_t> dead(members, 0);

    auto fill_row = [&](QuantileBand& band, int idx, const std::vector<double>& sorted) {
        band.q5[idx] = nearest_rank_quantile(sorted, 5.0);
        band.q25[idx] = nearest_rank_quantile(sorted, 25.0);
        band.q50[idx] = nearest_rank_quantile(sorted, 50.0);
        band.q75[idx] = nearest_rank_quantile(sorted, 75.0);
        band.q95[idx] = nearest_rank_quantile(sorted, 95.0);
    };

    {
        std::vector<double> row(members, p.eta0);
        fill_row(res.eta, 0, row);
        row.assign(members, p.C0);
        fill_row(res.wealth, 0, row);
    }

    const double step_sigma = noise.sigma * std::sqrt(p.dt);
    const int chunk = 256;
    std::vector<double> ebuf(static_cast<std::size_t>(chunk) * members);
    std::vector<double> cbuf(static_cast<std::size_t>(chunk) * members);

    for (int s0 = 0; s0 < n; s0 += chunk) {
        const int s1 = std::min(n, s0 + chunk);

        parallel_slices(members, workers, [&](int m0, int m1) {
            for (int m = m0; m < m1; ++m) {
                FiscalStepState st{etas[m], lnCs[m]};
                bool is_dead = dead[m] != 0;
                for (int s = s0; s < s1; ++s) {
                    if (!is_dead) {
                        st = fiscal_rk4_step(st, p.eta_tech, p.dt);
                        if (step_sigma != 0.0)
                            st.eta += step_sigma *
                                      rng::gaussian(noise.seed,
                                                    static_cast<std::uint64_t>(m),
                                                    static_cast<std::uint64_t>(s));
                        if (!std::isfinite(st.eta) ||
                            std::abs(st.eta) > p.blowup_bound)
                            is_dead = true;
                    }
                    const std::size_t at =
                        static_cast<std::size_t>(s - s0) * members + m;
                    if (is_dead) {
                        ebuf[at] = -kInf;
                        cbuf[at] = -kInf;
                    } else {
                        ebuf[at] = st.eta;
                        cbuf[at] = p.C0 * std::exp(st.lnC);
                    }
                }
                etas[m] = st.eta;
                lnCs[m] = st.lnC;
                dead[m] = is_dead ? 1 : 0;
            }
        });

        parallel_slices(s1 - s0, workers, [&](int r0, int r1) {
            std::vector<double> scratch(members);
            for (int r = r0; r < r1; ++r) {
                const auto* erow = &ebuf[static_cast<std::size_t>(r) * members];
                std::copy(erow, erow + members, scratch.begin());
                std::sort(scratch.begin(), scratch.end());
                fill_row(res.eta, s0 + r + 1, scratch);
                const auto* crow = &cbuf[static_cast<std::size_t>(r) * members];
                std::copy(crow, crow + members, scratch.begin());
                std::sort(scratch.begin(), scratch.end());
                fill_row(res.wealth, s0 + r + 1, scratch);
            }
        });
    }

    int collapsed = 0;
    for (auto flag : dead) collapsed += flag;
    res.collapse_fraction = static_cast<double>(collapsed) / members;
    return res;
}

// ============================================================
// Coupled physical simulation
// ============================================================

namespace {

struct PhysicalOde {
    // State layout: N_S, dH_R, e_S_tot, integral of a.
    using Y = std::array<double, 4>;

    const PhysicalSchedules& sched;
    const ModelConstants& c;
    double initial_D;
    double initial_delta;

    double discovery_at(double t, double a) const {
        if (sched.discovery_tracks_consumption) return a;
        return sched.discovery ? sched.discovery(t) : initial_D;
    }
    double delta_at(double t) const {
        return sched.decay_delta ? sched.decay_delta(t) : initial_delta;
    }
    double e_growth_at(double t) const {
        return sched.e_s_growth ? sched.e_s_growth(t) : 0.0;
    }
    double consumption(const Y& y) const {
        return c.alpha * c.k * std::cbrt(y[0]) * std::max(y[1], 0.0);
    }
    Y rhs(double t, const Y& y) const {
        const double a = consumption(y);
        const double D = discovery_at(t, a);
        const double delta = delta_at(t);
        return {(1.0 - delta) * a / y[2], D - a, e_growth_at(t) * y[2], a};
    }
};

PhysicalOde::Y rk4_step(const PhysicalOde& ode, double t, const PhysicalOde::Y& y,
                        double dt) {
    auto axpy = [](const PhysicalOde::Y& y0, double h, const PhysicalOde::Y& k) {
        PhysicalOde::Y r;
        for (int i = 0; i < 4; ++i) r[i] = y0[i] + h * k[i];
        return r;
    };
    const auto k1 = ode.rhs(t, y);
    const auto k2 = ode.rhs(t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
    const auto k3 = ode.rhs(t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
    const auto k4 = ode.rhs(t + dt, axpy(y, dt, k3));
    PhysicalOde::Y out;
    for (int i = 0; i < 4; ++i)
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

}  // namespace

PhysicalTrajectory integrate_physical(const PhysicalState& initial,
                                      const PhysicalSchedules& schedules,
                                      const ModelConstants& constants,
                                      double dt, double horizon) {
    if (!(initial.N_S > 0.0) || !(initial.e_S_tot > 0.0) || initial.delta_H_R < 0.0)
        throw std::invalid_argument("physical state requires N_S > 0, e_S_tot > 0, dH_R >= 0");
    if (!(dt > 0.0) || !(horizon >= dt))
        throw std::invalid_argument("physical integration needs dt > 0 and horizon >= dt");

    PhysicalOde ode{schedules, constants, initial.D, initial.delta};
    PhysicalOde::Y y{initial.N_S, initial.delta_H_R, initial.e_S_tot, 0.0};

    const int n = step_count(dt, horizon);
    PhysicalTrajectory out;
    out.points.reserve(n + 1);

    for (int i = 0; i <= n; ++i) {
        const double t = i * dt;

        PhysicalPoint pt;
        pt.t = t;
        pt.state = initial;
        pt.state.N_S = y[0];
        pt.state.delta_H_R = y[1];
        pt.state.e_S_tot = y[2];
        pt.state.delta = ode.delta_at(t);
        if (initial.nu > 0.0) pt.state.e_S = y[2] / initial.nu;

        const double a = ode.consumption(y);
        pt.state.D = ode.discovery_at(t, a);
        pt.flows = material_flows(pt.state, a, pt.state.delta * a);
        pt.eta = eta_from_physical(pt.state, constants);

        const double h = 1e-6;
        const double ddelta_dt =
            (ode.delta_at(t + h) - ode.delta_at(std::max(0.0, t - h))) /
            (t < h ? h : 2.0 * h);
        const double eta_delta = -ddelta_dt / (1.0 - pt.state.delta);
        const double eta_R_net =
            y[1] > 0.0 ? (pt.state.D - a) / y[1] : 0.0;
        pt.eta_tech = eta_delta + eta_R_net - ode.e_growth_at(t);
        pt.gdp_growing = pt.eta_tech > pt.eta;

        pt.C = wealth_trillion_from_energy(a, constants.lambda);
        pt.Y = pt.eta * pt.C;
        out.points.push_back(pt);
        if (i == n) break;

        y = rk4_step(ode, t, y, dt);
        if (y[1] <= 0.0) {
            if (!out.reserves_exhausted) {
                out.reserves_exhausted = true;
                out.exhaustion_time = (i + 1) * dt;
            }
            y[1] = 0.0;
        }
    }
    out.consumed_integral = y[3];
    return out;
}

}  // namespace thermoecon
