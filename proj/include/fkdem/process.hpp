#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fkdem/decay.hpp"
#include "fkdem/rng.hpp"

namespace fkdem {

// Raised when a simulation reaches a state outside the model's validity
// (distinct from bad inputs, which raise std::domain_error).
class model_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A contaminant with its elimination behaviour. alpha = 1 selects the
// classical kernel, alpha = 1/2 the half-order closed form, anything else
// the general fractional kernel.
struct ContaminantSpec {
    std::string name;
    double theta = 0.0;        // per month
    double half_life = 0.0;    // months
    double alpha = 1.0;
    double initial_burden = 0.0;

    static ContaminantSpec from_theta(std::string name, double theta, double alpha,
                                      double initial_burden) {
        ContaminantSpec s;
        s.name = std::move(name);
        s.theta = theta;
        s.alpha = alpha;
        s.initial_burden = initial_burden;
        s.half_life = 0.6931471805599453094 / theta;
        s.validate();
        return s;
    }

    static ContaminantSpec from_half_life(std::string name, double dv_months, double alpha,
                                          double initial_burden) {
        if (!std::isfinite(dv_months) || dv_months <= 0.0) {
            throw std::domain_error("ContaminantSpec: require half-life > 0");
        }
        ContaminantSpec s;
        s.name = std::move(name);
        s.half_life = dv_months;
        s.theta = 0.6931471805599453094 / dv_months;
        s.alpha = alpha;
        s.initial_burden = initial_burden;
        s.validate();
        return s;
    }

    DecayModel decay_model() const {
        if (alpha == 1.0) return DecayModel::classical(theta);
        if (alpha == 0.5) return DecayModel::half_order(theta);
        return DecayModel::fractional(alpha, theta);
    }

    void validate() const {
        if (!std::isfinite(theta) || theta <= 0.0) {
            throw std::domain_error("ContaminantSpec: require theta > 0");
        }
        if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
            throw std::domain_error("ContaminantSpec: require alpha in (0, 1]");
        }
        if (!std::isfinite(initial_burden) || initial_burden < 0.0) {
            throw std::domain_error("ContaminantSpec: require initial burden >= 0");
        }
    }
};

// One surveyed food item: contamination level q (per kg of food) and
// consumption c (kg per intake event).
struct FoodRecord {
    std::string product;
    double contamination_q = 0.0;
    double consumption_c = 0.0;
};

// Exposure per intake event and unit body weight, sum(q_i c_i) / bw.
inline double compute_exposure(const std::vector<FoodRecord>& records, double body_weight) {
    if (!std::isfinite(body_weight) || body_weight <= 0.0) {
        throw std::domain_error("compute_exposure: require body weight > 0");
    }
    double sum = 0.0, comp = 0.0;
    for (const FoodRecord& r : records) {
        if (!std::isfinite(r.contamination_q) || r.contamination_q < 0.0
            || !std::isfinite(r.consumption_c) || r.consumption_c < 0.0) {
            throw std::domain_error("compute_exposure: require non-negative records");
        }
        const double v = r.contamination_q * r.consumption_c;
        const double y = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - y) + v;
        } else {
            comp += (v - y) + sum;
        }
        sum = y;
    }
    return (sum + comp) / body_weight;
}

struct IntakeEvent {
    double time = 0.0;      // months
    double exposure = 0.0;  // burden added at that instant
};

enum class ExposureModel { Constant, Uniform, Exponential };

// Either an explicit event list or a generative model (fixed gaps, iid
// exposures drawn from the substream of `seed`).
class IntakeSchedule {
public:
    static IntakeSchedule from_events(std::vector<IntakeEvent> events) {
        double last = -1.0;
        for (const IntakeEvent& e : events) {
            if (!std::isfinite(e.time) || e.time < 0.0 || e.time <= last) {
                throw std::domain_error(
                    "IntakeSchedule: event times must be non-negative and strictly increasing");
            }
            if (!std::isfinite(e.exposure) || e.exposure < 0.0) {
                throw std::domain_error("IntakeSchedule: exposures must be >= 0");
            }
            last = e.time;
        }
        IntakeSchedule s;
        s.events_ = std::move(events);
        s.generative_ = false;
        return s;
    }

    static IntakeSchedule generative(double gap_months, ExposureModel model,
                                     double exposure_mean, std::uint64_t seed) {
        if (!std::isfinite(gap_months) || gap_months <= 0.0) {
            throw std::domain_error("IntakeSchedule: require gap > 0");
        }
        if (!std::isfinite(exposure_mean) || exposure_mean < 0.0) {
            throw std::domain_error("IntakeSchedule: require exposure mean >= 0");
        }
        IntakeSchedule s;
        s.generative_ = true;
        s.gap_ = gap_months;
        s.model_ = model;
        s.mean_ = exposure_mean;
        s.seed_ = seed;
        return s;
    }

    bool is_generative() const { return generative_; }
    std::uint64_t seed() const { return seed_; }
    double gap() const { return gap_; }

    IntakeSchedule with_seed(std::uint64_t seed) const {
        IntakeSchedule s = *this;
        s.seed_ = seed;
        return s;
    }

    // Events with time <= horizon, in time order. For explicit schedules
    // *ignored (when given) receives the count of events beyond the horizon.
    std::vector<IntakeEvent> realize(double horizon, std::size_t* ignored = nullptr) const {
        if (!std::isfinite(horizon) || horizon < 0.0) {
            throw std::domain_error("IntakeSchedule: require horizon >= 0");
        }
        if (ignored) *ignored = 0;
        if (!generative_) {
            std::vector<IntakeEvent> out;
            out.reserve(events_.size());
            for (const IntakeEvent& e : events_) {
                if (e.time <= horizon) {
                    out.push_back(e);
                } else if (ignored) {
                    ++*ignored;
                }
            }
            return out;
        }
        std::vector<IntakeEvent> out;
        SplitMix64 rng(seed_);
        for (std::size_t i = 1;; ++i) {
            const double t = static_cast<double>(i) * gap_;
            if (t > horizon) break;
            double e = mean_;
            switch (model_) {
                case ExposureModel::Constant:
                    break;
                case ExposureModel::Uniform:
                    e = 2.0 * mean_ * rng.uniform01();
                    break;
                case ExposureModel::Exponential:
                    e = rng.exponential(mean_);
                    break;
            }
            out.push_back(IntakeEvent{t, e});
        }
        return out;
    }

private:
    bool generative_ = false;
    std::vector<IntakeEvent> events_;
    double gap_ = 0.0;
    ExposureModel model_ = ExposureModel::Constant;
    double mean_ = 0.0;
    std::uint64_t seed_ = 0;
};

// Burden immediately before and after one intake instant.
struct IntakeRecord {
    double time = 0.0;
    double before = 0.0;
    double after = 0.0;
};

// Body-burden path: a uniform sample grid plus the exact jump records.
// Sample points that coincide with an intake instant carry the post-intake
// value.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> burdens;
    std::vector<IntakeRecord> intakes;
    std::size_t ignored_events = 0;
};

// Piecewise-kernel evolution: between intakes the burden decays by the
// contaminant's kernel with the clock restarted at the last intake
// (X(T_i + dt) = X_i phi(dt)), and at each intake the exposure adds on.
inline Trajectory simulate_univariate(const ContaminantSpec& spec,
                                      const IntakeSchedule& schedule,
                                      double horizon, double sample_step) {
    spec.validate();
    if (!std::isfinite(horizon) || horizon <= 0.0) {
        throw std::domain_error("simulate_univariate: require horizon > 0");
    }
    if (!std::isfinite(sample_step) || sample_step <= 0.0) {
        throw std::domain_error("simulate_univariate: require sample step > 0");
    }
    const DecayModel model = spec.decay_model();

    Trajectory traj;
    std::vector<IntakeEvent> events = schedule.realize(horizon, &traj.ignored_events);

    // jump records and post-intake states
    traj.intakes.reserve(events.size());
    double state = spec.initial_burden;   // value at and just after anchor
    double anchor = 0.0;
    if (!events.empty() && events.front().time == 0.0) {
        traj.intakes.push_back(IntakeRecord{0.0, state, state + events.front().exposure});
        state += events.front().exposure;
    }
    std::vector<double> seg_start{anchor};
    std::vector<double> seg_state{state};
    for (const IntakeEvent& e : events) {
        if (e.time == 0.0) continue;
        const double before = state * alpha_decay(model, e.time - anchor);
        const double after = before + e.exposure;
        traj.intakes.push_back(IntakeRecord{e.time, before, after});
        state = after;
        anchor = e.time;
        seg_start.push_back(anchor);
        seg_state.push_back(state);
    }

    const auto n_samples =
        static_cast<std::size_t>(std::floor(horizon / sample_step * (1.0 + 1e-12))) + 1;
    traj.times.reserve(n_samples);
    traj.burdens.reserve(n_samples);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double t = static_cast<double>(k) * sample_step;
        while (seg + 1 < seg_start.size() && seg_start[seg + 1] <= t) ++seg;
        traj.times.push_back(t);
        traj.burdens.push_back(seg_state[seg] * alpha_decay(model, t - seg_start[seg]));
    }
    return traj;
}

// Earliest time the burden strictly exceeds the threshold, scanning the
// sample grid and both sides of every jump record; empty when the path
// stays at or below it.
inline std::optional<double> first_exceedance(const Trajectory& traj, double threshold) {
    if (std::isnan(threshold)) {
        throw std::domain_error("first_exceedance: threshold must not be NaN");
    }
    std::optional<double> best;
    auto consider = [&](double t, double v) {
        if (v > threshold && (!best || t < *best)) best = t;
    };
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        consider(traj.times[k], traj.burdens[k]);
    }
    for (const IntakeRecord& r : traj.intakes) {
        consider(r.time, r.before);
        consider(r.time, r.after);
    }
    return best;
}

// Off-diagonal transfer coefficients of the three-contaminant step map.
struct Couplings {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0, f = 0.0;

    void validate() const {
        for (double v : {a, b, c, d, e, f}) {
            if (!std::isfinite(v)) {
                throw std::domain_error("Couplings: require finite entries");
            }
        }
    }
};

// One-step transition of the coupled system, row-vector convention
// X_i = X_{i-1} P + E_i:
//   P = | phi1  a    b   |
//       | c     phi2 d   |
//       | e     f    phi3|
// Diagonals are the contaminants' own kernels over the step; off-diagonals
// are the couplings. Couplings are accepted as any finite reals; burdens
// can then leave the model's validity, which the simulation reports.
struct TransitionMatrix {
    std::array<std::array<double, 3>, 3> p{};

    static TransitionMatrix build(const std::array<ContaminantSpec, 3>& specs,
                                  const Couplings& k, double step_months) {
        if (!std::isfinite(step_months) || step_months <= 0.0) {
            throw std::domain_error("TransitionMatrix: require step > 0");
        }
        k.validate();
        TransitionMatrix m;
        for (int i = 0; i < 3; ++i) {
            specs[i].validate();
            m.p[i][i] = alpha_decay(specs[i].decay_model(), step_months);
        }
        m.p[0][1] = k.a;
        m.p[0][2] = k.b;
        m.p[1][0] = k.c;
        m.p[1][2] = k.d;
        m.p[2][0] = k.e;
        m.p[2][1] = k.f;
        return m;
    }
};

// Coupled three-contaminant recursion over n_steps fixed steps. Intake
// events of each schedule are folded into the step whose window
// ((i-1)h, ih] contains them; events at time zero add to the initial
// burdens. A negative component is outside the model and raises
// model_error naming the step.
inline std::array<Trajectory, 3> simulate_multivariate(
    const std::array<ContaminantSpec, 3>& specs, const Couplings& couplings,
    const std::array<IntakeSchedule, 3>& schedules, double step_months, int n_steps) {
    if (n_steps < 1) {
        throw std::domain_error("simulate_multivariate: require n_steps >= 1");
    }
    const TransitionMatrix tm = TransitionMatrix::build(specs, couplings, step_months);
    const double horizon = n_steps * step_months;

    std::array<std::vector<double>, 3> bucket;
    std::array<double, 3> state{};
    std::array<Trajectory, 3> out;
    for (int j = 0; j < 3; ++j) {
        state[j] = specs[j].initial_burden;
        bucket[j].assign(static_cast<std::size_t>(n_steps) + 1, 0.0);
        for (const IntakeEvent& e :
             schedules[j].realize(horizon, &out[j].ignored_events)) {
            auto idx = static_cast<std::size_t>(std::ceil(e.time / step_months - 1e-9));
            if (idx > static_cast<std::size_t>(n_steps)) idx = n_steps;
            bucket[j][idx] += e.exposure;
        }
        state[j] += bucket[j][0];
        out[j].times.reserve(static_cast<std::size_t>(n_steps) + 1);
        out[j].burdens.reserve(static_cast<std::size_t>(n_steps) + 1);
        out[j].times.push_back(0.0);
        out[j].burdens.push_back(state[j]);
    }

    for (int i = 1; i <= n_steps; ++i) {
        std::array<double, 3> next{};
        for (int col = 0; col < 3; ++col) {
            next[col] = state[0] * tm.p[0][col] + state[1] * tm.p[1][col]
                        + state[2] * tm.p[2][col];
        }
        const double t = i * step_months;
        for (int j = 0; j < 3; ++j) {
            const double after = next[j] + bucket[j][i];
            if (after < 0.0 || next[j] < 0.0) {
                throw model_error("simulate_multivariate: negative burden for "
                                  + specs[j].name + " at step " + std::to_string(i));
            }
            out[j].intakes.push_back(IntakeRecord{t, next[j], after});
            out[j].times.push_back(t);
            out[j].burdens.push_back(after);
            next[j] = after;
        }
        state = next;
    }
    return out;
}

// Point summaries of a replicated univariate simulation on its sample grid.
struct MonteCarloSummary {
    std::vector<double> times;
    std::vector<double> mean;
    std::vector<double> p05;
    std::vector<double> p50;
    std::vector<double> p95;
    double exceedance_probability = 0.0;
    std::size_t n_replicates = 0;
};

namespace detail {

// Linear interpolation between order statistics of sorted data.
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace detail

// Repeats simulate_univariate over independent exposure substreams
// (replicate r uses the substream keyed by (schedule seed, r)) and reduces
// the stored paths in replicate order. The reduction is independent of
// n_workers, so summaries are identical for any worker count.
inline MonteCarloSummary monte_carlo(const ContaminantSpec& spec,
                                     const IntakeSchedule& schedule, double horizon,
                                     double sample_step, int n_replicates,
                                     double threshold, int n_workers = 1) {
    if (n_replicates < 1) {
        throw std::domain_error("monte_carlo: require n_replicates >= 1");
    }
    if (n_workers < 1) {
        throw std::domain_error("monte_carlo: require n_workers >= 1");
    }
    if (std::isnan(threshold)) {
        throw std::domain_error("monte_carlo: threshold must not be NaN");
    }

    const auto n = static_cast<std::size_t>(n_replicates);
    std::vector<std::vector<double>> paths(n);
    std::vector<char> exceeded(n, 0);
    std::vector<double> times;

    auto run_block = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            const IntakeSchedule sub = schedule.is_generative()
                ? schedule.with_seed(substream_seed(schedule.seed(), r))
                : schedule;
            Trajectory traj = simulate_univariate(spec, sub, horizon, sample_step);
            exceeded[r] = first_exceedance(traj, threshold).has_value() ? 1 : 0;
            paths[r] = std::move(traj.burdens);
            if (r == 0) times = std::move(traj.times);
        }
    };

    if (n_workers == 1 || n < 2) {
        run_block(0, n);
    } else {
        const auto workers = std::min<std::size_t>(n_workers, n);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_block, lo, hi);
        }
        for (std::thread& th : pool) th.join();
    }

    MonteCarloSummary s;
    s.times = std::move(times);
    s.n_replicates = n;
    const std::size_t grid = s.times.size();
    s.mean.resize(grid);
    s.p05.resize(grid);
    s.p50.resize(grid);
    s.p95.resize(grid);
    std::vector<double> column(n);
    for (std::size_t k = 0; k < grid; ++k) {
        double sum = 0.0, comp = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double v = paths[r][k];
            column[r] = v;
            const double y = sum + v;
            if (std::abs(sum) >= std::abs(v)) {
                comp += (sum - y) + v;
            } else {
                comp += (v - y) + sum;
            }
            sum = y;
        }
        s.mean[k] = (sum + comp) / static_cast<double>(n);
        std::sort(column.begin(), column.end());
        s.p05[k] = detail::quantile_sorted(column, 0.05);
        s.p50[k] = detail::quantile_sorted(column, 0.50);
        s.p95[k] = detail::quantile_sorted(column, 0.95);
    }
    std::size_t count = 0;
    for (char e : exceeded) count += e;
    s.exceedance_probability = static_cast<double>(count) / static_cast<double>(n);
    return s;
}

}  // namespace fkdem
