#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fkdem/specfun.hpp"

namespace fkdem {

// Signals that a requested evaluation would lose more relative accuracy
// than the stated bound of the routine allows.
class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DecayKind { Classical, FractionalHalf, FractionalAlpha };

// Elimination kernel phi with phi(0) = 1. theta is the rate per month;
// half_life is the derivation input when the model was built from one
// (theta = ln 2 / half_life), else ln 2 / theta.
struct DecayModel {
    DecayKind kind = DecayKind::Classical;
    double alpha = 1.0;
    double theta = 0.0;
    double half_life = 0.0;

    static DecayModel classical(double theta) {
        return make(DecayKind::Classical, 1.0, theta);
    }
    static DecayModel classical_from_half_life(double dv_months) {
        return from_dv(DecayKind::Classical, 1.0, dv_months);
    }
    static DecayModel half_order(double theta) {
        return make(DecayKind::FractionalHalf, 0.5, theta);
    }
    static DecayModel half_order_from_half_life(double dv_months) {
        return from_dv(DecayKind::FractionalHalf, 0.5, dv_months);
    }
    static DecayModel fractional(double alpha, double theta) {
        if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
            throw std::domain_error("DecayModel: require alpha in (0, 1]");
        }
        return make(DecayKind::FractionalAlpha, alpha, theta);
    }
    static DecayModel fractional_from_half_life(double alpha, double dv_months) {
        if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
            throw std::domain_error("DecayModel: require alpha in (0, 1]");
        }
        return from_dv(DecayKind::FractionalAlpha, alpha, dv_months);
    }

private:
    static DecayModel make(DecayKind k, double a, double theta) {
        if (!std::isfinite(theta) || theta <= 0.0) {
            throw std::domain_error("DecayModel: require theta > 0");
        }
        return DecayModel{k, a, theta, 0.6931471805599453094 / theta};
    }
    static DecayModel from_dv(DecayKind k, double a, double dv) {
        if (!std::isfinite(dv) || dv <= 0.0) {
            throw std::domain_error("DecayModel: require half-life > 0");
        }
        return DecayModel{k, a, 0.6931471805599453094 / dv, dv};
    }
};

// First-order kernel exp(-theta t).
inline double classical_decay(double theta, double t) {
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw std::domain_error("classical_decay: require theta > 0");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::domain_error("classical_decay: require t >= 0");
    }
    return std::exp(-theta * t);
}

// Half-order kernel by its explicit series,
//   phi(t) = e^{y} - (4 theta sqrt(t) / sqrt(pi)) * S_N(y),  y = theta^2 t,
//   S_N(y) = sum_{n=0}^{N-1} T_n,  T_0 = 1/2,  T_{n+1} = T_n * 2y / (2n+3).
// The two pieces cancel as t grows. The evaluation is rejected once the
// combined rounding floor eps * e^y and geometric truncation tail exceed
// 1e-6 of the result, and the domain is capped at y = 25 where even exact
// arithmetic loses the value entirely.
inline double half_order_decay_series(double theta, double t, int n_terms = 40) {
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw std::domain_error("half_order_decay_series: require theta > 0");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::domain_error("half_order_decay_series: require t >= 0");
    }
    if (n_terms < 1) {
        throw std::domain_error("half_order_decay_series: require n_terms >= 1");
    }
    const double y = theta * theta * t;
    if (y > 25.0) {
        throw std::domain_error("half_order_decay_series: theta^2 t beyond 25");
    }
    const double expy = std::exp(y);
    double term = 0.5;
    double sum = 0.0, comp = 0.0;
    for (int n = 0; n < n_terms; ++n) {
        const double s = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - s) + term;
        } else {
            comp += (term - s) + sum;
        }
        sum = s;
        term *= 2.0 * y / (2.0 * n + 3.0);
    }
    const double pref = 4.0 * theta * std::sqrt(t) * 0.56418958354775628695;
    const double phi = expy - pref * (sum + comp);
    // term now holds the first omitted element; past the growth peak the
    // tail is bounded by a geometric series
    const double ratio = 2.0 * y / (2.0 * n_terms + 3.0);
    const double tail = ratio < 1.0 ? pref * term / (1.0 - ratio)
                                    : std::numeric_limits<double>::infinity();
    const double err = (std::numeric_limits<double>::epsilon() * expy + tail)
        / std::max(std::abs(phi), std::numeric_limits<double>::min());
    if (err > 1e-6) {
        throw precision_error("half_order_decay_series: error bound exceeds 1e-6 at y = "
                              + std::to_string(y));
    }
    return phi;
}

// Half-order kernel in closed form, exp(theta^2 t) erfc(theta sqrt(t)),
// evaluated through the scaled complement so it is stable for all t.
inline double half_order_decay(double theta, double t) {
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw std::domain_error("half_order_decay: require theta > 0");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::domain_error("half_order_decay: require t >= 0");
    }
    return erfcx(theta * std::sqrt(t));
}

// Kernel of the model's variant at elapsed time t.
inline double alpha_decay(const DecayModel& model, double t) {
    switch (model.kind) {
        case DecayKind::Classical:
            return classical_decay(model.theta, t);
        case DecayKind::FractionalHalf:
            return half_order_decay(model.theta, t);
        case DecayKind::FractionalAlpha:
        default:
            if (!(t >= 0.0) || !std::isfinite(t)) {
                throw std::domain_error("alpha_decay: require t >= 0");
            }
            return mittag_leffler(model.alpha, -model.theta * std::pow(t, model.alpha));
    }
}

// Unique positive time where the half-order and classical kernels of the
// same theta cross: the half-order curve lies below before it and above
// after it. Bisection to near machine width; the bracket expands upward
// from t = 1 until the difference turns positive.
inline double crossover_time(double theta) {
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw std::domain_error("crossover_time: require theta > 0");
    }
    auto diff = [theta](double t) {
        return half_order_decay(theta, t) - classical_decay(theta, t);
    };
    double lo = std::numeric_limits<double>::min();
    double hi = 1.0;
    int guard = 0;
    while (diff(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 90) {
            throw std::runtime_error("crossover_time: bracketing failed");
        }
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (diff(mid) <= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace fkdem
