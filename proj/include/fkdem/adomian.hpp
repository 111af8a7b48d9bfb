#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "fkdem/fraccalc.hpp"
#include "fkdem/polynomial.hpp"
#include "fkdem/specfun.hpp"

namespace fkdem {

// Decomposition series for the relaxation problem of order alpha with rate
// theta and initial value kappa. terms[n] = (-theta)^n kappa t^{n alpha} /
// Gamma(n alpha + 1); effective_order is the number of terms actually held
// (generation stops early once a coefficient underflows to zero).
struct AdmSeries {
    double alpha = 1.0;
    double theta = 0.0;
    double kappa = 0.0;
    std::vector<Monomial> terms;
    std::size_t effective_order = 0;
};

// nth series term in closed form.
inline Monomial adm_closed_form_term(int n, double alpha, double theta, double kappa) {
    if (n < 0) {
        throw std::domain_error("adm_closed_form_term: require n >= 0");
    }
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
        throw std::domain_error("adm_closed_form_term: require alpha in (0, 1]");
    }
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw std::domain_error("adm_closed_form_term: require theta > 0");
    }
    if (!std::isfinite(kappa) || kappa < 0.0) {
        throw std::domain_error("adm_closed_form_term: require kappa >= 0");
    }
    const double na = n * alpha;
    double coeff;
    if (na + 1.0 < 170.0) {
        coeff = kappa * std::pow(theta, n) / gamma(na + 1.0);
    } else {
        coeff = kappa * std::exp(n * std::log(theta) - log_gamma(na + 1.0));
    }
    if (n % 2 == 1) coeff = -coeff;
    return Monomial{coeff, na};
}

// Generates terms by the recursion X_0 = kappa, X_{n+1} = -theta I^alpha X_n.
// Exponents are snapped to n * alpha so they agree bitwise with the closed
// form instead of accumulating n rounded additions of alpha.
inline AdmSeries adm_generate_terms(double alpha, double theta, double kappa,
                                    int n_terms = 30) {
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
        throw std::domain_error("adm_generate_terms: require alpha in (0, 1]");
    }
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw std::domain_error("adm_generate_terms: require theta > 0");
    }
    if (!std::isfinite(kappa) || kappa < 0.0) {
        throw std::domain_error("adm_generate_terms: require kappa >= 0");
    }
    if (n_terms < 1) {
        throw std::domain_error("adm_generate_terms: require n_terms >= 1");
    }
    AdmSeries s;
    s.alpha = alpha;
    s.theta = theta;
    s.kappa = kappa;
    s.terms.reserve(static_cast<std::size_t>(n_terms));
    s.terms.push_back(Monomial{kappa, 0.0});
    for (int n = 1; n < n_terms; ++n) {
        Monomial next = rl_integral_monomial(alpha, s.terms.back());
        next.coefficient *= -theta;
        next.exponent = n * alpha;
        if (next.coefficient == 0.0) break;
        s.terms.push_back(next);
    }
    s.effective_order = s.terms.size();
    return s;
}

// Partial sum of the series at a time point, compensated accumulation.
inline double adm_partial_sum(const AdmSeries& s, double t) {
    if (!(t >= 0.0)) {
        throw std::domain_error("adm_partial_sum: require t >= 0");
    }
    double sum = 0.0, comp = 0.0;
    for (const Monomial& m : s.terms) {
        const double v = m.eval(t);
        const double y = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - y) + v;
        } else {
            comp += (v - y) + sum;
        }
        sum = y;
    }
    return sum + comp;
}

// Coefficients c_0..c_{N-1} of a truncated decomposition u = sum u_n.
using CoefficientSeries = std::vector<double>;

// Adomian polynomials of the power nonlinearity N(u) = u^m by direct
// truncated powering: A_n is the coefficient of the nth order in
// (u_0 + u_1 + ... + u_{N-1})^m with u_k carrying order k.
inline CoefficientSeries adomian_polynomials_power(int m, const CoefficientSeries& u) {
    if (m < 1) {
        throw std::domain_error("adomian_polynomials_power: require m >= 1");
    }
    if (u.empty()) {
        throw std::domain_error("adomian_polynomials_power: require terms");
    }
    const std::size_t n = u.size();
    CoefficientSeries acc = u;
    for (int pw = 1; pw < m; ++pw) {
        CoefficientSeries next(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (acc[i] == 0.0) continue;
            for (std::size_t j = 0; j + i < n; ++j) {
                next[i + j] += acc[i] * u[j];
            }
        }
        acc = std::move(next);
    }
    return acc;
}

// Same polynomials by the differential recurrence
//   A_{n+1} = 1/(n+1) * sum_k (k+1) u_{k+1} dA_n/du_k,
// carried out on an exact symbolic multinomial representation (exponent
// vectors over u_0..u_{N-1} mapped to rational-valued coefficients) and
// evaluated at the numeric u afterwards.
inline CoefficientSeries adomian_polynomials_recurrence(int m, const CoefficientSeries& u) {
    if (m < 1) {
        throw std::domain_error("adomian_polynomials_recurrence: require m >= 1");
    }
    if (u.empty()) {
        throw std::domain_error("adomian_polynomials_recurrence: require terms");
    }
    const std::size_t n = u.size();
    using Multinomial = std::map<std::vector<int>, double>;

    auto eval = [&](const Multinomial& poly) {
        double sum = 0.0;
        for (const auto& [exps, c] : poly) {
            double v = c;
            for (std::size_t k = 0; k < n; ++k) {
                for (int e = 0; e < exps[k]; ++e) v *= u[k];
            }
            sum += v;
        }
        return sum;
    };

    CoefficientSeries out(n, 0.0);
    Multinomial cur;
    std::vector<int> e0(n, 0);
    e0[0] = m;
    cur[e0] = 1.0;                                  // A_0 = u_0^m
    out[0] = eval(cur);
    for (std::size_t step = 1; step < n; ++step) {
        Multinomial next;
        for (const auto& [exps, c] : cur) {
            for (std::size_t k = 0; k + 1 < n; ++k) {
                if (exps[k] == 0) continue;
                std::vector<int> d = exps;          // u_{k+1} * d/du_k
                d[k] -= 1;
                d[k + 1] += 1;
                next[d] += c * exps[k] * static_cast<double>(k + 1)
                           / static_cast<double>(step);
            }
        }
        cur = std::move(next);
        out[step] = eval(cur);
    }
    return out;
}

}  // namespace fkdem
