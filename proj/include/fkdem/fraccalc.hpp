#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fkdem/polynomial.hpp"
#include "fkdem/specfun.hpp"

namespace fkdem {

namespace detail {

// Gamma(p) / Gamma(q) for p, q > 0, routed through log space when either
// argument would overflow the direct evaluation.
inline double gamma_ratio(double p, double q) {
    if (p < 170.0 && q < 170.0) {
        return gamma(p) / gamma(q);
    }
    return std::exp(log_gamma(p) - log_gamma(q));
}

}  // namespace detail

// Riemann-Liouville integral of order alpha in (0, 1] of c * t^p, p >= 0:
//   I^alpha [c t^p] = c * Gamma(p+1) / Gamma(p+alpha+1) * t^{p+alpha}.
inline Monomial rl_integral_monomial(double alpha, const Monomial& m) {
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
        throw std::domain_error("rl_integral_monomial: require alpha in (0, 1]");
    }
    if (!std::isfinite(m.coefficient) || !std::isfinite(m.exponent) || m.exponent < 0.0) {
        throw std::domain_error("rl_integral_monomial: require finite term, exponent >= 0");
    }
    const double p = m.exponent;
    return Monomial{m.coefficient * detail::gamma_ratio(p + 1.0, p + alpha + 1.0), p + alpha};
}

// Termwise Riemann-Liouville integral of a generalized polynomial.
inline GeneralizedPolynomial rl_integral_poly(double alpha, const GeneralizedPolynomial& f) {
    std::vector<Monomial> out;
    out.reserve(f.size());
    for (const Monomial& m : f.terms()) {
        out.push_back(rl_integral_monomial(alpha, m));
    }
    return GeneralizedPolynomial(std::move(out));
}

// Riemann-Liouville derivative of order alpha in (0, 1) of c * t^p:
//   D^alpha [c t^p] = c * Gamma(p+1) / Gamma(p-alpha+1) * t^{p-alpha},  p > 0
//   D^alpha [c]     = c / Gamma(1-alpha) * t^{-alpha}
// The constant case leaves the non-negative-exponent class; the result
// carries the negative exponent -alpha as the flag for that. Non-constant
// terms with p < alpha are rejected so every other result stays in class.
inline Monomial rl_derivative_monomial(double alpha, const Monomial& m) {
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0) {
        throw std::domain_error("rl_derivative_monomial: require alpha in (0, 1)");
    }
    if (!std::isfinite(m.coefficient) || !std::isfinite(m.exponent) || m.exponent < 0.0) {
        throw std::domain_error("rl_derivative_monomial: require finite term, exponent >= 0");
    }
    const double p = m.exponent;
    if (p == 0.0) {
        return Monomial{m.coefficient / gamma(1.0 - alpha), -alpha};
    }
    if (p < alpha) {
        throw std::domain_error("rl_derivative_monomial: exponent below alpha");
    }
    return Monomial{m.coefficient * detail::gamma_ratio(p + 1.0, p - alpha + 1.0), p - alpha};
}

// Product-trapezoid rule for I^alpha of a uniformly sampled function:
// on each step the integrand factor f is linearly interpolated and the
// weakly singular kernel integrated exactly, so piecewise-linear inputs are
// reproduced to rounding. Output sample k approximates (I^alpha f)(k h).
inline SampledFunction rl_integral_numeric(double alpha, const SampledFunction& f) {
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
        throw std::domain_error("rl_integral_numeric: require alpha in (0, 1]");
    }
    if (!(f.step > 0.0) || f.values.size() < 2) {
        throw std::domain_error("rl_integral_numeric: invalid sampling");
    }
    const std::size_t n = f.values.size();
    const double h = f.step;
    const double ha = std::pow(h, alpha);
    const double ia = 1.0 / (alpha * gamma(alpha));          // 1/Gamma(alpha+1)
    const double ia1 = 1.0 / ((alpha + 1.0) * gamma(alpha));

    std::vector<double> out(n, 0.0);
    std::vector<double> pa(n), pa1(n);                        // d^alpha, d^{alpha+1}
    for (std::size_t d = 0; d < n; ++d) {
        pa[d] = std::pow(static_cast<double>(d), alpha);
        pa1[d] = std::pow(static_cast<double>(d), alpha + 1.0);
    }
    for (std::size_t k = 1; k < n; ++k) {
        double sum = 0.0, comp = 0.0;
        auto add = [&](double v) {
            double y = sum + v;
            if (std::abs(sum) >= std::abs(v)) {
                comp += (sum - y) + v;
            } else {
                comp += (v - y) + sum;
            }
            sum = y;
        };
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t d = k - j;                       // panel [t_j, t_{j+1}]
            const double edge = ia * (pa[d] - pa[d - 1]);      // int of kernel / h^alpha
            const double slope = ia * d * (pa[d] - pa[d - 1])
                                 - ia1 * (pa1[d] - pa1[d - 1]);
            add(f.values[j] * (edge - slope));
            add(f.values[j + 1] * slope);
        }
        out[k] = ha * (sum + comp);
    }
    return SampledFunction(h, std::move(out));
}

}  // namespace fkdem
