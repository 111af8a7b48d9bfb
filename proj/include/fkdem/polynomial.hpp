#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fkdem {

// Single term c * t^p with a real exponent. Exponents are non-negative
// everywhere except for the flagged result of a fractional derivative of a
// constant, which carries p = -alpha.
struct Monomial {
    double coefficient = 0.0;
    double exponent = 0.0;

    double eval(double t) const {
        if (!(t >= 0.0)) {
            throw std::domain_error("Monomial::eval: t must be >= 0");
        }
        if (t == 0.0) {
            if (exponent == 0.0) return coefficient;
            if (exponent > 0.0) return 0.0;
            throw std::domain_error("Monomial::eval: negative exponent at t = 0");
        }
        return coefficient * std::pow(t, exponent);
    }
};

// Finite sum of monomials with distinct non-negative exponents, kept sorted
// by exponent. Duplicate exponents are merged and zero coefficients dropped
// on construction.
class GeneralizedPolynomial {
public:
    GeneralizedPolynomial() = default;

    explicit GeneralizedPolynomial(std::vector<Monomial> terms) {
        for (const Monomial& m : terms) {
            if (!std::isfinite(m.coefficient) || !std::isfinite(m.exponent)) {
                throw std::domain_error("GeneralizedPolynomial: non-finite term");
            }
            if (m.exponent < 0.0) {
                throw std::domain_error("GeneralizedPolynomial: negative exponent");
            }
        }
        std::sort(terms.begin(), terms.end(),
                  [](const Monomial& a, const Monomial& b) { return a.exponent < b.exponent; });
        for (const Monomial& m : terms) {
            if (!terms_.empty() && terms_.back().exponent == m.exponent) {
                terms_.back().coefficient += m.coefficient;
            } else {
                terms_.push_back(m);
            }
        }
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                    [](const Monomial& m) { return m.coefficient == 0.0; }),
                     terms_.end());
    }

    const std::vector<Monomial>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    // Neumaier-compensated evaluation; t >= 0.
    double eval(double t) const {
        double sum = 0.0, comp = 0.0;
        for (const Monomial& m : terms_) {
            double v = m.eval(t);
            double s = sum + v;
            if (std::abs(sum) >= std::abs(v)) {
                comp += (sum - s) + v;
            } else {
                comp += (v - s) + sum;
            }
            sum = s;
        }
        return sum + comp;
    }

private:
    std::vector<Monomial> terms_;
};

// Uniform samples f(k * step), k = 0..values.size()-1.
struct SampledFunction {
    double step = 0.0;
    std::vector<double> values;

    SampledFunction() = default;
    SampledFunction(double step_, std::vector<double> values_)
        : step(step_), values(std::move(values_)) {
        if (!(step > 0.0) || !std::isfinite(step)) {
            throw std::domain_error("SampledFunction: step must be positive and finite");
        }
        if (values.size() < 2) {
            throw std::domain_error("SampledFunction: need at least two samples");
        }
    }
};

}  // namespace fkdem
