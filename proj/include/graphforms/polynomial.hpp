#pragma once

#include "graphforms/rational.hpp"

#include <vector>

namespace graphforms {

/**
 * Dense univariate polynomial over Q, coefficients in ascending degree.
 * Canonical form: no trailing zero coefficients; the zero polynomial is
 * the empty list.
 */
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial constant(const Rational& v) {
        return v == 0 ? Polynomial() : Polynomial({v});
    }
    /// The monomial c * x^k.
    static Polynomial monomial(const Rational& c, int k);

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_constant() const { return c_.size() <= 1; }

    Rational coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rational(0);
    }

    Rational evaluate(const Rational& x) const;
    /// n-th derivative evaluated at x (0 for n beyond the degree).
    Rational derivative_at(const Rational& x, int n) const;

    Polynomial derivative() const;
    /// Antiderivative with value 0 at x = 0.
    Polynomial antiderivative() const;
    Rational integrate(const Rational& a, const Rational& b) const;

    /// p(alpha*x + beta).
    Polynomial compose_affine(const Rational& alpha, const Rational& beta) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(const Rational& s) const;

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

}  // namespace graphforms
