#pragma once

#include "graphforms/polynomial.hpp"

#include <map>
#include <vector>

namespace graphforms {

/**
 * Sparse multivariate polynomial over Q in a fixed number of variables.
 * Monomials keyed by exponent vectors; zero coefficients never stored.
 */
class MultiPoly {
public:
    explicit MultiPoly(int vars = 0) : n_(vars) {}
    static MultiPoly constant(int vars, const Rational& c);
    static MultiPoly variable(int vars, int i);
    static MultiPoly monomial(int vars, std::vector<int> exponents, const Rational& c);
    /// Injects a univariate polynomial as p(x_i).
    static MultiPoly from_univariate(int vars, int i, const Polynomial& p);

    int vars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }

    Rational evaluate(const std::vector<Rational>& point) const;
    MultiPoly partial(int i) const;

    /// Restriction to the affine line x = a t + b, as a polynomial in t.
    Polynomial compose_affine_line(const std::vector<Rational>& a,
                                   const std::vector<Rational>& b) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const { return scaled(Rational(-1)); }
    MultiPoly scaled(const Rational& s) const;

    bool operator==(const MultiPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

private:
    void add_term(const std::vector<int>& e, const Rational& c);
    int n_;
    std::map<std::vector<int>, Rational> terms_;
};

}  // namespace graphforms
