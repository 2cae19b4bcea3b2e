#pragma once

#include "graphforms/polynomial.hpp"

#include <vector>

namespace graphforms {

/**
 * Exact piecewise polynomial on an interval [0, L].
 *
 * Breakpoints 0 = b_0 < b_1 < ... < b_m = L partition the domain; piece i
 * is a Polynomial evaluated in the *global* coordinate on [b_{i-1}, b_i].
 * Adjacent pieces agree in value and derivatives up to the smoothness
 * order K at every interior breakpoint; the constructor enforces this.
 */
class PiecewisePolynomial {
public:
    PiecewisePolynomial(Rational length, std::vector<Rational> breaks,
                        std::vector<Polynomial> pieces, int order);

    static PiecewisePolynomial constant(const Rational& length, const Rational& value, int order);
    static PiecewisePolynomial single(const Rational& length, Polynomial p, int order);

    const Rational& length() const { return length_; }
    int order() const { return order_; }
    size_t piece_count() const { return pieces_.size(); }
    const std::vector<Rational>& breakpoints() const { return breaks_; }
    const Polynomial& piece(size_t i) const { return pieces_[i]; }
    const Polynomial& first_piece() const { return pieces_.front(); }
    const Polynomial& last_piece() const { return pieces_.back(); }

    Rational evaluate(const Rational& x) const;
    /// n-th one-sided derivative at 0 (taken on the first piece).
    Rational jet_at_start(int n) const { return pieces_.front().derivative_at(Rational(0), n); }

    /// Piecewise derivative; smoothness order drops by one.
    PiecewisePolynomial derivative() const;
    /// Antiderivative with value 0 at x = 0; smoothness order rises by one.
    PiecewisePolynomial antiderivative() const;
    Rational integrate(const Rational& a, const Rational& b) const;
    Rational integrate() const { return integrate(Rational(0), length_); }

    /// g(x) = f(L - x); breakpoints mirrored, same order.
    PiecewisePolynomial reversed() const;

    /// Same function precomposed with the affine scaling of a new domain
    /// [0, L']: result(x) = f(x * L / L').
    PiecewisePolynomial rescaled_domain(const Rational& new_length) const;

    /// Restriction to [a, b], re-anchored to [0, b - a].
    PiecewisePolynomial restricted(const Rational& a, const Rational& b) const;

    /// Same data tagged with a different smoothness order (junctions revalidated).
    PiecewisePolynomial with_order(int k) const;

    /// Insert a breakpoint (no-op if already present).
    PiecewisePolynomial refined_at(const Rational& x) const;

    PiecewisePolynomial operator+(const PiecewisePolynomial& o) const;
    PiecewisePolynomial operator-(const PiecewisePolynomial& o) const;
    PiecewisePolynomial operator*(const PiecewisePolynomial& o) const;
    PiecewisePolynomial operator-() const { return scaled(Rational(-1)); }
    PiecewisePolynomial scaled(const Rational& s) const;

    bool is_zero() const;
    /// Equal as functions (compared on the common breakpoint refinement).
    bool same_function(const PiecewisePolynomial& o) const;

    /// True if all of f, f', ..., f^(K) vanish at x = 0 on the first piece.
    bool vanishes_at_start_to_order(int k) const;

private:
    size_t piece_index(const Rational& x) const;
    template <typename F>
    PiecewisePolynomial zip(const PiecewisePolynomial& o, F&& combine) const;

    Rational length_;
    std::vector<Rational> breaks_;
    std::vector<Polynomial> pieces_;
    int order_ = 0;
};

/**
 * Derivative-matching test at a common vertex sitting at parameter 0 of
 * both functions: true iff c1^n f1^(n)(0) = (-1)^n c2^n f2^(n)(0) for all
 * 0 <= n <= min(K, max degree of the first pieces). Orders beyond the max
 * degree hold automatically because both sides vanish.
 */
bool check_vertex_glue(const PiecewisePolynomial& f1, const PiecewisePolynomial& f2,
                       const Rational& c1, const Rational& c2, int order);

/**
 * Bump supported on [a, b] inside [0, L]: zero outside, c*(x-a)^(K+1)*(b-x)^(K+1)
 * inside, with c normalized so the integral over [0, L] equals target.
 * The bump and its first K derivatives vanish at a and b.
 */
PiecewisePolynomial make_bump(const Rational& length, const Rational& a, const Rational& b,
                              int order, const Rational& target_integral);

}  // namespace graphforms
