#include "graphforms/piecewise.hpp"

#include <algorithm>

namespace graphforms {

PiecewisePolynomial::PiecewisePolynomial(Rational length, std::vector<Rational> breaks,
                                         std::vector<Polynomial> pieces, int order)
    : length_(std::move(length)), breaks_(std::move(breaks)), pieces_(std::move(pieces)),
      order_(order) {
    if (length_ <= 0) throw std::invalid_argument("piecewise: nonpositive domain length");
    if (order_ < 0) throw std::invalid_argument("piecewise: negative smoothness order");
    if (pieces_.empty() || breaks_.size() != pieces_.size() + 1)
        throw std::invalid_argument("piecewise: breakpoint/piece count mismatch");
    if (breaks_.front() != 0 || breaks_.back() != length_)
        throw std::invalid_argument("piecewise: breakpoints must span [0, L]");
    for (size_t i = 0; i + 1 < breaks_.size(); ++i)
        if (!(breaks_[i] < breaks_[i + 1]))
            throw std::invalid_argument("piecewise: breakpoints not strictly increasing");
    for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
        const Rational& b = breaks_[i + 1];
        for (int n = 0; n <= order_; ++n)
            if (pieces_[i].derivative_at(b, n) != pieces_[i + 1].derivative_at(b, n))
                throw std::invalid_argument("piecewise: junction not C^" + std::to_string(order_) +
                                            " at x=" + b.str());
    }
}

PiecewisePolynomial PiecewisePolynomial::constant(const Rational& length, const Rational& value,
                                                  int order) {
    return single(length, Polynomial::constant(value), order);
}

PiecewisePolynomial PiecewisePolynomial::single(const Rational& length, Polynomial p, int order) {
    return PiecewisePolynomial(length, {Rational(0), length}, {std::move(p)}, order);
}

size_t PiecewisePolynomial::piece_index(const Rational& x) const {
    if (x < 0 || x > length_)
        throw std::invalid_argument("piecewise: argument " + x.str() + " outside [0, " +
                                    length_.str() + "]");
    // Governing piece: the one whose half-open interval [b_{i-1}, b_i) contains x,
    // except x = L which belongs to the last piece. Junction values agree anyway.
    size_t lo = 0;
    while (lo + 1 < pieces_.size() && x >= breaks_[lo + 1]) ++lo;
    return lo;
}

Rational PiecewisePolynomial::evaluate(const Rational& x) const {
    return pieces_[piece_index(x)].evaluate(x);
}

PiecewisePolynomial PiecewisePolynomial::derivative() const {
    if (order_ == 0) throw std::invalid_argument("piecewise: not differentiable (order 0)");
    std::vector<Polynomial> d;
    d.reserve(pieces_.size());
    for (const auto& p : pieces_) d.push_back(p.derivative());
    return PiecewisePolynomial(length_, breaks_, std::move(d), order_ - 1);
}

PiecewisePolynomial PiecewisePolynomial::antiderivative() const {
    std::vector<Polynomial> a;
    a.reserve(pieces_.size());
    Rational running(0);  // value accumulated at the left end of the current piece
    for (size_t i = 0; i < pieces_.size(); ++i) {
        Polynomial F = pieces_[i].antiderivative();
        Polynomial shifted = F + Polynomial::constant(running - F.evaluate(breaks_[i]));
        running = shifted.evaluate(breaks_[i + 1]);
        a.push_back(std::move(shifted));
    }
    return PiecewisePolynomial(length_, breaks_, std::move(a), order_ + 1);
}

Rational PiecewisePolynomial::integrate(const Rational& a, const Rational& b) const {
    if (a > b) throw std::invalid_argument("piecewise: integration bounds out of order");
    if (a < 0 || b > length_) throw std::invalid_argument("piecewise: integration bounds outside domain");
    if (a == b) return Rational(0);
    Rational total(0);
    for (size_t i = 0; i < pieces_.size(); ++i) {
        Rational lo = std::max(a, breaks_[i]);
        Rational hi = std::min(b, breaks_[i + 1]);
        if (lo < hi) total += pieces_[i].integrate(lo, hi);
    }
    return total;
}

PiecewisePolynomial PiecewisePolynomial::reversed() const {
    std::vector<Rational> rb(breaks_.size());
    std::vector<Polynomial> rp(pieces_.size());
    for (size_t i = 0; i < breaks_.size(); ++i) rb[i] = length_ - breaks_[breaks_.size() - 1 - i];
    for (size_t i = 0; i < pieces_.size(); ++i)
        rp[i] = pieces_[pieces_.size() - 1 - i].compose_affine(Rational(-1), length_);
    return PiecewisePolynomial(length_, std::move(rb), std::move(rp), order_);
}

PiecewisePolynomial PiecewisePolynomial::rescaled_domain(const Rational& new_length) const {
    if (new_length <= 0) throw std::invalid_argument("piecewise: nonpositive rescaled length");
    Rational ratio = length_ / new_length;
    std::vector<Rational> nb(breaks_.size());
    std::vector<Polynomial> np(pieces_.size());
    for (size_t i = 0; i < breaks_.size(); ++i) nb[i] = breaks_[i] / ratio;
    for (size_t i = 0; i < pieces_.size(); ++i) np[i] = pieces_[i].compose_affine(ratio, Rational(0));
    return PiecewisePolynomial(new_length, std::move(nb), std::move(np), order_);
}

PiecewisePolynomial PiecewisePolynomial::restricted(const Rational& a, const Rational& b) const {
    if (!(a < b) || a < 0 || b > length_)
        throw std::invalid_argument("piecewise: bad restriction interval");
    std::vector<Rational> nb{Rational(0)};
    std::vector<Polynomial> np;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        Rational lo = std::max(a, breaks_[i]);
        Rational hi = std::min(b, breaks_[i + 1]);
        if (lo < hi) {
            np.push_back(pieces_[i].compose_affine(Rational(1), a));
            nb.push_back(hi - a);
        }
    }
    return PiecewisePolynomial(b - a, std::move(nb), std::move(np), order_);
}

PiecewisePolynomial PiecewisePolynomial::with_order(int k) const {
    return PiecewisePolynomial(length_, breaks_, pieces_, k);
}

PiecewisePolynomial PiecewisePolynomial::refined_at(const Rational& x) const {
    if (x <= 0 || x >= length_) return *this;
    if (std::find(breaks_.begin(), breaks_.end(), x) != breaks_.end()) return *this;
    size_t idx = piece_index(x);
    std::vector<Rational> nb(breaks_);
    std::vector<Polynomial> np(pieces_);
    nb.insert(nb.begin() + idx + 1, x);
    np.insert(np.begin() + idx, pieces_[idx]);
    return PiecewisePolynomial(length_, std::move(nb), std::move(np), order_);
}

template <typename F>
PiecewisePolynomial PiecewisePolynomial::zip(const PiecewisePolynomial& o, F&& combine) const {
    if (length_ != o.length_)
        throw std::invalid_argument("piecewise: domain length mismatch in arithmetic");
    std::vector<Rational> nb(breaks_);
    nb.insert(nb.end(), o.breaks_.begin(), o.breaks_.end());
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    std::vector<Polynomial> np;
    np.reserve(nb.size() - 1);
    for (size_t i = 0; i + 1 < nb.size(); ++i) {
        Rational mid = (nb[i] + nb[i + 1]) / 2;
        np.push_back(combine(pieces_[piece_index(mid)], o.pieces_[o.piece_index(mid)]));
    }
    return PiecewisePolynomial(length_, std::move(nb), std::move(np), std::min(order_, o.order_));
}

PiecewisePolynomial PiecewisePolynomial::operator+(const PiecewisePolynomial& o) const {
    return zip(o, [](const Polynomial& a, const Polynomial& b) { return a + b; });
}

PiecewisePolynomial PiecewisePolynomial::operator-(const PiecewisePolynomial& o) const {
    return zip(o, [](const Polynomial& a, const Polynomial& b) { return a - b; });
}

PiecewisePolynomial PiecewisePolynomial::operator*(const PiecewisePolynomial& o) const {
    return zip(o, [](const Polynomial& a, const Polynomial& b) { return a * b; });
}

PiecewisePolynomial PiecewisePolynomial::scaled(const Rational& s) const {
    std::vector<Polynomial> np;
    np.reserve(pieces_.size());
    for (const auto& p : pieces_) np.push_back(p.scaled(s));
    return PiecewisePolynomial(length_, breaks_, std::move(np), order_);
}

bool PiecewisePolynomial::is_zero() const {
    return std::all_of(pieces_.begin(), pieces_.end(),
                       [](const Polynomial& p) { return p.is_zero(); });
}

bool PiecewisePolynomial::same_function(const PiecewisePolynomial& o) const {
    if (length_ != o.length_) return false;
    return (*this - o).is_zero();
}

bool PiecewisePolynomial::vanishes_at_start_to_order(int k) const {
    for (int n = 0; n <= std::min(k, pieces_.front().degree()); ++n)
        if (jet_at_start(n) != 0) return false;
    return true;
}

bool check_vertex_glue(const PiecewisePolynomial& f1, const PiecewisePolynomial& f2,
                       const Rational& c1, const Rational& c2, int order) {
    int max_n = std::min(order, std::max(f1.first_piece().degree(), f2.first_piece().degree()));
    Rational c1n(1), c2n(1);
    for (int n = 0; n <= max_n; ++n) {
        Rational lhs = c1n * f1.jet_at_start(n);
        Rational rhs = c2n * f2.jet_at_start(n);
        if (n % 2 == 1) rhs = -rhs;
        if (lhs != rhs) return false;
        c1n *= c1;
        c2n *= c2;
    }
    return true;
}

PiecewisePolynomial make_bump(const Rational& length, const Rational& a, const Rational& b,
                              int order, const Rational& target_integral) {
    if (!(a < b) || a < 0 || b > length) throw std::invalid_argument("make_bump: need 0 <= a < b <= L");
    if (target_integral == 0) return PiecewisePolynomial::constant(length, Rational(0), order);
    Polynomial core = Polynomial({-a, Rational(1)});       // (x - a)
    Polynomial cap = Polynomial({b, Rational(-1)});        // (b - x)
    Polynomial pow_core = Polynomial::constant(Rational(1));
    Polynomial pow_cap = Polynomial::constant(Rational(1));
    for (int i = 0; i < order + 1; ++i) {
        pow_core = pow_core * core;
        pow_cap = pow_cap * cap;
    }
    Polynomial bump = pow_core * pow_cap;
    Rational mass = bump.integrate(a, b);
    bump = bump.scaled(target_integral / mass);

    std::vector<Rational> breaks{Rational(0)};
    std::vector<Polynomial> pieces;
    if (a > 0) {
        pieces.push_back(Polynomial());
        breaks.push_back(a);
    }
    pieces.push_back(bump);
    breaks.push_back(b);
    if (b < length) {
        pieces.push_back(Polynomial());
        breaks.push_back(length);
    }
    return PiecewisePolynomial(length, std::move(breaks), std::move(pieces), order);
}

}  // namespace graphforms
