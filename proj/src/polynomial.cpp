#include "graphforms/polynomial.hpp"

namespace graphforms {

Polynomial Polynomial::monomial(const Rational& c, int k) {
    if (c == 0) return Polynomial();
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = c;
    return Polynomial(std::move(v));
}

Rational Polynomial::evaluate(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rational Polynomial::derivative_at(const Rational& x, int n) const {
    if (n < 0) throw std::invalid_argument("derivative_at: negative order");
    if (n > degree()) return Rational(0);
    // Sum_{k >= n} c_k * k!/(k-n)! * x^(k-n), by falling-factorial accumulation.
    Rational acc(0);
    for (int k = degree(); k >= n; --k) {
        Rational fall(1);
        for (int j = 0; j < n; ++j) fall *= (k - j);
        acc = acc * x + c_[k] * fall;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Rational> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<int>(k);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    if (c_.empty()) return Polynomial();
    std::vector<Rational> a(c_.size() + 1, Rational(0));
    for (size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / static_cast<int>(k + 1);
    return Polynomial(std::move(a));
}

Rational Polynomial::integrate(const Rational& a, const Rational& b) const {
    Polynomial F = antiderivative();
    return F.evaluate(b) - F.evaluate(a);
}

Polynomial Polynomial::compose_affine(const Rational& alpha, const Rational& beta) const {
    // Horner in the polynomial ring: p(ax+b) = (...((c_n)(ax+b) + c_{n-1})(ax+b) + ...).
    Polynomial lin({beta, alpha});
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (c_.empty() || o.c_.empty()) return Polynomial();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial Polynomial::scaled(const Rational& s) const {
    if (s == 0) return Polynomial();
    std::vector<Rational> r(c_);
    for (auto& x : r) x *= s;
    return Polynomial(std::move(r));
}

}  // namespace graphforms
