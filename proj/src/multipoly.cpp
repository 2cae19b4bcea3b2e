#include "graphforms/multipoly.hpp"

namespace graphforms {

MultiPoly MultiPoly::constant(int vars, const Rational& c) {
    MultiPoly p(vars);
    p.add_term(std::vector<int>(vars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int vars, int i) {
    return monomial(vars, [&] {
        std::vector<int> e(vars, 0);
        e.at(i) = 1;
        return e;
    }(), Rational(1));
}

MultiPoly MultiPoly::monomial(int vars, std::vector<int> exponents, const Rational& c) {
    if (static_cast<int>(exponents.size()) != vars)
        throw std::invalid_argument("multipoly: exponent arity mismatch");
    MultiPoly p(vars);
    p.add_term(exponents, c);
    return p;
}

MultiPoly MultiPoly::from_univariate(int vars, int i, const Polynomial& p) {
    MultiPoly out(vars);
    std::vector<int> e(vars, 0);
    for (int k = 0; k <= p.degree(); ++k) {
        e.at(i) = k;
        out.add_term(e, p.coeff(k));
    }
    return out;
}

void MultiPoly::add_term(const std::vector<int>& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != n_)
        throw std::invalid_argument("multipoly: evaluation arity mismatch");
    Rational total(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k) term *= point[i];
        total += term;
    }
    return total;
}

MultiPoly MultiPoly::partial(int i) const {
    MultiPoly out(n_);
    for (const auto& [e, c] : terms_) {
        if (e.at(i) == 0) continue;
        std::vector<int> d = e;
        d[i] -= 1;
        out.add_term(d, c * e[i]);
    }
    return out;
}

Polynomial MultiPoly::compose_affine_line(const std::vector<Rational>& a,
                                          const std::vector<Rational>& b) const {
    if (static_cast<int>(a.size()) != n_ || static_cast<int>(b.size()) != n_)
        throw std::invalid_argument("multipoly: line arity mismatch");
    Polynomial total;
    for (const auto& [e, c] : terms_) {
        Polynomial term = Polynomial::constant(c);
        for (int i = 0; i < n_; ++i) {
            Polynomial lin({b[i], a[i]});
            for (int k = 0; k < e[i]; ++k) term = term * lin;
        }
        total = total + term;
    }
    return total;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("multipoly: arity mismatch");
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("multipoly: arity mismatch");
    MultiPoly out(n_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<int> e = e1;
            for (int i = 0; i < n_; ++i) e[i] += e2[i];
            out.add_term(e, c1 * c2);
        }
    return out;
}

MultiPoly MultiPoly::scaled(const Rational& s) const {
    MultiPoly out(n_);
    if (s == 0) return out;
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
}

}  // namespace graphforms
