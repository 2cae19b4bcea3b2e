#include <doctest.h>

#include "graphforms/piecewise.hpp"

using namespace graphforms;

namespace {

Polynomial poly(std::vector<Rational> c) { return Polynomial(std::move(c)); }

PiecewisePolynomial tent(int order) {
    // {x on [0,1], 2-x on [1,2]}, continuous but not C^1.
    return PiecewisePolynomial(Rational(2), {Rational(0), Rational(1), Rational(2)},
                               {poly({0, 1}), poly({2, -1})}, order);
}

}  // namespace

TEST_CASE("polynomial basics") {
    Polynomial p({1, 0, 2});  // 1 + 2x^2
    CHECK(p.evaluate(Rational(3)) == Rational(19));
    CHECK(p.derivative() == poly({0, 4}));
    CHECK(p.derivative_at(Rational(1), 2) == Rational(4));
    CHECK(p.derivative_at(Rational(1), 5) == Rational(0));
    CHECK(p.antiderivative().derivative() == p);
    CHECK(p.compose_affine(Rational(2), Rational(-1)) == poly({3, -8, 8}));
    CHECK((poly({1, 1}) * poly({-1, 1})) == poly({-1, 0, 1}));
    CHECK(Polynomial({0, 0}).is_zero());
    CHECK(Polynomial().degree() == -1);
}

TEST_CASE("evaluate") {
    auto sq = PiecewisePolynomial::single(Rational(2), poly({0, 0, 1}), 3);
    CHECK(sq.evaluate(Rational(3, 2)) == Rational(9, 4));
    auto c5 = PiecewisePolynomial::constant(Rational(7), Rational(5), 2);
    CHECK(c5.evaluate(Rational(1, 3)) == Rational(5));
    CHECK(tent(0).evaluate(Rational(1)) == Rational(1));
    CHECK_THROWS(sq.evaluate(Rational(5)));
    CHECK_THROWS(PiecewisePolynomial(Rational(2), {Rational(0), Rational(1), Rational(2)},
                                     {poly({0, 1}), poly({0, -1})}, 0));  // jump at 1
}

TEST_CASE("differentiate") {
    auto cube = PiecewisePolynomial::single(Rational(1), poly({0, 0, 0, 1}), 3);
    CHECK(cube.derivative().same_function(
        PiecewisePolynomial::single(Rational(1), poly({0, 0, 3}), 2)));
    auto c = PiecewisePolynomial::constant(Rational(1), Rational(4), 1);
    CHECK(c.derivative().is_zero());

    // {x^2 on [0,1], 2x-1 on [1,2]} is C^1 at 1; derivative {2x, 2} is C^0.
    PiecewisePolynomial f(Rational(2), {Rational(0), Rational(1), Rational(2)},
                          {poly({0, 0, 1}), poly({-1, 2})}, 1);
    auto df = f.derivative();
    CHECK(df.order() == 0);
    CHECK(df.piece(0) == poly({0, 2}));
    CHECK(df.piece(1) == poly({2}));
    CHECK_THROWS(tent(0).derivative());
}

TEST_CASE("integrate_definite") {
    auto lin = PiecewisePolynomial::single(Rational(2), poly({0, 1}), 3);
    CHECK(lin.integrate(Rational(0), Rational(2)) == Rational(2));
    CHECK(lin.integrate(Rational(1), Rational(1)) == Rational(0));
    CHECK(tent(0).integrate() == Rational(1));
    CHECK_THROWS(lin.integrate(Rational(2), Rational(0)));
}

TEST_CASE("reverse") {
    auto lin = PiecewisePolynomial::single(Rational(1), poly({0, 1}), 3);
    CHECK(lin.reversed().same_function(PiecewisePolynomial::single(Rational(1), poly({1, -1}), 3)));
    PiecewisePolynomial f(Rational(2), {Rational(0), Rational(1), Rational(2)},
                          {Polynomial(), poly({1, -2, 1})}, 0);
    auto r = f.reversed();
    CHECK(r.evaluate(Rational(1, 2)) == Rational(1, 4));  // (1-x)^2 at 1/2
    CHECK(r.evaluate(Rational(3, 2)) == Rational(0));
    CHECK(r.reversed().same_function(f));
}

TEST_CASE("check_vertex_glue") {
    auto id1 = PiecewisePolynomial::single(Rational(1), poly({0, 1}), 3);
    auto neg = PiecewisePolynomial::single(Rational(1), poly({0, -1}), 3);
    CHECK(check_vertex_glue(id1, neg, Rational(1), Rational(1), 3));
    auto c7 = PiecewisePolynomial::constant(Rational(1), Rational(7), 3);
    CHECK(check_vertex_glue(c7, c7, Rational(5), Rational(2), 3));
    CHECK_FALSE(check_vertex_glue(id1, id1, Rational(1), Rational(1), 3));
    CHECK(check_vertex_glue(id1, id1, Rational(1), Rational(1), 0));  // only values at K=0

    // symmetry under swapping the two sides
    auto f1 = PiecewisePolynomial::single(Rational(1), poly({2, 3, 5}), 4);
    auto f2 = PiecewisePolynomial::single(Rational(1), poly({2, Rational(-3, 2), Rational(5, 4)}), 4);
    CHECK(check_vertex_glue(f1, f2, Rational(1), Rational(2), 4) ==
          check_vertex_glue(f2, f1, Rational(2), Rational(1), 4));
    CHECK(check_vertex_glue(f1, f2, Rational(1), Rational(2), 4));
}

TEST_CASE("make_bump") {
    auto b = make_bump(Rational(1), Rational(0), Rational(1), 0, Rational(1));
    CHECK(b.same_function(PiecewisePolynomial::single(Rational(1), poly({0, 6, -6}), 0)));
    CHECK(make_bump(Rational(5), Rational(1), Rational(2), 3, Rational(0)).is_zero());

    auto c = make_bump(Rational(3), Rational(1), Rational(2), 1, Rational(1));
    CHECK(c.integrate() == Rational(1));
    CHECK(c.evaluate(Rational(3, 2)) == Rational(30) / Rational(16));  // 30*(1/2)^2*(1/2)^2
    CHECK(c.evaluate(Rational(1, 2)) == Rational(0));
    CHECK(c.evaluate(Rational(5, 2)) == Rational(0));
    // C^1 at the support endpoints and exact integral
    CHECK(c.order() == 1);
    auto dc = c.derivative();
    CHECK(dc.evaluate(Rational(1)) == Rational(0));
    CHECK(dc.evaluate(Rational(2)) == Rational(0));
    CHECK_THROWS(make_bump(Rational(1), Rational(1, 2), Rational(1, 2), 0, Rational(1)));
}

TEST_CASE("fundamental theorem and reversal invariants") {
    PiecewisePolynomial f(Rational(3), {Rational(0), Rational(1), Rational(3)},
                          {poly({1, 2, 3}), poly({4, Rational(-5), 7})}, 0);
    // antiderivative then derivative returns the same function
    CHECK(f.antiderivative().derivative().same_function(f));
    // integral invariant under reversal
    CHECK(f.reversed().integrate() == f.integrate());
    // additivity over subintervals
    CHECK(f.integrate(Rational(0), Rational(2)) + f.integrate(Rational(2), Rational(3)) ==
          f.integrate());
}

TEST_CASE("restriction and rescaling") {
    PiecewisePolynomial f(Rational(2), {Rational(0), Rational(1), Rational(2)},
                          {poly({0, 0, 1}), poly({-1, 2})}, 1);
    auto r = f.restricted(Rational(1, 2), Rational(3, 2));
    CHECK(r.length() == Rational(1));
    CHECK(r.evaluate(Rational(0)) == Rational(1, 4));
    CHECK(r.evaluate(Rational(1)) == Rational(2));
    auto s = f.rescaled_domain(Rational(1));
    CHECK(s.evaluate(Rational(1, 2)) == f.evaluate(Rational(1)));
    CHECK(s.integrate() == f.integrate() / 2);
}
