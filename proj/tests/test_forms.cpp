#include <doctest.h>

#include "graphforms/forms.hpp"

using namespace graphforms;

namespace {

Polynomial poly(std::vector<Rational> c) { return Polynomial(std::move(c)); }

WeightedMetricGraph two_cycle() {
    return WeightedMetricGraph({{0, false}, {1, false}},
                               {{0, 0, 1, Rational(1), 1}, {1, 0, 1, Rational(1), 1}});
}

WeightedMetricGraph boundary_segment() {
    return WeightedMetricGraph({{0, true}, {1, true}}, {{0, 0, 1, Rational(1), 1}});
}

GraphForm one_edge_form(const WeightedMetricGraph& g, Bidegree bd, Polynomial p, int order = 3) {
    GraphForm f = zero_form(g, bd, order);
    f.coeff.at(0) = PiecewisePolynomial::single(g.edge(0).length, std::move(p), order);
    return f;
}

}  // namespace

TEST_CASE("validate_form basics") {
    auto g = two_cycle();
    CHECK(validate_form(g, constant_function(g, Rational(7), 3)).ok());

    // (1,0)-form with constants 1 and -1 on the interior 2-cycle
    GraphForm w = zero_form(g, BD10, 3);
    w.coeff.at(0) = PiecewisePolynomial::constant(Rational(1), Rational(1), 3);
    w.coeff.at(1) = PiecewisePolynomial::constant(Rational(1), Rational(-1), 3);
    CHECK(validate_form(g, w).ok());
    // but equal constants fail the outgoing-value balance
    GraphForm bad = w;
    bad.coeff.at(1) = PiecewisePolynomial::constant(Rational(1), Rational(1), 3);
    CHECK_FALSE(validate_form(g, bad).ok());

    // (0,0)-form nonconstant near an interior leaf
    WeightedMetricGraph leaf({{0, false}, {1, true}}, {{0, 0, 1, Rational(1), 1}});
    auto f = one_edge_form(leaf, BD00, poly({0, 1}));
    auto r = validate_form(leaf, f);
    CHECK_FALSE(r.ok());
    CHECK(r.problems[0].find("leaf") != std::string::npos);
    // same function is fine when the leaf is in the boundary
    auto seg = boundary_segment();
    CHECK(validate_form(seg, one_edge_form(seg, BD00, poly({0, 1}))).ok());
}

TEST_CASE("validate_form respects weights at valence-2 vertices") {
    // Path u -2- v -1- w, weights 2 and 1; u, w boundary, v interior.
    WeightedMetricGraph p({{0, true}, {1, false}, {2, true}},
                          {{0, 0, 1, Rational(1), 2}, {1, 1, 2, Rational(1), 1}});
    // (0,0): glue needs w1*f1'(v) = -w2*f2'(v) in outgoing coordinates.
    GraphForm f = zero_form(p, BD00, 1);
    f.coeff.at(0) = PiecewisePolynomial::single(Rational(1), poly({0, 1}), 1);   // slope 1 into v
    f.coeff.at(1) = PiecewisePolynomial::single(Rational(1), poly({1, 2}), 1);   // value 1 at v
    // outgoing at v: edge0 germ slope -1 (reversed), edge1 germ slope 2: 2*(-1) + 1*2 = 0
    CHECK(validate_form(p, f).ok());
    GraphForm g2 = f;
    g2.coeff.at(1) = PiecewisePolynomial::single(Rational(1), poly({1, 1}), 1);
    CHECK_FALSE(validate_form(p, g2).ok());
}

TEST_CASE("differentials") {
    auto g = boundary_segment();
    auto c = constant_function(g, Rational(5), 3);
    CHECK(d_second(g, c).is_zero());

    auto xdt = one_edge_form(g, BD10, poly({0, 1}));
    auto dd = d_second(g, xdt);
    CHECK(dd.bidegree == BD11);
    CHECK(dd.at(0).same_function(PiecewisePolynomial::constant(Rational(1), Rational(-1), 2)));

    // d'd''f = -d''d'f on f = x^2
    auto f = one_edge_form(g, BD00, poly({0, 0, 1}));
    auto a = d_first(g, d_second(g, f));
    auto b = d_second(g, d_first(g, f));
    CHECK(validate_form(g, a).ok());
    CHECK(a.same_form(b.scaled(Rational(-1))));

    CHECK_THROWS(d_first(g, xdt));
    CHECK_THROWS(d_second(g, one_edge_form(g, BD10, poly({0, 1}), 0)));
}

TEST_CASE("wedge") {
    auto g = boundary_segment();
    auto one = constant_function(g, Rational(1), 3);
    auto xdt = one_edge_form(g, BD10, poly({0, 1}));
    CHECK(wedge(g, one, xdt).same_form(xdt));

    auto dtt = one_edge_form(g, BD01, poly({1}));
    auto prod = wedge(g, xdt, dtt);
    CHECK(prod.bidegree == BD11);
    CHECK(prod.at(0).same_function(PiecewisePolynomial::single(Rational(1), poly({0, 1}), 3)));
    CHECK(wedge(g, dtt, xdt).same_form(prod.scaled(Rational(-1))));
    CHECK_THROWS(wedge(g, xdt, xdt));
}

TEST_CASE("leibniz rule for d-prime") {
    auto g = boundary_segment();
    auto f = one_edge_form(g, BD00, poly({1, 2, 1}));
    auto h = one_edge_form(g, BD00, poly({0, 3}));
    // functions: d'(fh) = d'f * h + f * d'h
    auto lhs = d_first(g, wedge(g, f, h));
    auto rhs = wedge(g, d_first(g, f), h) + wedge(g, f, d_first(g, h));
    CHECK(lhs.same_form(rhs));
    // mixed: w in (0,1), eta in (0,0): sign (-1)^(p+q) = -1
    auto w = one_edge_form(g, BD01, poly({2, 1}));
    auto lhs2 = d_first(g, wedge(g, w, h));
    auto rhs2 = wedge(g, d_first(g, w), h) + wedge(g, w, d_first(g, h)).scaled(Rational(-1));
    CHECK(lhs2.same_form(rhs2));
}

TEST_CASE("lagerberg involution") {
    auto g = boundary_segment();
    auto f = constant_function(g, Rational(3), 3);
    CHECK(lagerberg_involution(f).same_form(f));
    auto w11 = one_edge_form(g, BD11, poly({0, 1, 1}));
    auto j = lagerberg_involution(w11);
    CHECK(j.bidegree == BD11);
    CHECK(j.same_form(w11.scaled(Rational(-1))));
    auto w10 = one_edge_form(g, BD10, poly({1, 1}));
    CHECK(lagerberg_involution(w10).bidegree == BD01);
    CHECK(lagerberg_involution(lagerberg_involution(w10)).same_form(w10));
}

TEST_CASE("integrate_graph") {
    auto g = two_cycle();
    GraphForm w = zero_form(g, BD11, 3);
    w.coeff.at(0) = PiecewisePolynomial::constant(Rational(1), Rational(1), 3);
    w.coeff.at(1) = PiecewisePolynomial::constant(Rational(1), Rational(1), 3);
    CHECK(integrate_graph(g, w) == Rational(2));
    CHECK(integrate_graph(g, zero_form(g, BD11, 3)) == Rational(0));

    WeightedMetricGraph h({{0, true}, {1, true}}, {{0, 0, 1, Rational(1), 3}});
    auto u = one_edge_form(h, BD11, poly({1}));
    CHECK(integrate_graph(h, u) == Rational(3));
}

TEST_CASE("integrate_boundary") {
    auto g = two_cycle();  // no boundary
    GraphForm w = zero_form(g, BD10, 3);
    CHECK(integrate_boundary(g, w) == Rational(0));

    auto seg = boundary_segment();
    auto xdt = one_edge_form(seg, BD10, poly({0, 1}));
    CHECK(integrate_boundary(seg, xdt) == Rational(-1));
    CHECK(integrate_boundary_all_vertices(seg, xdt) == Rational(-1));

    auto xddt = one_edge_form(seg, BD01, poly({0, 1}));
    CHECK(integrate_boundary(seg, xddt) == Rational(1));
}

TEST_CASE("stokes") {
    auto seg = boundary_segment();
    auto xdt = one_edge_form(seg, BD10, poly({0, 1}));
    auto s = stokes_check(seg, xdt);
    CHECK(s.lhs == Rational(-1));
    CHECK(s.rhs == Rational(-1));
    CHECK(s.equal);

    // boundaryless graph: both sides vanish
    auto g = two_cycle();
    GraphForm w = zero_form(g, BD10, 3);
    w.coeff.at(0) = make_bump(Rational(1), Rational(1, 4), Rational(3, 4), 3, Rational(7));
    REQUIRE(validate_form(g, w).ok());
    auto s2 = stokes_check(g, w);
    CHECK(s2.lhs == Rational(0));
    CHECK(s2.equal);

    // bump coefficient supported inside one edge
    WeightedMetricGraph tri({{0, false}, {1, false}, {2, true}},
                            {{0, 0, 1, Rational(1), 1},
                             {1, 1, 2, Rational(1), 1},
                             {2, 2, 0, Rational(1), 1}});
    GraphForm b = zero_form(tri, BD10, 2);
    b.coeff.at(0) = make_bump(Rational(1), Rational(1, 4), Rational(3, 4), 2, Rational(5));
    REQUIRE(validate_form(tri, b).ok());
    auto s3 = stokes_check(tri, b);
    CHECK(s3.lhs == Rational(0));
    CHECK(s3.rhs == Rational(0));
    CHECK(s3.equal);
}

TEST_CASE("unweighting transport") {
    WeightedMetricGraph g({{0, true}, {1, false}, {2, true}},
                          {{0, 0, 1, Rational(2), 2}, {1, 1, 2, Rational(3), 3}});
    auto [g0, corr] = unweight(g);

    // a valid (0,0)-form: continuous at v, glue with weights
    GraphForm f = zero_form(g, BD00, 1);
    f.coeff.at(0) = PiecewisePolynomial::single(Rational(2), poly({0, 1}), 1);
    f.coeff.at(1) = PiecewisePolynomial::single(Rational(3), poly({2, Rational(2, 3)}), 1);
    REQUIRE(validate_form(g, f).ok());

    auto f0 = unweight_form(g, f);
    CHECK(validate_form(g0, f0).ok());
    CHECK(reweight_form(g, f0).same_form(f));

    // nu* commutes with d' and wedge
    CHECK(unweight_form(g, d_first(g, f)).same_form(d_first(g0, f0)));
    auto w = d_second(g, f);
    CHECK(unweight_form(g, w).same_form(d_second(g0, f0)));
    auto prod = wedge(g, d_first(g, f), w);
    CHECK(unweight_form(g, prod).same_form(wedge(g0, d_first(g0, f0), unweight_form(g, w))));

    // integrals preserved
    CHECK(integrate_graph(g0, unweight_form(g, prod)) == integrate_graph(g, prod));
    CHECK(integrate_boundary(g0, unweight_form(g, w)) == integrate_boundary(g, w));
}

TEST_CASE("subdivision transport") {
    auto seg = boundary_segment();
    auto f = one_edge_form(seg, BD10, poly({0, 0, 1}));
    auto [sub, corr] = subdivide(seg, {{0, Rational(1, 3)}});
    auto fs = subdivide_form(sub, corr, f);
    CHECK(validate_form(sub, fs).ok());
    CHECK(integrate_boundary(sub, fs) == integrate_boundary(seg, f));
    auto s = stokes_check(sub, fs);
    CHECK(s.equal);
    CHECK(s.lhs == stokes_check(seg, f).lhs);
}
