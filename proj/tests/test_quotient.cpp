#include <doctest.h>

#include "graphforms/quotient.hpp"

using namespace graphforms;

namespace {

WeightedMetricGraph n_cycle(int n, Rational len = Rational(1)) {
    std::vector<Vertex> vs;
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) {
        vs.push_back({i, false});
        es.push_back({i, i, (i + 1) % n, len, 1});
    }
    return WeightedMetricGraph(std::move(vs), std::move(es));
}

PLMap rotation(const WeightedMetricGraph& cyc, int n, int k) {
    PLMap m{cyc, cyc, {}, {}};
    for (int i = 0; i < n; ++i) {
        m.vertex_map[i] = (i + k) % n;
        m.edge_map[i] = {false, (i + k) % n, false};
    }
    return m;
}

PLMap reflection(const WeightedMetricGraph& cyc, int n) {
    PLMap m{cyc, cyc, {}, {}};
    for (int i = 0; i < n; ++i) {
        m.vertex_map[i] = (n - i) % n;
        m.edge_map[i] = {false, (n - i - 1 + n) % n, true};
    }
    return m;
}

/// Circle of circumference 2: two unit edges between the two axis vertices;
/// the flip exchanges the edges and fixes both vertices.
GroupAction circle_flip() {
    WeightedMetricGraph c({{0, false}, {1, false}},
                          {{0, 0, 1, Rational(1), 1}, {1, 0, 1, Rational(1), 1}});
    PLMap flip{c, c, {{0, 0}, {1, 1}}, {}};
    flip.edge_map[0] = {false, 1, false};
    flip.edge_map[1] = {false, 0, false};
    return generate_group(c, {flip});
}

}  // namespace

TEST_CASE("validate and generate actions") {
    auto a = circle_flip();
    CHECK(a.elements.size() == 2);
    CHECK(validate_action(a).ok());

    auto cyc = n_cycle(4);
    auto rot = generate_group(cyc, {rotation(cyc, 4, 1)});
    CHECK(rot.elements.size() == 4);
    CHECK(validate_action(rot).ok());

    // dihedral group on the 4-cycle
    auto dih = generate_group(cyc, {rotation(cyc, 4, 1), reflection(cyc, 4)});
    CHECK(dih.elements.size() == 8);
    CHECK(validate_action(dih).ok());

    // dropping the identity invalidates the action
    GroupAction broken = a;
    broken.elements.erase(broken.elements.begin());
    CHECK_FALSE(validate_action(broken).ok());
}

TEST_CASE("equivariant subdivision") {
    // trivial action: unchanged
    auto cyc = n_cycle(3);
    auto triv = generate_group(cyc, {});
    auto es = equivariant_subdivision(triv);
    CHECK_FALSE(es.subdivided);
    CHECK(graphs_equal(es.action.graph, cyc));

    // flip of the 2-cycle fixing both vertices: tail and head orbits differ
    auto flip = circle_flip();
    auto es2 = equivariant_subdivision(flip);
    CHECK_FALSE(es2.subdivided);

    // reversing involution of a single edge forces the midpoint split
    WeightedMetricGraph seg({{0, false}, {1, false}}, {{0, 0, 1, Rational(1), 1}});
    PLMap inv{seg, seg, {{0, 1}, {1, 0}}, {}};
    inv.edge_map[0] = {false, 0, true};
    auto act = generate_group(seg, {inv});
    auto es3 = equivariant_subdivision(act);
    CHECK(es3.subdivided);
    CHECK(es3.action.graph.edges().size() == 2);
    CHECK(validate_action(es3.action).ok());

    // rotation by 1 of the 2-cycle also identifies the two vertices
    auto two = n_cycle(2);
    auto swap2 = generate_group(two, {rotation(two, 2, 1)});
    auto es4 = equivariant_subdivision(swap2);
    CHECK(es4.subdivided);
}

TEST_CASE("quotient of the circle by the flip") {
    auto q = quotient_graph(circle_flip());
    CHECK(q.graph.vertices().size() == 2);
    REQUIRE(q.graph.edges().size() == 1);
    CHECK(q.graph.edges()[0].length == Rational(1, 2));
    CHECK(q.graph.edges()[0].weight == 1);
    CHECK(q.certificate.harmonic);
    CHECK(verify_quotient(q.action, q.graph, q.projection).ok());

    // quotients are unique only up to harmonic isomorphism: a segment of a
    // different length with the evident projection also verifies
    WeightedMetricGraph seg1({{0, false}, {1, false}}, {{0, 0, 1, Rational(1), 1}});
    PLMap pi{q.action.graph, seg1, {{0, 0}, {1, 1}}, {}};
    pi.edge_map[0] = {false, 0, false};
    pi.edge_map[1] = {false, 0, false};
    CHECK(verify_quotient(q.action, seg1, pi).ok());

    // a projection missing the boundary compatibility fails
    WeightedMetricGraph segb({{0, true}, {1, false}}, {{0, 0, 1, Rational(1, 2), 1}});
    PLMap bad{q.action.graph, segb, {{0, 0}, {1, 1}}, {}};
    bad.edge_map[0] = {false, 0, false};
    bad.edge_map[1] = {false, 0, false};
    CHECK_FALSE(verify_quotient(q.action, segb, bad).ok());
}

TEST_CASE("quotient by the trivial group is the unweighting") {
    WeightedMetricGraph g({{0, true}, {1, false}},
                          {{0, 0, 1, Rational(2), 2}, {1, 0, 1, Rational(3), 1}});
    auto q = quotient_graph(generate_group(g, {}));
    CHECK(graphs_equal(q.graph, unweight(g).first));
    CHECK(verify_quotient(q.action, q.graph, q.projection).ok());
}

TEST_CASE("quotient of the 4-cycle by the half rotation") {
    auto cyc = n_cycle(4);
    auto a = generate_group(cyc, {rotation(cyc, 4, 2)});
    auto q = quotient_graph(a);
    CHECK(q.graph.vertices().size() == 2);
    CHECK(q.graph.edges().size() == 2);
    for (const auto& e : q.graph.edges()) CHECK(e.length == Rational(1, 2));
    CHECK(total_genus(q.graph) == 1);
    CHECK(verify_quotient(a, q.graph, q.projection).ok());
}

TEST_CASE("universal property factorization") {
    auto q = quotient_graph(circle_flip());
    auto phi = factor_through_quotient(q, q.projection);
    CHECK(plmaps_equal(phi, PLMap::identity(q.graph)));
}

TEST_CASE("invariant cohomology") {
    // trivial group: invariants are the full cohomology
    auto cyc = n_cycle(3);
    auto triv = invariant_cohomology(generate_group(cyc, {}));
    CHECK(triv.match);
    CHECK(triv.invariant_ranks == dolbeault_dimensions(cyc));

    // circle flip: the cycle class is negated, so H^{0,1} invariants vanish
    auto flip = invariant_cohomology(circle_flip());
    CHECK(flip.match);
    CHECK(flip.invariant_ranks.h01 == 0);
    CHECK(flip.invariant_ranks.h00 == 1);
    CHECK(flip.quotient_dims.h11 == 1);  // the quotient segment is boundaryless

    // 4-cycle mod half rotation: the cycle class survives
    auto cyc4 = n_cycle(4);
    auto rot = invariant_cohomology(generate_group(cyc4, {rotation(cyc4, 4, 2)}));
    CHECK(rot.match);
    CHECK(rot.invariant_ranks.h01 == 1);
    CHECK(rot.invariant_ranks.h11 == 1);

    // full reflection group of the 3-cycle
    auto cyc3 = n_cycle(3);
    auto dih = invariant_cohomology(generate_group(cyc3, {rotation(cyc3, 3, 1), reflection(cyc3, 3)}));
    CHECK(dih.match);
    CHECK(dih.invariant_ranks.h01 == 0);
}

TEST_CASE("non-isometric harmonic action on scaled path copies") {
    // two paths with lengths (1,1) and (2,2); the swap scales by 2 and has
    // local degrees 2 and 1/2 at the interior midpoints
    WeightedMetricGraph g({{0, true}, {1, false}, {2, true},
                           {3, true}, {4, false}, {5, true}},
                          {{0, 0, 1, Rational(1), 1},
                           {1, 1, 2, Rational(1), 1},
                           {2, 3, 4, Rational(2), 1},
                           {3, 4, 5, Rational(2), 1}});
    PLMap swap{g, g, {{0, 3}, {1, 4}, {2, 5}, {3, 0}, {4, 1}, {5, 2}}, {}};
    swap.edge_map[0] = {false, 2, false};
    swap.edge_map[1] = {false, 3, false};
    swap.edge_map[2] = {false, 0, false};
    swap.edge_map[3] = {false, 1, false};
    auto hr = harmonicity(swap);
    REQUIRE(hr.harmonic);
    CHECK(hr.local_degree.at(1) == Rational(2));
    CHECK(hr.local_degree.at(4) == Rational(1, 2));

    auto a = generate_group(g, {swap});
    CHECK(validate_action(a).ok());
    auto q = quotient_graph(a);  // internal cross-checks exercise d(v',v'')
    CHECK(q.graph.edges().size() == 2);
    for (const auto& e : q.graph.edges()) CHECK(e.length == Rational(2, 3));
    CHECK(q.certificate.local_degree.at(1) == Rational(2, 3));
    CHECK(verify_quotient(q.action, q.graph, q.projection).ok());
    auto inv = invariant_cohomology(a);
    CHECK(inv.match);
}
