#include "graphforms/quotient.hpp"

#include <algorithm>
#include <functional>

namespace graphforms {

namespace {

bool is_identity_element(const PLMap& m) {
    for (const auto& [v, w] : m.vertex_map)
        if (v != w) return false;
    for (const auto& [e, im] : m.edge_map)
        if (im.crushed || im.target != e || im.reversed) return false;
    return true;
}

struct OrbitFinder {
    std::map<int, int> parent;
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

OrbitFinder vertex_orbits(const GroupAction& a) {
    OrbitFinder of;
    for (const auto& v : a.graph.vertices()) of.parent[v.id] = v.id;
    for (const auto& el : a.elements)
        for (const auto& [v, w] : el.vertex_map) of.unite(v, w);
    return of;
}

}  // namespace

ValidationReport validate_action(const GroupAction& a) {
    ValidationReport r;
    bool has_identity = false;
    for (size_t i = 0; i < a.elements.size(); ++i) {
        const PLMap& el = a.elements[i];
        if (!graphs_equal(el.source, a.graph) || !graphs_equal(el.target, a.graph)) {
            r.add("element " + std::to_string(i) + " is not a self-map of the graph");
            continue;
        }
        auto vr = validate_plmap(el);
        if (!vr.ok()) {
            r.add("element " + std::to_string(i) + " invalid: " + vr.problems.front());
            continue;
        }
        for (const auto& [e, im] : el.edge_map) {
            (void)e;
            if (im.crushed) {
                r.add("element " + std::to_string(i) + " crushes an edge");
                break;
            }
        }
        if (!harmonicity(el).harmonic) r.add("element " + std::to_string(i) + " is not harmonic");
        std::vector<int> bdy, image_bdy;
        for (const auto& v : a.graph.vertices())
            if (v.boundary) {
                bdy.push_back(v.id);
                image_bdy.push_back(el.vertex_map.at(v.id));
            }
        std::sort(image_bdy.begin(), image_bdy.end());
        if (bdy != image_bdy)
            r.add("element " + std::to_string(i) + " does not preserve the boundary");
        if (is_identity_element(el)) has_identity = true;
    }
    if (!has_identity) r.add("action does not contain the identity");
    if (!r.ok()) return r;
    for (size_t i = 0; i < a.elements.size(); ++i)
        for (size_t j = 0; j < a.elements.size(); ++j) {
            PLMap comp = compose(a.elements[i], a.elements[j]);
            bool found = false;
            for (const auto& el : a.elements)
                if (plmaps_equal(comp, el)) found = true;
            if (!found)
                r.add("composition of elements " + std::to_string(i) + " and " + std::to_string(j) +
                      " is not in the action");
        }
    return r;
}

GroupAction generate_group(const WeightedMetricGraph& g, const std::vector<PLMap>& generators) {
    GroupAction a{g, {PLMap::identity(g)}};
    std::vector<PLMap> frontier = a.elements;
    while (!frontier.empty()) {
        std::vector<PLMap> next;
        for (const auto& el : frontier)
            for (const auto& gen : generators) {
                PLMap comp = compose(gen, el);
                bool known = false;
                for (const auto& known_el : a.elements)
                    if (plmaps_equal(comp, known_el)) known = true;
                if (!known) {
                    a.elements.push_back(comp);
                    next.push_back(comp);
                    if (a.elements.size() > 512)
                        throw std::invalid_argument("generate_group: group too large");
                }
            }
        frontier = std::move(next);
    }
    return a;
}

EquivariantSubdivision equivariant_subdivision(const GroupAction& a) {
    auto vr = validate_action(a);
    if (!vr.ok()) throw std::invalid_argument("equivariant_subdivision: " + vr.problems.front());

    EquivariantSubdivision out;
    OrbitFinder of = vertex_orbits(a);
    bool needs_split = false;
    for (const auto& e : a.graph.edges())
        if (of.find(e.tail) == of.find(e.head)) needs_split = true;
    if (!needs_split) {
        out.action = a;
        for (const auto& v : a.graph.vertices()) out.corr.vertex_map[v.id] = v.id;
        for (const auto& e : a.graph.edges())
            out.corr.edge_map[e.id] = {{e.id, false, Rational(0), e.length}};
        return out;
    }

    // Midpoint subdivision of every edge; group elements permute midpoints.
    std::vector<std::pair<int, Rational>> cuts;
    for (const auto& e : a.graph.edges()) cuts.emplace_back(e.id, e.length / 2);
    auto [sub, corr] = subdivide(a.graph, cuts);
    // Per original edge: the midpoint vertex and the two half-edges.
    struct Halves {
        int mid, first, second;
    };
    std::map<int, Halves> halves;
    for (const auto& e : a.graph.edges()) {
        const auto& tiles = corr.edge_map.at(e.id);
        halves[e.id] = {sub.edge(tiles[1].target_edge).tail, tiles[0].target_edge,
                        tiles[1].target_edge};
    }
    GroupAction sa{sub, {}};
    for (const auto& el : a.elements) {
        PLMap m{sub, sub, {}, {}};
        for (const auto& [v, w] : el.vertex_map) m.vertex_map[v] = w;
        for (const auto& e : a.graph.edges()) {
            const EdgeImage& im = el.edge_map.at(e.id);
            const Halves& src = halves.at(e.id);
            const Halves& dst = halves.at(im.target);
            m.vertex_map[src.mid] = dst.mid;
            if (!im.reversed) {
                m.edge_map[src.first] = {false, dst.first, false};
                m.edge_map[src.second] = {false, dst.second, false};
            } else {
                m.edge_map[src.first] = {false, dst.second, true};
                m.edge_map[src.second] = {false, dst.first, true};
            }
        }
        sa.elements.push_back(std::move(m));
    }

    OrbitFinder of2 = vertex_orbits(sa);
    for (const auto& e : sub.edges())
        if (of2.find(e.tail) == of2.find(e.head))
            throw std::logic_error("equivariant_subdivision: midpoint split insufficient");
    out.action = std::move(sa);
    out.corr = std::move(corr);
    out.subdivided = true;
    return out;
}

QuotientResult quotient_graph(const GroupAction& input) {
    auto sub = equivariant_subdivision(input);
    const GroupAction& a = sub.action;
    const WeightedMetricGraph& g = a.graph;

    OrbitFinder vof = vertex_orbits(a);
    // Edge orbits with orientation flags relative to the orbit representative.
    OrbitFinder eof;
    for (const auto& e : g.edges()) eof.parent[e.id] = e.id;
    for (const auto& el : a.elements)
        for (const auto& [e, im] : el.edge_map) eof.unite(e, im.target);
    std::map<int, bool> reversed_rel_rep;
    for (const auto& e : g.edges())
        if (eof.find(e.id) == e.id) {
            // BFS over the orbit from the representative, composing flags.
            reversed_rel_rep[e.id] = false;
            std::vector<int> queue{e.id};
            for (size_t qi = 0; qi < queue.size(); ++qi) {
                int cur = queue[qi];
                for (const auto& el : a.elements) {
                    const EdgeImage& im = el.edge_map.at(cur);
                    bool flag = reversed_rel_rep.at(cur) != im.reversed;
                    auto it = reversed_rel_rep.find(im.target);
                    if (it == reversed_rel_rep.end()) {
                        reversed_rel_rep[im.target] = flag;
                        queue.push_back(im.target);
                    } else if (it->second != flag) {
                        throw std::logic_error("quotient: inconsistent edge orientations in orbit");
                    }
                }
            }
        }

    std::vector<Vertex> qvertices;
    for (const auto& v : g.vertices())
        if (vof.find(v.id) == v.id) qvertices.push_back({v.id, v.boundary});
    std::vector<Edge> qedges;
    for (const auto& e : g.edges()) {
        if (eof.find(e.id) != e.id) continue;
        Rational inv_sum(0);
        for (const auto& e2 : g.edges())
            if (eof.find(e2.id) == e.id) inv_sum += 1 / g.length0(e2.id);
        qedges.push_back({e.id, vof.find(e.tail), vof.find(e.head), 1 / inv_sum, 1});
    }
    WeightedMetricGraph q(std::move(qvertices), std::move(qedges));

    PLMap pi{g, q, {}, {}};
    for (const auto& v : g.vertices()) pi.vertex_map[v.id] = vof.find(v.id);
    for (const auto& e : g.edges())
        pi.edge_map[e.id] = {false, eof.find(e.id), reversed_rel_rep.at(e.id)};

    HarmonicityResult cert = harmonicity(pi);
    QuotientResult res{std::move(q), std::move(pi), std::move(cert), a};
    if (!res.certificate.harmonic)
        throw std::logic_error("quotient: projection is not harmonic: " + res.certificate.failure);

    // Cross-checks from the existence proof: d_v'(sigma) = 1 on stabilizers,
    // and d_v'(pi) equals the harmonic mean of the d(v', v'').
    std::vector<HarmonicityResult> certs;
    for (const auto& el : a.elements) certs.push_back(harmonicity(el));
    for (const auto& v : g.vertices()) {
        if (v.boundary || g.valence(v.id) == 0) continue;
        Rational inv_sum(0);
        std::map<int, bool> seen;
        for (size_t i = 0; i < a.elements.size(); ++i) {
            int image = a.elements[i].vertex_map.at(v.id);
            Rational d = certs[i].local_degree.at(v.id);
            if (image == v.id && d != 1)
                throw std::logic_error("quotient: stabilizer element with local degree != 1");
            if (!seen.count(image)) {
                seen[image] = true;
                inv_sum += 1 / d;
            }
        }
        if (res.certificate.local_degree.at(v.id) != 1 / inv_sum)
            throw std::logic_error("quotient: local degree disagrees with the orbit formula");
    }
    return res;
}

ValidationReport verify_quotient(const GroupAction& a, const WeightedMetricGraph& sigma,
                                 const PLMap& pi) {
    ValidationReport r;
    if (!graphs_equal(pi.source, a.graph)) {
        r.add("projection source is not the acted-on graph");
        return r;
    }
    if (!graphs_equal(pi.target, sigma)) {
        r.add("projection target is not the candidate quotient");
        return r;
    }
    auto vr = validate_plmap(pi);
    if (!vr.ok()) {
        r.add("projection invalid: " + vr.problems.front());
        return r;
    }
    for (const auto& [e, im] : pi.edge_map) {
        (void)e;
        if (im.crushed) r.add("projection crushes an edge");
    }
    if (!harmonicity(pi).harmonic) r.add("projection is not harmonic");
    for (const auto& el : a.elements)
        if (!plmaps_equal(compose(pi, el), pi)) {
            r.add("projection is not G-invariant");
            break;
        }

    // Surjectivity and fiber transitivity on vertices.
    OrbitFinder vof = vertex_orbits(a);
    std::map<int, std::vector<int>> vertex_fibers;
    for (const auto& v : a.graph.vertices()) vertex_fibers[pi.vertex_map.at(v.id)].push_back(v.id);
    for (const auto& v : sigma.vertices()) {
        auto it = vertex_fibers.find(v.id);
        if (it == vertex_fibers.end()) {
            r.add("vertex " + std::to_string(v.id) + " not in the image");
            continue;
        }
        for (int w : it->second)
            if (vof.find(w) != vof.find(it->second.front()))
                r.add("G is not transitive on the fiber of vertex " + std::to_string(v.id));
    }
    // Edge fibers.
    OrbitFinder eof;
    for (const auto& e : a.graph.edges()) eof.parent[e.id] = e.id;
    for (const auto& el : a.elements)
        for (const auto& [e, im] : el.edge_map) eof.unite(e, im.target);
    std::map<int, std::vector<int>> edge_fibers;
    for (const auto& [e, im] : pi.edge_map) edge_fibers[im.target].push_back(e);
    for (const auto& e : sigma.edges()) {
        auto it = edge_fibers.find(e.id);
        if (it == edge_fibers.end()) {
            r.add("edge " + std::to_string(e.id) + " not in the image");
            continue;
        }
        for (int f : it->second)
            if (eof.find(f) != eof.find(it->second.front()))
                r.add("G is not transitive on the fiber of edge " + std::to_string(e.id));
    }
    // pi^{-1}(boundary) = boundary.
    for (const auto& v : a.graph.vertices())
        if (v.boundary != sigma.is_boundary(pi.vertex_map.at(v.id)))
            r.add("boundary preimage mismatch at vertex " + std::to_string(v.id));
    return r;
}

PLMap factor_through_quotient(const QuotientResult& q, const PLMap& phi_prime) {
    if (!graphs_equal(phi_prime.source, q.projection.source))
        throw std::invalid_argument("factor_through_quotient: source mismatch");
    for (const auto& el : q.action.elements)
        if (!plmaps_equal(compose(phi_prime, el), phi_prime))
            throw std::invalid_argument("factor_through_quotient: map is not G-invariant");
    PLMap phi{q.graph, phi_prime.target, {}, {}};
    for (const auto& v : q.graph.vertices()) phi.vertex_map[v.id] = phi_prime.vertex_map.at(v.id);
    for (const auto& e : q.graph.edges()) {
        // The quotient edge id is its orbit representative in the source.
        phi.edge_map[e.id] = phi_prime.edge_map.at(e.id);
    }
    auto vr = validate_plmap(phi);
    if (!vr.ok())
        throw std::logic_error("factor_through_quotient: factorization invalid: " +
                               vr.problems.front());
    return phi;
}

InvariantCohomology invariant_cohomology(const GroupAction& input) {
    auto q = quotient_graph(input);
    const GroupAction& a = q.action;
    auto basis = cohomology_basis(a.graph, 3);

    InvariantCohomology out;
    out.quotient_dims = dolbeault_dimensions(q.graph);
    auto average = [&](auto pick) {
        Mat sum;
        for (const auto& el : a.elements) {
            auto pb = cohomology_pullback(el, basis, basis);
            Mat m = pick(pb);
            if (sum.empty())
                sum = m;
            else
                sum = mat_add(sum, m);
        }
        if (sum.empty()) return sum;
        return mat_scale(sum, Rational(1) / static_cast<long>(a.elements.size()));
    };
    out.projector00 = average([](const CohomologyPullback& p) { return p.h00; });
    out.projector10 = average([](const CohomologyPullback& p) { return p.h10; });
    out.projector01 = average([](const CohomologyPullback& p) { return p.h01; });
    out.projector11 = average([](const CohomologyPullback& p) { return p.h11; });
    out.invariant_ranks.h00 = static_cast<long>(rank(out.projector00));
    out.invariant_ranks.h10 = out.projector10.empty() ? 0 : static_cast<long>(rank(out.projector10));
    out.invariant_ranks.h01 = out.projector01.empty() ? 0 : static_cast<long>(rank(out.projector01));
    out.invariant_ranks.h11 = out.projector11.empty() ? 0 : static_cast<long>(rank(out.projector11));
    out.match = out.invariant_ranks == out.quotient_dims;
    return out;
}

}  // namespace graphforms
