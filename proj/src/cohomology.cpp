#include "graphforms/cohomology.hpp"

#include <algorithm>
#include <functional>

namespace graphforms {

namespace {

/// Incidence matrix rows restricted to interior vertices, plus the row
/// index of each vertex in the full matrix.
Mat interior_incidence(const WeightedMetricGraph& g) {
    Mat B = incidence_matrix(g);
    Mat rows;
    for (size_t i = 0; i < g.vertices().size(); ++i)
        if (!g.vertices()[i].boundary) rows.push_back(B[i]);
    if (rows.empty()) rows.push_back(Vec(g.edges().size(), Rational(0)));
    return rows;
}

struct Forest {
    std::vector<int> forest_edges;
    std::vector<int> nontree_edges;
    std::map<int, std::vector<EdgeEnd>> forest_adj;  // outgoing forest ends per vertex
};

/// Spanning forest grown by ascending edge id (deterministic).
Forest spanning_forest(const WeightedMetricGraph& g) {
    Forest f;
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& v : g.vertices()) parent[v.id] = v.id;
    for (const auto& e : g.edges()) {
        int a = find(e.tail), b = find(e.head);
        if (a == b) {
            f.nontree_edges.push_back(e.id);
        } else {
            parent[a] = b;
            f.forest_edges.push_back(e.id);
            f.forest_adj[e.tail].push_back({e.id, true});
            f.forest_adj[e.head].push_back({e.id, false});
        }
    }
    return f;
}

/// Path through the forest from one vertex to another in the same component.
std::vector<PathStep> forest_path(const WeightedMetricGraph& g, const Forest& f, int from, int to) {
    std::map<int, std::pair<int, bool>> via;  // vertex -> (edge, reversed) used to reach it
    std::vector<int> queue{from};
    via[from] = {-1, false};
    for (size_t qi = 0; qi < queue.size() && !via.count(to); ++qi) {
        int v = queue[qi];
        auto it = f.forest_adj.find(v);
        if (it == f.forest_adj.end()) continue;
        for (const auto& ee : it->second) {
            int w = g.end_target(ee);
            if (via.count(w)) continue;
            via[w] = {ee.edge, !ee.at_tail};
            queue.push_back(w);
        }
    }
    if (!via.count(to)) throw std::logic_error("forest_path: vertices not connected");
    std::vector<PathStep> rev;
    int cur = to;
    while (cur != from) {
        auto [eid, reversed] = via[cur];
        rev.push_back({eid, reversed});
        const Edge& e = g.edge(eid);
        cur = reversed ? e.head : e.tail;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

std::vector<bool> component_has_edge(const WeightedMetricGraph& g) {
    std::vector<bool> has(g.component_count(), false);
    for (const auto& e : g.edges()) has[g.component_of().at(e.tail)] = true;
    return has;
}

std::vector<bool> component_has_boundary(const WeightedMetricGraph& g) {
    std::vector<bool> has(g.component_count(), false);
    for (const auto& v : g.vertices())
        if (v.boundary) has[g.component_of().at(v.id)] = true;
    return has;
}

}  // namespace

DolbeaultDimensions dolbeault_dimensions(const WeightedMetricGraph& g) {
    DolbeaultDimensions d;
    d.h00 = g.component_count();
    Mat B = incidence_matrix(g);
    size_t rk = B.empty() || g.edges().empty() ? 0 : rank(B);
    d.h01 = static_cast<long>(g.edges().size() - rk);
    d.h10 = static_cast<long>(kernel_basis(interior_incidence(g)).size());
    if (g.edges().empty()) d.h10 = 0;
    auto has_edge = component_has_edge(g);
    auto has_bdy = component_has_boundary(g);
    for (int c = 0; c < g.component_count(); ++c)
        if (has_edge[c] && !has_bdy[c]) d.h11++;
    return d;
}

std::vector<DolbeaultDimensions> dolbeault_dimensions_per_component(const WeightedMetricGraph& g) {
    std::vector<DolbeaultDimensions> out;
    for (int c = 0; c < g.component_count(); ++c) {
        std::vector<int> eids;
        std::vector<int> viso;
        for (const auto& e : g.edges())
            if (g.component_of().at(e.tail) == c) eids.push_back(e.id);
        for (const auto& v : g.vertices())
            if (g.component_of().at(v.id) == c && g.valence(v.id) == 0) viso.push_back(v.id);
        out.push_back(dolbeault_dimensions(subgraph(g, eids, viso)));
    }
    return out;
}

DolbeaultDimensions dolbeault_closed_form(const WeightedMetricGraph& g) {
    DolbeaultDimensions total;
    auto per_genus = genus(g);
    auto has_edge = component_has_edge(g);
    std::vector<long> bdy_count(g.component_count(), 0);
    for (const auto& v : g.vertices())
        if (v.boundary) bdy_count[g.component_of().at(v.id)]++;
    for (int c = 0; c < g.component_count(); ++c) {
        long gg = per_genus[c].second;
        total.h00 += 1;
        total.h01 += gg;
        if (bdy_count[c] == 0) {
            total.h10 += gg;
            total.h11 += has_edge[c] ? 1 : 0;
        } else {
            total.h10 += gg + bdy_count[c] - 1;
        }
    }
    return total;
}

CohomologyBasis cohomology_basis(const WeightedMetricGraph& g, int order) {
    CohomologyBasis basis;
    basis.order = order;

    for (int c = 0; c < g.component_count(); ++c) {
        GraphForm ind = zero_form(g, BD00, order);
        for (const auto& e : g.edges())
            if (g.component_of().at(e.tail) == c)
                ind.coeff.at(e.id) = PiecewisePolynomial::constant(e.length, Rational(1), order);
        for (auto& [vid, val] : ind.vertex_values)
            if (g.component_of().at(vid) == c) val = 1;
        basis.h00.push_back(std::move(ind));
        basis.components.push_back(c);
    }

    // H^{1,0}: kernel of the interior incidence rows on the unweighting;
    // coefficients transported back divide by the weight.
    if (!g.edges().empty()) {
        for (const auto& c0 : kernel_basis(interior_incidence(g))) {
            GraphForm f = zero_form(g, BD10, order);
            Vec weighted(c0.size());
            for (size_t j = 0; j < g.edges().size(); ++j) {
                const Edge& e = g.edges()[j];
                weighted[j] = c0[j] / e.weight;
                f.coeff.at(e.id) = PiecewisePolynomial::constant(e.length, weighted[j], order);
            }
            basis.h10_vectors.push_back(std::move(weighted));
            basis.h10.push_back(std::move(f));
        }
    }

    Forest forest = spanning_forest(g);
    basis.forest_edges = forest.forest_edges;
    for (int eid : forest.nontree_edges) {
        const Edge& e = g.edge(eid);
        GraphForm w = zero_form(g, BD01, order);
        w.coeff.at(eid) = make_bump(e.length, e.length / 4, e.length * 3 / 4, order, Rational(1));
        basis.h01.push_back(std::move(w));
        basis.nontree_edges.push_back(eid);
        std::vector<PathStep> cycle{{eid, false}};
        for (const auto& step : forest_path(g, forest, e.head, e.tail)) cycle.push_back(step);
        basis.cycles.push_back(std::move(cycle));
    }

    auto has_edge = component_has_edge(g);
    auto has_bdy = component_has_boundary(g);
    for (int c = 0; c < g.component_count(); ++c) {
        if (!has_edge[c] || has_bdy[c]) continue;
        int lowest = -1;
        for (const auto& e : g.edges())
            if (g.component_of().at(e.tail) == c) {
                lowest = e.id;
                break;
            }
        const Edge& e = g.edge(lowest);
        GraphForm w = zero_form(g, BD11, order);
        w.coeff.at(lowest) = make_bump(e.length, e.length / 4, e.length * 3 / 4, order,
                                       Rational(1) / e.weight);
        basis.h11.push_back(std::move(w));
        basis.h11_components.push_back(c);
    }
    return basis;
}

Rational path_integral(const WeightedMetricGraph& g, const GraphForm& omega,
                       const std::vector<PathStep>& path) {
    if (!(omega.bidegree == BD01)) throw std::invalid_argument("path_integral: needs a (0,1)-form");
    // The unweighted integral of nu* omega over an edge equals the plain
    // integral of the stored coefficient, so no transport is needed.
    Rational total(0);
    for (const auto& step : path) {
        Rational part = omega.at(step.edge).integrate();
        total += step.reversed ? -part : part;
    }
    (void)g;
    return total;
}

namespace {

Rational component_integral(const WeightedMetricGraph& g, const GraphForm& f, int comp) {
    Rational total(0);
    for (const auto& e : g.edges())
        if (g.component_of().at(e.tail) == comp)
            total += Rational(e.weight) * f.at(e.id).integrate();
    return total;
}

DbarPreimage dbar_preimage_11(const WeightedMetricGraph& g, const GraphForm& omega) {
    DbarPreimage out;
    auto has_edge = component_has_edge(g);
    auto has_bdy = component_has_boundary(g);
    bool obstructed = false;
    for (int c = 0; c < g.component_count(); ++c) {
        if (!has_edge[c] || has_bdy[c]) continue;
        Rational total = component_integral(g, omega, c);
        out.obstruction.push_back(total);
        if (total != 0) obstructed = true;
    }
    if (obstructed) return out;

    auto [g0, corr] = unweight(g);
    (void)corr;
    GraphForm w0 = unweight_form(g, omega);

    // Vertex equations (B c)_v = m_v at interior vertices, m_v the sum of
    // mu_e over edges with head v.
    std::map<int, size_t> ecol;
    for (size_t j = 0; j < g0.edges().size(); ++j) ecol[g0.edges()[j].id] = j;
    std::vector<Rational> mu(g0.edges().size());
    for (size_t j = 0; j < g0.edges().size(); ++j) mu[j] = w0.at(g0.edges()[j].id).integrate();
    Mat rows;
    Vec rhs;
    for (const auto& v : g0.vertices()) {
        if (v.boundary || g0.valence(v.id) == 0) continue;
        Vec row(g0.edges().size(), Rational(0));
        Rational m(0);
        for (const auto& ee : g0.ends_at(v.id)) {
            row[ecol[ee.edge]] += ee.at_tail ? Rational(-1) : Rational(1);
            if (!ee.at_tail) m += mu[ecol[ee.edge]];
        }
        rows.push_back(std::move(row));
        rhs.push_back(m);
    }
    Vec constants(g0.edges().size(), Rational(0));
    if (!rows.empty()) {
        auto sol = solve(rows, rhs);
        if (!sol) throw std::logic_error("dbar_preimage: unobstructed system is inconsistent");
        constants = *sol;
    }

    GraphForm eta0{BD10, omega.order + 1, {}, {}};
    for (size_t j = 0; j < g0.edges().size(); ++j) {
        const Edge& e = g0.edges()[j];
        PiecewisePolynomial a = w0.at(e.id).antiderivative().scaled(Rational(-1));
        eta0.coeff.emplace(e.id, a + PiecewisePolynomial::constant(e.length, constants[j],
                                                                   a.order()));
    }
    out.success = true;
    out.preimage = reweight_form(g, eta0);
    return out;
}

DbarPreimage dbar_preimage_01(const WeightedMetricGraph& g, const GraphForm& omega) {
    DbarPreimage out;
    Forest forest = spanning_forest(g);
    bool obstructed = false;
    for (int eid : forest.nontree_edges) {
        const Edge& e = g.edge(eid);
        std::vector<PathStep> cycle{{eid, false}};
        for (const auto& step : forest_path(g, forest, e.head, e.tail)) cycle.push_back(step);
        Rational val = path_integral(g, omega, cycle);
        out.obstruction.push_back(val);
        if (val != 0) obstructed = true;
    }
    if (obstructed) return out;

    auto [g0, corr] = unweight(g);
    (void)corr;
    GraphForm w0 = unweight_form(g, omega);

    // Vertex potentials by forest transport from each component's base vertex.
    std::map<int, Rational> potential;
    std::vector<int> base(g.component_count(), -1);
    for (const auto& v : g.vertices()) {
        int c = g.component_of().at(v.id);
        if (base[c] == -1) base[c] = v.id;
    }
    for (int b : base) potential[b] = 0;
    std::vector<int> queue = base;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        auto it = forest.forest_adj.find(v);
        if (it == forest.forest_adj.end()) continue;
        for (const auto& ee : it->second) {
            int w = g.end_target(ee);
            if (potential.count(w)) continue;
            Rational step = w0.at(ee.edge).integrate();
            potential[w] = potential[v] + (ee.at_tail ? step : -step);
            queue.push_back(w);
        }
    }

    GraphForm eta0{BD00, omega.order + 1, {}, {}};
    for (const auto& e : g0.edges()) {
        PiecewisePolynomial a = w0.at(e.id).antiderivative();
        eta0.coeff.emplace(e.id, a + PiecewisePolynomial::constant(e.length, potential.at(e.tail),
                                                                   a.order()));
        if (potential.at(e.head) != eta0.coeff.at(e.id).evaluate(e.length))
            throw std::logic_error("dbar_preimage: potential inconsistent along an edge");
    }
    for (const auto& v : g0.vertices())
        if (g0.valence(v.id) == 0) eta0.vertex_values[v.id] = 0;
    out.success = true;
    out.preimage = reweight_form(g, eta0);
    return out;
}

}  // namespace

DbarPreimage dbar_preimage(const WeightedMetricGraph& g, const GraphForm& omega) {
    auto vr = validate_form(g, omega);
    if (!vr.ok()) throw std::invalid_argument("dbar_preimage: invalid form: " + vr.problems.front());
    if (omega.bidegree == BD11) return dbar_preimage_11(g, omega);
    if (omega.bidegree == BD01) return dbar_preimage_01(g, omega);
    throw std::invalid_argument("dbar_preimage: needs a (1,1)- or (0,1)-form");
}

Vec class_coordinates(const WeightedMetricGraph& g, const CohomologyBasis& basis,
                      const GraphForm& omega) {
    Vec coords;
    if (omega.bidegree == BD01) {
        for (const auto& cycle : basis.cycles) coords.push_back(path_integral(g, omega, cycle));
        return coords;
    }
    if (omega.bidegree == BD11) {
        for (int c : basis.h11_components) coords.push_back(component_integral(g, omega, c));
        return coords;
    }
    if (omega.bidegree == BD10) {
        Vec target;
        for (const auto& e : g.edges()) {
            const PiecewisePolynomial& c = omega.at(e.id);
            if (c.piece_count() != 1 || c.first_piece().degree() > 0)
                throw std::invalid_argument("class_coordinates: (1,0)-form is not d''-closed");
            target.push_back(c.first_piece().coeff(0));
        }
        if (basis.h10_vectors.empty()) {
            for (const auto& t : target)
                if (t != 0) throw std::invalid_argument("class_coordinates: no basis but nonzero form");
            return coords;
        }
        Mat cols(g.edges().size(), Vec(basis.h10_vectors.size()));
        for (size_t j = 0; j < basis.h10_vectors.size(); ++j)
            for (size_t i = 0; i < g.edges().size(); ++i) cols[i][j] = basis.h10_vectors[j][i];
        auto sol = solve(cols, target);
        if (!sol) throw std::invalid_argument("class_coordinates: form outside the (1,0) kernel");
        return *sol;
    }
    if (omega.bidegree == BD00) {
        // d''-closed (0,0)-forms are locally constant; report per-component values.
        std::vector<Rational> value(g.component_count());
        std::vector<bool> seen(g.component_count(), false);
        for (const auto& v : g.vertices()) {
            int c = g.component_of().at(v.id);
            if (!seen[c]) {
                value[c] = form_value_at_vertex(g, omega, v.id);
                seen[c] = true;
            }
        }
        for (int c : basis.components) coords.push_back(value[c]);
        return coords;
    }
    throw std::invalid_argument("class_coordinates: unsupported bidegree");
}

PoincarePairing poincare_pairing(const WeightedMetricGraph& g, const CohomologyBasis& basis) {
    PoincarePairing p;
    for (const auto& v : g.vertices()) {
        if (v.boundary) {
            p.reason = "boundary is nonempty";
            return p;
        }
        if (g.valence(v.id) == 0) {
            p.reason = "graph has isolated vertices";
            return p;
        }
    }
    p.applicable = true;
    for (size_t i = 0; i < basis.h00.size(); ++i)
        p.scalar.push_back(integrate_graph(g, wedge(g, basis.h00[i], basis.h11[i])));
    p.gram.assign(basis.h10.size(), Vec(basis.h01.size(), Rational(0)));
    for (size_t i = 0; i < basis.h10.size(); ++i)
        for (size_t j = 0; j < basis.h01.size(); ++j)
            p.gram[i][j] = integrate_graph(g, wedge(g, basis.h10[i], basis.h01[j]));
    p.perfect = basis.h10.size() == basis.h01.size();
    for (const auto& s : p.scalar)
        if (s == 0) p.perfect = false;
    if (p.perfect && !p.gram.empty() && det(p.gram) == 0) p.perfect = false;
    return p;
}

CohomologyPullback cohomology_pullback(const PLMap& m, const CohomologyBasis& source_basis,
                                       const CohomologyBasis& target_basis) {
    CohomologyPullback out;
    auto fill = [&](const std::vector<GraphForm>& tgt, size_t src_dim) {
        Mat mat(src_dim, Vec(tgt.size(), Rational(0)));
        for (size_t j = 0; j < tgt.size(); ++j) {
            Vec col = class_coordinates(m.source, source_basis, pullback_form(m, tgt[j]));
            for (size_t i = 0; i < src_dim; ++i) mat[i][j] = col[i];
        }
        return mat;
    };
    out.h00 = fill(target_basis.h00, source_basis.h00.size());
    out.h10 = fill(target_basis.h10, source_basis.h10.size());
    out.h01 = fill(target_basis.h01, source_basis.h01.size());
    out.h11 = fill(target_basis.h11, source_basis.h11.size());
    return out;
}

}  // namespace graphforms
