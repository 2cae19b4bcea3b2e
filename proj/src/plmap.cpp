#include "graphforms/plmap.hpp"

#include "graphforms/linalg.hpp"

#include <algorithm>

namespace graphforms {

PLMap PLMap::identity(const WeightedMetricGraph& g) {
    PLMap m{g, g, {}, {}};
    for (const auto& v : g.vertices()) m.vertex_map[v.id] = v.id;
    for (const auto& e : g.edges()) m.edge_map[e.id] = {false, e.id, false};
    return m;
}

Rational PLMap::expansion(int source_edge) const {
    const EdgeImage& im = edge_map.at(source_edge);
    if (im.crushed) return Rational(0);
    return target.edge(im.target).length / source.edge(source_edge).length;
}

std::optional<EdgeEnd> PLMap::image_end(const EdgeEnd& end) const {
    const EdgeImage& im = edge_map.at(end.edge);
    if (im.crushed) return std::nullopt;
    return EdgeEnd{im.target, end.at_tail ? !im.reversed : im.reversed};
}

bool PLMap::nonconstant_near(int source_vertex) const {
    for (const auto& ee : source.ends_at(source_vertex))
        if (!edge_map.at(ee.edge).crushed) return true;
    return false;
}

ValidationReport validate_plmap(const PLMap& m) {
    ValidationReport r;
    for (const auto& v : m.source.vertices()) {
        auto it = m.vertex_map.find(v.id);
        if (it == m.vertex_map.end())
            r.add("no image for vertex " + std::to_string(v.id));
        else if (!m.target.has_vertex(it->second))
            r.add("vertex " + std::to_string(v.id) + " maps to unknown vertex");
    }
    for (const auto& e : m.source.edges()) {
        auto it = m.edge_map.find(e.id);
        if (it == m.edge_map.end()) {
            r.add("no image for edge " + std::to_string(e.id));
            continue;
        }
        const EdgeImage& im = it->second;
        if (im.crushed) {
            if (!m.target.has_vertex(im.target)) {
                r.add("edge " + std::to_string(e.id) + " crushed to unknown vertex");
                continue;
            }
            if (m.vertex_map.at(e.tail) != im.target || m.vertex_map.at(e.head) != im.target)
                r.add("crushed edge " + std::to_string(e.id) + " has endpoints mapping elsewhere");
        } else {
            if (!m.target.has_edge(im.target)) {
                r.add("edge " + std::to_string(e.id) + " maps to unknown edge");
                continue;
            }
            const Edge& te = m.target.edge(im.target);
            int want_tail = im.reversed ? te.head : te.tail;
            int want_head = im.reversed ? te.tail : te.head;
            if (m.vertex_map.at(e.tail) != want_tail || m.vertex_map.at(e.head) != want_head)
                r.add("edge map incompatible with vertex map on edge " + std::to_string(e.id));
        }
    }
    if (!r.ok()) return r;
    // Def. of piecewise linear maps, condition (3): a vertex mapping into the
    // target boundary, near which the map is nonconstant, must be boundary.
    for (const auto& v : m.source.vertices()) {
        int image = m.vertex_map.at(v.id);
        if (m.target.is_boundary(image) && !v.boundary && m.nonconstant_near(v.id))
            r.add("interior vertex " + std::to_string(v.id) +
                  " maps non-constantly onto the target boundary");
    }
    return r;
}

HarmonicityResult harmonicity(const PLMap& m) {
    HarmonicityResult res;
    auto vr = validate_plmap(m);
    if (!vr.ok()) {
        res.failure = "invalid map: " + vr.problems.front();
        return res;
    }
    res.harmonic = true;
    for (const auto& v : m.source.vertices()) {
        if (v.boundary) continue;
        int image = m.vertex_map.at(v.id);
        // Sum 1/l0(e') over outgoing source edges above each outgoing target edge.
        std::map<std::pair<int, bool>, Rational> sums;
        bool any = false;
        for (const auto& ee : m.source.ends_at(v.id)) {
            auto te = m.image_end(ee);
            if (!te) continue;
            any = true;
            sums[{te->edge, te->at_tail}] += 1 / m.source.length0(ee.edge);
        }
        if (!any) {
            res.local_degree[v.id] = 0;  // constant near v (or isolated)
            continue;
        }
        std::optional<Rational> common;
        for (const auto& te : m.target.ends_at(image)) {
            auto it = sums.find({te.edge, te.at_tail});
            Rational d = (it == sums.end()) ? Rational(0)
                                            : m.target.length0(te.edge) * it->second;
            if (!common) {
                common = d;
            } else if (*common != d) {
                res.harmonic = false;
                if (res.failure.empty())
                    res.failure = "local degree at vertex " + std::to_string(v.id) +
                                  " depends on the target edge (" + common->str() + " vs " +
                                  d.str() + " on edge " + std::to_string(te.edge) + ")";
            }
        }
        res.local_degree[v.id] = common.value_or(Rational(0));
    }
    // Degrees above target edges.
    std::map<int, Rational> inv_sums;
    for (const auto& e : m.target.edges()) inv_sums[e.id] = 0;
    for (const auto& [eid, im] : m.edge_map)
        if (!im.crushed) inv_sums[im.target] += 1 / m.source.length0(eid);
    bool constant_degree = true;
    std::optional<Rational> deg;
    for (const auto& e : m.target.edges()) {
        Rational d = m.target.length0(e.id) * inv_sums[e.id];
        res.edge_degree[e.id] = d;
        if (!deg)
            deg = d;
        else if (*deg != d)
            constant_degree = false;
    }
    if (deg && constant_degree && res.harmonic) res.degree = *deg;
    return res;
}

GraphForm pullback_form(const PLMap& m, const GraphForm& f) {
    auto h = harmonicity(m);
    if (!h.harmonic) throw std::invalid_argument("pullback_form: map is not harmonic: " + h.failure);
    const int total = f.bidegree.total();
    const int sign = reversal_sign(f.bidegree);
    GraphForm r{f.bidegree, f.order, {}, {}};
    for (const auto& e : m.source.edges()) {
        const EdgeImage& im = m.edge_map.at(e.id);
        if (im.crushed) {
            Rational value = (f.bidegree == BD00)
                                 ? form_value_at_vertex(m.target, f, im.target)
                                 : Rational(0);
            r.coeff.emplace(e.id, PiecewisePolynomial::constant(e.length, value, f.order));
            continue;
        }
        PiecewisePolynomial base = f.at(im.target);
        if (im.reversed) {
            base = base.reversed();
            if (sign < 0) base = -base;
        }
        Rational d = m.expansion(e.id);
        Rational scale(1);
        for (int i = 0; i < total; ++i) scale *= d;
        r.coeff.emplace(e.id, base.rescaled_domain(e.length).scaled(scale));
    }
    if (f.bidegree == BD00)
        for (const auto& v : m.source.vertices())
            if (m.source.valence(v.id) == 0)
                r.vertex_values[v.id] = form_value_at_vertex(m.target, f, m.vertex_map.at(v.id));
    return r;
}

PLMap compose(const PLMap& phi, const PLMap& psi) {
    if (!graphs_equal(psi.target, phi.source))
        throw std::invalid_argument("compose: middle graphs differ (align subdivisions first)");
    PLMap r{psi.source, phi.target, {}, {}};
    for (const auto& [v, w] : psi.vertex_map) r.vertex_map[v] = phi.vertex_map.at(w);
    for (const auto& [e, im] : psi.edge_map) {
        if (im.crushed) {
            r.edge_map[e] = {true, phi.vertex_map.at(im.target), false};
            continue;
        }
        const EdgeImage& im2 = phi.edge_map.at(im.target);
        if (im2.crushed)
            r.edge_map[e] = {true, im2.target, false};
        else
            r.edge_map[e] = {false, im2.target, im.reversed != im2.reversed};
    }
    return r;
}

namespace {

/// Target vertex sitting at a given position of an old edge after subdividing.
int vertex_at_position(const WeightedMetricGraph& old_graph, const WeightedMetricGraph& subdivided,
                       const GraphCorrespondence& corr, int old_edge, const Rational& pos) {
    const Edge& e = old_graph.edge(old_edge);
    if (pos == 0) return e.tail;
    if (pos == e.length) return e.head;
    for (const auto& tile : corr.edge_map.at(old_edge))
        if (tile.source_start == pos) return subdivided.edge(tile.target_edge).tail;
    throw std::invalid_argument("no subdivision vertex at position " + pos.str());
}

}  // namespace

PLMap refine_target(const PLMap& m, const std::vector<std::pair<int, Rational>>& target_points) {
    // Deduplicate and drop endpoint positions.
    std::map<int, std::vector<Rational>> per_edge;
    for (const auto& [eid, pos] : target_points) {
        const Edge& e = m.target.edge(eid);
        if (pos == 0 || pos == e.length) continue;
        auto& v = per_edge[eid];
        if (std::find(v.begin(), v.end(), pos) == v.end()) v.push_back(pos);
    }
    std::vector<std::pair<int, Rational>> tgt_pts;
    for (auto& [eid, ps] : per_edge) {
        std::sort(ps.begin(), ps.end());
        for (const auto& p : ps) tgt_pts.emplace_back(eid, p);
    }
    auto [t2, corr_t] = subdivide(m.target, tgt_pts);

    // Preimages on every source edge above a subdivided target edge.
    std::vector<std::pair<int, Rational>> src_pts;
    for (const auto& e : m.source.edges()) {
        const EdgeImage& im = m.edge_map.at(e.id);
        if (im.crushed || !per_edge.count(im.target)) continue;
        Rational d = m.expansion(e.id);
        for (const auto& p : per_edge.at(im.target))
            src_pts.emplace_back(e.id, im.reversed ? Rational(e.length - p / d) : Rational(p / d));
    }
    auto [s2, corr_s] = subdivide(m.source, src_pts);

    PLMap r{s2, t2, {}, {}};
    for (const auto& [v, w] : m.vertex_map) r.vertex_map[v] = w;
    for (const auto& e : m.source.edges()) {
        const EdgeImage& im = m.edge_map.at(e.id);
        const auto& stiles = corr_s.edge_map.at(e.id);
        if (im.crushed) {
            for (const auto& tile : stiles) r.edge_map[tile.target_edge] = im;
            for (size_t i = 0; i + 1 < stiles.size(); ++i)
                r.vertex_map[s2.edge(stiles[i + 1].target_edge).tail] = im.target;
            continue;
        }
        const auto& ttiles = corr_t.edge_map.at(im.target);
        if (stiles.size() != ttiles.size())
            throw std::logic_error("refine_target: tile count mismatch");
        Rational d = m.expansion(e.id);
        size_t n = stiles.size();
        for (size_t i = 0; i < n; ++i) {
            const auto& tt = ttiles[im.reversed ? n - 1 - i : i];
            r.edge_map[stiles[i].target_edge] = {false, tt.target_edge, im.reversed};
        }
        for (size_t i = 0; i + 1 < n; ++i) {
            int nv = s2.edge(stiles[i + 1].target_edge).tail;
            Rational x = stiles[i + 1].source_start;
            Rational p = im.reversed ? Rational(m.target.edge(im.target).length - d * x) : Rational(d * x);
            r.vertex_map[nv] = vertex_at_position(m.target, t2, corr_t, im.target, p);
        }
    }
    return r;
}

PLMap refine_source(const PLMap& m, const std::vector<std::pair<int, Rational>>& source_points) {
    std::vector<std::pair<int, Rational>> tgt_pts;
    std::vector<std::pair<int, Rational>> crushed_pts;
    for (const auto& [eid, x] : source_points) {
        const EdgeImage& im = m.edge_map.at(eid);
        if (im.crushed) {
            crushed_pts.emplace_back(eid, x);
            continue;
        }
        Rational d = m.expansion(eid);
        tgt_pts.emplace_back(im.target,
                             im.reversed ? Rational(m.target.edge(im.target).length - d * x)
                                         : Rational(d * x));
    }
    PLMap r = refine_target(m, tgt_pts);
    if (crushed_pts.empty()) return r;

    // Crushed edges were untouched by refine_target (single tile, same id).
    auto [s2, corr] = subdivide(r.source, crushed_pts);
    PLMap out{s2, r.target, r.vertex_map, {}};
    for (const auto& e : r.source.edges()) {
        const EdgeImage& im = r.edge_map.at(e.id);
        const auto& tiles = corr.edge_map.at(e.id);
        for (const auto& tile : tiles) out.edge_map[tile.target_edge] = im;
        for (size_t i = 0; i + 1 < tiles.size(); ++i) {
            if (!im.crushed) throw std::logic_error("refine_source: unexpected split");
            out.vertex_map[s2.edge(tiles[i + 1].target_edge).tail] = im.target;
        }
    }
    return out;
}

bool plmaps_equal(const PLMap& a, const PLMap& b) {
    if (!graphs_equal(a.source, b.source) || !graphs_equal(a.target, b.target)) return false;
    if (a.vertex_map != b.vertex_map) return false;
    if (a.edge_map.size() != b.edge_map.size()) return false;
    for (const auto& [e, im] : a.edge_map) {
        auto it = b.edge_map.find(e);
        if (it == b.edge_map.end()) return false;
        const EdgeImage& jm = it->second;
        if (im.crushed != jm.crushed || im.target != jm.target) return false;
        if (!im.crushed && im.reversed != jm.reversed) return false;
    }
    return true;
}

PullbackIntegralCheck integrate_pullback_check(const PLMap& m, const GraphForm& f) {
    auto h = harmonicity(m);
    if (!h.harmonic) throw std::invalid_argument("integrate_pullback_check: not harmonic");
    if (!h.degree) throw std::invalid_argument("integrate_pullback_check: no well-defined degree");
    GraphForm pb = pullback_form(m, f);
    PullbackIntegralCheck c;
    if (f.bidegree == BD11) {
        c.lhs = integrate_graph(m.source, pb);
        c.rhs = *h.degree * integrate_graph(m.target, f);
    } else {
        c.lhs = integrate_boundary(m.source, pb);
        c.rhs = *h.degree * integrate_boundary(m.target, f);
    }
    c.equal = (c.lhs == c.rhs);
    return c;
}

HarmonicFunctionReport is_harmonic_function(const WeightedMetricGraph& g, const GraphForm& f) {
    HarmonicFunctionReport rep;
    if (!(f.bidegree == BD00)) {
        rep.failure = "not a (0,0)-form";
        return rep;
    }
    auto vr = validate_form(g, f);
    if (!vr.ok()) {
        rep.failure = "not a smooth function: " + vr.problems.front();
        return rep;
    }
    rep.harmonic = true;
    rep.integer_slopes = true;
    for (const auto& [eid, c] : f.coeff) {
        if (c.piece_count() != 1 || c.first_piece().degree() > 1) {
            rep.harmonic = false;
            rep.failure = "not linear on edge " + std::to_string(eid);
            return rep;
        }
        Rational slope = c.first_piece().coeff(1);
        rep.slopes[eid] = slope;
        if (!is_integer(slope)) rep.integer_slopes = false;
    }
    return rep;
}

std::vector<HarmonicBasisElement> harmonic_function_space(const WeightedMetricGraph& g) {
    std::vector<int> vids;
    for (const auto& v : g.vertices()) vids.push_back(v.id);
    std::map<int, size_t> col;
    for (size_t i = 0; i < vids.size(); ++i) col[vids[i]] = i;

    Mat rows;
    for (const auto& v : g.vertices()) {
        if (v.boundary || g.valence(v.id) == 0) continue;
        Vec row(vids.size(), Rational(0));
        for (const auto& ee : g.ends_at(v.id)) {
            const Edge& e = g.edge(ee.edge);
            Rational c = Rational(e.weight) / e.length;
            row[col[g.end_target(ee)]] += c;
            row[col[v.id]] -= c;
        }
        rows.push_back(std::move(row));
    }

    std::vector<Vec> basis;
    if (rows.empty()) {
        basis = kernel_basis(Mat{Vec(vids.size(), Rational(0))});
    } else {
        basis = kernel_basis(rows);
    }
    std::vector<HarmonicBasisElement> out;
    for (const auto& vec : basis) {
        HarmonicBasisElement h;
        for (size_t i = 0; i < vids.size(); ++i) h.vertex_values[vids[i]] = vec[i];
        for (const auto& e : g.edges())
            h.slopes[e.id] = (h.vertex_values[e.head] - h.vertex_values[e.tail]) / e.length;
        out.push_back(std::move(h));
    }
    return out;
}

PLMap unweighting_map(const WeightedMetricGraph& g) {
    auto [g0, corr] = unweight(g);
    (void)corr;
    PLMap m{g0, g, {}, {}};
    for (const auto& v : g.vertices()) m.vertex_map[v.id] = v.id;
    for (const auto& e : g.edges()) m.edge_map[e.id] = {false, e.id, false};
    return m;
}

std::pair<WeightedMetricGraph, PLMap> modify(const WeightedMetricGraph& g,
                                             const std::vector<TreeAttachment>& trees) {
    std::vector<Vertex> vertices = g.vertices();
    std::vector<Edge> edges = g.edges();
    PLMap retraction;
    std::map<int, int> vmap;
    std::map<int, EdgeImage> emap;
    for (const auto& v : g.vertices()) vmap[v.id] = v.id;
    for (const auto& e : g.edges()) emap[e.id] = {false, e.id, false};

    int next_v = g.max_vertex_id() + 1;
    int next_e = g.max_edge_id() + 1;
    for (const auto& att : trees) {
        g.vertex(att.at_vertex);
        if (!validate_graph(att.tree).ok())
            throw std::invalid_argument("modify: attached graph is invalid");
        if (att.tree.component_count() != 1 || total_genus(att.tree) != 0)
            throw std::invalid_argument("modify: attached graph is not a tree");
        att.tree.vertex(att.root);
        for (const auto& v : att.tree.vertices())
            if (v.boundary) throw std::invalid_argument("modify: attached tree has boundary vertices");
        std::map<int, int> relabel;
        relabel[att.root] = att.at_vertex;
        for (const auto& v : att.tree.vertices()) {
            if (v.id == att.root) continue;
            relabel[v.id] = next_v;
            vertices.push_back({next_v, false});
            vmap[next_v] = att.at_vertex;
            ++next_v;
        }
        for (const auto& e : att.tree.edges()) {
            edges.push_back({next_e, relabel[e.tail], relabel[e.head], e.length, e.weight});
            emap[next_e] = {true, att.at_vertex, false};
            ++next_e;
        }
    }
    WeightedMetricGraph modified(std::move(vertices), std::move(edges));
    retraction.source = modified;
    retraction.target = g;
    retraction.vertex_map = std::move(vmap);
    retraction.edge_map = std::move(emap);
    return {std::move(modified), std::move(retraction)};
}

PLMap modification_inclusion(const WeightedMetricGraph& g, const WeightedMetricGraph& modified) {
    PLMap m{g, modified, {}, {}};
    for (const auto& v : g.vertices()) m.vertex_map[v.id] = v.id;
    for (const auto& e : g.edges()) m.edge_map[e.id] = {false, e.id, false};
    return m;
}

}  // namespace graphforms
