#include "graphforms/forms.hpp"

#include <algorithm>

namespace graphforms {

const PiecewisePolynomial& GraphForm::at(int edge_id) const {
    auto it = coeff.find(edge_id);
    if (it == coeff.end())
        throw std::invalid_argument("form: no coefficient for edge " + std::to_string(edge_id));
    return it->second;
}

GraphForm GraphForm::operator+(const GraphForm& o) const {
    if (!(bidegree == o.bidegree)) throw std::invalid_argument("form: bidegree mismatch in sum");
    GraphForm r = *this;
    r.order = std::min(order, o.order);
    for (auto& [eid, f] : r.coeff) f = (f + o.at(eid)).with_order(r.order);
    for (auto& [vid, v] : r.vertex_values) v += o.vertex_values.at(vid);
    return r;
}

GraphForm GraphForm::operator-(const GraphForm& o) const { return *this + o.scaled(Rational(-1)); }

GraphForm GraphForm::scaled(const Rational& s) const {
    GraphForm r = *this;
    for (auto& [eid, f] : r.coeff) {
        (void)eid;
        f = f.scaled(s);
    }
    for (auto& [vid, v] : r.vertex_values) {
        (void)vid;
        v *= s;
    }
    return r;
}

bool GraphForm::is_zero() const {
    for (const auto& [eid, f] : coeff) {
        (void)eid;
        if (!f.is_zero()) return false;
    }
    for (const auto& [vid, v] : vertex_values) {
        (void)vid;
        if (v != 0) return false;
    }
    return true;
}

bool GraphForm::same_form(const GraphForm& o) const {
    if (!(bidegree == o.bidegree) || coeff.size() != o.coeff.size() ||
        vertex_values != o.vertex_values)
        return false;
    for (const auto& [eid, f] : coeff) {
        auto it = o.coeff.find(eid);
        if (it == o.coeff.end() || !f.same_function(it->second)) return false;
    }
    return true;
}

GraphForm zero_form(const WeightedMetricGraph& g, Bidegree bd, int order) {
    GraphForm f{bd, order, {}, {}};
    for (const auto& e : g.edges())
        f.coeff.emplace(e.id, PiecewisePolynomial::constant(e.length, Rational(0), order));
    if (bd == BD00)
        for (const auto& v : g.vertices())
            if (g.valence(v.id) == 0) f.vertex_values[v.id] = 0;
    return f;
}

GraphForm constant_function(const WeightedMetricGraph& g, const Rational& value, int order) {
    GraphForm f = zero_form(g, BD00, order);
    for (auto& [eid, c] : f.coeff) {
        (void)eid;
        c = PiecewisePolynomial::constant(c.length(), value, order);
    }
    for (auto& [vid, v] : f.vertex_values) {
        (void)vid;
        v = value;
    }
    return f;
}

PiecewisePolynomial outgoing_coefficient(const GraphForm& f, const EdgeEnd& end) {
    const PiecewisePolynomial& stored = f.at(end.edge);
    if (end.at_tail) return stored;
    PiecewisePolynomial r = stored.reversed();
    return reversal_sign(f.bidegree) < 0 ? -r : r;
}

Rational form_value_at_vertex(const WeightedMetricGraph& g, const GraphForm& f, int vertex_id) {
    if (!(f.bidegree == BD00)) throw std::invalid_argument("form value: needs a (0,0)-form");
    const auto& ends = g.ends_at(vertex_id);
    if (ends.empty()) return f.vertex_values.at(vertex_id);
    return outgoing_coefficient(f, ends.front()).evaluate(Rational(0));
}

ValidationReport validate_form(const WeightedMetricGraph& g, const GraphForm& f) {
    ValidationReport r;
    const Bidegree bd = f.bidegree;
    if ((bd.p != 0 && bd.p != 1) || (bd.q != 0 && bd.q != 1)) {
        r.add("bidegree out of range");
        return r;
    }
    for (const auto& e : g.edges()) {
        auto it = f.coeff.find(e.id);
        if (it == f.coeff.end()) {
            r.add("missing coefficient for edge " + std::to_string(e.id));
            continue;
        }
        if (it->second.length() != e.length)
            r.add("coefficient domain mismatch on edge " + std::to_string(e.id));
        if (it->second.order() != f.order)
            r.add("smoothness order mismatch on edge " + std::to_string(e.id));
    }
    for (const auto& [eid, c] : f.coeff) {
        (void)c;
        if (!g.has_edge(eid)) r.add("coefficient for unknown edge " + std::to_string(eid));
    }
    if (!r.ok()) return r;

    if (bd == BD00) {
        for (const auto& v : g.vertices()) {
            if (g.valence(v.id) == 0 && !f.vertex_values.count(v.id))
                r.add("missing value at isolated vertex " + std::to_string(v.id));
        }
        for (const auto& [vid, val] : f.vertex_values) {
            (void)val;
            if (!g.has_vertex(vid) || g.valence(vid) != 0)
                r.add("vertex value at non-isolated vertex " + std::to_string(vid));
        }
    } else if (!f.vertex_values.empty()) {
        r.add("vertex values only allowed for (0,0)-forms");
    }
    if (!r.ok()) return r;

    for (const auto& v : g.vertices()) {
        const auto& ends = g.ends_at(v.id);
        if (ends.empty()) continue;
        std::vector<PiecewisePolynomial> germs;
        germs.reserve(ends.size());
        for (const auto& ee : ends) germs.push_back(outgoing_coefficient(f, ee));

        // Continuity of functions holds at every vertex, boundary included.
        if (bd == BD00) {
            Rational v0 = germs[0].evaluate(Rational(0));
            for (size_t i = 1; i < germs.size(); ++i)
                if (germs[i].evaluate(Rational(0)) != v0) {
                    r.add("discontinuous at vertex " + std::to_string(v.id));
                    break;
                }
        }
        if (v.boundary) continue;

        auto weight_of = [&](size_t i) { return Rational(g.edge(ends[i].edge).weight); };
        if (ends.size() == 1) {
            if (bd == BD00) {
                if (!germs[0].first_piece().is_constant())
                    r.add("(0,0)-form not constant near interior leaf " + std::to_string(v.id) +
                          "");
            } else if (!germs[0].first_piece().is_zero()) {
                r.add("coefficient not zero near interior leaf " + std::to_string(v.id));
            }
        } else if (ends.size() == 2) {
            Rational w1 = weight_of(0), w2 = weight_of(1);
            PiecewisePolynomial a = germs[0], b = germs[1];
            if (bd == BD10 || bd == BD01) {
                a = a.scaled(w1);
                b = b.scaled(-w2);
            } else if (bd == BD11) {
                a = a.scaled(w1 * w1);
                b = b.scaled(w2 * w2);
            }
            if (!check_vertex_glue(a, b, w1, w2, f.order))
                r.add("glue condition fails at valence-2 vertex " + std::to_string(v.id));
        } else {
            if (bd == BD00) {
                Rational s(0);
                for (size_t i = 0; i < germs.size(); ++i)
                    s += weight_of(i) * germs[i].jet_at_start(1);
                if (s != 0)
                    r.add("weighted outgoing slopes do not balance at vertex " +
                          std::to_string(v.id));
            } else if (bd == BD10 || bd == BD01) {
                Rational s(0);
                for (size_t i = 0; i < germs.size(); ++i)
                    s += weight_of(i) * germs[i].evaluate(Rational(0));
                if (s != 0)
                    r.add("weighted outgoing values do not balance at vertex " +
                          std::to_string(v.id));
            }
            // (1,1): no condition at valence > 2.
        }
    }
    return r;
}

namespace {

GraphForm differentiated(const GraphForm& f, Bidegree out, const Rational& sign) {
    if (f.order < 1) throw std::invalid_argument("differential: smoothness order 0");
    GraphForm r{out, f.order - 1, {}, {}};
    for (const auto& [eid, c] : f.coeff) r.coeff.emplace(eid, c.derivative().scaled(sign));
    return r;
}

}  // namespace

GraphForm d_first(const WeightedMetricGraph& g, const GraphForm& f) {
    (void)g;
    if (f.bidegree == BD00) return differentiated(f, BD10, Rational(1));
    if (f.bidegree == BD01) return differentiated(f, BD11, Rational(1));
    throw std::invalid_argument("d_first: needs a (0,q)-form");
}

GraphForm d_second(const WeightedMetricGraph& g, const GraphForm& f) {
    (void)g;
    if (f.bidegree == BD00) return differentiated(f, BD01, Rational(1));
    if (f.bidegree == BD10) return differentiated(f, BD11, Rational(-1));
    throw std::invalid_argument("d_second: needs a (p,0)-form");
}

GraphForm wedge(const WeightedMetricGraph& g, const GraphForm& a, const GraphForm& b) {
    Bidegree out{a.bidegree.p + b.bidegree.p, a.bidegree.q + b.bidegree.q};
    if (out.p > 1 || out.q > 1) throw std::invalid_argument("wedge: bidegree overflow");
    int order = std::min(a.order, b.order);
    GraphForm r{out, order, {}, {}};
    for (const auto& [eid, ca] : a.coeff) r.coeff.emplace(eid, (ca * b.at(eid)).with_order(order));
    if (out == BD00)
        for (const auto& [vid, va] : a.vertex_values)
            r.vertex_values[vid] = va * b.vertex_values.at(vid);
    // Alternating rule: the only anticommuting case in range is (0,1)^(1,0).
    if (a.bidegree == BD01 && b.bidegree == BD10) r = r.scaled(Rational(-1));
    (void)g;
    return r;
}

GraphForm lagerberg_involution(const GraphForm& f) {
    GraphForm r = f;
    r.bidegree = Bidegree{f.bidegree.q, f.bidegree.p};
    if (f.bidegree == BD11) r = r.scaled(Rational(-1));
    return r;
}

Rational integrate_graph(const WeightedMetricGraph& g, const GraphForm& f) {
    if (!(f.bidegree == BD11)) throw std::invalid_argument("integrate_graph: needs a (1,1)-form");
    Rational total(0);
    for (const auto& e : g.edges()) total += Rational(e.weight) * f.at(e.id).integrate();
    return total;
}

namespace {

/// Contribution of one stored edge end to the boundary sum at its vertex.
Rational boundary_term(const WeightedMetricGraph& g, const GraphForm& f, const EdgeEnd& ee) {
    const Edge& e = g.edge(ee.edge);
    const PiecewisePolynomial& c = f.at(ee.edge);
    Rational w(e.weight);
    if (f.bidegree == BD10)  // outgoing-edge convention
        return ee.at_tail ? w * c.evaluate(Rational(0)) : -w * c.evaluate(c.length());
    if (f.bidegree == BD01)  // incoming-edge convention
        return ee.at_tail ? -w * c.evaluate(Rational(0)) : w * c.evaluate(c.length());
    throw std::invalid_argument("integrate_boundary: needs a (1,0)- or (0,1)-form");
}

}  // namespace

Rational integrate_boundary(const WeightedMetricGraph& g, const GraphForm& f) {
    Rational total(0);
    for (const auto& v : g.vertices()) {
        if (!v.boundary) continue;
        for (const auto& ee : g.ends_at(v.id)) total += boundary_term(g, f, ee);
    }
    return total;
}

Rational integrate_boundary_all_vertices(const WeightedMetricGraph& g, const GraphForm& f) {
    Rational total(0);
    for (const auto& v : g.vertices())
        for (const auto& ee : g.ends_at(v.id)) total += boundary_term(g, f, ee);
    return total;
}

StokesResult stokes_check(const WeightedMetricGraph& g, const GraphForm& f) {
    GraphForm df = (f.bidegree == BD10) ? d_second(g, f) : d_first(g, f);
    StokesResult r;
    r.lhs = integrate_graph(g, df);
    r.rhs = integrate_boundary(g, f);
    r.equal = (r.lhs == r.rhs);
    return r;
}

GraphForm unweight_form(const WeightedMetricGraph& g, const GraphForm& f) {
    GraphForm r = f;
    for (auto& [eid, c] : r.coeff) {
        const Edge& e = g.edge(eid);
        Rational scale(1);
        for (int i = 0; i < f.bidegree.total(); ++i) scale *= e.weight;
        c = c.rescaled_domain(e.length / e.weight).scaled(scale);
    }
    return r;
}

GraphForm reweight_form(const WeightedMetricGraph& g, const GraphForm& f0) {
    GraphForm r = f0;
    for (auto& [eid, c] : r.coeff) {
        const Edge& e = g.edge(eid);
        Rational scale(1);
        for (int i = 0; i < f0.bidegree.total(); ++i) scale *= e.weight;
        c = c.rescaled_domain(e.length).scaled(1 / scale);
    }
    return r;
}

GraphForm subdivide_form(const WeightedMetricGraph& subdivided, const GraphCorrespondence& corr,
                         const GraphForm& f) {
    GraphForm r{f.bidegree, f.order, {}, f.vertex_values};
    int sign = reversal_sign(f.bidegree);
    for (const auto& [src_eid, tiles] : corr.edge_map) {
        const PiecewisePolynomial& c = f.at(src_eid);
        for (const auto& tile : tiles) {
            PiecewisePolynomial part = c.restricted(tile.source_start, tile.source_end);
            if (tile.reversed) {
                part = part.reversed();
                if (sign < 0) part = -part;
            }
            r.coeff.emplace(tile.target_edge, std::move(part));
        }
    }
    (void)subdivided;
    return r;
}

}  // namespace graphforms
