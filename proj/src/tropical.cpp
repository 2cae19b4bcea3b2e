#include "graphforms/tropical.hpp"

#include <algorithm>

namespace graphforms {

Rational GammaGroup::modulus() const {
    Rational c(0);
    for (const auto& g : generators) {
        if (g <= 0) throw std::invalid_argument("gamma: generators must be positive");
        c = rational_gcd(c, g);
    }
    return c;
}

bool GammaGroup::contains(const Rational& x) const {
    if (x == 0) return true;
    Rational c = modulus();
    if (c == 0) return false;
    return is_integer(x / c);
}

bool GammaGroup::saturation_contains(const Rational& x) const {
    if (x == 0) return true;
    return modulus() != 0;  // the saturation of c*Z in Q is all of Q
}

HarmonicTropicalization HarmonicTropicalization::from_values(
    const WeightedMetricGraph& g, std::vector<std::map<int, Rational>> values) {
    HarmonicTropicalization h;
    h.n = static_cast<int>(values.size());
    h.vertex_values = std::move(values);
    h.slopes.resize(h.n);
    for (int i = 0; i < h.n; ++i)
        for (const auto& e : g.edges())
            h.slopes[i][e.id] =
                (h.vertex_values[i].at(e.head) - h.vertex_values[i].at(e.tail)) / e.length;
    return h;
}

std::vector<Rational> HarmonicTropicalization::value_at_vertex(int vid) const {
    std::vector<Rational> p(n);
    for (int i = 0; i < n; ++i) p[i] = vertex_values[i].at(vid);
    return p;
}

TropFlags check_harmonic_trop(const WeightedMetricGraph& g, const HarmonicTropicalization& h,
                              const GammaGroup& gamma,
                              const std::map<int, AmbientEdge>* ambient) {
    TropFlags f;
    if (static_cast<int>(h.vertex_values.size()) != h.n ||
        static_cast<int>(h.slopes.size()) != h.n) {
        f.witness = "component count mismatch";
        return f;
    }
    for (int i = 0; i < h.n; ++i) {
        for (const auto& v : g.vertices())
            if (!h.vertex_values[i].count(v.id)) {
                f.witness = "missing value at vertex " + std::to_string(v.id);
                return f;
            }
        for (const auto& e : g.edges()) {
            auto it = h.slopes[i].find(e.id);
            if (it == h.slopes[i].end()) {
                f.witness = "missing slope on edge " + std::to_string(e.id);
                return f;
            }
            if (h.vertex_values[i].at(e.head) !=
                h.vertex_values[i].at(e.tail) + it->second * e.length) {
                f.witness = "slope/value inconsistency on edge " + std::to_string(e.id);
                return f;
            }
        }
    }
    f.consistent = true;

    f.harmonic = true;
    for (const auto& v : g.vertices()) {
        if (v.boundary) continue;
        for (int i = 0; i < h.n && f.harmonic; ++i) {
            Rational s(0);
            for (const auto& ee : g.ends_at(v.id)) {
                Rational slope = h.slopes[i].at(ee.edge);
                s += Rational(g.edge(ee.edge).weight) * (ee.at_tail ? slope : -slope);
            }
            if (s != 0) {
                f.harmonic = false;
                f.witness = "weighted slopes of component " + std::to_string(i) +
                            " unbalanced at vertex " + std::to_string(v.id);
            }
        }
    }
    if (!f.harmonic) return f;

    f.z_harmonic = true;
    for (int i = 0; i < h.n && f.z_harmonic; ++i)
        for (const auto& [eid, s] : h.slopes[i])
            if (!is_integer(s)) {
                f.z_harmonic = false;
                f.witness = "non-integral slope on edge " + std::to_string(eid);
            }
    if (!f.z_harmonic) return f;

    f.z_gamma_harmonic = true;
    auto fail_gamma = [&](const std::string& w) {
        f.z_gamma_harmonic = false;
        f.witness = w;
    };
    for (int i = 0; i < h.n && f.z_gamma_harmonic; ++i) {
        if (!ambient) {
            for (const auto& [vid, val] : h.vertex_values[i])
                if (!gamma.contains(val)) {
                    fail_gamma("vertex " + std::to_string(vid) + " value outside Gamma");
                    break;
                }
        } else {
            for (const auto& e : g.edges()) {
                const AmbientEdge& amb = ambient->at(e.id);
                Rational tail_val = h.vertex_values[i].at(e.tail);
                Rational slope = h.slopes[i].at(e.id);
                // Affine extension to the host edge endpoints.
                Rational host_slope = amb.reversed ? Rational(-slope) : slope;
                Rational at0 = tail_val - host_slope * amb.offset;
                Rational atL = at0 + host_slope * amb.host_length;
                if (!gamma.contains(at0) || !gamma.contains(atL)) {
                    fail_gamma("ambient extension of edge " + std::to_string(e.id) +
                               " leaves Gamma");
                    break;
                }
            }
            for (const auto& v : g.vertices())
                if (g.valence(v.id) == 0 && !gamma.contains(h.vertex_values[i].at(v.id)))
                    fail_gamma("isolated vertex value outside Gamma");
        }
    }
    return f;
}

LagerbergPolyForm LagerbergPolyForm::zero(int n, Bidegree bd) {
    LagerbergPolyForm f;
    f.n = n;
    f.bidegree = bd;
    f.g0 = MultiPoly(n);
    if (bd == BD10 || bd == BD01) f.gi.assign(n, MultiPoly(n));
    if (bd == BD11) f.gij.assign(n, std::vector<MultiPoly>(n, MultiPoly(n)));
    return f;
}

LagerbergPolyForm LagerbergPolyForm::function(MultiPoly g) {
    LagerbergPolyForm f = zero(g.vars(), BD00);
    f.g0 = std::move(g);
    return f;
}

LagerbergPolyForm LagerbergPolyForm::operator+(const LagerbergPolyForm& o) const {
    if (n != o.n || !(bidegree == o.bidegree))
        throw std::invalid_argument("lagerberg: shape mismatch in sum");
    LagerbergPolyForm r = *this;
    r.g0 = r.g0 + o.g0;
    for (size_t i = 0; i < gi.size(); ++i) r.gi[i] = r.gi[i] + o.gi[i];
    for (size_t i = 0; i < gij.size(); ++i)
        for (size_t j = 0; j < gij[i].size(); ++j) r.gij[i][j] = r.gij[i][j] + o.gij[i][j];
    return r;
}

LagerbergPolyForm LagerbergPolyForm::scaled(const Rational& s) const {
    LagerbergPolyForm r = *this;
    r.g0 = r.g0.scaled(s);
    for (auto& p : r.gi) p = p.scaled(s);
    for (auto& row : r.gij)
        for (auto& p : row) p = p.scaled(s);
    return r;
}

bool LagerbergPolyForm::same_form(const LagerbergPolyForm& o) const {
    return n == o.n && bidegree == o.bidegree && g0 == o.g0 && gi == o.gi && gij == o.gij;
}

LagerbergPolyForm lagerberg_d_first(const LagerbergPolyForm& f) {
    if (f.bidegree == BD00) {
        LagerbergPolyForm r = LagerbergPolyForm::zero(f.n, BD10);
        for (int i = 0; i < f.n; ++i) r.gi[i] = f.g0.partial(i);
        return r;
    }
    if (f.bidegree == BD01) {
        LagerbergPolyForm r = LagerbergPolyForm::zero(f.n, BD11);
        for (int i = 0; i < f.n; ++i)
            for (int j = 0; j < f.n; ++j) r.gij[i][j] = f.gi[j].partial(i);
        return r;
    }
    throw std::invalid_argument("lagerberg_d_first: needs a (0,q)-form");
}

LagerbergPolyForm lagerberg_d_second(const LagerbergPolyForm& f) {
    if (f.bidegree == BD00) {
        LagerbergPolyForm r = LagerbergPolyForm::zero(f.n, BD01);
        for (int j = 0; j < f.n; ++j) r.gi[j] = f.g0.partial(j);
        return r;
    }
    if (f.bidegree == BD10) {
        LagerbergPolyForm r = LagerbergPolyForm::zero(f.n, BD11);
        for (int i = 0; i < f.n; ++i)
            for (int j = 0; j < f.n; ++j) r.gij[i][j] = -f.gi[i].partial(j);
        return r;
    }
    throw std::invalid_argument("lagerberg_d_second: needs a (p,0)-form");
}

LagerbergPolyForm lagerberg_wedge(const LagerbergPolyForm& a, const LagerbergPolyForm& b) {
    if (a.n != b.n) throw std::invalid_argument("lagerberg_wedge: arity mismatch");
    Bidegree out{a.bidegree.p + b.bidegree.p, a.bidegree.q + b.bidegree.q};
    if (out.p > 1 || out.q > 1) throw std::invalid_argument("lagerberg_wedge: bidegree overflow");
    LagerbergPolyForm r = LagerbergPolyForm::zero(a.n, out);
    if (a.bidegree == BD00 || b.bidegree == BD00) {
        const LagerbergPolyForm& s = (a.bidegree == BD00) ? b : a;
        const MultiPoly& f = (a.bidegree == BD00) ? a.g0 : b.g0;
        r.g0 = s.g0 * f;
        for (size_t i = 0; i < s.gi.size(); ++i) r.gi[i] = s.gi[i] * f;
        for (size_t i = 0; i < s.gij.size(); ++i)
            for (size_t j = 0; j < s.gij[i].size(); ++j) r.gij[i][j] = s.gij[i][j] * f;
        return r;
    }
    if (a.bidegree == BD10 && b.bidegree == BD01) {
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j < a.n; ++j) r.gij[i][j] = a.gi[i] * b.gi[j];
        return r;
    }
    if (a.bidegree == BD01 && b.bidegree == BD10) {
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j < a.n; ++j) r.gij[i][j] = -(b.gi[i] * a.gi[j]);
        return r;
    }
    throw std::invalid_argument("lagerberg_wedge: bidegree overflow");
}

GraphForm pullback_lagerberg(const WeightedMetricGraph& g, const HarmonicTropicalization& h,
                             const LagerbergPolyForm& eta, int order) {
    if (eta.n != h.n) throw std::invalid_argument("pullback_lagerberg: dimension mismatch");
    GraphForm out{eta.bidegree, order, {}, {}};
    for (const auto& e : g.edges()) {
        std::vector<Rational> slope(h.n), base(h.n);
        for (int i = 0; i < h.n; ++i) {
            slope[i] = h.slopes[i].at(e.id);
            base[i] = h.vertex_values[i].at(e.tail);
        }
        Polynomial p;
        if (eta.bidegree == BD00) {
            p = eta.g0.compose_affine_line(slope, base);
        } else if (eta.bidegree == BD10 || eta.bidegree == BD01) {
            for (int i = 0; i < h.n; ++i)
                p = p + eta.gi[i].compose_affine_line(slope, base).scaled(slope[i]);
        } else {
            for (int i = 0; i < h.n; ++i)
                for (int j = 0; j < h.n; ++j)
                    p = p + eta.gij[i][j].compose_affine_line(slope, base).scaled(slope[i] *
                                                                                  slope[j]);
        }
        out.coeff.emplace(e.id, PiecewisePolynomial::single(e.length, std::move(p), order));
    }
    if (eta.bidegree == BD00)
        for (const auto& v : g.vertices())
            if (g.valence(v.id) == 0) out.vertex_values[v.id] = eta.g0.evaluate(h.value_at_vertex(v.id));
    return out;
}

namespace {

using Point = std::vector<Rational>;

Point point_sub(const Point& a, const Point& b) {
    Point r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

bool parallel(const Point& u, const Point& v) {
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = i + 1; j < u.size(); ++j)
            if (u[i] * v[j] != u[j] * v[i]) return false;
    return true;
}

bool is_zero_point(const Point& u) {
    return std::all_of(u.begin(), u.end(), [](const Rational& x) { return x == 0; });
}

/// Primitive integer vector in the direction of d (d nonzero).
Point primitive_direction(const Point& d) {
    Int den_lcm(1);
    for (const auto& x : d) den_lcm = lcm(den_lcm, denominator(x));
    Int g(0);
    for (const auto& x : d) g = gcd(g, Int(numerator(x) * (den_lcm / denominator(x))));
    Point out(d.size());
    for (size_t i = 0; i < d.size(); ++i) out[i] = d[i] * Rational(den_lcm, g);
    return out;
}

struct RawSegment {
    Point a, b;
    long mult;
};

/// Parameter of x on the line a + t(b-a); caller guarantees collinearity.
Rational line_param(const Point& a, const Point& b, const Point& x) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return (x[i] - a[i]) / (b[i] - a[i]);
    throw std::logic_error("line_param: degenerate segment");
}

}  // namespace

TropCycle trop_cycle(const WeightedMetricGraph& g, const HarmonicTropicalization& h) {
    GammaGroup trivial{{}};
    auto flags = check_harmonic_trop(g, h, trivial, nullptr);
    if (!flags.consistent) throw std::invalid_argument("trop_cycle: " + flags.witness);
    if (!flags.z_harmonic)
        throw std::invalid_argument("trop_cycle: tropicalization is not Z-harmonic: " +
                                    flags.witness);
    TropCycle cycle;
    cycle.n = h.n;

    std::vector<RawSegment> raw;
    for (const auto& e : g.edges()) {
        Int gcd_slopes(0);
        for (int i = 0; i < h.n; ++i) gcd_slopes = gcd(gcd_slopes, numerator(h.slopes[i].at(e.id)));
        if (gcd_slopes == 0) continue;  // crushed edge
        raw.push_back(
            {h.value_at_vertex(e.tail), h.value_at_vertex(e.head),
             e.weight * static_cast<long>(gcd_slopes)});
    }
    for (const auto& v : g.vertices())
        if (v.boundary) {
            Point p = h.value_at_vertex(v.id);
            if (std::find(cycle.excluded.begin(), cycle.excluded.end(), p) ==
                cycle.excluded.end())
                cycle.excluded.push_back(p);
        }
    std::sort(cycle.excluded.begin(), cycle.excluded.end());

    // Pairwise refinement: split at transversal crossings and at endpoints
    // of collinear overlaps.
    std::vector<std::vector<Rational>> cuts(raw.size());
    for (size_t i = 0; i < raw.size(); ++i)
        for (size_t j = i + 1; j < raw.size(); ++j) {
            Point u = point_sub(raw[i].b, raw[i].a);
            Point v = point_sub(raw[j].b, raw[j].a);
            Point pr = point_sub(raw[j].a, raw[i].a);
            if (parallel(u, v)) {
                if (!parallel(pr, u)) continue;  // parallel, not collinear
                Rational t0 = line_param(raw[i].a, raw[i].b, raw[j].a);
                Rational t1 = line_param(raw[i].a, raw[i].b, raw[j].b);
                if (t0 > 0 && t0 < 1) cuts[i].push_back(t0);
                if (t1 > 0 && t1 < 1) cuts[i].push_back(t1);
                Rational s0 = line_param(raw[j].a, raw[j].b, raw[i].a);
                Rational s1 = line_param(raw[j].a, raw[j].b, raw[i].b);
                if (s0 > 0 && s0 < 1) cuts[j].push_back(s0);
                if (s1 > 0 && s1 < 1) cuts[j].push_back(s1);
                continue;
            }
            // Transversal: solve a_i + t u = a_j + s v on a nonsingular 2x2 block.
            size_t r1 = 0, r2 = 0;
            bool found = false;
            for (size_t p = 0; p < u.size() && !found; ++p)
                for (size_t q = p + 1; q < u.size() && !found; ++q)
                    if (u[p] * v[q] != u[q] * v[p]) {
                        r1 = p;
                        r2 = q;
                        found = true;
                    }
            Rational det = u[r1] * (-v[r2]) - u[r2] * (-v[r1]);
            Rational t = (pr[r1] * (-v[r2]) - pr[r2] * (-v[r1])) / det;
            Rational s = (u[r1] * pr[r2] - u[r2] * pr[r1]) / det;
            bool on_both = true;
            for (size_t p = 0; p < u.size(); ++p)
                if (raw[i].a[p] + t * u[p] != raw[j].a[p] + s * v[p]) on_both = false;
            if (!on_both || t < 0 || t > 1 || s < 0 || s > 1) continue;
            if (t > 0 && t < 1) cuts[i].push_back(t);
            if (s > 0 && s < 1) cuts[j].push_back(s);
        }

    std::map<std::pair<Point, Point>, long> atoms;
    for (size_t i = 0; i < raw.size(); ++i) {
        auto& ts = cuts[i];
        ts.push_back(Rational(0));
        ts.push_back(Rational(1));
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        Point u = point_sub(raw[i].b, raw[i].a);
        for (size_t k = 0; k + 1 < ts.size(); ++k) {
            Point pa(raw[i].a.size()), pb(raw[i].a.size());
            for (size_t c = 0; c < pa.size(); ++c) {
                pa[c] = raw[i].a[c] + ts[k] * u[c];
                pb[c] = raw[i].a[c] + ts[k + 1] * u[c];
            }
            if (pb < pa) std::swap(pa, pb);
            atoms[{pa, pb}] += raw[i].mult;
        }
    }
    for (auto& [key, mult] : atoms) cycle.segments.push_back({key.first, key.second, mult});
    return cycle;
}

BalancingReport check_balancing(const TropCycle& cycle) {
    BalancingReport rep;
    std::map<Point, Point> sums;
    for (const auto& seg : cycle.segments) {
        Point dir = primitive_direction(point_sub(seg.b, seg.a));
        auto add = [&](const Point& at, const Point& d, long m) {
            auto [it, inserted] = sums.emplace(at, Point(cycle.n, Rational(0)));
            (void)inserted;
            for (int i = 0; i < cycle.n; ++i) it->second[i] += Rational(m) * d[i];
        };
        add(seg.a, dir, seg.multiplicity);
        Point neg = dir;
        for (auto& x : neg) x = -x;
        add(seg.b, neg, seg.multiplicity);
    }
    rep.balanced = true;
    for (const auto& [pt, sum] : sums) {
        if (is_zero_point(sum)) continue;
        if (std::binary_search(cycle.excluded.begin(), cycle.excluded.end(), pt)) continue;
        rep.balanced = false;
        rep.violations.emplace_back(pt, sum);
    }
    return rep;
}

Rational trop_integrate(const TropCycle& cycle, const LagerbergPolyForm& eta) {
    if (!(eta.bidegree == BD11)) throw std::invalid_argument("trop_integrate: needs a (1,1)-form");
    if (eta.n != cycle.n) throw std::invalid_argument("trop_integrate: dimension mismatch");
    Rational total(0);
    for (const auto& seg : cycle.segments) {
        Point d = point_sub(seg.b, seg.a);
        Point prim = primitive_direction(d);
        Rational lattice_length;
        for (size_t i = 0; i < d.size(); ++i)
            if (prim[i] != 0) {
                lattice_length = d[i] / prim[i];
                break;
            }
        Polynomial integrand;
        for (int i = 0; i < eta.n; ++i)
            for (int j = 0; j < eta.n; ++j) {
                if (prim[i] == 0 || prim[j] == 0) continue;
                integrand = integrand + eta.gij[i][j]
                                            .compose_affine_line(prim, seg.a)
                                            .scaled(prim[i] * prim[j]);
            }
        total += Rational(seg.multiplicity) * integrand.integrate(Rational(0), lattice_length);
    }
    return total;
}

Rational trop_boundary_integrate(const TropCycle& cycle, const LagerbergPolyForm& eta) {
    if (!(eta.bidegree == BD10) && !(eta.bidegree == BD01))
        throw std::invalid_argument("trop_boundary_integrate: needs a (1,0)- or (0,1)-form");
    if (eta.n != cycle.n) throw std::invalid_argument("trop_boundary_integrate: dimension mismatch");
    Rational total(0);
    for (const auto& seg : cycle.segments) {
        Point prim = primitive_direction(point_sub(seg.b, seg.a));
        Rational part(0);
        for (int i = 0; i < eta.n; ++i) {
            if (prim[i] == 0) continue;
            Rational va = eta.gi[i].evaluate(seg.a), vb = eta.gi[i].evaluate(seg.b);
            part += prim[i] * (va - vb);
        }
        if (eta.bidegree == BD01) part = -part;
        total += Rational(seg.multiplicity) * part;
    }
    return total;
}

CompatCheck integration_compat_check(const WeightedMetricGraph& g,
                                     const HarmonicTropicalization& h,
                                     const LagerbergPolyForm& eta, int order) {
    CompatCheck c;
    GraphForm pb = pullback_lagerberg(g, h, eta, order);
    TropCycle cycle = trop_cycle(g, h);
    if (eta.bidegree == BD11) {
        c.graph_side = integrate_graph(g, pb);
        c.trop_side = trop_integrate(cycle, eta);
    } else if (eta.bidegree == BD10 || eta.bidegree == BD01) {
        c.graph_side = integrate_boundary(g, pb);
        c.trop_side = trop_boundary_integrate(cycle, eta);
    } else {
        throw std::invalid_argument("integration_compat_check: needs bidegree >= (1,0)");
    }
    c.equal = (c.graph_side == c.trop_side);
    return c;
}

MultiPoly polynomial_star_extension(int n, const std::vector<Polynomial>& ray_polys) {
    if (n < 2) throw std::invalid_argument("star_extension: need n >= 2");
    if (static_cast<int>(ray_polys.size()) != n + 1)
        throw std::invalid_argument("star_extension: need n+1 ray polynomials (diagonal first)");
    const Polynomial& f0 = ray_polys[0];
    Rational value = f0.coeff(0);
    Rational slope_sum = f0.coeff(1);
    int max_deg = f0.degree();
    for (int i = 1; i <= n; ++i) {
        if (ray_polys[i].coeff(0) != value)
            throw std::invalid_argument("star_extension: ray values disagree at the origin");
        slope_sum += ray_polys[i].coeff(1);
        max_deg = std::max(max_deg, ray_polys[i].degree());
    }
    if (slope_sum != 0)
        throw std::invalid_argument("star_extension: first derivatives do not balance");

    MultiPoly F = MultiPoly::constant(n, value);
    for (int i = 1; i <= n; ++i)
        F = F + MultiPoly::variable(n, i - 1).scaled(ray_polys[i].coeff(1));
    for (int j = 2; j <= max_deg; ++j) {
        Rational beta = (j % 2 == 0) ? f0.coeff(j) : -f0.coeff(j);
        std::vector<int> mixed(n, 0);
        mixed[0] = j - 1;
        mixed[1] = 1;
        for (int i = 1; i <= n; ++i) {
            Rational a = ray_polys[i].coeff(j);
            beta -= a;
            if (a != 0) {
                std::vector<int> e(n, 0);
                e[i - 1] = j;
                F = F + MultiPoly::monomial(n, e, a);
            }
        }
        if (beta != 0) F = F + MultiPoly::monomial(n, mixed, beta);
    }
    return F;
}

namespace {

/// One truncated outgoing edge germ at the center of a star.
struct Ray {
    EdgeEnd end;
    long weight = 1;
    Rational cut;          // truncation length along the outgoing direction
    Polynomial germ;       // single outgoing polynomial on [0, cut]
    Rational host_length;
    Rational host_offset;  // host position of the center along this end
    bool host_reversed = false;
};

Ray make_ray(const WeightedMetricGraph& g, const GraphForm& omega, const EdgeEnd& ee) {
    Ray r;
    r.end = ee;
    const Edge& e = g.edge(ee.edge);
    r.weight = e.weight;
    PiecewisePolynomial out = outgoing_coefficient(omega, ee);
    r.cut = out.piece_count() > 1 ? out.breakpoints()[1] : Rational(out.length() / 2);
    PiecewisePolynomial cutpiece = out.restricted(Rational(0), r.cut);
    if (cutpiece.piece_count() != 1) throw std::logic_error("make_ray: truncation not a single piece");
    r.germ = cutpiece.first_piece();
    r.host_length = e.length;
    r.host_offset = ee.at_tail ? Rational(0) : e.length;
    r.host_reversed = !ee.at_tail;
    return r;
}

/// Star-shaped neighborhood: center vertex 0, ray i spans U edge i from the
/// center to boundary vertex i+1.
WeightedMetricGraph star_graph(const std::vector<Ray>& rays, bool center_boundary) {
    std::vector<Vertex> vs{{0, center_boundary}};
    std::vector<Edge> es;
    for (size_t i = 0; i < rays.size(); ++i) {
        vs.push_back({static_cast<int>(i) + 1, true});
        es.push_back({static_cast<int>(i), 0, static_cast<int>(i) + 1, rays[i].cut,
                      rays[i].weight});
    }
    return WeightedMetricGraph(std::move(vs), std::move(es));
}

GraphForm star_restriction(const WeightedMetricGraph& u, const GraphForm& omega,
                           const std::vector<Ray>& rays) {
    GraphForm r{omega.bidegree, omega.order, {}, {}};
    for (size_t i = 0; i < rays.size(); ++i)
        r.coeff.emplace(static_cast<int>(i),
                        PiecewisePolynomial::single(rays[i].cut, rays[i].germ, omega.order));
    (void)u;
    return r;
}

void fill_star_plumbing(LocalPullbackCertificate& cert, const std::vector<Ray>& rays) {
    for (size_t i = 0; i < rays.size(); ++i) {
        cert.ambient[static_cast<int>(i)] = {rays[i].host_length, rays[i].host_offset,
                                             rays[i].host_reversed};
        cert.host_edges[static_cast<int>(i)] = rays[i].end.edge;
    }
}

/// tau-reparameterized germ: f(tau/s) scaled by s^-power.
Polynomial ray_poly(const Ray& r, const Rational& s, int power) {
    Polynomial p = r.germ.compose_affine(1 / s, Rational(0));
    Rational scale(1);
    for (int k = 0; k < power; ++k) scale /= s;
    return p.scaled(scale);
}

Polynomial linear_poly(const Rational& value, const Rational& slope) {
    return Polynomial({value, slope});
}

}  // namespace

LocalPullbackCertificate local_pullback_certificate(const WeightedMetricGraph& g,
                                                    const GraphForm& omega, const GraphPoint& x,
                                                    const GammaGroup& gamma) {
    auto vr = validate_form(g, omega);
    if (!vr.ok())
        throw std::invalid_argument("local_pullback_certificate: invalid form: " +
                                    vr.problems.front());
    for (const auto& e : g.edges())
        if (!gamma.contains(e.length))
            throw std::invalid_argument("local_pullback_certificate: Gamma must contain the edge "
                                        "lengths");
    const Bidegree bd = omega.bidegree;
    const int K = omega.order;
    LocalPullbackCertificate cert;

    auto finish = [&](LocalPullbackCertificate c) {
        auto ur = validate_form(c.neighborhood, c.restricted);
        if (!ur.ok())
            throw std::logic_error("local_pullback_certificate: restriction invalid: " +
                                   ur.problems.front());
        auto flags = check_harmonic_trop(c.neighborhood, c.trop, gamma, &c.ambient);
        if (!flags.z_gamma_harmonic)
            throw std::logic_error("local_pullback_certificate: tropicalization not "
                                   "(Z,Gamma)-harmonic: " +
                                   flags.witness);
        GraphForm back = pullback_lagerberg(c.neighborhood, c.trop, c.form, K);
        if (!back.same_form(c.restricted))
            throw std::logic_error("local_pullback_certificate: round trip mismatch");
        return c;
    };

    // Case 1 (possibly at a coefficient breakpoint, which must merge).
    if (!x.at_vertex) {
        const Edge& e = g.edge(x.edge);
        if (x.position <= 0 || x.position >= e.length)
            throw std::invalid_argument("local_pullback_certificate: edge position not interior");
        const PiecewisePolynomial& c = omega.at(x.edge);
        const auto& breaks = c.breakpoints();
        size_t right = 1;
        while (breaks[right] < x.position) ++right;
        size_t left = right - 1;
        bool at_break = (breaks[right] == x.position) && right + 1 < breaks.size();
        Rational alpha = breaks[left] > 0 ? breaks[left] : Rational(x.position / 2);
        Rational beta_src = at_break ? breaks[right + 1] : breaks[right];
        Rational beta = beta_src < e.length ? beta_src : Rational((x.position + e.length) / 2);
        Polynomial piece = c.piece(left);
        if (at_break) {
            if (!(c.piece(right) == piece))
                throw std::invalid_argument(
                    "local_pullback_certificate: coefficient pieces at the breakpoint do not "
                    "merge into one polynomial");
        }
        cert.case_id = 1;
        cert.neighborhood = WeightedMetricGraph(
            {{0, true}, {1, true}}, {{0, 0, 1, beta - alpha, e.weight}});
        cert.ambient[0] = {e.length, alpha, false};
        cert.host_edges[0] = x.edge;
        cert.trop = HarmonicTropicalization::from_values(cert.neighborhood,
                                                         {{{0, alpha}, {1, beta}}});
        LagerbergPolyForm eta = LagerbergPolyForm::zero(1, bd);
        MultiPoly p = MultiPoly::from_univariate(1, 0, piece);
        if (bd == BD00)
            eta.g0 = p;
        else if (bd == BD11)
            eta.gij[0][0] = p;
        else
            eta.gi[0] = p;
        cert.form = std::move(eta);
        cert.restricted = GraphForm{bd, K, {}, {}};
        cert.restricted.coeff.emplace(0, c.restricted(alpha, beta));
        return finish(std::move(cert));
    }

    const Vertex& v = g.vertex(x.vertex);
    const auto& ends = g.ends_at(v.id);

    // Isolated vertices: constant data.
    if (ends.empty()) {
        cert.case_id = v.boundary ? 4 : 3;
        cert.neighborhood = WeightedMetricGraph({{0, v.boundary}}, {});
        cert.trop = HarmonicTropicalization::from_values(cert.neighborhood, {{{0, Rational(0)}}});
        cert.form = LagerbergPolyForm::zero(1, bd);
        cert.restricted = GraphForm{bd, K, {}, {}};
        if (bd == BD00) {
            Rational val = omega.vertex_values.at(v.id);
            cert.form.g0 = MultiPoly::constant(1, val);
            cert.restricted.vertex_values[0] = val;
        }
        return finish(std::move(cert));
    }

    std::vector<Ray> rays;
    for (const auto& ee : ends) rays.push_back(make_ray(g, omega, ee));
    const size_t deg = rays.size();

    if (!v.boundary && deg == 1) {
        // Case 3: interior leaf; the form is locally constant/zero.
        cert.case_id = 3;
        cert.neighborhood = star_graph(rays, false);
        cert.trop = HarmonicTropicalization::from_values(cert.neighborhood,
                                                         {{{0, Rational(0)}, {1, Rational(0)}}});
        cert.form = LagerbergPolyForm::zero(1, bd);
        if (bd == BD00) cert.form.g0 = MultiPoly::constant(1, rays[0].germ.coeff(0));
        cert.restricted = star_restriction(cert.neighborhood, omega, rays);
        fill_star_plumbing(cert, rays);
        return finish(std::move(cert));
    }

    if (v.boundary) {
        // Case 4: one independent coordinate per outgoing edge.
        cert.case_id = 4;
        cert.neighborhood = star_graph(rays, true);
        int n = static_cast<int>(deg);
        std::vector<std::map<int, Rational>> values(n);
        for (int i = 0; i < n; ++i) {
            values[i][0] = 0;
            for (size_t j = 0; j < deg; ++j)
                values[i][static_cast<int>(j) + 1] =
                    (static_cast<int>(j) == i) ? rays[j].cut : Rational(0);
        }
        cert.trop = HarmonicTropicalization::from_values(cert.neighborhood, std::move(values));
        LagerbergPolyForm eta = LagerbergPolyForm::zero(n, bd);
        if (bd == BD00) {
            Rational common = rays[0].germ.coeff(0);
            MultiPoly sum = MultiPoly::constant(n, common * Rational(1 - n));
            for (int i = 0; i < n; ++i)
                sum = sum + MultiPoly::from_univariate(n, i, rays[i].germ);
            eta.g0 = std::move(sum);
        } else if (bd == BD11) {
            for (int i = 0; i < n; ++i)
                eta.gij[i][i] = MultiPoly::from_univariate(n, i, rays[i].germ);
        } else {
            for (int i = 0; i < n; ++i) eta.gi[i] = MultiPoly::from_univariate(n, i, rays[i].germ);
        }
        cert.form = std::move(eta);
        cert.restricted = star_restriction(cert.neighborhood, omega, rays);
        fill_star_plumbing(cert, rays);
        return finish(std::move(cert));
    }

    // Interior vertex: harmonic slopes need the lcm of the incident weights.
    Rational N(1);
    for (const auto& r : rays) N = Rational(lcm(Int(as_integer(N)), Int(r.weight)));

    if (deg == 2) {
        // Case 2: the two germs must merge into one polynomial through the vertex.
        cert.case_id = 2;
        Rational a0 = N / rays[0].weight;
        Rational a1 = -N / rays[1].weight;
        int power = bd.total() == 2 ? 2 : bd.total();
        Polynomial G = ray_poly(rays[0], a0, power);
        Polynomial other = G.compose_affine(a1, Rational(0));
        Rational scale(1);
        for (int k = 0; k < power; ++k) scale *= a1;
        if (!(other.scaled(scale) == rays[1].germ))
            throw std::invalid_argument(
                "local_pullback_certificate: germs at the valence-2 vertex do not merge into a "
                "single polynomial");
        cert.neighborhood = star_graph(rays, false);
        cert.trop = HarmonicTropicalization::from_values(
            cert.neighborhood,
            {{{0, Rational(0)}, {1, a0 * rays[0].cut}, {2, a1 * rays[1].cut}}});
        cert.form = LagerbergPolyForm::zero(1, bd);
        MultiPoly gp = MultiPoly::from_univariate(1, 0, G);
        if (bd == BD00)
            cert.form.g0 = gp;
        else if (bd == BD11)
            cert.form.gij[0][0] = gp;
        else
            cert.form.gi[0] = gp;
        cert.restricted = star_restriction(cert.neighborhood, omega, rays);
        fill_star_plumbing(cert, rays);
        return finish(std::move(cert));
    }

    // Case 5: interior vertex of valence >= 3. Ray 0 is the diagonal
    // direction; rays 1..r get the coordinates.
    cert.case_id = 5;
    const int r = static_cast<int>(deg) - 1;
    std::vector<Rational> s(deg);
    for (size_t i = 0; i < deg; ++i) s[i] = N / rays[i].weight;

    cert.neighborhood = star_graph(rays, false);
    std::vector<std::map<int, Rational>> values(r);
    for (int k = 1; k <= r; ++k) {
        auto& val = values[k - 1];
        val[0] = 0;
        for (size_t j = 0; j < deg; ++j) {
            if (j == 0)
                val[1] = -s[0] * rays[0].cut;
            else
                val[static_cast<int>(j) + 1] =
                    (static_cast<int>(j) == k) ? Rational(s[j] * rays[j].cut) : Rational(0);
        }
    }
    cert.trop = HarmonicTropicalization::from_values(cert.neighborhood, std::move(values));

    LagerbergPolyForm eta = LagerbergPolyForm::zero(r, bd);
    auto star = [&](const std::vector<Polynomial>& ray_data) {
        return polynomial_star_extension(r, ray_data);
    };
    if (bd == BD00) {
        std::vector<Polynomial> data(deg);
        for (size_t i = 0; i < deg; ++i) data[i] = ray_poly(rays[i], s[i], 0);
        eta.g0 = star(data);
    } else if (bd == BD10 || bd == BD01) {
        std::vector<Polynomial> A(deg);
        for (size_t i = 0; i < deg; ++i) A[i] = ray_poly(rays[i], s[i], 1);
        // g_1: carries the ray-1 data and compensates the diagonal ray.
        {
            Rational tail_consts(0);
            for (int k = 2; k <= r; ++k) tail_consts += A[k].coeff(0);
            Polynomial ray0 = (-A[0]) + Polynomial::constant(-tail_consts);
            std::vector<Polynomial> data(deg);
            data[0] = ray0;
            data[1] = A[1];
            data[2] = linear_poly(A[1].coeff(0), -(ray0.coeff(1) + A[1].coeff(1)));
            for (int j = 3; j <= r; ++j) data[j] = Polynomial::constant(A[1].coeff(0));
            eta.gi[0] = star(data);
        }
        for (int k = 2; k <= r; ++k) {
            std::vector<Polynomial> data(deg, Polynomial::constant(A[k].coeff(0)));
            data[k] = A[k];
            data[1] = linear_poly(A[k].coeff(0), -A[k].coeff(1));
            eta.gi[k - 1] = star(data);
        }
    } else {
        std::vector<Polynomial> q(deg);
        for (size_t i = 0; i < deg; ++i) q[i] = ray_poly(rays[i], s[i], 2);
        for (int k = 1; k <= r; ++k) {
            int kp = (k % r) + 1;  // any coordinate index distinct from k
            std::vector<Polynomial> data(deg, Polynomial::constant(q[k].coeff(0)));
            data[k] = q[k];
            data[kp] = linear_poly(q[k].coeff(0), -q[k].coeff(1));
            eta.gij[k - 1][k - 1] = eta.gij[k - 1][k - 1] + star(data);
            eta.gij[k - 1][kp - 1] =
                eta.gij[k - 1][kp - 1] + MultiPoly::constant(r, -q[k].coeff(0));
        }
        {
            std::vector<Polynomial> data(deg, Polynomial::constant(q[0].coeff(0)));
            data[0] = q[0];
            data[1] = linear_poly(q[0].coeff(0), -q[0].coeff(1));
            eta.gij[0][1] = eta.gij[0][1] + star(data);
        }
    }
    cert.form = std::move(eta);
    cert.restricted = star_restriction(cert.neighborhood, omega, rays);
    fill_star_plumbing(cert, rays);
    return finish(std::move(cert));
}

TropFlags check_harmonic_function(const WeightedMetricGraph& g, const GraphForm& f,
                                  const GammaGroup& gamma) {
    auto rep = is_harmonic_function(g, f);
    if (!rep.harmonic) {
        TropFlags t;
        t.consistent = rep.failure.empty() || rep.failure.find("smooth") == std::string::npos;
        t.witness = rep.failure;
        return t;
    }
    std::map<int, Rational> values;
    for (const auto& v : g.vertices()) values[v.id] = form_value_at_vertex(g, f, v.id);
    auto h = HarmonicTropicalization::from_values(g, {std::move(values)});
    return check_harmonic_trop(g, h, gamma);
}

}  // namespace graphforms
