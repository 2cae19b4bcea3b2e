#include "graphforms/io.hpp"

#include <istream>
#include <sstream>

namespace graphforms {

namespace {

/// Token lines with '#' comments and blank lines skipped.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            tokens.clear();
            std::string t;
            while (ls >> t) tokens.push_back(t);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    std::vector<std::string> expect_line() {
        std::vector<std::string> tokens;
        if (!next(tokens)) throw ParseError(lineno_, "unexpected end of input");
        return tokens;
    }

    int line() const { return lineno_; }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(lineno_, what); }

private:
    std::istream& in_;
    int lineno_ = 0;
};

int to_int(LineReader& r, const std::string& t) {
    try {
        size_t pos = 0;
        int v = std::stoi(t, &pos);
        if (pos != t.size()) r.fail("bad integer '" + t + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        r.fail("bad integer '" + t + "'");
    }
}

long to_long(LineReader& r, const std::string& t) {
    try {
        size_t pos = 0;
        long v = std::stol(t, &pos);
        if (pos != t.size()) r.fail("bad integer '" + t + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        r.fail("bad integer '" + t + "'");
    }
}

Rational to_rational(LineReader& r, const std::string& t) {
    try {
        return parse_rational(t);
    } catch (const std::exception& e) {
        r.fail(e.what());
    }
}

WeightedMetricGraph parse_graph_body(LineReader& r) {
    auto header = r.expect_line();
    if (header[0] != "graph") r.fail("expected 'graph'");
    std::vector<Vertex> vs;
    std::vector<Edge> es;
    for (;;) {
        auto t = r.expect_line();
        if (t[0] == "end") break;
        if (t[0] == "vertex") {
            if (t.size() != 3 || (t[2] != "boundary" && t[2] != "interior"))
                r.fail("vertex lines are 'vertex <id> boundary|interior'");
            vs.push_back({to_int(r, t[1]), t[2] == "boundary"});
        } else if (t[0] == "edge") {
            if (t.size() != 6) r.fail("edge lines are 'edge <id> <tail> <head> <length> <weight>'");
            es.push_back({to_int(r, t[1]), to_int(r, t[2]), to_int(r, t[3]), to_rational(r, t[4]),
                          to_long(r, t[5])});
        } else {
            r.fail("unexpected token '" + t[0] + "' in graph");
        }
    }
    try {
        return WeightedMetricGraph(std::move(vs), std::move(es));
    } catch (const std::exception& e) {
        r.fail(e.what());
    }
}

Polynomial parse_poly_tokens(LineReader& r, const std::vector<std::string>& t, size_t from) {
    std::vector<Rational> coeffs;
    for (size_t i = from; i < t.size(); ++i) coeffs.push_back(to_rational(r, t[i]));
    return Polynomial(std::move(coeffs));
}

GraphForm parse_form_body(LineReader& r) {
    auto header = r.expect_line();
    if (header.size() != 5 || header[0] != "form" || header[3] != "order")
        r.fail("expected 'form <p> <q> order <K>'");
    GraphForm f;
    f.bidegree = {to_int(r, header[1]), to_int(r, header[2])};
    f.order = to_int(r, header[4]);

    int current_edge = -1;
    std::vector<Rational> breaks;
    std::vector<Polynomial> pieces;
    auto flush = [&]() {
        if (current_edge < 0) return;
        if (breaks.size() != pieces.size() + 1)
            r.fail("edge " + std::to_string(current_edge) + ": breakpoint/piece count mismatch");
        try {
            f.coeff.emplace(current_edge, PiecewisePolynomial(breaks.back(), breaks, pieces,
                                                              f.order));
        } catch (const std::exception& e) {
            r.fail(e.what());
        }
        breaks.clear();
        pieces.clear();
    };
    for (;;) {
        auto t = r.expect_line();
        if (t[0] == "end") {
            flush();
            break;
        }
        if (t[0] == "edge") {
            flush();
            if (t.size() != 2) r.fail("edge lines are 'edge <id>'");
            current_edge = to_int(r, t[1]);
            if (f.coeff.count(current_edge)) r.fail("duplicate edge block");
        } else if (t[0] == "breaks") {
            for (size_t i = 1; i < t.size(); ++i) breaks.push_back(to_rational(r, t[i]));
        } else if (t[0] == "poly") {
            pieces.push_back(parse_poly_tokens(r, t, 1));
        } else if (t[0] == "vertexvalue") {
            if (t.size() != 3) r.fail("vertexvalue lines are 'vertexvalue <id> <value>'");
            f.vertex_values[to_int(r, t[1])] = to_rational(r, t[2]);
        } else {
            r.fail("unexpected token '" + t[0] + "' in form");
        }
    }
    return f;
}

void parse_map_lines(LineReader& r, const std::vector<std::string>& t, std::map<int, int>& vmap,
                     std::map<int, EdgeImage>& emap) {
    if (t[0] == "vmap") {
        if (t.size() != 3) r.fail("vmap lines are 'vmap <src> <dst>'");
        vmap[to_int(r, t[1])] = to_int(r, t[2]);
    } else if (t[0] == "emap") {
        if (t.size() == 4 && t[2] == "vertex") {
            emap[to_int(r, t[1])] = {true, to_int(r, t[3]), false};
        } else if (t.size() == 5 && t[2] == "edge" && (t[4] == "+" || t[4] == "-")) {
            emap[to_int(r, t[1])] = {false, to_int(r, t[3]), t[4] == "-"};
        } else {
            r.fail("emap lines are 'emap <src> edge <dst> +|-' or 'emap <src> vertex <dst>'");
        }
    } else {
        r.fail("unexpected token '" + t[0] + "'");
    }
}

PLMap parse_plmap_body(LineReader& r) {
    auto header = r.expect_line();
    if (header[0] != "plmap") r.fail("expected 'plmap'");
    auto src_tag = r.expect_line();
    if (src_tag[0] != "source") r.fail("expected 'source'");
    PLMap m;
    m.source = parse_graph_body(r);
    auto tgt_tag = r.expect_line();
    if (tgt_tag[0] != "target") r.fail("expected 'target'");
    m.target = parse_graph_body(r);
    for (;;) {
        auto t = r.expect_line();
        if (t[0] == "end") break;
        parse_map_lines(r, t, m.vertex_map, m.edge_map);
    }
    return m;
}

GroupAction parse_action_body(LineReader& r) {
    auto header = r.expect_line();
    if (header[0] != "action") r.fail("expected 'action'");
    GroupAction a;
    a.graph = parse_graph_body(r);
    for (;;) {
        auto t = r.expect_line();
        if (t[0] == "end") break;
        if (t[0] != "element") r.fail("expected 'element'");
        PLMap m{a.graph, a.graph, {}, {}};
        for (;;) {
            auto u = r.expect_line();
            if (u[0] == "end") break;
            parse_map_lines(r, u, m.vertex_map, m.edge_map);
        }
        a.elements.push_back(std::move(m));
    }
    return a;
}

HarmonicTropicalization parse_trop_body(LineReader& r) {
    auto header = r.expect_line();
    if (header.size() != 2 || header[0] != "trop") r.fail("expected 'trop <n>'");
    HarmonicTropicalization h;
    h.n = to_int(r, header[1]);
    h.vertex_values.resize(h.n);
    h.slopes.resize(h.n);
    int current = -1;
    for (;;) {
        auto t = r.expect_line();
        if (t[0] == "end") break;
        if (t[0] == "component") {
            current = to_int(r, t[1]);
            if (current < 0 || current >= h.n) r.fail("component index out of range");
        } else if (t[0] == "value") {
            if (current < 0) r.fail("value before component");
            h.vertex_values[current][to_int(r, t[1])] = to_rational(r, t[2]);
        } else if (t[0] == "slope") {
            if (current < 0) r.fail("slope before component");
            h.slopes[current][to_int(r, t[1])] = to_rational(r, t[2]);
        } else {
            r.fail("unexpected token '" + t[0] + "' in trop");
        }
    }
    return h;
}

LagerbergPolyForm parse_lagerberg_body(LineReader& r) {
    auto header = r.expect_line();
    if (header.size() != 4 || header[0] != "lagerberg") r.fail("expected 'lagerberg <n> <p> <q>'");
    int n = to_int(r, header[1]);
    Bidegree bd{to_int(r, header[2]), to_int(r, header[3])};
    LagerbergPolyForm f = LagerbergPolyForm::zero(n, bd);
    MultiPoly* current = nullptr;
    for (;;) {
        auto t = r.expect_line();
        if (t[0] == "end") break;
        if (t[0] == "coeff") {
            if (bd == BD00 && t.size() == 1)
                current = &f.g0;
            else if ((bd == BD10 || bd == BD01) && t.size() == 2)
                current = &f.gi.at(to_int(r, t[1]));
            else if (bd == BD11 && t.size() == 3)
                current = &f.gij.at(to_int(r, t[1])).at(to_int(r, t[2]));
            else
                r.fail("coeff indices do not match the bidegree");
        } else if (t[0] == "term") {
            if (!current) r.fail("term before coeff");
            if (static_cast<int>(t.size()) != n + 2)
                r.fail("term lines are 'term <coefficient> <exponents...>'");
            std::vector<int> e(n);
            for (int i = 0; i < n; ++i) e[i] = to_int(r, t[2 + i]);
            *current = *current + MultiPoly::monomial(n, e, to_rational(r, t[1]));
        } else {
            r.fail("unexpected token '" + t[0] + "' in lagerberg");
        }
    }
    return f;
}

SkeletonDescription parse_skeleton_body(LineReader& r) {
    auto header = r.expect_line();
    if (header[0] != "skeleton") r.fail("expected 'skeleton'");
    SkeletonDescription d;
    for (;;) {
        auto t = r.expect_line();
        if (t[0] == "end") break;
        if (t[0] == "component") {
            if (t.size() != 3 || (t[2] != "proper" && t[2] != "nonproper"))
                r.fail("component lines are 'component <id> proper|nonproper'");
            d.components.push_back({to_int(r, t[1]), t[2] == "proper"});
        } else if (t[0] == "singular") {
            if (t.size() != 6)
                r.fail("singular lines are 'singular <id> <compA> <compB> <degree> <valuation>'");
            d.singular_points.push_back({to_int(r, t[1]), to_int(r, t[2]), to_int(r, t[3]),
                                         to_long(r, t[4]), to_rational(r, t[5])});
        } else {
            r.fail("unexpected token '" + t[0] + "' in skeleton");
        }
    }
    return d;
}

void write_map_lines(std::ostringstream& os, const PLMap& m) {
    for (const auto& [v, w] : m.vertex_map) os << "vmap " << v << " " << w << "\n";
    for (const auto& [e, im] : m.edge_map) {
        if (im.crushed)
            os << "emap " << e << " vertex " << im.target << "\n";
        else
            os << "emap " << e << " edge " << im.target << " " << (im.reversed ? "-" : "+")
               << "\n";
    }
}

void write_poly(std::ostringstream& os, const Polynomial& p) {
    os << "poly";
    if (p.is_zero()) {
        os << " 0";
    } else {
        for (const auto& c : p.coeffs()) os << " " << rational_str(c);
    }
    os << "\n";
}

}  // namespace

std::string serialize_graph(const WeightedMetricGraph& g) {
    std::ostringstream os;
    os << "graph\n";
    for (const auto& v : g.vertices())
        os << "vertex " << v.id << " " << (v.boundary ? "boundary" : "interior") << "\n";
    for (const auto& e : g.edges())
        os << "edge " << e.id << " " << e.tail << " " << e.head << " " << rational_str(e.length)
           << " " << e.weight << "\n";
    os << "end\n";
    return os.str();
}

std::string serialize_form(const GraphForm& f) {
    std::ostringstream os;
    os << "form " << f.bidegree.p << " " << f.bidegree.q << " order " << f.order << "\n";
    for (const auto& [eid, c] : f.coeff) {
        os << "edge " << eid << "\n";
        os << "breaks";
        for (const auto& b : c.breakpoints()) os << " " << rational_str(b);
        os << "\n";
        for (size_t i = 0; i < c.piece_count(); ++i) write_poly(os, c.piece(i));
    }
    for (const auto& [vid, val] : f.vertex_values)
        os << "vertexvalue " << vid << " " << rational_str(val) << "\n";
    os << "end\n";
    return os.str();
}

std::string serialize_plmap(const PLMap& m) {
    std::ostringstream os;
    os << "plmap\nsource\n" << serialize_graph(m.source) << "target\n" << serialize_graph(m.target);
    write_map_lines(os, m);
    os << "end\n";
    return os.str();
}

std::string serialize_action(const GroupAction& a) {
    std::ostringstream os;
    os << "action\n" << serialize_graph(a.graph);
    for (const auto& el : a.elements) {
        os << "element\n";
        write_map_lines(os, el);
        os << "end\n";
    }
    os << "end\n";
    return os.str();
}

std::string serialize_trop(const HarmonicTropicalization& h) {
    std::ostringstream os;
    os << "trop " << h.n << "\n";
    for (int i = 0; i < h.n; ++i) {
        os << "component " << i << "\n";
        for (const auto& [v, val] : h.vertex_values[i])
            os << "value " << v << " " << rational_str(val) << "\n";
        for (const auto& [e, s] : h.slopes[i])
            os << "slope " << e << " " << rational_str(s) << "\n";
    }
    os << "end\n";
    return os.str();
}

std::string serialize_lagerberg(const LagerbergPolyForm& f) {
    std::ostringstream os;
    os << "lagerberg " << f.n << " " << f.bidegree.p << " " << f.bidegree.q << "\n";
    auto write_terms = [&](const MultiPoly& p) {
        for (const auto& [e, c] : p.terms()) {
            os << "term " << rational_str(c);
            for (int x : e) os << " " << x;
            os << "\n";
        }
    };
    if (f.bidegree == BD00 && !f.g0.is_zero()) {
        os << "coeff\n";
        write_terms(f.g0);
    }
    for (size_t i = 0; i < f.gi.size(); ++i)
        if (!f.gi[i].is_zero()) {
            os << "coeff " << i << "\n";
            write_terms(f.gi[i]);
        }
    for (size_t i = 0; i < f.gij.size(); ++i)
        for (size_t j = 0; j < f.gij[i].size(); ++j)
            if (!f.gij[i][j].is_zero()) {
                os << "coeff " << i << " " << j << "\n";
                write_terms(f.gij[i][j]);
            }
    os << "end\n";
    return os.str();
}

std::string serialize_cycle(const TropCycle& c) {
    std::ostringstream os;
    os << "tropcycle " << c.n << "\n";
    for (const auto& seg : c.segments) {
        os << "segment";
        for (const auto& x : seg.a) os << " " << rational_str(x);
        os << " ->";
        for (const auto& x : seg.b) os << " " << rational_str(x);
        os << " mult " << seg.multiplicity << "\n";
    }
    for (const auto& p : c.excluded) {
        os << "excluded";
        for (const auto& x : p) os << " " << rational_str(x);
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

std::string serialize_skeleton(const SkeletonDescription& d) {
    std::ostringstream os;
    os << "skeleton\n";
    for (const auto& c : d.components)
        os << "component " << c.id << " " << (c.proper ? "proper" : "nonproper") << "\n";
    for (const auto& s : d.singular_points)
        os << "singular " << s.id << " " << s.component_a << " " << s.component_b << " "
           << s.residue_degree << " " << rational_str(s.modulus_valuation) << "\n";
    os << "end\n";
    return os.str();
}

WeightedMetricGraph parse_graph(std::istream& in) {
    LineReader r(in);
    return parse_graph_body(r);
}
GraphForm parse_form(std::istream& in) {
    LineReader r(in);
    return parse_form_body(r);
}
PLMap parse_plmap(std::istream& in) {
    LineReader r(in);
    return parse_plmap_body(r);
}
GroupAction parse_action(std::istream& in) {
    LineReader r(in);
    return parse_action_body(r);
}
HarmonicTropicalization parse_trop(std::istream& in) {
    LineReader r(in);
    return parse_trop_body(r);
}
LagerbergPolyForm parse_lagerberg(std::istream& in) {
    LineReader r(in);
    return parse_lagerberg_body(r);
}
SkeletonDescription parse_skeleton(std::istream& in) {
    LineReader r(in);
    return parse_skeleton_body(r);
}

#define GF_STRING_WRAPPER(name, type)                 \
    type name##_string(const std::string& s) {        \
        std::istringstream in(s);                     \
        return name(in);                              \
    }
GF_STRING_WRAPPER(parse_graph, WeightedMetricGraph)
GF_STRING_WRAPPER(parse_form, GraphForm)
GF_STRING_WRAPPER(parse_plmap, PLMap)
GF_STRING_WRAPPER(parse_action, GroupAction)
GF_STRING_WRAPPER(parse_trop, HarmonicTropicalization)
GF_STRING_WRAPPER(parse_lagerberg, LagerbergPolyForm)
GF_STRING_WRAPPER(parse_skeleton, SkeletonDescription)
#undef GF_STRING_WRAPPER

ValidationReport validate_skeleton(const SkeletonDescription& d) {
    ValidationReport r;
    if (d.components.empty()) r.add("skeleton needs at least one component");
    std::map<int, bool> known;
    for (const auto& c : d.components) {
        if (known.count(c.id)) r.add("duplicate component " + std::to_string(c.id));
        known[c.id] = true;
    }
    for (const auto& s : d.singular_points) {
        if (s.component_a == s.component_b)
            r.add("singular point " + std::to_string(s.id) +
                  " joins a component to itself (no loop edges)");
        if (!known.count(s.component_a) || !known.count(s.component_b))
            r.add("singular point " + std::to_string(s.id) + " references unknown components");
        if (s.residue_degree <= 0)
            r.add("singular point " + std::to_string(s.id) + " has nonpositive residue degree");
        if (s.modulus_valuation <= 0)
            r.add("singular point " + std::to_string(s.id) + " has nonpositive modulus valuation");
    }
    return r;
}

WeightedMetricGraph skeleton_to_graph(const SkeletonDescription& d) {
    auto vr = validate_skeleton(d);
    if (!vr.ok()) throw std::invalid_argument("skeleton_to_graph: " + vr.problems.front());
    std::vector<Vertex> vs;
    for (const auto& c : d.components) vs.push_back({c.id, !c.proper});
    std::vector<Edge> es;
    for (const auto& s : d.singular_points)
        es.push_back({s.id, s.component_a, s.component_b, s.modulus_valuation, s.residue_degree});
    return WeightedMetricGraph(std::move(vs), std::move(es));
}

DolbeaultDimensions curve_cohomology(const SkeletonDescription& d) {
    WeightedMetricGraph g = skeleton_to_graph(d);
    std::vector<TreeAttachment> blowups;
    for (const auto& v : g.vertices())
        if (!v.boundary && g.valence(v.id) == 0) {
            WeightedMetricGraph spike({{0, false}, {1, false}}, {{0, 0, 1, Rational(1), 1}});
            blowups.push_back({v.id, spike, 0});
        }
    if (!blowups.empty()) g = modify(g, blowups).first;
    return dolbeault_dimensions(g);
}

}  // namespace graphforms
