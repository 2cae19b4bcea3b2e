#include "graphforms/graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace graphforms {

std::string ValidationReport::str() const {
    std::ostringstream os;
    for (const auto& p : problems) os << p << "\n";
    return os.str();
}

WeightedMetricGraph::WeightedMetricGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::sort(vertices_.begin(), vertices_.end(),
              [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (size_t i = 0; i < vertices_.size(); ++i) {
        if (!vindex_.emplace(vertices_[i].id, static_cast<int>(i)).second)
            throw std::invalid_argument("graph: duplicate vertex id " + std::to_string(vertices_[i].id));
        ends_[vertices_[i].id];
    }
    for (size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (!eindex_.emplace(e.id, static_cast<int>(i)).second)
            throw std::invalid_argument("graph: duplicate edge id " + std::to_string(e.id));
        if (!vindex_.count(e.tail) || !vindex_.count(e.head))
            throw std::invalid_argument("graph: edge " + std::to_string(e.id) +
                                        " references missing vertex");
        ends_[e.tail].push_back({e.id, true});
        ends_[e.head].push_back({e.id, false});
    }
    for (auto& [vid, ee] : ends_) {
        (void)vid;
        std::sort(ee.begin(), ee.end(), [](const EdgeEnd& a, const EdgeEnd& b) {
            return a.edge != b.edge ? a.edge < b.edge : (a.at_tail && !b.at_tail);
        });
    }
    // Components by union over edges, labeled in order of smallest vertex id.
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& v : vertices_) parent[v.id] = v.id;
    for (const auto& e : edges_) {
        int a = find(e.tail), b = find(e.head);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    for (const auto& v : vertices_) {
        int root = find(v.id);
        if (!component_.count(root)) {
            int idx = component_count_++;
            component_[root] = idx;
        }
    }
    std::map<int, int> roots = component_;
    component_.clear();
    for (const auto& v : vertices_) component_[v.id] = roots[find(v.id)];
}

const Vertex& WeightedMetricGraph::vertex(int id) const {
    auto it = vindex_.find(id);
    if (it == vindex_.end()) throw std::invalid_argument("graph: no vertex " + std::to_string(id));
    return vertices_[it->second];
}

const Edge& WeightedMetricGraph::edge(int id) const {
    auto it = eindex_.find(id);
    if (it == eindex_.end()) throw std::invalid_argument("graph: no edge " + std::to_string(id));
    return edges_[it->second];
}

const std::vector<EdgeEnd>& WeightedMetricGraph::ends_at(int vid) const {
    auto it = ends_.find(vid);
    if (it == ends_.end()) throw std::invalid_argument("graph: no vertex " + std::to_string(vid));
    return it->second;
}

int WeightedMetricGraph::max_vertex_id() const {
    int m = -1;
    for (const auto& v : vertices_) m = std::max(m, v.id);
    return m;
}

int WeightedMetricGraph::max_edge_id() const {
    int m = -1;
    for (const auto& e : edges_) m = std::max(m, e.id);
    return m;
}

bool graphs_equal(const WeightedMetricGraph& a, const WeightedMetricGraph& b) {
    if (a.vertices().size() != b.vertices().size() || a.edges().size() != b.edges().size())
        return false;
    for (size_t i = 0; i < a.vertices().size(); ++i) {
        const Vertex &va = a.vertices()[i], &vb = b.vertices()[i];
        if (va.id != vb.id || va.boundary != vb.boundary) return false;
    }
    for (size_t i = 0; i < a.edges().size(); ++i) {
        const Edge &ea = a.edges()[i], &eb = b.edges()[i];
        if (ea.id != eb.id || ea.tail != eb.tail || ea.head != eb.head ||
            ea.length != eb.length || ea.weight != eb.weight)
            return false;
    }
    return true;
}

ValidationReport validate_graph(const WeightedMetricGraph& g) {
    ValidationReport r;
    for (const auto& e : g.edges()) {
        if (e.tail == e.head) r.add("loop edge " + std::to_string(e.id));
        if (e.length <= 0) r.add("nonpositive length on edge " + std::to_string(e.id));
        if (e.weight <= 0) r.add("nonpositive weight on edge " + std::to_string(e.id));
    }
    return r;
}

std::pair<WeightedMetricGraph, GraphCorrespondence> unweight(const WeightedMetricGraph& g) {
    std::vector<Edge> edges = g.edges();
    GraphCorrespondence corr;
    for (auto& e : edges) {
        corr.edge_map[e.id] = {{e.id, false, Rational(0), e.length}};
        e.length = e.length / e.weight;
        e.weight = 1;
    }
    for (const auto& v : g.vertices()) corr.vertex_map[v.id] = v.id;
    return {WeightedMetricGraph(g.vertices(), std::move(edges)), std::move(corr)};
}

std::pair<WeightedMetricGraph, GraphCorrespondence> subdivide(
    const WeightedMetricGraph& g, const std::vector<std::pair<int, Rational>>& points) {
    std::map<int, std::vector<Rational>> per_edge;
    for (const auto& [eid, pos] : points) {
        const Edge& e = g.edge(eid);
        if (pos <= 0 || pos >= e.length)
            throw std::invalid_argument("subdivide: position " + pos.str() +
                                        " not interior to edge " + std::to_string(eid));
        per_edge[eid].push_back(pos);
    }
    for (auto& [eid, ps] : per_edge) {
        std::sort(ps.begin(), ps.end());
        if (std::adjacent_find(ps.begin(), ps.end()) != ps.end())
            throw std::invalid_argument("subdivide: repeated position on edge " + std::to_string(eid));
    }

    std::vector<Vertex> vertices = g.vertices();
    std::vector<Edge> edges;
    GraphCorrespondence corr;
    for (const auto& v : g.vertices()) corr.vertex_map[v.id] = v.id;
    int next_v = g.max_vertex_id() + 1;
    int next_e = g.max_edge_id() + 1;
    for (const auto& e : g.edges()) {
        auto it = per_edge.find(e.id);
        if (it == per_edge.end()) {
            edges.push_back(e);
            corr.edge_map[e.id] = {{e.id, false, Rational(0), e.length}};
            continue;
        }
        std::vector<Rational> cuts{Rational(0)};
        cuts.insert(cuts.end(), it->second.begin(), it->second.end());
        cuts.push_back(e.length);
        int prev = e.tail;
        std::vector<EdgeTile> tiles;
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            int to = (i + 2 == cuts.size()) ? e.head : next_v;
            if (i + 2 < cuts.size()) vertices.push_back({next_v++, false});
            Edge seg{next_e, prev, to, cuts[i + 1] - cuts[i], e.weight};
            tiles.push_back({next_e, false, cuts[i], cuts[i + 1]});
            edges.push_back(seg);
            ++next_e;
            prev = to;
        }
        corr.edge_map[e.id] = std::move(tiles);
    }
    return {WeightedMetricGraph(std::move(vertices), std::move(edges)), std::move(corr)};
}

std::vector<std::pair<int, long>> genus(const WeightedMetricGraph& g) {
    std::vector<long> edge_count(g.component_count(), 0), vertex_count(g.component_count(), 0);
    for (const auto& v : g.vertices()) vertex_count[g.component_of().at(v.id)]++;
    for (const auto& e : g.edges()) edge_count[g.component_of().at(e.tail)]++;
    std::vector<std::pair<int, long>> out;
    for (int c = 0; c < g.component_count(); ++c)
        out.emplace_back(c, edge_count[c] - vertex_count[c] + 1);
    return out;
}

long total_genus(const WeightedMetricGraph& g) {
    long t = 0;
    for (const auto& [c, gg] : genus(g)) {
        (void)c;
        t += gg;
    }
    return t;
}

WeightedMetricGraph subgraph(const WeightedMetricGraph& g, const std::vector<int>& edge_ids,
                             const std::vector<int>& extra_vertex_ids) {
    std::map<int, bool> keep_edge;
    for (int eid : edge_ids) {
        g.edge(eid);  // existence check
        keep_edge[eid] = true;
    }
    std::map<int, bool> keep_vertex;
    for (int vid : extra_vertex_ids) {
        g.vertex(vid);
        keep_vertex[vid] = true;
    }
    for (const auto& [eid, _] : keep_edge) {
        (void)_;
        keep_vertex[g.edge(eid).tail] = true;
        keep_vertex[g.edge(eid).head] = true;
    }
    std::vector<Vertex> vertices;
    for (const auto& v : g.vertices()) {
        if (!keep_vertex.count(v.id)) continue;
        bool rel_boundary = false;
        for (const auto& ee : g.ends_at(v.id))
            if (!keep_edge.count(ee.edge)) rel_boundary = true;
        vertices.push_back({v.id, v.boundary || rel_boundary});
    }
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        if (keep_edge.count(e.id)) edges.push_back(e);
    return WeightedMetricGraph(std::move(vertices), std::move(edges));
}

std::vector<std::vector<Rational>> incidence_matrix(const WeightedMetricGraph& g) {
    std::vector<std::vector<Rational>> B(g.vertices().size(),
                                         std::vector<Rational>(g.edges().size(), Rational(0)));
    std::map<int, size_t> vrow;
    for (size_t i = 0; i < g.vertices().size(); ++i) vrow[g.vertices()[i].id] = i;
    for (size_t j = 0; j < g.edges().size(); ++j) {
        const Edge& e = g.edges()[j];
        B[vrow[e.head]][j] += 1;
        B[vrow[e.tail]][j] -= 1;
    }
    return B;
}

}  // namespace graphforms
