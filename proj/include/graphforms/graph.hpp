#pragma once

#include "graphforms/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace graphforms {

/// Violations collected as data; empty means valid.
struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
    void add(std::string p) { problems.push_back(std::move(p)); }
    std::string str() const;
};

struct Vertex {
    int id = 0;
    bool boundary = false;
};

/// Unoriented edge stored once; the canonical orientation is tail -> head.
struct Edge {
    int id = 0;
    int tail = 0;
    int head = 0;
    Rational length;
    long weight = 1;
};

/// One end of an edge as seen from a vertex (outgoing orientation).
struct EdgeEnd {
    int edge = 0;
    bool at_tail = true;  // true: the vertex is the tail of the stored record
};

/**
 * Weighted metric multigraph with boundary. No loop edges; every edge
 * carries a positive rational length and a positive integer weight; the
 * boundary is an arbitrary vertex subset. Immutable after construction.
 */
class WeightedMetricGraph {
public:
    WeightedMetricGraph() = default;
    WeightedMetricGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Vertex& vertex(int id) const;
    const Edge& edge(int id) const;
    bool has_vertex(int id) const { return vindex_.count(id) > 0; }
    bool has_edge(int id) const { return eindex_.count(id) > 0; }
    bool is_boundary(int vid) const { return vertex(vid).boundary; }

    /// Outgoing edge ends at a vertex, ordered by (edge id, tail-end first).
    const std::vector<EdgeEnd>& ends_at(int vid) const;
    size_t valence(int vid) const { return ends_at(vid).size(); }

    /// Unweighted length l0(e) = l(e)/w(e).
    Rational length0(int eid) const {
        const Edge& e = edge(eid);
        return e.length / e.weight;
    }

    /// The far endpoint of an edge end and its local start vertex.
    int end_source(const EdgeEnd& ee) const { return ee.at_tail ? edge(ee.edge).tail : edge(ee.edge).head; }
    int end_target(const EdgeEnd& ee) const { return ee.at_tail ? edge(ee.edge).head : edge(ee.edge).tail; }

    /// Component index per vertex id; components numbered by smallest vertex id.
    const std::map<int, int>& component_of() const { return component_; }
    int component_count() const { return component_count_; }

    int max_vertex_id() const;
    int max_edge_id() const;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::map<int, int> vindex_;
    std::map<int, int> eindex_;
    std::map<int, std::vector<EdgeEnd>> ends_;
    std::map<int, int> component_;
    int component_count_ = 0;
};

/// Identification of a source graph inside a target graph, used to track
/// subdivisions and unweightings. A source edge is tiled by target edges.
struct EdgeTile {
    int target_edge = 0;
    bool reversed = false;
    Rational source_start;  // sub-interval of the source edge covered by the tile
    Rational source_end;
};

struct GraphCorrespondence {
    std::map<int, int> vertex_map;                 // source vertex -> target vertex
    std::map<int, std::vector<EdgeTile>> edge_map; // source edge -> tiles in order
};

bool graphs_equal(const WeightedMetricGraph& a, const WeightedMetricGraph& b);

ValidationReport validate_graph(const WeightedMetricGraph& g);

/// Unweighting: identical combinatorics, weights 1, lengths l(e)/w(e).
std::pair<WeightedMetricGraph, GraphCorrespondence> unweight(const WeightedMetricGraph& g);

/// Insert new interior vertices at the given positions. Positions must be
/// strictly inside (0, l) and distinct per edge. Subdivided edges are
/// replaced by fresh-id segments; untouched edges keep their ids.
std::pair<WeightedMetricGraph, GraphCorrespondence> subdivide(
    const WeightedMetricGraph& g, const std::vector<std::pair<int, Rational>>& points);

/// Per connected component (keyed by component index): #E+ - #V + 1.
std::vector<std::pair<int, long>> genus(const WeightedMetricGraph& g);
long total_genus(const WeightedMetricGraph& g);

/// Induced subgraph on the given closed edges plus extra isolated vertices.
/// Boundary = (subgraph's vertices in the ambient boundary) union the
/// relative topological boundary (vertices incident to missing edges).
WeightedMetricGraph subgraph(const WeightedMetricGraph& g, const std::vector<int>& edge_ids,
                             const std::vector<int>& extra_vertex_ids);

/// Oriented incidence matrix: rows ordered by vertex id, columns by edge id,
/// column of e is (e+) - (e-).
std::vector<std::vector<Rational>> incidence_matrix(const WeightedMetricGraph& g);

}  // namespace graphforms
