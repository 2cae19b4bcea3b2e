#pragma once

#include "graphforms/forms.hpp"

#include <optional>

namespace graphforms {

/// Image of a source edge under a piecewise linear map: a target edge with
/// an orientation flag, or a target vertex (crushed).
struct EdgeImage {
    bool crushed = false;
    int target = 0;    // edge id, or vertex id when crushed
    bool reversed = false;
};

/**
 * Piecewise linear map of weighted metric graphs. The stored source and
 * target are the subdivisions on which the map is simplicial: vertices go
 * to vertices and each edge maps linearly onto an edge or onto a vertex.
 * Expansion factors d_e'(phi) = l(phi(e'))/l(e') are derived, never stored.
 */
struct PLMap {
    WeightedMetricGraph source;
    WeightedMetricGraph target;
    std::map<int, int> vertex_map;       // source vertex id -> target vertex id
    std::map<int, EdgeImage> edge_map;   // source edge id -> image

    static PLMap identity(const WeightedMetricGraph& g);

    Rational expansion(int source_edge) const;
    /// Image of the oriented edge outgoing at an end (nullopt if crushed).
    std::optional<EdgeEnd> image_end(const EdgeEnd& end) const;
    /// True if some edge at the vertex is not crushed.
    bool nonconstant_near(int source_vertex) const;
};

ValidationReport validate_plmap(const PLMap& m);

struct HarmonicityResult {
    bool harmonic = false;
    std::map<int, Rational> local_degree;   // per interior source vertex
    std::map<int, Rational> edge_degree;    // per target edge
    std::optional<Rational> degree;         // global degree, when defined
    std::string failure;                    // first witness, empty when harmonic
};

/// Local degrees per Eq. d_v'(phi) = l0(e) * sum 1/l0(e'), checked to be
/// independent of the outgoing target edge at every interior source vertex.
HarmonicityResult harmonicity(const PLMap& m);

/// Pullback of a form along a harmonic map.
GraphForm pullback_form(const PLMap& m, const GraphForm& f);

/// phi o psi (psi applied first). Requires psi.target == phi.source.
PLMap compose(const PLMap& phi, const PLMap& psi);

/// Subdivide the target at given points and the source at all their
/// preimages, keeping the map simplicial.
PLMap refine_target(const PLMap& m, const std::vector<std::pair<int, Rational>>& target_points);
/// Subdivide the source at given points (their images become target
/// vertices first).
PLMap refine_source(const PLMap& m, const std::vector<std::pair<int, Rational>>& source_points);

bool plmaps_equal(const PLMap& a, const PLMap& b);

struct PullbackIntegralCheck {
    Rational lhs;  // integral of the pullback over the source
    Rational rhs;  // d(phi) times the integral over the target
    bool equal = false;
};
/// Lemma "integral of pullback": covers the (1,1) graph integral and both
/// boundary integrals, dispatched on the bidegree of f.
PullbackIntegralCheck integrate_pullback_check(const PLMap& m, const GraphForm& f);

struct HarmonicFunctionReport {
    bool harmonic = false;
    std::map<int, Rational> slopes;  // per edge, canonical orientation
    bool integer_slopes = false;
    std::string failure;
};

/// A harmonic function is a valid (0,0)-form that is linear (single piece,
/// degree <= 1) on every edge.
HarmonicFunctionReport is_harmonic_function(const WeightedMetricGraph& g, const GraphForm& f);

struct HarmonicBasisElement {
    std::map<int, Rational> vertex_values;
    std::map<int, Rational> slopes;  // derived: (value(head) - value(tail))/l(e)
};

/// Exact basis of the space of harmonic functions: kernel of the weighted
/// slope-balancing system at interior vertices, unknowns the vertex values.
std::vector<HarmonicBasisElement> harmonic_function_space(const WeightedMetricGraph& g);

/// Builds the unweighting map nu: Sigma_0 -> Sigma as a PLMap.
PLMap unweighting_map(const WeightedMetricGraph& g);

/// Attach weighted metric trees at vertices; returns the modification and
/// the harmonic retraction crushing each tree to its attachment point.
struct TreeAttachment {
    int at_vertex = 0;              // vertex of the base graph
    WeightedMetricGraph tree;
    int root = 0;                   // vertex of the tree glued onto at_vertex
};
std::pair<WeightedMetricGraph, PLMap> modify(const WeightedMetricGraph& g,
                                             const std::vector<TreeAttachment>& trees);

/// Inclusion of a modification's base graph into the modified graph.
PLMap modification_inclusion(const WeightedMetricGraph& g, const WeightedMetricGraph& modified);

}  // namespace graphforms
