#pragma once

#include "graphforms/graph.hpp"
#include "graphforms/piecewise.hpp"

#include <map>

namespace graphforms {

struct Bidegree {
    int p = 0;
    int q = 0;
    bool operator==(const Bidegree&) const = default;
    int total() const { return p + q; }
    std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
};

inline constexpr Bidegree BD00{0, 0};
inline constexpr Bidegree BD10{1, 0};
inline constexpr Bidegree BD01{0, 1};
inline constexpr Bidegree BD11{1, 1};

/// Sign of the derived reverse-orientation coefficient: f_ebar = sign * reverse(f_e).
inline int reversal_sign(Bidegree bd) { return bd.total() % 2 == 0 ? 1 : -1; }

/**
 * A (p,q)-form on a weighted metric graph: one coefficient function per
 * unoriented edge, stored on the canonical (tail -> head) orientation.
 * Data for the reversed orientation is derived by the sign rule and never
 * stored. (0,0)-forms additionally carry one value per isolated vertex.
 */
struct GraphForm {
    Bidegree bidegree;
    int order = 3;  // smoothness order K, uniform across edges
    std::map<int, PiecewisePolynomial> coeff;
    std::map<int, Rational> vertex_values;

    const PiecewisePolynomial& at(int edge_id) const;
    GraphForm operator+(const GraphForm& o) const;
    GraphForm operator-(const GraphForm& o) const;
    GraphForm scaled(const Rational& s) const;
    bool is_zero() const;
    bool same_form(const GraphForm& o) const;
};

GraphForm zero_form(const WeightedMetricGraph& g, Bidegree bd, int order);
GraphForm constant_function(const WeightedMetricGraph& g, const Rational& value, int order);

/// Coefficient of the outgoing orientation at the given edge end.
PiecewisePolynomial outgoing_coefficient(const GraphForm& f, const EdgeEnd& end);

/// Value of a (0,0)-form at a vertex (isolated vertices use the stored value).
Rational form_value_at_vertex(const WeightedMetricGraph& g, const GraphForm& f, int vertex_id);

/// Checks every bidegree-specific condition of the form definitions;
/// interior vertices only, boundary vertices are unconstrained.
ValidationReport validate_form(const WeightedMetricGraph& g, const GraphForm& f);

/// d': (0,0) -> (1,0) and (0,1) -> (1,1).
GraphForm d_first(const WeightedMetricGraph& g, const GraphForm& f);
/// d'': (0,0) -> (0,1) and (1,0) -> (1,1) (with the sign -d/dt).
GraphForm d_second(const WeightedMetricGraph& g, const GraphForm& f);

GraphForm wedge(const WeightedMetricGraph& g, const GraphForm& a, const GraphForm& b);

/// J: swaps the bidegree; identity on (0,0), coefficient-preserving on
/// (1,0) <-> (0,1), negation on (1,1).
GraphForm lagerberg_involution(const GraphForm& f);

/// Integral of a (1,1)-form: sum over unoriented edges of w(e) * int f_e.
Rational integrate_graph(const WeightedMetricGraph& g, const GraphForm& f);

/// Boundary integral of a (1,0)- or (0,1)-form (outgoing resp. incoming
/// edge convention at boundary vertices).
Rational integrate_boundary(const WeightedMetricGraph& g, const GraphForm& f);
/// The all-vertices form of the same sum; agrees with integrate_boundary
/// for valid forms.
Rational integrate_boundary_all_vertices(const WeightedMetricGraph& g, const GraphForm& f);

struct StokesResult {
    Rational lhs;  // integral of d''w (resp. d'w) over the graph
    Rational rhs;  // boundary integral of w
    bool equal = false;
};
StokesResult stokes_check(const WeightedMetricGraph& g, const GraphForm& f);

/// nu^*: transport to the unweighting; coefficients scale by w^(p+q) and
/// reparameterize to edge length l/w.
GraphForm unweight_form(const WeightedMetricGraph& g, const GraphForm& f);
/// Inverse transport from the unweighting back to the weighted graph.
GraphForm reweight_form(const WeightedMetricGraph& g, const GraphForm& f0);

/// Transport along a subdivision correspondence (restriction to tiles).
GraphForm subdivide_form(const WeightedMetricGraph& subdivided, const GraphCorrespondence& corr,
                         const GraphForm& f);

}  // namespace graphforms
