#pragma once

#include "graphforms/forms.hpp"
#include "graphforms/multipoly.hpp"
#include "graphforms/plmap.hpp"

#include <optional>

namespace graphforms {

/**
 * Finitely generated additive subgroup of Q: the span of the generators is
 * c*Z for the rational gcd c. Its saturation is c*Q, which contains every
 * rational once the group is nontrivial.
 */
struct GammaGroup {
    std::vector<Rational> generators;
    Rational modulus() const;
    bool contains(const Rational& x) const;
    bool saturation_contains(const Rational& x) const;
};

/**
 * A tuple of harmonic functions h = (h_1, ..., h_n): vertex values plus
 * per-edge slopes on the canonical orientation, consistency-checked
 * against value(head) = value(tail) + slope * length.
 */
struct HarmonicTropicalization {
    int n = 0;
    std::vector<std::map<int, Rational>> vertex_values;  // [component][vertex id]
    std::vector<std::map<int, Rational>> slopes;         // [component][edge id]

    static HarmonicTropicalization from_values(const WeightedMetricGraph& g,
                                               std::vector<std::map<int, Rational>> values);
    std::vector<Rational> value_at_vertex(int vid) const;
};

/// How a subgraph edge sits inside its host edge of the ambient graph; the
/// (Z,Gamma) condition extends functions affinely to the host endpoints.
struct AmbientEdge {
    Rational host_length;
    Rational offset;       // host position of the sub-edge's tail
    bool reversed = false; // sub-edge runs against the host orientation
};

struct TropFlags {
    bool consistent = false;
    bool harmonic = false;
    bool z_harmonic = false;
    bool z_gamma_harmonic = false;
    std::string witness;
};

TropFlags check_harmonic_trop(const WeightedMetricGraph& g, const HarmonicTropicalization& h,
                              const GammaGroup& gamma,
                              const std::map<int, AmbientEdge>* ambient = nullptr);

/// Polynomial Lagerberg form on Q^n in bidegree (p,q) <= (1,1).
struct LagerbergPolyForm {
    int n = 0;
    Bidegree bidegree;
    MultiPoly g0;                          // (0,0)
    std::vector<MultiPoly> gi;             // (1,0) / (0,1)
    std::vector<std::vector<MultiPoly>> gij;  // (1,1)

    static LagerbergPolyForm zero(int n, Bidegree bd);
    static LagerbergPolyForm function(MultiPoly g);
    LagerbergPolyForm operator+(const LagerbergPolyForm& o) const;
    LagerbergPolyForm scaled(const Rational& s) const;
    bool same_form(const LagerbergPolyForm& o) const;
};

LagerbergPolyForm lagerberg_d_first(const LagerbergPolyForm& f);
LagerbergPolyForm lagerberg_d_second(const LagerbergPolyForm& f);
LagerbergPolyForm lagerberg_wedge(const LagerbergPolyForm& a, const LagerbergPolyForm& b);

/// h^* eta: exact pullback along a harmonic tropicalization.
GraphForm pullback_lagerberg(const WeightedMetricGraph& g, const HarmonicTropicalization& h,
                             const LagerbergPolyForm& eta, int order);

/// One-dimensional weighted rational polytopal complex in Q^n.
struct TropSegment {
    std::vector<Rational> a, b;   // endpoints, a < b lexicographically
    long multiplicity = 0;
};

struct TropCycle {
    int n = 0;
    std::vector<TropSegment> segments;              // refined: disjoint interiors
    std::vector<std::vector<Rational>> excluded;    // images of boundary vertices
};

/// Image complex of a Z-harmonic tropicalization with multiplicities
/// m_e = w(e) * gcd of the slopes; overlapping images are refined and summed.
TropCycle trop_cycle(const WeightedMetricGraph& g, const HarmonicTropicalization& h);

struct BalancingReport {
    bool balanced = false;
    /// Unbalanced points with their residual direction sums.
    std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> violations;
};

/// Weighted primitive outgoing directions must cancel at every 0-cell
/// outside the excluded points.
BalancingReport check_balancing(const TropCycle& cycle);

/// Integral of a polynomial (1,1) Lagerberg form over the cycle, by
/// lattice-length parameterization of each segment.
Rational trop_integrate(const TropCycle& cycle, const LagerbergPolyForm& eta);
/// Boundary integral of a (1,0)- or (0,1)-form over the cycle.
Rational trop_boundary_integrate(const TropCycle& cycle, const LagerbergPolyForm& eta);

struct CompatCheck {
    Rational graph_side;
    Rational trop_side;
    bool equal = false;
};

/// The integral-compatibility theorem: graph integrals of h* eta agree
/// with tropical integrals over Trop(Sigma), for all three integral types.
CompatCheck integration_compat_check(const WeightedMetricGraph& g,
                                     const HarmonicTropicalization& h,
                                     const LagerbergPolyForm& eta, int order);

/// F with F(t v_i) = f_i(t) on the star of rays v_1..v_n, v_0 = -(1,...,1);
/// requires matching values and balanced first derivatives at the origin.
MultiPoly polynomial_star_extension(int n, const std::vector<Polynomial>& ray_polys);

/// A point of a graph: a vertex or an interior point of an edge.
struct GraphPoint {
    bool at_vertex = true;
    int vertex = 0;
    int edge = 0;
    Rational position;

    static GraphPoint on_vertex(int v) { return {true, v, 0, Rational(0)}; }
    static GraphPoint on_edge(int e, Rational pos) { return {false, 0, e, std::move(pos)}; }
};

struct LocalPullbackCertificate {
    int case_id = 0;  // 1 edge interior, 2 valence-2, 3 interior leaf,
                      // 4 boundary vertex, 5 interior vertex of valence >= 3
    WeightedMetricGraph neighborhood;          // U, with the subgraph boundary
    std::map<int, AmbientEdge> ambient;        // per U edge
    std::map<int, int> host_edges;             // per U edge: containing edge of g
    HarmonicTropicalization trop;              // (Z,Gamma)-harmonic h on U
    LagerbergPolyForm form;                    // eta
    GraphForm restricted;                      // omega restricted to U
};

/**
 * Realizes a form near a point as the pullback of a polynomial Lagerberg
 * form under a (Z,Gamma)-harmonic tropicalization of a rational subgraph;
 * the returned data satisfies pullback(h, eta) = omega|_U exactly.
 */
LocalPullbackCertificate local_pullback_certificate(const WeightedMetricGraph& g,
                                                    const GraphForm& omega, const GraphPoint& x,
                                                    const GammaGroup& gamma);


/// Harmonicity flags of a single (0,0)-form viewed as a one-component
/// tropicalization (Z- and (Z,Gamma)-refinements included).
TropFlags check_harmonic_function(const WeightedMetricGraph& g, const GraphForm& f,
                                  const GammaGroup& gamma);

}  // namespace graphforms
