#pragma once

#include "graphforms/cohomology.hpp"
#include "graphforms/plmap.hpp"

namespace graphforms {

/**
 * A finite group acting on a graph by harmonic automorphisms. Elements are
 * PLMaps with source == target == graph that permute vertices and edges
 * (no crushing); closure and the identity are verified, the multiplication
 * table stays implicit.
 */
struct GroupAction {
    WeightedMetricGraph graph;
    std::vector<PLMap> elements;
};

/// Identity present, closure under composition, every element harmonic
/// and boundary-preserving, no crushed edges.
ValidationReport validate_action(const GroupAction& a);

/// Closes a generating set under composition (bounded; throws if the
/// generated group is unreasonably large).
GroupAction generate_group(const WeightedMetricGraph& g, const std::vector<PLMap>& generators);

struct EquivariantSubdivision {
    GroupAction action;
    GraphCorrespondence corr;   // original graph -> subdivided graph
    bool subdivided = false;
};

/// Subdivides until no edge has tail and head in the same vertex orbit
/// (in particular no element reverses an edge). One midpoint round always
/// suffices.
EquivariantSubdivision equivariant_subdivision(const GroupAction& a);

struct QuotientResult {
    WeightedMetricGraph graph;          // the quotient, trivial weights
    PLMap projection;                   // subdivided source -> quotient
    HarmonicityResult certificate;
    GroupAction action;                 // the equivariantly subdivided action
};

/// Orbit graph with the harmonic-mean edge lengths 1/l(E) = sum 1/l0(e'),
/// projection verified harmonic with the stabilizer cross-check.
QuotientResult quotient_graph(const GroupAction& a);

/// Checks pi o sigma = pi, fiber transitivity, boundary compatibility,
/// surjectivity and harmonicity for a candidate quotient.
ValidationReport verify_quotient(const GroupAction& a, const WeightedMetricGraph& sigma,
                                 const PLMap& pi);

/// Unique harmonic map through the quotient for a G-invariant harmonic map.
PLMap factor_through_quotient(const QuotientResult& q, const PLMap& phi_prime);

struct InvariantCohomology {
    DolbeaultDimensions invariant_ranks;  // ranks of the averaged projector
    DolbeaultDimensions quotient_dims;
    bool match = false;
    Mat projector00, projector10, projector01, projector11;
};

/// Rank of the averaging projector (1/|G|) sum sigma* on each H^{p,q},
/// compared against the quotient's dimensions.
InvariantCohomology invariant_cohomology(const GroupAction& a);

}  // namespace graphforms
