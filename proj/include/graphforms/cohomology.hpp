#pragma once

#include "graphforms/forms.hpp"
#include "graphforms/linalg.hpp"
#include "graphforms/plmap.hpp"

#include <optional>

namespace graphforms {

struct DolbeaultDimensions {
    long h00 = 0, h10 = 0, h01 = 0, h11 = 0;
    bool operator==(const DolbeaultDimensions&) const = default;
};

/// Dimensions computed by linear algebra on the unweighting: h00 from
/// components, h01 from the cycle space, h10 from the kernel of the
/// interior rows of the incidence matrix, h11 from boundaryless
/// components that carry an edge.
DolbeaultDimensions dolbeault_dimensions(const WeightedMetricGraph& g);
std::vector<DolbeaultDimensions> dolbeault_dimensions_per_component(const WeightedMetricGraph& g);
/// The closed-form table per connected component (single-vertex components
/// get h11 = 0).
DolbeaultDimensions dolbeault_closed_form(const WeightedMetricGraph& g);

/// An oriented step of a path: an edge traversed forward or backward.
struct PathStep {
    int edge = 0;
    bool reversed = false;
};

struct CohomologyBasis {
    int order = 3;
    // H^{0,0}: indicator functions of the connected components.
    std::vector<GraphForm> h00;
    std::vector<int> components;  // component index per h00 element

    // H^{1,0}: edge-constant (1,0)-forms; vectors indexed like g.edges().
    std::vector<Vec> h10_vectors;
    std::vector<GraphForm> h10;

    // H^{0,1}: unit-integral bump forms on the non-forest edges.
    std::vector<GraphForm> h01;
    std::vector<int> nontree_edges;
    std::vector<std::vector<PathStep>> cycles;  // fundamental cycle per basis element
    std::vector<int> forest_edges;

    // H^{1,1}: one normalized generator per boundaryless component with an edge.
    std::vector<GraphForm> h11;
    std::vector<int> h11_components;
};

/// Deterministic basis: spanning forest by ascending edge id, bumps on the
/// middle half of each non-forest edge, kernel vectors in rref order.
CohomologyBasis cohomology_basis(const WeightedMetricGraph& g, int order);

struct DbarPreimage {
    bool success = false;
    std::optional<GraphForm> preimage;
    /// (1,1) input: total integral per boundaryless-with-edge component;
    /// (0,1) input: fundamental cycle integrals. Nonzero entries obstruct.
    Vec obstruction;
};

/// Solves d'' eta = omega exactly, or reports the obstruction class.
DbarPreimage dbar_preimage(const WeightedMetricGraph& g, const GraphForm& omega);

/// Integral of a (0,1)-form along a path (computed on the unweighting).
Rational path_integral(const WeightedMetricGraph& g, const GraphForm& omega,
                       const std::vector<PathStep>& path);

/// Coordinates of a d''-closed form in the basis: cycle integrals for
/// (0,1), per-generator component integrals for (1,1), a linear solve in
/// the edge-constant vectors for (1,0), component values for (0,0).
Vec class_coordinates(const WeightedMetricGraph& g, const CohomologyBasis& basis,
                      const GraphForm& omega);

struct PoincarePairing {
    bool applicable = false;      // boundaryless, no isolated vertices
    std::string reason;           // when not applicable
    std::vector<Rational> scalar; // H^{0,0} x H^{1,1} per component
    Mat gram;                     // H^{1,0} x H^{0,1}
    bool perfect = false;
};

PoincarePairing poincare_pairing(const WeightedMetricGraph& g, const CohomologyBasis& basis);

struct CohomologyPullback {
    Mat h00, h10, h01, h11;  // matrices: target basis coordinates -> source
};

/// Matrix of the induced map on each H^{p,q} with respect to the two bases.
CohomologyPullback cohomology_pullback(const PLMap& m, const CohomologyBasis& source_basis,
                                       const CohomologyBasis& target_basis);

}  // namespace graphforms
