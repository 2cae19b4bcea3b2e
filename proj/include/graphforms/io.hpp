#pragma once

#include "graphforms/cohomology.hpp"
#include "graphforms/quotient.hpp"
#include "graphforms/tropical.hpp"

#include <iosfwd>
#include <string>

namespace graphforms {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

std::string serialize_graph(const WeightedMetricGraph& g);
std::string serialize_form(const GraphForm& f);
std::string serialize_plmap(const PLMap& m);
std::string serialize_action(const GroupAction& a);
std::string serialize_trop(const HarmonicTropicalization& h);
std::string serialize_lagerberg(const LagerbergPolyForm& f);
std::string serialize_cycle(const TropCycle& c);

WeightedMetricGraph parse_graph(std::istream& in);
GraphForm parse_form(std::istream& in);
PLMap parse_plmap(std::istream& in);
GroupAction parse_action(std::istream& in);
HarmonicTropicalization parse_trop(std::istream& in);
LagerbergPolyForm parse_lagerberg(std::istream& in);

WeightedMetricGraph parse_graph_string(const std::string& s);
GraphForm parse_form_string(const std::string& s);
PLMap parse_plmap_string(const std::string& s);
GroupAction parse_action_string(const std::string& s);
HarmonicTropicalization parse_trop_string(const std::string& s);
LagerbergPolyForm parse_lagerberg_string(const std::string& s);

/// Combinatorial description of the skeleton of a strictly semistable
/// curve model: components become vertices, singular points become edges
/// with length the modulus valuation and weight the residue degree;
/// non-proper components form the boundary.
struct SkeletonComponent {
    int id = 0;
    bool proper = true;
};

struct SkeletonSingularPoint {
    int id = 0;
    int component_a = 0;
    int component_b = 0;
    long residue_degree = 1;
    Rational modulus_valuation;
};

struct SkeletonDescription {
    std::vector<SkeletonComponent> components;
    std::vector<SkeletonSingularPoint> singular_points;
};

ValidationReport validate_skeleton(const SkeletonDescription& d);
WeightedMetricGraph skeleton_to_graph(const SkeletonDescription& d);

/// Curve Dolbeault table from skeleton data. Smooth proper components with
/// no singular points are isolated interior vertices of the incidence
/// graph; they are normalized away by attaching an edge (the blow-up of a
/// smooth point) before computing, so the table matches the curve.
DolbeaultDimensions curve_cohomology(const SkeletonDescription& d);

std::string serialize_skeleton(const SkeletonDescription& d);
SkeletonDescription parse_skeleton(std::istream& in);
SkeletonDescription parse_skeleton_string(const std::string& s);

}  // namespace graphforms
