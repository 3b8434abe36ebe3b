#pragma once

#include <variant>

#include "skydiag/approx.hpp"
#include "skydiag/grid.hpp"

namespace skydiag {

// Precomputed exact diagram: constant-time answers via span lookup.
struct SkylineDiagram {
    DiagramKind kind = DiagramKind::Quadrant;
    int dim = 2;
    Dataset dataset;
    DiagramPartition partition;

    ResultSet query(const QueryPoint& raw_q) const;
};

// delta-bounded tiling over the same grid.
struct ApproxSkylineDiagram {
    DiagramKind kind = DiagramKind::Quadrant;
    int dim = 2;
    Dataset dataset;
    std::vector<Axis> axes;
    ApproxDiagram tiling;

    ResultSet query(const QueryPoint& raw_q) const;
};

using AnyDiagram = std::variant<SkylineDiagram, ApproxSkylineDiagram>;

// Structural equality over the serialized content (boundary chains are a
// build by-product and take no part).
bool same_structure(const SkylineDiagram& a, const SkylineDiagram& b);
bool same_structure(const ApproxSkylineDiagram& a, const ApproxSkylineDiagram& b);

void save_diagram(const SkylineDiagram& d, const std::string& path);
void save_diagram(const ApproxSkylineDiagram& d, const std::string& path);
// Strict load: version must be 1, unknown fields are rejected, malformed
// content raises SchemaError naming the field.
AnyDiagram load_diagram(const std::string& path);

}  // namespace skydiag
