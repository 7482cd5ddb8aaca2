#pragma once

#include "qdstrata/configuration.hpp"

#include <string>
#include <vector>

namespace qdstrata {

// Search-space scale for the completeness cross-check: factor 1 uses the
// derived exact bounds, factor 2 doubles the edge budget and relaxes the
// corner-mass identity to an inequality (the results must coincide).
struct EnumerationBounds {
    int factor = 1;
};

// All configurations c with singularity_data(c) == alpha, deduplicated by
// canonical form and sorted by it.  alpha must be valid and nonempty.
std::vector<Configuration> enumerate_configurations(const QSingularityData& alpha,
                                                    const EnumerationBounds& bounds = {});

// Three-column report for Q(2,2), Q(2,1,1), Q(1,1,1,1).
std::string genus2_table();

// Deterministic stream of admissible '+'-vertex data (host graph, embedded
// ribbon with orders, interior orders) as produced by the enumeration
// machinery; used by the per-vertex arithmetic property suite.
struct PlusVertexData {
    ConfGraph graph;
    int vertex;
    LocalRibbon ribbon;
    std::vector<long long> interior;
};

std::vector<PlusVertexData> generate_plus_vertices(int count);

}  // namespace qdstrata
