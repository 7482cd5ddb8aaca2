#pragma once

#include "qdstrata/confgraph.hpp"

#include <string>
#include <vector>

namespace qdstrata {

// Local ribbon graph at one vertex: the incident sides split into boundary
// components, each cyclically ordered, plus the order k of every boundary
// singularity.  orders[i][l] is the order of the corner between comps[i][l]
// and comps[i][(l+1) % size].
struct LocalRibbon {
    std::vector<std::vector<int>> comps;        // side ids, cyclic
    std::vector<std::vector<long long>> orders; // corner orders k >= 0

    int num_comps() const { return static_cast<int>(comps.size()); }
    long long comp_order_sum(int i) const;
    long long d_value(int i) const { return comp_order_sum(i) - 2; }  // D_i
    long long total_order_sum() const;
    int total_sides() const;
};

// The twenty boundary types of the classification of embedded local ribbon
// graphs.  First symbol: vertex kind; second: valence; after the dot: number
// of boundary components; letters distinguish embeddings.
enum class BoundaryType {
    M11, M21, M22,
    C22, C32, C42,
    P21, P22,
    P31, P32a, P32b, P33,
    P41a, P41b, P42a, P42b, P42c, P43a, P43b, P44,
};

std::string boundary_type_name(BoundaryType t);

// Classify from component structure plus the embedding (cycle membership of
// sides, read off the graph).  Throws DomainError when the structure is not
// in the list.
BoundaryType classify_boundary_type(const ConfGraph& g, int v, const LocalRibbon& r);

// Corner parities (0 even / 1 odd) from the signed weights: even iff the two
// flanking sides carry equal signs.  Defined at '+' and 'o' vertices; at 'o'
// vertices every corner must come out even.  Shape matches r.orders.
std::vector<std::vector<int>> compute_parities(const ConfGraph& g, int v, const LocalRibbon& r);

// Check corner orders against the vertex type: k >= 0, parity match at '+',
// all zero at 'o', and the D_i lower bounds (>= 0 at '+', >= -1 at '-').
bool check_orders(const ConfGraph& g, int v, const LocalRibbon& r, std::vector<std::string>* why = nullptr);

}  // namespace qdstrata
