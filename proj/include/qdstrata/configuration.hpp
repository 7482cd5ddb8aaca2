#pragma once

#include "qdstrata/confgraph.hpp"
#include "qdstrata/ribbon.hpp"
#include "qdstrata/strata.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qdstrata {

// Full combinatorial record of a configuration of ĥomologous saddle
// connections: labelled graph, embedded local ribbon graphs with boundary
// orders, and interior singularity orders per vertex.
struct Configuration {
    ConfGraph graph;
    std::vector<LocalRibbon> local;               // one per vertex
    std::vector<std::vector<long long>> interior; // orders d_l per vertex, sorted desc

    int num_vertices() const { return graph.num_vertices(); }
};

struct Violation {
    int condition;  // 1..6, or 0 for structural problems
    std::string message;
};

// Conditions 1-6 of the definition of a configuration; empty result = valid.
std::vector<Violation> validate(const Configuration& c);
void require_valid(const Configuration& c);

// One face of the global ribbon graph: the cyclic chain of corners gathered
// around one newborn singularity.  Corners are recorded by the side they
// follow; orders[i] = k of the corner after sides[i].
struct Face {
    std::vector<int> sides;
    std::vector<long long> orders;
    long long newborn() const;  // b_m = sum (k+1) - 2
};

struct GlobalRibbonGraph {
    std::vector<Face> faces;
};

// b_m from a list of corner orders.
long long newborn_order(const std::vector<long long>& corner_orders);

// Faces of the global ribbon graph by tracing the side permutation
// s -> pred(opposite(s)); requires a valid configuration.
GlobalRibbonGraph global_ribbon_graph(const Configuration& c);

// alpha = interior orders of all +/- vertices, plus one newborn order per face.
QSingularityData singularity_data(const Configuration& c);

// One principal-boundary component: H(beta'_j) for a '+'-vertex,
// Q(alpha'_j) for a '-'-vertex.  Cylinders contribute nothing.
struct BoundaryComponent {
    int vertex;
    bool abelian;
    OrderMultiset entries;  // degrees (H) or orders (Q), zeros kept as marked points
    std::string to_string() const;
};

std::vector<BoundaryComponent> principal_boundary(const Configuration& c);

// Data of a '-'-vertex as tested by condition 6.
struct MinusVertexData {
    BoundaryType type;                 // M11, M21 or M22
    std::vector<long long> interior;   // multiset
    std::vector<long long> boundary;   // multiset of boundary orders
};

// Is the data in the literal condition-6 table?
bool in_condition6_table(const MinusVertexData& d);

// Two-sided consistency oracle: computes alpha'' (the stripped formal
// boundary stratum) and checks membership in the Masur--Smillie empty list;
// asserts it coincides with table membership, then returns it.
bool exceptional_equivalence(const MinusVertexData& d);

// Isomorphism-invariant encoding: equal strings exactly for configurations
// related by a kind-, ribbon-, order- and interior-preserving relabelling.
std::string canonical_form(const Configuration& c);

// JSON serialization.  Schema:
//   {"vertices":[{"kind":"+","interior":[2]},...],
//    "edges":[[0,1],...],
//    "ribbon":[[[["e0+",2],["e3-",0]],...],...]}
// Side "e<i>+" is side 2i (at edges[i][0]), "e<i>-" is side 2i+1; the number
// after a side is the order of the corner that follows it.
std::string to_json(const Configuration& c, bool pretty = false);
Configuration configuration_from_json(const std::string& text);
Configuration load_configuration_file(const std::string& path);  // '#' comment lines allowed

// Human-readable block used by the CLI; round-trips through
// load_configuration (its JSON line survives '#'-stripping).
std::string describe(const Configuration& c);

}  // namespace qdstrata
