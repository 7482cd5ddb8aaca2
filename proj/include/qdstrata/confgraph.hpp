#pragma once

#include <array>
#include <string>
#include <vector>

namespace qdstrata {

enum class VertexKind { Plus, Minus, Cyl };

char kind_char(VertexKind k);
VertexKind kind_from_char(char c);

// The graph Gamma(S,gamma) of connected components.  Vertices carry a +/-/o
// label; edges are the saddle connections.  Loops and parallel edges are
// allowed.  A *side* of edge e is 2e (at endpoint edges[e][0]) or 2e+1 (at
// endpoint edges[e][1]); a loop contributes both sides to one vertex.
struct ConfGraph {
    std::vector<VertexKind> kinds;
    std::vector<std::array<int, 2>> edges;

    int num_vertices() const { return static_cast<int>(kinds.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_sides() const { return 2 * num_edges(); }

    static int opposite_side(int s) { return s ^ 1; }
    int vertex_of_side(int s) const { return edges[s / 2][s % 2]; }
    bool is_loop(int e) const { return edges[e][0] == edges[e][1]; }

    std::vector<int> sides_at(int v) const;
    int valence(int v) const { return static_cast<int>(sides_at(v).size()); }

    bool connected() const;
    int betti() const;  // E - V + 1 for connected graphs
    bool is_bridge(int e) const;

    // Are two sides at the same vertex joined by a path avoiding that vertex?
    // (Encodes the dotted-line embedding data: sides bounding the same cycle.)
    bool same_cycle(int v, int s1, int s2) const;
};

enum class BaseType { A, B, C, D, E, Invalid };
std::string base_type_name(BaseType t);

// Base type after suppressing inserted valence-2 vertices, per the taxonomy of
// admissible graphs.  Invalid covers the banned theta shape, wrong labels,
// Betti number > 2, and every cylinder-placement violation.
BaseType classify_base_type(const ConfGraph& g);

// Human-readable reasons why classify_base_type fails; empty if admissible.
std::vector<std::string> graph_violations(const ConfGraph& g);

// Unsigned weight 1 or 2 per edge: the chain (bridge) edges of types c and d
// carry 2, everything else 1.
std::vector<int> assign_weights(const ConfGraph& g);

// Signed weights per side at a trivial-holonomy vertex: valence 2 -> {+1,-1},
// valence 3 -> {+1,+1,-2} with -2 on the bridge side, valence 4 ->
// {+1,+1,-1,-1} with sides of one cycle sharing the sign.  The global sign is
// fixed so the smallest side index at the vertex is positive.  Indexed in the
// order of sides_at(v).
std::vector<int> signed_weights_at(const ConfGraph& g, int v);

}  // namespace qdstrata
