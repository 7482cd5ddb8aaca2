#pragma once

#include "qdstrata/configuration.hpp"
#include "qdstrata/numeric.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qdstrata {

// Polygonal half-translation surface with exact rational coordinates.
// Polygons are simple and counterclockwise; every edge is glued to exactly
// one partner edge, by a translation (partner vector opposite) or by a flip
// z -> -z + c (partner vector equal).
class FlatSurface {
  public:
    struct Polygon {
        std::string name;
        std::vector<Vec2> v;
        int size() const { return static_cast<int>(v.size()); }
    };
    struct EdgeRef {
        int poly = -1, edge = -1;
        bool operator==(const EdgeRef& o) const { return poly == o.poly && edge == o.edge; }
        bool operator<(const EdgeRef& o) const { return poly != o.poly ? poly < o.poly : edge < o.edge; }
    };

    std::vector<Polygon> polys;
    std::vector<std::vector<EdgeRef>> partner;  // [poly][edge]
    std::vector<std::vector<char>> flips;       // [poly][edge], 1 = flip

    static FlatSurface parse(std::istream& in);
    static FlatSurface load(const std::string& path);

    int num_polys() const { return static_cast<int>(polys.size()); }
    const Vec2& vertex(int p, int i) const { return polys[p].v[i]; }
    int next_i(int p, int i) const { return (i + 1) % polys[p].size(); }
    int prev_i(int p, int i) const { return (i + polys[p].size() - 1) % polys[p].size(); }
    Vec2 edge_vec(int p, int i) const { return vertex(p, next_i(p, i)) - vertex(p, i); }

    // Gluing map from the chart of (p,e) to the chart of its partner.
    Vec2 map_across(int p, int e, const Vec2& z) const;
    Vec2 dir_across(int p, int e, const Vec2& d) const { return flips[p][e] ? -d : d; }

    // Cached edge vector (the polygons are immutable once built).
    const Vec2& edge_vec_c(int p, int i) const {
        ensure_edge_vecs();
        return evecs_[p][i];
    }

    // Structural and metric validation; throws on failure.
    void validate() const;

    bool connected() const;
    Rational area() const;
    Integer coordinate_denominator() const;  // lcm of all vertex coordinate denominators

    // --- cone points -------------------------------------------------------
    // Corners (p,i) grouped into vertex classes; angle as a multiple of pi.
    struct VertexClass {
        std::vector<std::pair<int, int>> corners;  // (poly, vertex index)
        long long angle_pi = 0;                    // total angle / pi
        long long order() const { return angle_pi - 2; }
        bool is_cone() const { return angle_pi != 2; }
    };
    const std::vector<VertexClass>& vertex_classes() const;
    int class_of(int p, int i) const;

    std::vector<long long> cone_angles_pi() const;  // all classes, sorted desc
    QSingularityData cone_data() const;             // orders with d = 0 classes dropped

    bool holonomy_trivial() const;

    // Orientation double cover: two copies of each polygon (second negated),
    // flips cross sheets; the result is a translation surface.  Polygon p on
    // sheet s maps to index p + s * num_polys().
    FlatSurface double_cover() const;

  private:
    mutable std::vector<VertexClass> classes_;
    mutable std::vector<std::vector<int>> class_of_;
    mutable std::vector<std::vector<Vec2>> evecs_;
    void ensure_classes() const;
    void ensure_edge_vecs() const;
};

// One straight piece of a saddle connection inside a polygon: a chord from a
// to b (both on the boundary), or a run along glued edge `along_edge`
// (a, b are then that edge's endpoints in traversal order).  eps is the
// orientation of the developing chart for this piece (+1/-1 relative to the
// start of the saddle connection).
struct SCPart {
    int poly = -1;
    Vec2 a, b;
    int along_edge = -1;
    int eps = 1;
};

struct SaddleConnection {
    std::vector<SCPart> parts;
    Vec2 holonomy;   // canonical sign
    Rational len2;   // squared length
    int cls_a = -1, cls_b = -1;  // endpoint vertex classes
    std::string key; // canonical identity (orientation-independent)

    bool is_closed() const { return cls_a == cls_b; }
};

// Straight-line development of the ray leaving `cls` through its `ray_index`-th
// outgoing ray parallel to `dir` (primitive), up to length `maxlen`.
std::optional<SaddleConnection> trace_separatrix(const FlatSurface& s, int cls, int ray_index, const Vec2& dir,
                                                 const Rational& maxlen);

// Number of outgoing rays at class `cls` parallel to `dir` (same sign).
int num_rays(const FlatSurface& s, int cls, const Vec2& dir);

// Do the two saddle connections share an interior point?
bool interior_intersect(const FlatSurface& s, const SaddleConnection& a, const SaddleConnection& b);

// --- cutting ----------------------------------------------------------------

// The surface refined so that every saddle connection of the collection is a
// union of glued mesh edges; chords become identity gluings.
struct RefinedSurface {
    FlatSurface mesh;
    std::vector<int> face_source;  // per mesh polygon: source polygon of the input surface
    std::vector<int> side_base;    // per mesh polygon: first side id
    // gluing id = smaller of the two side ids of a glued pair
    std::vector<int> glue_sc;                              // per gluing id: sc index or -1
    std::vector<std::vector<std::pair<int, int>>> sc_runs; // per sc: (gluing id, orientation of canonical side)
    int gluing_id(int p, int e) const;
    int side_id(int p, int e) const { return side_base[p] + e; }
};

RefinedSurface refine_along(const FlatSurface& s, const std::vector<SaddleConnection>& scs);

// Components of the complement when only `severed` (sc indices) are cut.
struct ComplementPattern {
    std::vector<int> comp_of_face;
    int n_components = 0;
    std::vector<char> trivial;                      // per component
    std::vector<std::array<int, 2>> sc_sides;       // per severed sc: component left/right
};

ComplementPattern complement_components(const RefinedSurface& r, const std::vector<int>& severed);

// Pairwise test on a shared refinement (sc indices into r.sc_runs).
bool homologous_on_refined(const RefinedSurface& r, const std::vector<SaddleConnection>& scs, int i, int j);

struct CutComponent {
    std::vector<int> faces;  // refined mesh polygon ids
    bool trivial_holonomy = false;
    bool cylinder = false;
    std::vector<long long> interior_orders;  // nonzero orders of interior cone points
    // Boundary chains: cyclic sequences of banks (sc index, left side?), with
    // the corner order after each bank (k >= 0; filled when the collection is
    // parallel).
    std::vector<std::vector<std::pair<int, bool>>> chains;
    std::vector<std::vector<long long>> chain_orders;
};

struct CutResult {
    RefinedSurface refined;
    std::vector<CutComponent> components;
    std::vector<std::array<int, 2>> sc_components;  // per sc: component left/right
    bool orders_computed = false;
};

// Component structures (holonomy, chains, corner orders, interior orders)
// when only `severed` is cut; `sc_sides` receives the component left/right of
// each severed sc.
std::vector<CutComponent> cut_components(const RefinedSurface& r, const std::vector<SaddleConnection>& all,
                                         const std::vector<int>& severed,
                                         std::vector<std::array<int, 2>>* sc_sides, bool* orders_computed);

// Cut along a pairwise non-crossing collection.
CutResult cut(const FlatSurface& s, const std::vector<SaddleConnection>& scs);

// Configuration of a ĥomologous family given a shared refinement; validates
// and checks the singularity data against the base surface.
Configuration extract_on_refined(const FlatSurface& base, const RefinedSurface& r,
                                 const std::vector<SaddleConnection>& all, const std::vector<int>& family);

// Geometric test from the decomposition criterion: parallel, non-crossing,
// and the complement pattern of one of the four ĥomology cases.
bool are_homologous_hat(const FlatSurface& s, const SaddleConnection& a, const SaddleConnection& b);

// Configuration of a maximal collection of pairwise ĥomologous saddle
// connections (caller guarantees maximality / general position).
Configuration extract_configuration(const FlatSurface& s, const std::vector<SaddleConnection>& scs);

// Both lifts of a saddle connection to the double cover built by
// double_cover() (sheet bookkeeping via the parts' eps fields).
std::pair<SaddleConnection, SaddleConnection> lift_to_cover(const FlatSurface& base, const FlatSurface& cover,
                                                            const SaddleConnection& sc);

}  // namespace qdstrata
