#include "qdstrata/flatsurface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace qdstrata {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::string point_key(const Vec2& v) { return rational_to_string(v.x) + "," + rational_to_string(v.y); }

// CCW comparator on nonzero directions (angle from the positive x-axis).
bool dir_less(const Vec2& u, const Vec2& v) {
    auto half = [](const Vec2& w) { return (w.y < 0 || (w.y == 0 && w.x < 0)) ? 1 : 0; };
    int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    return cross(u, v) > 0;
}

struct HalfEdge {
    int from = -1, to = -1;
    int orig_edge = -1;  // boundary sub-edge of this original edge, or
    int chord_sc = -1;   // chord half-edge of this saddle connection
    int chord_dir = 0;   // +1: along the sc direction
    int chord_pos = -1;  // part index along the sc
    int next = -1;
};

struct PolySubdivision {
    std::vector<Vec2> nodes;
    std::vector<HalfEdge> hedges;
    std::vector<std::vector<int>> faces;  // half-edge loops, all CCW
};

// Planar subdivision of one polygon by pairwise non-crossing chords whose
// endpoints lie on the boundary.
PolySubdivision subdivide(const FlatSurface& s, int p,
                          const std::vector<std::tuple<Vec2, Vec2, int, int>>& chords) {
    PolySubdivision out;
    std::map<std::string, int> node_id;
    auto node = [&](const Vec2& v) {
        auto [it, fresh] = node_id.try_emplace(point_key(v), static_cast<int>(out.nodes.size()));
        if (fresh) out.nodes.push_back(v);
        return it->second;
    };
    const auto& poly = s.polys[p];
    for (const auto& v : poly.v) node(v);
    std::vector<std::vector<Vec2>> splits(poly.size());
    auto add_split = [&](const Vec2& pt) {
        for (const auto& v : poly.v)
            if (v == pt) return;
        for (int e = 0; e < poly.size(); ++e) {
            const Vec2& u = poly.v[e];
            const Vec2& ev = s.edge_vec_c(p, e);
            if (cross(ev, pt - u) == 0 && dot(pt - u, ev) > 0 && dot(pt - (u + ev), -ev) > 0) {
                splits[e].push_back(pt);
                return;
            }
        }
        throw DomainError("internal: chord endpoint is not on the polygon boundary");
    };
    for (const auto& [a, b, sc, pos] : chords) {
        add_split(a);
        add_split(b);
    }
    for (int e = 0; e < poly.size(); ++e) {
        const Vec2& u = poly.v[e];
        const Vec2& ev = s.edge_vec_c(p, e);
        std::sort(splits[e].begin(), splits[e].end(),
                  [&](const Vec2& x, const Vec2& y) { return dot(x - u, ev) < dot(y - u, ev); });
        splits[e].erase(std::unique(splits[e].begin(), splits[e].end()), splits[e].end());
        std::vector<Vec2> pts = {u};
        for (const auto& x : splits[e]) pts.push_back(x);
        pts.push_back(poly.v[s.next_i(p, e)]);
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            HalfEdge h;
            h.from = node(pts[i]);
            h.to = node(pts[i + 1]);
            h.orig_edge = e;
            out.hedges.push_back(h);
        }
    }
    for (const auto& [a, b, sc, pos] : chords) {
        out.hedges.push_back({node(a), node(b), -1, sc, 1, pos, -1});
        out.hedges.push_back({node(b), node(a), -1, sc, -1, pos, -1});
    }
    std::vector<std::vector<int>> outgoing(out.nodes.size());
    for (size_t h = 0; h < out.hedges.size(); ++h) outgoing[out.hedges[h].from].push_back(static_cast<int>(h));
    auto hdir = [&](int h) { return out.nodes[out.hedges[h].to] - out.nodes[out.hedges[h].from]; };
    for (auto& v : outgoing)
        std::sort(v.begin(), v.end(), [&](int x, int y) { return dir_less(hdir(x), hdir(y)); });
    // next in face: first outgoing clockwise from the reversed direction
    for (size_t h = 0; h < out.hedges.size(); ++h) {
        Vec2 r = -hdir(static_cast<int>(h));
        int best = -1;
        for (int c : outgoing[out.hedges[h].to]) {
            Vec2 dc = hdir(c);
            if (same_direction(dc, r)) continue;
            if (best == -1 || strictly_inside_ccw(hdir(best), r, dc)) best = c;
        }
        if (best == -1) throw DomainError("internal: dangling node in subdivision");
        out.hedges[h].next = best;
    }
    std::vector<char> used(out.hedges.size(), 0);
    for (size_t h0 = 0; h0 < out.hedges.size(); ++h0) {
        if (used[h0]) continue;
        std::vector<int> loop;
        int h = static_cast<int>(h0);
        do {
            used[h] = 1;
            loop.push_back(h);
            h = out.hedges[h].next;
        } while (h != static_cast<int>(h0));
        out.faces.push_back(std::move(loop));
    }
    return out;
}

}  // namespace

int RefinedSurface::gluing_id(int p, int e) const {
    FlatSurface::EdgeRef o = mesh.partner[p][e];
    return std::min(side_id(p, e), side_id(o.poly, o.edge));
}

RefinedSurface refine_along(const FlatSurface& s, const std::vector<SaddleConnection>& scs) {
    std::vector<std::vector<std::tuple<Vec2, Vec2, int, int>>> chords(s.num_polys());
    struct RunInfo {
        int sc, pos;
        bool fwd_on_canonical;
    };
    std::map<std::pair<int, int>, RunInfo> runs;  // canonical original (poly,edge) -> info
    for (size_t i = 0; i < scs.size(); ++i) {
        int pos = 0;
        for (const SCPart& part : scs[i].parts) {
            if (part.along_edge >= 0) {
                int p = part.poly, e = part.along_edge;
                FlatSurface::EdgeRef q = s.partner[p][e];
                bool fwd = part.a == s.vertex(p, e);
                std::pair<int, int> canon{p, e};
                bool canon_fwd = fwd;
                if (q < FlatSurface::EdgeRef{p, e}) {
                    canon = {q.poly, q.edge};
                    canon_fwd = !fwd;
                }
                if (runs.count(canon)) throw DomainError("collection traverses one edge twice");
                runs[canon] = {static_cast<int>(i), pos, canon_fwd};
            } else {
                chords[part.poly].push_back({part.a, part.b, static_cast<int>(i), pos});
            }
            ++pos;
        }
    }

    RefinedSurface out;
    struct FaceRef {
        int poly = -1, edge = -1;
    };
    std::map<std::string, FaceRef> bound_lookup, chord_lookup;
    struct PendingEdge {
        int orig_poly, orig_edge, chord_sc, chord_dir, chord_pos;
        Vec2 a, b;
    };
    std::vector<std::vector<PendingEdge>> face_edges;

    for (int p = 0; p < s.num_polys(); ++p) {
        PolySubdivision sub = subdivide(s, p, chords[p]);
        for (const auto& loop : sub.faces) {
            FlatSurface::Polygon poly;
            poly.name = s.polys[p].name + "#" + std::to_string(face_edges.size());
            std::vector<PendingEdge> edges;
            Rational area2 = 0;
            for (int h : loop) {
                const HalfEdge& he = sub.hedges[h];
                Vec2 a = sub.nodes[he.from], b = sub.nodes[he.to];
                poly.v.push_back(a);
                area2 += cross(a, b);
                edges.push_back({p, he.orig_edge, he.chord_sc, he.chord_dir, he.chord_pos, a, b});
            }
            if (area2 <= 0) throw DomainError("internal: subdivision produced a nonpositive face");
            int np = static_cast<int>(out.mesh.polys.size());
            out.mesh.polys.push_back(std::move(poly));
            out.face_source.push_back(p);
            for (size_t e = 0; e < edges.size(); ++e) {
                const PendingEdge& pe = edges[e];
                std::string key = std::to_string(p) + "|" + point_key(pe.a) + "|" + point_key(pe.b);
                (pe.chord_sc >= 0 ? chord_lookup : bound_lookup)[key] = {np, static_cast<int>(e)};
            }
            face_edges.push_back(std::move(edges));
        }
    }

    out.mesh.partner.resize(out.mesh.num_polys());
    out.mesh.flips.resize(out.mesh.num_polys());
    for (int np = 0; np < out.mesh.num_polys(); ++np) {
        out.mesh.partner[np].assign(out.mesh.polys[np].size(), {});
        out.mesh.flips[np].assign(out.mesh.polys[np].size(), 0);
    }
    for (int np = 0; np < out.mesh.num_polys(); ++np)
        for (size_t e = 0; e < face_edges[np].size(); ++e) {
            const PendingEdge& pe = face_edges[np][e];
            if (out.mesh.partner[np][e].poly != -1) continue;
            FaceRef other;
            bool flip = false;
            if (pe.chord_sc >= 0) {
                std::string key = std::to_string(pe.orig_poly) + "|" + point_key(pe.b) + "|" + point_key(pe.a);
                auto it = chord_lookup.find(key);
                if (it == chord_lookup.end()) throw DomainError("internal: chord twin missing");
                other = it->second;
            } else {
                int oe = pe.orig_edge;
                Vec2 ga = s.map_across(pe.orig_poly, oe, pe.a);
                Vec2 gb = s.map_across(pe.orig_poly, oe, pe.b);
                FlatSurface::EdgeRef q = s.partner[pe.orig_poly][oe];
                std::string key = std::to_string(q.poly) + "|" + point_key(gb) + "|" + point_key(ga);
                auto it = bound_lookup.find(key);
                if (it == bound_lookup.end()) throw DomainError("internal: glued sub-edge missing");
                other = it->second;
                flip = s.flips[pe.orig_poly][oe];
            }
            out.mesh.partner[np][e] = {other.poly, other.edge};
            out.mesh.partner[other.poly][other.edge] = {np, static_cast<int>(e)};
            out.mesh.flips[np][e] = out.mesh.flips[other.poly][other.edge] = flip ? 1 : 0;
        }
    // the mesh is derived from a validated surface; computing the vertex
    // classes asserts umbrella closure, which is the load-bearing check here
    out.mesh.vertex_classes();

    out.side_base.resize(out.mesh.num_polys());
    int total_sides = 0;
    for (int np = 0; np < out.mesh.num_polys(); ++np) {
        out.side_base[np] = total_sides;
        total_sides += out.mesh.polys[np].size();
    }
    out.glue_sc.assign(total_sides, -1);
    out.sc_runs.assign(scs.size(), {});

    std::vector<std::vector<std::pair<int, std::pair<int, int>>>> per_sc(scs.size());
    for (int np = 0; np < out.mesh.num_polys(); ++np)
        for (size_t e = 0; e < face_edges[np].size(); ++e) {
            const PendingEdge& pe = face_edges[np][e];
            int gid = out.gluing_id(np, static_cast<int>(e));
            bool is_canon_mesh = out.side_id(np, static_cast<int>(e)) == gid;
            if (pe.chord_sc >= 0) {
                out.glue_sc[gid] = pe.chord_sc;
                if (is_canon_mesh) per_sc[pe.chord_sc].push_back({pe.chord_pos, {gid, pe.chord_dir}});
            } else {
                std::pair<int, int> canon{pe.orig_poly, pe.orig_edge};
                FlatSurface::EdgeRef q = s.partner[pe.orig_poly][pe.orig_edge];
                if (q < FlatSurface::EdgeRef{canon.first, canon.second}) canon = {q.poly, q.edge};
                auto it = runs.find(canon);
                if (it == runs.end()) continue;
                out.glue_sc[gid] = it->second.sc;
                if (is_canon_mesh) {
                    bool orig_is_canon = canon.first == pe.orig_poly && canon.second == pe.orig_edge;
                    bool along = orig_is_canon ? it->second.fwd_on_canonical : !it->second.fwd_on_canonical;
                    per_sc[it->second.sc].push_back({it->second.pos, {gid, along ? 1 : -1}});
                }
            }
        }
    for (size_t i = 0; i < scs.size(); ++i) {
        std::sort(per_sc[i].begin(), per_sc[i].end());
        for (const auto& [pos, entry] : per_sc[i]) out.sc_runs[i].push_back(entry);
        if (out.sc_runs[i].empty()) throw DomainError("internal: saddle connection lost in refinement");
    }
    return out;
}

ComplementPattern complement_components(const RefinedSurface& r, const std::vector<int>& severed) {
    const FlatSurface& m = r.mesh;
    std::vector<char> is_severed_sc(r.sc_runs.size(), 0);
    for (int i : severed) is_severed_sc[i] = 1;
    auto severed_edge = [&](int p, int e) {
        int sc = r.glue_sc[r.gluing_id(p, e)];
        return sc >= 0 && is_severed_sc[sc];
    };

    ComplementPattern out;
    UnionFind uf(m.num_polys());
    for (int p = 0; p < m.num_polys(); ++p)
        for (int e = 0; e < m.polys[p].size(); ++e)
            if (!severed_edge(p, e)) uf.unite(p, m.partner[p][e].poly);
    out.comp_of_face.assign(m.num_polys(), -1);
    std::map<int, int> root_to_comp;
    for (int p = 0; p < m.num_polys(); ++p) {
        int root = uf.find(p);
        auto it = root_to_comp.find(root);
        if (it == root_to_comp.end()) it = root_to_comp.emplace(root, out.n_components++).first;
        out.comp_of_face[p] = it->second;
    }

    out.trivial.assign(out.n_components, 1);
    std::vector<int> color(m.num_polys(), -1);
    for (int p0 = 0; p0 < m.num_polys(); ++p0) {
        if (color[p0] != -1) continue;
        color[p0] = 0;
        std::vector<int> stack = {p0};
        while (!stack.empty()) {
            int p = stack.back();
            stack.pop_back();
            for (int e = 0; e < m.polys[p].size(); ++e) {
                if (severed_edge(p, e)) continue;
                int q = m.partner[p][e].poly;
                int want = color[p] ^ (m.flips[p][e] ? 1 : 0);
                if (color[q] == -1) {
                    color[q] = want;
                    stack.push_back(q);
                } else if (color[q] != want) {
                    out.trivial[out.comp_of_face[p]] = 0;
                }
            }
        }
    }

    out.sc_sides.assign(severed.size(), {-1, -1});
    for (size_t k = 0; k < severed.size(); ++k)
        for (const auto& [gid, orient] : r.sc_runs[severed[k]]) {
            auto locate = [&](int sid) {
                int p = 0;
                while (p + 1 < m.num_polys() && r.side_base[p + 1] <= sid) ++p;
                return std::pair<int, int>{p, sid - r.side_base[p]};
            };
            auto [pc, ec] = locate(gid);
            FlatSurface::EdgeRef o = m.partner[pc][ec];
            int canon_comp = out.comp_of_face[pc];
            int other_comp = out.comp_of_face[o.poly];
            // canonical side runs along the sc iff orient == +1; the face of a
            // side lies on the left of its own traversal
            if (orient == 1)
                out.sc_sides[k] = {canon_comp, other_comp};
            else
                out.sc_sides[k] = {other_comp, canon_comp};
        }
    return out;
}

std::vector<CutComponent> cut_components(const RefinedSurface& r, const std::vector<SaddleConnection>& all,
                                         const std::vector<int>& severed,
                                         std::vector<std::array<int, 2>>* sc_sides_out, bool* orders_flag) {
    const FlatSurface& m = r.mesh;
    ComplementPattern pat = complement_components(r, severed);

    std::vector<char> is_severed_sc(r.sc_runs.size(), 0);
    for (int i : severed) is_severed_sc[i] = 1;
    auto severed_edge = [&](int p, int e) {
        int sc = r.glue_sc[r.gluing_id(p, e)];
        return sc >= 0 && is_severed_sc[sc];
    };

    std::vector<CutComponent> comps(pat.n_components);
    for (int p = 0; p < m.num_polys(); ++p) comps[pat.comp_of_face[p]].faces.push_back(p);
    for (int c = 0; c < pat.n_components; ++c) comps[c].trivial_holonomy = pat.trivial[c];

    bool all_parallel = true;
    for (int i : severed)
        if (!parallel(all[i].holonomy, all[severed[0]].holonomy)) all_parallel = false;
    if (orders_flag) *orders_flag = all_parallel;
    Vec2 u = all[severed[0]].holonomy;

    // banks
    struct Bank {
        int poly = -1, edge = -1, sc = -1, pos = -1;
        bool left = false;
    };
    std::map<std::pair<int, int>, Bank> banks;
    std::map<int, std::pair<int, int>> canon_orient;  // gid -> (sc, orient)
    std::map<int, int> pos_of_gid;
    for (int i : severed)
        for (size_t k = 0; k < r.sc_runs[i].size(); ++k) {
            canon_orient[r.sc_runs[i][k].first] = {i, r.sc_runs[i][k].second};
            pos_of_gid[r.sc_runs[i][k].first] = static_cast<int>(k);
        }
    for (int p = 0; p < m.num_polys(); ++p)
        for (int e = 0; e < m.polys[p].size(); ++e) {
            if (!severed_edge(p, e)) continue;
            int gid = r.gluing_id(p, e);
            auto [sc, orient] = canon_orient.at(gid);
            int dir_along = (r.side_id(p, e) == gid) ? orient : -orient;
            banks[{p, e}] = {p, e, sc, pos_of_gid.at(gid), dir_along == 1};
        }

    // clockwise corner fan from the head of a bank to the next bank
    auto next_bank = [&](const Bank& b, long long* angle_pi) -> const Bank& {
        int p = b.poly;
        int c = m.next_i(p, b.edge);
        std::vector<CornerFan> fans;
        for (size_t guard = 0; guard < 1000000; ++guard) {
            fans.push_back({m.edge_vec_c(p, c), m.vertex(p, m.prev_i(p, c)) - m.vertex(p, c)});
            if (severed_edge(p, c)) {
                if (angle_pi) *angle_pi = all_parallel ? fan_angle_pi_units(fans, perp(u)) : -1;
                return banks.at({p, c});
            }
            FlatSurface::EdgeRef q = m.partner[p][c];
            p = q.poly;
            c = m.next_i(q.poly, q.edge);
        }
        throw DomainError("internal: boundary fan does not close");
    };

    auto merges = [&](const Bank& x, const Bank& y) {
        if (x.sc != y.sc || x.left != y.left) return false;
        return y.pos == x.pos + (x.left ? 1 : -1);
    };

    std::set<std::pair<int, int>> visited;
    for (const auto& [key, b0] : banks) {
        if (visited.count(key)) continue;
        std::vector<Bank> cycle;
        std::vector<long long> angles;
        Bank it = b0;
        do {
            visited.insert({it.poly, it.edge});
            cycle.push_back(it);
            long long ang = -1;
            const Bank& nb = next_bank(it, &ang);
            angles.push_back(ang);
            it = nb;
        } while (!(it.poly == b0.poly && it.edge == b0.edge));
        const int n = static_cast<int>(cycle.size());
        int start = 0;
        for (int i = 0; i < n; ++i)
            if (!merges(cycle[(i + n - 1) % n], cycle[i])) {
                start = i;
                break;
            }
        std::vector<std::pair<int, bool>> chain;
        std::vector<long long> orders;
        for (int i = 0; i < n;) {
            int j = i;
            while (j + 1 < n && merges(cycle[(start + j) % n], cycle[(start + j + 1) % n])) {
                if (all_parallel && angles[(start + j) % n] != 1)
                    throw DomainError("internal: nonflat junction inside one boundary side");
                ++j;
            }
            const Bank& head = cycle[(start + i) % n];
            long long ang = angles[(start + j) % n];
            chain.push_back({head.sc, head.left});
            if (all_parallel) {
                if (ang < 1) throw DomainError("internal: negative boundary order");
                orders.push_back(ang - 1);
            } else {
                orders.push_back(0);
            }
            i = j + 1;
        }
        int comp = pat.comp_of_face[b0.poly];
        comps[comp].chains.push_back(std::move(chain));
        comps[comp].chain_orders.push_back(std::move(orders));
    }

    // interior cone points
    std::vector<char> boundary_class(m.vertex_classes().size(), 0);
    for (const auto& [key, b] : banks) {
        boundary_class[m.class_of(b.poly, b.edge)] = 1;
        boundary_class[m.class_of(b.poly, m.next_i(b.poly, b.edge))] = 1;
    }
    for (size_t c = 0; c < m.vertex_classes().size(); ++c) {
        if (boundary_class[c]) continue;
        const auto& cls = m.vertex_classes()[c];
        if (cls.is_cone()) comps[pat.comp_of_face[cls.corners[0].first]].interior_orders.push_back(cls.order());
    }
    for (auto& comp : comps) {
        std::sort(comp.interior_orders.begin(), comp.interior_orders.end(), std::greater<>());
        bool flat = true;
        for (const auto& row : comp.chain_orders)
            for (long long k : row)
                if (k != 0) flat = false;
        comp.cylinder = all_parallel && comp.chains.size() == 2 && flat && comp.interior_orders.empty();
        if (comp.cylinder && !comp.trivial_holonomy)
            throw DomainError("internal: cylinder with nontrivial holonomy");
    }
    if (sc_sides_out) {
        sc_sides_out->assign(severed.size(), {-1, -1});
        for (size_t k = 0; k < severed.size(); ++k) (*sc_sides_out)[k] = pat.sc_sides[k];
    }
    return comps;
}

namespace {

void check_collection(const FlatSurface& s, const std::vector<SaddleConnection>& scs) {
    if (scs.empty()) throw DomainError("cut: empty collection");
    for (size_t i = 0; i < scs.size(); ++i)
        for (size_t j = i + 1; j < scs.size(); ++j) {
            if (scs[i].key == scs[j].key) throw DomainError("cut: repeated saddle connection");
            if (interior_intersect(s, scs[i], scs[j]))
                throw DomainError("cut: saddle connections intersect in their interiors");
        }
}

}  // namespace

CutResult cut(const FlatSurface& s, const std::vector<SaddleConnection>& scs) {
    check_collection(s, scs);
    CutResult out;
    out.refined = refine_along(s, scs);
    std::vector<int> all(scs.size());
    std::iota(all.begin(), all.end(), 0);
    out.components = cut_components(out.refined, scs, all, &out.sc_components, &out.orders_computed);
    return out;
}

bool homologous_on_refined(const RefinedSurface& r, const std::vector<SaddleConnection>& scs, int i, int j) {
    const Rational &li = scs[i].len2, &lj = scs[j].len2;
    bool sep_i = complement_components(r, {i}).n_components == 2;
    bool sep_j = complement_components(r, {j}).n_components == 2;
    ComplementPattern both = complement_components(r, {i, j});
    const int n = both.n_components;
    auto count_trivial = [&]() {
        int c = 0;
        for (char t : both.trivial) c += t;
        return c;
    };
    auto internal_check = [&](bool cond, const char* what) {
        if (!cond) throw DomainError(std::string("internal: ") + what);
    };

    if (!sep_i && !sep_j) {
        internal_check(n == 1 || n == 2, "complement pattern (cases 1-2)");
        if (n == 1) {
            if (!both.trivial[0]) return false;
            internal_check(li == lj, "case 1 length pattern");
            return true;
        }
        int t = count_trivial();
        internal_check(t <= 1, "two trivial components (case 2)");
        if (t != 1) return false;
        internal_check(li == lj, "case 2 length pattern");
        return true;
    }
    if (sep_i != sep_j) {
        internal_check(n == 2, "complement pattern (case 3)");
        int nonsep = sep_i ? 1 : 0;  // index into {i,j}
        auto nsides = both.sc_sides[nonsep];
        internal_check(nsides[0] == nsides[1], "non-separating banks in one component (case 3)");
        int mid = nsides[0];
        int lone = 1 - mid;
        if (!(both.trivial[mid] && !both.trivial[lone])) return false;
        const Rational& lsep = sep_i ? li : lj;
        const Rational& lnon = sep_i ? lj : li;
        internal_check(lsep == lnon * 4, "case 3 length pattern (separating loop twice as long)");
        return true;
    }
    internal_check(n == 3, "complement pattern (case 4)");
    int mid = -1;
    for (int c = 0; c < 3; ++c) {
        bool ti = both.sc_sides[0][0] == c || both.sc_sides[0][1] == c;
        bool tj = both.sc_sides[1][0] == c || both.sc_sides[1][1] == c;
        if (ti && tj) mid = c;
    }
    internal_check(mid >= 0, "middle component (case 4)");
    bool ok = both.trivial[mid];
    for (int c = 0; c < 3; ++c)
        if (c != mid && both.trivial[c]) ok = false;
    if (ok) internal_check(li == lj, "case 4 length pattern");
    return ok;
}

bool are_homologous_hat(const FlatSurface& s, const SaddleConnection& a, const SaddleConnection& b) {
    if (a.key == b.key) throw DomainError("are_homologous_hat: identical saddle connections");
    if (interior_intersect(s, a, b)) throw DomainError("are_homologous_hat: interior intersection");
    if (!parallel(a.holonomy, b.holonomy)) return false;
    RefinedSurface r = refine_along(s, {a, b});
    return homologous_on_refined(r, {a, b}, 0, 1);
}

Configuration extract_on_refined(const FlatSurface& base, const RefinedSurface& r,
                                 const std::vector<SaddleConnection>& all, const std::vector<int>& family) {
    std::vector<std::array<int, 2>> sc_sides;
    bool orders_ok = false;
    std::vector<CutComponent> comps = cut_components(r, all, family, &sc_sides, &orders_ok);
    if (!orders_ok) throw DomainError("internal: parallel collection expected");

    std::map<int, int> local;  // original sc index -> edge index
    for (size_t k = 0; k < family.size(); ++k) local[family[k]] = static_cast<int>(k);

    Configuration c;
    for (const auto& comp : comps) {
        if (comp.cylinder)
            c.graph.kinds.push_back(VertexKind::Cyl);
        else
            c.graph.kinds.push_back(comp.trivial_holonomy ? VertexKind::Plus : VertexKind::Minus);
        c.interior.push_back(comp.interior_orders);
    }
    for (size_t k = 0; k < family.size(); ++k) c.graph.edges.push_back({sc_sides[k][0], sc_sides[k][1]});
    c.local.resize(c.graph.kinds.size());
    for (size_t v = 0; v < comps.size(); ++v)
        for (size_t i = 0; i < comps[v].chains.size(); ++i) {
            std::vector<int> sides;
            for (auto [sc, left] : comps[v].chains[i]) sides.push_back(2 * local.at(sc) + (left ? 0 : 1));
            c.local[v].comps.push_back(std::move(sides));
            c.local[v].orders.push_back(comps[v].chain_orders[i]);
        }
    require_valid(c);
    if (!(singularity_data(c) == base.cone_data()))
        throw DomainError("extraction failed: configuration data does not match the surface");
    return c;
}

Configuration extract_configuration(const FlatSurface& s, const std::vector<SaddleConnection>& scs) {
    if (scs.empty()) throw DomainError("extract_configuration: empty collection");
    if (s.holonomy_trivial()) throw DomainError("trivial holonomy surfaces are out of scope");
    check_collection(s, scs);
    RefinedSurface r = refine_along(s, scs);
    for (size_t i = 0; i < scs.size(); ++i) {
        if (!parallel(scs[i].holonomy, scs[0].holonomy))
            throw DomainError("extract_configuration: connections are not parallel");
        for (size_t j = i + 1; j < scs.size(); ++j)
            if (!homologous_on_refined(r, scs, static_cast<int>(i), static_cast<int>(j)))
                throw DomainError("extract_configuration: connections are not pairwise ĥomologous");
    }
    std::vector<int> family(scs.size());
    std::iota(family.begin(), family.end(), 0);
    return extract_on_refined(s, r, scs, family);
}

}  // namespace qdstrata
