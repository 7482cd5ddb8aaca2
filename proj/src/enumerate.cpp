#include "qdstrata/enumerate.hpp"

#include "qdstrata/numeric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace qdstrata {

namespace {

using Orders = std::vector<std::vector<long long>>;

// ---------------------------------------------------------------------------
// graph generation

// Base shapes of the five admissible types, parametrized by the number of
// valence-2 '+'-vertices on each segment.  Junction kinds j1/j2 pick '+' or
// 'o' for the valence-3/4 vertices of types c, d, e.
struct Shape {
    BaseType type;
    VertexKind j1 = VertexKind::Plus, j2 = VertexKind::Plus;
    int p0 = 0, p1 = 0, p2 = 0;
};

// Append a path of `p` '+'-vertices between u and v (p=0: single edge).
void add_chain(ConfGraph& g, int u, int v, int p) {
    int prev = u;
    for (int i = 0; i < p; ++i) {
        g.kinds.push_back(VertexKind::Plus);
        int w = g.num_vertices() - 1;
        g.edges.push_back({prev, w});
        prev = w;
    }
    g.edges.push_back({prev, v});
}

// Cycle through u with `p` '+'-vertices (p=0: loop edge).
void add_cycle(ConfGraph& g, int u, int p) { add_chain(g, u, u, p); }

ConfGraph build_base(const Shape& s) {
    ConfGraph g;
    switch (s.type) {
        case BaseType::A:
            g.kinds = {VertexKind::Minus, VertexKind::Minus};
            add_chain(g, 0, 1, s.p0);
            break;
        case BaseType::B:
            g.kinds = {VertexKind::Minus};
            add_cycle(g, 0, s.p0);
            break;
        case BaseType::C:
            g.kinds = {s.j1, VertexKind::Minus};
            add_cycle(g, 0, s.p0);
            add_chain(g, 0, 1, s.p1);
            break;
        case BaseType::D:
            g.kinds = {s.j1, s.j2};
            add_cycle(g, 0, s.p0);
            add_cycle(g, 1, s.p1);
            add_chain(g, 0, 1, s.p2);
            break;
        case BaseType::E:
            g.kinds = {s.j1};
            add_cycle(g, 0, s.p0);
            add_cycle(g, 0, s.p1);
            break;
        default: break;
    }
    return g;
}

ConfGraph insert_cylinders(const ConfGraph& base, unsigned mask) {
    ConfGraph g;
    g.kinds = base.kinds;
    for (int e = 0; e < base.num_edges(); ++e) {
        if (mask & (1u << e)) {
            g.kinds.push_back(VertexKind::Cyl);
            int c = g.num_vertices() - 1;
            g.edges.push_back({base.edges[e][0], c});
            g.edges.push_back({c, base.edges[e][1]});
        } else {
            g.edges.push_back(base.edges[e]);
        }
    }
    return g;
}

// Least possible sum of (k+1) over the corners of a vertex, over all ribbon
// choices: used to prune oversized graphs early.
long long min_vertex_mass(VertexKind k, int valence) {
    if (k == VertexKind::Cyl) return valence;  // all corners k = 0
    if (k == VertexKind::Minus) return valence == 1 ? 2 : 3;
    switch (valence) {
        case 2: return 4;  // +2.1 with k = (1,1)
        case 3: return 5;  // +3.1 with k = (0,1,1)
        case 4: return 6;  // +4.1a with k = (0,1,0,1)
    }
    return 1;
}

long long min_graph_mass(const ConfGraph& g) {
    long long m = 0;
    for (int v = 0; v < g.num_vertices(); ++v) m += min_vertex_mass(g.kinds[v], g.valence(v));
    return m;
}

// All admissible graphs with at most e_cap edges and minimal corner mass at
// most mass_cap, in deterministic order.
std::vector<ConfGraph> admissible_graphs(int e_cap, long long mass_cap) {
    std::vector<ConfGraph> out;
    std::vector<Shape> shapes;
    auto junctions = {VertexKind::Plus, VertexKind::Cyl};
    for (int p = 0; p + 1 <= e_cap; ++p) shapes.push_back({BaseType::A, VertexKind::Plus, VertexKind::Plus, p});
    for (int p = 0; p + 1 <= e_cap; ++p) shapes.push_back({BaseType::B, VertexKind::Plus, VertexKind::Plus, p});
    for (auto j : junctions)
        for (int pc = 0; pc + 2 <= e_cap; ++pc)
            for (int ph = 0; pc + ph + 2 <= e_cap; ++ph)
                shapes.push_back({BaseType::C, j, VertexKind::Plus, pc, ph});
    for (auto j1 : junctions)
        for (auto j2 : junctions)
            for (int p1 = 0; p1 + 3 <= e_cap; ++p1)
                for (int p2 = 0; p1 + p2 + 3 <= e_cap; ++p2)
                    for (int ph = 0; p1 + p2 + ph + 3 <= e_cap; ++ph)
                        shapes.push_back({BaseType::D, j1, j2, p1, p2, ph});
    for (auto j : junctions)
        for (int pa = 0; pa + 2 <= e_cap; ++pa)
            for (int pb = 0; pa + pb + 2 <= e_cap; ++pb)
                shapes.push_back({BaseType::E, j, VertexKind::Plus, pa, pb});

    for (const auto& s : shapes) {
        ConfGraph base = build_base(s);
        if (base.num_edges() > e_cap || base.num_edges() >= 31) continue;
        for (unsigned mask = 0; mask < (1u << base.num_edges()); ++mask) {
            int extra = __builtin_popcount(mask);
            if (base.num_edges() + extra > e_cap) continue;
            ConfGraph g = insert_cylinders(base, mask);
            if (min_graph_mass(g) > mass_cap) continue;
            if (!graph_violations(g).empty()) continue;
            out.push_back(std::move(g));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// per-vertex structures

// All legal boundary-component structures at v: cycle decompositions of the
// permutations of the incident sides, filtered through the classification.
std::vector<std::vector<std::vector<int>>> ribbon_shapes(const ConfGraph& g, int v) {
    std::vector<int> sides = g.sides_at(v);
    int n = static_cast<int>(sides.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> image(n);
    do {
        for (int i = 0; i < n; ++i) image[i] = perm[i];
        // cycle decomposition, cycles started at their smallest element
        std::vector<char> seen(n, 0);
        std::vector<std::vector<int>> comps;
        for (int i = 0; i < n; ++i) {
            if (seen[i]) continue;
            std::vector<int> comp;
            int j = i;
            while (!seen[j]) {
                seen[j] = 1;
                comp.push_back(sides[j]);
                j = image[j];
            }
            comps.push_back(std::move(comp));
        }
        LocalRibbon probe;
        probe.comps = comps;
        for (const auto& c : comps) probe.orders.emplace_back(c.size(), 0);
        try {
            classify_boundary_type(g, v, probe);
            if (g.kinds[v] != VertexKind::Minus) compute_parities(g, v, probe);
            out.push_back(std::move(comps));
        } catch (const DomainError&) {
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// All order assignments for a fixed component structure with sum(k) == ks,
// respecting parity (at '+'), zeros (at 'o') and the D_i bounds.
std::vector<Orders> order_assignments(const ConfGraph& g, int v, const std::vector<std::vector<int>>& comps,
                                      long long ks) {
    std::vector<Orders> out;
    VertexKind kind = g.kinds[v];
    if (kind == VertexKind::Cyl) {
        if (ks != 0) return out;
        Orders o;
        for (const auto& c : comps) o.emplace_back(c.size(), 0);
        out.push_back(std::move(o));
        return out;
    }
    std::vector<std::vector<int>> par;
    if (kind == VertexKind::Plus) {
        LocalRibbon probe;
        probe.comps = comps;
        for (const auto& c : comps) probe.orders.emplace_back(c.size(), 0);
        par = compute_parities(g, v, probe);
    }
    Orders cur(comps.size());
    std::function<void(size_t, size_t, long long)> rec = [&](size_t ci, size_t li, long long left) {
        if (ci == comps.size()) {
            if (left == 0) out.push_back(cur);
            return;
        }
        if (li == comps[ci].size()) {
            long long d = -2;
            for (long long k : cur[ci]) d += k;
            if (kind == VertexKind::Plus && d < 0) return;
            if (kind == VertexKind::Minus && d < -1) return;
            rec(ci + 1, 0, left);
            return;
        }
        long long start = 0;
        if (kind == VertexKind::Plus) start = par[ci][li];
        long long step = kind == VertexKind::Plus ? 2 : 1;
        for (long long k = start; k <= left; k += step) {
            cur[ci].push_back(k);
            rec(ci, li + 1, left - k);
            cur[ci].pop_back();
        }
    };
    rec(0, 0, ks);
    return out;
}

// ---------------------------------------------------------------------------
// interior distribution

// Distributions of the multiset `items` (sorted desc) over the vertices;
// eligibility by kind.
void distribute_interior(const std::vector<long long>& items, const ConfGraph& g,
                         const std::function<void(const std::vector<std::vector<long long>>&)>& emit) {
    const int nv = g.num_vertices();
    std::vector<std::pair<long long, int>> groups;  // value, count
    for (long long x : items) {
        if (!groups.empty() && groups.back().first == x)
            ++groups.back().second;
        else
            groups.push_back({x, 1});
    }
    std::vector<std::vector<long long>> cur(nv);
    std::function<void(size_t, int, int)> rec = [&](size_t gi, int v, int left) {
        if (gi == groups.size()) {
            emit(cur);
            return;
        }
        auto [value, count] = groups[gi];
        if (left == -1) {
            rec(gi, 0, count);
            return;
        }
        if (v == nv) return;
        bool eligible = (g.kinds[v] == VertexKind::Minus && value != 0) ||
                        (g.kinds[v] == VertexKind::Plus && value >= 2 && value % 2 == 0);
        int take_max = eligible ? left : 0;
        for (int take = 0; take <= take_max; ++take) {
            for (int i = 0; i < take; ++i) cur[v].push_back(value);
            if (v + 1 == nv) {
                if (left - take == 0) rec(gi + 1, 0, -1);
            } else {
                rec(gi, v + 1, left - take);
            }
            for (int i = 0; i < take; ++i) cur[v].pop_back();
        }
    };
    rec(0, 0, -1);
}

// ---------------------------------------------------------------------------

// Newborn orders without the full validation pass (structure is sound by
// construction here).
std::vector<long long> face_newborns(const Configuration& c) {
    const int ns = c.graph.num_sides();
    std::vector<int> next(ns, -1), prev(ns, -1);
    std::vector<long long> k_after(ns, 0);
    for (int v = 0; v < c.num_vertices(); ++v) {
        const LocalRibbon& r = c.local[v];
        for (size_t i = 0; i < r.comps.size(); ++i)
            for (size_t l = 0; l < r.comps[i].size(); ++l) {
                int s = r.comps[i][l];
                next[s] = r.comps[i][(l + 1) % r.comps[i].size()];
                k_after[s] = r.orders[i][l];
            }
    }
    for (int s = 0; s < ns; ++s) prev[next[s]] = s;
    std::vector<char> used(ns, 0);
    std::vector<long long> out;
    for (int s0 = 0; s0 < ns; ++s0) {
        if (used[s0]) continue;
        long long b = -2;
        int s = s0;
        do {
            used[s] = 1;
            b += k_after[s] + 1;
            s = prev[ConfGraph::opposite_side(s)];
        } while (s != s0);
        out.push_back(b);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

// Sub-multisets of a multiset (sorted desc), as (subset, complement) pairs.
std::vector<std::pair<std::vector<long long>, std::vector<long long>>> sub_multisets(
    const std::vector<long long>& items) {
    std::vector<std::pair<long long, int>> groups;
    for (long long x : items) {
        if (!groups.empty() && groups.back().first == x)
            ++groups.back().second;
        else
            groups.push_back({x, 1});
    }
    std::vector<std::pair<std::vector<long long>, std::vector<long long>>> out;
    std::vector<int> take(groups.size(), 0);
    while (true) {
        std::vector<long long> sub, rest;
        for (size_t i = 0; i < groups.size(); ++i) {
            for (int k = 0; k < take[i]; ++k) sub.push_back(groups[i].first);
            for (int k = take[i]; k < groups[i].second; ++k) rest.push_back(groups[i].first);
        }
        out.push_back({sub, rest});
        size_t i = 0;
        while (i < groups.size() && take[i] == groups[i].second) take[i++] = 0;
        if (i == groups.size()) break;
        ++take[i];
    }
    return out;
}

}  // namespace

std::vector<Configuration> enumerate_configurations(const QSingularityData& alpha, const EnumerationBounds& bounds) {
    alpha.require_valid();
    if (is_empty_q(alpha)) throw DomainError("empty stratum " + alpha.to_string());

    std::vector<long long> alpha_ll;
    for (const auto& d : alpha.orders()) {
        if (d > (1ll << 40) || d < -(1ll << 40)) throw DomainError("order out of supported range");
        alpha_ll.push_back(d.convert_to<long long>());
    }

    const int factor = std::max(1, bounds.factor);
    std::map<std::string, Configuration> found;

    for (const auto& [beta, interior_pool] : sub_multisets(alpha_ll)) {
        if (beta.empty()) continue;  // at least one face
        if (std::find(interior_pool.begin(), interior_pool.end(), 0ll) != interior_pool.end())
            continue;  // marked points are always newborn
        long long beta_sum = std::accumulate(beta.begin(), beta.end(), 0ll);
        long long mass = beta_sum + 2 * static_cast<long long>(beta.size());  // sum over corners of (k+1)
        if (mass < 2) continue;
        long long mass_cap = mass * factor;
        int e_cap = static_cast<int>(mass_cap / 2);

        for (const ConfGraph& g : admissible_graphs(e_cap, mass_cap)) {
            long long ks_lo = mass - 2 * g.num_edges();
            long long ks_hi = ks_lo;
            if (factor > 1) {
                ks_lo = 0;
                ks_hi = mass_cap - 2 * g.num_edges();
            }
            if (ks_hi < 0) continue;
            ks_lo = std::max(ks_lo, 0ll);

            // Precompute candidate ribbon shapes per vertex.
            std::vector<std::vector<std::vector<std::vector<int>>>> shapes(g.num_vertices());
            bool dead = false;
            for (int v = 0; v < g.num_vertices() && !dead; ++v) {
                shapes[v] = ribbon_shapes(g, v);
                if (shapes[v].empty()) dead = true;
            }
            if (dead) continue;

            for (long long ks_total = ks_lo; ks_total <= ks_hi; ++ks_total) {
                std::vector<LocalRibbon> acc(g.num_vertices());
                std::function<void(int, long long)> rec_vertex = [&](int v, long long left) {
                    if (v == g.num_vertices()) {
                        if (left != 0) return;
                        distribute_interior(interior_pool, g, [&](const std::vector<std::vector<long long>>& dist) {
                            // condition 5 window per vertex, condition 6 at '-'
                            for (int u = 0; u < g.num_vertices(); ++u) {
                                if (g.kinds[u] == VertexKind::Cyl) continue;
                                long long window = 0;
                                for (long long d : dist[u]) window += d;
                                for (int i = 0; i < acc[u].num_comps(); ++i) window += acc[u].d_value(i);
                                if (window < -4 || ((window % 4) + 4) % 4 != 0) return;
                                if (g.kinds[u] == VertexKind::Minus) {
                                    MinusVertexData md;
                                    md.type = classify_boundary_type(g, u, acc[u]);
                                    md.interior = dist[u];
                                    for (const auto& row : acc[u].orders)
                                        for (long long k : row) md.boundary.push_back(k);
                                    if (in_condition6_table(md)) return;
                                }
                            }
                            Configuration c;
                            c.graph = g;
                            c.local = acc;
                            c.interior.resize(g.num_vertices());
                            for (int u = 0; u < g.num_vertices(); ++u) {
                                c.interior[u] = dist[u];
                                std::sort(c.interior[u].begin(), c.interior[u].end(), std::greater<>());
                            }
                            std::vector<long long> born = face_newborns(c);
                            std::vector<long long> want = beta;
                            std::sort(want.begin(), want.end(), std::greater<>());
                            if (born != want) return;
                            require_valid(c);  // cheap safety net; must always pass here
                            found.emplace(canonical_form(c), std::move(c));
                        });
                        return;
                    }
                    for (const auto& comps : shapes[v]) {
                        for (long long s = 0; s <= left; ++s) {
                            auto assignments = order_assignments(g, v, comps, s);
                            for (auto& ord : assignments) {
                                acc[v].comps = comps;
                                acc[v].orders = ord;
                                rec_vertex(v + 1, left - s);
                            }
                        }
                    }
                };
                rec_vertex(0, ks_total);
            }
        }
    }

    std::vector<Configuration> out;
    out.reserve(found.size());
    for (auto& [key, c] : found) out.push_back(std::move(c));
    return out;
}

std::string genus2_table() {
    static const char* names[3] = {"Q(2,2)", "Q(2,1,1)", "Q(1,1,1,1)"};
    std::vector<std::vector<Configuration>> cols;
    for (const char* n : names) cols.push_back(enumerate_configurations(parse_q(n)));
    std::ostringstream os;
    for (int i = 0; i < 3; ++i) {
        os << "== " << names[i] << ": " << cols[i].size() << " configurations\n";
        for (size_t j = 0; j < cols[i].size(); ++j) {
            os << "-- " << names[i] << " #" << (j + 1) << "\n";
            os << describe(cols[i][j]);
        }
    }
    return os.str();
}

std::vector<PlusVertexData> generate_plus_vertices(int count) {
    std::vector<PlusVertexData> out;
    // Host graphs carrying one '+'-vertex of valence 2, 3 and 4.
    std::vector<std::pair<ConfGraph, int>> hosts;
    {
        ConfGraph a;  // -(v0) -- +(v2) -- -(v1)
        a.kinds = {VertexKind::Minus, VertexKind::Minus, VertexKind::Plus};
        a.edges = {{0, 2}, {2, 1}};
        hosts.push_back({a, 2});
        ConfGraph c;  // type c: +(v0) junction with loop and chain to -(v1)
        c.kinds = {VertexKind::Plus, VertexKind::Minus};
        c.edges = {{0, 0}, {0, 1}};
        hosts.push_back({c, 0});
        ConfGraph e;  // figure-eight center
        e.kinds = {VertexKind::Plus};
        e.edges = {{0, 0}, {0, 0}};
        hosts.push_back({e, 0});
    }
    static const std::vector<std::vector<long long>> interiors = {{}, {2}, {4}, {2, 2}, {6}, {4, 2}, {2, 2, 2}};
    for (long long ks = 0; static_cast<int>(out.size()) < count && ks < 1000; ++ks) {
        for (const auto& [g, v] : hosts) {
            for (const auto& comps : ribbon_shapes(g, v)) {
                for (auto& ord : order_assignments(g, v, comps, ks)) {
                    LocalRibbon r;
                    r.comps = comps;
                    r.orders = ord;
                    long long dsum = 0;
                    for (int i = 0; i < r.num_comps(); ++i) dsum += r.d_value(i);
                    for (const auto& in : interiors) {
                        long long window = dsum;
                        for (long long d : in) window += d;
                        if (window < -4 || ((window % 4) + 4) % 4 != 0) continue;
                        out.push_back({g, v, r, in});
                        if (static_cast<int>(out.size()) >= count) return out;
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace qdstrata
