#include "cover_homology.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace qdstrata::testing {

namespace {

std::vector<SaddleConnection> all_lifts(const FlatSurface& base, const FlatSurface& cover,
                                        const std::vector<SaddleConnection>& scs) {
    std::vector<SaddleConnection> lifts;
    for (const auto& sc : scs) {
        auto [up, down] = lift_to_cover(base, cover, sc);
        lifts.push_back(std::move(up));
        lifts.push_back(std::move(down));
    }
    return lifts;
}

}  // namespace

CoverHomology::CoverHomology(const FlatSurface& base, const FlatSurface& cover,
                             const std::vector<SaddleConnection>& scs)
    : refined_(refine_along(cover, all_lifts(base, cover, scs))) {
    const FlatSurface& m = refined_.mesh;
    const auto& classes = m.vertex_classes();

    // P̂: classes sitting at original vertices of the cover (every original
    // vertex of the bundled fixtures' covers is a preimage of a singularity;
    // refinement nodes are crossing points, never original vertices).
    std::vector<char> in_p(classes.size(), 0);
    for (size_t c = 0; c < classes.size(); ++c) {
        auto [f, i] = classes[c].corners[0];
        const Vec2& pt = m.vertex(f, i);
        for (const Vec2& v : cover.polys[refined_.face_source[f]].v)
            if (v == pt) in_p[c] = 1;
    }
    bool any = false;
    for (char x : in_p) any |= x;
    if (!any) throw DomainError("cover homology: no marked points found");

    // merge P̂ to a single vertex
    merged_vertex_.assign(classes.size(), -1);
    int next_id = 1;
    for (size_t c = 0; c < classes.size(); ++c) merged_vertex_[c] = in_p[c] ? 0 : next_id++;

    // endpoints of each 1-cell
    std::set<int> gids;
    for (int p = 0; p < m.num_polys(); ++p)
        for (int e = 0; e < m.polys[p].size(); ++e) gids.insert(refined_.gluing_id(p, e));
    auto locate = [&](int sid) {
        int p = 0;
        while (p + 1 < m.num_polys() && refined_.side_base[p + 1] <= sid) ++p;
        return std::pair<int, int>{p, sid - refined_.side_base[p]};
    };
    std::map<int, std::pair<int, int>> ends;  // gid -> merged endpoints (tail, head)
    for (int gid : gids) {
        auto [p, e] = locate(gid);
        int tail = merged_vertex_[m.class_of(p, e)];
        int head = merged_vertex_[m.class_of(p, m.next_i(p, e))];
        ends[gid] = {tail, head};
    }

    // spanning tree of the merged 1-skeleton, rooted at the merged P̂ vertex
    int total_sides = refined_.side_base.back() + static_cast<int>(m.polys.back().size());
    tree_edge_.assign(total_sides, 0);
    std::vector<char> seen(next_id, 0);
    seen[0] = 1;
    std::deque<int> frontier = {0};
    std::multimap<int, std::pair<int, int>> incident;  // vertex -> (gid, other endpoint)
    for (const auto& [gid, pq] : ends) {
        incident.insert({pq.first, {gid, pq.second}});
        incident.insert({pq.second, {gid, pq.first}});
    }
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop_front();
        auto [lo, hi] = incident.equal_range(v);
        for (auto it = lo; it != hi; ++it) {
            auto [gid, other] = it->second;
            if (seen[other]) continue;
            seen[other] = 1;
            tree_edge_[gid] = 1;
            frontier.push_back(other);
        }
    }
    for (char x : seen)
        if (!x) throw DomainError("cover homology: 1-skeleton not connected");

    // cotree: spanning tree of the dual graph over non-tree edges
    face_parent_edge_.assign(m.num_polys(), -1);
    face_parent_face_.assign(m.num_polys(), -1);
    std::vector<char> face_seen(m.num_polys(), 0);
    std::deque<int> fq = {0};
    face_seen[0] = 1;
    std::vector<char> cotree(tree_edge_.size(), 0);
    while (!fq.empty()) {
        int f = fq.front();
        fq.pop_front();
        face_order_.push_back(f);
        for (int e = 0; e < m.polys[f].size(); ++e) {
            int gid = refined_.gluing_id(f, e);
            if (tree_edge_[gid] || cotree[gid]) continue;
            int g = m.partner[f][e].poly;
            if (face_seen[g]) continue;
            face_seen[g] = 1;
            face_parent_edge_[g] = gid;
            face_parent_face_[g] = f;
            cotree[gid] = 1;
            fq.push_back(g);
        }
    }
    for (char x : face_seen)
        if (!x) throw DomainError("cover homology: dual graph not connected");

    for (int gid : gids)
        if (!tree_edge_[gid] && !cotree[gid]) basis_edges_.push_back(gid);
}

std::map<int, long long> CoverHomology::lift_chain(int lift) const {
    std::map<int, long long> chain;
    for (const auto& [gid, orient] : refined_.sc_runs[lift]) chain[gid] += orient;
    return chain;
}

std::vector<long long> CoverHomology::coordinates(const std::map<int, long long>& chain_in) const {
    const FlatSurface& m = refined_.mesh;
    // Reduce modulo boundaries: choose face multipliers x_f so that the
    // residue z - d2(x) vanishes on every cotree edge.  Each cotree edge
    // separates a face from its parent and appears in no other boundary, so
    // the system is triangular along the cotree, root first.
    std::vector<long long> x(m.num_polys(), 0);
    auto z = [&](int gid) {
        auto it = chain_in.find(gid);
        return it == chain_in.end() ? 0ll : it->second;
    };
    for (int f : face_order_) {
        int parent = face_parent_edge_[f];
        if (parent < 0) continue;
        long long sign = 0;
        for (int e = 0; e < m.polys[f].size(); ++e)
            if (refined_.gluing_id(f, e) == parent)
                sign += (refined_.side_id(f, e) == parent) ? 1 : -1;
        if (sign != 1 && sign != -1) throw DomainError("cover homology: degenerate cotree edge");
        x[f] = x[face_parent_face_[f]] + z(parent) * sign;
    }
    std::map<int, long long> residue = chain_in;
    for (int f = 0; f < m.num_polys(); ++f) {
        if (x[f] == 0) continue;
        for (int e = 0; e < m.polys[f].size(); ++e) {
            int gid = refined_.gluing_id(f, e);
            int orient = (refined_.side_id(f, e) == gid) ? 1 : -1;
            residue[gid] -= x[f] * orient;
        }
    }
    std::vector<long long> out;
    std::set<int> basis(basis_edges_.begin(), basis_edges_.end());
    for (const auto& [gid, c] : residue) {
        if (c == 0 || basis.count(gid)) continue;
        if (tree_edge_[gid])
            throw DomainError("cover homology: residue on the spanning tree (chain is not a relative cycle)");
        throw DomainError("cover homology: residue on a cotree edge");
    }
    for (int gid : basis_edges_) {
        auto it = residue.find(gid);
        out.push_back(it == residue.end() ? 0ll : it->second);
    }
    return out;
}

bool CoverHomology::antiinvariant(int sc) const {
    ComplementPattern pat = complement_components(refined_, {2 * sc, 2 * sc + 1});
    bool two_components = pat.n_components == 2;
    // cross-check against the coordinate computation
    auto up = coordinates(lift_chain(2 * sc));
    auto down = coordinates(lift_chain(2 * sc + 1));
    bool negated = true;
    for (size_t k = 0; k < up.size(); ++k) negated &= up[k] == -down[k];
    if (negated != two_components)
        throw DomainError("cover homology: component count disagrees with the coordinate test");
    return two_components;
}

bool CoverHomology::homologous(int i, int j) const {
    auto hat = [&](int sc) {
        std::map<int, long long> chain = lift_chain(2 * sc);
        if (!antiinvariant(sc))
            for (const auto& [gid, c] : lift_chain(2 * sc + 1)) chain[gid] -= c;
        return coordinates(chain);
    };
    std::vector<long long> a = hat(i), b = hat(j);
    // [γ̂] pairs nontrivially with the Abelian form, so it never vanishes
    auto nonzero = [](const std::vector<long long>& v) {
        for (long long x : v)
            if (x != 0) return true;
        return false;
    };
    if (!nonzero(a) || !nonzero(b)) throw DomainError("cover homology: vanishing hat class");
    bool plus = true, minus = true;
    for (size_t k = 0; k < a.size(); ++k) {
        plus &= a[k] == b[k];
        minus &= a[k] == -b[k];
    }
    return plus || minus;
}

}  // namespace qdstrata::testing
