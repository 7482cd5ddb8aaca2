#include "qdstrata/ribbon.hpp"

#include "qdstrata/numeric.hpp"

#include <algorithm>
#include <map>

namespace qdstrata {

long long LocalRibbon::comp_order_sum(int i) const {
    long long s = 0;
    for (long long k : orders[i]) s += k;
    return s;
}

long long LocalRibbon::total_order_sum() const {
    long long s = 0;
    for (int i = 0; i < num_comps(); ++i) s += comp_order_sum(i);
    return s;
}

int LocalRibbon::total_sides() const {
    int n = 0;
    for (const auto& c : comps) n += static_cast<int>(c.size());
    return n;
}

std::string boundary_type_name(BoundaryType t) {
    switch (t) {
        case BoundaryType::M11: return "-1.1";
        case BoundaryType::M21: return "-2.1";
        case BoundaryType::M22: return "-2.2";
        case BoundaryType::C22: return "o2.2";
        case BoundaryType::C32: return "o3.2";
        case BoundaryType::C42: return "o4.2";
        case BoundaryType::P21: return "+2.1";
        case BoundaryType::P22: return "+2.2";
        case BoundaryType::P31: return "+3.1";
        case BoundaryType::P32a: return "+3.2a";
        case BoundaryType::P32b: return "+3.2b";
        case BoundaryType::P33: return "+3.3";
        case BoundaryType::P41a: return "+4.1a";
        case BoundaryType::P41b: return "+4.1b";
        case BoundaryType::P42a: return "+4.2a";
        case BoundaryType::P42b: return "+4.2b";
        case BoundaryType::P42c: return "+4.2c";
        case BoundaryType::P43a: return "+4.3a";
        case BoundaryType::P43b: return "+4.3b";
        case BoundaryType::P44: return "+4.4";
    }
    return "?";
}

namespace {

// Signed weight of each side at v, as a map side -> weight.
std::map<int, int> side_weights(const ConfGraph& g, int v) {
    std::vector<int> sides = g.sides_at(v);
    std::vector<int> w = signed_weights_at(g, v);
    std::map<int, int> m;
    for (size_t i = 0; i < sides.size(); ++i) m[sides[i]] = w[i];
    return m;
}

void check_structure(const ConfGraph& g, int v, const LocalRibbon& r) {
    std::vector<int> sides = g.sides_at(v);
    std::vector<int> seen;
    for (const auto& c : r.comps) {
        if (c.empty()) throw DomainError("empty boundary component");
        for (int s : c) seen.push_back(s);
    }
    std::sort(seen.begin(), seen.end());
    if (seen != sides) throw DomainError("boundary components do not partition the sides at vertex " +
                                         std::to_string(v));
    if (r.orders.size() != r.comps.size()) throw DomainError("orders/components shape mismatch");
    for (size_t i = 0; i < r.comps.size(); ++i)
        if (r.orders[i].size() != r.comps[i].size()) throw DomainError("orders/components shape mismatch");
}

}  // namespace

BoundaryType classify_boundary_type(const ConfGraph& g, int v, const LocalRibbon& r) {
    check_structure(g, v, r);
    const int val = g.valence(v);
    const int nc = r.num_comps();
    std::vector<size_t> sizes;
    for (const auto& c : r.comps) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());

    switch (g.kinds[v]) {
        case VertexKind::Minus:
            if (val == 1) return BoundaryType::M11;
            if (val == 2 && nc == 1) return BoundaryType::M21;
            if (val == 2 && nc == 2) return BoundaryType::M22;
            throw DomainError("'-'-vertex of valence " + std::to_string(val) + " is not in the list");
        case VertexKind::Cyl: {
            if (nc != 2) throw DomainError("a cylinder must have exactly two boundary components");
            if (val == 2) return BoundaryType::C22;
            if (val == 3) {
                // The single-side component must be the chain side.
                for (const auto& c : r.comps)
                    if (c.size() == 1 && !g.is_bridge(c[0] / 2))
                        throw DomainError("o3.2: single-side boundary component must be the chain side");
                if (sizes != std::vector<size_t>{1, 2})
                    throw DomainError("o3.2: components must split the sides 2+1");
                return BoundaryType::C32;
            }
            if (val == 4) {
                if (sizes != std::vector<size_t>{2, 2})
                    throw DomainError("o4.2: components must split the sides 2+2");
                for (const auto& c : r.comps)
                    if (!g.same_cycle(v, c[0], c[1]))
                        throw DomainError("o4.2: each boundary component must pair sides of one cycle");
                return BoundaryType::C42;
            }
            throw DomainError("cylinder of valence " + std::to_string(val) + " is not in the list");
        }
        case VertexKind::Plus: {
            if (val == 2) return nc == 1 ? BoundaryType::P21 : BoundaryType::P22;
            if (val == 3) {
                if (nc == 1) return BoundaryType::P31;
                if (nc == 3) return BoundaryType::P33;
                // 2 components: letter depends on what the singleton is.
                for (const auto& c : r.comps)
                    if (c.size() == 1)
                        return g.is_bridge(c[0] / 2) ? BoundaryType::P32a : BoundaryType::P32b;
                throw DomainError("+3 vertex: bad component sizes");
            }
            if (val == 4) {
                if (nc == 1) {
                    // Alternating cycle membership around the component -> +4.1b.
                    const auto& c = r.comps[0];
                    bool alternating = true;
                    for (int l = 0; l < 4; ++l)
                        if (g.same_cycle(v, c[l], c[(l + 1) % 4])) alternating = false;
                    return alternating ? BoundaryType::P41b : BoundaryType::P41a;
                }
                if (nc == 2 && sizes == std::vector<size_t>{2, 2}) {
                    bool comps_follow_cycles = g.same_cycle(v, r.comps[0][0], r.comps[0][1]);
                    bool other = g.same_cycle(v, r.comps[1][0], r.comps[1][1]);
                    if (comps_follow_cycles != other) throw DomainError("+4 vertex: inconsistent 2+2 split");
                    return comps_follow_cycles ? BoundaryType::P42b : BoundaryType::P42a;
                }
                if (nc == 2 && sizes == std::vector<size_t>{1, 3}) return BoundaryType::P42c;
                if (nc == 3) {
                    for (const auto& c : r.comps)
                        if (c.size() == 2)
                            return g.same_cycle(v, c[0], c[1]) ? BoundaryType::P43b : BoundaryType::P43a;
                    throw DomainError("+4 vertex: bad component sizes");
                }
                if (nc == 4) return BoundaryType::P44;
            }
            throw DomainError("'+'-vertex of valence " + std::to_string(val) + " is not in the list");
        }
    }
    throw DomainError("unreachable");
}

std::vector<std::vector<int>> compute_parities(const ConfGraph& g, int v, const LocalRibbon& r) {
    if (g.kinds[v] == VertexKind::Minus)
        throw DomainError("parities are undefined at a '-'-vertex");
    check_structure(g, v, r);
    std::map<int, int> w = side_weights(g, v);
    std::vector<std::vector<int>> par(r.comps.size());
    for (size_t i = 0; i < r.comps.size(); ++i) {
        const auto& c = r.comps[i];
        for (size_t l = 0; l < c.size(); ++l) {
            int a = w[c[l]];
            int b = w[c[(l + 1) % c.size()]];
            int p = (a > 0) == (b > 0) ? 0 : 1;
            if (g.kinds[v] == VertexKind::Cyl && p != 0)
                throw DomainError("cylinder vertex with an odd corner: sides of one boundary component "
                                  "must carry equal signs");
            par[i].push_back(p);
        }
    }
    return par;
}

bool check_orders(const ConfGraph& g, int v, const LocalRibbon& r, std::vector<std::string>* why) {
    auto fail = [&](const std::string& msg) {
        if (why) why->push_back(msg);
        return false;
    };
    check_structure(g, v, r);
    for (const auto& row : r.orders)
        for (long long k : row)
            if (k < 0) return fail("negative boundary order at vertex " + std::to_string(v));

    switch (g.kinds[v]) {
        case VertexKind::Cyl:
            for (const auto& row : r.orders)
                for (long long k : row)
                    if (k != 0) return fail("cylinder corner with nonzero order at vertex " + std::to_string(v));
            return true;
        case VertexKind::Plus: {
            auto par = compute_parities(g, v, r);
            for (size_t i = 0; i < r.orders.size(); ++i) {
                for (size_t l = 0; l < r.orders[i].size(); ++l)
                    if ((r.orders[i][l] & 1) != par[i][l])
                        return fail("boundary order parity mismatch at vertex " + std::to_string(v));
                if (r.d_value(static_cast<int>(i)) < 0)
                    return fail("D_i < 0 at '+'-vertex " + std::to_string(v));
            }
            return true;
        }
        case VertexKind::Minus:
            for (int i = 0; i < r.num_comps(); ++i)
                if (r.d_value(i) < -1) return fail("D_i < -1 at '-'-vertex " + std::to_string(v));
            return true;
    }
    return fail("unreachable");
}

}  // namespace qdstrata
