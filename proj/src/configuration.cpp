#include "qdstrata/configuration.hpp"

#include "qdstrata/numeric.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace qdstrata {

using nlohmann::json;

namespace {

// Flattened chain maps over all sides of the configuration.
struct SideMaps {
    std::vector<int> next, prev;
    std::vector<long long> k_after;  // order of the corner (s -> next[s])
    std::vector<int> vert_of;
    bool ok = true;
};

SideMaps side_maps(const Configuration& c) {
    const int ns = c.graph.num_sides();
    SideMaps m;
    m.next.assign(ns, -1);
    m.prev.assign(ns, -1);
    m.k_after.assign(ns, 0);
    m.vert_of.assign(ns, -1);
    for (int v = 0; v < c.num_vertices(); ++v) {
        const LocalRibbon& r = c.local[v];
        for (size_t i = 0; i < r.comps.size(); ++i) {
            const auto& comp = r.comps[i];
            for (size_t l = 0; l < comp.size(); ++l) {
                int s = comp[l];
                int t = comp[(l + 1) % comp.size()];
                if (s < 0 || s >= ns || m.next[s] != -1) {
                    m.ok = false;
                    return m;
                }
                m.next[s] = t;
                m.k_after[s] = r.orders[i][l];
                m.vert_of[s] = v;
            }
        }
    }
    for (int s = 0; s < ns; ++s) {
        if (m.next[s] == -1 || m.vert_of[s] != c.graph.vertex_of_side(s)) {
            m.ok = false;
            return m;
        }
        m.prev[m.next[s]] = s;
    }
    return m;
}

}  // namespace

long long newborn_order(const std::vector<long long>& corner_orders) {
    long long b = -2;
    for (long long k : corner_orders) b += k + 1;
    return b;
}

long long Face::newborn() const { return newborn_order(orders); }

std::vector<Violation> validate(const Configuration& c) {
    std::vector<Violation> out;
    const int nv = c.num_vertices();
    if (static_cast<int>(c.local.size()) != nv || static_cast<int>(c.interior.size()) != nv) {
        out.push_back({0, "local ribbon / interior tables must have one entry per vertex"});
        return out;
    }
    SideMaps maps = side_maps(c);
    if (!maps.ok) {
        out.push_back({0, "every edge side must appear exactly once, at its own vertex"});
        return out;
    }

    // (1) admissible graph
    if (!c.graph.connected()) {
        out.push_back({1, "graph is not connected"});
        return out;
    }
    for (const auto& msg : graph_violations(c.graph)) out.push_back({1, msg});
    if (!out.empty()) return out;

    for (int v = 0; v < nv; ++v) {
        // (2) embedded local ribbon graph from the classified list
        try {
            classify_boundary_type(c.graph, v, c.local[v]);
        } catch (const DomainError& e) {
            out.push_back({2, e.what()});
            continue;
        }
        // (3) + (4) parities and orders
        if (c.graph.kinds[v] != VertexKind::Minus) {
            try {
                compute_parities(c.graph, v, c.local[v]);
            } catch (const DomainError& e) {
                out.push_back({3, e.what()});
                continue;
            }
        }
        std::vector<std::string> why;
        if (!check_orders(c.graph, v, c.local[v], &why))
            for (const auto& msg : why) out.push_back({4, msg});

        // (5) interior singularity orders and the mod-4 window
        long long interior_sum = 0;
        bool interior_ok = true;
        for (long long d : c.interior[v]) {
            interior_sum += d;
            switch (c.graph.kinds[v]) {
                case VertexKind::Minus:
                    if (d < -1 || d == 0) interior_ok = false;
                    break;
                case VertexKind::Plus:
                    if (d < 2 || d % 2 != 0) interior_ok = false;
                    break;
                case VertexKind::Cyl:
                    interior_ok = false;  // cylinders have no interior singularities
                    break;
            }
        }
        if (!interior_ok) {
            out.push_back({5, "interior order out of range at vertex " + std::to_string(v)});
            continue;
        }
        if (c.graph.kinds[v] != VertexKind::Cyl) {
            long long window = interior_sum;
            for (int i = 0; i < c.local[v].num_comps(); ++i) window += c.local[v].d_value(i);
            if (window < -4 || ((window % 4) + 4) % 4 != 0)
                out.push_back({5, "sum d_l + sum D_i = " + std::to_string(window) + " violates the mod-4 window at vertex " +
                                      std::to_string(v)});
        }
        // (6) exceptional list at '-'-vertices
        if (c.graph.kinds[v] == VertexKind::Minus) {
            MinusVertexData d;
            d.type = classify_boundary_type(c.graph, v, c.local[v]);
            d.interior = c.interior[v];
            for (const auto& row : c.local[v].orders)
                for (long long k : row) d.boundary.push_back(k);
            std::sort(d.interior.begin(), d.interior.end());
            std::sort(d.boundary.begin(), d.boundary.end());
            if (in_condition6_table(d))
                out.push_back({6, "'-'-vertex " + std::to_string(v) + " carries excluded data [" +
                                      "interior/boundary in the exceptional list]"});
        }
    }
    return out;
}

void require_valid(const Configuration& c) {
    auto v = validate(c);
    if (!v.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& x : v) msg += " [cond " + std::to_string(x.condition) + "] " + x.message + ";";
        throw DomainError(msg);
    }
}

GlobalRibbonGraph global_ribbon_graph(const Configuration& c) {
    require_valid(c);
    SideMaps maps = side_maps(c);
    const int ns = c.graph.num_sides();
    std::vector<char> used(ns, 0);
    GlobalRibbonGraph g;
    // Rotating counterclockwise around a newborn singularity: after the corner
    // that follows side s, cross the edge of s and resume at the corner that
    // follows pred(opposite(s)).
    for (int s0 = 0; s0 < ns; ++s0) {
        if (used[s0]) continue;
        Face f;
        int s = s0;
        do {
            used[s] = 1;
            f.sides.push_back(s);
            f.orders.push_back(maps.k_after[s]);
            s = maps.prev[ConfGraph::opposite_side(s)];
        } while (s != s0);
        g.faces.push_back(std::move(f));
    }
    return g;
}

QSingularityData singularity_data(const Configuration& c) {
    GlobalRibbonGraph g = global_ribbon_graph(c);
    std::vector<Integer> alpha;
    for (int v = 0; v < c.num_vertices(); ++v)
        for (long long d : c.interior[v]) alpha.emplace_back(d);
    for (const auto& f : g.faces) alpha.emplace_back(f.newborn());
    QSingularityData data(std::move(alpha));
    data.require_valid();
    return data;
}

std::string BoundaryComponent::to_string() const {
    return (abelian ? "H(" : "Q(") + multiset_to_string(entries) + ")";
}

std::vector<BoundaryComponent> principal_boundary(const Configuration& c) {
    require_valid(c);
    std::vector<BoundaryComponent> out;
    for (int v = 0; v < c.num_vertices(); ++v) {
        if (c.graph.kinds[v] == VertexKind::Cyl) continue;  // cylinders shrink and disappear
        BoundaryComponent bc;
        bc.vertex = v;
        bc.abelian = c.graph.kinds[v] == VertexKind::Plus;
        std::vector<Integer> entries;
        for (long long d : c.interior[v]) entries.emplace_back(bc.abelian ? d / 2 : d);
        for (int i = 0; i < c.local[v].num_comps(); ++i) {
            long long di = c.local[v].d_value(i);
            entries.emplace_back(bc.abelian ? di / 2 : di);
        }
        bc.entries = make_multiset(std::move(entries));
        if (bc.abelian) {
            HSingularityData h(bc.entries);
            if (is_empty_h(h)) throw DomainError("internal: emitted empty Abelian stratum " + h.to_string());
        } else {
            QSingularityData q(bc.entries);
            if (is_empty_q(q)) throw DomainError("internal: emitted empty quadratic stratum " + q.to_string());
        }
        out.push_back(std::move(bc));
    }
    return out;
}

namespace {

struct Cond6Entry {
    std::vector<long long> interior, boundary;  // sorted ascending
};

std::vector<Cond6Entry> sorted_entries(std::vector<Cond6Entry> v) {
    for (auto& e : v) {
        std::sort(e.interior.begin(), e.interior.end());
        std::sort(e.boundary.begin(), e.boundary.end());
    }
    return v;
}

// Literal exceptional list from condition 6 of the definition of a
// configuration, one block per '-'-boundary type.
const std::vector<Cond6Entry>& table_m11() {
    static const std::vector<Cond6Entry> t = sorted_entries({
        {{}, {2}}, {{-1}, {3}}, {{1}, {1}}, {{-1, 1}, {2}},
        {{1}, {5}}, {{3}, {3}}, {{1, 3}, {2}},
        {{}, {6}}, {{4}, {2}},
    });
    return t;
}

const std::vector<Cond6Entry>& table_m21() {
    static const std::vector<Cond6Entry> t = sorted_entries({
        {{}, {2, 0}}, {{}, {1, 1}}, {{-1}, {0, 3}}, {{-1}, {1, 2}},
        {{1}, {0, 1}}, {{1, -1}, {0, 2}}, {{1, -1}, {1, 1}},
        {{3, 1}, {2, 0}}, {{3, 1}, {1, 1}}, {{3}, {3, 0}}, {{3}, {2, 1}},
        {{1}, {5, 0}}, {{1}, {4, 1}}, {{1}, {3, 2}}, {{4}, {2, 0}}, {{4}, {1, 1}},
        {{}, {6, 0}}, {{}, {5, 1}}, {{}, {4, 2}}, {{}, {3, 3}},
    });
    return t;
}

const std::vector<Cond6Entry>& table_m22() {
    static const std::vector<Cond6Entry> t = sorted_entries({
        {{}, {2, 2}}, {{}, {1, 3}}, {{-1}, {2, 3}}, {{1}, {1, 2}}, {{-1, 1}, {2, 2}},
        {{}, {3, 5}}, {{1}, {2, 5}}, {{3}, {2, 3}}, {{1, 3}, {2, 2}},
        {{}, {2, 6}}, {{4}, {2, 2}},
    });
    return t;
}

const std::vector<Cond6Entry>& table_for(BoundaryType t) {
    switch (t) {
        case BoundaryType::M11: return table_m11();
        case BoundaryType::M21: return table_m21();
        case BoundaryType::M22: return table_m22();
        default: throw DomainError("condition 6 applies to '-'-vertices only");
    }
}

}  // namespace

bool in_condition6_table(const MinusVertexData& d) {
    std::vector<long long> in = d.interior, bd = d.boundary;
    std::sort(in.begin(), in.end());
    std::sort(bd.begin(), bd.end());
    for (const auto& e : table_for(d.type))
        if (e.interior == in && e.boundary == bd) return true;
    return false;
}

bool exceptional_equivalence(const MinusVertexData& d) {
    // Formal boundary stratum of the vertex, per the Q-assignment.
    std::vector<Integer> alpha;
    for (long long x : d.interior) alpha.emplace_back(x);
    if (d.type == BoundaryType::M22) {
        if (d.boundary.size() != 2) throw DomainError("M22 needs two boundary orders");
        alpha.emplace_back(d.boundary[0] - 2);
        alpha.emplace_back(d.boundary[1] - 2);
    } else {
        long long s = 0;
        for (long long k : d.boundary) s += k;
        alpha.emplace_back(s - 2);
    }
    // Membership in the Masur--Smillie list, directly on the stripped
    // entries (the emitted data need not satisfy condition 5 to be testable).
    OrderMultiset stripped = strip_zeros(make_multiset(std::move(alpha)));
    static const std::vector<OrderMultiset> kEmpty = {
        {}, {Integer(1), Integer(-1)}, {Integer(3), Integer(1)}, {Integer(4)}};
    bool empty = false;
    for (const auto& e : kEmpty)
        if (stripped == e) empty = true;
    bool listed = in_condition6_table(d);
    if (empty != listed)
        throw DomainError("exceptional-list mismatch: Q(" + multiset_to_string(stripped) + ")" +
                          (empty ? " empty" : " nonempty") + " but table says " +
                          (listed ? "listed" : "not listed"));
    return listed;
}

namespace {

// Encoding of the whole configuration relative to one start side: breadth-
// first numbering over the generators opposite/next, then a flat token list.
std::string encode_from(const Configuration& c, const SideMaps& maps, int start) {
    const int ns = c.graph.num_sides();
    std::vector<int> id(ns, -1), order;
    order.reserve(ns);
    auto discover = [&](int s) {
        if (id[s] == -1) {
            id[s] = static_cast<int>(order.size());
            order.push_back(s);
        }
    };
    discover(start);
    for (size_t i = 0; i < order.size(); ++i) {
        discover(ConfGraph::opposite_side(order[i]));
        discover(maps.next[order[i]]);
    }
    std::vector<int> vid(c.num_vertices(), -1);
    int nv = 0;
    std::string enc;
    for (int s : order) {
        int v = maps.vert_of[s];
        if (vid[v] == -1) vid[v] = nv++;
        enc += std::to_string(id[ConfGraph::opposite_side(s)]) + "," + std::to_string(id[maps.next[s]]) + "," +
               std::to_string(maps.k_after[s]) + "," + std::to_string(vid[v]) + ";";
    }
    std::vector<int> vorder(nv, -1);
    for (int v = 0; v < c.num_vertices(); ++v)
        if (vid[v] != -1) vorder[vid[v]] = v;
    enc += "|";
    for (int v : vorder) {
        enc += kind_char(c.graph.kinds[v]);
        auto in = c.interior[v];
        std::sort(in.begin(), in.end(), std::greater<>());
        for (long long d : in) enc += " " + std::to_string(d);
        enc += ";";
    }
    return enc;
}

}  // namespace

std::string canonical_form(const Configuration& c) {
    SideMaps maps = side_maps(c);
    if (!maps.ok) throw DomainError("canonical_form: inconsistent side bookkeeping");
    std::string best;
    for (int s = 0; s < c.graph.num_sides(); ++s) {
        std::string e = encode_from(c, maps, s);
        if (best.empty() || e < best) best = std::move(e);
    }
    return best;
}

namespace {

std::string side_name(int s) { return "e" + std::to_string(s / 2) + (s % 2 == 0 ? "+" : "-"); }

int parse_side(const std::string& name, int num_edges) {
    if (name.size() < 2 || name[0] != 'e') throw ParseError("bad side name '" + name + "'");
    char sign = name.back();
    if (sign != '+' && sign != '-') throw ParseError("bad side name '" + name + "'");
    int e = 0;
    try {
        e = std::stoi(name.substr(1, name.size() - 2));
    } catch (const std::exception&) {
        throw ParseError("bad side name '" + name + "'");
    }
    if (e < 0 || e >= num_edges) throw ParseError("side '" + name + "' references a missing edge");
    return 2 * e + (sign == '-' ? 1 : 0);
}

}  // namespace

std::string to_json(const Configuration& c, bool pretty) {
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < c.num_vertices(); ++v) {
        json jv;
        jv["kind"] = std::string(1, kind_char(c.graph.kinds[v]));
        jv["interior"] = c.interior[v];
        j["vertices"].push_back(jv);
    }
    j["edges"] = json::array();
    for (const auto& e : c.graph.edges) j["edges"].push_back({e[0], e[1]});
    j["ribbon"] = json::array();
    for (int v = 0; v < c.num_vertices(); ++v) {
        json jr = json::array();
        const LocalRibbon& r = c.local[v];
        for (size_t i = 0; i < r.comps.size(); ++i) {
            json comp = json::array();
            for (size_t l = 0; l < r.comps[i].size(); ++l)
                comp.push_back({side_name(r.comps[i][l]), r.orders[i][l]});
            jr.push_back(comp);
        }
        j["ribbon"].push_back(jr);
    }
    return pretty ? j.dump(2) : j.dump();
}

Configuration configuration_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad configuration JSON: ") + e.what());
    }
    Configuration c;
    try {
        for (const auto& jv : j.at("vertices")) {
            std::string k = jv.at("kind").get<std::string>();
            if (k.size() != 1) throw ParseError("bad vertex kind '" + k + "'");
            c.graph.kinds.push_back(kind_from_char(k[0]));
            std::vector<long long> in;
            if (jv.contains("interior"))
                for (const auto& d : jv.at("interior")) in.push_back(d.get<long long>());
            std::sort(in.begin(), in.end(), std::greater<>());
            c.interior.push_back(std::move(in));
        }
        for (const auto& je : j.at("edges")) {
            int a = je.at(0).get<int>(), b = je.at(1).get<int>();
            if (a < 0 || b < 0 || a >= c.graph.num_vertices() || b >= c.graph.num_vertices())
                throw ParseError("edge endpoint out of range");
            c.graph.edges.push_back({a, b});
        }
        for (const auto& jr : j.at("ribbon")) {
            LocalRibbon r;
            for (const auto& jc : jr) {
                std::vector<int> comp;
                std::vector<long long> ord;
                for (const auto& jkv : jc) {
                    comp.push_back(parse_side(jkv.at(0).get<std::string>(), c.graph.num_edges()));
                    ord.push_back(jkv.at(1).get<long long>());
                }
                r.comps.push_back(std::move(comp));
                r.orders.push_back(std::move(ord));
            }
            c.local.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad configuration JSON: ") + e.what());
    }
    if (c.local.size() != c.graph.kinds.size())
        throw ParseError("configuration JSON: ribbon table must have one entry per vertex");
    return c;
}

Configuration load_configuration_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open configuration file '" + path + "'");
    std::string text, line;
    while (std::getline(in, line)) {
        size_t i = line.find_first_not_of(" \t");
        if (i != std::string::npos && line[i] == '#') continue;
        text += line;
        text += '\n';
    }
    return configuration_from_json(text);
}

std::string describe(const Configuration& c) {
    std::ostringstream os;
    os << "# graph: type " << base_type_name(classify_base_type(c.graph)) << "; vertices:";
    for (int v = 0; v < c.num_vertices(); ++v) os << " " << v << ":" << kind_char(c.graph.kinds[v]);
    os << "; edges:";
    for (const auto& e : c.graph.edges) os << " (" << e[0] << "," << e[1] << ")";
    os << "\n";
    for (int v = 0; v < c.num_vertices(); ++v) {
        os << "# vertex " << v << " (" << boundary_type_name(classify_boundary_type(c.graph, v, c.local[v])) << "):";
        const LocalRibbon& r = c.local[v];
        for (size_t i = 0; i < r.comps.size(); ++i) {
            os << " [";
            for (size_t l = 0; l < r.comps[i].size(); ++l)
                os << (l ? " " : "") << side_name(r.comps[i][l]) << "(k=" << r.orders[i][l] << ")";
            os << "]";
        }
        os << "; interior {";
        for (size_t i = 0; i < c.interior[v].size(); ++i) os << (i ? "," : "") << c.interior[v][i];
        os << "}\n";
    }
    QSingularityData data = singularity_data(c);
    os << "# data: " << data.to_string() << "  genus " << genus_q(data) << "\n";
    os << "# boundary:";
    auto pb = principal_boundary(c);
    if (pb.empty()) {
        os << " (none: all components are cylinders)";
    } else {
        for (size_t i = 0; i < pb.size(); ++i) os << (i ? " | " : " ") << pb[i].to_string();
    }
    os << "\n" << to_json(c) << "\n";
    return os.str();
}

}  // namespace qdstrata
