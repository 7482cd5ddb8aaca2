#include "doctest.h"

#include "qdstrata/configuration.hpp"
#include "qdstrata/numeric.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace qdstrata;

namespace {

Configuration load_fixture(const std::string& name) {
    return load_configuration_file(std::string(QDSTRATA_FIXTURES) + "/" + name);
}

QSingularityData q(std::initializer_list<long long> xs) {
    std::vector<Integer> v;
    for (auto x : xs) v.emplace_back(x);
    return QSingularityData(std::move(v));
}

// Independent face oracle: rotate corner by corner around each newborn
// singularity.  A corner is (side incoming, side outgoing) within one cyclic
// boundary component; crossing the outgoing side's edge lands in the corner
// whose outgoing side follows the opposite side.  This walks faces in the
// reverse sense of the library's traversal, so faces match as sets of
// corner orders.
std::vector<std::vector<long long>> face_oracle(const Configuration& c) {
    int ns = c.graph.num_sides();
    std::vector<int> next(ns, -1);
    std::map<std::pair<int, int>, long long> corner_order;  // (in, out) -> k
    for (int v = 0; v < c.num_vertices(); ++v)
        for (size_t i = 0; i < c.local[v].comps.size(); ++i) {
            const auto& comp = c.local[v].comps[i];
            for (size_t l = 0; l < comp.size(); ++l) {
                int s = comp[l], t = comp[(l + 1) % comp.size()];
                next[s] = t;
                corner_order[{s, t}] = c.local[v].orders[i][l];
            }
        }
    std::map<std::pair<int, int>, bool> used;
    std::vector<std::vector<long long>> faces;
    for (const auto& [corner, k0] : corner_order) {
        if (used[corner]) continue;
        std::vector<long long> orders;
        std::pair<int, int> cur = corner;
        do {
            used[cur] = true;
            orders.push_back(corner_order.at(cur));
            int crossed = cur.second ^ 1;  // opposite side of the outgoing edge
            cur = {crossed, next[crossed]};
        } while (cur != corner);
        faces.push_back(std::move(orders));
    }
    return faces;
}

std::vector<long long> sorted_newborns(const std::vector<std::vector<long long>>& faces) {
    std::vector<long long> out;
    for (const auto& f : faces) out.push_back(newborn_order(f));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

}  // namespace

TEST_CASE("newborn order arithmetic") {
    CHECK(newborn_order({0, 1, 1, 1, 1, 0}) == 8);
    CHECK(newborn_order({2, 1, 1, 5, 0, 9, 0, 0, 1, 3}) == 30);
    CHECK(newborn_order({0}) == -1);
}

TEST_CASE("worked example: validation, faces, data, boundary") {
    Configuration c = load_fixture("example_configuration.json");
    CHECK(validate(c).empty());

    GlobalRibbonGraph g = global_ribbon_graph(c);
    REQUIRE(g.faces.size() == 2);
    std::vector<std::vector<long long>> orders;
    for (const auto& f : g.faces) {
        auto o = f.orders;
        std::sort(o.begin(), o.end());
        orders.push_back(o);
    }
    std::sort(orders.begin(), orders.end());
    CHECK(orders[0] == std::vector<long long>({0, 0, 0, 1, 1, 1, 2, 3, 5, 9}));
    CHECK(orders[1] == std::vector<long long>({0, 0, 1, 1, 1, 1}));
    CHECK(g.faces[0].newborn() + g.faces[1].newborn() == 38);

    CHECK(singularity_data(c) == q({2, 4, 4, 8, 30}));
    CHECK(genus_q(singularity_data(c)) == 13);

    std::vector<std::string> pb;
    for (const auto& b : principal_boundary(c)) pb.push_back(b.to_string());
    CHECK(pb == std::vector<std::string>({"H(0,0)", "H(1,1)", "H(6,2,2)", "H(0)", "H(0)"}));

    // independent corner-rotation oracle agrees
    CHECK(sorted_newborns(face_oracle(c)) == std::vector<long long>({30, 8}));
}

TEST_CASE("Example 1 configuration: three faces, data Q(2,-1,-1)") {
    Configuration c = load_fixture("example1_threesquare.json");
    CHECK(validate(c).empty());
    GlobalRibbonGraph g = global_ribbon_graph(c);
    CHECK(g.faces.size() == 3);
    CHECK(singularity_data(c) == q({2, -1, -1}));
    CHECK(principal_boundary(c).empty());  // cylinders only
    CHECK(sorted_newborns(face_oracle(c)) == std::vector<long long>({2, -1, -1}));
}

TEST_CASE("single-edge chain gives one face with two corners") {
    Configuration c;
    c.graph.kinds = {VertexKind::Minus, VertexKind::Minus};
    c.graph.edges = {{0, 1}};
    c.local.resize(2);
    c.local[0].comps = {{0}};
    c.local[0].orders = {{1}};
    c.local[1].comps = {{1}};
    c.local[1].orders = {{4}};
    c.interior = {{-1, -1, -1}, {2}};
    REQUIRE(validate(c).empty());
    GlobalRibbonGraph g = global_ribbon_graph(c);
    REQUIRE(g.faces.size() == 1);
    CHECK(g.faces[0].orders.size() == 2);
    CHECK(g.faces[0].newborn() == 5);
    CHECK(singularity_data(c) == q({5, 2, -1, -1, -1}));
}

TEST_CASE("validation failures carry their condition numbers") {
    Configuration c = load_fixture("example1_threesquare.json");
    // cylinder corner with nonzero order: condition 4
    c.local[1].orders[0][0] = 1;
    auto v = validate(c);
    REQUIRE(!v.empty());
    bool has4 = false;
    for (const auto& x : v) has4 |= x.condition == 4;
    CHECK(has4);

    // -1.1 vertex with empty interior and boundary {2}: condition 6
    Configuration m;
    m.graph.kinds = {VertexKind::Minus, VertexKind::Minus};
    m.graph.edges = {{0, 1}};
    m.local.resize(2);
    m.local[0] = {{{0}}, {{2}}};
    m.local[1] = {{{1}}, {{2}}};
    m.interior = {{}, {2}};
    auto v2 = validate(m);
    bool has6 = false;
    for (const auto& x : v2) has6 |= x.condition == 6;
    CHECK(has6);

    // interior order 0: condition 5
    Configuration z = load_fixture("example_configuration.json");
    z.interior[1] = {2, 0};
    auto v3 = validate(z);
    bool has5 = false;
    for (const auto& x : v3) has5 |= x.condition == 5;
    CHECK(has5);
}

TEST_CASE("condition-6 table is coherent with the empty-strata list") {
    // every table entry satisfies the biconditional
    std::vector<MinusVertexData> all;
    for (auto type : {BoundaryType::M11, BoundaryType::M21, BoundaryType::M22}) {
        // regenerate candidate data satisfying conditions 4+5 and check both
        // directions of the lemma on listed and unlisted entries alike
        int comps = type == BoundaryType::M22 ? 2 : 1;
        int corners = type == BoundaryType::M11 ? 1 : 2;
        (void)comps;
        std::vector<std::vector<long long>> interiors = {{}, {-1}, {1}, {2}, {3}, {4}, {-1, 1}, {1, 3}, {1, 1},
                                                         {2, 2}, {-1, -1}, {5}, {2, 1}, {-1, 2}};
        for (const auto& in : interiors)
            for (long long k1 = 0; k1 <= 8; ++k1)
                for (long long k2 = (corners == 2 ? 0 : -1); k2 <= (corners == 2 ? 8 : -1); ++k2) {
                    MinusVertexData d;
                    d.type = type;
                    d.interior = in;
                    d.boundary = corners == 1 ? std::vector<long long>{k1} : std::vector<long long>{k1, k2};
                    // condition 4 bounds
                    if (type == BoundaryType::M22 && (k1 < 1 || k2 < 1)) continue;
                    if (type != BoundaryType::M22) {
                        long long s = k1 + (corners == 2 ? k2 : 0);
                        if (s - 2 < -1) continue;
                    }
                    // condition 5 window
                    long long window = 0;
                    for (long long x : in) window += x;
                    if (type == BoundaryType::M22)
                        window += (k1 - 2) + (k2 - 2);
                    else
                        window += k1 + (corners == 2 ? k2 : 0) - 2;
                    if (window < -4 || ((window % 4) + 4) % 4 != 0) continue;
                    all.push_back(d);
                }
    }
    REQUIRE(all.size() > 100);
    std::set<std::string> listed;
    for (const auto& d : all) {
        if (!exceptional_equivalence(d)) continue;  // throws on any mismatch
        std::vector<long long> in = d.interior, bd = d.boundary;
        std::sort(in.begin(), in.end());
        std::sort(bd.begin(), bd.end());
        std::string key = boundary_type_name(d.type) + "|";
        for (long long x : in) key += std::to_string(x) + ",";
        key += "|";
        for (long long x : bd) key += std::to_string(x) + ",";
        listed.insert(key);
    }
    CHECK(listed.size() == 40);  // 9 + 20 + 11 table rows, each reached
}

TEST_CASE("exceptional equivalence spot checks") {
    CHECK(exceptional_equivalence({BoundaryType::M21, {}, {2, 0}}));
    CHECK(exceptional_equivalence({BoundaryType::M11, {-1, 1}, {2}}));
    CHECK_FALSE(exceptional_equivalence({BoundaryType::M11, {}, {4}}));  // alpha'' = {2}: nonempty
}

TEST_CASE("canonical form: relabelling-invariant, order-sensitive") {
    Configuration c = load_fixture("example_configuration.json");
    // relabel: swap the two H(0) vertices (3 <-> 4) and the cylinders (5 <-> 6)
    Configuration d = c;
    auto remap_vertex = [](int v) { return v == 3 ? 4 : v == 4 ? 3 : v == 5 ? 6 : v == 6 ? 5 : v; };
    for (auto& e : d.graph.edges)
        for (int& x : e) x = remap_vertex(x);
    std::swap(d.graph.kinds[3], d.graph.kinds[4]);
    std::swap(d.local[3], d.local[4]);
    std::swap(d.local[5], d.local[6]);
    std::swap(d.interior[3], d.interior[4]);
    CHECK(validate(d).empty());
    CHECK(canonical_form(c) == canonical_form(d));

    // rotating a cyclic component leaves the form unchanged
    Configuration r = c;
    std::rotate(r.local[0].comps[1].begin(), r.local[0].comps[1].begin() + 1, r.local[0].comps[1].end());
    std::rotate(r.local[0].orders[1].begin(), r.local[0].orders[1].begin() + 1, r.local[0].orders[1].end());
    CHECK(canonical_form(c) == canonical_form(r));

    // different corner orders give a different form
    Configuration x = load_fixture("example1_threesquare.json");
    Configuration y = x;
    y.interior[0] = {2};
    y.local[0].orders[0] = {0, 0};
    CHECK(canonical_form(x) != canonical_form(y));
}

TEST_CASE("+2.1 corner lists related by rotation are the same configuration") {
    auto build = [&](long long ka, long long kb) {
        Configuration c;
        c.graph.kinds = {VertexKind::Minus, VertexKind::Minus, VertexKind::Plus};
        c.graph.edges = {{0, 2}, {2, 1}};
        c.local.resize(3);
        c.local[0] = {{{0}}, {{2}}};
        c.local[2] = {{{1, 2}}, {{ka, kb}}};
        c.local[1] = {{{3}}, {{2}}};
        c.interior = {{2, -1, -1}, {2, -1, -1}, {2}};
        return c;
    };
    Configuration a = build(3, 1), b = build(1, 3), c = build(5, 3);
    CHECK(validate(a).empty());
    CHECK(canonical_form(a) == canonical_form(b));
    CHECK(canonical_form(a) != canonical_form(c));
}

TEST_CASE("JSON round trip") {
    for (const char* name : {"example_configuration.json", "example1_threesquare.json"}) {
        Configuration c = load_fixture(name);
        Configuration d = configuration_from_json(to_json(c));
        CHECK(canonical_form(c) == canonical_form(d));
        CHECK(singularity_data(c) == singularity_data(d));
    }
}

TEST_CASE("describe blocks re-parse as configuration files") {
    Configuration c = load_fixture("example_configuration.json");
    std::string block = describe(c);
    // '#' lines plus one JSON line: feed through the file loader logic
    std::string json_text;
    std::istringstream in(block);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') json_text += line;
    Configuration d = configuration_from_json(json_text);
    CHECK(canonical_form(c) == canonical_form(d));
}

TEST_CASE("conservation: corner mass equals data mass") {
    for (const char* name : {"example_configuration.json", "example1_threesquare.json"}) {
        Configuration c = load_fixture(name);
        GlobalRibbonGraph g = global_ribbon_graph(c);
        long long mass = 0;
        int corners = 0;
        for (int v = 0; v < c.num_vertices(); ++v)
            for (const auto& row : c.local[v].orders)
                for (long long k : row) {
                    mass += k + 1;
                    ++corners;
                }
        Integer interior_sum = 0;
        for (const auto& in : c.interior)
            for (long long d : in) interior_sum += d;
        CHECK(Integer(mass) - 2 * Integer(g.faces.size()) + interior_sum == singularity_data(c).sum());
        (void)corners;
    }
}
