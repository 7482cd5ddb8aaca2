#include "doctest.h"

#include "qdstrata/confgraph.hpp"
#include "qdstrata/numeric.hpp"

#include <algorithm>

using namespace qdstrata;

namespace {
const auto P = VertexKind::Plus;
const auto M = VertexKind::Minus;
const auto C = VertexKind::Cyl;

ConfGraph graph(std::vector<VertexKind> kinds, std::vector<std::array<int, 2>> edges) {
    ConfGraph g;
    g.kinds = std::move(kinds);
    g.edges = std::move(edges);
    return g;
}
}  // namespace

TEST_CASE("base type classification") {
    // chain -(+)- : two '-' ends of valence one, one '+' in the middle
    CHECK(classify_base_type(graph({M, M, P}, {{0, 2}, {2, 1}})) == BaseType::A);
    // bare chain - -
    CHECK(classify_base_type(graph({M, M}, {{0, 1}})) == BaseType::A);
    // single '-' with a loop
    CHECK(classify_base_type(graph({M}, {{0, 0}})) == BaseType::B);
    // cycle through '-' and '+'
    CHECK(classify_base_type(graph({M, P}, {{0, 1}, {1, 0}})) == BaseType::B);
    // loop plus chain at a '+' junction, '-' at the chain end
    CHECK(classify_base_type(graph({P, M}, {{0, 0}, {0, 1}})) == BaseType::C);
    // same with a cylinder junction
    CHECK(classify_base_type(graph({C, M}, {{0, 0}, {0, 1}})) == BaseType::C);
    // dumbbell: loops at both junctions joined by an edge
    CHECK(classify_base_type(graph({P, P}, {{0, 0}, {1, 1}, {0, 1}})) == BaseType::D);
    // figure-eight: single plus vertex with two loops
    CHECK(classify_base_type(graph({P}, {{0, 0}, {0, 0}})) == BaseType::E);
    // Example 1: cylinder figure-eight with a valence-2 cylinder on one loop
    CHECK(classify_base_type(graph({C, C}, {{0, 0}, {0, 1}, {1, 0}})) == BaseType::E);
}

TEST_CASE("banned and malformed graphs") {
    // theta graph: two vertices joined by three parallel edges is never
    // realizable, for any labelling
    CHECK(classify_base_type(graph({C, C}, {{0, 1}, {0, 1}, {0, 1}})) == BaseType::Invalid);
    CHECK(classify_base_type(graph({P, P}, {{0, 1}, {0, 1}, {0, 1}})) == BaseType::Invalid);
    CHECK(classify_base_type(graph({P, C}, {{0, 1}, {0, 1}, {0, 1}})) == BaseType::Invalid);
    // cycle of only '+'-vertices (no '-' anywhere)
    CHECK(classify_base_type(graph({P}, {{0, 0}})) == BaseType::Invalid);
    CHECK(classify_base_type(graph({P, P}, {{0, 1}, {1, 0}})) == BaseType::Invalid);
    // two '-' on a cycle
    CHECK(classify_base_type(graph({M, M}, {{0, 1}, {1, 0}})) == BaseType::Invalid);
    // '-' of valence three
    CHECK(classify_base_type(graph({M, M}, {{0, 0}, {0, 1}})) == BaseType::Invalid);
    // valence-1 cylinder or plus
    CHECK(classify_base_type(graph({C, M}, {{0, 1}})) == BaseType::Invalid);
    CHECK(classify_base_type(graph({P, M}, {{0, 1}})) == BaseType::Invalid);
    // Betti number 3
    CHECK(classify_base_type(graph({P}, {{0, 0}, {0, 0}, {0, 0}})) == BaseType::Invalid);
    // disconnected input is an error, not merely invalid
    CHECK_THROWS_AS(classify_base_type(graph({M, M}, {{0, 0}, {1, 1}})), DomainError);
}

TEST_CASE("cylinder placement rules") {
    // two valence-2 cylinders sharing an edge
    CHECK(classify_base_type(graph({M, C, C, M}, {{0, 1}, {1, 2}, {2, 3}})) == BaseType::Invalid);
    // valence-2 cylinder on the separating edge at a valence-3 cylinder
    CHECK(classify_base_type(graph({C, C, M}, {{0, 0}, {0, 1}, {1, 2}})) == BaseType::Invalid);
    // ...but allowed further down the chain
    CHECK(classify_base_type(graph({C, P, C, M}, {{0, 0}, {0, 1}, {1, 2}, {2, 3}})) == BaseType::C);
    // ...and allowed on the cycle next to the same junction
    CHECK(classify_base_type(graph({C, C, M}, {{0, 1}, {1, 0}, {0, 2}})) == BaseType::C);
    // two valence-3 cylinders joined by an empty chain
    CHECK(classify_base_type(graph({C, C}, {{0, 0}, {1, 1}, {0, 1}})) == BaseType::Invalid);
    // one '+' between them makes it admissible
    CHECK(classify_base_type(graph({C, C, P}, {{0, 0}, {1, 1}, {0, 2}, {2, 1}})) == BaseType::D);
}

TEST_CASE("weights") {
    // types a, b, e: all weights 1
    CHECK(assign_weights(graph({M, M, P}, {{0, 2}, {2, 1}})) == std::vector<int>({1, 1}));
    CHECK(assign_weights(graph({M}, {{0, 0}})) == std::vector<int>({1}));
    CHECK(assign_weights(graph({P}, {{0, 0}, {0, 0}})) == std::vector<int>({1, 1}));
    // type c: cycle edges 1, chain edge 2
    ConfGraph c = graph({P, P, M}, {{0, 1}, {1, 0}, {0, 2}});
    CHECK(assign_weights(c) == std::vector<int>({1, 1, 2}));
    // type d: both cycles 1, chain 2
    ConfGraph d = graph({P, P}, {{0, 0}, {1, 1}, {0, 1}});
    CHECK(assign_weights(d) == std::vector<int>({1, 1, 2}));
}

TEST_CASE("weights are stable under valence-2 insertions") {
    // type c with an extra '+' on the chain: both chain halves inherit 2
    ConfGraph c = graph({P, M, P}, {{0, 0}, {0, 2}, {2, 1}});
    REQUIRE(classify_base_type(c) == BaseType::C);
    CHECK(assign_weights(c) == std::vector<int>({1, 2, 2}));
}

TEST_CASE("signed weights") {
    // valence 2: +1, -1
    ConfGraph a = graph({M, M, P}, {{0, 2}, {2, 1}});
    CHECK(signed_weights_at(a, 2) == std::vector<int>({1, -1}));
    CHECK_THROWS_AS(signed_weights_at(a, 0), DomainError);  // '-'-vertex

    // valence 3 in type c: cycle sides +1 +1, chain side -2 (up to global sign)
    ConfGraph c = graph({P, M}, {{0, 0}, {0, 1}});
    auto w3 = signed_weights_at(c, 0);
    REQUIRE(w3.size() == 3);
    long long sum = 0;
    for (int x : w3) sum += x;
    CHECK(sum == 0);
    std::vector<int> sorted = w3;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>({-2, 1, 1}));

    // valence 4 at a figure-eight: sides of one loop share the sign
    ConfGraph e = graph({P}, {{0, 0}, {0, 0}});
    auto w4 = signed_weights_at(e, 0);
    REQUIRE(w4.size() == 4);
    // sides come in order e0+, e0-, e1+, e1-
    CHECK(w4[0] == w4[1]);
    CHECK(w4[2] == w4[3]);
    CHECK(w4[0] == -w4[2]);
    CHECK(w4[0] == 1);  // smallest side positive
}

TEST_CASE("cycle membership via vertex deletion") {
    // Example-1 graph: loop e0 at vertex 0, double edge e1,e2 to vertex 1
    ConfGraph g = graph({C, C}, {{0, 0}, {0, 1}, {1, 0}});
    CHECK(g.same_cycle(0, 0, 1));        // both sides of the loop
    CHECK(g.same_cycle(0, 2, 5));        // e1+ and e2- joined through vertex 1
    CHECK_FALSE(g.same_cycle(0, 0, 2));  // loop side vs double-edge side
    // dumbbell: chain side is on no cycle with the loop sides
    ConfGraph d = graph({P, P}, {{0, 0}, {1, 1}, {0, 1}});
    CHECK(d.same_cycle(0, 0, 1));
    CHECK_FALSE(d.same_cycle(0, 0, 4));
    CHECK(d.is_bridge(2));
    CHECK_FALSE(d.is_bridge(0));
}
