#include "doctest.h"

#include "qdstrata/counter.hpp"
#include "qdstrata/enumerate.hpp"

#include <set>

using namespace qdstrata;

namespace {
FlatSurface fixture(const std::string& name) {
    return FlatSurface::load(std::string(QDSTRATA_FIXTURES) + "/" + name);
}
}  // namespace

TEST_CASE("complete list at L = 1 on the three-square torus") {
    FlatSurface t = fixture("threesquare.surf");
    auto scs = saddle_connections_up_to(t, 1, 1);
    // horizontal: gamma1, gamma2, gamma3; vertical: two pole-to-P0 segments
    // and the alpha loop
    CHECK(scs.size() == 6);
    for (const auto& sc : scs) CHECK(sc.len2 == 1);
    std::set<std::string> keys;
    for (const auto& sc : scs) keys.insert(sc.key);
    CHECK(keys.size() == 6);

    // monotone under L
    auto scs2 = saddle_connections_up_to(t, 2, 1);
    CHECK(scs2.size() >= scs.size());
    CHECK_THROWS_AS(saddle_connections_up_to(t, 0, 1), DomainError);
}

TEST_CASE("families group the direction classes") {
    FlatSurface t = fixture("threesquare.surf");
    auto fams = families_up_to(t, 1, 1);
    REQUIRE(fams.size() == 3);
    std::multiset<size_t> sizes;
    for (const auto& f : fams) sizes.insert(f.len2s.size());
    CHECK(sizes == std::multiset<size_t>({1, 2, 3}));
    for (const auto& f : fams) {
        REQUIRE(f.extracted);
        CHECK(validate(f.config).empty());
        CHECK(singularity_data(f.config) == parse_q("Q(2,-1,-1)"));
    }
    // the horizontal family of three is in general position
    for (const auto& f : fams)
        if (f.len2s.size() == 3) CHECK(f.general_position);
}

TEST_CASE("length dichotomy within families") {
    for (const char* name : {"threesquare.surf", "foursquare.surf", "pillow.surf"}) {
        FlatSurface s = fixture(name);
        for (const auto& f : families_up_to(s, 3, 0)) {
            std::set<Rational> distinct(f.len2s.begin(), f.len2s.end());
            REQUIRE(distinct.size() <= 2);
            if (distinct.size() == 2) {
                auto it = distinct.begin();
                Rational lo = *it++;
                CHECK(*it == lo * 4);  // squared lengths in ratio 4
            }
        }
    }
}

TEST_CASE("growth report: exactness, monotonicity, configuration soundness") {
    FlatSurface t = fixture("threesquare.surf");
    GrowthReport rep = growth_report(t, {Rational(2), Rational(4), Rational(8)}, 0);
    REQUIRE(rep.totals.size() == 3);
    CHECK(rep.totals[0] == 12);
    CHECK(rep.totals[1] == 48);
    CHECK(rep.totals[2] == 180);
    CHECK(rep.families_skipped == 0);

    // per-configuration counts never decrease with L
    for (const auto& [key, count] : rep.per_config[0]) {
        CHECK(rep.per_config[1].count(key));
        CHECK(rep.per_config[1].at(key) >= count);
    }
    for (const auto& [key, count] : rep.per_config[1]) CHECK(rep.per_config[2].at(key) >= count);

    // every configuration key is enumerated for the stratum
    std::set<std::string> admissible;
    for (const auto& c : enumerate_configurations(t.cone_data())) admissible.insert(canonical_form(c));
    for (const auto& [key, config] : rep.configs) {
        CHECK(validate(config).empty());
        CHECK(admissible.count(key));
    }
    // all three configurations of Q(2,-1,-1) appear already at L = 8
    CHECK(rep.per_config[2].size() == admissible.size());
}

TEST_CASE("csv output shape") {
    FlatSurface t = fixture("threesquare.surf");
    GrowthReport rep = growth_report(t, {Rational(1)}, 0);
    std::string csv = growth_report_csv(rep);
    CHECK(csv.rfind("L,total,per_config_json\n1,6,", 0) == 0);
}

TEST_CASE("trivial holonomy surfaces are rejected") {
    FlatSurface sq = fixture("square.surf");
    CHECK_THROWS_AS(families_up_to(sq, 1, 0), DomainError);
    CHECK_THROWS_AS(growth_report(sq, {Rational(1)}, 0), DomainError);
}
