#include "doctest.h"

#include "qdstrata/enumerate.hpp"

#include <fstream>
#include <set>

using namespace qdstrata;

namespace {

std::vector<std::string> canonical_set(const std::vector<Configuration>& cs) {
    std::vector<std::string> out;
    for (const auto& c : cs) out.push_back(canonical_form(c));
    return out;
}

std::vector<std::string> golden_lines(const std::string& name) {
    std::ifstream in(std::string(QDSTRATA_FIXTURES) + "/golden/" + name);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("soundness: every output validates and maps back to alpha") {
    for (const char* name : {"Q(2,2)", "Q(2,1,1)", "Q(1,1,1,1)", "Q(2,-1,-1)", "Q(6,-1,-1)"}) {
        QSingularityData alpha = parse_q(name);
        for (const auto& c : enumerate_configurations(alpha)) {
            CHECK(validate(c).empty());
            CHECK(singularity_data(c) == alpha);
        }
    }
}

TEST_CASE("genus-2 golden sets") {
    CHECK(canonical_set(enumerate_configurations(parse_q("Q(2,2)"))) == golden_lines("genus2_Q_2_2.txt"));
    CHECK(canonical_set(enumerate_configurations(parse_q("Q(2,1,1)"))) == golden_lines("genus2_Q_2_1_1.txt"));
    CHECK(canonical_set(enumerate_configurations(parse_q("Q(1,1,1,1)"))) == golden_lines("genus2_Q_1_1_1_1.txt"));
}

TEST_CASE("doubled-bounds oracle finds nothing new") {
    for (const char* name : {"Q(2,2)", "Q(2,1,1)", "Q(1,1,1,1)", "Q(2,-1,-1)"}) {
        QSingularityData alpha = parse_q(name);
        auto base = canonical_set(enumerate_configurations(alpha));
        auto wide = canonical_set(enumerate_configurations(alpha, {2}));
        CHECK(base == wide);
    }
}

TEST_CASE("empty and invalid strata are rejected") {
    CHECK_THROWS_AS(enumerate_configurations(parse_q("Q(4)")), DomainError);
    CHECK_THROWS_AS(enumerate_configurations(parse_q("Q(1,-1)")), DomainError);
    CHECK_THROWS_AS(enumerate_configurations(parse_q("Q(1,1)")), DomainError);  // bad sum
}

TEST_CASE("the Example-1 configuration is enumerated for Q(2,-1,-1)") {
    Configuration ex = load_configuration_file(std::string(QDSTRATA_FIXTURES) + "/example1_threesquare.json");
    std::string key = canonical_form(ex);
    auto found = canonical_set(enumerate_configurations(parse_q("Q(2,-1,-1)")));
    CHECK(std::count(found.begin(), found.end(), key) == 1);
}

TEST_CASE("determinism: repeated runs are identical") {
    auto a = canonical_set(enumerate_configurations(parse_q("Q(2,1,1)")));
    auto b = canonical_set(enumerate_configurations(parse_q("Q(2,1,1)")));
    CHECK(a == b);
    CHECK(std::is_sorted(a.begin(), a.end()));
    std::set<std::string> dedup(a.begin(), a.end());
    CHECK(dedup.size() == a.size());
}

TEST_CASE("genus and pole windows") {
    for (const char* name : {"Q(2,2)", "Q(2,1,1)", "Q(1,1,1,1)", "Q(2,-1,-1)", "Q(-1,-1,-1,-1)"}) {
        QSingularityData alpha = parse_q(name);
        Integer g = genus_q(alpha);
        for (const auto& c : enumerate_configurations(alpha)) {
            Integer boundary_genus = 0;
            for (const auto& bc : principal_boundary(c)) {
                if (bc.abelian)
                    boundary_genus += genus_h(HSingularityData(bc.entries));
                else
                    boundary_genus += genus_q(QSingularityData(bc.entries));
            }
            CHECK(boundary_genus <= g);
            CHECK(g <= boundary_genus + 2);
            // pole window: interior poles N' <= N <= N' + 4
            long long interior_poles = 0;
            for (const auto& in : c.interior)
                for (long long d : in) interior_poles += d == -1;
            long long total_poles = 0;
            for (const auto& d : alpha.orders()) total_poles += d == -1;
            CHECK(interior_poles <= total_poles);
            CHECK(total_poles <= interior_poles + 4);
        }
    }
}

TEST_CASE("per-vertex arithmetic over generated plus vertices") {
    auto samples = generate_plus_vertices(1000);
    REQUIRE(samples.size() == 1000);
    for (const auto& s : samples) {
        long long k_total = 0;
        for (int i = 0; i < s.ribbon.num_comps(); ++i) {
            long long comp_sum = s.ribbon.comp_order_sum(i);
            CHECK(comp_sum % 2 == 0);  // even along every boundary component
            k_total += comp_sum;
        }
        long long d_total = 0;
        for (long long d : s.interior) d_total += d;
        long long r = s.ribbon.num_comps();
        CHECK(2 * r - 4 <= d_total + k_total);
        CHECK(((d_total + k_total - 2 * r) % 4 + 4) % 4 == 0);
        CHECK(check_orders(s.graph, s.vertex, s.ribbon));
    }
}

TEST_CASE("genus-2 table report") {
    std::string table = genus2_table();
    CHECK(table.find("Q(2,2): 3 configurations") != std::string::npos);
    CHECK(table.find("Q(2,1,1): 5 configurations") != std::string::npos);
    CHECK(table.find("Q(1,1,1,1): 4 configurations") != std::string::npos);
}
