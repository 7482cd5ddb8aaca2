#pragma once

#include "qdstrata/flatsurface.hpp"

#include <map>
#include <string>
#include <vector>

namespace qdstrata {

// A maximal collection of pairwise ĥomologous saddle connections in one
// direction (a full ĥomology class; lengths take at most two values).
struct Family {
    Vec2 direction;               // canonical primitive direction
    std::vector<Rational> len2s;  // member squared lengths, sorted
    Rational max_len2;
    bool general_position = false;  // its direction carries no other parallel connections
    bool extracted = false;
    std::string extraction_error;
    std::string config_key;  // canonical_form when extracted
    Configuration config;
};

// Complete list of saddle connections with |holonomy| <= L, each once.
// Directions on a rational-coordinate surface lie in (1/D)Z^2, so primitive
// integer directions up to norm D*L are exhaustive.
std::vector<SaddleConnection> saddle_connections_up_to(const FlatSurface& s, const Rational& L, int jobs = 0);

// Families whose members all have length <= L (each direction is searched to
// 2L, since lengths within a family differ at most by the factor two).
std::vector<Family> families_up_to(const FlatSurface& s, const Rational& L, int jobs = 0);

// Collections per configuration among the given families.
std::map<std::string, long long> group_by_configuration(const std::vector<Family>& families, const Rational& L);

struct GrowthReport {
    std::vector<Rational> lengths;
    std::vector<long long> totals;  // N(S, L): saddle connections up to L
    std::vector<std::map<std::string, long long>> per_config;
    std::map<std::string, Configuration> configs;  // canonical key -> representative
    long long families_skipped = 0;                // extraction failures (reported, not fatal)
};

GrowthReport growth_report(const FlatSurface& s, const std::vector<Rational>& lengths, int jobs = 0);

// CSV lines `L,total,per_config_json` with canonical_form strings as keys.
std::string growth_report_csv(const GrowthReport& r);

}  // namespace qdstrata
