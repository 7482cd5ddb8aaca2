#include "qdstrata/counter.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace qdstrata {

namespace {

std::vector<Vec2> primitive_directions(const FlatSurface& s, const Rational& L) {
    // |holonomy| >= |direction| / D, so directions beyond D*L carry nothing.
    Integer D = s.coordinate_denominator();
    Rational r2 = L * L * Rational(D * D);
    long long cap = 1;
    while (Rational(Integer(cap) * Integer(cap)) < r2) ++cap;
    std::vector<Vec2> dirs;
    for (long long p = 0; p <= cap; ++p)
        for (long long q = -cap; q <= cap; ++q) {
            if (p == 0 && q <= 0) continue;  // canonical sign: x > 0, or x == 0 and y > 0
            if (std::gcd(std::abs(p), std::abs(q)) != 1) continue;
            if (Rational(Integer(p) * Integer(p) + Integer(q) * Integer(q)) > r2) continue;
            dirs.push_back({Rational(p), Rational(q)});
        }
    std::sort(dirs.begin(), dirs.end(), [](const Vec2& a, const Vec2& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return dirs;
}

// All saddle connections parallel to +-dir with length <= cap, each once.
std::vector<SaddleConnection> trace_direction(const FlatSurface& s, const Vec2& dir, const Rational& cap) {
    std::vector<SaddleConnection> found;
    std::map<std::string, int> seen;
    for (const Vec2& d : {dir, -dir}) {
        for (size_t cls = 0; cls < s.vertex_classes().size(); ++cls) {
            if (!s.vertex_classes()[cls].is_cone()) continue;
            int rays = num_rays(s, static_cast<int>(cls), d);
            for (int rix = 0; rix < rays; ++rix) {
                auto sc = trace_separatrix(s, static_cast<int>(cls), rix, d, cap);
                if (!sc) continue;
                auto [it, fresh] = seen.try_emplace(sc->key, 0);
                if (fresh) found.push_back(std::move(*sc));
                ++it->second;
            }
        }
    }
    for (const auto& [key, count] : seen)
        if (count != 2) throw DomainError("internal: saddle connection not discovered from both ends");
    return found;
}

void parallel_over(int n, int jobs, const std::function<void(int)>& work) {
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min(jobs, n == 0 ? 1 : n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    work(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

struct DirectionFamilies {
    std::vector<Family> families;
    std::vector<Rational> all_len2;  // every saddle connection found (<= search cap)
};

// Families of one direction: search to 2L so every family with a member of
// length <= L is complete, partition by the pairwise test on one shared
// refinement, extract configurations for complete families.
DirectionFamilies direction_families(const FlatSurface& s, const Vec2& dir, const Rational& L) {
    DirectionFamilies out;
    std::vector<SaddleConnection> scs = trace_direction(s, dir, L * 2);
    if (scs.empty()) return out;
    for (const auto& sc : scs) out.all_len2.push_back(sc.len2);
    // families matter only when some member fits the bound
    bool any_short = false;
    for (const auto& sc : scs) any_short |= sc.len2 <= L * L;
    if (!any_short) return out;
    std::sort(scs.begin(), scs.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    const int n = static_cast<int>(scs.size());
    RefinedSurface refined = refine_along(s, scs);
    std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) {
        rel[i][i] = 1;
        for (int j = i + 1; j < n; ++j) {
            if (interior_intersect(s, scs[i], scs[j]))
                throw DomainError("internal: parallel saddle connections intersect");
            rel[i][j] = rel[j][i] = homologous_on_refined(refined, scs, i, j) ? 1 : 0;
        }
    }
    // equivalence check (ĥomology is transitive within one direction)
    std::vector<int> cls(n, -1);
    int nclasses = 0;
    for (int i = 0; i < n; ++i) {
        if (cls[i] != -1) continue;
        cls[i] = nclasses++;
        for (int j = i + 1; j < n; ++j)
            if (rel[i][j]) cls[j] = cls[i];
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((cls[i] == cls[j]) != (rel[i][j] == 1))
                throw DomainError("internal: ĥomology is not an equivalence on this direction");

    for (int c = 0; c < nclasses; ++c) {
        Family f;
        f.direction = canonical_sign(dir);
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (cls[i] == c) {
                members.push_back(i);
                f.len2s.push_back(scs[i].len2);
            }
        std::sort(f.len2s.begin(), f.len2s.end());
        f.max_len2 = f.len2s.back();
        f.general_position = nclasses == 1;
        if (f.max_len2 <= L * L) {
            try {
                f.config = extract_on_refined(s, refined, scs, members);
                f.config_key = canonical_form(f.config);
                f.extracted = true;
            } catch (const DomainError& e) {
                f.extraction_error = e.what();
            }
        }
        out.families.push_back(std::move(f));
    }
    return out;
}

}  // namespace

std::vector<SaddleConnection> saddle_connections_up_to(const FlatSurface& s, const Rational& L, int jobs) {
    if (L <= 0) throw DomainError("saddle_connections_up_to: L must be positive");
    std::vector<Vec2> dirs = primitive_directions(s, L);
    std::vector<std::vector<SaddleConnection>> per_dir(dirs.size());
    parallel_over(static_cast<int>(dirs.size()), jobs, [&](int i) {
        for (auto& sc : trace_direction(s, dirs[i], L)) per_dir[i].push_back(std::move(sc));
    });
    std::vector<SaddleConnection> out;
    for (auto& v : per_dir)
        for (auto& sc : v) out.push_back(std::move(sc));
    return out;
}

std::vector<Family> families_up_to(const FlatSurface& s, const Rational& L, int jobs) {
    if (L <= 0) throw DomainError("families_up_to: L must be positive");
    if (s.holonomy_trivial()) throw DomainError("trivial holonomy surfaces are out of scope");
    std::vector<Vec2> dirs = primitive_directions(s, L);
    std::vector<DirectionFamilies> per_dir(dirs.size());
    parallel_over(static_cast<int>(dirs.size()), jobs, [&](int i) {
        per_dir[i] = direction_families(s, dirs[i], L);
    });
    std::vector<Family> out;
    for (auto& df : per_dir)
        for (auto& f : df.families)
            if (f.max_len2 <= L * L) out.push_back(std::move(f));
    return out;
}

std::map<std::string, long long> group_by_configuration(const std::vector<Family>& families, const Rational& L) {
    std::map<std::string, long long> out;
    for (const auto& f : families)
        if (f.extracted && f.max_len2 <= L * L) ++out[f.config_key];
    return out;
}

GrowthReport growth_report(const FlatSurface& s, const std::vector<Rational>& lengths, int jobs) {
    if (lengths.empty()) throw DomainError("growth_report: no lengths");
    for (size_t i = 0; i + 1 < lengths.size(); ++i)
        if (!(lengths[i] < lengths[i + 1])) throw DomainError("growth_report: lengths must increase");
    if (s.holonomy_trivial()) throw DomainError("trivial holonomy surfaces are out of scope");
    const Rational L = lengths.back();

    std::vector<Vec2> dirs = primitive_directions(s, L);
    std::vector<DirectionFamilies> per_dir(dirs.size());
    parallel_over(static_cast<int>(dirs.size()), jobs, [&](int i) {
        per_dir[i] = direction_families(s, dirs[i], L);
    });

    GrowthReport rep;
    rep.lengths = lengths;
    rep.totals.assign(lengths.size(), 0);
    rep.per_config.assign(lengths.size(), {});
    for (const auto& df : per_dir) {
        for (const auto& l2 : df.all_len2)
            for (size_t k = 0; k < lengths.size(); ++k)
                if (l2 <= lengths[k] * lengths[k]) ++rep.totals[k];
        for (const auto& f : df.families) {
            if (f.max_len2 > L * L) continue;
            if (!f.extracted) {
                ++rep.families_skipped;
                continue;
            }
            if (!rep.configs.count(f.config_key)) rep.configs.emplace(f.config_key, f.config);
            for (size_t k = 0; k < lengths.size(); ++k)
                if (f.max_len2 <= lengths[k] * lengths[k]) ++rep.per_config[k][f.config_key];
        }
    }
    return rep;
}

std::string growth_report_csv(const GrowthReport& r) {
    std::ostringstream os;
    os << "L,total,per_config_json\n";
    for (size_t k = 0; k < r.lengths.size(); ++k) {
        std::string json = "{";
        bool first = true;
        for (const auto& [key, count] : r.per_config[k]) {
            if (!first) json += ",";
            first = false;
            json += "\"" + key + "\":" + std::to_string(count);
        }
        json += "}";
        std::string quoted = "\"";
        for (char c : json) {
            if (c == '"') quoted += "\"\"";
            else quoted += c;
        }
        quoted += "\"";
        os << rational_to_string(r.lengths[k]) << "," << r.totals[k] << "," << quoted << "\n";
    }
    return os.str();
}

}  // namespace qdstrata
