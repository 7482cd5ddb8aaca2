// qdstrata: configurations of ĥomologous saddle connections on half-translation
// surfaces, their principal boundary strata, and counting on explicit surfaces.

#include "qdstrata/configuration.hpp"
#include "qdstrata/counter.hpp"
#include "qdstrata/enumerate.hpp"
#include "qdstrata/flatsurface.hpp"
#include "qdstrata/strata.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <iostream>

using namespace qdstrata;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitDomain = 2;

int effective_jobs(int jobs_flag) {
    if (jobs_flag > 0) return jobs_flag;
    if (const char* env = std::getenv("QDSTRATA_JOBS")) {
        int j = std::atoi(env);
        if (j > 0) return j;
    }
    return 0;  // library default: hardware concurrency
}

json config_json(const Configuration& c) { return json::parse(to_json(c)); }

json boundary_json(const Configuration& c) {
    json out = json::array();
    for (const auto& bc : principal_boundary(c)) {
        json b;
        b["vertex"] = bc.vertex;
        b["stratum"] = bc.to_string();
        out.push_back(b);
    }
    return out;
}

void print_boundary_line(std::ostream& os, const Configuration& c) {
    auto pb = principal_boundary(c);
    if (pb.empty()) {
        os << "(empty boundary: all components are cylinders and shrink away)\n";
        return;
    }
    for (size_t i = 0; i < pb.size(); ++i) os << (i ? " | " : "") << pb[i].to_string();
    os << "\n";
}

int cmd_enumerate(const std::string& stratum, bool count_only, bool as_json, int factor) {
    QSingularityData alpha = parse_q(stratum);
    std::vector<Configuration> configs;
    try {
        configs = enumerate_configurations(alpha, {factor});
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    if (count_only) {
        std::cout << configs.size() << "\n";
        return kExitOk;
    }
    if (as_json) {
        json out;
        out["stratum"] = alpha.to_string();
        out["count"] = configs.size();
        out["configurations"] = json::array();
        for (const auto& c : configs) {
            json jc;
            jc["configuration"] = config_json(c);
            jc["canonical"] = canonical_form(c);
            jc["data"] = singularity_data(c).to_string();
            jc["boundary"] = boundary_json(c);
            out["configurations"].push_back(jc);
        }
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "# stratum " << alpha.to_string() << ": " << configs.size() << " configurations\n";
    for (size_t i = 0; i < configs.size(); ++i) {
        std::cout << "\n# configuration " << (i + 1) << " of " << configs.size() << "\n";
        std::cout << describe(configs[i]);
    }
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    Configuration c = load_configuration_file(path);
    auto violations = validate(c);
    if (violations.empty()) {
        std::cout << "ok\n";
        return kExitOk;
    }
    for (const auto& v : violations) std::cout << "condition " << v.condition << ": " << v.message << "\n";
    return kExitInput;
}

int cmd_boundary(const std::string& path, bool as_json) {
    Configuration c = load_configuration_file(path);
    auto violations = validate(c);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "condition " << v.condition << ": " << v.message << "\n";
        return kExitInput;
    }
    if (as_json) {
        json out;
        out["data"] = singularity_data(c).to_string();
        out["boundary"] = boundary_json(c);
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& bc : principal_boundary(c))
        std::cout << "vertex " << bc.vertex << ": " << bc.to_string() << "\n";
    print_boundary_line(std::cout, c);
    return kExitOk;
}

Rational parse_length(const std::string& text) {
    size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        return Rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("bad length '" + text + "'");
    }
}

int cmd_surface_info(const FlatSurface& s, bool as_json) {
    QSingularityData data = s.cone_data();
    if (as_json) {
        json out;
        out["cone_angles_pi"] = s.cone_angles_pi();
        out["orders"] = data.to_string();
        out["genus"] = genus_q(data).convert_to<long long>();
        out["area"] = rational_to_string(s.area());
        out["holonomy"] = "nontrivial";
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "cone angles (multiples of pi):";
    for (long long a : s.cone_angles_pi()) std::cout << " " << a;
    std::cout << "\norders: " << data.to_string() << "\n";
    std::cout << "genus: " << genus_q(data) << "\n";
    std::cout << "area: " << rational_to_string(s.area()) << "\n";
    std::cout << "linear holonomy: nontrivial\n";
    return kExitOk;
}

int cmd_surface_families(const FlatSurface& s, const Rational& L, bool as_json, int jobs) {
    auto families = families_up_to(s, L, jobs);
    if (as_json) {
        json out = json::array();
        for (const auto& f : families) {
            json jf;
            jf["direction"] = vec2_to_string(f.direction);
            jf["size"] = f.len2s.size();
            json lens = json::array();
            for (const auto& l2 : f.len2s) lens.push_back(rational_to_string(l2));
            jf["len2"] = lens;
            jf["general_position"] = f.general_position;
            if (f.extracted) {
                jf["configuration"] = config_json(f.config);
                jf["canonical"] = f.config_key;
            } else {
                jf["error"] = f.extraction_error;
            }
            out.push_back(jf);
        }
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "# " << families.size() << " ĥomologous families up to length " << rational_to_string(L) << "\n";
    for (size_t i = 0; i < families.size(); ++i) {
        const auto& f = families[i];
        std::cout << "\n# family " << (i + 1) << ": direction " << vec2_to_string(f.direction) << ", "
                  << f.len2s.size() << " connections, squared lengths";
        for (const auto& l2 : f.len2s) std::cout << " " << rational_to_string(l2);
        std::cout << (f.general_position ? "" : "  [not in general position]") << "\n";
        if (f.extracted)
            std::cout << describe(f.config);
        else
            std::cout << "# extraction failed: " << f.extraction_error << "\n";
    }
    return kExitOk;
}

int cmd_surface_count(const FlatSurface& s, const Rational& L, int steps, bool as_json, int jobs) {
    std::vector<Rational> lengths;
    Rational cur = L;
    for (int i = 0; i < steps; ++i) {
        lengths.push_back(cur);
        cur = cur / 2;
    }
    std::sort(lengths.begin(), lengths.end());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
    GrowthReport rep = growth_report(s, lengths, jobs);
    if (as_json) {
        json out;
        out["rows"] = json::array();
        for (size_t k = 0; k < rep.lengths.size(); ++k) {
            json row;
            row["L"] = rational_to_string(rep.lengths[k]);
            row["total"] = rep.totals[k];
            double l = static_cast<double>(rep.lengths[k].convert_to<double>());
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6f", rep.totals[k] / (l * l));
            row["ratio"] = buf;
            json pc;
            for (const auto& [key, count] : rep.per_config[k]) pc[key] = count;
            row["per_config"] = pc;
            out["rows"].push_back(row);
        }
        out["families_skipped"] = rep.families_skipped;
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << growth_report_csv(rep);
    if (rep.families_skipped)
        std::cout << "# " << rep.families_skipped << " families skipped (extraction failed)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact configurations of ĥomologous saddle connections and principal boundary strata"};
    app.require_subcommand(1);
    int jobs = 0;
    app.add_option("--jobs", jobs, "worker threads (also: QDSTRATA_JOBS)");

    std::string stratum, path;
    bool count_only = false, as_json = false;
    int factor = 1;

    auto* enumerate = app.add_subcommand("enumerate", "list all configurations for a stratum Q(...)");
    enumerate->add_option("stratum", stratum, "e.g. Q(2,-1,-1) or 2,-1,-1")->required();
    enumerate->add_flag("--count-only", count_only, "print only the number of configurations");
    enumerate->add_flag("--json", as_json, "structured output");
    enumerate->add_option("--bounds-factor", factor, "search bound multiplier (cross-check)");

    auto* validate_cmd = app.add_subcommand("validate", "check a configuration file");
    validate_cmd->add_option("file", path, "configuration JSON ('#' comments allowed)")->required();

    auto* boundary = app.add_subcommand("boundary", "principal boundary stratum of a configuration");
    boundary->add_option("file", path, "configuration JSON")->required();
    boundary->add_flag("--json", as_json, "structured output");

    auto* table = app.add_subcommand("genus2-table", "configurations for Q(2,2), Q(2,1,1), Q(1,1,1,1)");

    auto* surface = app.add_subcommand("surface", "analyze an explicit flat surface");
    surface->require_subcommand(1);
    std::string surf_path, length_text = "1";
    int steps = 1;
    auto* info = surface->add_subcommand("info", "cone angles, orders, genus, holonomy");
    info->add_option("file", surf_path, "surface file")->required();
    info->add_flag("--json", as_json);
    auto* families = surface->add_subcommand("families", "ĥomologous families up to length L");
    families->add_option("file", surf_path, "surface file")->required();
    families->add_option("--L", length_text, "length bound (rational)")->required();
    families->add_flag("--json", as_json);
    auto* count = surface->add_subcommand("count", "growth table of counts up to length L");
    count->add_option("file", surf_path, "surface file")->required();
    count->add_option("--L", length_text, "largest length (rational)")->required();
    count->add_option("--steps", steps, "number of halving steps");
    count->add_flag("--json", as_json);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enumerate) return cmd_enumerate(stratum, count_only, as_json, factor);
        if (*validate_cmd) return cmd_validate(path);
        if (*boundary) return cmd_boundary(path, as_json);
        if (*table) {
            std::cout << genus2_table();
            return kExitOk;
        }
        if (*surface) {
            FlatSurface s = FlatSurface::load(surf_path);
            if (s.holonomy_trivial()) {
                std::cerr << "error: trivial holonomy unsupported (the surface is a translation surface)\n";
                return kExitInput;
            }
            if (*info) return cmd_surface_info(s, as_json);
            Rational L = parse_length(length_text);
            if (L <= 0) throw DomainError("length bound must be positive");
            if (*families) return cmd_surface_families(s, L, as_json, effective_jobs(jobs));
            if (*count) return cmd_surface_count(s, L, steps, as_json, effective_jobs(jobs));
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitInput;
}
