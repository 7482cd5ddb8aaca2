#include "qdstrata/flatsurface.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace qdstrata {

namespace {

Rational parse_rational(const std::string& tok) {
    size_t slash = tok.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(tok));
        return Rational(Integer(tok.substr(0, slash)), Integer(tok.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("bad rational '" + tok + "'");
    }
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

FlatSurface FlatSurface::parse(std::istream& in) {
    FlatSurface s;
    std::map<std::string, int> by_name;
    std::vector<std::tuple<std::string, int, std::string, int, bool>> glue_lines;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "polygon") {
            Polygon poly;
            if (!(ls >> poly.name)) throw ParseError("line " + std::to_string(lineno) + ": polygon needs a name");
            std::string rest, tok;
            std::getline(ls, rest);
            for (char c : rest) {
                if (c == '(' || std::isspace(static_cast<unsigned char>(c))) continue;
                if (c == ')') {
                    size_t comma = tok.find(',');
                    if (comma == std::string::npos)
                        throw ParseError("line " + std::to_string(lineno) + ": bad vertex '" + tok + "'");
                    poly.v.emplace_back(parse_rational(tok.substr(0, comma)), parse_rational(tok.substr(comma + 1)));
                    tok.clear();
                } else {
                    tok += c;
                }
            }
            if (!tok.empty()) throw ParseError("line " + std::to_string(lineno) + ": trailing junk '" + tok + "'");
            if (by_name.count(poly.name)) throw ParseError("duplicate polygon '" + poly.name + "'");
            by_name[poly.name] = s.num_polys();
            s.polys.push_back(std::move(poly));
        } else if (word == "glue") {
            std::string a, b, f;
            if (!(ls >> a >> b)) throw ParseError("line " + std::to_string(lineno) + ": glue needs two edges");
            bool flip = false;
            if (ls >> f) {
                if (f != "flip") throw ParseError("line " + std::to_string(lineno) + ": unknown flag '" + f + "'");
                flip = true;
            }
            auto split = [&](const std::string& t) -> std::pair<std::string, int> {
                size_t dot = t.rfind('.');
                if (dot == std::string::npos) throw ParseError("bad edge reference '" + t + "'");
                return {t.substr(0, dot), std::stoi(t.substr(dot + 1))};
            };
            auto [an, ai] = split(a);
            auto [bn, bi] = split(b);
            glue_lines.emplace_back(an, ai, bn, bi, flip);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown directive '" + word + "'");
        }
    }
    s.partner.resize(s.num_polys());
    s.flips.resize(s.num_polys());
    for (int p = 0; p < s.num_polys(); ++p) {
        s.partner[p].assign(s.polys[p].size(), EdgeRef{});
        s.flips[p].assign(s.polys[p].size(), 0);
    }
    for (const auto& [an, ai, bn, bi, flip] : glue_lines) {
        if (!by_name.count(an) || !by_name.count(bn)) throw ParseError("glue references unknown polygon");
        int pa = by_name[an], pb = by_name[bn];
        if (ai < 0 || ai >= s.polys[pa].size() || bi < 0 || bi >= s.polys[pb].size())
            throw ParseError("glue references edge out of range");
        if (pa == pb && ai == bi) throw ParseError("an edge cannot be glued to itself");
        if (s.partner[pa][ai].poly != -1 || s.partner[pb][bi].poly != -1)
            throw ParseError("edge glued twice");
        s.partner[pa][ai] = {pb, bi};
        s.partner[pb][bi] = {pa, ai};
        s.flips[pa][ai] = s.flips[pb][bi] = flip ? 1 : 0;
    }
    s.validate();
    return s;
}

FlatSurface FlatSurface::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open surface file '" + path + "'");
    return parse(in);
}

Vec2 FlatSurface::map_across(int p, int e, const Vec2& z) const {
    EdgeRef q = partner[p][e];
    // start of (p,e) is identified with the end of the partner edge
    const Vec2& a0 = vertex(p, e);
    const Vec2 b1 = vertex(q.poly, next_i(q.poly, q.edge));
    if (flips[p][e]) return (a0 + b1) - z;
    return z + (b1 - a0);
}

void FlatSurface::validate() const {
    if (polys.empty()) throw DomainError("surface has no polygons");
    for (int p = 0; p < num_polys(); ++p) {
        const Polygon& poly = polys[p];
        if (poly.size() < 3) throw DomainError("polygon '" + poly.name + "' has fewer than 3 vertices");
        Rational a2 = 0;
        for (int i = 0; i < poly.size(); ++i) {
            if (edge_vec(p, i).is_zero()) throw DomainError("zero-length edge in '" + poly.name + "'");
            a2 += cross(poly.v[i], poly.v[next_i(p, i)]);
            // no zero-angle corners
            Vec2 out = edge_vec(p, i);
            Vec2 in = poly.v[prev_i(p, i)] - poly.v[i];
            if (same_direction(out, in)) throw DomainError("zero-angle corner in '" + poly.name + "'");
        }
        if (a2 <= 0) throw DomainError("polygon '" + poly.name + "' must be counterclockwise");
        // simplicity: non-adjacent edges must not meet
        for (int i = 0; i < poly.size(); ++i)
            for (int j = i + 1; j < poly.size(); ++j) {
                if (j == i || next_i(p, i) == j || next_i(p, j) == i) continue;
                Vec2 a = poly.v[i], b = poly.v[next_i(p, i)];
                Vec2 c = poly.v[j], d = poly.v[next_i(p, j)];
                Rational d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
                Rational d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
                bool cross_prop = ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
                bool touch = (d1 == 0 && dot(c - a, c - b) <= 0) || (d2 == 0 && dot(d - a, d - b) <= 0) ||
                             (d3 == 0 && dot(a - c, a - d) <= 0) || (d4 == 0 && dot(b - c, b - d) <= 0);
                if (cross_prop || touch) throw DomainError("polygon '" + poly.name + "' is not simple");
            }
    }
    for (int p = 0; p < num_polys(); ++p)
        for (int e = 0; e < polys[p].size(); ++e) {
            EdgeRef q = partner[p][e];
            if (q.poly == -1) throw DomainError("unglued edge " + polys[p].name + "." + std::to_string(e));
            if (!(partner[q.poly][q.edge] == EdgeRef{p, e})) throw DomainError("asymmetric gluing");
            Vec2 u = edge_vec(p, e), w = edge_vec(q.poly, q.edge);
            if (flips[p][e]) {
                if (!(w == u)) throw DomainError("flip-glued edges must be parallel with equal orientation");
            } else {
                if (!(w == -u)) throw DomainError("translation-glued edges must be parallel with opposite orientation");
            }
        }
    if (!connected()) throw DomainError("surface is not connected");
    ensure_classes();  // asserts angle consistency
}

bool FlatSurface::connected() const {
    UnionFind uf(num_polys());
    for (int p = 0; p < num_polys(); ++p)
        for (int e = 0; e < polys[p].size(); ++e) uf.unite(p, partner[p][e].poly);
    for (int p = 1; p < num_polys(); ++p)
        if (uf.find(p) != uf.find(0)) return false;
    return true;
}

Rational FlatSurface::area() const {
    Rational a = 0;
    for (int p = 0; p < num_polys(); ++p)
        for (int i = 0; i < polys[p].size(); ++i) a += cross(polys[p].v[i], polys[p].v[next_i(p, i)]);
    return a / 2;
}

Integer FlatSurface::coordinate_denominator() const {
    Integer l = 1;
    for (const auto& poly : polys)
        for (const auto& v : poly.v) {
            Integer dx = boost::multiprecision::denominator(v.x);
            Integer dy = boost::multiprecision::denominator(v.y);
            l = boost::multiprecision::lcm(l, boost::multiprecision::lcm(dx, dy));
        }
    return l;
}

void FlatSurface::ensure_edge_vecs() const {
    if (!evecs_.empty()) return;
    evecs_.resize(num_polys());
    for (int p = 0; p < num_polys(); ++p)
        for (int i = 0; i < polys[p].size(); ++i) evecs_[p].push_back(edge_vec(p, i));
}

void FlatSurface::ensure_classes() const {
    if (!classes_.empty()) return;
    int total = 0;
    std::vector<int> base(num_polys(), 0);
    for (int p = 0; p < num_polys(); ++p) {
        base[p] = total;
        total += polys[p].size();
    }
    UnionFind uf(total);
    for (int p = 0; p < num_polys(); ++p)
        for (int e = 0; e < polys[p].size(); ++e) {
            EdgeRef q = partner[p][e];
            // start of (p,e) ~ end of partner
            uf.unite(base[p] + e, base[q.poly] + next_i(q.poly, q.edge));
        }
    std::map<int, int> root_to_class;
    class_of_.assign(num_polys(), {});
    for (int p = 0; p < num_polys(); ++p) class_of_[p].assign(polys[p].size(), -1);
    for (int p = 0; p < num_polys(); ++p)
        for (int i = 0; i < polys[p].size(); ++i) {
            int r = uf.find(base[p] + i);
            auto it = root_to_class.find(r);
            if (it == root_to_class.end()) {
                it = root_to_class.emplace(r, static_cast<int>(classes_.size())).first;
                classes_.push_back({});
            }
            class_of_[p][i] = it->second;
            classes_[it->second].corners.push_back({p, i});
        }
    // Umbrella walk per class: corner (p,i) -> partner corner across edge (p, i-1).
    for (auto& cls : classes_) {
        auto [p0, i0] = cls.corners[0];
        std::vector<CornerFan> fans;
        int p = p0, i = i0;
        size_t guard = 0;
        do {
            fans.push_back({edge_vec_c(p, i), vertex(p, prev_i(p, i)) - vertex(p, i)});
            EdgeRef q = partner[p][prev_i(p, i)];
            p = q.poly;
            i = q.edge;
            if (++guard > cls.corners.size() + 1) throw DomainError("vertex umbrella does not close");
        } while (!(p == p0 && i == i0));
        if (fans.size() != cls.corners.size()) throw DomainError("vertex umbrella misses corners");
        cls.angle_pi = fan_angle_pi_units(fans, perp(fans[0].out));
        if (cls.angle_pi < 1) throw DomainError("vertex class with nonpositive angle");
    }
}

const std::vector<FlatSurface::VertexClass>& FlatSurface::vertex_classes() const {
    ensure_classes();
    return classes_;
}

int FlatSurface::class_of(int p, int i) const {
    ensure_classes();
    return class_of_[p][i];
}

std::vector<long long> FlatSurface::cone_angles_pi() const {
    std::vector<long long> out;
    for (const auto& c : vertex_classes()) out.push_back(c.angle_pi);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

QSingularityData FlatSurface::cone_data() const {
    std::vector<Integer> orders;
    for (const auto& c : vertex_classes())
        if (c.is_cone()) orders.emplace_back(c.order());
    QSingularityData d(std::move(orders));
    d.require_valid();
    return d;
}

bool FlatSurface::holonomy_trivial() const {
    // The flip flags form a Z/2 cocycle on the gluing graph; trivial linear
    // holonomy means it is a coboundary.
    std::vector<int> color(num_polys(), -1);
    std::vector<int> stack = {0};
    color[0] = 0;
    while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        for (int e = 0; e < polys[p].size(); ++e) {
            EdgeRef q = partner[p][e];
            int want = color[p] ^ (flips[p][e] ? 1 : 0);
            if (color[q.poly] == -1) {
                color[q.poly] = want;
                stack.push_back(q.poly);
            } else if (color[q.poly] != want) {
                return false;
            }
        }
    }
    return true;
}

FlatSurface FlatSurface::double_cover() const {
    if (holonomy_trivial()) throw DomainError("double_cover: surface already has trivial linear holonomy");
    FlatSurface c;
    const int n = num_polys();
    for (int sheet = 0; sheet < 2; ++sheet)
        for (int p = 0; p < n; ++p) {
            Polygon poly = polys[p];
            poly.name = polys[p].name + (sheet ? "'" : "");
            if (sheet)
                for (auto& v : poly.v) v = -v;
            c.polys.push_back(std::move(poly));
        }
    c.partner.resize(2 * n);
    c.flips.resize(2 * n);
    for (int p = 0; p < 2 * n; ++p) {
        c.partner[p].assign(polys[p % n].size(), EdgeRef{});
        c.flips[p].assign(polys[p % n].size(), 0);
    }
    for (int p = 0; p < n; ++p)
        for (int e = 0; e < polys[p].size(); ++e) {
            EdgeRef q = partner[p][e];
            for (int sheet = 0; sheet < 2; ++sheet) {
                int target_sheet = flips[p][e] ? 1 - sheet : sheet;
                c.partner[p + sheet * n][e] = {q.poly + target_sheet * n, q.edge};
            }
        }
    c.validate();
    if (!c.holonomy_trivial()) throw DomainError("internal: double cover is not a translation surface");
    if (!c.connected()) throw DomainError("internal: double cover of a connected surface must be connected");
    return c;
}

std::pair<SaddleConnection, SaddleConnection> lift_to_cover(const FlatSurface& base, const FlatSurface& cover,
                                                            const SaddleConnection& sc) {
    const int n = base.num_polys();
    auto lift = [&](int start_sheet) {
        SaddleConnection out;
        for (const SCPart& part : sc.parts) {
            int sheet = (part.eps == 1) ? start_sheet : 1 - start_sheet;
            SCPart q = part;
            q.poly = part.poly + sheet * n;
            if (sheet) {
                q.a = -part.a;
                q.b = -part.b;
            }
            out.parts.push_back(std::move(q));
        }
        const SCPart& first = out.parts.front();
        const SCPart& last = out.parts.back();
        auto find_class = [&](int poly, const Vec2& pt) {
            for (int i = 0; i < cover.polys[poly].size(); ++i)
                if (cover.vertex(poly, i) == pt) return cover.class_of(poly, i);
            throw DomainError("internal: lifted endpoint is not a vertex of the cover");
        };
        out.cls_a = find_class(first.poly, first.a);
        out.cls_b = find_class(last.poly, last.b);
        out.holonomy = sc.holonomy;
        out.len2 = sc.len2;
        return out;
    };
    return {lift(0), lift(1)};
}

}  // namespace qdstrata
