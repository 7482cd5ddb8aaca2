#include "qdstrata/flatsurface.hpp"

#include <algorithm>
#include <sstream>

namespace qdstrata {

namespace {

struct RayStart {
    int poly = -1, corner = -1;
    bool along_edge = false;  // ray runs along edge `corner` of `poly`
};

// Outgoing rays at a vertex class parallel to dir (same sign), one per corner
// sector; a ray along an edge is attributed to the corner whose outgoing edge
// it is.
std::vector<RayStart> ray_starts(const FlatSurface& s, int cls, const Vec2& dir) {
    std::vector<RayStart> out;
    for (auto [p, i] : s.vertex_classes()[cls].corners) {
        const Vec2& o = s.edge_vec_c(p, i);
        Vec2 in = s.vertex(p, s.prev_i(p, i)) - s.vertex(p, i);
        if (same_direction(o, dir))
            out.push_back({p, i, true});
        else if (strictly_inside_ccw(o, in, dir))
            out.push_back({p, i, false});
    }
    return out;
}

std::string run_token(const FlatSurface& s, const SCPart& part) {
    int p = part.poly, e = part.along_edge;
    FlatSurface::EdgeRef q = s.partner[p][e];
    bool fwd = part.a == s.vertex(p, e);
    if (FlatSurface::EdgeRef{p, e} < q) return "R" + std::to_string(p) + "." + std::to_string(e) + (fwd ? "f" : "b");
    // partner is canonical; forward there corresponds to backward here
    return "R" + std::to_string(q.poly) + "." + std::to_string(q.edge) + (fwd ? "b" : "f");
}

std::string part_token(const FlatSurface& s, const SCPart& part, bool reversed) {
    if (part.along_edge >= 0) {
        SCPart q = part;
        if (reversed) std::swap(q.a, q.b);
        return run_token(s, q);
    }
    const Vec2& a = reversed ? part.b : part.a;
    const Vec2& b = reversed ? part.a : part.b;
    return "C" + std::to_string(part.poly) + ":" + vec2_to_string(a) + ">" + vec2_to_string(b);
}

std::string sc_key(const FlatSurface& s, const std::vector<SCPart>& parts) {
    std::string fwd, bwd;
    for (const auto& part : parts) fwd += part_token(s, part, false) + ";";
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) bwd += part_token(s, *it, true) + ";";
    return std::min(fwd, bwd);
}

}  // namespace

int num_rays(const FlatSurface& s, int cls, const Vec2& dir) {
    return static_cast<int>(ray_starts(s, cls, dir).size());
}

std::optional<SaddleConnection> trace_separatrix(const FlatSurface& s, int cls, int ray_index, const Vec2& dir,
                                                 const Rational& maxlen) {
    if (dir.is_zero()) throw DomainError("trace_separatrix: zero direction");
    if (maxlen < 0) throw DomainError("trace_separatrix: negative length cap");
    auto rays = ray_starts(s, cls, dir);
    if (ray_index < 0 || ray_index >= static_cast<int>(rays.size()))
        throw DomainError("trace_separatrix: ray index out of range");

    const Rational cap2 = maxlen * maxlen;
    const Rational d2 = norm2(dir);
    auto over_cap = [&](const Rational& t) { return t * t * d2 > cap2; };

    std::vector<SCPart> parts;
    Rational t = 0;

    // Current action: march through the interior from pos, or slide along an
    // edge from its start vertex.
    enum class Mode { Interior, Slide, Done, Dead };
    Mode mode;
    int p = rays[ray_index].poly;
    int corner = rays[ray_index].corner;
    Vec2 pos = s.vertex(p, corner);
    Vec2 d = dir;  // direction in the current chart
    int eps = 1;
    int slide_edge = -1;
    int end_class = -1;

    if (rays[ray_index].along_edge) {
        mode = Mode::Slide;
        slide_edge = corner;
    } else {
        mode = Mode::Interior;
    }

    // Resolve an arrival at vertex (p, i): stop at a cone point, otherwise
    // continue straight through the flat point.
    auto arrive = [&](int ap, int ai) {
        int c = s.class_of(ap, ai);
        if (s.vertex_classes()[c].is_cone()) {
            end_class = c;
            mode = Mode::Done;
            return;
        }
        // walk the umbrella, tracking the chart transform sign
        int q = ap, j = ai, sigma = 1;
        int found = 0;
        int np = -1, nj = -1, nsigma = 1;
        bool slide = false;
        const size_t n_corners = s.vertex_classes()[c].corners.size();
        for (size_t step = 0; step < n_corners; ++step) {
            const Vec2& o = s.edge_vec_c(q, j);
            Vec2 in = s.vertex(q, s.prev_i(q, j)) - s.vertex(q, j);
            Vec2 dl = d * Rational(sigma);
            if (same_direction(dl, o)) {
                ++found;
                np = q;
                nj = j;
                nsigma = sigma;
                slide = true;
            } else if (strictly_inside_ccw(o, in, dl)) {
                ++found;
                np = q;
                nj = j;
                nsigma = sigma;
                slide = false;
            }
            int pe = s.prev_i(q, j);
            if (s.flips[q][pe]) sigma = -sigma;
            FlatSurface::EdgeRef nx = s.partner[q][pe];
            q = nx.poly;
            j = nx.edge;
        }
        if (found != 1) throw DomainError("internal: flat vertex continuation not unique");
        p = np;
        pos = s.vertex(np, nj);
        d = d * Rational(nsigma);
        eps *= nsigma;
        if (slide) {
            mode = Mode::Slide;
            slide_edge = nj;
        } else {
            mode = Mode::Interior;
            corner = nj;
        }
    };

    for (long long iter = 0; iter < 10'000'000 && mode != Mode::Done && mode != Mode::Dead; ++iter) {
        if (mode == Mode::Slide) {
            const Vec2& ev = s.edge_vec_c(p, slide_edge);
            Rational step = dot(ev, d) / norm2(d);
            if (step <= 0) throw DomainError("internal: slide against the edge direction");
            if (over_cap(t + step)) {
                mode = Mode::Dead;
                break;
            }
            parts.push_back({p, s.vertex(p, slide_edge), s.vertex(p, s.next_i(p, slide_edge)), slide_edge, eps});
            t += step;
            arrive(p, s.next_i(p, slide_edge));
        } else {
            // interior march from pos (on the boundary of poly p); the exit
            // search compares the candidate parameters as fractions, without
            // dividing
            const auto& poly = s.polys[p];
            Rational best_num, best_den;
            int hit_edge = -1;
            for (int e = 0; e < poly.size(); ++e) {
                Vec2 rel = poly.v[e] - pos;
                const Vec2& ev = s.edge_vec_c(p, e);
                Rational den0 = cross(d, ev);
                if (den0 == 0) continue;
                const bool den_pos = den0 > 0;
                Rational num = cross(rel, ev);  // sp = num/den0
                if (!den_pos) num = -num;
                if (num <= 0) continue;  // sp <= 0
                Rational den = den_pos ? den0 : -den0;
                if (hit_edge >= 0 && num * best_den >= best_num * den) continue;
                Rational rnum = cross(rel, d);  // rp = rnum/den0 must lie in [0,1]
                if (den_pos) {
                    if (rnum < 0 || rnum > den0) continue;
                } else {
                    if (rnum > 0 || rnum < den0) continue;
                }
                best_num = num;
                best_den = den;
                hit_edge = e;
            }
            if (hit_edge < 0) throw DomainError("internal: ray failed to exit the polygon");
            Rational best_s = best_num / best_den;
            Vec2 hit = pos + d * best_s;
            if (over_cap(t + best_s)) {
                mode = Mode::Dead;
                break;
            }
            parts.push_back({p, pos, hit, -1, eps});
            t += best_s;
            // vertex hit?
            int vhit = -1;
            for (int i = 0; i < poly.size(); ++i)
                if (poly.v[i] == hit) {
                    vhit = i;
                    break;
                }
            if (vhit >= 0) {
                arrive(p, vhit);
            } else {
                // cross the gluing of hit_edge
                Vec2 npos = s.map_across(p, hit_edge, hit);
                Vec2 nd = s.dir_across(p, hit_edge, d);
                if (s.flips[p][hit_edge]) eps = -eps;
                FlatSurface::EdgeRef q = s.partner[p][hit_edge];
                p = q.poly;
                pos = npos;
                d = nd;
                // must point strictly inward now
                if (!(cross(s.edge_vec(p, q.edge), d) > 0))
                    throw DomainError("internal: crossing did not land inward");
            }
        }
    }
    if (mode == Mode::Dead) return std::nullopt;
    if (mode != Mode::Done) throw DomainError("internal: trace did not terminate");

    SaddleConnection sc;
    sc.parts = std::move(parts);
    sc.cls_a = cls;
    sc.cls_b = end_class;
    sc.holonomy = canonical_sign(dir * t);
    sc.len2 = t * t * d2;
    sc.key = sc_key(s, sc.parts);
    return sc;
}

namespace {

// Common point of two segments in one chart: 0 = none, 1 = single point
// (stored in pt), 2 = overlap of positive length.
int segment_meet(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& dd, Vec2& pt) {
    Vec2 ab = b - a, cd = dd - c;
    Rational den = cross(ab, cd);
    if (den == 0) {
        if (cross(ab, c - a) != 0) return 0;  // parallel, distinct lines
        // collinear: project on ab
        Rational n2 = norm2(ab);
        Rational t0 = dot(c - a, ab) / n2, t1 = dot(dd - a, ab) / n2;
        Rational lo = std::min(t0, t1), hi = std::max(t0, t1);
        Rational l = std::max(lo, Rational(0)), h = std::min(hi, Rational(1));
        if (l > h) return 0;
        if (l == h) {
            pt = a + ab * l;
            return 1;
        }
        return 2;
    }
    Rational sp = cross(c - a, cd) / den;
    Rational rp = cross(c - a, ab) / den;
    if (sp < 0 || sp > 1 || rp < 0 || rp > 1) return 0;
    pt = a + ab * sp;
    return 1;
}

bool is_poly_vertex(const FlatSurface& s, int p, const Vec2& pt) {
    for (const auto& v : s.polys[p].v)
        if (v == pt) return true;
    return false;
}

}  // namespace

bool interior_intersect(const FlatSurface& s, const SaddleConnection& a, const SaddleConnection& b) {
    for (const SCPart& pa : a.parts)
        for (const SCPart& pb : b.parts) {
            if (pa.along_edge >= 0 && pb.along_edge >= 0) {
                if (run_token(s, pa).substr(0, run_token(s, pa).size() - 1) ==
                    run_token(s, pb).substr(0, run_token(s, pb).size() - 1))
                    return true;  // same identified edge
                continue;
            }
            if (pa.along_edge >= 0 || pb.along_edge >= 0) {
                // a chord endpoint strictly inside the run's edge means the
                // other connection crosses this one there
                const SCPart& run = pa.along_edge >= 0 ? pa : pb;
                const SCPart& chord = pa.along_edge >= 0 ? pb : pa;
                FlatSurface::EdgeRef sides[2] = {{run.poly, run.along_edge},
                                                 s.partner[run.poly][run.along_edge]};
                for (const auto& side : sides) {
                    if (chord.poly != side.poly) continue;
                    Vec2 u = s.vertex(side.poly, side.edge);
                    Vec2 ev = s.edge_vec(side.poly, side.edge);
                    for (const Vec2& e : {chord.a, chord.b}) {
                        if (e == u || e == u + ev) continue;
                        if (cross(ev, e - u) == 0 && dot(e - u, ev) > 0 && dot(e - (u + ev), -ev) > 0) return true;
                    }
                }
                continue;
            }
            if (pa.poly != pb.poly) continue;
            Vec2 pt;
            int m = segment_meet(pa.a, pa.b, pb.a, pb.b, pt);
            if (m == 2) return true;
            if (m == 1) {
                bool end_a = pt == pa.a || pt == pa.b;
                bool end_b = pt == pb.a || pt == pb.b;
                if (end_a && end_b && is_poly_vertex(s, pa.poly, pt)) continue;
                return true;
            }
        }
    return false;
}

}  // namespace qdstrata
