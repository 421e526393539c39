#pragma once

#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "sweepdec/bitvec.hpp"
#include "sweepdec/geometry.hpp"
#include "sweepdec/lattice.hpp"

namespace sweepdec {

// ---------------------------------------------------------------------------
// Partial order induced by a sweep direction, in closed form.
//
// Rhombic: map x -> y = omega.*x. Causal steps become A=(1,1,1) (doubled) and the
// three one-minus steps; in half-summed coordinates sigma = ((y0+y1)/2, (y0+y2)/2,
// (y1+y2)/2) these are (1,1,1) and the unit vectors. Steps leaving corners are
// fixed by the corner class, so A and non-A steps interleave; u <= w holds iff
// sigma(w)-sigma(u) >= 0 and the A-step count a = (sum + delta)/4 fits, where
// delta depends only on the endpoint roles. Verified against BFS in the tests.

namespace order_detail {

inline std::array<long long, 3> sigma_of(const Coord& x, const Dir& w) {
    long long y0 = static_cast<long long>(w[0]) * x[0];
    long long y1 = static_cast<long long>(w[1]) * x[1];
    long long y2 = static_cast<long long>(w[2]) * x[2];
    return {(y0 + y1) / 2, (y0 + y2) / 2, (y1 + y2) / 2};
}

// 0 = corner with 3 future edges, 1 = corner with 1 future edge (the A step), 2 = centre
inline int role_of(const Coord& c, const Dir& w) {
    if (!is_corner(c)) return 2;
    return corner_offset_product(c) == w.product() ? 1 : 0;
}

inline int delta_table(int ru, int rw) {
    static const int d[3][3] = {{0, -2, -1}, {2, 0, 1}, {1, -1, 0}};
    return d[ru][rw];
}

}  // namespace order_detail

inline bool rhombic_leq(const Coord& u, const Coord& w, const Dir& om) {
    if (u == w) return true;
    auto su = order_detail::sigma_of(u, om);
    auto sw = order_detail::sigma_of(w, om);
    long long d0 = sw[0] - su[0], d1 = sw[1] - su[1], d2 = sw[2] - su[2];
    if (d0 < 0 || d1 < 0 || d2 < 0) return false;
    long long tot = d0 + d1 + d2;
    int delta = order_detail::delta_table(order_detail::role_of(u, om),
                                          order_detail::role_of(w, om));
    if ((tot + delta) % 4 != 0) return false;
    long long a = (tot + delta) / 4;
    long long t = tot - 3 * a;
    return a >= 0 && t >= 0 && a <= std::min(d0, std::min(d1, d2));
}

inline bool cubic_leq(const Coord& u, const Coord& w, const Dir& om) {
    for (int i = 0; i < 3; ++i)
        if (static_cast<long long>(om[i]) * (w[i] - u[i]) < 0) return false;
    return true;
}

inline bool coord_leq(Family fam, const Coord& u, const Coord& w, const Dir& om) {
    return family_is_rhombic(fam) ? rhombic_leq(u, w, om) : cubic_leq(u, w, om);
}

inline bool coord_is_vertex(Family fam, const Coord& c) {
    return family_is_rhombic(fam) ? is_rhombic_vertex(c) : is_corner(c);
}

// future neighbours of a coordinate in the infinite lattice
inline std::vector<Coord> future_step_coords(Family fam, const Coord& c, const Dir& om) {
    std::vector<Coord> out;
    if (family_is_rhombic(fam)) {
        if (is_corner(c)) {
            int p = corner_offset_product(c);
            for (int sx : {1, -1})
                for (int sy : {1, -1})
                    for (int sz : {1, -1}) {
                        if (sx * sy * sz != p) continue;
                        Coord d{sx, sy, sz};
                        if (dot(om, d) > 0) out.push_back(c + d);
                    }
        } else {
            for (int sx : {1, -1})
                for (int sy : {1, -1})
                    for (int sz : {1, -1}) {
                        Coord d{sx, sy, sz};
                        if (dot(om, d) > 0) out.push_back(c + d);
                    }
        }
    } else {
        for (int k = 0; k < 3; ++k)
            for (int s : {2, -2}) {
                Coord d{0, 0, 0};
                d[k] = s;
                if (dot(om, d) > 0) out.push_back(c + d);
            }
    }
    return out;
}

// Least upper bound of a nonempty coordinate set in the infinite-lattice order.
// Scans candidates by excess above the componentwise sigma maximum; the least
// upper bound is the unique upper bound of minimal excess.
inline Coord sup_coords(Family fam, const std::vector<Coord>& pts, const Dir& om) {
    if (pts.empty()) throw std::invalid_argument("sup of empty set");
    if (pts.size() == 1) return pts[0];
    if (!family_is_rhombic(fam)) {
        Coord r = pts[0];
        for (const Coord& p : pts)
            for (int i = 0; i < 3; ++i)
                if (om[i] * (p[i] - r[i]) > 0) r[i] = p[i];
        return r;
    }
    std::array<long long, 3> M = order_detail::sigma_of(pts[0], om);
    long long range = 0;
    for (const Coord& p : pts) {
        auto s = order_detail::sigma_of(p, om);
        for (int i = 0; i < 3; ++i) {
            range = std::max(range, std::llabs(s[i] - M[i]));
            M[i] = std::max(M[i], s[i]);
        }
    }
    const long long kmax = 3 * range + 16;
    for (long long k = 0; k <= kmax; ++k) {
        std::optional<Coord> found;
        for (long long i = 0; i <= k; ++i)
            for (long long j = 0; i + j <= k; ++j) {
                long long l = k - i - j;
                long long s0 = M[0] + i, s1 = M[1] + j, s2 = M[2] + l;
                Coord xy{static_cast<int>(s0 + s1 - s2), static_cast<int>(s0 - s1 + s2),
                         static_cast<int>(-s0 + s1 + s2)};
                Coord x{om[0] * xy[0], om[1] * xy[1], om[2] * xy[2]};
                if (!is_rhombic_vertex(x)) continue;
                bool ub = true;
                for (const Coord& p : pts) ub = ub && rhombic_leq(p, x, om);
                if (!ub) continue;
                if (found) throw std::logic_error("sup not unique at minimal excess");
                found = x;
            }
        if (found) return *found;
    }
    throw std::logic_error("sup scan exhausted");
}

inline Coord inf_coords(Family fam, const std::vector<Coord>& pts, const Dir& om) {
    Dir neg{{-om[0], -om[1], -om[2]}};
    return sup_coords(fam, pts, neg);
}

// All lattice coordinates c with lo <= c <= hi (infinite lattice, both bounds given
// in the same unwrapped frame).
inline std::vector<Coord> diamond_coords(Family fam, const Coord& lo, const Coord& hi,
                                         const Dir& om) {
    std::vector<Coord> out;
    if (!family_is_rhombic(fam)) {
        Coord a = lo, b = hi;
        for (int i = 0; i < 3; ++i)
            if (a[i] > b[i]) std::swap(a[i], b[i]);
        for (int x = a[0]; x <= b[0]; x += 2)
            for (int y = a[1]; y <= b[1]; y += 2)
                for (int z = a[2]; z <= b[2]; z += 2) out.push_back({x, y, z});
        return out;
    }
    auto slo = order_detail::sigma_of(lo, om), shi = order_detail::sigma_of(hi, om);
    for (long long s0 = slo[0]; s0 <= shi[0]; ++s0)
        for (long long s1 = slo[1]; s1 <= shi[1]; ++s1)
            for (long long s2 = slo[2]; s2 <= shi[2]; ++s2) {
                Coord xy{static_cast<int>(s0 + s1 - s2), static_cast<int>(s0 - s1 + s2),
                         static_cast<int>(-s0 + s1 + s2)};
                Coord x{om[0] * xy[0], om[1] * xy[1], om[2] * xy[2]};
                if (!is_rhombic_vertex(x)) continue;
                if (rhombic_leq(lo, x, om) && rhombic_leq(x, hi, om)) out.push_back(x);
            }
    return out;
}

// ---------------------------------------------------------------------------
// Per-direction context bound to a finite lattice.

struct SweepContext {
    const LatticeGeometry* lat = nullptr;
    Dir omega;
    std::vector<std::vector<int32_t>> future_edges;      // per vertex, sorted
    std::vector<std::vector<int32_t>> other_edges;       // remaining incident edges
    std::vector<std::vector<int32_t>> future_faces;      // candidate phi faces
    std::vector<std::vector<int32_t>> future_neighbors;  // endpoint of each future edge
};

inline SweepContext build_sweep_context(const LatticeGeometry& lat, const Dir& om) {
    SweepContext ctx;
    ctx.lat = &lat;
    ctx.omega = om;
    size_t nv = lat.n_vertices();
    ctx.future_edges.resize(nv);
    ctx.other_edges.resize(nv);
    ctx.future_faces.resize(nv);
    ctx.future_neighbors.resize(nv);
    for (size_t v = 0; v < nv; ++v) {
        const Coord& cv = lat.vcoord[v];
        for (int32_t e : lat.vedges[v]) {
            int32_t w = lat.evert[e][0] == static_cast<int32_t>(v) ? lat.evert[e][1]
                                                                   : lat.evert[e][0];
            Coord cw = lat.lift_near(cv, lat.vcoord[w]);
            if (dot(om, cw - cv) > 0) {
                ctx.future_edges[v].push_back(e);
                ctx.future_neighbors[v].push_back(w);
            } else {
                ctx.other_edges[v].push_back(e);
            }
        }
        for (int32_t f : lat.vfaces[v]) {
            bool fut = true;
            for (const Coord& cw : lat.face_lifts(f, static_cast<int32_t>(v)))
                if (!coord_leq(lat.family, cv, cw, om)) {
                    fut = false;
                    break;
                }
            if (fut) ctx.future_faces[v].push_back(f);
        }
    }
    return ctx;
}

// Breadth-first future/past on the finite lattice (callers keep inputs local).
inline std::vector<int32_t> future_vertices(const SweepContext& ctx, int32_t v) {
    std::vector<int32_t> out{v};
    std::vector<bool> seen(ctx.lat->n_vertices(), false);
    seen[v] = true;
    for (size_t i = 0; i < out.size(); ++i)
        for (int32_t w : ctx.future_neighbors[out[i]])
            if (!seen[w]) {
                seen[w] = true;
                out.push_back(w);
            }
    return out;
}

inline std::vector<int32_t> past_vertices(const SweepContext& ctx, int32_t v) {
    // past under omega = future under -omega; rebuildable, but a reverse BFS on the
    // stored lists avoids a second context
    std::vector<std::vector<int32_t>> rev(ctx.lat->n_vertices());
    for (size_t u = 0; u < ctx.future_neighbors.size(); ++u)
        for (int32_t w : ctx.future_neighbors[u]) rev[w].push_back(static_cast<int32_t>(u));
    std::vector<int32_t> out{v};
    std::vector<bool> seen(ctx.lat->n_vertices(), false);
    seen[v] = true;
    for (size_t i = 0; i < out.size(); ++i)
        for (int32_t w : rev[out[i]])
            if (!seen[w]) {
                seen[w] = true;
                out.push_back(w);
            }
    return out;
}

inline bool is_trailing(const SweepContext& ctx, const CheckSet& sigma, int32_t v) {
    for (int32_t e : ctx.other_edges[v])
        if (sigma.get(static_cast<size_t>(e))) return false;
    for (int32_t e : ctx.future_edges[v])
        if (sigma.get(static_cast<size_t>(e))) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Lifting a vertex set on a torus into one local patch.

inline std::optional<std::vector<Coord>> lift_local_patch(const LatticeGeometry& lat,
                                                          const std::vector<int32_t>& verts) {
    std::vector<Coord> out;
    out.reserve(verts.size());
    if (!family_is_periodic(lat.family)) {
        for (int32_t v : verts) out.push_back(lat.vcoord[v]);
        return out;
    }
    const int m = 2 * lat.L;
    std::array<int, 3> shift{0, 0, 0};
    for (int ax = 0; ax < 3; ++ax) {
        std::vector<int> vals;
        for (int32_t v : verts) vals.push_back(lat.vcoord[v][ax]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        int best_gap = vals.front() + m - vals.back(), best_start = vals.front();
        for (size_t i = 1; i < vals.size(); ++i) {
            int gap = vals[i] - vals[i - 1];
            if (gap > best_gap) {
                best_gap = gap;
                best_start = vals[i] - m;
            }
        }
        if (m - best_gap >= lat.L) return std::nullopt;  // spread >= L/2: not local
        shift[ax] = best_start;
    }
    for (int32_t v : verts) {
        Coord c = lat.vcoord[v];
        for (int ax = 0; ax < 3; ++ax) {
            int d = ((c[ax] - shift[ax]) % m + m) % m;
            c[ax] = shift[ax] + d;
        }
        out.push_back(c);
    }
    return out;
}

// Causal diamond of a set of lattice vertices, as lattice vertex indices. On a
// torus the set must fit in a local patch (diameter below L/2), else nullopt.
inline std::optional<std::vector<int32_t>> causal_diamond_vertices(
    const LatticeGeometry& lat, const Dir& om, const std::vector<int32_t>& verts) {
    if (verts.empty()) throw std::invalid_argument("diamond of empty set");
    auto lifted = lift_local_patch(lat, verts);
    if (!lifted) return std::nullopt;
    Coord lo = inf_coords(lat.family, *lifted, om);
    Coord hi = sup_coords(lat.family, *lifted, om);
    std::vector<int32_t> out;
    for (const Coord& c : diamond_coords(lat.family, lo, hi, om)) {
        int32_t v = lat.vertex_at(c);
        if (v >= 0) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Single-direction causal region of an open-boundary lattice: the causal diamond
// computed in the infinite lattice, restricted to the vertices that exist.
inline std::vector<int32_t> causal_region(const LatticeGeometry& lat, const Dir& om,
                                          const std::vector<int32_t>& verts) {
    auto d = causal_diamond_vertices(lat, om, verts);
    if (!d) throw std::invalid_argument("causal region needs a local set");
    return *d;
}

// Composed region: fold the single-direction regions in the given order.
inline std::vector<int32_t> causal_region_composed(const LatticeGeometry& lat,
                                                   const std::vector<Dir>& order,
                                                   std::vector<int32_t> verts) {
    for (const Dir& om : order) verts = causal_region(lat, om, verts);
    return verts;
}

// ---------------------------------------------------------------------------
// Syndrome graph: nodes are edges, adjacent iff they share a face.

inline std::vector<int> syndrome_graph_distances(const LatticeGeometry& lat,
                                                 const CheckSet& sources) {
    std::vector<int> dist(lat.n_edges(), -1);
    std::queue<int32_t> q;
    sources.for_each_set([&](size_t e) {
        dist[e] = 0;
        q.push(static_cast<int32_t>(e));
    });
    while (!q.empty()) {
        int32_t e = q.front();
        q.pop();
        for (int32_t f : lat.efaces[e])
            for (int32_t e2 : lat.fedge[f])
                if (dist[e2] < 0) {
                    dist[e2] = dist[e] + 1;
                    q.push(e2);
                }
    }
    return dist;
}

inline int syndrome_distance(const LatticeGeometry& lat, const CheckSet& a, const CheckSet& b) {
    if (!a.any() || !b.any()) throw std::invalid_argument("syndrome distance of empty set");
    auto dist = syndrome_graph_distances(lat, a);
    int best = std::numeric_limits<int>::max();
    b.for_each_set([&](size_t e) {
        if (dist[e] >= 0) best = std::min(best, dist[e]);
    });
    return best == std::numeric_limits<int>::max() ? -1 : best;
}

}  // namespace sweepdec
