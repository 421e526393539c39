#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sweepdec/bitvec.hpp"
#include "sweepdec/geometry.hpp"

namespace sweepdec {

enum class Family { rhombic_periodic, rhombic_open, cubic_periodic, cubic_open };

inline bool family_is_rhombic(Family f) {
    return f == Family::rhombic_periodic || f == Family::rhombic_open;
}
inline bool family_is_periodic(Family f) {
    return f == Family::rhombic_periodic || f == Family::cubic_periodic;
}

inline std::string family_name(Family f) {
    switch (f) {
        case Family::rhombic_periodic: return "rhombic-periodic";
        case Family::rhombic_open: return "rhombic-open";
        case Family::cubic_periodic: return "cubic-periodic";
        case Family::cubic_open: return "cubic-open";
    }
    return "?";
}

inline Family family_from_name(const std::string& s) {
    if (s == "rhombic-periodic") return Family::rhombic_periodic;
    if (s == "rhombic-open") return Family::rhombic_open;
    if (s == "cubic-periodic") return Family::cubic_periodic;
    if (s == "cubic-open") return Family::cubic_open;
    throw std::invalid_argument("unknown lattice family: " + s);
}

enum class VertexKind : uint8_t { corner, center };
enum class Label : uint8_t { bulk, rough, smooth };

inline const char* label_name(Label l) {
    switch (l) {
        case Label::bulk: return "bulk";
        case Label::rough: return "rough";
        case Label::smooth: return "smooth";
    }
    return "?";
}

// Immutable incidence structure for one code lattice. Indices are dense and
// assigned in lexicographic coordinate order, so two builds are identical.
struct LatticeGeometry {
    Family family{};
    int L = 0;

    std::vector<Coord> vcoord;  // doubled coordinates (periodic: in [0, 2L))
    std::vector<VertexKind> vkind;
    std::vector<Label> vlabel;

    std::vector<std::array<int32_t, 2>> evert;  // endpoint indices, lo < hi
    std::vector<int8_t> eclass;  // rhombic: sign pattern corner->center (0..7); cubic: axis
    std::vector<Label> elabel;

    std::vector<int8_t> faxis;    // rhombic: axis of the defining cubic edge; cubic: normal axis
    std::vector<Coord> fanchor;   // doubled min corner of the defining cubic edge / plaquette
    std::vector<std::vector<int32_t>> fvert;  // retained vertices in cyclic order
    std::vector<std::vector<Coord>> fideal;   // their unwrapped construction coordinates
    std::vector<std::vector<int32_t>> fedge;
    std::vector<Label> flabel;

    std::vector<std::vector<int32_t>> cells;  // complete interior cells only

    std::vector<std::vector<int32_t>> vedges, vfaces, efaces;

    std::vector<QubitSet> logical_z, logical_x;  // verified representatives, paired

    std::unordered_map<uint64_t, int32_t> vindex;  // pack_coord(wrapped) -> vertex

    size_t n_vertices() const { return vcoord.size(); }
    size_t n_edges() const { return evert.size(); }
    size_t n_faces() const { return fvert.size(); }
    size_t n_cells() const { return cells.size(); }

    int period() const { return family_is_periodic(family) ? 2 * L : 0; }

    Coord wrap(Coord c) const {
        if (int m = period()) {
            for (int i = 0; i < 3; ++i) c[i] = ((c[i] % m) + m) % m;
        }
        return c;
    }

    int32_t vertex_at(const Coord& c) const {
        auto it = vindex.find(pack_coord(wrap(c)));
        return it == vindex.end() ? -1 : it->second;
    }

    // Representative of p nearest to base in the unwrapped lattice. Safe for
    // edge-scale offsets; face geometry must go through face_lifts instead (an
    // offset of exactly half the period is ambiguous on the L=2 torus).
    Coord lift_near(const Coord& base, Coord p) const {
        if (int m = period()) {
            for (int i = 0; i < 3; ++i) {
                int d = ((p[i] - base[i]) % m + m) % m;
                if (d > m / 2) d -= m;
                p[i] = base[i] + d;
            }
        }
        return p;
    }

    // Coordinates of face f's retained vertices in the frame where vertex v sits
    // at its stored coordinate, using the face's own construction geometry.
    std::vector<Coord> face_lifts(int32_t f, int32_t v) const {
        const auto& ids = fvert[f];
        const auto& ideal = fideal[f];
        for (size_t j = 0; j < ids.size(); ++j) {
            if (ids[j] != v) continue;
            Coord shift = vcoord[v] - ideal[j];
            std::vector<Coord> out(ideal.size());
            for (size_t i = 0; i < ideal.size(); ++i) out[i] = ideal[i] + shift;
            return out;
        }
        throw std::invalid_argument("face_lifts: vertex not on face");
    }

    CheckSet boundary_map(const QubitSet& error) const {
        CheckSet s(n_edges());
        error.for_each_set([&](size_t f) {
            for (int32_t e : fedge[f]) s.flip(static_cast<size_t>(e));
        });
        return s;
    }

    // restriction of a syndrome to the edges at v
    std::vector<int32_t> restrict_syndrome(const CheckSet& s, int32_t v) const {
        std::vector<int32_t> out;
        for (int32_t e : vedges[v])
            if (s.get(static_cast<size_t>(e))) out.push_back(e);
        return out;
    }

    // restriction of an error to the faces containing v
    std::vector<int32_t> restrict_error(const QubitSet& q, int32_t v) const {
        std::vector<int32_t> out;
        for (int32_t f : vfaces[v])
            if (q.get(static_cast<size_t>(f))) out.push_back(f);
        return out;
    }

    void write_export(std::ostream& os) const;
};

namespace detail {

struct Builder {
    Family family;
    int L;
    bool periodic;
    std::map<Coord, VertexKind> verts;
    std::map<std::pair<Coord, Coord>, int8_t> edges;  // canonical (lo,hi) coord pair -> class
    struct ProtoFace {
        int8_t axis;
        Coord anchor;
        std::vector<Coord> cycle;                    // retained vertices, cyclic
        std::vector<std::pair<Coord, Coord>> edges;  // canonical coord pairs
    };
    std::map<std::pair<int8_t, Coord>, ProtoFace> faces;
    std::vector<std::pair<Coord, std::vector<std::pair<int8_t, Coord>>>> cells;

    Coord wrap(Coord c) const {
        if (!periodic) return c;
        int m = 2 * L;
        for (int i = 0; i < 3; ++i) c[i] = ((c[i] % m) + m) % m;
        return c;
    }
    static std::pair<Coord, Coord> canon(Coord a, Coord b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }
    // corner must be passed in the unwrapped frame of its centre so the
    // direction class (corner -> centre sign pattern) is geometric
    void add_edge(const Coord& corner, const Coord& center) {
        Coord d = center - corner;
        auto cls = static_cast<int8_t>((d[0] > 0 ? 1 : 0) | (d[1] > 0 ? 2 : 0) | (d[2] > 0 ? 4 : 0));
        edges.emplace(canon(wrap(corner), wrap(center)), cls);
    }
    bool has_edge(const Coord& a, const Coord& b) const {
        return edges.count(canon(wrap(a), wrap(b))) != 0;
    }

    LatticeGeometry finish() {
        LatticeGeometry g;
        g.family = family;
        g.L = L;
        for (auto& [c, k] : verts) {
            g.vindex.emplace(pack_coord(c), static_cast<int32_t>(g.vcoord.size()));
            g.vcoord.push_back(c);
            g.vkind.push_back(k);
        }
        auto vid = [&](const Coord& c) {
            auto it = g.vindex.find(pack_coord(c));
            if (it == g.vindex.end()) throw std::logic_error("builder: unknown vertex");
            return it->second;
        };
        std::map<std::pair<Coord, Coord>, int32_t> eid;
        for (auto& [pr, cls] : edges) {
            int32_t a = vid(pr.first), b = vid(pr.second);
            eid.emplace(pr, static_cast<int32_t>(g.evert.size()));
            g.evert.push_back({std::min(a, b), std::max(a, b)});
            g.eclass.push_back(cls);
        }
        for (auto& [key, pf] : faces) {
            g.faxis.push_back(pf.axis);
            g.fanchor.push_back(pf.anchor);
            std::vector<int32_t> fv, fe;
            for (auto& c : pf.cycle) fv.push_back(vid(wrap(c)));
            for (auto& pr : pf.edges) fe.push_back(eid.at(pr));
            g.fvert.push_back(std::move(fv));
            g.fideal.push_back(pf.cycle);
            g.fedge.push_back(std::move(fe));
        }
        std::map<std::pair<int8_t, Coord>, int32_t> fid;
        {
            int32_t i = 0;
            for (auto& [key, pf] : faces) fid.emplace(key, i++);
        }
        std::sort(cells.begin(), cells.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [anchor, fkeys] : cells) {
            std::vector<int32_t> cf;
            for (auto& k : fkeys) cf.push_back(fid.at(k));
            std::sort(cf.begin(), cf.end());
            g.cells.push_back(std::move(cf));
        }
        g.vedges.assign(g.n_vertices(), {});
        g.vfaces.assign(g.n_vertices(), {});
        g.efaces.assign(g.n_edges(), {});
        for (size_t e = 0; e < g.n_edges(); ++e) {
            g.vedges[g.evert[e][0]].push_back(static_cast<int32_t>(e));
            g.vedges[g.evert[e][1]].push_back(static_cast<int32_t>(e));
        }
        for (size_t f = 0; f < g.n_faces(); ++f) {
            for (int32_t v : g.fvert[f]) g.vfaces[v].push_back(static_cast<int32_t>(f));
            for (int32_t e : g.fedge[f]) g.efaces[e].push_back(static_cast<int32_t>(f));
        }
        g.vlabel.assign(g.n_vertices(), Label::bulk);
        g.elabel.assign(g.n_edges(), Label::bulk);
        g.flabel.assign(g.n_faces(), Label::bulk);
        return g;
    }
};

// The two centered cubes adjacent to the cubic edge (axis k, doubled min corner u).
// Returns doubled centre coordinates in the unwrapped frame, parity-tested via wrap.
template <class WrapFn>
inline std::vector<Coord> rhombic_edge_centers(const Coord& u, int k, WrapFn&& wrapped_ok) {
    std::vector<Coord> out;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            Coord d{0, 0, 0};
            d[k] = 1;
            d[(k + 1) % 3] = s1;
            d[(k + 2) % 3] = s2;
            Coord c = u + d;
            if (wrapped_ok(c)) out.push_back(c);
        }
    return out;
}

}  // namespace detail

// --- rhombic dodecahedral lattice on the 3-torus -------------------------------

inline LatticeGeometry build_rhombic_periodic(int L) {
    if (L < 2 || L % 2 != 0)
        throw std::invalid_argument("rhombic-periodic needs even L >= 2 (the centre "
                                    "checkerboard cannot close on an odd torus)");
    detail::Builder b{Family::rhombic_periodic, L, true};
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
            for (int z = 0; z < L; ++z) {
                b.verts.emplace(Coord{2 * x, 2 * y, 2 * z}, VertexKind::corner);
                if ((x + y + z) % 2 == 1)
                    b.verts.emplace(Coord{2 * x + 1, 2 * y + 1, 2 * z + 1}, VertexKind::center);
            }
    auto is_center = [&](const Coord& c) {
        auto it = b.verts.find(b.wrap(c));
        return it != b.verts.end() && it->second == VertexKind::center;
    };
    for (auto& [c, k] : b.verts) {
        if (k != VertexKind::center) continue;
        for (int sx : {1, -1})
            for (int sy : {1, -1})
                for (int sz : {1, -1}) b.add_edge(c + Coord{sx, sy, sz}, c);
    }
    for (int k = 0; k < 3; ++k)
        for (int x = 0; x < L; ++x)
            for (int y = 0; y < L; ++y)
                for (int z = 0; z < L; ++z) {
                    Coord u{2 * x, 2 * y, 2 * z};
                    Coord v = u;
                    v[k] += 2;
                    auto ctr = detail::rhombic_edge_centers(u, k, is_center);
                    if (ctr.size() != 2) throw std::logic_error("periodic face needs 2 centres");
                    std::sort(ctr.begin(), ctr.end());
                    detail::Builder::ProtoFace pf;
                    pf.axis = static_cast<int8_t>(k);
                    pf.anchor = u;
                    pf.cycle = {u, ctr[0], v, ctr[1]};  // unwrapped construction frame
                    for (int i = 0; i < 4; ++i)
                        pf.edges.push_back(detail::Builder::canon(b.wrap(pf.cycle[i]),
                                                                  b.wrap(pf.cycle[(i + 1) % 4])));
                    b.faces.emplace(std::make_pair(pf.axis, u), std::move(pf));
                }
    // one cell per uncentered cube
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
            for (int z = 0; z < L; ++z) {
                if ((x + y + z) % 2 != 0) continue;
                std::vector<std::pair<int8_t, Coord>> fk;
                for (int k = 0; k < 3; ++k)
                    for (int da : {0, 1})
                        for (int db : {0, 1}) {
                            Coord w{x, y, z};
                            w[(k + 1) % 3] += da;
                            w[(k + 2) % 3] += db;
                            Coord a = b.wrap({2 * w[0], 2 * w[1], 2 * w[2]});
                            fk.emplace_back(static_cast<int8_t>(k), a);
                        }
                b.cells.emplace_back(Coord{2 * x, 2 * y, 2 * z}, std::move(fk));
            }
    return b.finish();
}

// --- rhombic dodecahedral lattice with boundaries (§ fig. 3 family) ------------
//
// Cubic region [0,L-1]x[0,L+1]x[0,L]; centres on the parity checkerboard; edges from
// a centre only to cube corners with 0<y<L+1 and 0<z<L. Faces are every rhombus
// that keeps at least one edge, except rhombi of y-oriented cubic edges with fewer
// than two retained corners: those "wings" would let syndrome strings terminate on
// the two y boundaries, which are the smooth pair. Keeping the x/z wings makes the
// other four boundaries rough, and the resulting code has exactly one logical qubit.
inline LatticeGeometry build_rhombic_open(int L) {
    if (L < 2) throw std::invalid_argument("rhombic-open needs L >= 2");
    detail::Builder b{Family::rhombic_open, L, false};
    auto center_ok = [&](const Coord& c) {
        if (!is_rhombic_center(c)) return false;
        int a = (c[0] - 1) / 2, bb = (c[1] - 1) / 2, cc = (c[2] - 1) / 2;
        return a >= 0 && a <= L - 2 && bb >= 0 && bb <= L && cc >= 0 && cc <= L - 1;
    };
    auto corner_ok = [&](const Coord& c) {
        int x = c[0] / 2, y = c[1] / 2, z = c[2] / 2;
        return x >= 0 && x <= L - 1 && y > 0 && y < L + 1 && z > 0 && z < L;
    };
    for (int a = 0; a <= L - 2; ++a)
        for (int bb = 0; bb <= L; ++bb)
            for (int cc = 0; cc <= L - 1; ++cc) {
                if ((a + bb + cc) % 2 != 1) continue;
                Coord c{2 * a + 1, 2 * bb + 1, 2 * cc + 1};
                bool any = false;
                for (int dx : {-1, 1})
                    for (int dy : {-1, 1})
                        for (int dz : {-1, 1}) {
                            Coord u = c + Coord{dx, dy, dz};
                            if (corner_ok(u)) {
                                b.verts.emplace(u, VertexKind::corner);
                                any = true;
                            }
                        }
                if (any) b.verts.emplace(c, VertexKind::center);
            }
    for (auto& [c, k] : b.verts) {
        if (k != VertexKind::center) continue;
        for (int dx : {-1, 1})
            for (int dy : {-1, 1})
                for (int dz : {-1, 1}) {
                    Coord u = c + Coord{dx, dy, dz};
                    if (corner_ok(u)) b.add_edge(u, c);
                }
    }
    // any corner the deletion rules retain must carry an edge
    for (int x = 0; x <= L - 1; ++x)
        for (int y = 1; y <= L; ++y)
            for (int z = 1; z <= L - 1; ++z)
                if (!b.verts.count(Coord{2 * x, 2 * y, 2 * z}))
                    throw std::runtime_error("rhombic-open: isolated corner survives deletion");
    // faces per cubic edge of the region
    const int ext[3] = {L - 1, L + 1, L};
    for (int k = 0; k < 3; ++k)
        for (int x = 0; x <= ext[0] - (k == 0); ++x)
            for (int y = 0; y <= ext[1] - (k == 1); ++y)
                for (int z = 0; z <= ext[2] - (k == 2); ++z) {
                    Coord u{2 * x, 2 * y, 2 * z};
                    Coord v = u;
                    v[k] += 2;
                    auto ctr = detail::rhombic_edge_centers(u, k, center_ok);
                    std::sort(ctr.begin(), ctr.end());
                    detail::Builder::ProtoFace pf;
                    pf.axis = static_cast<int8_t>(k);
                    pf.anchor = u;
                    std::vector<Coord> ideal{u, ctr.size() > 0 ? ctr[0] : Coord{},
                                             v, ctr.size() > 1 ? ctr[1] : Coord{}};
                    std::vector<bool> present{corner_ok(u), ctr.size() > 0, corner_ok(v), ctr.size() > 1};
                    for (int i = 0; i < 4; ++i) {
                        int j = (i + 1) % 4;
                        if (present[i] && present[j] && b.has_edge(ideal[i], ideal[j]))
                            pf.edges.push_back(detail::Builder::canon(ideal[i], ideal[j]));
                    }
                    if (pf.edges.empty()) continue;
                    int ncorn = (present[0] ? 1 : 0) + (present[2] ? 1 : 0);
                    if (k == 1 && ncorn < 2) continue;  // excluded smooth-axis wing
                    for (int i = 0; i < 4; ++i) {
                        if (!present[i]) continue;
                        bool used = false;
                        for (auto& pr : pf.edges)
                            if (pr.first == ideal[i] || pr.second == ideal[i]) used = true;
                        if (used) pf.cycle.push_back(ideal[i]);
                    }
                    b.faces.emplace(std::make_pair(pf.axis, u), std::move(pf));
                }
    // complete interior cells (all 12 faces with their 4 edges)
    for (int a = 0; a <= L - 2; ++a)
        for (int bb = 0; bb <= L; ++bb)
            for (int cc = 0; cc <= L - 1; ++cc) {
                if ((a + bb + cc) % 2 != 0) continue;
                std::vector<std::pair<int8_t, Coord>> fk;
                bool ok = true;
                for (int k = 0; k < 3 && ok; ++k)
                    for (int da : {0, 1})
                        for (int db : {0, 1}) {
                            Coord w{a, bb, cc};
                            w[(k + 1) % 3] += da;
                            w[(k + 2) % 3] += db;
                            auto it = b.faces.find({static_cast<int8_t>(k),
                                                    Coord{2 * w[0], 2 * w[1], 2 * w[2]}});
                            if (it == b.faces.end() || it->second.edges.size() != 4) {
                                ok = false;
                                break;
                            }
                            fk.emplace_back(static_cast<int8_t>(k), Coord{2 * w[0], 2 * w[1], 2 * w[2]});
                        }
                if (ok) b.cells.emplace_back(Coord{2 * a, 2 * bb, 2 * cc}, std::move(fk));
            }
    LatticeGeometry g = b.finish();
    // boundary bands: the outermost centre layer plus the adjacent corner layer
    for (size_t v = 0; v < g.n_vertices(); ++v) {
        const Coord& c = g.vcoord[v];
        bool rough = c[0] <= 1 || c[0] >= 2 * L - 3 || c[2] <= 2 || c[2] >= 2 * L - 2;
        bool smooth = c[1] <= 2 || c[1] >= 2 * L;
        g.vlabel[v] = rough ? Label::rough : (smooth ? Label::smooth : Label::bulk);
    }
    for (size_t e = 0; e < g.n_edges(); ++e) {
        Label a = g.vlabel[g.evert[e][0]], c = g.vlabel[g.evert[e][1]];
        g.elabel[e] = (a == Label::rough || c == Label::rough)
                          ? Label::rough
                          : ((a == Label::smooth || c == Label::smooth) ? Label::smooth : Label::bulk);
    }
    for (size_t f = 0; f < g.n_faces(); ++f) {
        if (g.fedge[f].size() < 4)
            g.flabel[f] = Label::rough;
        else {
            bool sm = false;
            for (int32_t v : g.fvert[f]) sm = sm || g.vlabel[v] == Label::smooth;
            g.flabel[f] = sm ? Label::smooth : Label::bulk;
        }
    }
    return g;
}

// --- cubic lattices -------------------------------------------------------------

inline LatticeGeometry build_cubic_periodic(int L) {
    // L=2 would wrap each plaquette ring onto two faces and put every edge in
    // eight faces instead of four
    if (L < 3) throw std::invalid_argument("cubic-periodic needs L >= 3");
    detail::Builder b{Family::cubic_periodic, L, true};
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
            for (int z = 0; z < L; ++z) b.verts.emplace(Coord{2 * x, 2 * y, 2 * z}, VertexKind::corner);
    for (int k = 0; k < 3; ++k)
        for (int x = 0; x < L; ++x)
            for (int y = 0; y < L; ++y)
                for (int z = 0; z < L; ++z) {
                    Coord u{2 * x, 2 * y, 2 * z};
                    Coord v = u;
                    v[k] += 2;
                    b.edges[detail::Builder::canon(b.wrap(u), b.wrap(v))] = static_cast<int8_t>(k);
                }
    for (int k = 0; k < 3; ++k) {
        int i = (k + 1) % 3, j = (k + 2) % 3;
        for (int x = 0; x < L; ++x)
            for (int y = 0; y < L; ++y)
                for (int z = 0; z < L; ++z) {
                    Coord u{2 * x, 2 * y, 2 * z};
                    Coord p1 = u, p2 = u, p3 = u;
                    p1[i] += 2;
                    p2[i] += 2;
                    p2[j] += 2;
                    p3[j] += 2;
                    detail::Builder::ProtoFace pf;
                    pf.axis = static_cast<int8_t>(k);
                    pf.anchor = u;
                    pf.cycle = {u, p1, p2, p3};
                    for (int t = 0; t < 4; ++t)
                        pf.edges.push_back(detail::Builder::canon(b.wrap(pf.cycle[t]),
                                                                  b.wrap(pf.cycle[(t + 1) % 4])));
                    b.faces.emplace(std::make_pair(pf.axis, u), std::move(pf));
                }
    }
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
            for (int z = 0; z < L; ++z) {
                std::vector<std::pair<int8_t, Coord>> fk;
                for (int k = 0; k < 3; ++k)
                    for (int d : {0, 1}) {
                        Coord w{x, y, z};
                        w[k] += d;
                        fk.emplace_back(static_cast<int8_t>(k),
                                        b.wrap({2 * w[0], 2 * w[1], 2 * w[2]}));
                    }
                b.cells.emplace_back(Coord{2 * x, 2 * y, 2 * z}, std::move(fk));
            }
    return b.finish();
}

// Supp. construction: region [0,L]x[0,L]x[0,L-1]; qubits and checks on all faces
// and edges except those lying inside the x=0,L or y=0,L planes.
inline LatticeGeometry build_cubic_open(int L) {
    if (L < 2) throw std::invalid_argument("cubic-open needs L >= 2");
    detail::Builder b{Family::cubic_open, L, false};
    auto edge_kept = [&](const Coord& u, const Coord& v) {
        for (int ax : {0, 1})
            for (int val : {0, 2 * L})
                if (u[ax] == val && v[ax] == val) return false;
        return true;
    };
    const int ext[3] = {L, L, L - 1};
    for (int k = 0; k < 3; ++k)
        for (int x = 0; x <= ext[0] - (k == 0); ++x)
            for (int y = 0; y <= ext[1] - (k == 1); ++y)
                for (int z = 0; z <= ext[2] - (k == 2); ++z) {
                    Coord u{2 * x, 2 * y, 2 * z};
                    Coord v = u;
                    v[k] += 2;
                    if (!edge_kept(u, v)) continue;
                    b.verts.emplace(u, VertexKind::corner);
                    b.verts.emplace(v, VertexKind::corner);
                    b.edges[detail::Builder::canon(u, v)] = static_cast<int8_t>(k);
                }
    for (int k = 0; k < 3; ++k) {
        int i = (k + 1) % 3, j = (k + 2) % 3;
        for (int x = 0; x <= ext[0] - (k != 0); ++x)
            for (int y = 0; y <= ext[1] - (k != 1); ++y)
                for (int z = 0; z <= ext[2] - (k != 2); ++z) {
                    Coord u{2 * x, 2 * y, 2 * z};
                    Coord p1 = u, p2 = u, p3 = u;
                    p1[i] += 2;
                    p2[i] += 2;
                    p2[j] += 2;
                    p3[j] += 2;
                    std::vector<Coord> cyc{u, p1, p2, p3};
                    bool in_removed_plane = false;
                    for (int ax : {0, 1})
                        for (int val : {0, 2 * L}) {
                            bool all = true;
                            for (auto& c : cyc) all = all && c[ax] == val;
                            in_removed_plane = in_removed_plane || all;
                        }
                    if (in_removed_plane) continue;
                    detail::Builder::ProtoFace pf;
                    pf.axis = static_cast<int8_t>(k);
                    pf.anchor = u;
                    for (int t = 0; t < 4; ++t) {
                        if (b.edges.count(detail::Builder::canon(cyc[t], cyc[(t + 1) % 4])))
                            pf.edges.push_back(detail::Builder::canon(cyc[t], cyc[(t + 1) % 4]));
                    }
                    if (pf.edges.empty()) continue;
                    for (auto& c : cyc) {
                        bool used = false;
                        for (auto& pr : pf.edges)
                            if (pr.first == c || pr.second == c) used = true;
                        if (used) pf.cycle.push_back(c);
                    }
                    b.faces.emplace(std::make_pair(pf.axis, u), std::move(pf));
                }
    }
    for (int a = 1; a <= L - 2; ++a)
        for (int bb = 1; bb <= L - 2; ++bb)
            for (int cc = 0; cc <= L - 2; ++cc) {
                std::vector<std::pair<int8_t, Coord>> fk;
                bool ok = true;
                for (int k = 0; k < 3 && ok; ++k)
                    for (int d : {0, 1}) {
                        Coord w{a, bb, cc};
                        w[k] += d;
                        auto it = b.faces.find({static_cast<int8_t>(k),
                                                Coord{2 * w[0], 2 * w[1], 2 * w[2]}});
                        if (it == b.faces.end() || it->second.edges.size() != 4) {
                            ok = false;
                            break;
                        }
                        fk.emplace_back(static_cast<int8_t>(k), Coord{2 * w[0], 2 * w[1], 2 * w[2]});
                    }
                if (ok) b.cells.emplace_back(Coord{2 * a, 2 * bb, 2 * cc}, std::move(fk));
            }
    LatticeGeometry g = b.finish();
    for (size_t v = 0; v < g.n_vertices(); ++v) {
        const Coord& c = g.vcoord[v];
        bool rough = c[0] == 0 || c[0] == 2 * L || c[1] == 0 || c[1] == 2 * L;
        bool smooth = c[2] == 0 || c[2] == 2 * (L - 1);
        g.vlabel[v] = rough ? Label::rough : (smooth ? Label::smooth : Label::bulk);
    }
    for (size_t e = 0; e < g.n_edges(); ++e) {
        Label a = g.vlabel[g.evert[e][0]], c = g.vlabel[g.evert[e][1]];
        g.elabel[e] = (a == Label::rough || c == Label::rough)
                          ? Label::rough
                          : ((a == Label::smooth || c == Label::smooth) ? Label::smooth : Label::bulk);
    }
    for (size_t f = 0; f < g.n_faces(); ++f) {
        if (g.fedge[f].size() < 4)
            g.flabel[f] = Label::rough;
        else {
            bool sm = false;
            for (int32_t v : g.fvert[f]) sm = sm || g.vlabel[v] == Label::smooth;
            g.flabel[f] = sm ? Label::smooth : Label::bulk;
        }
    }
    return g;
}

inline LatticeGeometry build_lattice(Family f, int L) {
    switch (f) {
        case Family::rhombic_periodic: return build_rhombic_periodic(L);
        case Family::rhombic_open: return build_rhombic_open(L);
        case Family::cubic_periodic: return build_cubic_periodic(L);
        case Family::cubic_open: return build_cubic_open(L);
    }
    throw std::logic_error("bad family");
}

// --- logical operator representatives -------------------------------------------

// Constructive representatives: coordinate-plane membranes (Z) and dual zigzag
// strings (X), verified afterwards by the trivial-syndrome and pairing-parity
// checks plus commutation with every enumerated cell.
inline void attach_logical_representatives(LatticeGeometry& g) {
    // face index lookup by (axis, anchor)
    std::map<std::pair<int, Coord>, int32_t> bykey;
    for (size_t f = 0; f < g.n_faces(); ++f)
        bykey[{g.faxis[f], g.fanchor[f]}] = static_cast<int32_t>(f);
    auto face_at = [&](int axis, Coord a) {
        auto it = bykey.find({axis, g.wrap(a)});
        return it == bykey.end() ? -1 : it->second;
    };
    const int L = g.L;
    g.logical_z.clear();
    g.logical_x.clear();

    auto corner_coords = [&](size_t f) {
        std::vector<Coord> out;
        for (int32_t v : g.fvert[f])
            if (g.vkind[v] == VertexKind::corner) out.push_back(g.vcoord[v]);
        return out;
    };

    if (g.family == Family::rhombic_periodic || g.family == Family::rhombic_open) {
        bool periodic = g.family == Family::rhombic_periodic;
        std::vector<int> axes;
        if (periodic)
            axes = {0, 1, 2};
        else
            axes = {1};  // the open lattice's single membrane is normal to y
        for (int ax : axes) {
            int target = periodic ? 0 : 2 * ((L + 2) / 2);
            QubitSet mem(g.n_faces());
            for (size_t f = 0; f < g.n_faces(); ++f) {
                auto cc = corner_coords(f);
                if (cc.empty()) continue;
                bool all = true;
                for (auto& c : cc) all = all && c[ax] == target;
                if (all) mem.set(f);
            }
            g.logical_z.push_back(std::move(mem));
        }
        if (periodic) {
            for (int ax : axes) {
                int ax2 = (ax + 1) % 3, ax3 = (ax + 2) % 3;
                QubitSet tube(g.n_faces());
                for (int j = 0; j < L; ++j) {
                    Coord corner{0, 0, 0};
                    corner[ax] = 2 * ((j + 1) % L);
                    corner[ax2] = 2;
                    corner[ax3] = 0;
                    int32_t f = face_at(ax3, corner);
                    if (f < 0) throw std::logic_error("tube face missing");
                    tube.set(static_cast<size_t>(f));
                }
                g.logical_x.push_back(std::move(tube));
            }
        } else {
            // dual zigzag along y between the two smooth boundaries
            QubitSet tube(g.n_faces());
            int prev_a = -1;
            for (int bb = 0; bb <= L; ++bb) {
                int a = bb % 2;  // keep (a+b+c) even with c=0
                if (prev_a >= 0) {
                    int xcommon = std::max(prev_a, a);
                    int32_t f = face_at(2, Coord{2 * xcommon, 2 * bb, 0});
                    if (f < 0) throw std::logic_error("open tube face missing");
                    tube.flip(static_cast<size_t>(f));
                }
                prev_a = a;
            }
            g.logical_x.push_back(std::move(tube));
        }
    } else {
        bool periodic = g.family == Family::cubic_periodic;
        std::vector<int> axes = periodic ? std::vector<int>{0, 1, 2} : std::vector<int>{2};
        for (int ax : axes) {
            QubitSet mem(g.n_faces());
            for (size_t f = 0; f < g.n_faces(); ++f)
                if (g.faxis[f] == ax && g.fanchor[f][ax] == 0) mem.set(f);
            g.logical_z.push_back(std::move(mem));
            QubitSet tube(g.n_faces());
            for (int c = 0; c < L; ++c) {
                Coord a{0, 0, 0};
                if (!periodic) a = {2 * (L / 2), 2 * (L / 2), 0};
                a[ax] = 2 * c;
                int32_t f = face_at(ax, a);
                if (f < 0) throw std::logic_error("cubic tube face missing");
                tube.set(static_cast<size_t>(f));
            }
            g.logical_x.push_back(std::move(tube));
        }
    }

    // verification: trivial syndrome, commutation with cells, pairing parity
    for (auto& z : g.logical_z)
        if (g.boundary_map(z).any()) throw std::logic_error("logical Z has nonzero syndrome");
    for (auto& x : g.logical_x)
        for (auto& cell : g.cells) {
            int par = 0;
            for (int32_t f : cell) par ^= x.get(static_cast<size_t>(f)) ? 1 : 0;
            if (par) throw std::logic_error("logical X anticommutes with a cell");
        }
    for (size_t i = 0; i < g.logical_z.size(); ++i)
        for (size_t j = 0; j < g.logical_x.size(); ++j)
            if (g.logical_z[i].overlap_parity(g.logical_x[j]) != (i == j ? 1 : 0))
                throw std::logic_error("logical pairing parity wrong");
}

inline LatticeGeometry make_lattice(Family f, int L) {
    LatticeGeometry g = build_lattice(f, L);
    attach_logical_representatives(g);
    return g;
}

// --- text export -----------------------------------------------------------------

inline void LatticeGeometry::write_export(std::ostream& os) const {
    os << "lattice " << family_name(family) << " L " << L << "\n";
    for (size_t v = 0; v < n_vertices(); ++v) {
        const Coord& c = vcoord[v];
        os << "vertex " << v << " " << c[0] << " " << c[1] << " " << c[2] << " "
           << label_name(vlabel[v]) << "\n";
    }
    for (size_t e = 0; e < n_edges(); ++e)
        os << "edge " << e << " " << evert[e][0] << " " << evert[e][1] << "\n";
    for (size_t f = 0; f < n_faces(); ++f) {
        os << "face " << f << " " << fvert[f].size();
        for (int32_t v : fvert[f]) os << " " << v;
        os << " " << fedge[f].size();
        for (int32_t e : fedge[f]) os << " " << e;
        os << "\n";
    }
}

}  // namespace sweepdec
