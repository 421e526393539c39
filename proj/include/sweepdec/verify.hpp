#pragma once

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "sweepdec/decoder.hpp"
#include "sweepdec/order.hpp"
#include "sweepdec/rng.hpp"
#include "sweepdec/rule.hpp"

// Property-check routines shared by the unit tests, the acceptance suite and the
// CLI selftest. Every check throws std::runtime_error with a description on the
// first violation.

namespace sweepdec {

struct CheckError : std::runtime_error {
    explicit CheckError(const std::string& m) : std::runtime_error(m) {}
};

namespace verify_detail {

inline void fail(const std::string& msg) { throw CheckError(msg); }

}  // namespace verify_detail

// Random error supported on faces within a small coordinate ball.
inline QubitSet sample_local_error(const LatticeGeometry& lat, Rng& rng, int radius_doubled,
                                   int max_faces) {
    QubitSet err(lat.n_faces());
    for (int attempt = 0; attempt < 100; ++attempt) {
        size_t seed_v = rng.below(lat.n_vertices());
        Coord base = lat.vcoord[seed_v];
        std::vector<int32_t> pool;
        for (size_t f = 0; f < lat.n_faces(); ++f) {
            bool inside = true;
            for (int32_t v : lat.fvert[f]) {
                Coord c = lat.lift_near(base, lat.vcoord[v]);
                for (int i = 0; i < 3; ++i)
                    inside = inside && std::abs(c[i] - base[i]) <= radius_doubled;
            }
            if (inside) pool.push_back(static_cast<int32_t>(f));
        }
        if (pool.empty()) continue;
        int n = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_faces)));
        for (int i = 0; i < n; ++i) err.flip(static_cast<size_t>(pool[rng.below(pool.size())]));
        if (err.any()) return err;
    }
    verify_detail::fail("sample_local_error: no usable ball found");
    return err;
}

inline std::vector<int32_t> syndrome_vertices(const LatticeGeometry& lat, const CheckSet& s) {
    std::set<int32_t> vs;
    s.for_each_set([&](size_t e) {
        vs.insert(lat.evert[e][0]);
        vs.insert(lat.evert[e][1]);
    });
    return {vs.begin(), vs.end()};
}

// ---------------------------------------------------------------------------
// Rule-table invariants (causal-code condition 5 plus the build contracts).

inline void check_rule_table(const LatticeGeometry& lat, const RuleTable& t) {
    for (size_t v = 0; v < lat.n_vertices(); ++v) {
        const auto& fe = t.ctx.future_edges[v];
        const auto& ff = t.ctx.future_faces[v];
        for (uint32_t pat = 0; pat < (uint32_t(1) << fe.size()); ++pat) {
            const RuleTable::Entry& ent = t.entries[t.entry_base[v] + pat];
            if (pat == 0 && (ent.count || ent.dead))
                verify_detail::fail("empty pattern must map to no action");
            if (ent.relaxed && (!ent.dead || lat.vlabel[v] == Label::bulk))
                verify_detail::fail("relaxed entries only exist at condition-5 boundary sites");
            if (!ent.count) continue;
            for (uint16_t c = 0; c < ent.count; ++c) {
                std::vector<Coord> ppts;
                uint32_t bnd = 0;
                for (uint8_t i = 0; i < ent.arity; ++i) {
                    int32_t f = t.cand_faces[ent.first + size_t(c) * ent.arity + i];
                    if (std::find(ff.begin(), ff.end(), f) == ff.end())
                        verify_detail::fail("phi uses a non-future face");
                    for (size_t j = 0; j < fe.size(); ++j)
                        for (int32_t e : lat.fedge[f])
                            if (e == fe[j]) bnd ^= uint32_t(1) << j;
                    for (int32_t e : lat.fedge[f]) {
                        bool at_v = lat.evert[e][0] == static_cast<int32_t>(v) ||
                                    lat.evert[e][1] == static_cast<int32_t>(v);
                        bool in_future =
                            std::find(fe.begin(), fe.end(), e) != fe.end();
                        if (at_v && !in_future)
                            verify_detail::fail("phi boundary leaves the future edges");
                    }
                    for (const Coord& c : lat.face_lifts(f, static_cast<int32_t>(v)))
                        ppts.push_back(c);
                }
                if (bnd != pat) verify_detail::fail("phi does not locally match the pattern");
                if (ent.relaxed) continue;  // boundary repair: only the local match holds
                std::vector<Coord> spts;
                for (size_t j = 0; j < fe.size(); ++j)
                    if (pat & (uint32_t(1) << j)) {
                        spts.push_back(lat.lift_near(lat.vcoord[v], lat.vcoord[lat.evert[fe[j]][0]]));
                        spts.push_back(lat.lift_near(lat.vcoord[v], lat.vcoord[lat.evert[fe[j]][1]]));
                    }
                Dir om = t.omega;
                if (inf_coords(lat.family, ppts, om) != inf_coords(lat.family, spts, om) ||
                    sup_coords(lat.family, ppts, om) != sup_coords(lat.family, spts, om))
                    verify_detail::fail("phi diamond differs from the local syndrome diamond");
            }
        }
    }
    for (int32_t v : t.dead_vertices)
        if (lat.vlabel[v] == Label::bulk)
            verify_detail::fail("rule-dead vertex in the bulk");
}

// ---------------------------------------------------------------------------
// The per-boundary direction table of the open rhombic lattice.

struct BoundaryBand {
    std::string name;
    std::function<bool(const Coord&)> contains;
    std::function<bool(const Dir&)> allowed;
};

inline std::vector<BoundaryBand> rhombic_open_bands(int L) {
    auto mk = [](std::string n, std::function<bool(const Coord&)> c,
                 std::function<bool(const Dir&)> a) {
        return BoundaryBand{std::move(n), std::move(c), std::move(a)};
    };
    return {
        mk("x-min", [=](const Coord& c) { return c[0] <= 1; },
           [](const Dir& w) { return w[0] == -1; }),
        mk("x-max", [=](const Coord& c) { return c[0] >= 2 * L - 3; },
           [](const Dir& w) { return w[0] == 1; }),
        mk("y-min", [=](const Coord& c) { return c[1] <= 2; },
           [](const Dir& w) { return w[1] == 1; }),
        mk("y-max", [=](const Coord& c) { return c[1] >= 2 * L; },
           [](const Dir& w) { return w[1] == -1; }),
        mk("z-min", [=](const Coord& c) { return c[2] <= 2; },
           [](const Dir& w) { return w[2] == -1; }),
        mk("z-max", [=](const Coord& c) { return c[2] >= 2 * L - 2; },
           [](const Dir& w) { return w[2] == 1; }),
    };
}

// Reproduces the six-boundary direction table by exhaustive per-vertex checking:
//  - no rule-dead vertex outside the bands,
//  - every dead vertex lies in a band whose allowed set excludes the direction,
//  - for every (band, disallowed direction) there is a dead witness,
//  - for every (band, allowed direction) no vertex exclusively on that band is dead.
inline void check_direction_table(const LatticeGeometry& lat,
                                  const std::vector<RuleTable>& tables) {
    if (lat.family != Family::rhombic_open)
        verify_detail::fail("direction table is defined for the open rhombic lattice");
    auto bands = rhombic_open_bands(lat.L);
    for (const Dir& om : all_dirs()) {
        const RuleTable& t = tables[dir_index(om)];
        for (int32_t v : t.dead_vertices) {
            const Coord& c = lat.vcoord[v];
            bool explained = false, in_any = false;
            for (auto& b : bands) {
                if (!b.contains(c)) continue;
                in_any = true;
                explained = explained || !b.allowed(om);
            }
            if (!in_any) verify_detail::fail("dead vertex off every boundary band");
            if (!explained) verify_detail::fail("dead vertex on " + om.str() +
                                                " not explained by any disallowed band");
        }
        for (auto& b : bands) {
            if (b.allowed(om)) {
                for (int32_t v : t.dead_vertices) {
                    const Coord& c = lat.vcoord[v];
                    bool exclusive = b.contains(c);
                    for (auto& b2 : bands)
                        if (&b2 != &b && b2.contains(c)) exclusive = false;
                    if (exclusive)
                        verify_detail::fail("allowed direction " + om.str() +
                                            " has a dead vertex exclusively on " + b.name);
                }
            } else {
                bool witness = false;
                for (int32_t v : t.dead_vertices) witness = witness || b.contains(lat.vcoord[v]);
                if (!witness)
                    verify_detail::fail("disallowed direction " + om.str() +
                                        " has no dead witness on " + b.name);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Causal-code condition audit (conditions 1-4; condition 5 is the rule table).

inline void check_causal_conditions(const LatticeGeometry& lat,
                                    const std::vector<RuleTable>& tables, uint64_t seed,
                                    int n_errors = 500, int n_sets = 100) {
    Rng rng(seed);
    bool open = !family_is_periodic(lat.family);
    for (const Dir& om : all_dirs()) {
        // condition 1: random local sets have an infimum and supremum
        for (int t = 0; t < n_sets; ++t) {
            size_t seed_v = rng.below(lat.n_vertices());
            Coord base = lat.vcoord[seed_v];
            std::vector<Coord> pts{base};
            for (int32_t e : lat.vedges[seed_v]) {
                int32_t w = lat.evert[e][0] == static_cast<int32_t>(seed_v) ? lat.evert[e][1]
                                                                            : lat.evert[e][0];
                if (rng.bernoulli(0.5)) pts.push_back(lat.lift_near(base, lat.vcoord[w]));
            }
            Coord lo = inf_coords(lat.family, pts, om);
            Coord hi = sup_coords(lat.family, pts, om);
            for (const Coord& p : pts) {
                if (!coord_leq(lat.family, lo, p, om) || !coord_leq(lat.family, p, hi, om))
                    verify_detail::fail("inf/sup do not bound the sampled set");
            }
        }
        // condition 3: every complete qubit contains its infimum
        for (size_t f = 0; f < lat.n_faces(); ++f) {
            if (open && lat.fedge[f].size() < 4) continue;
            auto pts = lat.face_lifts(static_cast<int32_t>(f), lat.fvert[f][0]);
            Coord inf = inf_coords(lat.family, pts, om);
            if (std::find(pts.begin(), pts.end(), inf) == pts.end())
                verify_detail::fail("complete face does not contain its infimum");
        }
    }
    // condition 2: qubits and checks are nonempty finite location subsets
    for (size_t f = 0; f < lat.n_faces(); ++f)
        if (lat.fvert[f].empty()) verify_detail::fail("face with no locations");
    for (size_t e = 0; e < lat.n_edges(); ++e)
        if (lat.evert[e][0] == lat.evert[e][1]) verify_detail::fail("degenerate check");
    // condition 4: syndrome evaluation is local
    for (int t = 0; t < n_errors; ++t) {
        QubitSet err(lat.n_faces());
        int n = 1 + static_cast<int>(rng.below(10));
        for (int i = 0; i < n; ++i) err.flip(rng.below(lat.n_faces()));
        CheckSet syn = lat.boundary_map(err);
        for (size_t v = 0; v < lat.n_vertices(); ++v) {
            QubitSet local(lat.n_faces());
            for (int32_t f : lat.restrict_error(err, static_cast<int32_t>(v)))
                local.set(static_cast<size_t>(f));
            CheckSet ls = lat.boundary_map(local);
            for (int32_t e : lat.vedges[v])
                if (ls.get(static_cast<size_t>(e)) != syn.get(static_cast<size_t>(e)))
                    verify_detail::fail("syndrome evaluation is not local");
        }
    }
    // condition 5: tables verified entry-by-entry, dead sites only at boundaries
    for (const Dir& om : all_dirs()) check_rule_table(lat, tables[dir_index(om)]);
}

// ---------------------------------------------------------------------------
// Lemma: support, propagation, removal under a fixed sweep direction.

// Longest-chain length from each diamond vertex to the supremum (chains are paths
// in the covering DAG, whose edges are exactly the lattice edges).
inline std::map<Coord, int> chain_lengths_to_sup(Family fam, const std::vector<Coord>& dia,
                                                 const Coord& sup, const Dir& om) {
    std::vector<Coord> order(dia);
    std::sort(order.begin(), order.end(), [&](const Coord& a, const Coord& b) {
        return dot(om, a) > dot(om, b);
    });
    std::set<Coord> inside(dia.begin(), dia.end());
    std::map<Coord, int> len;
    for (const Coord& c : order) {
        if (c == sup) {
            len[c] = 0;
            continue;
        }
        int best = -1;
        for (const Coord& nxt : future_step_coords(fam, c, om)) {
            if (!inside.count(nxt)) continue;
            auto it = len.find(nxt);
            if (it != len.end() && it->second >= 0) best = std::max(best, it->second + 1);
        }
        len[c] = best;  // -1: the supremum is unreachable from c (cannot happen in a diamond)
    }
    return len;
}

struct Lemma1Options {
    int n_errors = 500;
    int radius = 3;
    int max_faces = 4;
    uint64_t seed = 7;
};

inline void check_sweep_properties(const LatticeGeometry& lat, const std::vector<RuleTable>& tables,
                                   const Lemma1Options& opt = {}) {
    Rng rng(opt.seed);
    for (int trial = 0; trial < opt.n_errors; ++trial) {
        const Dir om = all_dirs()[rng.below(8)];
        const RuleTable& table = tables[dir_index(om)];
        QubitSet err = sample_local_error(lat, rng, opt.radius, opt.max_faces);
        CheckSet sigma = lat.boundary_map(err);
        if (!sigma.any()) continue;
        auto verts = syndrome_vertices(lat, sigma);
        auto dia = causal_diamond_vertices(lat, om, verts);
        if (!dia) continue;  // not local enough on the torus; resample
        std::set<int32_t> dia_set(dia->begin(), dia->end());
        // lifted diamond coordinates for the chain-length monotone
        auto lifted = lift_local_patch(lat, verts);
        if (!lifted) continue;
        Coord sup = sup_coords(lat.family, *lifted, om);
        Coord lo = inf_coords(lat.family, *lifted, om);
        auto dia_coords = diamond_coords(lat.family, lo, sup, om);
        auto chain = chain_lengths_to_sup(lat.family, dia_coords, sup, om);
        // map lattice vertex -> lifted coordinate inside the patch
        Coord base = (*lifted)[0];
        auto lift_of = [&](int32_t v) { return lat.lift_near(base, lat.vcoord[v]); };

        auto dists0 = syndrome_graph_distances(lat, sigma);
        int bound = 0;
        sigma.for_each_set([&](size_t e) {
            for (int32_t v : {lat.evert[e][0], lat.evert[e][1]}) {
                auto it = chain.find(lift_of(v));
                if (it == chain.end() || it->second < 0)
                    verify_detail::fail("syndrome vertex outside its own diamond");
                bound = std::max(bound, it->second);
            }
        });

        CheckSet cur = sigma;
        int prev_monotone = std::numeric_limits<int>::max();
        for (int T = 1; T <= bound + 2; ++T) {
            if (!cur.any()) break;
            // support: the syndrome stays within the causal diamond
            cur.for_each_set([&](size_t e) {
                if (!dia_set.count(lat.evert[e][0]) || !dia_set.count(lat.evert[e][1]))
                    verify_detail::fail("support: syndrome left the causal diamond");
            });
            // monotone: longest chain to sup strictly decreases
            int mono = 0;
            bool ok = true;
            cur.for_each_set([&](size_t e) {
                for (int32_t v : {lat.evert[e][0], lat.evert[e][1]}) {
                    auto it = chain.find(lift_of(v));
                    if (it == chain.end() || it->second < 0)
                        ok = false;
                    else
                        mono = std::max(mono, it->second);
                }
            });
            if (!ok) verify_detail::fail("monotone: syndrome vertex without chain value");
            if (mono >= prev_monotone)
                verify_detail::fail("monotone failed to decrease at T=" + std::to_string(T));
            prev_monotone = mono;
            QubitSet phi = sweep_step(lat, table, cur, RuleVariant::random_min, opt.seed, T);
            cur ^= lat.boundary_map(phi);
            // propagation: live syndrome stays within graph distance T of the start
            cur.for_each_set([&](size_t e) {
                if (dists0[e] < 0 || dists0[e] > T)
                    verify_detail::fail("propagation bound violated");
            });
        }
        if (cur.any()) verify_detail::fail("removal bound exceeded");
    }
}

// Lemma: for a local syndrome there is a direction whose causal region contains
// no rule-dead vertex.
inline void check_trailing_witness(const LatticeGeometry& lat,
                                   const std::vector<RuleTable>& tables, int n_syndromes,
                                   uint64_t seed) {
    Rng rng(seed);
    for (int t = 0; t < n_syndromes; ++t) {
        QubitSet err = sample_local_error(lat, rng, 3, 4);
        CheckSet sigma = lat.boundary_map(err);
        if (!sigma.any()) continue;
        auto verts = syndrome_vertices(lat, sigma);
        bool witness = false;
        for (const Dir& om : all_dirs()) {
            auto region = causal_region(lat, om, verts);
            const RuleTable& tab = tables[dir_index(om)];
            bool clean = true;
            for (int32_t v : region) clean = clean && !tab.vertex_dead(v);
            if (clean) {
                witness = true;
                break;
            }
        }
        if (!witness) verify_detail::fail("no direction makes the causal region trailing-capable");
    }
}

}  // namespace sweepdec
