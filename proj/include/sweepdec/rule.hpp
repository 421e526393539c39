#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sweepdec/bitvec.hpp"
#include "sweepdec/order.hpp"
#include "sweepdec/rng.hpp"

namespace sweepdec {

enum class RuleVariant : uint8_t {
    random_min,  // uniform among minimum-cardinality candidates (default)
    first_min,   // fixed priority: lowest candidate index
};

inline const char* variant_name(RuleVariant v) {
    return v == RuleVariant::random_min ? "random" : "first";
}
inline RuleVariant variant_from_name(const std::string& s) {
    if (s == "random") return RuleVariant::random_min;
    if (s == "first") return RuleVariant::first_min;
    throw std::invalid_argument("unknown rule variant: " + s);
}

// Precomputed local rule: for every vertex and every syndrome bit pattern over its
// future edges, the minimum-cardinality face subsets phi with [d(phi)]|v = pattern.
// Candidates that also preserve the causal diamond are preferred; in the bulk they
// always exist (condition 5), and a bulk pattern without one fails the build. At
// boundary vertices a pattern may only admit diamond-enlarging repairs (the entry
// is then marked relaxed: this is how strings terminate on rough boundaries), or
// no action at all; either way the vertex enters the condition-5 dead catalogue
// that the per-boundary direction table describes.
struct RuleTable {
    struct Entry {
        uint32_t first = 0;  // into cand_faces, candidates stored contiguously
        uint16_t count = 0;  // number of candidates
        uint8_t arity = 0;   // faces per candidate
        uint8_t relaxed = 0;  // local match only; the causal diamond grows
        uint8_t dead = 0;     // trailing pattern with no diamond-preserving phi
    };

    Dir omega;
    SweepContext ctx;
    std::vector<uint32_t> entry_base;  // per vertex, into entries (2^k slots)
    std::vector<Entry> entries;
    std::vector<int32_t> cand_faces;
    std::vector<int32_t> dead_vertices;  // sorted, unique

    bool vertex_dead(int32_t v) const {
        return std::binary_search(dead_vertices.begin(), dead_vertices.end(), v);
    }
};

namespace rule_detail {

struct LocalGeom {
    const LatticeGeometry& lat;
    Coord base;

    Coord lift(int32_t v) const { return lat.lift_near(base, lat.vcoord[v]); }

    std::pair<Coord, Coord> diamond_key(const std::vector<Coord>& pts, const Dir& om) const {
        return {inf_coords(lat.family, pts, om), sup_coords(lat.family, pts, om)};
    }
};

}  // namespace rule_detail

inline RuleTable build_rule_table(const LatticeGeometry& lat, const Dir& om) {
    RuleTable t;
    t.omega = om;
    t.ctx = build_sweep_context(lat, om);
    size_t nv = lat.n_vertices();
    t.entry_base.resize(nv);
    for (size_t v = 0; v < nv; ++v) {
        const auto& fe = t.ctx.future_edges[v];
        const auto& ff = t.ctx.future_faces[v];
        const int k = static_cast<int>(fe.size());
        if (k > 8 || ff.size() > 20) throw std::logic_error("future degree out of range");
        t.entry_base[v] = static_cast<uint32_t>(t.entries.size());
        t.entries.resize(t.entries.size() + (size_t(1) << k));
        rule_detail::LocalGeom geo{lat, lat.vcoord[v]};

        // local boundary of each incident face, over incident-edge positions
        const auto& inc = lat.vedges[v];
        auto edge_pos = [&](int32_t e) {
            for (size_t i = 0; i < inc.size(); ++i)
                if (inc[i] == e) return static_cast<int>(i);
            return -1;
        };
        std::vector<uint32_t> gens;
        for (int32_t f : lat.vfaces[v]) {
            uint32_t m = 0;
            for (int32_t e : lat.fedge[f]) {
                int p = edge_pos(e);
                if (p >= 0) m |= uint32_t(1) << p;
            }
            if (m) gens.push_back(m);
        }
        // F2 span of the local face boundaries = the syndrome restrictions
        // realizable at v (by the locality of syndrome evaluation)
        std::vector<uint32_t> basis;
        for (uint32_t gmask : gens) {
            uint32_t cur = gmask;
            for (uint32_t b : basis) cur = std::min(cur, cur ^ b);
            if (cur) basis.push_back(cur);
        }
        std::vector<uint32_t> span{0};
        for (uint32_t b : basis) {
            size_t n = span.size();
            for (size_t i = 0; i < n; ++i) span.push_back(span[i] ^ b);
        }
        uint32_t future_mask = 0;
        std::vector<int> fe_pos(fe.size());
        for (size_t i = 0; i < fe.size(); ++i) {
            int p = edge_pos(fe[i]);
            fe_pos[i] = p;
            future_mask |= uint32_t(1) << p;
        }

        bool v_dead = false;
        for (uint32_t pat_inc : span) {
            if (!pat_inc || (pat_inc & ~future_mask)) continue;  // not a trailing pattern
            // map to future-edge bit order
            uint32_t pat = 0;
            for (size_t i = 0; i < fe.size(); ++i)
                if (pat_inc & (uint32_t(1) << fe_pos[i])) pat |= uint32_t(1) << i;

            // target diamond from the pattern's edge endpoints
            std::vector<Coord> spts;
            for (size_t i = 0; i < fe.size(); ++i)
                if (pat & (uint32_t(1) << i)) {
                    int32_t e = fe[i];
                    spts.push_back(geo.lift(lat.evert[e][0]));
                    spts.push_back(geo.lift(lat.evert[e][1]));
                }
            auto want = geo.diamond_key(spts, om);

            // per-face local boundary in future-edge bit order
            std::vector<uint32_t> fb(ff.size());
            for (size_t j = 0; j < ff.size(); ++j) {
                uint32_t m = 0;
                for (int32_t e : lat.fedge[ff[j]])
                    for (size_t i = 0; i < fe.size(); ++i)
                        if (fe[i] == e) m |= uint32_t(1) << i;
                fb[j] = m;
            }

            RuleTable::Entry& ent = t.entries[t.entry_base[v] + pat];
            // all face subsets with matching local boundary, grouped by cardinality
            std::vector<std::vector<uint32_t>> by_size(ff.size() + 1);
            for (uint32_t sub = 1; sub < (uint32_t(1) << ff.size()); ++sub) {
                uint32_t bnd = 0;
                for (size_t j = 0; j < ff.size(); ++j)
                    if (sub & (uint32_t(1) << j)) bnd ^= fb[j];
                if (bnd == pat) by_size[__builtin_popcount(sub)].push_back(sub);
            }
            auto diamond_ok = [&](uint32_t sub) {
                std::vector<Coord> ppts;
                for (size_t j = 0; j < ff.size(); ++j)
                    if (sub & (uint32_t(1) << j))
                        for (const Coord& c : lat.face_lifts(ff[j], static_cast<int32_t>(v)))
                            ppts.push_back(c);
                return geo.diamond_key(ppts, om) == want;
            };
            auto store = [&](const std::vector<uint32_t>& winners, size_t arity, bool relaxed) {
                ent.first = static_cast<uint32_t>(t.cand_faces.size());
                ent.count = static_cast<uint16_t>(winners.size());
                ent.arity = static_cast<uint8_t>(arity);
                ent.relaxed = relaxed ? 1 : 0;
                for (uint32_t sub : winners)
                    for (size_t j = 0; j < ff.size(); ++j)
                        if (sub & (uint32_t(1) << j)) t.cand_faces.push_back(ff[j]);
            };
            bool found = false;
            for (size_t arity = 1; arity <= ff.size() && !found; ++arity) {
                std::vector<uint32_t> winners;
                for (uint32_t sub : by_size[arity])
                    if (diamond_ok(sub)) winners.push_back(sub);
                if (!winners.empty()) {
                    store(winners, arity, false);
                    found = true;
                }
            }
            if (!found) {
                // no diamond-preserving phi exists: condition 5 fails here. Fall
                // back to the plain sweep rule (local match only) so syndrome
                // strings can still be absorbed at rough boundaries.
                ent.dead = 1;
                v_dead = true;
                for (size_t arity = 1; arity <= ff.size(); ++arity) {
                    if (by_size[arity].empty()) continue;
                    store(by_size[arity], arity, true);
                    break;
                }
            }
        }
        if (v_dead) {
            if (lat.vlabel[v] == Label::bulk)
                throw std::runtime_error("sweep rule undefined at bulk vertex " + std::to_string(v));
            t.dead_vertices.push_back(static_cast<int32_t>(v));
        }
    }
    std::sort(t.dead_vertices.begin(), t.dead_vertices.end());
    return t;
}

// One synchronous application of the rule at every vertex. All vertices see the
// pre-step syndrome; the returned phi is the XOR of the per-vertex returns.
// Tie-breaks draw from a pure function of (trial_seed, step, vertex).
inline QubitSet sweep_step(const LatticeGeometry& lat, const RuleTable& t,
                           const CheckSet& sigma, RuleVariant variant, uint64_t trial_seed,
                           uint64_t step) {
    QubitSet phi(lat.n_faces());
    size_t nv = lat.n_vertices();
    for (size_t v = 0; v < nv; ++v) {
        const auto& fe = t.ctx.future_edges[v];
        if (fe.empty()) continue;
        uint32_t pat = 0;
        for (size_t i = 0; i < fe.size(); ++i)
            if (sigma.get(static_cast<size_t>(fe[i]))) pat |= uint32_t(1) << i;
        if (!pat) continue;
        bool off_future = false;
        for (int32_t e : t.ctx.other_edges[v])
            if (sigma.get(static_cast<size_t>(e))) {
                off_future = true;
                break;
            }
        if (off_future) continue;  // not a trailing location
        const RuleTable::Entry& ent = t.entries[t.entry_base[v] + pat];
        if (ent.count == 0) continue;  // unmatched pattern: no action
        uint32_t pick = 0;
        if (ent.count > 1 && variant == RuleVariant::random_min)
            pick = static_cast<uint32_t>(substream(trial_seed, step, v) % ent.count);
        const int32_t* faces = t.cand_faces.data() + ent.first + size_t(pick) * ent.arity;
        for (uint8_t i = 0; i < ent.arity; ++i) phi.flip(static_cast<size_t>(faces[i]));
    }
    return phi;
}

}  // namespace sweepdec
