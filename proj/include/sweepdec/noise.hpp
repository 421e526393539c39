#pragma once

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "sweepdec/lattice.hpp"
#include "sweepdec/rng.hpp"

namespace sweepdec {

enum class NoiseKind : uint8_t { iid, correlated };
enum class PairRule : uint8_t { trivalent, shared_edge };

inline const char* pair_rule_name(PairRule r) {
    return r == PairRule::trivalent ? "trivalent" : "shared-edge";
}
inline PairRule pair_rule_from_name(const std::string& s) {
    if (s == "trivalent") return PairRule::trivalent;
    if (s == "shared-edge") return PairRule::shared_edge;
    throw std::invalid_argument("unknown pairing rule: " + s);
}

struct NoiseModel {
    NoiseKind kind = NoiseKind::iid;
    double p = 0.0;       // per-qubit (iid) or per-pair (correlated) probability
    double alpha = 1.0;   // measurement rate q = alpha*p, clamped to [0,1]
    double q_override = -1.0;  // >= 0: explicit q (the p->0+ regime of the alpha sweep)
    PairRule pairing = PairRule::trivalent;
    bool clamped = false;

    double q() {
        if (q_override >= 0) return q_override;
        double v = alpha * p;
        if (v > 1.0) {
            clamped = true;
            return 1.0;
        }
        return v;
    }
    double q() const {
        if (q_override >= 0) return q_override;
        return std::min(1.0, alpha * p);
    }
};

// marginal phase-flip rate of the correlated pair model (three pairs per qubit,
// flips composing mod 2)
inline double effective_rate(double p) {
    if (p < 0 || p > 0.375) throw std::invalid_argument("effective_rate: p outside [0, 3/8]");
    return 2 * p - 8 * p * p / 3;
}

inline QubitSet sample_phase_flips(const NoiseModel& m, const LatticeGeometry& lat, Rng& rng) {
    QubitSet err(lat.n_faces());
    if (m.p <= 0) return err;
    if (m.p >= 1) {
        for (size_t f = 0; f < lat.n_faces(); ++f) err.set(f);
        return err;
    }
    // geometric skips through the face list
    double log1mp = std::log1p(-m.p);
    size_t i = 0;
    while (true) {
        double u = rng.uniform();
        size_t skip = static_cast<size_t>(std::floor(std::log1p(-u) / log1mp));
        i += skip;
        if (i >= lat.n_faces()) break;
        err.set(i);
        ++i;
    }
    return err;
}

inline CheckSet sample_measurement_flips(const CheckSet& sigma, double q, Rng& rng) {
    CheckSet out = sigma;
    if (q <= 0) return out;
    if (q >= 1) {
        for (size_t e = 0; e < out.size(); ++e) out.flip(e);
        return out;
    }
    double log1mq = std::log1p(-q);
    size_t i = 0;
    while (true) {
        double u = rng.uniform();
        size_t skip = static_cast<size_t>(std::floor(std::log1p(-u) / log1mq));
        i += skip;
        if (i >= out.size()) break;
        out.flip(i);
        ++i;
    }
    return out;
}

// Unordered pairs of faces sharing a lattice edge. The default three disjoint
// matchings give every bulk qubit exactly three partners, which is the pairing
// the effective-rate formula describes; shared-edge keeps every co-edge pair.
struct NeighborPairs {
    PairRule rule;
    std::vector<std::array<int32_t, 2>> pairs;
};

inline NeighborPairs build_neighbor_pairs(const LatticeGeometry& lat, PairRule rule) {
    NeighborPairs np;
    np.rule = rule;
    std::set<std::array<int32_t, 2>> seen;
    auto add = [&](int32_t a, int32_t b) {
        if (a == b) return;
        std::array<int32_t, 2> key{std::min(a, b), std::max(a, b)};
        // spec invariant: both faces contain the shared edge
        bool share = false;
        for (int32_t e1 : lat.fedge[key[0]])
            for (int32_t e2 : lat.fedge[key[1]]) share = share || e1 == e2;
        if (share && seen.insert(key).second) np.pairs.push_back(key);
    };
    if (rule == PairRule::shared_edge) {
        for (size_t e = 0; e < lat.n_edges(); ++e)
            for (size_t i = 0; i < lat.efaces[e].size(); ++i)
                for (size_t j = i + 1; j < lat.efaces[e].size(); ++j)
                    add(lat.efaces[e][i], lat.efaces[e][j]);
        return np;
    }
    std::map<std::pair<int, Coord>, int32_t> bykey;
    for (size_t f = 0; f < lat.n_faces(); ++f)
        bykey[{lat.faxis[f], lat.fanchor[f]}] = static_cast<int32_t>(f);
    auto face_at = [&](int axis, Coord w) {
        auto it = bykey.find({axis, lat.wrap(w)});
        return it == bykey.end() ? -1 : it->second;
    };
    bool rhombic = family_is_rhombic(lat.family);
    for (auto& [key, f] : bykey) {
        Coord w = key.second;
        int s = (((w[0] + w[1] + w[2]) / 2) % 2 + 2) % 2;
        for (int i = 0; i < 3; ++i) {
            int a = i, bax = (i + 1) % 3, cax = (i + 2) % 3;
            if (key.first == a) {
                int32_t partner = s == 0 ? face_at(bax, w) : face_at(cax, w);
                if (partner >= 0) add(f, partner);
            }
            if (key.first == bax && s == 1) {
                Coord w2 = w;
                w2[rhombic ? bax : cax] += 2;
                int32_t partner = face_at(cax, w2);
                if (partner >= 0) add(f, partner);
            }
        }
    }
    return np;
}

inline QubitSet sample_correlated(const NoiseModel& m, const NeighborPairs& np,
                                  const LatticeGeometry& lat, Rng& rng) {
    QubitSet err(lat.n_faces());
    for (const auto& pr : np.pairs) {
        if (!rng.bernoulli(m.p)) continue;
        switch (rng.below(3)) {
            case 0: err.flip(static_cast<size_t>(pr[0])); break;
            case 1: err.flip(static_cast<size_t>(pr[1])); break;
            default:
                err.flip(static_cast<size_t>(pr[0]));
                err.flip(static_cast<size_t>(pr[1]));
        }
    }
    return err;
}

}  // namespace sweepdec
