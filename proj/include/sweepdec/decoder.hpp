#pragma once

#include <cmath>
#include <ostream>
#include <vector>

#include "sweepdec/rule.hpp"

namespace sweepdec {

// Per-direction runtime for the final decode. The removal bound is linear in the
// syndrome diameter, which is at most the lattice size.
inline int default_tmax(int L) { return 2 * L; }

inline int default_noisy_period(int L) {
    return std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(L)))));
}

struct DecoderConfig {
    std::vector<Dir> order;   // permutation of the eight directions
    int t_max = 0;            // steps per direction in the final decode; 0 -> 2L
    int repeats = 1;          // passes over the direction order
    RuleVariant variant = RuleVariant::random_min;
    int noisy_period = 0;     // sweeps between direction changes while noise runs; 0 -> ceil(log2 L)
    int sweeps_per_measurement = 1;

    static DecoderConfig defaults() {
        DecoderConfig c;
        auto d = default_dir_order();
        c.order.assign(d.begin(), d.end());
        return c;
    }
};

enum class DecodeOutcome : uint8_t { corrected, syndrome_remains, logical_failure };

inline const char* outcome_name(DecodeOutcome o) {
    switch (o) {
        case DecodeOutcome::corrected: return "corrected";
        case DecodeOutcome::syndrome_remains: return "syndrome-remains";
        case DecodeOutcome::logical_failure: return "logical-failure";
    }
    return "?";
}

struct DecodeResult {
    bool failed = false;  // syndrome still nonzero after the full schedule
    QubitSet correction;
    int steps_used = 0;
};

// The full decoder: for each direction in order, T_max synchronous rule
// applications, updating the syndrome by the boundary of the returned faces.
// FAIL (a value, not a fault) iff the syndrome is nonzero at the end.
inline DecodeResult sweep_decode(const LatticeGeometry& lat,
                                 const std::vector<RuleTable>& tables, CheckSet sigma,
                                 const DecoderConfig& cfg, uint64_t trial_seed,
                                 uint64_t step_offset = 0, std::ostream* trace = nullptr) {
    DecodeResult res;
    res.correction = QubitSet(lat.n_faces());
    int t_max = cfg.t_max > 0 ? cfg.t_max : default_tmax(lat.L);
    uint64_t step = step_offset;
    for (int rep = 0; rep < cfg.repeats; ++rep) {
        for (const Dir& om : cfg.order) {
            const RuleTable& table = tables[dir_index(om)];
            for (int tstep = 0; tstep < t_max; ++tstep) {
                if (!sigma.any()) break;
                QubitSet phi = sweep_step(lat, table, sigma, cfg.variant, trial_seed, step);
                ++step;
                ++res.steps_used;
                if (!phi.any()) continue;
                sigma ^= lat.boundary_map(phi);
                res.correction ^= phi;
                if (trace)
                    (*trace) << "T=" << res.steps_used << " omega=" << om.str()
                             << " |sigma|=" << sigma.count() << " |phi|=" << phi.count() << "\n";
            }
        }
    }
    res.failed = sigma.any();
    return res;
}

// Callers must hand in a residual with trivial syndrome; failure means the
// residual acts as a nontrivial logical operator.
inline bool is_logical_failure(const LatticeGeometry& lat, const QubitSet& residual) {
    if (lat.boundary_map(residual).any())
        throw std::invalid_argument("is_logical_failure: residual has nonzero syndrome");
    for (const QubitSet& x : lat.logical_x)
        if (residual.overlap_parity(x)) return true;
    return false;
}

inline std::vector<RuleTable> build_all_tables(const LatticeGeometry& lat) {
    std::vector<RuleTable> out;
    out.reserve(8);
    for (const Dir& om : all_dirs()) out.push_back(build_rule_table(lat, om));
    return out;
}

}  // namespace sweepdec
