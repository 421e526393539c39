#pragma once

#include <atomic>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

#include "sweepdec/decoder.hpp"
#include "sweepdec/noise.hpp"

namespace sweepdec {

struct ProtocolConfig {
    Family family = Family::rhombic_periodic;
    int L = 4;
    NoiseModel noise;
    int cycles = 1;  // N
    DecoderConfig dec = DecoderConfig::defaults();
    int trials = 100;
    uint64_t seed = 1;
};

struct TrialOutcome {
    bool success = false;
    DecodeOutcome mode = DecodeOutcome::corrected;
    uint32_t residual_weight = 0;
    uint64_t seed = 0;
};

// Immutable per-(family, L) context shared across trials.
struct CodeContext {
    LatticeGeometry lat;
    std::vector<RuleTable> tables;
    NeighborPairs pairs;

    static CodeContext make(Family fam, int L, PairRule pr = PairRule::trivalent) {
        CodeContext c{make_lattice(fam, L), {}, {}};
        c.tables = build_all_tables(c.lat);
        c.pairs = build_neighbor_pairs(c.lat, pr);
        return c;
    }
};

// One run of the noisy-measurement protocol: per cycle fresh phase flips, a
// perfectly evaluated syndrome, independent bit flips on it, then the configured
// number of rule applications with the scheduled direction; after N cycles a
// perfect readout and the full decoder. The correction is tracked in the Pauli
// frame by folding it into the cumulative error.
inline TrialOutcome run_trial(const CodeContext& ctx, const ProtocolConfig& cfg,
                              uint64_t trial_seed) {
    const LatticeGeometry& lat = ctx.lat;
    Rng rng(trial_seed);
    NoiseModel noise = cfg.noise;
    const double q = noise.q();
    QubitSet eps(lat.n_faces());
    const int period = cfg.dec.noisy_period > 0 ? cfg.dec.noisy_period : default_noisy_period(lat.L);
    const auto& order = cfg.dec.order;
    uint64_t sweeps_done = 0;
    const uint64_t noisy_step_base = uint64_t(1) << 32;

    for (int cycle = 0; cycle < cfg.cycles; ++cycle) {
        if (noise.kind == NoiseKind::iid)
            eps ^= sample_phase_flips(noise, lat, rng);
        else
            eps ^= sample_correlated(noise, ctx.pairs, lat, rng);
        CheckSet observed = sample_measurement_flips(lat.boundary_map(eps), q, rng);
        for (int s = 0; s < cfg.dec.sweeps_per_measurement; ++s) {
            const Dir& om = order[(sweeps_done / static_cast<uint64_t>(period)) % order.size()];
            QubitSet phi = sweep_step(lat, ctx.tables[dir_index(om)], observed, cfg.dec.variant,
                                      trial_seed, noisy_step_base + sweeps_done);
            ++sweeps_done;
            if (!phi.any()) continue;
            observed ^= lat.boundary_map(phi);
            eps ^= phi;
        }
    }

    TrialOutcome out;
    out.seed = trial_seed;
    CheckSet sigma = lat.boundary_map(eps);
    DecodeResult res = sweep_decode(lat, ctx.tables, sigma, cfg.dec, trial_seed);
    if (res.failed) {
        out.success = false;
        out.mode = DecodeOutcome::syndrome_remains;
        out.residual_weight = static_cast<uint32_t>(eps.count());
        return out;
    }
    eps ^= res.correction;
    out.residual_weight = static_cast<uint32_t>(eps.count());
    bool logical = is_logical_failure(lat, eps);
    out.success = !logical;
    out.mode = logical ? DecodeOutcome::logical_failure : DecodeOutcome::corrected;
    return out;
}

// ---------------------------------------------------------------------------
// aggregation

struct RateEstimate {
    int trials = 0;
    int failures = 0;
    double p_hat = 0, ci_low = 0, ci_high = 0;
};

// Wilson interval at z = 1.96
inline RateEstimate wilson(int failures, int trials) {
    RateEstimate r;
    r.trials = trials;
    r.failures = failures;
    const double z = 1.959963984540054;
    double n = trials;
    double ph = failures / n;
    r.p_hat = ph;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (ph + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / denom;
    r.ci_low = std::max(0.0, center - half);
    r.ci_high = std::min(1.0, center + half);
    return r;
}

struct PointSpec {
    Family family;
    int L;
    NoiseModel noise;
    int cycles;
    DecoderConfig dec;
    int trials;
};

struct PointResult {
    PointSpec spec;
    RateEstimate rate;
    uint64_t point_seed = 0;
    int n_syndrome_fail = 0;  // decoder FAIL vs logical failure, kept separately
    int n_logical_fail = 0;
    std::vector<TrialOutcome> outcomes;  // filled when recording is on
};

inline unsigned worker_count() {
    if (const char* env = std::getenv("SWEEPDEC_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

// Runs every (point, trial) task on a small pool. Trial seeds are pure functions
// of (master seed, point index, trial index), so the results and every derived
// artifact are identical for any worker count.
inline std::vector<PointResult> run_points(const std::vector<PointSpec>& specs,
                                           uint64_t master_seed, bool keep_outcomes = false,
                                           unsigned threads = 0) {
    std::vector<PointResult> results(specs.size());
    // shared contexts per (family, L, pairing)
    std::map<std::tuple<Family, int, PairRule>, std::shared_ptr<CodeContext>> ctxs;
    for (size_t i = 0; i < specs.size(); ++i) {
        results[i].spec = specs[i];
        results[i].point_seed = mix(master_seed, 0x9E3779B9u + i);
        results[i].outcomes.assign(static_cast<size_t>(specs[i].trials), {});
        auto key = std::make_tuple(specs[i].family, specs[i].L, specs[i].noise.pairing);
        if (!ctxs.count(key))
            ctxs[key] = std::make_shared<CodeContext>(
                CodeContext::make(specs[i].family, specs[i].L, specs[i].noise.pairing));
    }
    struct Task {
        uint32_t point;
        uint32_t trial;
    };
    std::vector<Task> tasks;
    for (size_t i = 0; i < specs.size(); ++i)
        for (int t = 0; t < specs[i].trials; ++t)
            tasks.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(t)});
    std::atomic<size_t> next{0};
    unsigned nthreads = threads ? threads : worker_count();
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& tk = tasks[i];
            const PointSpec& sp = specs[tk.point];
            ProtocolConfig cfg{sp.family, sp.L, sp.noise, sp.cycles, sp.dec, sp.trials, master_seed};
            auto key = std::make_tuple(sp.family, sp.L, sp.noise.pairing);
            uint64_t ts = mix(results[tk.point].point_seed, tk.trial);
            results[tk.point].outcomes[tk.trial] = run_trial(*ctxs[key], cfg, ts);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& r : results) {
        int fails = 0;
        for (auto& o : r.outcomes) {
            if (!o.success) {
                ++fails;
                if (o.mode == DecodeOutcome::syndrome_remains)
                    ++r.n_syndrome_fail;
                else
                    ++r.n_logical_fail;
            }
        }
        r.rate = wilson(fails, r.spec.trials);
        if (!keep_outcomes) r.outcomes.clear();
    }
    return results;
}

inline double logical_rate(const PointResult& r) { return r.rate.p_hat; }

// ---------------------------------------------------------------------------
// output formats

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline void write_csv_header(std::ostream& os) {
    os << "L,p,q,N,trials,failures,p_L,ci_low,ci_high,seed\n";
}

inline void write_csv_row(std::ostream& os, const PointResult& r) {
    os << r.spec.L << "," << format_double(r.spec.noise.p) << ","
       << format_double(r.spec.noise.q()) << "," << r.spec.cycles << "," << r.rate.trials << ","
       << r.rate.failures << "," << format_double(r.rate.p_hat) << ","
       << format_double(r.rate.ci_low) << "," << format_double(r.rate.ci_high) << ","
       << r.point_seed << "\n";
}

inline void write_jsonl(std::ostream& os, const PointResult& r) {
    for (size_t t = 0; t < r.outcomes.size(); ++t) {
        const TrialOutcome& o = r.outcomes[t];
        os << "{\"family\":\"" << family_name(r.spec.family) << "\",\"L\":" << r.spec.L
           << ",\"p\":" << format_double(r.spec.noise.p)
           << ",\"q\":" << format_double(r.spec.noise.q()) << ",\"N\":" << r.spec.cycles
           << ",\"trial\":" << t << ",\"seed\":" << o.seed << ",\"success\":"
           << (o.success ? "true" : "false") << ",\"mode\":\"" << outcome_name(o.mode)
           << "\",\"residual_weight\":" << o.residual_weight << "}\n";
    }
}

}  // namespace sweepdec
