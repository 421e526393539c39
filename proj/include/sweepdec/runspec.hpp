#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sweepdec/experiment.hpp"

namespace sweepdec {

// "a,b,c" integer list
inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw std::invalid_argument("empty list: " + s);
    return out;
}

// "x,y,z" doubles, or "start:stop:step" inclusive range
inline std::vector<double> parse_p_list(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        std::stringstream ss(s);
        std::string a, b, c;
        std::getline(ss, a, ':');
        std::getline(ss, b, ':');
        std::getline(ss, c, ':');
        double start = std::stod(a), stop = std::stod(b), step = std::stod(c);
        if (step <= 0) throw std::invalid_argument("range step must be positive");
        for (int i = 0;; ++i) {
            double v = start + i * step;
            if (v > stop + step * 1e-9) break;
            out.push_back(v);
        }
    } else {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty p list: " + s);
    return out;
}

inline std::vector<Dir> parse_dir_order(const std::string& s) {
    if (s.empty()) {
        auto d = default_dir_order();
        return {d.begin(), d.end()};
    }
    std::vector<Dir> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.size() != 3) throw std::invalid_argument("direction must be three signs: " + tok);
        Dir d;
        for (int i = 0; i < 3; ++i) {
            if (tok[i] == '+')
                d.v[i] = 1;
            else if (tok[i] == '-')
                d.v[i] = -1;
            else
                throw std::invalid_argument("direction must be three signs: " + tok);
        }
        out.push_back(d);
    }
    bool seen[8] = {};
    for (auto& d : out) seen[dir_index(d)] = true;
    for (int i = 0; i < 8; ++i)
        if (!seen[i] || out.size() != 8)
            throw std::invalid_argument("direction order must be a permutation of all eight");
    return out;
}

inline std::string dir_order_string(const std::vector<Dir>& order) {
    std::string s;
    for (size_t i = 0; i < order.size(); ++i) {
        if (i) s += ',';
        s += order[i].str();
    }
    return s;
}

struct RunSpec {
    std::string lattice = "rhombic-open";
    std::vector<int> Ls{6};
    std::vector<double> ps{0.02};
    double alpha = 1.0;
    double q_override = -1.0;
    std::string noise = "iid";
    std::string pairing = "trivalent";
    std::vector<int> Ns{1};
    int trials = 1000;
    int sweeps_per_meas = 1;
    int period_noisy = 0;  // 0: ceil(log2 L)
    int t_max = 0;         // 0: 2L
    int repeats = 1;
    std::string order;  // empty: default order
    std::string variant = "random";
    uint64_t seed = 1;
    std::string out = "results.csv";
    std::string records;
    bool with_crossing = false;

    void validate() const {
        family_from_name(lattice);
        if (Ls.empty() || ps.empty() || Ns.empty()) throw std::invalid_argument("empty grid");
        for (int L : Ls)
            if (L < 2) throw std::invalid_argument("L must be at least 2");
        for (double p : ps)
            if (p < 0 || p > 1) throw std::invalid_argument("p must lie in [0,1]");
        for (int N : Ns)
            if (N < 1) throw std::invalid_argument("N must be at least 1");
        if (trials < 1) throw std::invalid_argument("trials must be at least 1");
        if (sweeps_per_meas < 1) throw std::invalid_argument("sweeps per measurement >= 1");
        if (alpha < 0) throw std::invalid_argument("alpha must be nonnegative");
        if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
        noise_kind();
        pair_rule_from_name(pairing);
        variant_from_name(variant);
        parse_dir_order(order);
    }

    NoiseKind noise_kind() const {
        if (noise == "iid") return NoiseKind::iid;
        if (noise == "correlated") return NoiseKind::correlated;
        throw std::invalid_argument("unknown noise kind: " + noise);
    }

    std::vector<PointSpec> expand() const {
        validate();
        std::vector<PointSpec> out;
        for (int N : Ns)
            for (int L : Ls)
                for (double p : ps) {
                    PointSpec sp;
                    sp.family = family_from_name(lattice);
                    sp.L = L;
                    sp.noise.kind = noise_kind();
                    sp.noise.p = p;
                    sp.noise.alpha = alpha;
                    sp.noise.q_override = q_override;
                    sp.noise.pairing = pair_rule_from_name(pairing);
                    sp.cycles = N;
                    sp.dec = DecoderConfig::defaults();
                    sp.dec.order = parse_dir_order(order);
                    sp.dec.t_max = t_max;
                    sp.dec.repeats = repeats;
                    sp.dec.variant = variant_from_name(variant);
                    sp.dec.noisy_period = period_noisy;
                    sp.dec.sweeps_per_measurement = sweeps_per_meas;
                    sp.trials = trials;
                    out.push_back(sp);
                }
        return out;
    }
};

inline void to_json(nlohmann::json& j, const RunSpec& s) {
    j = nlohmann::json{{"lattice", s.lattice},
                       {"L", s.Ls},
                       {"p", s.ps},
                       {"alpha", s.alpha},
                       {"q", s.q_override},
                       {"noise", s.noise},
                       {"pairing", s.pairing},
                       {"N", s.Ns},
                       {"trials", s.trials},
                       {"sweeps_per_meas", s.sweeps_per_meas},
                       {"period_noisy", s.period_noisy},
                       {"t_max", s.t_max},
                       {"repeats", s.repeats},
                       {"order", s.order},
                       {"variant", s.variant},
                       {"seed", s.seed},
                       {"out", s.out},
                       {"records", s.records},
                       {"with_crossing", s.with_crossing}};
}

inline void from_json(const nlohmann::json& j, RunSpec& s) {
    j.at("lattice").get_to(s.lattice);
    j.at("L").get_to(s.Ls);
    j.at("p").get_to(s.ps);
    j.at("alpha").get_to(s.alpha);
    j.at("q").get_to(s.q_override);
    j.at("noise").get_to(s.noise);
    j.at("pairing").get_to(s.pairing);
    j.at("N").get_to(s.Ns);
    j.at("trials").get_to(s.trials);
    j.at("sweeps_per_meas").get_to(s.sweeps_per_meas);
    j.at("period_noisy").get_to(s.period_noisy);
    j.at("t_max").get_to(s.t_max);
    j.at("repeats").get_to(s.repeats);
    j.at("order").get_to(s.order);
    j.at("variant").get_to(s.variant);
    j.at("seed").get_to(s.seed);
    j.at("out").get_to(s.out);
    j.at("records").get_to(s.records);
    j.at("with_crossing").get_to(s.with_crossing);
}

}  // namespace sweepdec
