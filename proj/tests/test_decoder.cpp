#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sweepdec/experiment.hpp"
#include "sweepdec/verify.hpp"

using namespace sweepdec;

TEST_CASE("default runtime and the proof-scale constant") {
    CHECK(default_tmax(10) == 20);
    // proof-scale per-direction budget Q = 6 |Omega| c_P c_D^8, for comparison only
    CHECK(6 * 8 * 1 * (1 << 8) == 12288);
}

TEST_CASE("empty syndrome decodes to the empty correction") {
    auto ctx = CodeContext::make(Family::rhombic_open, 3);
    auto res = sweep_decode(ctx.lat, ctx.tables, CheckSet(ctx.lat.n_edges()),
                            DecoderConfig::defaults(), 1);
    CHECK_FALSE(res.failed);
    CHECK_FALSE(res.correction.any());
}

TEST_CASE("local errors are cleared and corrected exactly (small exhaustive)") {
    for (int L : {3, 4}) {
        auto ctx = CodeContext::make(Family::rhombic_open, L);
        const auto& g = ctx.lat;
        auto cfg = DecoderConfig::defaults();
        // all single faces and a sweep of face pairs
        for (size_t f = 0; f < g.n_faces(); ++f) {
            QubitSet err(g.n_faces());
            err.set(f);
            auto res = sweep_decode(g, ctx.tables, g.boundary_map(err), cfg, 17);
            REQUIRE_FALSE(res.failed);
            QubitSet resid = err ^ res.correction;
            REQUIRE_FALSE(g.boundary_map(resid).any());
            REQUIRE_FALSE(is_logical_failure(g, resid));
        }
        std::mt19937_64 rng(5);
        for (int t = 0; t < 400; ++t) {
            QubitSet err(g.n_faces());
            err.set(rng() % g.n_faces());
            err.flip(rng() % g.n_faces());
            if (!err.any()) continue;
            auto res = sweep_decode(g, ctx.tables, g.boundary_map(err), cfg, t);
            REQUIRE_FALSE(res.failed);
            QubitSet resid = err ^ res.correction;
            REQUIRE_FALSE(is_logical_failure(g, resid));
        }
    }
}

TEST_CASE("a single fixed direction strands some boundary syndromes") {
    auto ctx = CodeContext::make(Family::rhombic_open, 4);
    const auto& g = ctx.lat;
    DecoderConfig single = DecoderConfig::defaults();
    single.order = {Dir{{-1, -1, -1}}};
    DecoderConfig full = DecoderConfig::defaults();
    int stranded = 0;
    for (size_t f = 0; f < g.n_faces(); ++f) {
        if (g.flabel[f] == Label::bulk) continue;
        QubitSet err(g.n_faces());
        err.set(f);
        CheckSet syn = g.boundary_map(err);
        if (!syn.any()) continue;
        auto res1 = sweep_decode(g, ctx.tables, syn, single, 3);
        auto res8 = sweep_decode(g, ctx.tables, syn, full, 3);
        REQUIRE_FALSE(res8.failed);  // cycling all eight directions always clears
        if (res1.failed) ++stranded;
    }
    CHECK(stranded > 0);  // the immobile syndromes that motivate direction cycling
}

TEST_CASE("is_logical_failure distinguishes stabilizers from logicals") {
    auto g = make_lattice(Family::rhombic_open, 4);
    QubitSet empty(g.n_faces());
    CHECK_FALSE(is_logical_failure(g, empty));
    QubitSet cell(g.n_faces());
    for (int32_t f : g.cells[0]) cell.set(static_cast<size_t>(f));
    CHECK_FALSE(is_logical_failure(g, cell));
    CHECK(is_logical_failure(g, g.logical_z[0]));
    QubitSet bad(g.n_faces());
    bad.set(0);
    if (g.boundary_map(bad).any()) CHECK_THROWS_AS(is_logical_failure(g, bad), std::invalid_argument);
}

TEST_CASE("removal within |Omega| x T* for local syndromes") {
    auto ctx = CodeContext::make(Family::rhombic_open, 5);
    const auto& g = ctx.lat;
    Rng rng(29);
    for (int t = 0; t < 60; ++t) {
        QubitSet err = sample_local_error(g, rng, 3, 3);
        CheckSet syn = g.boundary_map(err);
        if (!syn.any()) continue;
        auto verts = syndrome_vertices(g, syn);
        // T*: longest causal path between inf and sup of the single-direction
        // region, maximized over directions
        int tstar = 0;
        for (const Dir& om : all_dirs()) {
            auto region = causal_region(g, om, verts);
            std::vector<Coord> pts;
            for (int32_t v : region) pts.push_back(g.vcoord[v]);
            Coord lo = inf_coords(g.family, pts, om);
            Coord hi = sup_coords(g.family, pts, om);
            auto dia = diamond_coords(g.family, lo, hi, om);
            auto chain = chain_lengths_to_sup(g.family, dia, hi, om);
            for (auto& [c, len] : chain) tstar = std::max(tstar, len);
        }
        DecoderConfig cfg = DecoderConfig::defaults();
        cfg.t_max = std::max(1, tstar);
        auto res = sweep_decode(g, ctx.tables, syn, cfg, t);
        REQUIRE_FALSE(res.failed);
    }
}

TEST_CASE("sweep-rule support, propagation, removal and the chain monotone") {
    auto rh = CodeContext::make(Family::rhombic_periodic, 4);
    check_sweep_properties(rh.lat, rh.tables, {.n_errors = 120, .seed = 11});
    auto cu = CodeContext::make(Family::cubic_periodic, 4);
    check_sweep_properties(cu.lat, cu.tables, {.n_errors = 120, .seed = 12});
}

TEST_CASE("a trailing-capable direction exists for local syndromes") {
    auto ctx = CodeContext::make(Family::rhombic_open, 4);
    check_trailing_witness(ctx.lat, ctx.tables, 150, 31);
}

TEST_CASE("failure rate decreases with system size below threshold") {
    // zero measurement noise, fixed p below the perfect-measurement threshold
    std::vector<PointSpec> specs;
    for (int L : {4, 6, 8}) {
        PointSpec sp;
        sp.family = Family::rhombic_open;
        sp.L = L;
        sp.noise.kind = NoiseKind::iid;
        sp.noise.p = 0.10;
        sp.noise.q_override = 0.0;
        sp.cycles = 1;
        sp.dec = DecoderConfig::defaults();
        sp.trials = 700;
        specs.push_back(sp);
    }
    auto res = run_points(specs, 424242);
    INFO(res[0].rate.failures << " " << res[1].rate.failures << " " << res[2].rate.failures);
    CHECK(res[0].rate.failures > res[1].rate.failures);
    CHECK(res[1].rate.failures > res[2].rate.failures);
}
