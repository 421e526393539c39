#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <random>
#include <sstream>

#include "sweepdec/lattice.hpp"

using namespace sweepdec;

namespace {

std::string golden(const std::string& name) {
    std::ifstream in(std::string(GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// index-free canonical form matching the oracle's dump
std::string canonical(const LatticeGeometry& g) {
    std::ostringstream os;
    std::vector<Coord> vs(g.vcoord);
    std::sort(vs.begin(), vs.end());
    for (auto& c : vs) os << "v " << c[0] << " " << c[1] << " " << c[2] << "\n";
    std::vector<std::array<Coord, 2>> es;
    for (size_t e = 0; e < g.n_edges(); ++e) {
        Coord a = g.vcoord[g.evert[e][0]], b = g.vcoord[g.evert[e][1]];
        if (b < a) std::swap(a, b);
        es.push_back({a, b});
    }
    std::sort(es.begin(), es.end());
    for (auto& e : es)
        os << "e " << e[0][0] << " " << e[0][1] << " " << e[0][2] << "  " << e[1][0] << " "
           << e[1][1] << " " << e[1][2] << "\n";
    std::vector<std::vector<std::array<Coord, 2>>> fs;
    for (size_t f = 0; f < g.n_faces(); ++f) {
        std::vector<std::array<Coord, 2>> fe;
        for (int32_t e : g.fedge[f]) {
            Coord a = g.vcoord[g.evert[e][0]], b = g.vcoord[g.evert[e][1]];
            if (b < a) std::swap(a, b);
            fe.push_back({a, b});
        }
        std::sort(fe.begin(), fe.end());
        fs.push_back(std::move(fe));
    }
    std::sort(fs.begin(), fs.end());
    for (auto& fe : fs) {
        os << "f";
        for (auto& e : fe)
            for (auto& c : {e[0], e[1]}) os << " " << c[0] << " " << c[1] << " " << c[2];
        os << "\n";
    }
    return os.str();
}

size_t edge_face_degree(const LatticeGeometry& g, size_t e) { return g.efaces[e].size(); }

}  // namespace

TEST_CASE("rhombic periodic counts match the closed forms") {
    for (int L : {2, 4, 6}) {
        auto g = build_rhombic_periodic(L);
        long long n = static_cast<long long>(L) * L * L;
        CHECK(g.n_vertices() == static_cast<size_t>(3 * n / 2));
        CHECK(g.n_edges() == static_cast<size_t>(4 * n));
        CHECK(g.n_faces() == static_cast<size_t>(3 * n));
        CHECK(g.n_cells() == static_cast<size_t>(n / 2));
        for (size_t f = 0; f < g.n_faces(); ++f) REQUIRE(g.fedge[f].size() == 4);
        for (size_t e = 0; e < g.n_edges(); ++e) REQUIRE(edge_face_degree(g, e) == 3);
    }
}

TEST_CASE("rhombic periodic rejects odd or tiny L") {
    CHECK_THROWS_AS(build_rhombic_periodic(3), std::invalid_argument);
    CHECK_THROWS_AS(build_rhombic_periodic(0), std::invalid_argument);
    CHECK_THROWS_AS(build_rhombic_periodic(-2), std::invalid_argument);
}

TEST_CASE("open builders reject L < 2") {
    CHECK_THROWS_AS(build_rhombic_open(1), std::invalid_argument);
    CHECK_THROWS_AS(build_cubic_open(1), std::invalid_argument);
    CHECK_THROWS_AS(build_cubic_periodic(2), std::invalid_argument);
}

TEST_CASE("cubic periodic counts") {
    auto g = build_cubic_periodic(3);
    CHECK(g.n_vertices() == 27);
    CHECK(g.n_edges() == 81);
    CHECK(g.n_faces() == 81);
    CHECK(g.n_cells() == 27);
    for (int L : {3, 4, 5}) {
        auto gl = build_cubic_periodic(L);
        for (size_t e = 0; e < gl.n_edges(); ++e) REQUIRE(gl.efaces[e].size() == 4);
    }
}

TEST_CASE("canonical structure matches the enumeration oracle") {
    CHECK(canonical(build_rhombic_periodic(2)) == golden("rhombic_periodic_L2.txt"));
    CHECK(canonical(build_rhombic_open(3)) == golden("rhombic_open_L3.txt"));
    CHECK(canonical(build_cubic_periodic(3)) == golden("cubic_periodic_L3.txt"));
    CHECK(canonical(build_cubic_open(3)) == golden("cubic_open_L3.txt"));
}

TEST_CASE("open lattices have truncated boundary faces") {
    auto g = build_rhombic_open(3);
    std::set<size_t> sizes;
    for (size_t f = 0; f < g.n_faces(); ++f) sizes.insert(g.fedge[f].size());
    CHECK(sizes.count(1) == 1);
    CHECK(sizes.count(2) == 1);  // §C: faces with one or two edges
    CHECK(sizes.count(4) == 1);

    auto c = build_cubic_open(3);
    std::set<size_t> cs;
    for (size_t f = 0; f < c.n_faces(); ++f) cs.insert(c.fedge[f].size());
    CHECK(cs.count(2) == 1);
    CHECK(cs.count(3) == 1);  // supplementary: two or three edges
}

TEST_CASE("bulk vertex degrees are 4 or 8 on rhombic lattices") {
    for (auto g : {build_rhombic_periodic(4), build_rhombic_open(4)}) {
        for (size_t v = 0; v < g.n_vertices(); ++v) {
            if (g.vlabel[v] != Label::bulk) continue;
            size_t d = g.vedges[v].size();
            if (g.vkind[v] == VertexKind::corner)
                REQUIRE(d == 4);
            else
                REQUIRE(d == 8);
        }
    }
}

TEST_CASE("cells close: boundary of every cell's face set is empty") {
    for (auto g : {build_rhombic_periodic(2), build_rhombic_periodic(4), build_rhombic_open(4),
                   build_cubic_periodic(3), build_cubic_open(4)}) {
        for (auto& cell : g.cells) {
            QubitSet q(g.n_faces());
            for (int32_t f : cell) q.set(static_cast<size_t>(f));
            CHECK_FALSE(g.boundary_map(q).any());
        }
    }
}

TEST_CASE("boundary map is linear and local") {
    auto g = build_rhombic_periodic(4);
    QubitSet empty(g.n_faces());
    CHECK_FALSE(g.boundary_map(empty).any());

    // single bulk face: syndrome = its 4 edges
    QubitSet one(g.n_faces());
    one.set(7);
    auto s = g.boundary_map(one);
    CHECK(s.count() == 4);
    for (int32_t e : g.fedge[7]) CHECK(s.get(static_cast<size_t>(e)));

    // two faces sharing an edge: shared edge cancels
    int32_t e0 = g.fedge[7][0];
    int32_t other = -1;
    for (int32_t f : g.efaces[e0])
        if (f != 7) other = f;
    REQUIRE(other >= 0);
    QubitSet two = one;
    two.set(static_cast<size_t>(other));
    auto s2 = g.boundary_map(two);
    CHECK_FALSE(s2.get(static_cast<size_t>(e0)));
    CHECK(s2.count() == 6);

    // linearity on random pairs
    std::mt19937_64 rng(11);
    QubitSet a(g.n_faces()), b(g.n_faces());
    for (int i = 0; i < 40; ++i) {
        a.flip(rng() % g.n_faces());
        b.flip(rng() % g.n_faces());
    }
    CHECK((g.boundary_map(a) ^ g.boundary_map(b)) == g.boundary_map(a ^ b));
}

TEST_CASE("face edge lists equal consecutive-cycle edges") {
    for (auto g : {build_rhombic_periodic(2), build_rhombic_open(3), build_cubic_open(3)}) {
        for (size_t f = 0; f < g.n_faces(); ++f) {
            std::set<std::pair<int32_t, int32_t>> from_cycle;
            const auto& cyc = g.fvert[f];
            for (size_t i = 0; i < cyc.size(); ++i) {
                int32_t a = cyc[i], b = cyc[(i + 1) % cyc.size()];
                if (a > b) std::swap(a, b);
                from_cycle.insert({a, b});
            }
            for (int32_t e : g.fedge[f]) {
                auto pr = std::make_pair(g.evert[e][0], g.evert[e][1]);
                REQUIRE(from_cycle.count(pr) == 1);
            }
        }
    }
}

TEST_CASE("syndromes form closed loops in the bulk, open only at rough boundaries") {
    for (auto g : {build_rhombic_periodic(4), build_rhombic_open(4), build_cubic_open(4)}) {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 50; ++trial) {
            QubitSet err(g.n_faces());
            for (int i = 0; i < 6; ++i) err.flip(rng() % g.n_faces());
            auto syn = g.boundary_map(err);
            for (size_t v = 0; v < g.n_vertices(); ++v) {
                int deg = 0;
                for (int32_t e : g.vedges[v]) deg += syn.get(static_cast<size_t>(e)) ? 1 : 0;
                if (deg % 2 == 1) REQUIRE(g.vlabel[v] == Label::rough);
            }
        }
    }
}

TEST_CASE("construction is deterministic") {
    auto a = make_lattice(Family::rhombic_open, 3);
    auto b = make_lattice(Family::rhombic_open, 3);
    std::ostringstream sa, sb;
    a.write_export(sa);
    b.write_export(sb);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("logical representatives verify and pair correctly") {
    // make_lattice performs the verification internally (throws on failure)
    for (auto fam : {Family::rhombic_periodic, Family::cubic_periodic}) {
        auto g = make_lattice(fam, 4);
        CHECK(g.logical_z.size() == 3);
        CHECK(g.logical_x.size() == 3);
    }
    for (auto fam : {Family::rhombic_open, Family::cubic_open}) {
        for (int L : {3, 4, 5}) {
            auto g = make_lattice(fam, L);
            CHECK(g.logical_z.size() == 1);
            CHECK(g.logical_x.size() == 1);
            CHECK(g.logical_x[0].count() == static_cast<size_t>(L));
        }
    }
}

TEST_CASE("adding a cell to a representative keeps every pairing parity") {
    auto g = make_lattice(Family::rhombic_periodic, 4);
    QubitSet z = g.logical_z[0];
    for (int32_t f : g.cells[3]) z.flip(static_cast<size_t>(f));
    CHECK_FALSE(g.boundary_map(z).any());
    for (size_t j = 0; j < g.logical_x.size(); ++j)
        CHECK(z.overlap_parity(g.logical_x[j]) == g.logical_z[0].overlap_parity(g.logical_x[j]));
}

TEST_CASE("restrictions cover the syndrome and pick only incident elements") {
    auto g = build_rhombic_open(4);
    std::mt19937_64 rng(17);
    QubitSet err(g.n_faces());
    for (int i = 0; i < 10; ++i) err.flip(rng() % g.n_faces());
    auto syn = g.boundary_map(err);
    CHECK(g.restrict_syndrome(syn, 0).size() <= g.vedges[0].size());
    std::set<int32_t> covered;
    for (size_t v = 0; v < g.n_vertices(); ++v)
        for (int32_t e : g.restrict_syndrome(syn, v)) covered.insert(e);
    std::set<int32_t> expect;
    syn.for_each_set([&](size_t e) { expect.insert(static_cast<int32_t>(e)); });
    CHECK(covered == expect);
}
