#!/usr/bin/env python3
"""Exploratory driver: answers structural questions before the C++ design is frozen."""

import itertools
import random
import sys

from lattice_oracle import *


def counts_report():
    for L in (2, 4):
        lat = build_rhombic_periodic(L)
        print("rhombic-periodic L=%d counts=%s expect=(%d,%d,%d,%d)" % (
            L, lat.counts(), 3 * L**3 // 2, 4 * L**3, 3 * L**3, L**3 // 2))
        efc = lat.edge_face_count()
        assert set(efc.values()) == {3}, sorted(set(efc.values()))
        assert all(len(f["edges"]) == 4 for f in lat.faces.values())
        # CSS: every cell boundary trivial
        for fs in lat.cells:
            bnd = set()
            for k in fs:
                bnd ^= set(lat.faces[k]["edges"])
            assert not bnd
        print("  edge-in-3-faces OK, cells closed OK")
    for L in (2, 3, 4, 5):
        lat = build_rhombic_open(L)
        hist = {}
        for f in lat.faces.values():
            hist[len(f["edges"])] = hist.get(len(f["edges"]), 0) + 1
        print("rhombic-open L=%d counts=%s face-edge-hist=%s" % (L, lat.counts(), sorted(hist.items())))
        k, kd2, rd3 = homology_rank(lat)
        closed = boundary_closed_cell_candidates(lat, L, "rhombic")
        d2, d3, eidx, fidx, fkeys = lattice_matrices(lat)
        rows = []
        for fs in closed:
            r = 0
            for key in fs:
                r ^= 1 << fidx[key]
            rows.append(r)
        rall = f2_rank(rows)
        print("  k(complete cells)=%d  ker_d2=%d rank_d3=%d  closed-cells=%d rank=%d -> k_true=%d"
              % (k, kd2, rd3, len(closed), rall, kd2 - rall))
    for L in (3, 4):
        lat = build_cubic_periodic(L)
        print("cubic-periodic L=%d counts=%s" % (L, lat.counts()))
        efc = lat.edge_face_count()
        assert set(efc.values()) == {4}
    for L in (2, 3, 4):
        lat = build_cubic_open(L)
        hist = {}
        for f in lat.faces.values():
            hist[len(f["edges"])] = hist.get(len(f["edges"]), 0) + 1
        print("cubic-open L=%d counts=%s face-edge-hist=%s" % (L, lat.counts(), sorted(hist.items())))
        k, kd2, rd3 = homology_rank(lat)
        closed = boundary_closed_cell_candidates(lat, L, "cubic")
        d2, d3, eidx, fidx, fkeys = lattice_matrices(lat)
        rows = []
        for fs in closed:
            r = 0
            for key in fs:
                r ^= 1 << fidx[key]
            rows.append(r)
        rall = f2_rank(rows)
        print("  k(complete cells)=%d  closed-cells rank=%d -> k_true=%d" % (k, rall, kd2 - rall))


def rough_smooth_report(L):
    """Which sides of the rhombic-open bounding box admit odd syndrome degree."""
    lat = build_rhombic_open(L)
    vedges, vfaces = vertex_incidence(lat)
    xs = [v[0] for v in lat.vertices]
    ys = [v[1] for v in lat.vertices]
    zs = [v[2] for v in lat.vertices]
    print("rhombic-open L=%d doubled bbox x[%d,%d] y[%d,%d] z[%d,%d]" % (
        L, min(xs), max(xs), min(ys), max(ys), min(zs), max(zs)))
    sides = {
        "x-min": lambda v: v[0] == min(xs), "x-max": lambda v: v[0] == max(xs),
        "y-min": lambda v: v[1] == min(ys), "y-max": lambda v: v[1] == max(ys),
        "z-min": lambda v: v[2] == min(zs), "z-max": lambda v: v[2] == max(zs),
    }
    for name, pred in sides.items():
        vs = [v for v in lat.vertices if pred(v)]
        odd_possible = []
        for v in vs:
            pats = realizable_patterns(lat, "rhombic", v, vedges, vfaces)
            if any(len(p) % 2 == 1 for p in pats):
                odd_possible.append(v)
        print("  %s: %d vertices, odd-degree-capable: %d" % (name, len(vs), len(odd_possible)))


def fig7_table(L):
    lat = build_rhombic_open(L)
    vedges, vfaces = vertex_incidence(lat)
    xs = [v[0] for v in lat.vertices]
    ys = [v[1] for v in lat.vertices]
    zs = [v[2] for v in lat.vertices]
    bnds = {
        "x-min": lambda v: v[0] == min(xs), "x-max": lambda v: v[0] == max(xs),
        "y-min": lambda v: v[1] == min(ys), "y-max": lambda v: v[1] == max(ys),
        "z-min": lambda v: v[2] == min(zs), "z-max": lambda v: v[2] == max(zs),
    }
    dead = {}  # omega -> set of dead vertices
    for omega in DIRS8:
        dd = set()
        for v in lat.vertices:
            isdead, _ = trailing_analysis(lat, "rhombic", v, omega, vedges, vfaces)
            if isdead:
                dd.add(v)
        dead[omega] = dd
        bulk = [v for v in dd if not any(pred(v) for pred in bnds.values())]
        print("  omega=%s dead=%d (bulk dead=%d)" % (omega, len(dd), len(bulk)))
        assert not bulk, "bulk vertex dead!"
    print("per-boundary allowed directions (no dead vertex on boundary):")
    for name, pred in bnds.items():
        vs = [v for v in lat.vertices if pred(v)]
        allowed = [om for om in DIRS8 if not any(v in dead[om] for v in vs)]
        print("  %-6s: %s" % (name, allowed))
    print("per-boundary allowed, EXCLUSIVE vertices (on exactly this boundary):")
    for name, pred in bnds.items():
        vs = [v for v in lat.vertices if pred(v) and sum(1 for p2 in bnds.values() if p2(v)) == 1]
        allowed = [om for om in DIRS8 if not any(v in dead[om] for v in vs)]
        print("  %-6s: %d verts %s" % (name, len(vs), allowed))


def order_formula_check():
    """Cross-validate the closed-form reachability rule used by the C++ code."""
    def sigma(y):
        return ((y[0] + y[1]) // 2, (y[0] + y[2]) // 2, (y[1] + y[2]) // 2)

    def vclass(v):  # 0 = N-corner (prod -1), 1 = A-corner (prod +1), 2 = centre
        if is_corner(v):
            return 1 if sum(v) % 4 == 2 else 0
        return 2

    DELTA = {  # (role_u, role_w) -> a - t ; roles: 0=N,1=A,2=centre
        (0, 0): 0, (0, 1): -2, (1, 0): 2, (1, 1): 0,
        (0, 2): -1, (1, 2): 1, (2, 0): 1, (2, 1): -1, (2, 2): 0,
    }

    def leq_formula(u, w, omega):
        if u == w:
            return True
        pw = omega[0] * omega[1] * omega[2]

        def role(v):
            c = vclass(v)
            if c == 2:
                return 2
            # A-corner for omega iff its centre-offset product equals prod(omega)
            p = 1 if c == 1 else -1
            return 1 if p == pw else 0

        yu = tuple(omega[i] * u[i] for i in range(3))
        yw = tuple(omega[i] * w[i] for i in range(3))
        ds = tuple(sigma(yw)[i] - sigma(yu)[i] for i in range(3))
        if any(d < 0 for d in ds):
            return False
        tot = sum(ds)
        delta = DELTA[(role(u), role(w))]
        if (tot + delta) % 4 != 0:
            return False
        a = (tot + delta) // 4
        t = tot - 3 * a
        return 0 <= a <= min(ds) and t >= 0

    random.seed(1)
    base_pts = [(0, 0, 0), (2, 0, 0), (1, 1, 1), (1, 1, -1), (2, 2, 0), (1, -1, 1)]
    for omega in DIRS8:
        box = ((-9, -9, -9), (9, 9, 9))
        for u in base_pts:
            if not is_corner(u) and sum(u) % 4 != 1:
                continue
            fut = future_set("rhombic", u, omega, box)
            allv = []
            for p in itertools.product(range(-8, 9), repeat=3):
                if is_corner(p) or (all(c % 2 for c in p) and sum(p) % 4 == 1):
                    allv.append(p)
            for w in allv:
                got = leq_formula(u, w, omega)
                # only trust BFS result when w is safely inside the box
                if max(abs(w[i] - u[i]) for i in range(3)) > 5:
                    continue
                want = w in fut
                assert got == want, (u, w, omega, got, want)
    print("sigma-coordinate reachability formula matches BFS on all tested pairs")


def logical_reports():
    # periodic: verify the constructive membranes and tubes
    for L in (2, 4):
        lat = build_rhombic_periodic(L)
        d2, d3, eidx, fidx, fkeys = lattice_matrices(lat)
        # membranes M_axis(0): faces whose two corner vertices both have axis coord 0
        for axis in range(3):
            mem = []
            for key in fkeys:
                f = lat.faces[key]
                corners = [v for v in f["vertices"] if is_corner(v)]
                if len(corners) == 2 and all(c[axis] == 0 for c in corners):
                    mem.append(key)
            bnd = set()
            for k in mem:
                bnd ^= set(lat.faces[k]["edges"])
            print("rhombic-periodic L=%d membrane axis=%d |M|=%d closed=%s" % (L, axis, len(mem), not bnd))
        # zigzag tubes S_axis
        for axis in range(3):
            ax2 = (axis + 1) % 3  # zigzag alternates along this axis
            ax3 = (axis + 2) % 3
            tube = []
            b0 = 0
            c0 = 0
            for j in range(L):
                # dual step j: shared cubic edge between consecutive uncentered cubes
                corner = [0, 0, 0]
                corner[axis] = (j + 1) % L
                corner[ax2] = (b0 + 1) % L
                corner[ax3] = c0
                key = (ax3, 2 * corner[0], 2 * corner[1], 2 * corner[2])
                tube.append(key)
            # check stabilizer commutation and logical pairing
            fset = set()
            for k in tube:
                assert k in lat.faces, (k, "missing")
                fset ^= {k}
            ok = True
            for fs in lat.cells:
                if len([1 for k in fs if k in fset]) % 2:
                    ok = False
            print("rhombic-periodic L=%d tube axis=%d |S|=%d commutes-with-cells=%s" % (L, axis, len(tube), ok))
            for maxis in range(3):
                mem = []
                for key in fkeys:
                    f = lat.faces[key]
                    corners = [v for v in f["vertices"] if is_corner(v)]
                    if len(corners) == 2 and all(c[maxis] == 0 for c in corners):
                        mem.append(key)
                ov = len(set(mem) & fset) % 2
                print("    overlap with membrane axis=%d parity=%d" % (maxis, ov))

    # open: inspect a homology representative to learn its shape
    for L in (3, 4):
        lat = build_rhombic_open(L)
        d2, d3, eidx, fidx, fkeys = lattice_matrices(lat)
        # candidate membrane: faces whose corners all lie in the y = const plane
        ys = sorted({v[1] for v in lat.vertices if is_corner(v)})
        for ytarget in ys[:1] + ys[len(ys)//2:len(ys)//2+1]:
            mem = []
            for key in fkeys:
                f = lat.faces[key]
                corners = [v for v in f["vertices"] if is_corner(v)]
                if corners and all(c[1] == ytarget for c in corners):
                    mem.append(key)
            bnd = set()
            for k in mem:
                bnd ^= set(lat.faces[k]["edges"])
            print("rhombic-open L=%d membrane y=%d |M|=%d closed=%s" % (L, ytarget, len(mem), not bnd))
        # candidate X-string: zigzag tube along y
        # dual path of uncentered cubes from y=min to y=max; faces between consecutive
        # plus the boundary faces at the two smooth ends
        done = try_open_tube(lat, L)
        print("rhombic-open L=%d tube: %s" % (L, done))


def try_open_tube(lat, L):
    """Zigzag dual path along y; returns diagnostic of commutation with closed cells."""
    d2, d3, eidx, fidx, fkeys = lattice_matrices(lat)
    # uncentered cubes (a,b,c), walk b = 0..L, alternate a between a0 and a0+1
    a0, c0 = 0, 0
    tube = set()
    prev = None
    path = []
    for b in range(0, L + 1):
        a = a0 + ((b + (a0 + c0)) % 2 == 0)  # keep (a+b+c) even
        if (a + b + c0) % 2 != 0:
            a = a0 + 1 - (a - a0)
        assert (a + b + c0) % 2 == 0
        path.append((a, b, c0))
    for i, cube in enumerate(path):
        if prev is not None:
            # shared cubic edge between prev and cube: differ in a by +-1, b by 1
            pa, pb, pc = prev
            a, b, c = cube
            xcommon = max(pa, a)
            key = (2, 2 * xcommon, 2 * b, 2 * c)  # z-oriented cubic edge at (xcommon, b, c0)
            if key in lat.faces:
                tube ^= {key}
        prev = cube
    # end faces: the faces of the first/last cube that touch the smooth boundary
    # try adding boundary faces whose edge count < 4 at y extremes
    oks = []
    for extra_desc, extra in (("bare", set()),):
        fset = tube ^ extra
        bad = 0
        for fs in lat.cells:
            if len([1 for k in fs if k in fset]) % 2:
                bad += 1
        closed = boundary_closed_cell_candidates(lat, L, "rhombic")
        badc = 0
        for fs in closed:
            if len([1 for k in fs if k in fset]) % 2:
                badc += 1
        oks.append("%s: |S|=%d badcells=%d badclosed=%d" % (extra_desc, len(fset), bad, badc))
    return "; ".join(oks)


if __name__ == "__main__":
    which = sys.argv[1] if len(sys.argv) > 1 else "all"
    if which in ("all", "counts"):
        counts_report()
    if which in ("all", "rough"):
        rough_smooth_report(3)
    if which in ("all", "order"):
        order_formula_check()
    if which in ("all", "fig7"):
        fig7_table(3)
    if which in ("all", "logical"):
        logical_reports()
