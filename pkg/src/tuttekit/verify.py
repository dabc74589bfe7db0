"""Verification suites: oracle equivalences and theorem checks.

Each check returns a :class:`Check`; ``run_suite`` collects them into a
pass/fail matrix for the CLI and the acceptance tests.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import asymptotics as asy
from . import clan, loci, spanning
from .families import circuit, clan_cyclic, clan_identity, random_corpus, sq_strip
from .polynomial import UniPoly, roots
from .specializations import acyclic_count, acyclic_oracle, reliability
from .tutte import potts_oracle, tutte_dc, tutte_oracle, z_from_t


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}: {self.detail}"


def _rand_points(seed, count=20):
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        y = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        if x != 1 and y != 1:
            pts.append((x, y))
    return pts


# --------------------------------------------------------------- criteria

def check_oracle(count=200, seed=2024):
    bad_t = bad_z = 0
    for g in random_corpus(count, seed):
        t = tutte_oracle(g)
        if tutte_dc(g).polynomial != t.polynomial:
            bad_t += 1
        if z_from_t(t, t.k, t.n).polynomial != potts_oracle(g).polynomial:
            bad_z += 1
    return Check("oracle equivalence", bad_t == 0 and bad_z == 0,
                 f"{count} graphs, tutte mismatches {bad_t}, potts mismatches {bad_z}")


TABLE1 = {
    1: (1, 1), 2: (2, 2, 1), 3: (4, 4, 3, 1), 4: (8, 8, 7, 4, 1),
    5: (16, 16, 15, 11, 5, 1), 6: (32, 32, 31, 26, 16, 6, 1),
    7: (64, 64, 63, 57, 42, 22, 7, 1), 8: (128, 128, 127, 120, 99, 64, 29, 8, 1),
}
TABLE1_TOTALS = {1: 2, 2: 5, 3: 12, 4: 28, 5: 64, 6: 144, 7: 320, 8: 704}


def check_structure(rmax=12):
    matched = 0
    ok = True
    for r, row in TABLE1.items():
        sc = clan.structure_counts(r)
        for a, b in zip(sc.counts, row):
            ok &= a == b
            matched += a == b
        ok &= sc.total == TABLE1_TOTALS[r]
        matched += sc.total == TABLE1_TOTALS[r]
    agree = all(clan.structure_counts(r).agree for r in range(1, rmax + 1))
    return Check("structure tables", ok and agree and matched == 52,
                 f"{matched}/52 printed entries (44 n_T + 8 totals), routes agree r<={rmax}: {agree}")


def check_clan_closed(rs=(1, 2, 3), ms=(1, 2, 3), points=20, seed=7):
    bad = []
    for r in rs:
        for m in ms:
            T = tutte_dc(clan_cyclic(r, m)).polynomial
            for x, y in _rand_points(seed + 10 * r + m, points):
                if clan.tutte_clan_closed(r, m, x, y) != T.eval_exact(x, y):
                    bad.append((r, m, x, y))
    return Check("clan closed forms", not bad,
                 f"{len(rs) * len(ms) * points} exact evaluations, mismatches {len(bad)}")


def _p(s, var):
    return UniPoly.parse(s, var)


GOLDEN_FLOW = {
    1: "(q-1)^3*(q-2)",
    2: "(q-1)*(q-2)^2*(q^4-5*q^3+12*q^2-16*q+10)",
    3: "(q-1)*(q-2)^2*(q^2-4*q+5)*(q^5-6*q^4+18*q^3-34*q^2+37*q-28)",
}
GOLDEN_REL = {
    2: "p^3*(2-p)*(6*p^6-44*p^5+139*p^4-242*p^3+246*p^2-140*p+36)",
    3: ("p^5*(120*p^10-1440*p^9+7830*p^8-25440*p^7+54780*p^6-81840*p^5"
        "+86110*p^4-63195*p^3+31080*p^2-9300*p+1296)"),
}


def check_golden():
    flow_ok = all(clan.flow_clan_poly(2, m) == _p(s, "q") for m, s in GOLDEN_FLOW.items())
    rel_ok = all(clan.reliability_clan_poly(m) == _p(s, "p") for m, s in GOLDEN_REL.items())
    c3 = reliability(circuit(3)) == _p("p^2*(3-2*p)", "p")
    return Check("small-m golden polynomials", flow_ok and rel_ok and c3,
                 f"flow m=1..3 {flow_ok}, reliability m=2,3 {rel_ok}, R(C_3) {c3}")


TABLE4 = {2: (3.464, 0.693, 0.786), 3: (6.240, 0.780, 0.838), 4: (9.118, 0.829, 0.871),
          5: (12.041, 0.860, 0.894), 6: (14.988, 0.882, 0.910), 7: (17.950, 0.897, 0.921),
          8: (20.920, 0.910, 0.931), 9: (23.897, 0.919, 0.938), 10: (26.879, 0.927, 0.944)}
TABLE5 = {2: (1.932, 0.644, 0.837), 3: (2.842, 0.711, 0.842), 4: (3.751, 0.750, 0.851),
          5: (4.664, 0.777, 0.860), 6: (5.582, 0.797, 0.867), 7: (6.505, 0.813, 0.874),
          8: (7.433, 0.826, 0.879), 9: (8.365, 0.836, 0.884), 10: (9.301, 0.846, 0.889)}


def _table_matches(family, printed):
    bad = []
    for rep in spanning.spanning_table(family):
        got = tuple(round(v, 3) for v in (rep.ez, rep.R1, rep.R2))
        if got != printed[rep.r]:
            bad.append((rep.r, got, printed[rep.r]))
    return bad


def check_spanning(rmax=4, mmax=6):
    bad = []
    for r in range(1, rmax + 1):
        for m in range(1, mmax + 1):
            if spanning.nst_clan_jn(r, m) != spanning.kirchhoff_count(clan_cyclic(r, m)):
                bad.append(("jn", r, m))
            if spanning.nst_clan_id(r, m) != spanning.kirchhoff_count(clan_identity(r, m)):
                bad.append(("id", r, m))
    t4 = _table_matches("jn", TABLE4)
    t5 = _table_matches("id", TABLE5)
    return Check("spanning trees", not (bad or t4 or t5),
                 f"formula mismatches {len(bad)}, table jn misses {len(t4)}, table id misses {len(t5)}")


def check_acyclic():
    enum = all(acyclic_oracle(sq_strip(2, m + 1)) == 2 * 7 ** m for m in range(1, 4))
    chrom = all(acyclic_count(sq_strip(2, m + 1)) == 2 * 7 ** m for m in range(1, 11))
    fams = [("sq", 2, "periodic"), ("sq", 2, "twisted"), ("tri", 2, "periodic")]
    forms = {f: asy.acyclic_formula_check(f, range(1, 7)).passed for f in fams}
    ok = enum and chrom and all(forms.values())
    detail = f"2*7^m enumeration {enum}, chromatic m<=10 {chrom}, " + ", ".join(
        f"{a}{b}{c[0].upper()} {v}" for (a, b, c), v in forms.items())
    return Check("acyclic orientations", ok, detail)


ALPHA_TARGETS = [("sq", 2, "free", 2.645751), ("sq", 3, "free", 2.903043), ("sq", 4, "free", 3.040731),
                 ("tri", 2, "free", 3.0), ("tri", 3, "free", 3.429091), ("sq", 3, "periodic", 3.239612),
                 ("tri", 3, "periodic", 4.140818)]


def check_alpha():
    worst_paper = worst_route = 0.0
    for lat, Ly, bc, target in ALPHA_TARGETS:
        fit = asy.alpha_strip(lat, Ly, bc).alpha
        closed = asy.alpha_closed_form(lat, Ly, bc).alpha
        worst_paper = max(worst_paper, abs(fit - target))
        worst_route = max(worst_route, abs(fit - closed))
    shape = [asy.check_monotone(asy.alpha_table(lat)) for lat in ("sq", "tri")]
    mono = all(s[0] for s in shape)
    dom = all(s[1] for s in shape)
    ok = worst_paper <= 1e-5 and worst_route <= 1e-9 and mono and dom
    return Check("alpha values", ok,
                 f"max |fit-printed| {worst_paper:.2e}, max |fit-closed| {worst_route:.2e}, "
                 f"monotone {mono}, P>F {dom}")


def check_flow_locus():
    fc = loci.flow_crossings_and_asymptotes()
    q_c, q_1 = 4.079828, 2.7760454
    roots_ok = abs(fc.q_c - q_c) <= 1e-4 and abs(fc.q_1 - q_1) <= 1e-4
    scan = np.array(fc.scan_crossings)
    scan_ok = all(len(scan) and np.min(np.abs(scan - t)) <= 1e-4 for t in (q_c, q_1))
    far_ok = len(fc.far_points) > 0 and fc.far_max_gap <= 0.05
    return Check("flow locus crossings", roots_ok and scan_ok and far_ok,
                 f"q_c {fc.q_c:.7f}, q_1 {fc.q_1:.7f}, scan {[round(float(x), 6) for x in fc.scan_crossings]}, "
                 f"far-field gap {fc.far_max_gap:.3f} rad over {len(fc.far_points)} points")


def _median_circle_distance(m, r=3):
    z = loci.finite_zeros(f"clan:jn:r={r},m={m}", kind="P").points
    z = z[np.abs(z.imag) > 1e-8]
    return float(np.median(loci.distance_to_circles(z, r)))


def check_chromatic_locus(res=600, threads=1):
    spec = loci.chromatic_spectrum(3)
    locus = loci.equimodular_locus(spec, (-1.0, 7.0, -3.5, 3.5), res=res, threads=threads)
    circ, _ = loci.chromatic_circle_locus(3, n=2880)
    H = loci.hausdorff(locus.points, circ.points)
    qc = {}
    for r in range(1, 5):
        xs, _ = loci.real_crossings(loci.chromatic_spectrum(r), -0.5, 2 * r + 1.5)
        qc[r] = max(xs) if xs else math.nan
    qc_ok = all(abs(qc[r] - 2 * r) <= 1e-6 for r in qc)
    z = loci.finite_zeros("clan:jn:r=3,m=20", kind="P").points
    real = z[np.abs(z.imag) <= 1e-8].real
    reals_ok = all(np.min(np.abs(real - t)) <= 1e-8 for t in (1, 3, 5))
    d8, d20 = _median_circle_distance(8), _median_circle_distance(20)
    ok = H <= 0.02 and qc_ok and reals_ok and d20 < d8
    return Check("chromatic circle loci", ok,
                 f"Hausdorff {H:.4f}, q_c {[round(float(v), 6) for v in qc.values()]}, real zeros {{1,3,5}} {reals_ok}, "
                 f"median distance m=8 {d8:.4f} -> m=20 {d20:.4f}")


def check_reliability(mmax=30, res=400, threads=1):
    arcs = loci.reliability_arcs(res=res, threads=threads)
    cross_ok = any(abs(x - 1.5) <= 1e-6 for x in arcs.real_crossings)
    # at a root of R_2p the square root vanishes, so the two alphas coincide
    R2p = clan.reliability_spectrum_r2()[1]
    ends = np.array(arcs.endpoints, dtype=complex)
    lam, _ = clan.reliability_alpha_batch(ends)
    gap = np.array([min(abs(a - b) for i, a in enumerate(row) for b in row[i + 1:]) for row in lam])
    res_ok = all(abs(complex(R2p.eval_complex(z))) <= 1e-8 for z in ends)
    end_ok = len(ends) == 6 and res_ok and float(gap.max()) <= 1e-6 and all(p % 2 == 1 for p in arcs.endpoint_parity)
    worst = 0.0
    for m in range(1, mmax + 1):
        z = np.array(roots(clan.reliability_clan_poly(m)))
        worst = max(worst, float(np.max(np.abs(z - 1))))
    disk_ok = worst <= 1 + 1e-6
    return Check("reliability arcs", cross_ok and end_ok and disk_ok,
                 f"real crossings {[round(float(x), 9) for x in arcs.real_crossings]}, {len(ends)} endpoints "
                 f"(alpha gap {gap.max():.1e}, parity {arcs.endpoint_parity}), max |p-1| m<={mmax} {worst:.9f}")


def check_recurrence(M=None):
    out = []
    for r, order in ((2, 5), (3, None)):
        for x, y in asy.GENERIC_POINTS:
            max_order = clan.structure_counts(r).total
            seq = clan.tutte_clan_sequence(r, x, y, 2 * max_order + 4)
            fit = asy.fit_recurrence(seq, max_order)
            out.append((r, fit.order, fit.distinct_roots() if fit.ok else None))
    ok = all(o == 5 for r, o, _ in out if r == 2) and all(d == 11 for r, _, d in out if r == 3)
    return Check("recurrence extraction", ok,
                 "; ".join(f"r={r} order {o} distinct roots {d}" for r, o, d in out))


def check_continuity(res=600, threads=1):
    spec = loci.potts_spectrum(3, -0.9)
    locus = loci.equimodular_locus(spec, (-1.0, 7.0, -3.5, 3.5), res=res, threads=threads)
    pairs, rel = loci.continuity_pairs(spec, locus, count=50, sep=1e-4)
    ok = len(rel) == 50 and float(rel.max()) < 1e-3
    return Check("continuity of |exp f|", ok,
                 f"{len(rel)} straddling pairs, max relative jump {rel.max():.2e}")


ACCEPTANCE = [
    (1, check_oracle), (2, check_structure), (3, check_clan_closed), (4, check_golden),
    (5, check_spanning), (6, check_acyclic), (7, check_alpha), (8, check_flow_locus),
    (9, check_chromatic_locus), (10, check_reliability), (11, check_recurrence), (12, check_continuity),
]


# ---------------------------------------------------------- other suites

def check_clan_r3_twist():
    from .families import clan_cyclic_twisted
    ok = all(tutte_dc(clan_cyclic(3, m)).polynomial == tutte_dc(clan_cyclic_twisted(3, m)).polynomial
             for m in (1, 2, 3))
    return Check("r=3 twisted ring equals untwisted", ok, "m=1..3")


def check_clan_r3_checksum():
    ok = clan.tutte_clan_poly(3, 1) == tutte_dc(clan_cyclic(3, 1)).polynomial
    return Check("r=3 quartic/cubic transcription checksum", ok, "full polynomial at m=1")


def check_clan_r3_chromatic():
    ok = all(clan.chromatic_clan_poly(3, m) == _chromatic_dc(3, m) for m in (1, 2, 3, 4))
    return Check("r=3 chromatic closed form", ok, "m=1..4 against the Tutte route")


def _chromatic_dc(r, m):
    from .specializations import chromatic
    return chromatic(clan_cyclic(r, m))


def check_clan_r3_potts():
    v = Fraction(-9, 10)
    Z = z_from_t(tutte_dc(clan_cyclic(3, 2)), 1, 6).polynomial
    ok = all(clan.potts_clan_closed(3, 2, q, v) == Z.eval_exact(q, v) for q in range(-3, 8))
    return Check("r=3 Potts closed form", ok, "m=2, v=-9/10, q=-3..7")


def check_clan_r3_structure():
    sc = clan.structure_counts(3)
    ok = sc.counts == (4, 4, 3, 1) and sc.total == 12 and clan.coefficient_sum_check(3).is_zero()
    return Check("r=3 structure counts", ok, f"{sc.counts} total {sc.total}")


def check_clan_r3_spanning():
    ok = all(spanning.nst_clan_jn(3, m) == spanning.kirchhoff_count(clan_cyclic(3, m)) for m in range(1, 7))
    return Check("r=3 spanning trees", ok, "m=1..6")


def check_clan_r3_acyclic():
    rows = asy.acyclic_formula_check(("clan", 3), range(1, 4)).rows
    return Check("r=3 acyclic orientations", all(r[3] for r in rows), f"{[r[1] for r in rows]}")


def check_clan_r3_region():
    ok = loci.chromatic_region(-1, 3) == 1
    return Check("q=-1 lies in the outer chromatic region", ok, f"region R3,{loci.chromatic_region(-1, 3)}")


SUITES = {
    "oracle": [check_oracle],
    "structure": [check_structure],
    "clan": [check_clan_closed, check_golden],
    "spanning": [check_spanning],
    "acyclic": [check_acyclic],
    "alpha": [check_alpha],
    "flow": [check_flow_locus],
    "chromatic": [check_chromatic_locus],
    "reliability": [check_reliability],
    "recurrence": [check_recurrence],
    "continuity": [check_continuity],
    "clan-r3": [
        lambda: check_clan_closed(rs=(3,)), check_clan_r3_checksum, check_clan_r3_twist,
        check_clan_r3_structure, check_clan_r3_chromatic, check_clan_r3_potts,
        check_clan_r3_spanning, check_clan_r3_acyclic, check_clan_r3_region,
        lambda: Check(*_recurrence_r3()),
    ],
    "acceptance": [fn for _, fn in ACCEPTANCE],
}


def _recurrence_r3():
    x, y = asy.GENERIC_POINTS[0]
    fit = asy.fit_recurrence(clan.tutte_clan_sequence(3, x, y, 28), 12)
    d = fit.distinct_roots() if fit.ok else None
    return "r=3 recurrence", d == 11, f"order {fit.order}, distinct roots {d}"


_THREADED = {check_chromatic_locus, check_reliability, check_continuity}


def run_suite(name, threads=1):
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    out = []
    for fn in SUITES[name]:
        try:
            out.append(fn(threads=threads) if fn in _THREADED else fn())
        except Exception as exc:  # a crashing check is a failed check
            out.append(Check(getattr(fn, "__name__", "check"), False, f"{type(exc).__name__}: {exc}"))
    return out
