from __future__ import annotations

import json
import math

import numpy as np
import pytest

from tuttekit import clan, loci
from tuttekit.tutte import GuardError

R3_WINDOW = (-1.0, 7.0, -3.5, 3.5)


@pytest.fixture(scope="module")
def chrom3():
    return loci.equimodular_locus(loci.chromatic_spectrum(3), R3_WINDOW, res=200)


def test_locus_near_circles(chrom3):
    circ, regions = loci.chromatic_circle_locus(3, n=1440)
    assert loci.hausdorff(chrom3.points, circ.points) < 0.05
    assert [r.label for r in regions] == ["R3,1", "R3,2", "R3,3", "R3,4"]


def test_locus_invariants(chrom3):
    assert chrom3.conjugation_defect() < 1e-8
    assert loci.tie_defect(loci.chromatic_spectrum(3), chrom3.points).max() < 1e-6


def test_threads_do_not_change_output():
    spec = loci.chromatic_spectrum(2)
    a = loci.equimodular_locus(spec, (-1, 5, -3, 3), res=80, threads=1)
    b = loci.equimodular_locus(spec, (-1, 5, -3, 3), res=80, threads=3)
    assert np.array_equal(a.points, b.points)


def test_circuit_locus_is_circle():
    v = 1.5
    L = loci.equimodular_locus(loci.circuit_spectrum(v), (-4, 1, -2.5, 2.5), res=120)
    assert np.abs(np.abs(L.points + v) - v).max() < 1e-8


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_q_c(r):
    xs, _ = loci.real_crossings(loci.chromatic_spectrum(r), -0.5, 2 * r + 1.5)
    assert abs(max(xs) - 2 * r) < 1e-9
    assert np.allclose(sorted(xs), [2 * j for j in range(r + 1)], atol=1e-9)


def test_circle_geometry():
    assert loci.circle_params(3) == [(3, 3), (4, 2), (5, 1)]
    assert loci.chromatic_region(-1, 3) == 1
    assert loci.chromatic_region(5.5, 3) == 4
    assert loci.chromatic_region(1.5, 3) == 2
    # |W| is continuous across a circle
    for c, rho in loci.circle_params(3):
        z = c + rho * np.exp(0.7j)
        a = loci.chromatic_W(z * (1 + 1e-9), 3)
        b = loci.chromatic_W(z * (1 - 1e-9), 3)
        assert abs(a - b) < 1e-6 * a


def test_potts_crossing_moves_left():
    xs, _ = loci.real_crossings(loci.potts_spectrum(3, -0.9), 0.5, 7.0)
    assert 4.5 < max(xs) < 6


def test_flow_record():
    fc = loci.flow_crossings_and_asymptotes()
    assert abs(fc.q_c - 4.079828) < 1e-5
    assert abs(fc.q_1 - 2.7760454) < 1e-5
    assert len(fc.asymptotes) == 6
    assert fc.far_max_gap < 0.05
    assert np.abs(fc.far_points).max() <= 1 / 30 + 1e-12


def test_phi_regions():
    r1 = loci.phi_regions(5)
    lam = clan.flow_lambda_batch(np.array([5.0 + 0j]))[0][0]
    assert r1.label == "R1" and r1.dominant == "F,2,0,1"
    assert abs(r1.magnitude - np.abs(lam).max() ** 0.5) < 1e-12
    r3 = loci.phi_regions(2.5)
    assert r3.label == "R3" and abs(r3.magnitude - math.sqrt(2)) < 1e-12
    assert loci.phi_regions(2j).dominant == "F,2,0,1"
    assert loci.phi_regions(4.0798288948574655).label == "boundary"
    assert loci.phi_regions(-40 + 1j).label == "R4"


def test_reliability_arcs_small():
    arcs = loci.reliability_arcs(res=120)
    assert any(abs(x - 1.5) < 1e-6 for x in arcs.real_crossings)
    assert len(arcs.endpoints) == 6
    assert all(p % 2 == 1 for p in arcs.endpoint_parity)
    assert min(abs(z - (0.790 + 0.508j)) for z in arcs.endpoints) < 1e-3
    assert min(abs(z - (1.320 + 0.309j)) for z in arcs.endpoints) < 1e-3


def test_finite_zeros():
    F = loci.finite_zeros("clan:jn:r=2", m=30, kind="F")
    assert len(F) == 91  # |E| - |V| + 1
    real = F.points[F.points.imag == 0].real
    assert 1.0 in real and 2.0 in real
    assert F.conjugation_defect() < 1e-8
    R = loci.finite_zeros("clan:jn:r=2,m=3", kind="R")
    assert np.abs(R.points - 1).max() <= 1 + 1e-6
    P = loci.finite_zeros("clan:jn:r=3,m=20", kind="P")
    assert len(P) == 60


def test_small_graph_zeros():
    Z = loci.finite_zeros("circuit:m=6", kind="Z", v=-1)
    assert np.allclose(np.sort_complex(Z.points),
                       np.sort_complex(loci.finite_zeros("circuit:m=6", kind="P").points))


def test_degree_guard():
    with pytest.raises(GuardError):
        loci.zeros_polynomial("clan:jn:r=5,m=100", kind="P")


def test_point_set_formats():
    L = loci.LocusPointSet(np.array([1 + 2j, 1 - 2j]), "q", "finite-m-zeros", {"m": 3}, ["a", "b"])
    assert L.to_csv().splitlines() == ["re,im,kind,label", "1,2,finite-m-zeros,a", "1,-2,finite-m-zeros,b"]
    body = json.loads(json.dumps(L.to_json()))
    assert body["points"] == [[1.0, 2.0], [1.0, -2.0]]
    assert L.to_gnuplot().splitlines() == ["1 2", "1 -2"]
