"""
End-to-end acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (visible with ``pytest -s`` or in
the captured output); the asserts carry the same thresholds.  Quadratic
identity residuals are compared relative to the operand scale N^2, since the
raw Frobenius defect of double-precision products of size-N generators grows
like N^2 sqrt(N) eps.
"""

import time

import numpy as np

from fuzzball.equivalence import (
    compatibility_residual,
    grvv_to_su2,
    round_trip,
    su2_to_grvv,
)
from fuzzball.geometry import (
    SphereGrid,
    gamma_so5,
    gamma_so9,
    hopf_s2,
    hopf_s4,
    hopf_s8,
    identification_check,
    killing_equation_residual,
    killing_spinor,
    s8_inversion,
    s_matrix,
    section,
    unit_vector,
    weyl_plus,
)
from fuzzball.grvv import gauge_dress, ground_state, grvv_residual, sphere_constraints
from fuzzball.harmonics import build_basis, classical_ylm, decompose_bifundamental, reconstruct_bifundamental
from fuzzball.matcore import dagger, frobenius_norm, random_unitary
from fuzzball.spectra import (
    commutator_decay,
    coherent_state,
    fuzzy_laplacian_spectrum,
    scalar_kinetic_spectrum,
)
from fuzzball.su2rep import (
    PAULI,
    bilinears,
    casimir,
    direct_sum,
    doublet_covariance_residual,
    intertwiner_residual,
    irrep,
    su2_closure_residual,
    u2_structure_residual,
)
from fuzzball.superalg import calibrate

SIGT = np.stack([p.T for p in PAULI])


def report(idx, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {idx} {status}: {detail}")
    assert ok, f"criterion {idx}: {detail}"


def test_criterion_1_ground_states():
    start = time.time()
    worst = 0.0
    for n in (1, 2, 3, 4, 8, 16, 64, 256):
        sol = ground_state(n)
        res = grvv_residual(sol)
        assert res < 1e-12 * n, (n, res)
        left, right = sphere_constraints(sol)
        assert left < 1e-11 and right < 1e-11, (n, left, right)
        worst = max(worst, res / n, left, right)
    elapsed = time.time() - start
    report(
        1,
        worst < 1e-11 and elapsed < 5.0,
        f"cubic residual and sphere constraints up to n=256, worst {worst:.2e}, {elapsed:.2f}s",
    )


def test_criterion_2_bilinear_tables():
    worst = 0.0
    for n in range(2, 9):
        m = np.arange(1, n + 1)
        sol = ground_state(n)
        g = sol.matrices
        gd = sol.daggers
        e11 = np.zeros((n, n))
        e11[0, 0] = 1.0
        tables = {
            "g1gd1": (g[0] @ gd[0], np.diag(m - 1.0)),
            "g2gd2": (g[1] @ gd[1], np.diag(n - m + 0.0)),
            "g1gd2": (
                g[0] @ gd[1],
                np.diag(np.sqrt((m[1:] - 1.0) * (n - m[1:] + 1.0)), -1),
            ),
            "g2gd1": (
                g[1] @ gd[0],
                np.diag(np.sqrt((n - m[:-1]) * m[:-1] + 0.0), 1),
            ),
            "gd1g1": (gd[0] @ g[0], np.diag(m - 1.0)),
            "gd2g2": (gd[1] @ g[1], np.diag(n - m + 1.0) - n * e11),
            "gd1g2": (
                gd[0] @ g[1],
                np.diag(np.sqrt((m[:-1] - 1.0) * (n - m[:-1])), 1),
            ),
            "gd2g1": (
                gd[1] @ g[0],
                np.diag(np.sqrt((m[1:] - 2.0) * (n - m[1:] + 1.0)), -1),
            ),
            "sum_ggd": (g[0] @ gd[0] + g[1] @ gd[1], (n - 1.0) * np.eye(n)),
            "sum_gdg": (gd[0] @ g[0] + gd[1] @ g[1], n * np.eye(n) - n * e11),
        }
        for name, (got, want) in tables.items():
            err = float(np.max(np.abs(got - want)))
            assert err < 1e-13, (n, name, err)
            worst = max(worst, err)
    report(2, worst < 1e-13, f"all bilinear tables for n=2..8, worst entry error {worst:.2e}")


def test_criterion_3_algebraic_closures():
    worst = 0.0

    def check(sol, n):
        nonlocal worst
        scale = n * n
        b = bilinears(sol)
        rels = [
            su2_closure_residual(b.j),
            su2_closure_residual(b.jbar_i),
            u2_structure_residual(b),
            doublet_covariance_residual(sol, b),
        ]
        if sol.is_irreducible():
            rels.append(intertwiner_residual(sol, b))
        worst = max(worst, max(rels) / scale)

    for n in (2, 3, 4, 8, 16, 32, 64):
        check(ground_state(n), n)
    for n in (8, 64):
        for seed in range(20):
            rng = np.random.default_rng(seed)
            sol = gauge_dress(ground_state(n), random_unitary(n, rng), random_unitary(n, rng))
            check(sol, n)
    report(
        3,
        worst < 1e-11,
        f"su(2)/u(2)/covariance/intertwiner closures to n=64 with 20 dressings, "
        f"worst relative residual {worst:.2e}",
    )


def test_criterion_4_harmonics():
    worst = 0.0
    for n in (2, 4, 8, 16):
        rep = irrep(n)
        basis = build_basis(rep)
        keys = basis.keys()
        assert len(keys) == n * n
        gram = np.array(
            [[np.trace(dagger(basis[a]) @ basis[b]) for b in keys] for a in keys]
        )
        worst = max(worst, float(np.max(np.abs(gram - n * np.eye(n * n)))) / n)
        for l, m in keys:
            y = basis[(l, m)]
            worst = max(
                worst,
                frobenius_norm(rep.j3 @ y - y @ rep.j3 - 2.0 * m * y) / max(1, 2 * l),
            )
        ev = fuzzy_laplacian_spectrum(rep)
        ref = np.sort(
            np.concatenate([[4.0 * l * (l + 1)] * (2 * l + 1) for l in range(n)])
        )
        worst = max(worst, float(np.max(np.abs(ev - ref))) / max(ref[-1], 1.0))
    assert worst < 1e-9

    n = 4
    sol = ground_state(n)
    basis = build_basis(irrep(n))
    rng = np.random.default_rng(123)
    worst_rec = 0.0
    worst_edge = 0.0
    for _ in range(100):
        r1 = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        r2 = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        modes = decompose_bifundamental(r1, r2, sol, basis=basis)
        worst_rec = max(worst_rec, modes.residual)
        import dataclasses

        stripped = dataclasses.replace(modes, t_coeffs=np.zeros_like(modes.t_coeffs))
        rec = reconstruct_bifundamental(stripped, sol, basis)
        worst_edge = max(
            worst_edge, float(max(np.max(np.abs(rec[0][:, 0])), np.max(np.abs(rec[1][:, 0]))))
        )
    report(
        4,
        worst < 1e-9 and worst_rec < 1e-10 and worst_edge < 1e-12,
        f"harmonic bases to n=16 (worst {worst:.2e}); 100 doublet reconstructions "
        f"(worst {worst_rec:.2e}, edge leak {worst_edge:.2e})",
    )


def test_criterion_5_equivalence_round_trip():
    worst_grvv = 0.0
    worst_cas = 0.0
    worst_compat = 0.0
    all_pass = True
    for partition in ([2], [3], [5], [2, 3], [2, 2, 4]):
        rep = direct_sum([irrep(k) for k in partition])
        result = su2_to_grvv(rep)
        worst_grvv = max(worst_grvv, result.residuals["grvv"])
        back, _, _ = grvv_to_su2(result.solution)
        c1 = np.sort(np.linalg.eigvalsh(casimir(rep)))
        c2 = np.sort(np.linalg.eigvalsh(casimir(back)))
        worst_cas = max(worst_cas, float(np.max(np.abs(c1 - c2))))
        worst_compat = max(worst_compat, compatibility_residual(rep, np.eye(rep.dim)))
        all_pass = all_pass and round_trip(rep).passed and round_trip(result.solution).passed
    report(
        5,
        worst_grvv < 1e-11 and worst_cas < 1e-10 and worst_compat < 1e-11 and all_pass,
        f"round trips over five partitions: cubic {worst_grvv:.2e}, casimir {worst_cas:.2e}, "
        f"compatibility {worst_compat:.2e}",
    )


def test_criterion_6_graded_closure():
    pairs = set()
    worst = 0.0
    for n in (2, 3, 4, 8, 16):
        cal = calibrate(ground_state(n))
        pairs.add((round(cal.scale, 12), cal.convention))
        worst = max(worst, cal.total)
    report(
        6,
        pairs == {(1.0, "eps_left")} and worst < 1e-10,
        f"one calibrated pair {sorted(pairs)} across n=2..16, worst closure {worst:.2e}",
    )


def test_criterion_7_geometry_grid():
    grid = SphereGrid.make(64, 128)
    tt, pp = grid.mesh()
    x = unit_vector(tt, pp)
    roundtrip = float(np.max(np.abs(hopf_s2(section(x)) - x)))
    assert roundtrip < 1e-14

    s = s_matrix(tt, pp)
    g3 = np.einsum("...ab,bc,...dc->...ad", s, PAULI[2], s.conj()) + np.einsum(
        "...i,iab->...ab", x, SIGT
    )
    smat_res = float(np.max(np.abs(g3)))
    assert smat_res < 1e-12

    u = weyl_plus(killing_spinor(tt, pp))
    coords = np.einsum("...a,iab,...b->...i", u.conj(), SIGT, u).real
    coord_res = float(np.max(np.abs(coords - x)))
    assert coord_res < 1e-12

    k1 = killing_equation_residual(tt, pp, h=4e-3)
    k2 = killing_equation_residual(tt, pp, h=2e-3)
    korder = float(np.log2(k1 / k2))
    assert abs(korder - 2.0) < 0.1

    ident = identification_check(2, grid)
    assert abs(ident.order_b - 2.0) < 0.1
    assert abs(ident.order_c - 2.0) < 0.1
    assert ident.dx_agreement < 1e-10
    assert ident.local_phase < 1e-8
    report(
        7,
        True,
        f"64x128 grid: roundtrip {roundtrip:.2e}, frame relations {smat_res:.2e}, "
        f"coordinates {coord_res:.2e}, orders ({korder:.2f}, {ident.order_b:.2f}, "
        f"{ident.order_c:.2f}), phase match {ident.local_phase:.2e}",
    )


def test_criterion_8_higher_spheres():
    worst_cliff = 0.0
    for gammas, dim in ((gamma_so5(), 4), (gamma_so9(), 16)):
        for i, a in enumerate(gammas):
            for j, b in enumerate(gammas):
                worst_cliff = max(
                    worst_cliff,
                    float(np.max(np.abs(a @ b + b @ a - 2.0 * (i == j) * np.eye(dim)))),
                )
    assert worst_cliff < 1e-14

    rng = np.random.default_rng(17)
    worst_norm = 0.0
    worst_round = 0.0
    done = 0
    while done < 100:
        g4 = rng.normal(size=4) + 1j * rng.normal(size=4)
        g4 /= np.linalg.norm(g4)
        worst_norm = max(worst_norm, abs(np.linalg.norm(hopf_s4(g4)) - 1.0))
        g16 = rng.normal(size=16)
        g16 /= np.linalg.norm(g16)
        worst_norm = max(worst_norm, abs(np.linalg.norm(hopf_s8(g16)) - 1.0))
        x9 = rng.normal(size=9)
        x9 /= np.linalg.norm(x9)
        if x9[8] <= -0.99:
            continue
        u8 = rng.normal(size=8)
        u8 /= np.linalg.norm(u8)
        worst_round = max(
            worst_round, float(np.max(np.abs(hopf_s8(s8_inversion(x9, u8)) - x9)))
        )
        done += 1
    report(
        8,
        worst_norm < 1e-12 and worst_round < 1e-12,
        f"clifford {worst_cliff:.2e}, sphere norms {worst_norm:.2e}, "
        f"inversion roundtrip {worst_round:.2e} over 100 draws",
    )


def test_criterion_9_convergence():
    worst = 0.0
    for n, value in commutator_decay([2, 3, 7, 16, 64, 128, 256]):
        worst = max(worst, abs(value - 2.0 / (n + 1)))
    assert worst < 1e-13

    theta = np.linspace(0.25, np.pi - 0.25, 20)
    phi = np.linspace(0.0, 2 * np.pi, 40, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    sizes = (4, 8, 16, 32)
    errors = {}
    for n in sizes:
        rep = irrep(n)
        basis = build_basis(rep)
        psi = coherent_state(rep, tt, pp)
        for l in range(1, 4):
            for m in range(-l, l + 1):
                sym = np.einsum(
                    "...n,nm,...m->...", psi.conj(), basis[(l, m)], psi
                )
                err = float(np.max(np.abs(sym - classical_ylm(l, m, tt, pp))))
                errors.setdefault((l, m), []).append(err)
    monotone = all(
        all(b < a for a, b in zip(seq, seq[1:])) for seq in errors.values()
    )
    report(
        9,
        worst < 1e-13 and monotone,
        f"commutator decay matches 2/(n+1) ({worst:.2e}); symbol errors decrease "
        f"monotonically for all l <= 3 over n = {sizes}",
    )


def test_criterion_10_kinetic_fixture():
    fixture = np.array([1.0, 1.0, 1.0, 5.0, 7.0, 7.0, 7.0, 11.0, 11.0, 11.0, 11.0, 11.0])
    ks = scalar_kinetic_spectrum(irrep(2))
    dev = float(np.max(np.abs(ks.eigenvalues - fixture)))
    membership = ks.ji_triple_residual
    report(
        10,
        dev < 1e-10 and abs(ks.ji_triple_eigenvalue - 5.0) < 1e-10 and membership < 1e-11,
        f"n=2 kinetic spectrum within {dev:.2e} of fixture; generator triple is an "
        f"eigenvector (eigenvalue {ks.ji_triple_eigenvalue:.12g}, residual {membership:.2e})",
    )
