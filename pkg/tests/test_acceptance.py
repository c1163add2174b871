"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
summary lines.  Every tolerance is fixed here, not configurable.
"""

import itertools
import time
from pathlib import Path

import numpy as np

from torusweyl.lattice import PhasePoint, TorusDim, eta_pow, symplectic, tau_pow
from torusweyl import doublespace as ds
from torusweyl import fileio, lines, sic_opt
from torusweyl.cli import main as cli_main
from torusweyl.errors import EvenDimension
from torusweyl.identities import (
    localization,
    main_formula_center,
    main_formula_chord,
    pure_state_suite,
    transition_suite,
)
from torusweyl.phase_repr import (
    CENTER,
    CHORD,
    center_repr,
    chord_repr,
    odd_d_restrict,
    position_state,
    random_density_matrix,
    random_pure_state,
    reconstruct,
    reconstruct_restricted,
)
from torusweyl.weylops import (
    build_operator,
    compose_rr,
    compose_rt,
    compose_tr,
    compose_tt,
    max_abs_diff,
    reflection,
    reflection_from_translations,
    reflection_stack,
    translation,
    translation_stack,
)
from conftest import haar_unitary, random_operator

GOLDEN = Path(__file__).parent / "golden"


def _tick(criterion: str, passed: bool, detail: str = ""):
    status = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {criterion}: {status}  {detail}")
    assert passed, f"{criterion} failed: {detail}"


# ---------------------------------------------------------------- criterion 1
def test_criterion_01_group_law_suite():
    t0 = time.time()
    worst = 0.0
    for d in (1, 2, 3, 4):
        dim = TorusDim(d)
        n = 2 * d
        ts = translation_stack(dim).reshape(n * n, d, d)
        rs = reflection_stack(dim).reshape(n * n, d, d)
        labels = [(q, p) for q in range(n) for p in range(n)]
        idx = {lab: i for i, lab in enumerate(labels)}
        for a in labels:
            ta, ra = ts[idx[a]], rs[idx[a]]
            prods = {
                "tt": np.einsum("ij,kjl->kil", ta, ts),
                "rr": np.einsum("ij,kjl->kil", ra, rs),
                "tr": np.einsum("ij,kjl->kil", ta, rs),
                "rt": np.einsum("ij,kjl->kil", ra, ts),
            }
            for kindtag, compose in (
                ("tt", compose_tt),
                ("rr", compose_rr),
                ("tr", compose_tr),
                ("rt", compose_rt),
            ):
                for k, b in enumerate(labels):
                    label, expo, kind = compose(dim, a, b)
                    stack = ts if kind == "translation" else rs
                    expected = tau_pow(dim, expo) * stack[idx[(label.q, label.p)]]
                    worst = max(worst, max_abs_diff(prods[kindtag][k], expected))
        # periodicity and half-periodicity, exhaustively over labels
        for a in labels:
            moved = ((a[0] + n) % n, (a[1] + n) % n)
            worst = max(worst, max_abs_diff(ts[idx[a]], translation(dim, (a[0] + n, a[1] + n))))
            for chi in itertools.product((0, 1), repeat=2):
                sign = (-1.0) ** (symplectic(a, chi) + d * chi[0] * chi[1])
                worst = max(
                    worst,
                    max_abs_diff(translation(dim, (a[0] + d * chi[0], a[1] + d * chi[1])), sign * ts[idx[a]]),
                    max_abs_diff(reflection(dim, (a[0] + d * chi[0], a[1] + d * chi[1])), sign * rs[idx[a]]),
                )
    rng = np.random.default_rng(101)
    for d in (5, 8, 9, 16):
        dim = TorusDim(d)
        for _ in range(200):
            a = tuple(rng.integers(0, 2 * d, 2))
            b = tuple(rng.integers(0, 2 * d, 2))
            for compose, builders in (
                (compose_tt, (translation, translation)),
                (compose_rr, (reflection, reflection)),
                (compose_tr, (translation, reflection)),
                (compose_rt, (reflection, translation)),
            ):
                label, expo, kind = compose(dim, a, b)
                got = builders[0](dim, a) @ builders[1](dim, b)
                expected = tau_pow(dim, expo) * build_operator(dim, kind, label)
                worst = max(worst, max_abs_diff(got, expected))
    elapsed = time.time() - t0
    _tick("1 group-law suite", worst <= 1e-12 and elapsed <= 60,
          f"max residual {worst:.2e}, {elapsed:.1f}s")


# ---------------------------------------------------------------- criterion 2
def test_criterion_02_basis_completeness():
    rng = np.random.default_rng(202)
    worst = 0.0
    for d in range(2, 10):
        dim = TorusDim(d)
        n = 2 * d
        rev = (-np.arange(n)) % n
        for _ in range(50):
            a = random_operator(rng, d)
            b = random_operator(rng, d)
            direct = np.trace(a @ b)
            ac = center_repr(dim, a).values
            bc = center_repr(dim, b).values
            at = chord_repr(dim, a).values
            bt = chord_repr(dim, b).values
            # tr(A T) tr(T^dag B) summed: tr(A T_xi) = A~(-xi), tr(T_xi^dag B) = B~tilde...
            # both sides from the representation arrays
            s_r = (ac * bc).sum() / (4 * d)
            s_t = (at[np.ix_(rev, rev)] * bt).sum() / (4 * d)
            worst = max(worst, abs(direct - s_r) / abs(direct), abs(direct - s_t) / abs(direct))
    _tick("2 basis completeness", worst <= 1e-10, f"max relative residual {worst:.2e}")


# ---------------------------------------------------------------- criterion 3
def test_criterion_03_transform_consistency():
    rng = np.random.default_rng(303)
    worst_ref = 0.0
    for d in (2, 3, 4, 5):
        dim = TorusDim(d)
        for _ in range(6):
            lab = tuple(rng.integers(0, 2 * d, 2))
            worst_ref = max(
                worst_ref,
                max_abs_diff(reflection_from_translations(dim, lab), reflection(dim, lab)),
            )
    worst_rt = 0.0
    for d in (1, 2, 3, 4, 5, 8):
        dim = TorusDim(d)
        a = random_operator(rng, d)
        worst_rt = max(worst_rt, max_abs_diff(reconstruct(center_repr(dim, a)), a))
        worst_rt = max(worst_rt, max_abs_diff(reconstruct(chord_repr(dim, a)), a))
    worst_odd = 0.0
    for d in (3, 5, 7):
        dim = TorusDim(d)
        a = random_operator(rng, d)
        for repr_fn, kind in ((center_repr, CENTER), (chord_repr, CHORD)):
            restricted = odd_d_restrict(repr_fn(dim, a))
            worst_odd = max(worst_odd, max_abs_diff(reconstruct_restricted(dim, restricted, kind), a))
    raised = False
    try:
        odd_d_restrict(center_repr(TorusDim(4), random_operator(rng, 4)))
    except EvenDimension:
        raised = True
    ok = worst_ref <= 1e-10 and worst_rt <= 1e-10 and worst_odd <= 1e-10 and raised
    _tick("3 transform consistency", ok,
          f"refl {worst_ref:.2e}, roundtrip {worst_rt:.2e}, odd-d {worst_odd:.2e}, even-d raises {raised}")


# ---------------------------------------------------------------- criterion 4
def test_criterion_04_state_normalizations():
    rng = np.random.default_rng(404)
    worst = 0.0
    bound_worst = 0.0
    for d in range(2, 9):
        dim = TorusDim(d)
        for k in range(100):
            if k % 2 == 0:
                state = random_pure_state(dim, rng)
                rho = state.density()
                pure = True
            else:
                state = random_density_matrix(dim, rng)
                rho = state.matrix
                pure = False
            w = center_repr(dim, state).values
            chi = chord_repr(dim, state).values
            purity = np.trace(rho @ rho).real
            worst = max(
                worst,
                abs(w.sum().real / (2 * d) - 1.0),
                abs(chi[0, 0] - 1.0),
                abs((w.real**2).sum() / (4 * d) - purity),
                abs((np.abs(chi) ** 2).sum() / (4 * d) - purity),
            )
            if pure:
                bound_worst = max(
                    bound_worst,
                    np.abs(w).max() - 1.0,
                    np.abs(chi).max() - 1.0,
                )
    _tick("4 state normalizations", worst <= 1e-10 and bound_worst <= 1e-10,
          f"max residual {worst:.2e}, bound excess {bound_worst:.2e}")


# ---------------------------------------------------------------- criterion 5
def _line_suite_for_direction(dim, xi, rho, worst):
    d, n = dim.d, dim.two_d
    ops = [lines.line_operator(dim, lines.LineSpec(PhasePoint(*xi), a)) for a in range(n)]
    stack = np.stack(ops)
    prods = np.einsum("aij,bjk->abik", stack, stack)
    target = np.zeros_like(prods)
    for a in range(n):
        target[a, a] = ops[a]
    worst = max(worst, float(np.abs(prods - target).max()))
    worst = max(worst, max_abs_diff(stack.sum(axis=0), np.eye(d)))
    # integer ranks, parity vanishing
    sign_factor = (-1) ** (d * xi[0] * xi[1])
    for a in range(n):
        tr = np.trace(ops[a])
        worst = max(worst, abs(tr.imag), abs(tr.real - round(tr.real)))
        if (1 + (-1) ** a * sign_factor) == 0:
            worst = max(worst, float(np.abs(ops[a]).max()))
    # marginal positivity and normalization along every direction
    marg = lines.wigner_marginal(center_repr(dim, rho), xi)
    worst = max(worst, abs(marg.sum() - 1.0), max(0.0, -float(marg.min())))
    # eigenbasis oracle where the spectrum is simple (order-d directions)
    if xi != (0, 0):
        r, _ = lines.translation_order(dim, xi)
        if r == d:
            labels, vecs = lines.translation_eigenbasis(dim, xi)
            for k in range(d):
                pop = (vecs[:, k].conj() @ rho.matrix @ vecs[:, k]).real
                worst = max(worst, abs(marg[labels[k]] - pop))
    return worst


def test_criterion_05_line_projector_suite():
    rng = np.random.default_rng(505)
    worst = 0.0
    for d in (2, 3, 4, 6):
        dim = TorusDim(d)
        rho = random_density_matrix(dim, rng)
        for xi in itertools.product(range(2 * d), repeat=2):
            worst = _line_suite_for_direction(dim, xi, rho, worst)
        # vertical projections recover the position basis
        for j in range(d):
            expected = np.zeros((d, d))
            expected[j, j] = 1.0
            got = lines.line_operator(dim, lines.LineSpec(PhasePoint(0, 1), 2 * j))
            worst = max(worst, max_abs_diff(got, expected))
    for d in (5, 7, 8):
        dim = TorusDim(d)
        rho = random_density_matrix(dim, rng)
        for _ in range(10):
            xi = tuple(int(v) for v in rng.integers(0, 2 * d, 2))
            worst = _line_suite_for_direction(dim, xi, rho, worst)
    _tick("5 line/projector suite", worst <= 1e-9, f"max residual {worst:.2e}")


# ---------------------------------------------------------------- criterion 6
def test_criterion_06_identity_catalogue():
    rng = np.random.default_rng(606)
    worst = 0.0
    for d in range(2, 9):
        dim = TorusDim(d)
        a, b = random_operator(rng, d), random_operator(rng, d)
        for _ in range(4):
            x = tuple(rng.integers(0, 2 * d, 2))
            y = tuple(rng.integers(0, 2 * d, 2))
            worst = max(worst, main_formula_center(dim, a, b, x, y).residual)
            worst = max(worst, main_formula_chord(dim, a, b, x, y).residual)
        for _ in range(50):
            psi = random_pure_state(dim, rng)
            for rep in pure_state_suite(psi):
                worst = max(worst, rep.residual)
            rho = psi.density()
            x = tuple(rng.integers(0, 2 * d, 2))
            y = tuple(rng.integers(0, 2 * d, 2))
            worst = max(worst, main_formula_center(dim, rho, rho, x, y).residual)
            worst = max(worst, main_formula_chord(dim, rho, rho, x, y).residual)
        for _ in range(50):
            psi1 = random_pure_state(dim, rng)
            psi2 = random_pure_state(dim, rng)
            for rep in transition_suite(psi1, psi2):
                worst = max(worst, rep.residual)
    # mixed states produce strictly positive residuals on every identity
    min_mixed = np.inf
    for d in (3, 5):
        dim = TorusDim(d)
        rho = random_density_matrix(dim, rng)
        for rep in pure_state_suite(rho):
            min_mixed = min(min_mixed, rep.residual)
    ok = worst <= 1e-9 and min_mixed > 1e-6
    _tick("6 identity catalogue", ok,
          f"max pure residual {worst:.2e}, min mixed residual {min_mixed:.2e}")


# ---------------------------------------------------------------- criterion 7
def test_criterion_07_localization_bounds():
    dim10 = TorusDim(10)
    worst_m1 = max(abs(localization(position_state(dim10, j)).M - 1.0) for j in range(10))
    rng = np.random.default_rng(707)
    ok_bounds = True
    worst_cross = 0.0
    worst_k = 0.0
    for d in range(2, 11):
        dim = TorusDim(d)
        floor = 2.0 / (d + 1)
        for _ in range(500):
            loc = localization(random_pure_state(dim, rng))
            if not (floor - 1e-9 <= loc.M <= 1 + 1e-9 and loc.L <= loc.M + 1e-9):
                ok_bounds = False
            worst_cross = max(worst_cross, loc.m_residual)
        for _ in range(20):
            loc = localization(random_pure_state(dim, rng), random_pure_state(dim, rng))
            worst_k = max(worst_k, loc.k_residual)
    ok = worst_m1 <= 1e-10 and ok_bounds and worst_cross <= 1e-10 and worst_k <= 1e-9
    _tick("7 localization bounds", ok,
          f"position-state |M-1| {worst_m1:.2e}, cross {worst_cross:.2e}, K {worst_k:.2e}")


# ---------------------------------------------------------------- criterion 8
def test_criterion_08_sic_search():
    t0 = time.time()
    results = {}
    for d in (2, 3, 4, 5, 6, 7, 10):
        cfg = sic_opt.SearchConfig(
            d=d, restarts=200, max_iters=2000, seed=12345, target_tol=1e-9
        )
        res = sic_opt.search(cfg)
        results[d] = res
    elapsed = time.time() - t0
    ok = all(r.gap <= 1e-6 and r.flat_chord_residual <= 1e-4 for r in results.values())
    # d = 10 reproduces the lower-bound exemplar value 2/11
    ok = ok and abs(results[10].best_m - 2.0 / 11.0) <= 1e-6
    ok = ok and elapsed <= 600
    detail = ", ".join(f"d={d}: gap {r.gap:.1e} flat {r.flat_chord_residual:.1e}" for d, r in results.items())
    _tick("8 SIC search", ok, f"{detail}; {elapsed:.1f}s")


# ---------------------------------------------------------------- criterion 9
def _double_points(d):
    return [
        ds.double_point(TorusDim(d), (a, b), (c, e))
        for a in range(d)
        for b in range(d)
        for c in range(d)
        for e in range(d)
    ]


def _double_suite(d, pairs, worst):
    dim = TorusDim(d)
    pts = _double_points(d)
    tmats = np.stack([ds.super_translation(dim, X).matrix for X in pts])
    rmats = np.stack([ds.super_reflection(dim, X).matrix for X in pts])
    index = {
        (X.x.q, X.x.p, X.xi.q, X.xi.p): i for i, X in enumerate(pts)
    }

    def at(X):
        return index[(X.x.q % d, X.x.p % d, X.xi.q % d, X.xi.p % d)]

    for i, j in pairs:
        X, Y = pts[i], pts[j]
        phase = eta_pow(dim, ds.double_symplectic(X, Y))
        s = ds.double_point(dim, X.x + Y.x, X.xi + Y.xi)
        df = ds.double_point(dim, X.x - Y.x, X.xi - Y.xi)
        worst = max(
            worst,
            max_abs_diff(tmats[i] @ tmats[j], phase * tmats[at(s)]),
            max_abs_diff(rmats[i] @ rmats[j], tmats[at(df)] / phase),
            max_abs_diff(tmats[i] @ rmats[j], phase * rmats[at(s)]),
            max_abs_diff(rmats[i] @ tmats[j], rmats[at(df)] / phase),
        )
        # trace orthogonality against the exact single-trace values
        tt = np.trace(tmats[i].conj().T @ tmats[j])
        rr = np.trace(rmats[i] @ rmats[j])
        z = ds.double_point(dim, Y.x - X.x, Y.xi - X.xi)
        tplus = np.trace(translation(dim, z.x + z.xi))
        tminus = np.trace(translation(dim, z.x - z.xi).conj().T)
        expected_tt = eta_pow(dim, -ds.double_symplectic(X, Y)) * tplus * tminus
        worst = max(worst, abs(tt - expected_tt))
        if d % 2 == 1:
            delta = d * d if i == j else 0.0
            worst = max(worst, abs(tt - delta), abs(rr - delta))
    return worst


def test_criterion_09_double_phase_space_suite():
    rng = np.random.default_rng(909)
    worst = 0.0
    for d in (2, 3):
        npts = d**4
        pairs = [(i, j) for i in range(npts) for j in range(npts)]
        worst = _double_suite(d, pairs, worst)
    # d = 4 exhaustive over composition laws is 65536 pairs; sample the trace
    # checks but keep the law check exhaustive per left factor
    npts = 4**4
    pairs = [(i, j) for i in range(npts) for j in rng.integers(0, npts, 6)]
    worst = _double_suite(4, pairs, worst)
    pairs = [(int(i), int(j)) for i, j in rng.integers(0, 5**4, size=(60, 2))]
    worst = _double_suite(5, pairs, worst)

    # Parseval and reconstruction hold verbatim at odd d
    for d in (3, 5):
        dim = TorusDim(d)
        s1 = ds.SuperOperator(dim, random_operator(rng, d * d))
        s2 = ds.SuperOperator(dim, random_operator(rng, d * d))
        c1 = ds.double_center_repr(s1)
        c2 = ds.double_center_repr(s2)
        t1 = ds.double_chord_repr(s1)
        t2 = ds.double_chord_repr(s2)
        lhs = np.trace(s1.matrix @ s2.matrix.conj().T)
        worst = max(
            worst,
            abs(lhs - (c1.entries * c2.entries.conj()).sum() / d**2) / abs(lhs),
            abs(lhs - (t1.entries * t2.entries.conj()).sum() / d**2) / abs(lhs),
            max_abs_diff(ds.reconstruct_superop(c1).matrix, s1.matrix),
            max_abs_diff(ds.reconstruct_superop(t1).matrix, s1.matrix),
        )

    # Choi conversion, both kinds, exhaustive at d in {2,3,4} and sampled d=5
    for d in (2, 3, 4):
        dim = TorusDim(d)
        for x in itertools.product(range(d), repeat=2):
            for xi in itertools.product(range(d), repeat=2):
                xp = (x[0] + xi[0], x[1] + xi[1])
                xm = (x[0] - xi[0], x[1] - xi[1])
                for kind in ("reflection", "translation"):
                    terms = ds.choi_convert(dim, xp, xm, kind)
                    got = ds.realize_choi_terms(dim, terms, kind)
                    if kind == "reflection":
                        lhs = ds.bullet(reflection(dim, xp), reflection(dim, xm))
                    else:
                        lhs = ds.bullet(translation(dim, xp), translation(dim, xm).conj().T)
                    worst = max(worst, max_abs_diff(got, lhs))
    dim5 = TorusDim(5)
    for _ in range(10):
        x = tuple(int(v) for v in rng.integers(0, 5, 2))
        xi = tuple(int(v) for v in rng.integers(0, 5, 2))
        xp = (x[0] + xi[0], x[1] + xi[1])
        xm = (x[0] - xi[0], x[1] - xi[1])
        for kind in ("reflection", "translation"):
            terms = ds.choi_convert(dim5, xp, xm, kind)
            got = ds.realize_choi_terms(dim5, terms, kind)
            if kind == "reflection":
                lhs = ds.bullet(reflection(dim5, xp), reflection(dim5, xm))
            else:
                lhs = ds.bullet(translation(dim5, xp), translation(dim5, xm).conj().T)
            worst = max(worst, max_abs_diff(got, lhs))

    # transition-basis partial transposition
    d = 3
    def unit(i, j):
        m = np.zeros((d, d), dtype=complex)
        m[i, j] = 1.0
        return m
    for k, i, l, j in itertools.product(range(d), repeat=4):
        worst = max(
            worst,
            max_abs_diff(
                ds.bullet(unit(k, i), unit(l, j).conj().T),
                ds.conjugation_rows(unit(k, l), unit(i, j)),
            ),
        )
    _tick("9 double phase space", worst <= 1e-10, f"max residual {worst:.2e}")


# --------------------------------------------------------------- criterion 10
def test_criterion_10_propagator_equivalence():
    rng = np.random.default_rng(1010)
    worst = 0.0
    for d in (2, 3, 4):
        dim = TorusDim(d)
        for _ in range(50):
            u = haar_unitary(rng, d)
            rho = random_density_matrix(dim, rng)
            got = ds.wigner_propagator(dim, u).propagate(center_repr(dim, rho))
            expected = center_repr(dim, u @ rho.matrix @ u.conj().T)
            worst = max(worst, max_abs_diff(got.values, expected.values))
        for _ in range(20):
            k1, k2 = random_operator(rng, d), random_operator(rng, d)
            gram = k1.conj().T @ k1 + k2.conj().T @ k2
            evals, evecs = np.linalg.eigh(gram)
            inv_sqrt = evecs @ np.diag(evals**-0.5) @ evecs.conj().T
            ops = [k1 @ inv_sqrt, k2 @ inv_sqrt]
            rho = random_density_matrix(dim, rng)
            got = ds.kraus_wigner_kernel(dim, ops).propagate(center_repr(dim, rho))
            direct = sum(k @ rho.matrix @ k.conj().T for k in ops)
            worst = max(worst, max_abs_diff(got.values, center_repr(dim, direct).values))
    # translation covariance W'(x) = W(x - 2 chi) for every chi
    for d in range(2, 7):
        dim = TorusDim(d)
        n = 2 * d
        rho = random_density_matrix(dim, rng)
        w = center_repr(dim, rho).values
        for chi in itertools.product(range(n), repeat=2):
            t = translation(dim, chi)
            moved = center_repr(dim, t @ rho.matrix @ t.conj().T).values
            q = (np.arange(n)[:, None] - 2 * chi[0]) % n
            p = (np.arange(n)[None, :] - 2 * chi[1]) % n
            worst = max(worst, max_abs_diff(moved, w[q, p]))
    _tick("10 propagator equivalence", worst <= 1e-10, f"max residual {worst:.2e}")


# --------------------------------------------------------------- criterion 11
def test_criterion_11_cli_and_golden(tmp_path):
    s = tmp_path / "coh.tws"
    w = tmp_path / "coh_w.tws"
    ppm = tmp_path / "coh.ppm"
    assert cli_main(["state", "--d", "16", "--coherent", "8,8", "--out", str(s)]) == 0
    assert cli_main(["wigner", str(s), "--out", str(w)]) == 0
    assert cli_main(["render", str(w), "--render", "256x256", "--out", str(ppm)]) == 0
    golden = (GOLDEN / "coherent_d16_wigner.ppm").read_bytes()
    byte_identical = ppm.read_bytes() == golden

    # determinism and file round trips
    s2 = tmp_path / "coh2.tws"
    assert cli_main(["state", "--d", "16", "--coherent", "8,8", "--out", str(s2)]) == 0
    deterministic = s.read_bytes() == s2.read_bytes()
    state = fileio.read_state(s)
    fileio.write_state(s2, state)
    round_trip = s.read_bytes() == s2.read_bytes()

    # qualitative structure: peak in the first quadrant at the packet center,
    # sign-alternating values in the antipodal region
    arr = fileio.read_array(w)
    vals = arr.values.real
    peak = np.unravel_index(np.argmax(np.abs(vals)), vals.shape)
    peak_in_quadrant = peak == (8, 8)
    anti = vals[16:32, 16:32]
    alternating = anti.min() < -1e-3 and anti.max() > 1e-3

    ok = byte_identical and deterministic and round_trip and peak_in_quadrant and alternating
    _tick(
        "11 CLI and golden files",
        ok,
        f"golden {byte_identical}, deterministic {deterministic}, roundtrip {round_trip}, "
        f"peak {peak}, alternating {alternating}",
    )
