"""Command-line front end.

Subcommands generate states, compute and render phase-space arrays, run
identity suites, search for SIC fiducials, and propagate states through
channels.  Exit codes: 0 success, 1 identity/verification failure,
2 malformed input or flags, 3 semantic errors (dimension or invariant
violations).  Every command is deterministic given its flags and seed.
The environment variable TORUSWEYL_OUTDIR, when set, prefixes relative
output paths.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import doublespace, fileio, identities, lines, render, sic_opt, weylops
from .errors import FileFormatError, TorusWeylError
from .identities import IdentityReport, report_lines
from .lattice import TorusDim, as_point, tau_pow
from .phase_repr import (
    DensityMatrix,
    PureState,
    center_repr,
    chord_repr,
    coherent_state,
    position_state,
    random_pure_state,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_SEMANTIC = 3


def _out_path(path: str) -> Path:
    base = os.environ.get("TORUSWEYL_OUTDIR")
    p = Path(path)
    if base and not p.is_absolute():
        return Path(base) / p
    return p


def _parse_label(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise FileFormatError(f"expected 'q,p', got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise FileFormatError(f"bad lattice label {text!r}") from exc


def _parse_geometry(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise FileFormatError(f"expected 'WIDTHxHEIGHT', got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise FileFormatError(f"bad geometry {text!r}") from exc


def cmd_state(args) -> int:
    dim = TorusDim(args.d)
    if args.position is not None:
        state = position_state(dim, args.position)
    elif args.coherent is not None:
        state = coherent_state(dim, _parse_label(args.coherent))
    else:
        rng = np.random.default_rng(args.seed)
        state = random_pure_state(dim, rng)
    fileio.write_state(_out_path(args.out), state)
    return EXIT_OK


def _load_state_input(path):
    return fileio.read_state_or_density(path)


def cmd_wigner(args) -> int:
    state = _load_state_input(args.input)
    arr = center_repr(state.dim, state)
    fileio.write_array(_out_path(args.out), arr)
    return EXIT_OK


def cmd_chord(args) -> int:
    state = _load_state_input(args.input)
    arr = chord_repr(state.dim, state)
    fileio.write_array(_out_path(args.out), arr)
    return EXIT_OK


def cmd_marginals(args) -> int:
    state = _load_state_input(args.input)
    xi = _parse_label(args.xi)
    if args.chord:
        arr = chord_repr(state.dim, state)
    else:
        arr = center_repr(state.dim, state)
    text = lines.marginal_csv(arr, xi)
    _out_path(args.out).write_text(text)
    return EXIT_OK


def cmd_render(args) -> int:
    arr = fileio.read_array(args.input)
    n = arr.dim.two_d
    if args.render:
        width, height = _parse_geometry(args.render)
    else:
        width = height = 8 * n
    spec = render.RenderSpec(width=width, height=height, mode=args.mode, gamma=args.gamma)
    image = render.render_array(arr, spec)
    render.write_ppm(_out_path(args.out), image)
    return EXIT_OK


def _group_suite(d: int, tol: float) -> list[IdentityReport]:
    """Seeded spot checks of the operator group algebra at dimension d."""
    dim = TorusDim(d)
    rng = np.random.default_rng(7)
    worst_law = 0.0
    worst_period = 0.0
    for _ in range(40):
        a = tuple(rng.integers(0, dim.two_d, 2))
        b = tuple(rng.integers(0, dim.two_d, 2))
        for compose, left, right in (
            (weylops.compose_tt, weylops.translation, weylops.translation),
            (weylops.compose_rr, weylops.reflection, weylops.reflection),
            (weylops.compose_tr, weylops.translation, weylops.reflection),
            (weylops.compose_rt, weylops.reflection, weylops.translation),
        ):
            label, expo, kind = compose(dim, a, b)
            product = left(dim, a) @ right(dim, b)
            expected = tau_pow(dim, expo) * weylops.build_operator(dim, kind, label)
            worst_law = max(worst_law, weylops.max_abs_diff(product, expected))
        shift = tuple(rng.integers(-2, 3, 2))
        moved = (a[0] + 2 * dim.d * shift[0], a[1] + 2 * dim.d * shift[1])
        worst_period = max(
            worst_period,
            weylops.max_abs_diff(weylops.translation(dim, moved), weylops.translation(dim, a)),
            weylops.max_abs_diff(weylops.reflection(dim, moved), weylops.reflection(dim, a)),
        )
    return [
        IdentityReport("group_composition_laws", 0, 0, worst_law, worst_law <= tol, tol),
        IdentityReport("label_periodicity", 0, 0, worst_period, worst_period <= tol, tol),
    ]


def _lines_suite(d: int, tol: float) -> list[IdentityReport]:
    """Projector algebra and partition of unity over seeded directions."""
    dim = TorusDim(d)
    rng = np.random.default_rng(11)
    worst_orth = 0.0
    worst_part = 0.0
    for _ in range(6):
        xi = as_point(tuple(rng.integers(0, dim.two_d, 2)))
        ops = [lines.line_operator(dim, lines.LineSpec(xi, a)) for a in range(dim.two_d)]
        total = sum(ops)
        worst_part = max(worst_part, weylops.max_abs_diff(total, np.eye(dim.d)))
        for a in range(dim.two_d):
            for b in range(dim.two_d):
                target = ops[a] if a == b else np.zeros((dim.d, dim.d))
                worst_orth = max(worst_orth, weylops.max_abs_diff(ops[a] @ ops[b], target))
    return [
        IdentityReport("line_projector_orthogonality", 0, 0, worst_orth, worst_orth <= tol, tol),
        IdentityReport("line_partition_of_unity", 0, 0, worst_part, worst_part <= tol, tol),
    ]


def _double_suite(d: int, tol: float) -> list[IdentityReport]:
    """Seeded spot checks of the double-space composition laws."""
    dim = TorusDim(d)
    rng = np.random.default_rng(13)
    worst = 0.0
    from .lattice import eta_pow

    for _ in range(20):
        x1, k1 = tuple(rng.integers(0, d, 2)), tuple(rng.integers(0, d, 2))
        x2, k2 = tuple(rng.integers(0, d, 2)), tuple(rng.integers(0, d, 2))
        X = doublespace.double_point(dim, x1, k1)
        Y = doublespace.double_point(dim, x2, k2)
        phase = eta_pow(dim, doublespace.double_symplectic(X, Y))
        tx = doublespace.super_translation(dim, X).matrix
        ty = doublespace.super_translation(dim, Y).matrix
        rx = doublespace.super_reflection(dim, X).matrix
        ry = doublespace.super_reflection(dim, Y).matrix
        sum_pt = doublespace.double_point(dim, (x1[0] + x2[0], x1[1] + x2[1]), (k1[0] + k2[0], k1[1] + k2[1]))
        diff_pt = doublespace.double_point(dim, (x1[0] - x2[0], x1[1] - x2[1]), (k1[0] - k2[0], k1[1] - k2[1]))
        worst = max(
            worst,
            weylops.max_abs_diff(tx @ ty, phase * doublespace.super_translation(dim, sum_pt).matrix),
            weylops.max_abs_diff(rx @ ry, doublespace.super_translation(dim, diff_pt).matrix / phase),
            weylops.max_abs_diff(tx @ ry, phase * doublespace.super_reflection(dim, sum_pt).matrix),
            weylops.max_abs_diff(rx @ ty, doublespace.super_reflection(dim, diff_pt).matrix / phase),
        )
    return [IdentityReport("double_composition_laws", 0, 0, worst, worst <= tol, tol)]


def cmd_identities(args) -> int:
    tol = args.tol
    reports: list[IdentityReport] = []
    if args.suite in ("group", "lines", "double"):
        if args.inputs:
            state = _load_state_input(args.inputs[0])
            d = state.dim.d
        elif args.d:
            d = args.d
        else:
            raise FileFormatError(f"suite {args.suite!r} needs --d or a state file")
        suite_fn = {"group": _group_suite, "lines": _lines_suite, "double": _double_suite}[args.suite]
        reports = suite_fn(d, tol)
    elif args.suite == "pure":
        if len(args.inputs) != 1:
            raise FileFormatError("suite 'pure' needs exactly one state file")
        state = _load_state_input(args.inputs[0])
        reports = identities.pure_state_suite(state, tol)
        if args.expect_pure and isinstance(state, DensityMatrix):
            purity = float(np.trace(state.matrix @ state.matrix).real)
            reports.append(
                IdentityReport("input_purity", purity, 1.0, abs(purity - 1.0), abs(purity - 1.0) <= tol, tol)
            )
    elif args.suite == "transition":
        if len(args.inputs) != 2:
            raise FileFormatError("suite 'transition' needs exactly two state files")
        s1 = _load_state_input(args.inputs[0])
        s2 = _load_state_input(args.inputs[1])
        if not isinstance(s1, PureState) or not isinstance(s2, PureState):
            raise TorusWeylError("transition suite needs pure states")
        reports = identities.transition_suite(s1, s2, tol)
    else:
        raise FileFormatError(f"unknown suite {args.suite!r}")

    text = report_lines(reports)
    sys.stdout.write(text)
    if args.out:
        _out_path(args.out).write_text(text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def cmd_sic(args) -> int:
    if args.d < 2:
        raise FileFormatError("sic search needs d >= 2")
    config = sic_opt.SearchConfig(
        d=args.d,
        restarts=args.restarts,
        max_iters=args.iters,
        seed=args.seed,
        target_tol=args.tol,
    )
    result = sic_opt.search(config)
    print(f"M = {result.best_m:.12g}")
    print(f"gap = {result.gap:.6g}")
    print(f"flat_chord_residual = {result.flat_chord_residual:.6g}")
    if args.out:
        fileio.write_search_result(_out_path(args.out), result)
    return EXIT_OK


def cmd_propagate(args) -> int:
    state = _load_state_input(args.state)
    channel_kind, channel_dim, payload = fileio.read_channel(args.channel)
    if channel_dim.d != state.dim.d:
        raise TorusWeylError(
            f"dimension mismatch: state d={state.dim.d}, channel d={channel_dim.d}"
        )
    dim = state.dim
    rho = state.density() if isinstance(state, PureState) else state.matrix

    if channel_kind == "unitary":
        sup = doublespace.unitary_superop(dim, payload)
        kernel = doublespace.wigner_propagator(dim, payload)
    else:
        sup = doublespace.kraus_superop(payload)
        kernel = doublespace.kraus_wigner_kernel(dim, payload)

    rho_direct = sup.apply(rho)
    w_in = center_repr(dim, rho)
    w_prop = kernel.propagate(w_in)

    if args.verify:
        w_direct = center_repr(dim, rho_direct)
        residual = weylops.max_abs_diff(w_direct.values, w_prop.values)
        print(f"route agreement residual = {residual:.3e}")
        if residual > args.tol:
            print("FAIL: matrix and wigner routes disagree")
            return EXIT_CHECK_FAILED

    if args.via == "matrix":
        fileio.write_operator(_out_path(args.out), dim, rho_direct)
    else:
        fileio.write_array(_out_path(args.out), w_prop)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusweyl",
        description="Discrete phase-space toolkit on the torus: states, Wigner/chord "
        "arrays, identity suites, SIC search, channel propagation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="generate a state file")
    p.add_argument("--d", type=int, required=True, help="Hilbert dimension")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--position", type=int, help="position basis index j")
    group.add_argument("--coherent", help="coherent-state center label 'q,p' on the 2d grid")
    group.add_argument("--random", action="store_true", help="Haar-random state (default)")
    p.add_argument("--seed", type=int, default=0, help="seed for --random")
    p.add_argument("--out", required=True, help="output state file")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("wigner", help="center (Wigner) array of a state")
    p.add_argument("input", help="state or density operator file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("chord", help="chord array of a state")
    p.add_argument("input", help="state or density operator file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_chord)

    p = sub.add_parser("marginals", help="line marginals along a direction, as CSV")
    p.add_argument("input", help="state or density operator file")
    p.add_argument("--xi", required=True, help="direction label 'q,p'")
    p.add_argument("--chord", action="store_true", help="use the chord array")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_marginals)

    p = sub.add_parser("render", help="render an array file to a P6 pixmap")
    p.add_argument("input", help="array file")
    p.add_argument("--render", help="geometry WIDTHxHEIGHT (multiples of the 2d grid)")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument(
        "--mode", choices=[render.HLS_COMPLEX, render.REAL_DIVERGING], default=render.HLS_COMPLEX
    )
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("identities", help="run an identity suite, exit 1 on failure")
    p.add_argument("inputs", nargs="*", help="state file(s), per suite")
    p.add_argument(
        "--suite", choices=["group", "pure", "transition", "lines", "double"], default="pure"
    )
    p.add_argument("--d", type=int, help="dimension for stateless suites")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--expect-pure", action="store_true", help="also assert input purity")
    p.add_argument("--out", help="write the report here as well")
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("sic", help="search for a SIC fiducial state")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=200)
    p.add_argument("--iters", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-8, help="target gap above the Welch bound")
    p.add_argument("--out", help="result file")
    p.set_defaults(func=cmd_sic)

    p = sub.add_parser("propagate", help="apply a unitary or Kraus channel to a state")
    p.add_argument("state", help="state or density operator file")
    p.add_argument("channel", help="operator (unitary) or kraus file")
    p.add_argument("--via", choices=["matrix", "wigner"], default="matrix")
    p.add_argument("--verify", action="store_true", help="cross-check both routes")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_propagate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except TorusWeylError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
