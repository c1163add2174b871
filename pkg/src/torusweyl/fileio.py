"""Line-oriented text formats for states, operators, arrays, and results.

Every file starts with a magic + version line, a kind line, and the
dimension, followed by row-major "real imag" pairs printed at 17
significant digits.  That precision makes emit -> parse -> emit
byte-identical while keeping files diffable.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .errors import FileFormatError
from .lattice import TorusDim
from .phase_repr import CENTER, CHORD, DensityMatrix, PhaseArray, PureState
from .sic_opt import SearchConfig, SearchResult
from .doublespace import SuperOperator

MAGIC = "torusweyl-file"
VERSION = "1"

KIND_STATE = "state"
KIND_OPERATOR = "operator"
KIND_ARRAY = "array"
KIND_KRAUS = "kraus"
KIND_SUPEROP = "superop"
KIND_SICRESULT = "sicresult"


def _fmt(z: complex) -> str:
    return f"{z.real:.17g} {z.imag:.17g}"


def _emit_complex_lines(buf: io.StringIO, values: np.ndarray) -> None:
    for z in values.reshape(-1):
        buf.write(_fmt(complex(z)))
        buf.write("\n")


class _Parser:
    def __init__(self, text: str, path: str):
        self.lines = text.splitlines()
        self.pos = 0
        self.path = path

    def fail(self, msg: str):
        raise FileFormatError(f"{self.path}: {msg}")

    def next_line(self) -> str:
        if self.pos >= len(self.lines):
            self.fail("unexpected end of file")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def expect_field(self, key: str) -> str:
        line = self.next_line()
        parts = line.split(None, 1)
        if len(parts) != 2 or parts[0] != key:
            self.fail(f"expected '{key} <value>', got {line!r}")
        return parts[1]

    def read_complex(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=complex)
        for i in range(count):
            parts = self.next_line().split()
            if len(parts) != 2:
                self.fail(f"expected 'real imag' pair, got {self.lines[self.pos - 1]!r}")
            try:
                out[i] = complex(float(parts[0]), float(parts[1]))
            except ValueError:
                self.fail(f"bad numeric literal {self.lines[self.pos - 1]!r}")
        return out


def _open_parser(path) -> tuple[_Parser, str, TorusDim]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    p = _Parser(text, str(path))
    header = p.next_line().split()
    if header != [MAGIC, VERSION]:
        p.fail(f"bad magic/version line {header!r}")
    kind = p.expect_field("kind")
    try:
        d = int(p.expect_field("d"))
        dim = TorusDim(d)
    except ValueError as exc:
        p.fail(f"bad dimension: {exc}")
    return p, kind, dim


def _header(kind: str, d: int) -> str:
    return f"{MAGIC} {VERSION}\nkind {kind}\nd {d}\n"


def write_state(path, state: PureState) -> None:
    buf = io.StringIO()
    buf.write(_header(KIND_STATE, state.dim.d))
    _emit_complex_lines(buf, state.amplitudes)
    Path(path).write_text(buf.getvalue())


def read_state(path) -> PureState:
    p, kind, dim = _open_parser(path)
    if kind != KIND_STATE:
        p.fail(f"expected a state file, got kind {kind!r}")
    return PureState(dim, p.read_complex(dim.d))


def write_operator(path, dim: TorusDim, matrix: np.ndarray) -> None:
    buf = io.StringIO()
    buf.write(_header(KIND_OPERATOR, dim.d))
    _emit_complex_lines(buf, np.asarray(matrix, dtype=complex))
    Path(path).write_text(buf.getvalue())


def read_operator(path) -> tuple[TorusDim, np.ndarray]:
    p, kind, dim = _open_parser(path)
    if kind != KIND_OPERATOR:
        p.fail(f"expected an operator file, got kind {kind!r}")
    d = dim.d
    return dim, p.read_complex(d * d).reshape(d, d)


def write_array(path, arr: PhaseArray) -> None:
    buf = io.StringIO()
    buf.write(_header(KIND_ARRAY, arr.dim.d))
    buf.write(f"rep {arr.kind}\n")
    _emit_complex_lines(buf, arr.values)
    Path(path).write_text(buf.getvalue())


def read_array(path) -> PhaseArray:
    p, kind, dim = _open_parser(path)
    if kind != KIND_ARRAY:
        p.fail(f"expected an array file, got kind {kind!r}")
    rep = p.expect_field("rep")
    if rep not in (CENTER, CHORD):
        p.fail(f"bad rep {rep!r}")
    n = dim.two_d
    return PhaseArray(dim, rep, p.read_complex(n * n).reshape(n, n))


def array_planes_csv(arr: PhaseArray) -> str:
    """CSV dump with one row per lattice point: q, p, real, imag."""
    rows = ["q,p,real,imag"]
    n = arr.dim.two_d
    for q in range(n):
        for p in range(n):
            z = arr.values[q, p]
            rows.append(f"{q},{p},{z.real:.17g},{z.imag:.17g}")
    return "\n".join(rows) + "\n"


def write_kraus(path, dim: TorusDim, ops: list[np.ndarray]) -> None:
    buf = io.StringIO()
    buf.write(_header(KIND_KRAUS, dim.d))
    buf.write(f"count {len(ops)}\n")
    for op in ops:
        _emit_complex_lines(buf, np.asarray(op, dtype=complex))
    Path(path).write_text(buf.getvalue())


def read_kraus(path) -> tuple[TorusDim, list[np.ndarray]]:
    p, kind, dim = _open_parser(path)
    if kind != KIND_KRAUS:
        p.fail(f"expected a kraus file, got kind {kind!r}")
    try:
        count = int(p.expect_field("count"))
    except ValueError as exc:
        p.fail(f"bad count: {exc}")
    if count < 1:
        p.fail("kraus count must be >= 1")
    d = dim.d
    return dim, [p.read_complex(d * d).reshape(d, d) for _ in range(count)]


def write_superop(path, s: SuperOperator) -> None:
    buf = io.StringIO()
    buf.write(_header(KIND_SUPEROP, s.dim.d))
    buf.write(f"provenance {s.provenance}\n")
    _emit_complex_lines(buf, s.matrix)
    Path(path).write_text(buf.getvalue())


def read_superop(path) -> SuperOperator:
    p, kind, dim = _open_parser(path)
    if kind != KIND_SUPEROP:
        p.fail(f"expected a superop file, got kind {kind!r}")
    provenance = p.expect_field("provenance")
    n = dim.d * dim.d
    return SuperOperator(dim, p.read_complex(n * n).reshape(n, n), provenance)


def write_search_result(path, result: SearchResult) -> None:
    cfg = result.config
    buf = io.StringIO()
    buf.write(_header(KIND_SICRESULT, cfg.d))
    buf.write(f"m {result.best_m:.17g}\n")
    buf.write(f"gap {result.gap:.17g}\n")
    buf.write(f"flat_residual {result.flat_chord_residual:.17g}\n")
    buf.write(f"iterations {result.iterations}\n")
    buf.write(f"restarts_used {result.restarts_used}\n")
    buf.write(f"best_restart {result.best_restart}\n")
    buf.write(f"seed {cfg.seed}\n")
    buf.write(f"restarts {cfg.restarts}\n")
    buf.write(f"max_iters {cfg.max_iters}\n")
    buf.write(f"target_tol {cfg.target_tol:.17g}\n")
    _emit_complex_lines(buf, result.best_state.amplitudes)
    Path(path).write_text(buf.getvalue())


def read_search_result(path) -> SearchResult:
    p, kind, dim = _open_parser(path)
    if kind != KIND_SICRESULT:
        p.fail(f"expected a sicresult file, got kind {kind!r}")
    try:
        m = float(p.expect_field("m"))
        gap = float(p.expect_field("gap"))
        flat = float(p.expect_field("flat_residual"))
        iterations = int(p.expect_field("iterations"))
        restarts_used = int(p.expect_field("restarts_used"))
        best_restart = int(p.expect_field("best_restart"))
        seed = int(p.expect_field("seed"))
        restarts = int(p.expect_field("restarts"))
        max_iters = int(p.expect_field("max_iters"))
        target_tol = float(p.expect_field("target_tol"))
    except ValueError as exc:
        p.fail(f"bad field: {exc}")
    state = PureState(dim, p.read_complex(dim.d))
    cfg = SearchConfig(
        d=dim.d, restarts=restarts, max_iters=max_iters, seed=seed, target_tol=target_tol
    )
    return SearchResult(
        best_state=state,
        best_m=m,
        gap=gap,
        iterations=iterations,
        flat_chord_residual=flat,
        restarts_used=restarts_used,
        best_restart=best_restart,
        config=cfg,
    )


def read_state_or_density(path):
    """Read a state-bearing file as PureState or DensityMatrix.

    Accepts state files, operator files (interpreted as density matrices),
    and search-result files (their fiducial state), so found fiducials can
    be fed straight back into the array and identity commands.
    """
    p, kind, dim = _open_parser(path)
    if kind == KIND_STATE:
        return PureState(dim, p.read_complex(dim.d))
    if kind == KIND_OPERATOR:
        d = dim.d
        return DensityMatrix(dim, p.read_complex(d * d).reshape(d, d))
    if kind == KIND_SICRESULT:
        return read_search_result(path).best_state
    p.fail(f"expected a state, operator, or sicresult file, got kind {kind!r}")


def read_channel(path):
    """Read a propagation input: ('unitary', dim, U) or ('kraus', dim, ops)."""
    p, kind, dim = _open_parser(path)
    d = dim.d
    if kind == KIND_OPERATOR:
        return "unitary", dim, p.read_complex(d * d).reshape(d, d)
    if kind == KIND_KRAUS:
        try:
            count = int(p.expect_field("count"))
        except ValueError as exc:
            p.fail(f"bad count: {exc}")
        ops = [p.read_complex(d * d).reshape(d, d) for _ in range(count)]
        return "kraus", dim, ops
    p.fail(f"expected an operator or kraus file, got kind {kind!r}")
