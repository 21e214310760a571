"""JSON command-line front end.

One request per invocation is read from ``--input FILE`` or stdin, and one
JSON document is written to stdout.  With ``--batch`` the input is an array of
requests and the output an array of results in the same order.

Complex numbers are ``[re, im]`` pairs, matrices are row-major nested lists
of them.  Generator specs are tagged by ``"type"``::

    {"type": "gksl",    "H": M, "lindblads": [M, ...]}
    {"type": "kwedge",  "K0": M, "kraus": [M, ...]}
    {"type": "superop", "L": M}          # n^2 x n^2, column-stacking convention

Exit status: 0 ok, 2 not-in-wedge, 3 hypothesis-violated, 4 invalid-input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from . import casework
from .decompose import (
    Gksl,
    KWedge,
    RawSuperop,
    build_generator,
    decompose,
    decompose_cptp,
    recompose_cptp,
    validate_cp_wedge,
)
from .errors import (
    CPSplitError,
    DimensionError,
    NotCPError,
    NotHermitianPreservingError,
    NotInWedgeError,
    NotTracePreservingError,
    ParseError,
    WeightError,
)
from .linalg import ATOL
from .superop import (
    Superoperator,
    choi,
    hamiltonian_part,
    hermitian_preserving_residual,
    is_cp,
    kraus_from_choi,
    trace_annihilation_residual,
)
from .weighted import b_inner, in_cp_b

COMMANDS = ("decompose", "decompose-cptp", "check", "kraus", "choi", "weighted-trace", "inner-product", "demo")
DEMOS = ("bloch", "transpose", "depolarize", "orthogonality")
EXIT_CODES = {"ok": 0, "not-in-wedge": 2, "hypothesis-violated": 3, "invalid-input": 4}
DEFAULT_SEED = 0

_NEEDS = {
    "decompose": ("input", "B"),
    "decompose-cptp": ("input", "B"),
    "check": ("input",),
    "kraus": ("input",),
    "choi": ("input",),
    "weighted-trace": ("input", "B"),
    "inner-product": ("input", "other", "B"),
    "demo": ("demo_name",),
}


# -- encoding -----------------------------------------------------------------

def encode(x):
    """JSON-ready form of arrays, complex scalars and containers."""
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            return np.stack([x.real, x.imag], axis=-1).tolist()
        return x.tolist()
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, dict):
        return {k: encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    return x


def parse_matrix(obj, where: str, square: bool = True) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"{where}: expected a non-empty nested list")
    try:
        arr = np.asarray(obj, dtype=float)
    except (ValueError, TypeError) as exc:
        raise DimensionError(f"{where}: ragged or non-numeric matrix ({exc})") from None
    if arr.ndim == 3 and arr.shape[2] == 2:
        arr = arr[..., 0] + 1j * arr[..., 1]
    elif arr.ndim != 2:
        raise DimensionError(f"{where}: expected rows of [re, im] entries, got array of shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{where}: matrix must be square, got {arr.shape}")
    return arr.astype(complex)


def _matrix_list(obj, where: str) -> List[np.ndarray]:
    if not isinstance(obj, list):
        raise ParseError(f"{where}: expected a list of matrices")
    return [parse_matrix(m, f"{where}[{i}]") for i, m in enumerate(obj)]


def parse_spec(obj, where: str = "input"):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object with a 'type' field")
    kind = obj.get("type")
    try:
        if kind == "gksl":
            h = parse_matrix(obj["H"], f"{where}.H")
            ops = _matrix_list(obj.get("lindblads", []), f"{where}.lindblads")
            spec, n = Gksl(H=h, lindblads=ops), h.shape[0]
        elif kind == "kwedge":
            k0 = parse_matrix(obj["K0"], f"{where}.K0")
            ops = _matrix_list(obj.get("kraus", []), f"{where}.kraus")
            spec, n = KWedge(K0=k0, kraus=ops), k0.shape[0]
        elif kind == "superop":
            spec = RawSuperop(L=Superoperator(parse_matrix(obj["L"], f"{where}.L")))
            return spec
        else:
            raise ParseError(f"{where}.type: expected 'gksl', 'kwedge' or 'superop', got {kind!r}")
    except KeyError as exc:
        raise ParseError(f"{where}: missing field {exc.args[0]!r}") from None
    for i, v in enumerate(ops):
        if v.shape != (n, n):
            raise DimensionError(f"{where}: operator {i} is {v.shape}, expected {(n, n)}")
    return spec


@dataclass
class JobRequest:
    command: str
    input: Any = None
    B: Optional[np.ndarray] = None
    other: Any = None
    tol: Optional[float] = None
    demo_name: Optional[str] = None
    params: Dict[str, Any] = field(default_factory=dict)


@dataclass
class JobResult:
    status: str
    payload: Dict[str, Any]
    diagnostics: Dict[str, Any]
    message: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "payload": encode(self.payload),
            "diagnostics": encode(self.diagnostics),
            "message": self.message,
        }


def request_from_obj(obj) -> JobRequest:
    if not isinstance(obj, dict):
        raise ParseError("request must be a JSON object")
    cmd = obj.get("command")
    if cmd not in COMMANDS:
        raise ParseError(f"command: expected one of {', '.join(COMMANDS)}, got {cmd!r}")
    for name in _NEEDS[cmd]:
        if obj.get(name) is None:
            raise ParseError(f"{cmd}: missing required field {name!r}")
    req = JobRequest(command=cmd)
    if obj.get("input") is not None:
        req.input = parse_spec(obj["input"], "input")
    if obj.get("other") is not None:
        req.other = parse_spec(obj["other"], "other")
    if obj.get("B") is not None:
        req.B = parse_matrix(obj["B"], "B")
    if obj.get("tol") is not None:
        tol = obj["tol"]
        if not isinstance(tol, (int, float)) or tol <= 0:
            raise ParseError(f"tol: expected a positive number, got {tol!r}")
        req.tol = float(tol)
    if cmd == "demo":
        if obj["demo_name"] not in DEMOS:
            raise ParseError(f"demo_name: expected one of {', '.join(DEMOS)}, got {obj['demo_name']!r}")
        req.demo_name = obj["demo_name"]
        req.params = dict(obj.get("params") or {})
    return req


def parse_request(data) -> JobRequest:
    """Parse one request from bytes, text or an already-decoded object."""
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return request_from_obj(data)


# -- execution ----------------------------------------------------------------

def _generator(req: JobRequest, tol: float) -> Superoperator:
    L = build_generator(req.input, tol)
    if req.B is not None and req.B.shape[0] != L.n:
        raise DimensionError(f"B is {req.B.shape[0]}x{req.B.shape[0]}, generator acts on {L.n}x{L.n}")
    return L


def _run_decompose(req, tol):
    d = decompose(_generator(req, tol), req.B, tol)
    vals = np.linalg.eigvalsh(d.phi_choi)[::-1]
    payload = {"K": d.K, "H": d.H, "Z": d.Z, "kraus": d.phi_kraus, "choi_eigenvalues": vals}
    return payload, vars(d.diagnostics).copy()


def _run_decompose_cptp(req, tol):
    d = decompose_cptp(_generator(req, tol), req.B, tol)
    vals = np.linalg.eigvalsh(d.phi_choi)[::-1]
    payload = {"H": d.H, "kraus": d.phi_kraus, "choi_eigenvalues": vals}
    diag = vars(d.diagnostics).copy()
    diag.update(
        domain_condition_residual=d.domain_condition_residual,
        z_residual=d.z_residual,
        trBH_abs=d.trBH_abs,
        recompose_residual=float(np.linalg.norm((recompose_cptp(d) - _generator(req, tol)).mat)),
    )
    return payload, diag


def _run_check(req, tol):
    L = _generator(req, tol)
    rep = validate_cp_wedge(L, tol)
    cp, min_eig = is_cp(L, tol)
    payload = {
        "member": rep.member,
        "prefilter_member": rep.prefilter_member,
        "cond_cp_min_eig": rep.cond_cp_min_eig,
        "dissipator_min_eig": rep.dissipator_min_eig,
        "is_cp": cp,
        "choi_min_eig": min_eig,
        "hermitian_preserving": hermitian_preserving_residual(L) <= tol,
        "trace_annihilating": trace_annihilation_residual(L) <= tol,
    }
    diag = {
        "hermitian_residual": rep.hermitian_residual,
        "trace_residual": trace_annihilation_residual(L),
        "verdicts_consistent": rep.consistent,
    }
    status = "ok" if rep.member else "not-in-wedge"
    return payload, diag, status


def _run_kraus(req, tol):
    L = _generator(req, tol)
    ops = kraus_from_choi(choi(L), tol)
    return {"kraus": ops, "choi_rank": len(ops)}, {}


def _run_choi(req, tol):
    c = choi(_generator(req, tol))
    return {"choi": c, "eigenvalues": np.linalg.eigvalsh(0.5 * (c + c.conj().T))[::-1]}, {}


def _run_weighted_trace(req, tol):
    member, rep = in_cp_b(_generator(req, tol), req.B, tol)
    payload = {"weighted_trace": rep.weighted_trace, "in_cp_b": member, "is_cp": rep.is_cp}
    if rep.overlaps is not None:
        payload["kraus_overlaps"] = rep.overlaps
    diag = {"kernel_residual": rep.kernel_residual, "threshold": rep.threshold, "choi_min_eig": rep.choi_min_eig}
    return payload, diag


def _run_inner_product(req, tol):
    a = _generator(req, tol)
    b = build_generator(req.other, tol)
    return {"value": b_inner(a, b, req.B, tol)}, {}


def _bloch_params(params) -> casework.BlochParams:
    keys = ("omega", "gamma1", "gamma2", "gamma3")
    defaults = dict(zip(keys, (1.0, 1.0, 2.0, 0.5)))
    unknown = set(params) - set(keys)
    if unknown:
        raise ParseError(f"params: unknown field(s) {sorted(unknown)}")
    defaults.update(params)
    try:
        return casework.BlochParams(**{k: float(defaults[k]) for k in keys})
    except ValueError as exc:
        raise ParseError(f"params: {exc}") from None


def _run_demo(req, tol, seed):
    name = req.demo_name
    params = dict(req.params)
    if name == "bloch":
        p = _bloch_params(params)
        B = req.B if req.B is not None else np.eye(2)
        L = casework.bloch_generator(p)
        d = decompose_cptp(L, B, tol)
        ham, gam = casework.bloch_reference_parts(p, B)
        payload = {"L": L.mat, "H": d.H, "kraus": d.phi_kraus}
        diag = {
            "ham_part_residual": float(np.linalg.norm((ham - hamiltonian_part(d.H)).mat)),
            "gamma_part_residual": float(np.linalg.norm((gam - casework.dissipator_of(d.phi)).mat)),
            "domain_condition_residual": d.domain_condition_residual,
        }
        return payload, diag
    if name == "transpose":
        B = req.B if req.B is not None else np.array([[1, 1j], [-1j, 1]])
        r = casework.transpose_decomposition(B, seed=seed)
        payload = {"criterion": r.criterion, "exists": r.exists}
        if r.exists:
            payload.update(K=r.K, weighted_trace=r.weighted_trace, min_sampled_eig=r.min_sampled_eig)
        return payload, {}
    if name == "depolarize":
        B = req.B if req.B is not None else np.diag([1.0, -1.0])
        r = casework.depolarizing_exclusion(B, tol=tol)
        return vars(r).copy(), {}
    if name == "orthogonality":
        B = req.B if req.B is not None else np.diag([2.0, 1.0])
        j, k = int(params.get("j", 0)), int(params.get("k", 1))
        H, V, value = casework.orthogonality_counterexample(B, j, k, tol)
        b = np.diag(B).real
        return {"H": H, "V": V, "value": value, "expected": (b[j] - b[k]) * (b.sum() - b[j])}, {}
    raise ParseError(f"unknown demo {name!r}")


_RUNNERS = {
    "decompose": _run_decompose,
    "decompose-cptp": _run_decompose_cptp,
    "kraus": _run_kraus,
    "choi": _run_choi,
    "weighted-trace": _run_weighted_trace,
    "inner-product": _run_inner_product,
}


def _status_for(exc: Exception) -> str:
    if isinstance(exc, (NotInWedgeError, NotHermitianPreservingError)):
        return "not-in-wedge"
    if isinstance(exc, (WeightError, NotTracePreservingError, NotCPError)):
        return "hypothesis-violated"
    return "invalid-input"


def execute(req: JobRequest, tol: float = ATOL, seed: int = DEFAULT_SEED) -> JobResult:
    """Run one request; library errors become statuses, never exceptions."""
    tol = req.tol if req.tol is not None else tol
    echo = {"tol": tol, "seed": seed}
    try:
        status = "ok"
        if req.command == "check":
            payload, diag, status = _run_check(req, tol)
        elif req.command == "demo":
            payload, diag = _run_demo(req, tol, seed)
        else:
            payload, diag = _RUNNERS[req.command](req, tol)
    except CPSplitError as exc:
        return JobResult(_status_for(exc), {}, echo, f"{type(exc).__name__}: {exc}")
    diag.update(echo)
    return JobResult(status, payload, diag)


def run_document(data, tol: float = ATOL, seed: int = DEFAULT_SEED, batch: bool = False):
    """Results for a raw input document; a list of results when ``batch``."""
    echo = {"tol": tol, "seed": seed}
    try:
        if isinstance(data, (bytes, bytearray)):
            data = data.decode("utf-8")
        obj = json.loads(data) if isinstance(data, str) else data
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        fail = JobResult("invalid-input", {}, echo, f"ParseError: {exc}")
        return [fail] if batch else fail
    if not batch:
        try:
            return execute(parse_request(obj), tol, seed)
        except CPSplitError as exc:
            return JobResult(_status_for(exc), {}, echo, f"{type(exc).__name__}: {exc}")
    if not isinstance(obj, list):
        return [JobResult("invalid-input", {}, echo, "ParseError: --batch expects a JSON array")]
    results = []
    for i, item in enumerate(obj):
        try:
            results.append(execute(parse_request(item), tol, seed))
        except CPSplitError as exc:
            results.append(JobResult(_status_for(exc), {}, echo, f"request {i}: {type(exc).__name__}: {exc}"))
    return results


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="cpsplit", description=__doc__.split("\n")[0])
    ap.add_argument("--input", metavar="FILE", help="read the request from FILE instead of stdin")
    ap.add_argument("--tol", type=float, default=ATOL, help="default tolerance (a request's 'tol' wins)")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized spot checks")
    ap.add_argument("--batch", action="store_true", help="input is an array of requests")
    args = ap.parse_args(argv)

    if args.input:
        with open(args.input, "rb") as fh:
            data = fh.read()
    else:
        data = sys.stdin.buffer.read()

    out = run_document(data, args.tol, args.seed, args.batch)
    results = out if args.batch else [out]
    for i, r in enumerate(results):
        line = f"[{i}] {r.status}" + (f": {r.message}" if r.message else "")
        print(line, file=sys.stderr)
    doc = [r.to_dict() for r in results] if args.batch else out.to_dict()
    json.dump(doc, sys.stdout)
    sys.stdout.write("\n")
    return max((r.exit_code for r in results), default=0)


if __name__ == "__main__":
    sys.exit(main())
