"""JSON file formats for graphs, weights, and results.

Graph files::

    {"dim": 3,
     "basis": [[[ [1,0], [0,0] ], ...], ...],       # list of dim x dim matrices
     "s0_blocks": [{"dA": 1, "dY": 3}]}             # optional, defaults to CI

or, for classical graphs::

    {"dim": 5, "classical_adjacency": [[false, true, ...], ...]}

Exactly one of ``basis`` / ``classical_adjacency`` must be present.  Weight
files are ``{"dim": n, "matrix": <n x n matrix>}``.  A complex scalar is a
two-element array ``[re, im]``; a bare number is accepted on input as a real
scalar and everything is written back in the ``[re, im]`` form.  Unknown
fields are rejected with the offending path in the message, so typos fail
loudly instead of being ignored.

Results serialize with the fixed field order ``value, gap, form, primal,
dual`` so reports can be compared byte-for-byte.
"""
from __future__ import annotations

import json
import os
from typing import Optional, Union

import numpy as np

from . import cstar, subspace
from .errors import ParseError
from .subspace import NCGraph
from .theta import ThetaResult

PathOrStr = Union[str, os.PathLike]


def _fail(path: str, message: str) -> ParseError:
    return ParseError(f"{path}: {message}")


def _expect_keys(obj: dict, path: str, required: set[str], optional: set[str]) -> None:
    if not isinstance(obj, dict):
        raise _fail(path, f"expected an object, got {type(obj).__name__}")
    unknown = set(obj) - required - optional
    if unknown:
        raise _fail(f"{path}.{sorted(unknown)[0]}", "unknown field")
    missing = required - set(obj)
    if missing:
        raise _fail(f"{path}.{sorted(missing)[0]}", "missing required field")


def _parse_scalar(v, path: str) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 \
            and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in v):
        return complex(v[0], v[1])
    raise _fail(path, f"expected a number or [re, im] pair, got {v!r}")


def _parse_matrix(rows, n: int, path: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != n:
        raise _fail(path, f"expected {n} rows")
    out = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise _fail(f"{path}[{i}]", f"expected {n} entries")
        for j, v in enumerate(row):
            out[i, j] = _parse_scalar(v, f"{path}[{i}][{j}]")
    return out


def _parse_dim(obj: dict, path: str) -> int:
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise _fail(f"{path}.dim", f"expected a positive integer, got {dim!r}")
    return dim


def _load_json(source: PathOrStr) -> object:
    with open(source, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{source}: line {exc.lineno}: {exc.msg}") from None


def parse_graph(obj, path: str = "graph") -> NCGraph:
    _expect_keys(obj, path, {"dim"},
                 {"basis", "classical_adjacency", "s0_blocks"})
    n = _parse_dim(obj, path)
    has_basis = "basis" in obj
    has_adj = "classical_adjacency" in obj
    if has_basis == has_adj:
        raise _fail(path, "exactly one of 'basis' or 'classical_adjacency' is required")

    s0: Optional[cstar.S0Algebra] = None
    if "s0_blocks" in obj:
        blocks = obj["s0_blocks"]
        if not isinstance(blocks, list) or not blocks:
            raise _fail(f"{path}.s0_blocks", "expected a non-empty array")
        parsed = []
        for k, blk in enumerate(blocks):
            _expect_keys(blk, f"{path}.s0_blocks[{k}]", {"dA", "dY"}, set())
            da, dy = blk["dA"], blk["dY"]
            for tag, v in (("dA", da), ("dY", dy)):
                if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                    raise _fail(f"{path}.s0_blocks[{k}].{tag}",
                                f"expected a positive integer, got {v!r}")
            parsed.append((da, dy))
        if sum(da * dy for da, dy in parsed) != n:
            raise _fail(f"{path}.s0_blocks",
                        f"block dimensions do not sum to dim {n}")
        s0 = cstar.S0Algebra(tuple(parsed))

    if has_adj:
        rows = obj["classical_adjacency"]
        if not isinstance(rows, list) or len(rows) != n:
            raise _fail(f"{path}.classical_adjacency", f"expected {n} rows")
        adj = np.zeros((n, n), dtype=bool)
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise _fail(f"{path}.classical_adjacency[{i}]", f"expected {n} entries")
            for j, v in enumerate(row):
                if not isinstance(v, bool):
                    raise _fail(f"{path}.classical_adjacency[{i}][{j}]",
                                f"expected a boolean, got {v!r}")
                adj[i, j] = v
        g = subspace.from_classical_graph(adj)
        if s0 is not None:
            g = NCGraph(g.space, s0)
        return g

    mats = obj["basis"]
    if not isinstance(mats, list) or not mats:
        raise _fail(f"{path}.basis", "expected a non-empty array of matrices")
    stack = np.stack([_parse_matrix(m, n, f"{path}.basis[{k}]")
                      for k, m in enumerate(mats)])
    # span exactly what the file declares; a missing identity or a span that
    # is not adjoint-closed must fail validation rather than be patched up
    return NCGraph(subspace.span(stack, n), s0)


def load_graph(source: PathOrStr) -> NCGraph:
    return parse_graph(_load_json(source), path=str(source))


def parse_weight(obj, path: str = "weight") -> np.ndarray:
    _expect_keys(obj, path, {"dim", "matrix"}, set())
    n = _parse_dim(obj, path)
    return _parse_matrix(obj["matrix"], n, f"{path}.matrix")


def load_weight(source: PathOrStr) -> np.ndarray:
    return parse_weight(_load_json(source), path=str(source))


def _scalar_json(v: complex) -> list[float]:
    return [float(np.real(v)), float(np.imag(v))]


def _matrix_json(m: np.ndarray) -> list[list[list[float]]]:
    return [[_scalar_json(v) for v in row] for row in np.asarray(m, dtype=complex)]


def graph_json(g: NCGraph) -> dict:
    out: dict = {"dim": g.n, "basis": [_matrix_json(b) for b in g.space.basis]}
    if g.s0 is not None:
        out["s0_blocks"] = [{"dA": da, "dY": dy} for da, dy in g.s0.blocks]
    return out


def weight_json(w: np.ndarray) -> dict:
    w = np.asarray(w, dtype=complex)
    return {"dim": int(w.shape[0]), "matrix": _matrix_json(w)}


def result_json(res: ThetaResult) -> str:
    """Serialize with the fixed field order value, gap, form, primal, dual."""
    primal = res.primal_y if res.primal_y is not None else res.schur_z
    dual = res.dual_t
    out = {
        "value": float(res.value),
        "gap": float(res.gap),
        "form": res.form,
        "primal": _matrix_json(primal) if primal is not None else None,
        "dual": _matrix_json(dual) if dual is not None else None,
    }
    return json.dumps(out)


def save_json(obj: dict, target: PathOrStr) -> None:
    with open(target, "w", encoding="utf-8") as fh:
        json.dump(obj, fh)
        fh.write("\n")
