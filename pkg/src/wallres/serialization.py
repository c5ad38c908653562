"""Reading groups and modules from JSON, and writing reports.

Group files hold either ``{"order": n, "cayley": [[...], ...]}`` or
``{"perm_gens": [[...], ...]}``.  Module files hold
``{"p": p, "dim": d, "action": {"<element index>": [[...]], ...}}`` with
matrices on a generating set; the action on every element is expanded by
words in those generators and re-validated.  A group reference may also be
one of the built-in names understood by :func:`named_group`.
"""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .gmodules import GModule, ModuleError, module_from_generators, trivial_module
from .groups import (Group, GroupAxiomError, abelian_group, dihedral_group, direct_product,
                     group_from_permutations, quaternion_group, symmetric_group)

__all__ = ["InputError", "named_group", "load_group", "group_from_json", "load_module",
           "module_from_json", "dumps", "rank_table_csv"]


class InputError(ValueError):
    """Malformed input, with the offending field in the message."""


_FACTOR = re.compile(r"^Z(\d+)(?:\^(\d+))?$")


def named_group(name: str) -> Group:
    """``Z4``, ``Z2^3``, ``Z2xZ4``, ``D8`` (order 8), ``Q8``, ``S3``, ``SL(2,3)``."""
    s = name.replace(" ", "")
    m = re.fullmatch(r"SL\((\d+),(\d+)\)", s)
    if m:
        from .sln import sl_group
        return sl_group(int(m.group(1)), int(m.group(2))).group
    if s == "Q8":
        return quaternion_group()
    m = re.fullmatch(r"D(\d+)", s)
    if m and int(m.group(1)) % 2 == 0 and int(m.group(1)) >= 2:
        return dihedral_group(int(m.group(1)) // 2)
    m = re.fullmatch(r"S(\d+)", s)
    if m:
        return symmetric_group(int(m.group(1)))
    orders: list[int] = []
    for part in s.split("x"):
        fm = _FACTOR.match(part)
        if not fm:
            raise InputError(f"unknown group name {name!r}")
        orders += [int(fm.group(1))] * int(fm.group(2) or 1)
    if not orders or any(o < 1 for o in orders):
        raise InputError(f"unknown group name {name!r}")
    return abelian_group(*orders)


def _matrix(value: Any, where: str) -> np.ndarray:
    try:
        A = np.array(value, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: not an integer matrix ({exc})") from exc
    if A.ndim != 2:
        raise InputError(f"{where}: expected a 2-d array, got {A.ndim} dimensions")
    return A


def group_from_json(obj: Any, where: str = "group") -> Group:
    if isinstance(obj, str):
        return named_group(obj)
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    try:
        if "cayley" in obj:
            table = _matrix(obj["cayley"], f"{where}.cayley")
            if "order" in obj and int(obj["order"]) != table.shape[0]:
                raise InputError(f"{where}.order: {obj['order']} does not match a "
                                 f"{table.shape[0]}x{table.shape[1]} table")
            return Group(table, generators=obj.get("generators"))
        if "perm_gens" in obj:
            gens = obj["perm_gens"]
            if not isinstance(gens, list):
                raise InputError(f"{where}.perm_gens: expected a list of permutations")
            for i, g in enumerate(gens):
                if sorted(g) != list(range(len(g))):
                    raise InputError(f"{where}.perm_gens[{i}]: not a permutation of 0..{len(g) - 1}")
            return group_from_permutations(gens)
        if "name" in obj:
            return named_group(obj["name"])
    except GroupAxiomError as exc:
        raise InputError(f"{where}: {exc}") from exc
    raise InputError(f"{where}: needs one of 'cayley', 'perm_gens' or 'name'")


def _read_json(path: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def load_group(ref: str) -> Group:
    """A JSON file path or a built-in group name."""
    if Path(ref).is_file():
        return group_from_json(_read_json(ref), where=ref)
    return named_group(ref)


def module_from_json(obj: Any, G: Group, p: Optional[int] = None, where: str = "module") -> GModule:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    if "p" not in obj and p is None:
        raise InputError(f"{where}.p: missing prime")
    q = int(obj.get("p", p))
    if p is not None and q != p:
        raise InputError(f"{where}.p: {q} conflicts with --p {p}")
    action = obj.get("action", {})
    if not isinstance(action, dict):
        raise InputError(f"{where}.action: expected an object keyed by element index")
    mats = {}
    for key, val in action.items():
        try:
            g = int(key)
        except ValueError as exc:
            raise InputError(f"{where}.action: key {key!r} is not an element index") from exc
        if not 0 <= g < G.order:
            raise InputError(f"{where}.action[{key}]: element index out of range")
        mats[g] = _matrix(val, f"{where}.action[{key}]")
    dim = obj.get("dim")
    if not mats:
        return trivial_module(G, q, int(dim if dim is not None else 1))
    for g, A in mats.items():
        if dim is not None and A.shape != (int(dim), int(dim)):
            raise InputError(f"{where}.action[{g}]: shape {A.shape} does not match dim {dim}")
    try:
        return module_from_generators(G, q, mats)
    except ModuleError as exc:
        raise InputError(f"{where}: {exc}") from exc


def load_module(path: Optional[str], G: Group, p: int) -> GModule:
    """The module in ``path``, or the trivial module when ``path`` is None."""
    if path is None:
        return trivial_module(G, p)
    return module_from_json(_read_json(path), G, p, where=path)


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, Fraction):
        return o.numerator if o.denominator == 1 else f"{o.numerator}/{o.denominator}"
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def dumps(report: Any) -> str:
    """Deterministic JSON (sorted keys, fixed separators)."""
    return json.dumps(report, default=_default, sort_keys=True, indent=1) + "\n"


def rank_table_csv(columns: dict) -> str:
    """CSV with a ``degree`` column and one column per named rank sequence."""
    names = list(columns)
    n = max((len(v) for v in columns.values()), default=0)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["degree"] + names)
    for i in range(n):
        w.writerow([i] + [columns[k][i] if i < len(columns[k]) else "" for k in names])
    return buf.getvalue()
