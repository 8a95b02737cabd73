"""Read and write group-spec files.

The file is TOML with one mandatory ``kind`` key:

.. code-block:: toml

    kind = "free"            # free group
    rank = 2

    kind = "free_product"    # free product of cyclic factors
    orders = [2, 3]          # 0 or "inf" denotes an infinite cyclic factor

    kind = "coxeter"         # Coxeter system
    coxeter_matrix = [[1, 3], [3, 1]]   # 0 or "inf" denotes m_st = infinity

Round trip is lossless: ``parse_spec(write_spec(spec))`` returns an
equal spec (infinite entries are canonically written as 0).
"""

from __future__ import annotations

from pathlib import Path

import tomli

from .errors import MalformedInputError
from .words import Coxeter, FreeGroup, FreeProduct, GroupSpec, INFINITE


def _order_value(raw) -> int:
    if raw == "inf":
        return INFINITE
    if isinstance(raw, int) and not isinstance(raw, bool):
        return raw
    raise MalformedInputError(f"expected an integer or 'inf', got {raw!r}")


def parse_spec(text: str) -> GroupSpec:
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise MalformedInputError(f"invalid spec file: {exc}") from exc
    kind = data.get("kind")
    if kind == "free":
        if "rank" not in data:
            raise MalformedInputError("kind 'free' requires a 'rank' key")
        return FreeGroup(rank=data["rank"])
    if kind == "free_product":
        if "orders" not in data:
            raise MalformedInputError("kind 'free_product' requires an 'orders' key")
        return FreeProduct(orders=tuple(_order_value(o) for o in data["orders"]))
    if kind == "coxeter":
        if "coxeter_matrix" not in data:
            raise MalformedInputError("kind 'coxeter' requires a 'coxeter_matrix' key")
        matrix = tuple(
            tuple(_order_value(v) for v in row) for row in data["coxeter_matrix"]
        )
        return Coxeter(matrix=matrix)
    raise MalformedInputError(
        f"unknown kind {kind!r}; expected 'free', 'free_product' or 'coxeter'"
    )


def write_spec(spec: GroupSpec) -> str:
    if isinstance(spec, FreeGroup):
        return f'kind = "free"\nrank = {spec.rank}\n'
    if isinstance(spec, FreeProduct):
        orders = ", ".join(str(m) for m in spec.orders)
        return f'kind = "free_product"\norders = [{orders}]\n'
    if isinstance(spec, Coxeter):
        rows = ", ".join(
            "[" + ", ".join(str(v) for v in row) + "]" for row in spec.matrix
        )
        return f'kind = "coxeter"\ncoxeter_matrix = [{rows}]\n'
    raise MalformedInputError(f"unsupported spec {spec!r}")


def load_spec(path: str | Path) -> GroupSpec:
    return parse_spec(Path(path).read_text())


def save_spec(spec: GroupSpec, path: str | Path) -> None:
    Path(path).write_text(write_spec(spec))
