"""JSON schemas for the engine's objects.

Coefficients serialize as exact fraction strings ("3", "-3/7"); decimal
notation is rejected on input.  All encoders are deterministic so that
identical objects always produce identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .polycore import PolyMap, Polynomial
from .tangent import Space
from .dbundle import DiffBundle
from .whitney import BiproductBundle
from .connection import Connection, Decomposition


class SerializationError(ValueError):
    """Raised when a document does not match the expected schema."""


def _expect(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise SerializationError(f"{where}: missing field {key!r}")
    return obj[key]


def fraction_to_str(x: Fraction) -> str:
    return str(x)


def fraction_from_str(s: Any, where: str) -> Fraction:
    if not isinstance(s, str) or "." in s:
        raise SerializationError(f"{where}: coefficients must be fraction strings")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SerializationError(f"{where}: bad coefficient {s!r}") from exc


def poly_to_json(p: Polynomial) -> dict:
    return {
        "arity": p.arity,
        "terms": [
            {"coeff": fraction_to_str(c), "exps": list(e)} for e, c in p.terms
        ],
    }


def poly_from_json(obj: Any, where: str = "polynomial") -> Polynomial:
    arity = _expect(obj, "arity", where)
    if not isinstance(arity, int) or arity < 0:
        raise SerializationError(f"{where}: arity must be a natural number")
    terms: dict = {}
    for i, t in enumerate(_expect(obj, "terms", where)):
        spot = f"{where}.terms[{i}]"
        exps = _expect(t, "exps", spot)
        if (
            not isinstance(exps, list)
            or len(exps) != arity
            or any(not isinstance(e, int) or e < 0 for e in exps)
        ):
            raise SerializationError(f"{spot}: exps must be {arity} natural numbers")
        coeff = fraction_from_str(_expect(t, "coeff", spot), spot)
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return Polynomial.from_terms(arity, terms)


def map_to_json(m: PolyMap) -> dict:
    return {
        "dom": m.domain_dim,
        "cod": m.codomain_dim,
        "components": [poly_to_json(c) for c in m.components],
    }


def map_from_json(obj: Any, where: str = "map") -> PolyMap:
    dom = _expect(obj, "dom", where)
    cod = _expect(obj, "cod", where)
    comps = _expect(obj, "components", where)
    if not isinstance(comps, list) or len(comps) != cod:
        raise SerializationError(f"{where}: expected {cod} components")
    out = PolyMap(
        dom, tuple(poly_from_json(c, f"{where}.components[{i}]") for i, c in enumerate(comps))
    )
    return out


def space_to_json(s: Space) -> dict:
    return {"dim": s.dim, "layout": [[name, size] for name, size in s.layout]}


def space_from_json(obj: Any, where: str = "space") -> Space:
    dim = _expect(obj, "dim", where)
    layout = _expect(obj, "layout", where)
    try:
        return Space(dim, tuple((str(n), int(k)) for n, k in layout))
    except (TypeError, ValueError) as exc:
        raise SerializationError(f"{where}: bad layout") from exc


def bundle_to_json(b: DiffBundle) -> dict:
    return {
        "total": space_to_json(b.total),
        "base": space_to_json(b.base),
        "base_coords": list(b.base_coords),
        "sigma": map_to_json(b.sigma),
        "zeta": map_to_json(b.zeta),
        "lambda": map_to_json(b.lift),
    }


def bundle_from_json(obj: Any, where: str = "bundle") -> DiffBundle:
    coords = _expect(obj, "base_coords", where)
    if not isinstance(coords, list) or any(not isinstance(i, int) for i in coords):
        raise SerializationError(f"{where}: base_coords must be a list of indices")
    try:
        return DiffBundle(
            total=space_from_json(_expect(obj, "total", where), f"{where}.total"),
            base=space_from_json(_expect(obj, "base", where), f"{where}.base"),
            base_coords=tuple(coords),
            sigma=map_from_json(_expect(obj, "sigma", where), f"{where}.sigma"),
            zeta=map_from_json(_expect(obj, "zeta", where), f"{where}.zeta"),
            lift=map_from_json(_expect(obj, "lambda", where), f"{where}.lambda"),
        )
    except ValueError as exc:
        if isinstance(exc, SerializationError):
            raise
        raise SerializationError(f"{where}: {exc}") from exc


def connection_to_json(c: Connection) -> dict:
    out: dict = {"bundle": bundle_to_json(c.bundle), "K": map_to_json(c.K)}
    if c.H is not None:
        out["H"] = map_to_json(c.H)
    if c.gamma is not None:
        out["gamma"] = [
            [[poly_to_json(p) for p in row] for row in plane] for plane in c.gamma
        ]
    return out


def connection_from_json(obj: Any, where: str = "connection") -> Connection:
    bundle = bundle_from_json(_expect(obj, "bundle", where), f"{where}.bundle")
    k = map_from_json(_expect(obj, "K", where), f"{where}.K")
    h = None
    if isinstance(obj, dict) and obj.get("H") is not None:
        h = map_from_json(obj["H"], f"{where}.H")
    gamma = None
    if isinstance(obj, dict) and obj.get("gamma") is not None:
        gamma = tuple(
            tuple(
                tuple(
                    poly_from_json(p, f"{where}.gamma[{i}][{j}][{k2}]")
                    for k2, p in enumerate(row)
                )
                for j, row in enumerate(plane)
            )
            for i, plane in enumerate(obj["gamma"])
        )
    try:
        return Connection(bundle=bundle, K=k, H=h, gamma=gamma)
    except ValueError as exc:
        raise SerializationError(f"{where}: {exc}") from exc


def biproduct_to_json(bp: BiproductBundle) -> dict:
    return {
        "sum": bundle_to_json(bp.sum),
        "summands": [bundle_to_json(s) for s in bp.summands],
        "projections": [map_to_json(p) for p in bp.projections],
        "injections": [map_to_json(i) for i in bp.injections],
    }


def decomposition_to_json(d: Decomposition) -> dict:
    return {
        "theta": map_to_json(d.theta),
        "theta_inv": map_to_json(d.theta_inv),
        "biproduct": biproduct_to_json(d.biproduct),
        "total": bundle_to_json(d.total),
    }


def dumps(obj: Any) -> str:
    """Deterministic JSON encoding: sorted keys, two-space indent, newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
