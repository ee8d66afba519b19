"""JSON formats for groups, recursions, elements and certificates.

Group definition files look like
  {"group": {"kind": "finite", "table": [[...]], "names": {"g": 1}},
   "recursion": {"rule": "diagonal"}}
and elements like
  {"columns": [{"dom": "0", "label": "g", "ran": "0"}, ...],
   "kind": "tree", "roots": [1, 1]}.
Forest leaves are written "r:word".  Labels are backend tokens; elements
of auto-quotiented contexts mark their labels as living in the quotient.
"""

from __future__ import annotations

import json
from typing import Union

from .diagrams import Context, LabeledDiagram
from .elements import GroupoidElement, VPhiElement
from .groups import (
    CyclicGroup,
    FiniteTableGroup,
    FreeGroup,
    GroupBackend,
    ProductGroup,
    SymmetricGroup,
    WreathRecursion,
)
from .perfection import CommutatorCertificate
from .words import Leaf


def backend_from_json(data: dict) -> GroupBackend:
    kind = data["kind"]
    if kind == "finite":
        return FiniteTableGroup(data["table"], names=data.get("names"))
    if kind == "cyclic":
        return CyclicGroup(data.get("n"))
    if kind == "free":
        return FreeGroup(data["rank"])
    if kind == "symmetric":
        return SymmetricGroup(data["m"])
    if kind == "product":
        return ProductGroup([backend_from_json(f) for f in data["factors"]])
    raise ValueError(f"unknown group kind {kind!r}")


def recursion_from_json(backend: GroupBackend, data: dict) -> WreathRecursion:
    rule = data["rule"]
    if rule == "adding":
        return WreathRecursion(backend, "adding")
    if rule == "custom":
        table = {}
        for g_tok, l_tok, r_tok, s in data["table"]:
            table[backend.parse_element(str(g_tok))] = (
                backend.parse_element(str(l_tok)),
                backend.parse_element(str(r_tok)),
                bool(s),
            )
        return WreathRecursion(backend, "custom", table=table)
    if rule == "kappa":
        kappa = {
            backend.parse_element(str(g_tok)): bool(s)
            for g_tok, s in data["kappa"]
        }
        return WreathRecursion(backend, "kappa", kappa=kappa)
    return WreathRecursion(backend, rule)


def context_from_json(data: dict) -> Context:
    backend = backend_from_json(data["group"])
    recursion = recursion_from_json(backend, data["recursion"])
    return Context(backend, recursion)


def load_context(path: str) -> Context:
    with open(path) as fh:
        return context_from_json(json.load(fh))


def _leaf_str(leaf: Leaf, forest: bool) -> str:
    r, w = leaf
    return f"{r}:{w}" if forest else w


def _leaf_parse(text: str) -> Leaf:
    if ":" in text:
        r, w = text.split(":", 1)
        return (int(r), w)
    return (0, text)


def element_to_json(x: Union[VPhiElement, GroupoidElement]) -> dict:
    d = x.diagram
    forest = not (d.m_roots == 1 and d.n_roots == 1)
    ctx = d.context
    if ctx.pi_hat is None:
        fmt = ctx.source_backend.format_element
        picture = "source"
    else:
        fmt = ctx.backend.format_element
        picture = "quotient"
    out = {
        "columns": [
            {
                "dom": _leaf_str(dom, forest),
                "label": fmt(g.value),
                "ran": _leaf_str(ran, forest),
            }
            for dom, g, ran in d.columns
        ],
        "kind": "forest" if forest else "tree",
        "roots": [d.m_roots, d.n_roots],
    }
    if picture == "quotient":
        out["labels"] = "quotient"
    return out


def element_from_json(
    ctx: Context, data: dict
) -> Union[VPhiElement, GroupoidElement]:
    quotient = data.get("labels") == "quotient"
    if quotient:
        parse = lambda tok: ctx.backend.parse(tok)  # noqa: E731
    else:
        parse = lambda tok: ctx.label(ctx.source_backend.parse(tok))  # noqa: E731
    cols = [
        (_leaf_parse(c["dom"]), parse(str(c["label"])), _leaf_parse(c["ran"]))
        for c in data["columns"]
    ]
    m, n = data.get("roots", [1, 1])
    diagram = LabeledDiagram(ctx, cols, m, n)
    if data.get("kind", "tree") == "tree" and m == n == 1:
        return VPhiElement(diagram)
    return GroupoidElement(diagram)


def certificate_to_json(cert: CommutatorCertificate) -> dict:
    return {
        "factors": [
            [element_to_json(p), element_to_json(q)] for p, q in cert.factors
        ],
        "tail": element_to_json(cert.tail),
        "target": element_to_json(cert.target),
    }


def certificate_from_json(ctx: Context, data: dict) -> CommutatorCertificate:
    factors = tuple(
        (element_from_json(ctx, p), element_from_json(ctx, q))
        for p, q in data["factors"]
    )
    return CommutatorCertificate(
        factors,
        element_from_json(ctx, data["tail"]),
        element_from_json(ctx, data["target"]),
    )
