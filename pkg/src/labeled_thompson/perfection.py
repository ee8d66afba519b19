"""Constructive commutator certificates for diagonal-labeled elements.

Every element splits exactly into (rest-labels) * (first-label) * (label-free)
factors; the first two become explicit commutators via caret re-splitting
and label-free permutation conjugators, and the label-free tail is left
opaque.  Certificates verify themselves by exact multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import diagrams, elements
from .diagrams import Context
from .elements import VPhiElement, identity


def _require_diagonal(ctx: Context):
    if ctx.rule != "diagonal":
        raise ValueError("commutator machinery works in diagonal contexts")


def _tree_parts(a: VPhiElement) -> tuple[list[str], list, list[str]]:
    """(domain words, labels, paired range words) of a representative with
    at least two leaves."""
    d = a.diagram
    if len(d.columns) == 1:
        d = d.simple_expand(0)
    dom = [w for (_, w), _, _ in d.columns]
    labels = [g for _, g, _ in d.columns]
    rans = [w for _, _, (_, w) in d.columns]
    return dom, labels, rans


def split3(a: VPhiElement) -> tuple[VPhiElement, VPhiElement, VPhiElement]:
    """Write a = r * f * v with r carrying all labels but the first, f only
    the first label (both with identity permutation and domain = range) and
    v label-free."""
    _require_diagonal(a.context)
    ctx = a.context
    if a.is_identity():
        e = identity(ctx)
        return e, e, e
    dom, labels, rans = _tree_parts(a)
    one = ctx.one()
    r_labels = [one] + labels[1:]
    f_labels = [labels[0]] + [one] * (len(labels) - 1)
    r = elements.element(ctx, dom, r_labels, dom)
    f = elements.element(ctx, dom, f_labels, dom)
    v = elements.element(ctx, dom, [one] * len(dom), rans)
    assert r * f * v == a
    return r, f, v


def swap12_conjugator(ctx: Context, partition: list[str]) -> VPhiElement:
    """Label-free element exchanging the two lex-least cones of a partition."""
    if len(partition) < 2:
        raise ValueError("need at least two cones to swap")
    part = sorted(partition)
    dst = [part[1], part[0]] + part[2:]
    return elements.element(ctx, part, [ctx.one()] * len(part), dst)


def commutator_witness(v: VPhiElement) -> tuple[VPhiElement, VPhiElement]:
    """Exhibit v = p * q * p^-1 * q^-1 for v with trivial first label,
    identity permutation and domain = range.

    Builds the two re-splittings of the support tree: one stacking all new
    carets on the leftmost leaf, one adding a caret on every other leaf.
    Conjugating between them interleaves the labels with trivial slots, and
    the commutator with the label-free shuffle restores v exactly.
    """
    ctx = v.context
    _require_diagonal(ctx)
    if v.is_identity():
        return identity(ctx), identity(ctx)
    dom, labels, rans = _tree_parts(v)
    n = len(dom)
    if rans != dom or not labels[0].is_identity() or not v.in_f():
        raise ValueError("witness needs trivial first label, id permutation, domain = range")

    one = ctx.one()
    # T': n-1 carets stacked on the leftmost leaf
    u1 = dom[0]
    left_pile = [u1 + "0" * (n - 1)] + [
        u1 + "0" * (n - 1 - k) + "1" for k in range(1, n)
    ]
    t_prime = sorted(left_pile) + dom[1:]
    # T'': one caret on every non-leftmost leaf
    t_second = [dom[0]]
    for w in dom[1:]:
        t_second.extend([w + "0", w + "1"])

    m = 2 * n - 1
    # alpha: conjugation pulls source slot (i)alpha into slot i; evens go to
    # the stacked labels, odds keep their order
    alpha = [0] * m
    for j in range(n):
        alpha[2 * j] = j
    for k in range(2, n + 1):
        alpha[2 * k - 3] = n + k - 2
    # beta: sends the interleaved layout back to the left-pile layout; the
    # unconstrained slots take the remaining images in increasing order
    beta = [0] * m
    taken = [False] * m
    for k in range(2, n + 1):
        beta[n + k - 2] = 2 * k - 2
        taken[2 * k - 2] = True
    free = [i for i in range(m) if not taken[i]]
    for j, slot in enumerate(free):
        beta[j] = slot

    ones = [one] * m
    a = elements.from_parts(ctx, t_second, ones, alpha, t_prime)
    b = elements.from_parts(ctx, t_prime, ones, beta, t_second)

    # stepwise check: the inner commutator interleaves the labels with
    # trivial slots on the doubled tree
    inner = v * a * ~v * ~a
    want_labels = [one, one] + [x for g in labels[1:] for x in (g, one)][:-1]
    expected = elements.element(ctx, t_second, want_labels, t_second)
    assert inner == expected, "interleaving conjugation identity failed"

    p = b * v * ~b
    q = b * a * ~b
    assert p * q * ~p * ~q == v
    return p, q


@dataclass(frozen=True)
class CommutatorCertificate:
    """target = product of [p, q] factors times a label-free tail."""

    factors: tuple[tuple[VPhiElement, VPhiElement], ...]
    tail: VPhiElement
    target: VPhiElement

    def verify(self) -> bool:
        prod = identity(self.target.context)
        for p, q in self.factors:
            prod = prod * (p * q * ~p * ~q)
        prod = prod * self.tail
        if not _label_free(self.tail):
            return False
        return prod == self.target

    def __post_init__(self):
        if len(self.factors) > 2:
            raise ValueError("certificates carry at most two commutator factors")


def _label_free(x: VPhiElement) -> bool:
    return all(g.is_identity() for g in x.diagram.labels())


def decompose(a: VPhiElement) -> CommutatorCertificate:
    """Certificate a = [p1,q1] * [p2,q2] * tail with a label-free tail.

    The rest-label factor is a commutator by the witness construction; the
    first-label factor becomes one after swapping it into the second slot.
    """
    ctx = a.context
    _require_diagonal(ctx)
    r, f, v = split3(a)
    factors: list[tuple[VPhiElement, VPhiElement]] = []
    if not r.is_identity():
        factors.append(commutator_witness(r))
    if not f.is_identity():
        dom, _, _ = _tree_parts(f)
        s = swap12_conjugator(ctx, dom)
        f_shifted = ~s * f * s
        p0, q0 = commutator_witness(f_shifted)
        factors.append((s * p0 * ~s, s * q0 * ~s))
    cert = CommutatorCertificate(tuple(factors), v, a)
    if not cert.verify():
        raise AssertionError("certificate failed to verify")
    return cert
