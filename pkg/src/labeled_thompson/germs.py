"""Labels at dyadic cones, support approximation and germs at the all-zero
point.

The label of an element at a cone is read off the unique column covering
the cone, expanding as needed; coarser cones than the reduced diagram
carry no label.  Supports are reported as depth-indexed sound
over-approximations, since the true labeled support may be a single
irrational point.  Germ comparison walks the all-zero spine; for finite
label groups the walk's state space is finite, so answers are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .elements import VPhiElement, commutator, element
from .groups import GroupElement
from .words import OMEGA0, complete_to_partition


class LabelUndefined(ValueError):
    pass


def label_at(a: VPhiElement, u: str) -> GroupElement:
    """Label of a at the cone of u.

    Defined when u extends a domain word of the reduced diagram; strictly
    coarser cones have no representative exhibiting them, so they error.
    """
    _require_injective(a)
    for (_, d), g, (_, v) in a.diagram.columns:
        if u.startswith(d):
            phi = a.context.recursion
            cur = g
            for bit in u[len(d):]:
                img = phi.apply(cur)
                cur = img.child(bit)
            return cur
        if d.startswith(u) and d != u:
            raise LabelUndefined(f"label undefined at this interval: {u!r}")
    raise LabelUndefined(f"label undefined at this interval: {u!r}")


def cone_data(a: VPhiElement, u: str) -> tuple[GroupElement, str]:
    """(label, image word) of the cone of u: a maps u-cone onto the image
    cone through the tree action of the label."""
    _require_injective(a)
    for (_, d), g, (_, v) in a.diagram.columns:
        if u.startswith(d):
            phi = a.context.recursion
            cur = g
            out = v
            for bit in u[len(d):]:
                img = phi.apply(cur)
                out += img.apply_bit(bit)
                cur = img.child(bit)
            return cur, out
    raise LabelUndefined(f"label undefined at this interval: {u!r}")


@dataclass(frozen=True)
class SupportApprox:
    """Depth-d certificate: cones outside `included` are provably outside
    the labeled support."""

    depth: int
    included: frozenset[str]

    def disjoint(self, other: "SupportApprox") -> bool:
        if self.depth != other.depth:
            raise ValueError("compare approximations at equal depth")
        return not (self.included & other.included)

    def to_json(self) -> dict:
        return {"depth": self.depth, "cones": sorted(self.included)}


def lsupp_approx(a: VPhiElement, depth: int) -> SupportApprox:
    """Sound over-approximation of the labeled support at a given depth.

    A depth-d cone is excluded exactly when its column reads (u, 1, u): the
    element then fixes the cone pointwise with trivial label.
    """
    _require_injective(a)
    if depth < max(len(u) for (_, u), _, _ in a.diagram.columns):
        raise ValueError("depth too shallow: refine past the domain tree first")
    included = []
    for i in range(1 << depth):
        u = format(i, f"0{depth}b") if depth else ""
        g, v = cone_data(a, u)
        if not (g.is_identity() and v == u):
            included.append(u)
    return SupportApprox(depth, frozenset(included))


def disjoint_supports_commute(a: VPhiElement, b: VPhiElement, depth: int) -> bool:
    """Commutator triviality for a pair with certified-disjoint supports."""
    sa = lsupp_approx(a, depth)
    sb = lsupp_approx(b, depth)
    if not sa.disjoint(sb):
        raise ValueError("precondition not certified: supports overlap at this depth")
    return commutator(a, b).is_identity()


@dataclass(frozen=True)
class GermAnswer:
    kind: str  # "equivalent" | "distinct" | "unknown"
    depth: Optional[int] = None

    def __repr__(self):
        if self.kind == "unknown":
            return "Unknown"
        return f"{self.kind.capitalize()}({self.depth})"


def _spine_states(a: VPhiElement):
    """Infinite iterator of (depth, label, range word) down the zero spine."""
    d, g, v = a.spine()
    phi = a.context.recursion
    while True:
        yield d, g, v
        img = phi.apply(g)
        v = v + img.apply_bit("0")
        g = img.left
        d += 1


def germ_compare(a: VPhiElement, b: VPhiElement, budget: int = 4096) -> GermAnswer:
    """Compare the germs of two elements at the all-zero point.

    Equivalent(d): identical spine columns at depth d (same label, same
    image cone, hence equal maps near the point).  Distinct(d): certified
    at depth d that no neighborhood can ever agree, either because the
    image words disagree (appends never heal a mismatch) or because the
    finite label-pair orbit closed without agreeing.  Unknown only for
    infinite label groups past the budget.
    """
    _require_injective(a)
    if a.context is not b.context:
        raise ValueError("elements must share a context")
    if a == b:
        return GermAnswer("equivalent", 0)
    sa = _spine_states(a)
    sb = _spine_states(b)
    da, ga, va = next(sa)
    db, gb, vb = next(sb)
    while da < db:
        da, ga, va = next(sa)
    while db < da:
        db, gb, vb = next(sb)
    finite = a.context.backend.is_finite()
    seen = set()
    steps = 0
    while True:
        if va != vb:
            # divergent image words never re-agree: both sides only append
            # one letter per step, so a mismatch or length gap is permanent
            return GermAnswer("distinct", da)
        if ga == gb:
            return GermAnswer("equivalent", da)
        if finite:
            state = (ga.value, gb.value)
            if state in seen:
                return GermAnswer("distinct", da)
            seen.add(state)
        steps += 1
        if steps > budget:
            return GermAnswer("unknown")
        da, ga, va = next(sa)
        db, gb, vb = next(sb)


@dataclass(frozen=True)
class PerpAnswer:
    kind: str  # "true" | "false" | "unknown"
    depth: Optional[int] = None

    def __bool__(self):
        return self.kind == "true"

    def __repr__(self):
        return f"True({self.depth})" if self.kind == "true" else self.kind.capitalize()


def perp(a: VPhiElement, b: VPhiElement, budget: int = 4096) -> PerpAnswer:
    """Transversality: do the two images of the all-zero point differ?

    Exact both ways for finite label groups (images are eventually periodic
    via cycle detection); otherwise letter comparison up to the budget.
    """
    ia = a.act_point(OMEGA0, state_budget=budget)
    ib = b.act_point(OMEGA0, state_budget=budget)
    if ia is not None and ib is not None:
        if ia == ib:
            return PerpAnswer("false")
        bound = (
            len(ia.prefix) + len(ib.prefix) + len(ia.period) * len(ib.period) + 1
        )
        for i in range(bound):
            if ia.letter(i) != ib.letter(i):
                return PerpAnswer("true", i + 1)
        raise AssertionError("distinct periodic words must differ within the bound")
    wa = a.act_word(OMEGA0, budget)
    wb = b.act_word(OMEGA0, budget)
    for i, (la, lb) in enumerate(zip(wa, wb)):
        if la != lb:
            return PerpAnswer("true", i + 1)
    return PerpAnswer("unknown")


def is_generic_tuple(xs: Sequence[VPhiElement], budget: int = 4096) -> bool:
    """Pairwise transversality, certified."""
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            ans = perp(xs[i], xs[j], budget)
            if ans.kind != "true":
                return False
    return True


def transitivity_witness(
    a_tuple: Sequence[VPhiElement],
    b_tuple: Sequence[VPhiElement],
    budget: int = 4096,
) -> VPhiElement:
    """An element carrying each germ of b_tuple onto the matching germ of
    a_tuple.

    Picks a zero-cone neighborhood small enough that both image families
    consist of pairwise disjoint cones, then maps image cone to image cone
    with the label correction (label of b)^-1 (label of a); the leftover
    cones pair off trivially.  The postcondition is re-verified through
    germ comparison.
    """
    if len(a_tuple) != len(b_tuple) or not a_tuple:
        raise ValueError("need nonempty tuples of equal length")
    ctx = a_tuple[0].context
    if any(x.context is not ctx for x in list(a_tuple) + list(b_tuple)):
        raise ValueError("elements must share a context")
    if not (is_generic_tuple(a_tuple, budget) and is_generic_tuple(b_tuple, budget)):
        raise ValueError("tuples not certified generic within budget")

    k = max(x.spine()[0] for x in list(a_tuple) + list(b_tuple))
    while True:
        a_data = [cone_data(x, "0" * k) for x in a_tuple]
        b_data = [cone_data(x, "0" * k) for x in b_tuple]
        families = ([v for _, v in a_data], [v for _, v in b_data])
        # image cones must be pairwise disjoint and leave room for the
        # leftover cones to pair off
        if all(
            _pairwise_incomparable(f)
            and sum(2 ** -len(v) for v in f) < 1
            for f in families
        ):
            break
        k += 1
        if k > budget:
            raise ValueError("no disjoint image cones within budget")

    sources = [v for _, v in b_data]
    targets = [v for _, v in a_data]
    labels = [~gb * ga for (ga, _), (gb, _) in zip(a_data, b_data)]
    rest_src = [w for w in complete_to_partition(sources) if w not in sources]
    rest_dst = [w for w in complete_to_partition(targets) if w not in targets]
    while len(rest_src) < len(rest_dst):
        w = rest_src.pop()
        rest_src.extend([w + "0", w + "1"])
        rest_src.sort()
    while len(rest_dst) < len(rest_src):
        w = rest_dst.pop()
        rest_dst.extend([w + "0", w + "1"])
        rest_dst.sort()
    one = ctx.one()
    gamma = element(
        ctx,
        sources + rest_src,
        labels + [one] * len(rest_src),
        targets + rest_dst,
    )
    for ai, bi in zip(a_tuple, b_tuple):
        ans = germ_compare(bi * gamma, ai, budget)
        if ans.kind != "equivalent":
            raise AssertionError("witness failed germ verification")
    return gamma


def _pairwise_incomparable(words: Sequence[str]) -> bool:
    for i, u in enumerate(words):
        for v in words[i + 1:]:
            if u.startswith(v) or v.startswith(u):
                return False
    return True


def _require_injective(a: VPhiElement):
    if a.context.recursion.is_injective() is not True:
        raise ValueError("germ machinery needs an injective recursion")
