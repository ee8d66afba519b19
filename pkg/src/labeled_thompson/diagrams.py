"""Labeled paired forest diagrams and the expansion/reduction calculus.

A diagram is a finite list of columns (domain leaf, label, range leaf)
whose domain leaves and range leaves each form a forest partition.  The
column at (u, g, v) splits into (u0, g0, v.(0)s) and (u1, g1, v.(1)s)
where ((g0, g1), s) is the image of g under the context's wreath
recursion; merging such a sibling pair back needs the recursion to be
injective.  Canonical storage sorts columns by domain leaf, so the leaf
permutation is derived, never stored.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .groups import (
    GroupBackend,
    GroupElement,
    WreathImage,
    WreathRecursion,
    injectivize,
)
from .words import (
    Leaf,
    common_refinement,
    complete_to_partition,
    is_forest_partition,
)

Column = tuple[Leaf, GroupElement, Leaf]


class ContextMismatch(ValueError):
    pass


class Context:
    """A group backend paired with a wreath recursion.

    Elements only compose within one context.  When the recursion is not
    injective (and the group is finite) the context transparently routes
    through the injectivization tower: labels handed to constructors are
    quotient-mapped, so equality of elements is equality in the quotient
    picture, which loses nothing.
    """

    def __init__(
        self,
        backend: GroupBackend,
        recursion: WreathRecursion,
        auto_injectivize: bool = True,
    ):
        if recursion.backend is not backend:
            raise ValueError("recursion must live on the given backend")
        self.source_backend = backend
        self.source_recursion = recursion
        if recursion.is_injective() is True or not auto_injectivize:
            self.backend = backend
            self.recursion = recursion
            self.pi_hat = None
            self.tower_steps = 0
        else:
            hat_g, pi_hat, hat_phi, steps = injectivize(recursion)
            self.backend = hat_g
            self.recursion = hat_phi
            self.pi_hat = pi_hat
            self.tower_steps = steps

    def is_injective(self) -> bool:
        return self.recursion.is_injective() is True

    def label(self, g: GroupElement) -> GroupElement:
        """Coerce a source-group label into the working (injective) picture."""
        if g.backend is self.backend:
            return g
        if g.backend is self.source_backend and self.pi_hat is not None:
            return self.pi_hat(g)
        raise ContextMismatch("label does not belong to this context")

    def one(self) -> GroupElement:
        return self.backend.one()

    def parse_label(self, token: str) -> GroupElement:
        return self.label(self.source_backend.parse(token))

    @property
    def rule(self) -> str:
        return self.recursion.rule

    def __repr__(self):
        return f"Context({self.source_backend!r}, {self.source_recursion!r})"


class LabeledDiagram:
    """Canonical column form of a labeled paired forest diagram."""

    __slots__ = ("context", "columns", "m_roots", "n_roots")

    def __init__(
        self,
        context: Context,
        columns: Iterable[Column],
        m_roots: int = 1,
        n_roots: int = 1,
    ):
        cols = sorted(columns, key=lambda c: c[0])
        if not cols:
            raise ValueError("a diagram needs at least one column")
        doms = [c[0] for c in cols]
        rans = [c[2] for c in cols]
        if not is_forest_partition(doms, m_roots):
            raise ValueError("domain leaves do not form a forest partition")
        if not is_forest_partition(rans, n_roots):
            raise ValueError("range leaves do not form a forest partition")
        for _, g, _ in cols:
            if g.backend is not context.backend:
                raise ContextMismatch("labels must live in the context's group")
        self.context = context
        self.columns = tuple(cols)
        self.m_roots = m_roots
        self.n_roots = n_roots

    # -- bookkeeping ---------------------------------------------------

    def domain(self) -> list[Leaf]:
        return [c[0] for c in self.columns]

    def range_(self) -> list[Leaf]:
        return [c[2] for c in self.columns]

    def sigma(self) -> tuple[int, ...]:
        """Derived leaf permutation: column i -> lex rank of its range leaf."""
        rans = sorted(range(len(self.columns)), key=lambda i: self.columns[i][2])
        rank = [0] * len(self.columns)
        for r, i in enumerate(rans):
            rank[i] = r
        return tuple(rank)

    def labels(self) -> list[GroupElement]:
        return [c[1] for c in self.columns]

    def key(self):
        """Hashable canonical key (columns with raw label values)."""
        return (
            self.m_roots,
            self.n_roots,
            tuple((d, g.value, r) for d, g, r in self.columns),
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LabeledDiagram)
            and self.context is other.context
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash((id(self.context), self.key()))

    def __repr__(self):
        def leaf(l: Leaf) -> str:
            r, w = l
            word = w if w else "eps"
            return word if self.m_roots == self.n_roots == 1 else f"{r}:{word}"

        cols = "; ".join(f"{leaf(d)}|{g!r}|{leaf(r)}" for d, g, r in self.columns)
        return f"[{cols}]"

    # -- the calculus ----------------------------------------------------

    def simple_expand(self, k: int) -> "LabeledDiagram":
        """Split column k via the recursion; the result represents the same
        groupoid element."""
        (root, u), g, (rroot, v) = self.columns[k]
        img = self.context.recursion.apply(g)
        new = list(self.columns)
        new[k : k + 1] = [
            ((root, u + "0"), img.left, (rroot, v + img.apply_bit("0"))),
            ((root, u + "1"), img.right, (rroot, v + img.apply_bit("1"))),
        ]
        return LabeledDiagram(self.context, new, self.m_roots, self.n_roots)

    def expand_at(self, leaf: Leaf) -> "LabeledDiagram":
        for k, c in enumerate(self.columns):
            if c[0] == leaf:
                return self.simple_expand(k)
        raise ValueError(f"no column with domain leaf {leaf!r}")

    def simple_reduce(self, k: int) -> Optional["LabeledDiagram"]:
        """Merge columns k, k+1 when they are a compatible sibling pair.

        Requires: sibling domain leaves, sibling range leaves, and a
        recursion preimage of the induced slot pair; returns None when the
        pair does not merge.
        """
        if self.context.recursion.is_injective() is not True:
            raise ValueError("reduction requires injective recursion")
        if k + 1 >= len(self.columns):
            return None
        (r0, u0), g0, (s0, v0) = self.columns[k]
        (r1, u1), g1, (s1, v1) = self.columns[k + 1]
        if r0 != r1 or not u0 or u0[:-1] != u1[:-1] or u0[-1] != "0" or u1[-1] != "1":
            return None
        if s0 != s1 or not v0 or not v1 or v0[:-1] != v1[:-1] or v0[-1] == v1[-1]:
            return None
        swap = v0[-1] == "1"
        g = self.context.recursion.preimage(
            WreathImage(g0, g1, swap)
        )
        if g is None:
            return None
        new = list(self.columns)
        new[k : k + 2] = [((r0, u0[:-1]), g, (s0, v0[:-1]))]
        return LabeledDiagram(self.context, new, self.m_roots, self.n_roots)

    def reduction_sites(self) -> list[int]:
        """Indices k where columns k, k+1 merge under simple_reduce."""
        out = []
        for k in range(len(self.columns) - 1):
            if self.simple_reduce(k) is not None:
                out.append(k)
        return out

    def reduce(self) -> "LabeledDiagram":
        """The unique reduced representative of this diagram's class.

        Strategy: repeatedly merge the deepest mergeable sibling pair;
        confluence makes the order irrelevant.
        """
        cur = self
        while True:
            sites = cur.reduction_sites()
            if not sites:
                return cur
            k = max(sites, key=lambda i: len(cur.columns[i][0][1]))
            cur = cur.simple_reduce(k)

    def is_reduced(self) -> bool:
        return not self.reduction_sites()

    def expand_to(self, target: Sequence[Leaf]) -> "LabeledDiagram":
        """Expand until the domain partition equals `target` exactly."""
        want = set(target)
        cur = self
        while True:
            doms = cur.domain()
            if set(doms) == want:
                return cur
            for k, d in enumerate(doms):
                if d not in want:
                    if not any(u[0] == d[0] and u[1].startswith(d[1]) for u in want):
                        raise ValueError("target does not refine the domain")
                    cur = cur.simple_expand(k)
                    break
            else:
                raise ValueError("target does not refine the domain")

    def expand_range_to(self, target: Sequence[Leaf]) -> "LabeledDiagram":
        """Expand until the range partition equals `target` exactly.

        Works because splitting a column always splits its range leaf into
        the two children, whatever the swap does to their pairing.
        """
        want = set(target)
        cur = self
        while True:
            rans = cur.range_()
            if set(rans) == want:
                return cur
            for k, r in enumerate(rans):
                if r not in want:
                    if not any(u[0] == r[0] and u[1].startswith(r[1]) for u in want):
                        raise ValueError("target does not refine the range")
                    cur = cur.simple_expand(k)
                    break
            else:
                raise ValueError("target does not refine the range")

    def inverse_columns(self) -> list[Column]:
        return [(r, ~g, d) for d, g, r in self.columns]


def forest_refinement(p: Sequence[Leaf], q: Sequence[Leaf], roots: int) -> list[Leaf]:
    """Common refinement of two forest partitions, root by root."""
    out: list[Leaf] = []
    for r in range(roots):
        pr = [w for root, w in p if root == r]
        qr = [w for root, w in q if root == r]
        out.extend((r, w) for w in common_refinement(pr, qr))
    return out


def compose(a: LabeledDiagram, b: LabeledDiagram) -> LabeledDiagram:
    """Groupoid composition (first a, then b), reduced.

    Expands a's range and b's domain to their common refinement, matches
    columns through it, and multiplies labels; the convention is the right
    action (w)(ab) = ((w)a)b.
    """
    if a.context is not b.context:
        raise ContextMismatch("cannot compose elements of different contexts")
    if a.n_roots != b.m_roots:
        raise ValueError(
            f"arity mismatch: {a.n_roots} range roots vs {b.m_roots} domain roots"
        )
    mid = forest_refinement(a.range_(), b.domain(), a.n_roots)
    ax = a.expand_range_to(mid)
    bx = b.expand_to(mid)
    bcols = {d: (g, r) for d, g, r in bx.columns}
    cols = []
    for d, g, r in ax.columns:
        h, w = bcols[r]
        cols.append((d, g * h, w))
    return LabeledDiagram(a.context, cols, a.m_roots, b.n_roots).reduce()


def invert(a: LabeledDiagram) -> LabeledDiagram:
    return LabeledDiagram(
        a.context, a.inverse_columns(), a.n_roots, a.m_roots
    ).reduce()


def identity_diagram(context: Context, roots: int = 1) -> LabeledDiagram:
    one = context.one()
    cols = [((r, ""), one, (r, "")) for r in range(roots)]
    return LabeledDiagram(context, cols, roots, roots)


def tree_diagram(
    context: Context,
    domain: Sequence[str],
    labels: Sequence[GroupElement],
    ranges: Sequence[str],
) -> LabeledDiagram:
    """Tree diagram from parallel word/label/word sequences."""
    if not (len(domain) == len(labels) == len(ranges)):
        raise ValueError("column data must have equal lengths")
    cols = [
        ((0, u), context.label(g), (0, v))
        for u, g, v in zip(domain, labels, ranges)
    ]
    return LabeledDiagram(context, cols, 1, 1)


def from_parts(
    context: Context,
    domain: Sequence[str],
    labels: Sequence[GroupElement],
    sigma: Sequence[int],
    ranges: Sequence[str],
) -> LabeledDiagram:
    """Tree diagram [T, (labels, sigma), S]: column i pairs the i-th domain
    leaf with the sigma(i)-th range leaf (both in lex order, 0-indexed)."""
    dom = sorted(domain)
    ran = sorted(ranges)
    if sorted(sigma) != list(range(len(dom))):
        raise ValueError("sigma must be a permutation of the leaf ranks")
    return tree_diagram(
        context, dom, labels, [ran[sigma[i]] for i in range(len(dom))]
    )


def lambda_diagram(context: Context, u: str, g: GroupElement) -> LabeledDiagram:
    """Single label g on the cone of u, trivial elsewhere, domain = range."""
    part = complete_to_partition([u]) if u else [""]
    one = context.one()
    labels = [context.label(g) if w == u else one for w in part]
    return tree_diagram(context, part, labels, part).reduce()
