"""Finite simplicial complexes and exact integer homology.

Covers the two complex families the library can materialize: matching
complexes on n points, and the descending-link complexes of height-n
vertices for a finite label group.  Descending links are built twice, by
independent routes: brute-force orbit enumeration with faces computed by
groupoid re-splitting, and the fiber-join over the matching complex
through the forgetful map.  Homology uses dense Smith normal form over
the integers (numpy int64 fast path with an exact object-dtype fallback).
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .diagrams import Context, LabeledDiagram
from .elements import GroupoidElement

DEFAULT_ENUM_CAP = 2_000_000
ENUM_CAP_ENV = "LTG_ENUM_CAP"


def enumeration_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    return int(raw) if raw else DEFAULT_ENUM_CAP


class SimplicialComplex:
    """Vertex-keyed finite complex, closed under faces."""

    def __init__(self, vertices: Sequence, simplices: Iterable[tuple[int, ...]]):
        self.vertices = list(vertices)
        closed: set[tuple[int, ...]] = set()
        stack = [tuple(sorted(s)) for s in simplices]
        for s in stack:
            if len(set(s)) != len(s):
                raise ValueError(f"degenerate simplex {s}")
        while stack:
            s = stack.pop()
            if s in closed or not s:
                continue
            closed.add(s)
            if len(s) > 1:
                for i in range(len(s)):
                    stack.append(s[:i] + s[i + 1:])
        for v in range(len(self.vertices)):
            closed.add((v,))
        self.simplices = closed

    def dimension(self) -> int:
        return max(len(s) for s in self.simplices) - 1 if self.simplices else -1

    def k_simplices(self, k: int) -> list[tuple[int, ...]]:
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def f_vector(self) -> list[int]:
        return [len(self.k_simplices(k)) for k in range(self.dimension() + 1)]

    def maximal_simplices(self) -> list[tuple[int, ...]]:
        out = []
        for s in self.simplices:
            sset = set(s)
            if not any(
                len(t) == len(s) + 1 and sset < set(t) for t in self.simplices
            ):
                out.append(s)
        return sorted(out)

    def connected_components(self) -> int:
        """Component count by union-find; independent of the chain complex."""
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self.k_simplices(1):
            a, b = find(s[0]), find(s[1])
            if a != b:
                parent[a] = b
        return len({find(v) for v in range(len(self.vertices))})

    def boundary_matrix(self, k: int) -> np.ndarray:
        """Integer matrix of the boundary map C_k -> C_{k-1}; k = 0 gives
        the augmentation onto the empty simplex (reduced homology)."""
        cols = self.k_simplices(k)
        if k == 0:
            return np.ones((1, len(cols)), dtype=np.int64)
        rows = {s: i for i, s in enumerate(self.k_simplices(k - 1))}
        mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for j, s in enumerate(cols):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                mat[rows[face], j] = (-1) ** i
        return mat

    def to_json(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "maximal": [list(s) for s in self.maximal_simplices()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        return cls(data["vertices"], [tuple(s) for s in data["maximal"]])


def smith_diagonal(mat: np.ndarray) -> list[int]:
    """Nonzero diagonal of the Smith normal form, divisibility-chained.

    Pivots on the minimal absolute value.  Runs in int64 and retries with
    exact big integers whenever entries threaten to overflow.
    """
    if mat.size == 0:
        return []
    try:
        return _smith_work(mat.astype(np.int64, copy=True), guard=True)
    except OverflowError:
        return _smith_work(mat.astype(object, copy=True), guard=False)


def _smith_work(a: np.ndarray, guard: bool) -> list[int]:
    # int64 stays exact while entries are below 2^30: one elimination step
    # forms products of two entries, well inside 2^63
    limit = 1 << 30
    m, n = a.shape
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        if guard and np.abs(a[t:, t:]).max(initial=0) > limit:
            raise OverflowError
        sub = a[t:, t:]
        nz = np.nonzero(sub)
        if len(nz[0]) == 0:
            break
        vals = np.abs(sub[nz])
        k = int(np.argmin(vals))
        i, j = int(nz[0][k]) + t, int(nz[1][k]) + t
        if i != t:
            a[[t, i], :] = a[[i, t], :]
        if j != t:
            a[:, [t, j]] = a[:, [j, t]]
        if a[t, t] < 0:
            a[t, :] = -a[t, :]
        pivot = int(a[t, t])
        col = a[t + 1:, t]
        row = a[t, t + 1:]
        if not col.any() and not row.any():
            diag.append(pivot)
            t += 1
            continue
        q = col // pivot
        if q.any():
            a[t + 1:, :] -= np.outer(q, a[t, :])
        q = row // pivot
        if q.any():
            a[:, t + 1:] -= np.outer(a[:, t], q)
    # any diagonal form repairs to the true normal form by pairwise
    # gcd/lcm exchanges, which sort every prime's exponents into a chain
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            x, y = diag[i], diag[i + 1]
            if y % x:
                g = math.gcd(x, y)
                diag[i], diag[i + 1] = g, x * y // g
                changed = True
    return [int(abs(d)) for d in diag]


def integer_rank(mat: np.ndarray) -> int:
    return len(smith_diagonal(mat))


@dataclass(frozen=True)
class HomologyResult:
    """Reduced Betti numbers and torsion, by dimension."""

    betti: dict
    torsion: dict
    f_vector: tuple[int, ...] = field(default_factory=tuple)

    def is_trivial_through(self, top: int) -> bool:
        return all(
            self.betti.get(i, 0) == 0 and not self.torsion.get(i, ())
            for i in range(top + 1)
        )

    def to_json(self) -> list[dict]:
        return [
            {"dim": i, "betti": self.betti[i], "torsion": list(self.torsion[i])}
            for i in sorted(self.betti)
        ]


def homology(cx: SimplicialComplex, up_to: int) -> HomologyResult:
    """Reduced integer homology through dimension `up_to`.

    Betti_k = dim ker d_k - rank d_{k+1}; torsion in dimension k is the
    set of nontrivial elementary divisors of d_{k+1}.
    """
    betti: dict[int, int] = {}
    torsion: dict[int, tuple[int, ...]] = {}
    ranks: dict[int, int] = {}
    divisors: dict[int, list[int]] = {}
    for k in range(up_to + 2):
        divisors[k] = smith_diagonal(cx.boundary_matrix(k))
        ranks[k] = len(divisors[k])
    for k in range(up_to + 1):
        n_k = len(cx.k_simplices(k))
        kernel = n_k - ranks[k]
        betti[k] = kernel - ranks[k + 1]
        torsion[k] = tuple(d for d in divisors[k + 1] if d > 1)
        if betti[k] < 0:
            raise AssertionError("negative Betti number: rank computation broken")
    result = HomologyResult(betti, torsion, tuple(cx.f_vector()))
    _check_euler(cx, result, up_to)
    return result


def _check_euler(cx: SimplicialComplex, res: HomologyResult, up_to: int):
    """Euler consistency on the full complex when it was fully resolved."""
    if up_to < cx.dimension():
        return
    chi_faces = sum((-1) ** k * f for k, f in enumerate(cx.f_vector())) - 1
    chi_homology = sum((-1) ** k * b for k, b in res.betti.items())
    if chi_faces != chi_homology:
        raise AssertionError("Euler characteristic mismatch")


# -- matching complexes ------------------------------------------------------


def matching_complex(n: int) -> SimplicialComplex:
    """Vertices are 2-subsets of {1..n}; faces are partial matchings."""
    if n < 2:
        raise ValueError("need n >= 2")
    verts = [frozenset(p) for p in itertools.combinations(range(1, n + 1), 2)]
    index = {v: i for i, v in enumerate(verts)}
    simplices: list[tuple[int, ...]] = []

    def grow(chosen: list[int], used: frozenset, start: int):
        if chosen:
            simplices.append(tuple(chosen))
        for i in range(start, len(verts)):
            if not (verts[i] & used):
                grow(chosen + [i], used | verts[i], i + 1)

    grow([], frozenset(), 0)
    keys = [tuple(sorted(v)) for v in verts]
    return SimplicialComplex(keys, simplices)


def connectivity_bound(n: int) -> int:
    """Dimension through which homology must vanish at height n."""
    return (n + 1) // 3 - 2


# -- descending links --------------------------------------------------------


def _splitting(ctx: Context, roots: int, carets: Sequence[int]) -> GroupoidElement:
    """The label-free splitter [F_J, 1, 1_(roots+|J|)]: domain has a caret
    at each listed root, range is the expanded row of bare roots."""
    cols = []
    out = 0
    one = ctx.one()
    cset = set(carets)
    for r in range(roots):
        if r in cset:
            cols.append(((r, "0"), one, (out, "")))
            out += 1
            cols.append(((r, "1"), one, (out, "")))
            out += 1
        else:
            cols.append(((r, ""), one, (out, "")))
            out += 1
    return GroupoidElement(LabeledDiagram(ctx, cols, roots, out))


def _class_tuple(d: LabeledDiagram) -> tuple:
    """(labels, sigma, caret roots) read off a [1_n, (g, s), F_J] diagram."""
    rans = sorted(range(len(d.columns)), key=lambda i: d.columns[i][2])
    rank = [0] * len(d.columns)
    for r, i in enumerate(rans):
        rank[i] = r
    labels = tuple(g.value for _, g, _ in d.columns)
    carets = tuple(sorted({r for _, _, (r, w) in d.columns if w}))
    return labels, tuple(rank), carets


def _class_element(
    ctx: Context, n: int, labels: Sequence, sigma: Sequence[int], carets: Sequence[int]
) -> GroupoidElement:
    """[1_n, (labels, sigma), F_J]: domain root i pairs with the
    sigma(i)-th lex leaf of the elementary range forest."""
    m = n - len(carets)
    leaves: list = []
    cset = set(carets)
    for r in range(m):
        if r in cset:
            leaves.append((r, "0"))
            leaves.append((r, "1"))
        else:
            leaves.append((r, ""))
    cols = [
        ((i, ""), ctx.backend.element(labels[i]), leaves[sigma[i]]) for i in range(n)
    ]
    return GroupoidElement(LabeledDiagram(ctx, cols, n, m))


@dataclass
class DescendingLink:
    """Brute-force descending link at height n, with class bookkeeping."""

    context: Context
    n: int
    complex: SimplicialComplex
    class_of: dict  # raw (labels, sigma, carets) -> class id per |J|
    vertex_keys: list
    simplex_vertices: dict  # class id -> tuple of vertex ids


def dlink_complex(ctx: Context, n: int) -> DescendingLink:
    """Enumerate the descending-link classes by brute force.

    A class is an orbit of [1_n, (g, s), F_J] diagrams under right
    multiplication by label-permutation elements on the range roots; the
    canonical key is the lexicographic minimum over the orbit.  Faces
    re-split one caret through groupoid composition.
    """
    G = ctx.backend
    if not G.is_finite():
        raise ValueError("descending links need a finite label group")
    if ctx.recursion.is_injective() is not True:
        raise ValueError("descending links need an injective recursion")
    order = G.order()
    if order ** n * _factorial(n) > enumeration_cap():
        raise ValueError("enumeration cap exceeded")

    gvals = list(G.element_values())
    perms = list(itertools.permutations(range(n)))
    wreath: dict[int, list[GroupoidElement]] = {}

    def wreath_elements(m: int) -> list[GroupoidElement]:
        if m not in wreath:
            out = []
            for tau in itertools.permutations(range(m)):
                for hs in itertools.product(gvals, repeat=m):
                    cols = [
                        ((r, ""), G.element(hs[r]), (tau[r], "")) for r in range(m)
                    ]
                    out.append(GroupoidElement(LabeledDiagram(ctx, cols, m, m)))
            wreath[m] = out
        return wreath[m]

    class_of: dict[tuple, int] = {}
    reps: list[GroupoidElement] = []
    keys: list[tuple] = []
    jsize: list[int] = []
    max_j = n // 2
    for j in range(1, max_j + 1):
        m = n - j
        for carets in itertools.combinations(range(m), j):
            for sigma in perms:
                for labels in itertools.product(gvals, repeat=n):
                    raw = (labels, sigma, carets)
                    if raw in class_of:
                        continue
                    cid = len(reps)
                    rep = _class_element(ctx, n, labels, sigma, carets)
                    orbit_keys = []
                    orbit_size = 0
                    for w in wreath_elements(m):
                        img = rep * w
                        tup = _class_tuple(img.diagram)
                        if tup not in class_of:
                            class_of[tup] = cid
                            orbit_size += 1
                        orbit_keys.append(img.diagram.key())
                    if orbit_size != len(wreath_elements(m)):
                        raise AssertionError("right action is not free on classes")
                    reps.append(rep)
                    keys.append(min(orbit_keys))
                    jsize.append(j)

    # vertex set per class, walking codimension-1 faces to the single carets
    vertex_ids: dict[int, tuple[int, ...]] = {}
    vertex_class_ids = [cid for cid in range(len(reps)) if jsize[cid] == 1]
    vkey_of = {cid: keys[cid] for cid in vertex_class_ids}
    vindex = {cid: i for i, cid in enumerate(vertex_class_ids)}

    def faces(cid: int) -> list[int]:
        rep = reps[cid]
        d = rep.diagram
        m = d.n_roots
        caret_roots = sorted({r for _, _, (r, w) in d.columns if w})
        out = []
        for r in caret_roots:
            split = rep * _splitting(ctx, m, [r])
            out.append(class_of[_class_tuple(split.diagram)])
        return out

    def vertices_of(cid: int) -> tuple[int, ...]:
        if cid in vertex_ids:
            return vertex_ids[cid]
        if jsize[cid] == 1:
            out = (vindex[cid],)
        else:
            acc: set[int] = set()
            for f in faces(cid):
                acc.update(vertices_of(f))
            out = tuple(sorted(acc))
            if len(out) != jsize[cid]:
                raise AssertionError("simplex has wrong number of vertices")
        vertex_ids[cid] = out
        return out

    simplices = [vertices_of(cid) for cid in range(len(reps))]
    cx = SimplicialComplex([vkey_of[c] for c in vertex_class_ids], simplices)
    return DescendingLink(
        ctx,
        n,
        cx,
        class_of,
        [vkey_of[c] for c in vertex_class_ids],
        {cid: vertices_of(cid) for cid in range(len(reps))},
    )


def forgetful_pi(key: tuple) -> tuple[int, int]:
    """Image of a single-caret vertex class in the matching complex: the
    1-based pair of domain roots feeding the caret's two leaves."""
    _, _, cols = key
    out = sorted(i + 1 for i, (_, _, (r, w)) in enumerate(cols) if w)
    if len(out) != 2:
        raise ValueError("key does not describe a single-caret class")
    return (out[0], out[1])


def _vertex_pi(link: DescendingLink) -> list[tuple[int, int]]:
    return [forgetful_pi(k) for k in link.vertex_keys]


def dlink_via_join(link: DescendingLink) -> SimplicialComplex:
    """The fiber-join model over the matching complex: independent of the
    brute-force face computation, sharing the same vertex keys."""
    n = link.n
    pi = _vertex_pi(link)
    fibers: dict[tuple[int, int], list[int]] = {}
    for v, pair in enumerate(pi):
        fibers.setdefault(pair, []).append(v)
    mn = matching_complex(n)
    simplices: list[tuple[int, ...]] = []
    for s in mn.simplices:
        pairs = [mn.vertices[i] for i in s]
        for combo in itertools.product(*(fibers[p] for p in pairs)):
            simplices.append(tuple(sorted(combo)))
    return SimplicialComplex(link.vertex_keys, simplices)


def check_complete_join(link: DescendingLink) -> bool:
    """Verify the forgetful map is a complete join, exhaustively.

    (1) simplicial and surjective, (2) injective on individual simplices,
    (3) every simplex preimage is the join of its vertex fibers, which by
    finiteness reduces to equality with the fiber-join complex.
    """
    n = link.n
    mn = matching_complex(n)
    mindex = {v: i for i, v in enumerate(mn.vertices)}
    pi = _vertex_pi(link)
    for s in link.complex.simplices:
        image = {pi[v] for v in s}
        if len(image) != len(s):
            return False  # not injective on a simplex
        if tuple(sorted(mindex[p] for p in image)) not in mn.simplices:
            return False  # not simplicial
    hit = {pi[v] for s in link.complex.simplices for v in s}
    if hit != set(mn.vertices):
        return False  # not surjective on vertices
    join = dlink_via_join(link)
    return join.simplices == link.complex.simplices


def connectivity_report(cx: SimplicialComplex, n: int) -> dict:
    """Homological shadow of the connectivity claim at height n.

    Only homology is checked, never the fundamental group, so a passing
    report reads "homology-consistent" rather than claiming connectivity.
    """
    bound = connectivity_bound(n)
    if bound < 0:
        return {
            "n": n,
            "bound": bound,
            "vacuous": True,
            "consistent": True,
            "statement": f"vacuous at n={n}: bound is {bound}",
            "homology": [],
        }
    res = homology(cx, bound)
    ok = res.is_trivial_through(bound)
    return {
        "n": n,
        "bound": bound,
        "vacuous": False,
        "consistent": ok,
        "statement": (
            f"homology-consistent with {bound}-connected"
            if ok
            else f"homology contradicts {bound}-connectivity"
        ),
        "homology": res.to_json(),
    }


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out
