"""Fan tropical planes: the two-dimensional fan attached to a simple
rank-3 matroid, with its coarse polyhedral structure.

Elements of the matroid correspond to the boundary lines of the plane,
rank-2 flats to intersection points of those lines.  The fine fan has a
ray u_I for every flat I in a flag, one 2-cone per flag {i} < I; passing
to the coarse structure deletes the rays along which the support is
locally linear:

* rays of two-element flats I = {i, j} (u_I = u_i + u_j subdivides the
  cone spanned by u_i and u_j), and
* rays u_b of elements b lying on exactly 2 rank-2 flats K, L (then
  u_b = -u_K - u_L and the two adjacent cones close up to a flat piece).

Deleted rays are remembered inside each coarse cone as a path of fine
directions, so membership tests and chart bookkeeping still resolve the
fine structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import matroid as mt
from .errors import FanError, MatroidError
from .intlinalg import det, solve


@dataclass(frozen=True)
class Basis:
    """A unimodular basis u_1, ..., u_N of ZZ^N; u_0 = -(u_1 + ... + u_N).

    Element i of a matroid on {0, ..., N} gets the direction u_i, a flat I
    the direction u_I = sum over i in I of u_i.
    """

    vectors: tuple

    def __post_init__(self):
        vecs = tuple(tuple(int(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        n = len(vecs)
        if n == 0 or any(len(v) != n for v in vecs):
            raise FanError("basis must be square")
        if abs(det([[vecs[j][k] for j in range(n)] for k in range(n)])) != 1:
            raise FanError("basis must be unimodular")

    @property
    def dim(self):
        return len(self.vectors)

    @property
    def u0(self):
        return tuple(-sum(v[k] for v in self.vectors) for k in range(self.dim))

    def direction(self, flat):
        """u_I = sum of u_i over i in the flat (element 0 contributes u0)."""
        out = [0] * self.dim
        for i in flat:
            u = self.u0 if i == 0 else self.vectors[i - 1]
            for k in range(self.dim):
                out[k] += u[k]
        return tuple(out)

    def decompose(self, v):
        """Integer coordinates a with v = sum a_i u_i (i = 1..N)."""
        cols = [[self.vectors[j][k] for j in range(self.dim)] for k in range(self.dim)]
        a = solve(cols, list(v))
        if a is None or any(x.denominator != 1 for x in a):
            raise FanError("vector does not decompose integrally in the basis")
        return tuple(int(x) for x in a)


def standard_basis(n):
    """u_i = -e_i, so u_0 = (1, ..., 1)."""
    return Basis(tuple(tuple(-1 if k == i else 0 for k in range(n)) for i in range(n)))


@dataclass(frozen=True)
class Ray:
    flat: frozenset
    direction: tuple


@dataclass(frozen=True)
class Cone:
    """Coarse 2-cone: endpoints are coarse ray indices; sectors is the path
    of fine directions from one endpoint to the other (length >= 2)."""

    i: int
    j: int
    sectors: tuple


@dataclass(frozen=True)
class FanPlane:
    matroid: mt.Matroid
    basis: Basis
    rays: tuple
    cones: tuple
    degenerate_plane: bool = False

    @property
    def ambient_dim(self):
        return self.basis.dim

    def ray_index(self, flat):
        flat = frozenset(flat)
        for k, r in enumerate(self.rays):
            if r.flat == flat:
                return k
        raise FanError(f"no coarse ray for flat {sorted(flat)}")

    def contains_direction(self, v):
        """Is the ray through v inside the support of the fan?"""
        v = tuple(v)
        if all(x == 0 for x in v):
            return True
        if self.degenerate_plane:
            return True
        for cone in self.cones:
            for d1, d2 in zip(cone.sectors, cone.sectors[1:]):
                if _in_sector(v, d1, d2):
                    return True
        return False


def _in_sector(v, d1, d2):
    n = len(v)
    cols = [[d1[k], d2[k]] for k in range(n)]
    ab = solve(cols, list(v))
    return ab is not None and ab[0] >= 0 and ab[1] >= 0


def build_fan(m, basis=None):
    """Coarse fan tropical plane of a simple rank-3 matroid."""
    if m.rank != 3 or not m.is_simple():
        raise FanError("fan planes come from simple rank-3 matroids")
    if basis is None:
        basis = standard_basis(m.n - 1)
    if basis.dim != m.n - 1:
        raise FanError("basis dimension must be n - 1")

    rank2 = list(m.flats(2))
    paths = []
    for flat in rank2:
        for i in sorted(flat):
            paths.append([frozenset([i]), flat])
    pruned = [f for f in rank2 if len(f) == 2]
    pruned += [
        frozenset([b]) for b in range(m.n) if m.point_count(b) == 2
    ]
    degenerate = False
    for f in pruned:
        incident = [p for p in paths if p[0] == f or p[-1] == f]
        if len(incident) == 1 and incident[0][0] == f and incident[0][-1] == f:
            degenerate = True  # the whole support is a plane (U_{3,3})
            break
        if len(incident) != 2:
            raise FanError(f"cannot prune ray of {sorted(f)}")  # pragma: no cover
        p1, p2 = incident
        paths.remove(p1)
        paths.remove(p2)
        if p1[0] == f:
            p1.reverse()
        if p2[-1] == f:
            p2.reverse()
        paths.append(p1 + p2[1:])

    if degenerate:
        return FanPlane(m, basis, (), (), degenerate_plane=True)

    flats = sorted({p[0] for p in paths} | {p[-1] for p in paths},
                   key=lambda f: (len(f), sorted(f)))
    rays = tuple(Ray(f, basis.direction(f)) for f in flats)
    index = {f: k for k, f in enumerate(flats)}
    cones = []
    for p in paths:
        i, j = index[p[0]], index[p[-1]]
        if j < i:
            p.reverse()
            i, j = j, i
        cones.append(Cone(i, j, tuple(basis.direction(f) for f in p)))
    cones.sort(key=lambda c: (c.i, c.j, c.sectors))
    return FanPlane(m, basis, rays, tuple(cones))


def counts(plane):
    """(|Edge|, |Face|) of the coarse structure."""
    return len(plane.rays), len(plane.cones)


def sigma(plane, ray_index):
    """The integer s with s * v_E = -(sum of the rays adjacent to E)."""
    if plane.degenerate_plane:
        raise FanError("degenerate plane has no rays")
    v = plane.rays[ray_index].direction
    n = len(v)
    s = [0] * n
    for cone in plane.cones:
        if cone.i == ray_index:
            w = plane.rays[cone.j].direction
        elif cone.j == ray_index:
            w = plane.rays[cone.i].direction
        else:
            continue
        for k in range(n):
            s[k] -= w[k]
    k0 = next((k for k in range(n) if v[k] != 0), None)
    if k0 is None:
        raise FanError("zero ray direction")  # pragma: no cover
    c = Fraction(s[k0], v[k0])
    if c.denominator != 1 or any(s[k] != c * v[k] for k in range(n)):
        raise FanError("adjacent ray sum is not a multiple of the ray")
    return int(c)


def link_graph(plane):
    """(labels, edges): the graph of coarse rays and coarse cones.

    Labels are the flats; edges may repeat (the coarse structure of a
    line-times-R plane is a multigraph on two vertices).
    """
    labels = [tuple(sorted(r.flat)) for r in plane.rays]
    edges = [(c.i, c.j) for c in plane.cones]
    return labels, edges


# -- classification of missing rays ----------------------------------------


@dataclass(frozen=True)
class MissingRayClass:
    """Which elements have no ray in the coarse structure, and why.

    kind is one of:
      "none"           -- every element contributes a ray
      "full_plane"     -- U_{3,3}; the support is all of R^2
      "line_times_r"   -- U_{2,N} plus a free element; support is R x (line)
      "bipartite_cone" -- parallel connection of two lines; the support is
                          the cone over a complete bipartite graph
    """

    kind: str
    missing: tuple = ()
    parts: tuple = ()


def classify_missing_ray(m):
    if m.rank != 3 or not m.is_simple():
        raise FanError("classification applies to simple rank-3 matroids")
    missing = tuple(b for b in range(m.n) if m.point_count(b) == 2)
    if not missing:
        return MissingRayClass("none")
    if m.n == 3:
        return MissingRayClass("full_plane", missing)
    big = [f for f in m.flats(2) if len(f) == m.n - 1]
    if big:
        return MissingRayClass("line_times_r", missing, (tuple(sorted(big[0])),))
    b = missing[0]
    k_flat, l_flat = sorted(
        (f for f in m.flats(2) if b in f), key=lambda f: (len(f), sorted(f))
    )
    if (k_flat | l_flat) != frozenset(range(m.n)) or len(k_flat & l_flat) != 1:
        raise FanError("element on two points but not a parallel connection")
    return MissingRayClass(
        "bipartite_cone", missing, (tuple(sorted(k_flat)), tuple(sorted(l_flat)))
    )


# -- reconstruction ----------------------------------------------------------


def _decode_flat(basis, v):
    """Invert u_I: which flat I (subset of {0..N}) has direction v?"""
    a = basis.decompose(v)
    if all(x in (0, 1) for x in a) and any(a):
        return frozenset(i + 1 for i, x in enumerate(a) if x == 1)
    if all(x in (0, -1) for x in a):
        return frozenset([0]) | frozenset(i + 1 for i, x in enumerate(a) if x == 0)
    raise FanError(f"direction {tuple(v)} is not a flat direction")


def reconstruct_matroid(rays, cones, dim, basis=None):
    """Recover the matroid from the coarse rays and cones of its fan.

    rays: ray directions (integer vectors of length dim)
    cones: pairs of ray indices
    The ground set is {0, ..., dim}; missing line rays are resolved via the
    parallel-connection classification.  The result is verified by
    rebuilding the fan.
    """
    if basis is None:
        basis = standard_basis(dim)
    if basis.dim != dim:
        raise FanError("basis dimension mismatch")
    if not rays:
        if dim != 2:
            raise FanError("an empty fan is a plane only in dimension 2")
        return mt.uniform(3, 3)
    flats = [_decode_flat(basis, v) for v in rays]
    if len(set(flats)) != len(flats):
        raise FanError("repeated ray directions")
    lines = [f for f in flats if len(f) >= 2]
    for i, j in cones:
        fi, fj = flats[i], flats[j]
        if len(fi) == 1 and len(fj) == 1:
            lines.append(fi | fj)
        # other combinations also occur: line ray inside a point flat, and
        # merged faces joining two point rays or a point ray to a line ray
        # it does not contain (line-times-R); the rebuild check below
        # validates those.
    try:
        m = mt.from_lines(dim + 1, set(lines))
    except MatroidError as exc:
        raise FanError(f"ray data is not a fan tropical plane: {exc}") from exc
    rebuilt = build_fan(m, basis)
    got = sorted(r.direction for r in rebuilt.rays)
    want = sorted(tuple(int(x) for x in v) for v in rays)
    if got != want:
        raise FanError("reconstructed matroid does not reproduce the rays")
    pairs = sorted(tuple(sorted((c.i, c.j))) for c in rebuilt.cones)
    # compare cones through ray directions, input indexing may differ
    ray_pos = {tuple(int(x) for x in v): k for k, v in enumerate(rays)}
    relabel = {k: ray_pos[r.direction] for k, r in enumerate(rebuilt.rays)}
    pairs = sorted(tuple(sorted((relabel[c.i], relabel[c.j]))) for c in rebuilt.cones)
    given = sorted(tuple(sorted((int(i), int(j)))) for i, j in cones)
    if pairs != given:
        raise FanError("reconstructed matroid does not reproduce the cones")
    return m


def has_saturated_triangle(m):
    """Three lines i, j, k and three points I, J, K with k in I&J,
    j in I&K, i in J&K and I | J | K the whole ground set."""
    if m.rank != 3 or not m.is_simple():
        raise FanError("saturated triangles live in simple rank-3 matroids")
    ground = frozenset(range(m.n))
    pts = list(m.flats(2))
    for fi, fj, fk in combinations(pts, 3):
        if fi | fj | fk != ground:
            continue
        ab, ac, bc = fi & fj, fi & fk, fj & fk
        if len(ab) == 1 and len(ac) == 1 and len(bc) == 1:
            trio = ab | ac | bc
            if len(trio) == 3:
                return True
    return False
