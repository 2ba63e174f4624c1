"""Invariant calculus for compact tropical surfaces built from toric
pieces by summing along boundary curves.

Surfaces are expression trees, not geometric objects: each node carries
the Euler characteristic chi, the canonical self-intersection K^2, the
degree c2 of the second Chern class, and a ledger of boundary curves
(combinatorial curve type, self-intersection, crossing information).
The calculus implements:

  toric     -- a complete unimodular fan in R^2
  sum       -- glue two surfaces along isomorphic boundary curves with
               opposite self-intersections
  self_sum  -- glue a surface to itself along two disjoint such curves
  modify    -- a locally degree-1 modification along a curve; invariants
               are unchanged, the centre joins the ledger
  contract  -- remove a (-1)-curve, implemented as the sum with the cone
               plane over a line (a plane with the invariants of TP^2)

Noether's identity 12 chi = K^2 + c2 is asserted on every node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import SurfaceError


# -- curves ------------------------------------------------------------------


@dataclass(frozen=True)
class CurveDescriptor:
    """Combinatorial type of a boundary curve: first Betti number and the
    multiset of vertex valencies (leaves included).  A circle has no
    vertices; a torus boundary line of a toric surface is a segment with
    valencies (1, 1)."""

    b1: int
    valencies: tuple = ()

    def __post_init__(self):
        vals = tuple(sorted(int(v) for v in self.valencies))
        object.__setattr__(self, "valencies", vals)
        if self.b1 < 0 or any(v < 1 for v in vals):
            raise SurfaceError("invalid curve descriptor")
        if sum(v - 2 for v in vals) != 2 * self.b1 - 2:
            raise SurfaceError(
                "valencies and b1 disagree: sum(val - 2) must be 2 b1 - 2"
            )

    @property
    def leaf_count(self):
        return sum(1 for v in self.valencies if v == 1)

    @property
    def k_degree(self):
        """Degree of the canonical class of the curve: 2 b1 - 2."""
        return 2 * self.b1 - 2

    def isomorphic(self, other):
        return self.b1 == other.b1 and self.valencies == other.valencies


SEGMENT = CurveDescriptor(0, (1, 1))
CIRCLE = CurveDescriptor(1, ())


@dataclass(frozen=True)
class LedgerEntry:
    curve: CurveDescriptor
    self_intersection: int
    snc: bool = True
    crossings: frozenset = frozenset()


@dataclass(frozen=True)
class Surface:
    chi: int
    k2: int
    c2: int
    ledger: tuple = ()  # tuple of (id, LedgerEntry), ids unique strings

    def __post_init__(self):
        if 12 * self.chi != self.k2 + self.c2:
            raise SurfaceError(
                f"Noether fails: 12*{self.chi} != {self.k2} + {self.c2}"
            )
        ids = [i for i, _ in self.ledger]
        if len(set(ids)) != len(ids):
            raise SurfaceError("duplicate ledger ids")

    @property
    def triple(self):
        return (self.chi, self.k2, self.c2)

    def entry(self, curve_id):
        for i, e in self.ledger:
            if i == curve_id:
                return e
        raise SurfaceError(f"no boundary curve {curve_id!r}")


# -- toric surfaces ----------------------------------------------------------


@dataclass(frozen=True)
class Fan2D:
    """A complete unimodular fan in R^2: primitive rays, counterclockwise,
    every consecutive pair a lattice basis of determinant +1."""

    rays: tuple

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in v) for v in self.rays)
        object.__setattr__(self, "rays", rays)
        n = len(rays)
        if n < 3:
            raise SurfaceError("a complete fan has at least 3 rays")
        for v in rays:
            if v == (0, 0) or math.gcd(abs(v[0]), abs(v[1])) != 1:
                raise SurfaceError(f"ray {v} is not primitive")
        if len(set(rays)) != n:
            raise SurfaceError("repeated rays")
        for k in range(n):
            a, b = rays[k], rays[(k + 1) % n]
            if a[0] * b[1] - a[1] * b[0] != 1:
                raise SurfaceError(
                    f"consecutive rays {a}, {b} are not a positive lattice basis"
                )

    @property
    def n(self):
        return len(self.rays)

    def self_intersections(self):
        """D_i^2 = -a_i where v_{i-1} + v_{i+1} = a_i v_i."""
        out = []
        n = self.n
        for i in range(n):
            s = tuple(
                self.rays[(i - 1) % n][k] + self.rays[(i + 1) % n][k]
                for k in range(2)
            )
            v = self.rays[i]
            if v[0] != 0:
                a, rem = divmod(s[0], v[0])
                ok = rem == 0 and s[1] == a * v[1]
            else:
                a, rem = divmod(s[1], v[1])
                ok = rem == 0 and s[0] == a * v[0]
            if not ok:
                raise SurfaceError("neighbour sum not a multiple of the ray")
            out.append(-a)
        return tuple(out)

    def star_subdivide(self, i):
        """Insert v_i + v_{i+1} between rays i and i+1."""
        n = self.n
        v = tuple(self.rays[i][k] + self.rays[(i + 1) % n][k] for k in range(2))
        rays = self.rays[: i + 1] + (v,) + self.rays[i + 1 :]
        return Fan2D(rays)


def tp2_fan():
    return Fan2D(((1, 0), (0, 1), (-1, -1)))


def hirzebruch_fan(k):
    """Rays (1, k), (0, 1), (-1, 0), (0, -1); k = 0 is P^1 x P^1."""
    return Fan2D(((1, k), (0, 1), (-1, 0), (0, -1)))


def toric_surface(fan):
    """Surface of a complete unimodular fan: chi = 1, c2 = n,
    K^2 = sum D_i^2 + 2n (= 12 - n)."""
    selfs = fan.self_intersections()
    n = fan.n
    k2 = sum(selfs) + 2 * n
    ledger = []
    for i, s in enumerate(selfs):
        crossings = frozenset({f"D{(i - 1) % n}", f"D{(i + 1) % n}"})
        ledger.append((f"D{i}", LedgerEntry(SEGMENT, s, True, crossings)))
    return Surface(1, k2, n, tuple(ledger))


# -- gluing operations -------------------------------------------------------


def _check_summable(e1, e2):
    if not (e1.snc and e2.snc):
        raise SurfaceError("sum requires simple normal crossing boundary curves")
    if not e1.curve.isomorphic(e2.curve):
        raise SurfaceError("summed curves must be isomorphic")
    if e1.self_intersection != -e2.self_intersection:
        raise SurfaceError(
            "summed curves need opposite self-intersections "
            f"({e1.self_intersection} vs {e2.self_intersection})"
        )


def _drop(ledger, gone, prefix, neighbours_of_gone, foreign_neighbours):
    """Rebuild one side's ledger for a sum: drop the summed curve, prefix
    the ids, and let the curves that crossed it cross the other side's
    neighbours through the neck."""
    out = []
    for i, e in ledger:
        if i in gone:
            continue
        crossings = set()
        for c in e.crossings:
            if c in gone:
                crossings |= foreign_neighbours
            else:
                crossings.add(prefix + c)
        out.append((prefix + i, replace(e, crossings=frozenset(crossings))))
    return out


def tropical_sum(x1, id1, x2, id2):
    """Glue x1 and x2 along the boundary curves id1 and id2."""
    e1, e2 = x1.entry(id1), x2.entry(id2)
    _check_summable(e1, e2)
    b1 = e1.curve.b1
    kc = e1.curve.k_degree
    n1 = {"a." + i for i, e in x1.ledger if id1 in e.crossings}
    n2 = {"b." + i for i, e in x2.ledger if id2 in e.crossings}
    ledger = _drop(x1.ledger, {id1}, "a.", n1, n2) + _drop(
        x2.ledger, {id2}, "b.", n2, n1
    )
    return Surface(
        x1.chi + x2.chi - (1 - b1),
        x1.k2 + x2.k2 + 4 * kc,
        x1.c2 + x2.c2 + 2 * kc,
        tuple(ledger),
    )


def self_sum(x, ida, idb):
    """Glue a surface to itself along two disjoint boundary curves."""
    if ida == idb:
        raise SurfaceError("self-sum needs two distinct curves")
    ea, eb = x.entry(ida), x.entry(idb)
    if idb in ea.crossings or ida in eb.crossings:
        raise SurfaceError("self-summed curves must be disjoint")
    _check_summable(ea, eb)
    b1 = ea.curve.b1
    kc = ea.curve.k_degree
    na = {i for i, e in x.ledger if ida in e.crossings and i not in (ida, idb)}
    nb = {i for i, e in x.ledger if idb in e.crossings and i not in (ida, idb)}
    out = []
    for i, e in x.ledger:
        if i in (ida, idb):
            continue
        crossings = set()
        for c in e.crossings:
            if c == ida:
                crossings |= nb
            elif c == idb:
                crossings |= na
            else:
                crossings.add(c)
        out.append((i, replace(e, crossings=frozenset(crossings))))
    return Surface(
        x.chi - (1 - b1),
        x.k2 + 4 * kc,
        x.c2 + 2 * kc,
        tuple(out),
    )


def modify(x, curve, self_intersection, new_id, locally_degree_1=True):
    """A modification of the surface along a curve.  Degree-1 modifications
    leave (chi, K^2, c2) unchanged; the centre curve joins the ledger."""
    if not locally_degree_1:
        raise SurfaceError("only locally degree-1 modifications are supported")
    for i, _ in x.ledger:
        if i == new_id:
            raise SurfaceError(f"ledger id {new_id!r} already in use")
    ledger = x.ledger + ((new_id, LedgerEntry(curve, self_intersection)),)
    return Surface(x.chi, x.k2, x.c2, ledger)


def cone_plane(curve):
    """The plane used to contract a (-1)-curve: the cone over a line with
    the same leaf structure as the curve.  Whatever the number of leaves,
    its invariants are those of TP^2, and its distinguished boundary line
    has self-intersection +1."""
    if curve.b1 != 0:
        raise SurfaceError("cone planes exist over rational curves only")
    return Surface(1, 9, 3, (("L", LedgerEntry(curve, 1)),))


def contract(x, curve_id):
    """Contract a rational (-1) boundary curve: chi is unchanged, K^2 goes
    up by 1 and c2 down by 1.  Implemented as the sum with the cone plane
    over a line; only the original surface's ledger survives."""
    e = x.entry(curve_id)
    if e.curve.b1 != 0:
        raise SurfaceError("only rational curves can be contracted")
    if e.self_intersection != -1:
        raise SurfaceError("contraction needs self-intersection -1")
    summed = tropical_sum(x, curve_id, cone_plane(e.curve), "L")
    ledger = tuple(
        (i[2:], e2) for i, e2 in summed.ledger if i.startswith("a.")
    )
    return Surface(summed.chi, summed.k2, summed.c2, ledger)


# -- checks ------------------------------------------------------------------


def noether_check(x):
    """Noether's identity for the node (asserted at construction too)."""
    return {
        "chi": x.chi,
        "k2": x.k2,
        "c2": x.c2,
        "lhs": 12 * x.chi,
        "rhs": x.k2 + x.c2,
        "holds": 12 * x.chi == x.k2 + x.c2,
    }


def signature_hypothesis(x):
    """(K^2 - 2 c2) / 3, the conjectural signature of the (1,1)-pairing.
    Always an integer when Noether holds."""
    num = x.k2 - 2 * x.c2
    if num % 3:
        raise SurfaceError("K^2 - 2 c2 is not divisible by 3")
    return num // 3


def adjunction_check(x, curve_id):
    """Adjunction for a boundary curve C with simple normal crossings:

        K_X . C = K^o . C - C^2 - sum_i D_i . C

    with K^o . C = sum over vertices of C of (val - 2) plus one for each
    leaf (the crossing makes every leaf 2-valent in the augmented graph)
    and sum_i D_i . C = number of leaves.  The genus formula
    b1 = (K_X . C + C^2)/2 + 1 is verified.
    """
    e = x.entry(curve_id)
    if not e.snc:
        raise SurfaceError("adjunction check needs an snc boundary curve")
    c = e.curve
    ko_c = c.k_degree + c.leaf_count
    d_c = c.leaf_count
    k_c = ko_c - e.self_intersection - d_c
    rhs, rem = divmod(k_c + e.self_intersection, 2)
    holds = rem == 0 and c.b1 == rhs + 1
    return {
        "curve": curve_id,
        "b1": c.b1,
        "self_intersection": e.self_intersection,
        "K.C": k_c,
        "Ko.C": ko_c,
        "boundary.C": d_c,
        "holds": holds,
    }


# -- JSON expression trees ---------------------------------------------------


def parse_curve(obj):
    return CurveDescriptor(int(obj["b1"]), tuple(obj.get("valencies", ())))


def parse_surface(obj):
    """Build a Surface from a nested expression object; see the README for
    the schema.  Exactly one of the operation keys must be present."""
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SurfaceError("surface expression must have exactly one operation")
    (op, body), = obj.items()
    if op == "toric":
        return toric_surface(Fan2D(tuple(tuple(r) for r in body["rays"])))
    if op == "sum":
        return tropical_sum(
            parse_surface(body["left"]),
            str(body["left_curve"]),
            parse_surface(body["right"]),
            str(body["right_curve"]),
        )
    if op == "selfsum":
        return self_sum(
            parse_surface(body["base"]), str(body["curve1"]), str(body["curve2"])
        )
    if op == "modify":
        return modify(
            parse_surface(body["base"]),
            parse_curve(body["curve"]),
            int(body["self_intersection"]),
            str(body["id"]),
            bool(body.get("locally_degree_1", True)),
        )
    if op == "contract":
        return contract(parse_surface(body["base"]), str(body["curve"]))
    raise SurfaceError(f"unknown surface operation {op!r}")


def surface_report(x):
    return {
        "chi": x.chi,
        "K2": x.k2,
        "c2": x.c2,
        "noether": noether_check(x)["holds"],
        "signature_hypothesis": signature_hypothesis(x),
        "boundary": [
            {
                "id": i,
                "b1": e.curve.b1,
                "valencies": list(e.curve.valencies),
                "self_intersection": e.self_intersection,
            }
            for i, e in x.ledger
        ],
    }
