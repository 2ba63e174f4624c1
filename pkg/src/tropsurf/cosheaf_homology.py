"""Cellular chain complexes with multiplicative (cosheaf) coefficients,
their homology over ZZ, and the intersection pairing of (1,1)-cycles.

A cell complex is a list of cells with attachments: each attachment
records an incidence sign and the integral transport map
iota_1 : F_1(big) -> F_1(small) between the rank-f1 coefficient lattices
of the two cells.  A cell may attach to the same smaller cell several
times (both ends of a loop edge), each time with its own sign and
transport; the boundary map adds all of them.  The coefficient functor in
degree p is the p-th exterior power of iota_1 (p = 0 is the constant
functor), and squared boundaries are checked to vanish for every p.

Homology groups are computed exactly: free rank from matrix ranks over QQ
and torsion from the Smith invariant factors of the incoming boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .errors import ComplexError
from .intlinalg import (
    exterior_power,
    primitive,
    rank,
    smith_invariants,
    symmetric_signature,
)


@dataclass(frozen=True)
class Cell:
    id: str
    dim: int


@dataclass(frozen=True)
class Attachment:
    big: str
    small: str
    sign: int
    iota1: tuple  # rows: f1_rank(small) x f1_rank(big)


@dataclass(frozen=True)
class CellComplex:
    cells: tuple
    attachments: tuple
    f1_rank: tuple  # tuple of (cell id, rank)

    def __post_init__(self):
        ids = [c.id for c in self.cells]
        if len(set(ids)) != len(ids):
            raise ComplexError("duplicate cell ids")
        dims = {c.id: c.dim for c in self.cells}
        ranks = dict(self.f1_rank)
        if set(ranks) != set(ids):
            raise ComplexError("f1_rank must cover exactly the cells")
        for a in self.attachments:
            if a.big not in dims or a.small not in dims:
                raise ComplexError(f"attachment references unknown cell")
            if dims[a.big] != dims[a.small] + 1:
                raise ComplexError(
                    f"attachment {a.big} -> {a.small} must drop dimension by one"
                )
            if a.sign not in (1, -1):
                raise ComplexError("attachment signs are +1 or -1")
            if len(a.iota1) != ranks[a.small] or any(
                len(row) != ranks[a.big] for row in a.iota1
            ):
                raise ComplexError(
                    f"iota1 for {a.big} -> {a.small} has the wrong shape"
                )
        object.__setattr__(self, "_dims", dims)
        object.__setattr__(self, "_ranks", ranks)
        for p in range(self.max_rank + 1):
            self._check_boundary_squared(p)

    @property
    def max_dim(self):
        return max(c.dim for c in self.cells)

    @property
    def max_rank(self):
        return max(r for _, r in self.f1_rank)

    def cells_of_dim(self, q):
        return [c for c in self.cells if c.dim == q]

    def chain_rank(self, p, q):
        return sum(comb(self._ranks[c.id], p) for c in self.cells_of_dim(q))

    def boundary_matrix(self, p, q):
        """D_q : C_{p,q} -> C_{p,q-1} as an integer matrix (rows = target)."""
        src = self.cells_of_dim(q)
        dst = self.cells_of_dim(q - 1)
        col_off, off = {}, 0
        for c in src:
            col_off[c.id] = off
            off += comb(self._ranks[c.id], p)
        ncols = off
        row_off, off = {}, 0
        for c in dst:
            row_off[c.id] = off
            off += comb(self._ranks[c.id], p)
        nrows = off
        mat = [[0] * ncols for _ in range(nrows)]
        for a in self.attachments:
            if self._dims[a.big] != q:
                continue
            block = exterior_power(
                a.iota1, p, shape=(self._ranks[a.small], self._ranks[a.big])
            )
            r0, c0 = row_off[a.small], col_off[a.big]
            for i, row in enumerate(block):
                for j, v in enumerate(row):
                    mat[r0 + i][c0 + j] += a.sign * v
        return mat

    def _check_boundary_squared(self, p):
        for q in range(2, self.max_dim + 1):
            d1 = self.boundary_matrix(p, q)
            d2 = self.boundary_matrix(p, q - 1)
            if not d1 or not d2:
                continue
            for j in range(len(d1[0])):
                col = [row[j] for row in d1]
                for i in range(len(d2)):
                    if sum(d2[i][k] * col[k] for k in range(len(col))):
                        raise ComplexError(
                            f"boundary squared nonzero at p={p}, q={q}"
                        )


@dataclass(frozen=True)
class Homology:
    free_rank: int
    torsion: tuple  # invariant factors > 1

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def homology(x, p, q):
    """H_{p,q}(X) = ker D_q / im D_{q+1} with F_p coefficients."""
    n = x.chain_rank(p, q)
    d_out = x.boundary_matrix(p, q) if q > 0 else []
    d_in = x.boundary_matrix(p, q + 1)
    r_out = rank(d_out)
    r_in = rank(d_in)
    torsion = tuple(d for d in smith_invariants(d_in) if d > 1)
    return Homology(n - r_out - r_in, torsion)


def diamond(x):
    """All H_{p,q} for 0 <= p <= max coefficient rank, 0 <= q <= dim."""
    return {
        (p, q): homology(x, p, q)
        for p in range(x.max_rank + 1)
        for q in range(x.max_dim + 1)
    }


# -- JSON --------------------------------------------------------------------


def parse_complex(obj):
    cells = tuple(Cell(str(c["id"]), int(c["dim"])) for c in obj["cells"])
    ranks = obj.get("f1_rank", 2)
    if isinstance(ranks, int):
        f1 = tuple((c.id, ranks) for c in cells)
    else:
        f1 = tuple((str(k), int(v)) for k, v in ranks.items())
    atts = tuple(
        Attachment(
            str(a["big"]),
            str(a["small"]),
            int(a["sign"]),
            tuple(tuple(int(v) for v in row) for row in a["iota1"]),
        )
        for a in obj["incidences"]
    )
    return CellComplex(cells, atts, f1)


# -- (1,1)-cycles and the intersection pairing -------------------------------


@dataclass(frozen=True)
class Segment:
    """A straight piece of a (1,1)-cycle inside the chart of one 2-cell.

    start/end are rational points in the cell's lattice chart and coeff is
    the integral coefficient beta in F_1 of that cell.
    """

    face: str
    start: tuple
    end: tuple
    coeff: tuple

    def __post_init__(self):
        object.__setattr__(self, "start", tuple(Fraction(v) for v in self.start))
        object.__setattr__(self, "end", tuple(Fraction(v) for v in self.end))
        object.__setattr__(self, "coeff", tuple(int(v) for v in self.coeff))
        if len(self.start) != 2 or len(self.end) != 2 or len(self.coeff) != 2:
            raise ComplexError("segments live in 2-dimensional charts")
        if self.start == self.end:
            raise ComplexError("degenerate segment")

    @property
    def tangent(self):
        return tuple(e - s for s, e in zip(self.start, self.end))


@dataclass(frozen=True)
class OneOneCycle:
    segments: tuple


def _det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _sign(v):
    return (v > 0) - (v < 0)


def _segment_contribution(s1, s2):
    t1, t2 = s1.tangent, s2.tangent
    cross = _det2(t1, t2)
    dstart = tuple(b - a for a, b in zip(s1.start, s2.start))
    if cross == 0:
        # parallel supports never contribute when the coefficients are
        # parallel too; otherwise an overlap is a failure of transversality
        if _det2(s1.coeff, s2.coeff) == 0:
            return 0
        if _det2(dstart, t1) != 0:
            return 0  # parallel but not collinear: disjoint
        # collinear with independent coefficients: check for real overlap
        axis = 0 if t1[0] != 0 else 1
        a0, a1 = sorted((s1.start[axis], s1.end[axis]))
        b0, b1 = sorted((s2.start[axis], s2.end[axis]))
        if max(a0, b0) < min(a1, b1):
            raise ComplexError("cycles overlap along a segment: not transversal")
        return 0
    s = Fraction(_det2(dstart, t2), cross)
    t = Fraction(_det2(dstart, t1), cross)
    if s <= 0 or s >= 1 or t <= 0 or t >= 1:
        if (0 <= s <= 1) and (0 <= t <= 1):
            raise ComplexError(
                "cycles meet at a segment endpoint: perturb the representative"
            )
        return 0
    return _sign(cross) * _det2(s1.coeff, s2.coeff)


def intersection_pairing(c1, c2):
    """Sum over transversal intersection points in the interiors of shared
    2-cells of sign(det(t1, t2)) * det(beta1, beta2)."""
    total = 0
    for s1 in c1.segments:
        for s2 in c2.segments:
            if s1.face == s2.face:
                total += _segment_contribution(s1, s2)
    return total


def cycle_map(weighted_segments):
    """(1,1)-cycle of a weighted balanced polyhedral 1-cycle.

    Input: (face, start, end, weight) tuples.  The coefficient of each
    piece is its weight times the primitive tangent direction; pieces of
    weight zero are dropped.  Balancing is checked at every point of a
    chart where at least two pieces meet; endpoints met by a single piece
    are taken to continue across a cell boundary and are not checked.
    """
    segments = []
    meeting = {}
    for face, start, end, weight in weighted_segments:
        seg = Segment(face, start, end, (1, 0))
        weight = int(weight)
        prim, _ = primitive(
            tuple(int(v) for v in _scaled_integer(seg.tangent))
        )
        if weight != 0:
            segments.append(
                Segment(face, start, end, tuple(weight * v for v in prim))
            )
        for point, out in ((seg.start, prim), (seg.end, tuple(-v for v in prim))):
            key = (face, point)
            meeting.setdefault(key, []).append(tuple(weight * v for v in out))
    for (face, point), outs in meeting.items():
        if len(outs) < 2:
            continue
        if any(sum(v[k] for v in outs) != 0 for k in range(2)):
            raise ComplexError(
                f"cycle is not balanced at {point} in cell {face!r}"
            )
    return OneOneCycle(tuple(segments))


def _scaled_integer(vec):
    denom = 1
    for v in vec:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    return tuple(v * denom for v in vec)


def signature_1_1(basis):
    """Signature of the intersection form on the free part of H_{1,1}.

    basis: one entry per class, either a single OneOneCycle or a pair of
    homologous representatives (rep, alt); the diagonal Gram entries are
    computed by pairing rep with alt.  The Gram matrix must come out
    symmetric, otherwise the representatives are inconsistent.
    """
    reps = []
    for b in basis:
        if isinstance(b, OneOneCycle):
            reps.append((b, b))
        else:
            reps.append((b[0], b[1]))
    n = len(reps)
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            a = reps[i][0]
            b = reps[j][1] if j == i else reps[j][0]
            gram[i][j] = intersection_pairing(a, b)
    for i in range(n):
        for j in range(n):
            if gram[i][j] != gram[j][i]:
                raise ComplexError("Gram matrix is not symmetric; bad representatives")
    return symmetric_signature(gram)


def parse_cycle(obj):
    return OneOneCycle(
        tuple(
            Segment(
                str(s["face"]),
                tuple(Fraction(v) for v in s["start"]),
                tuple(Fraction(v) for v in s["end"]),
                tuple(int(v) for v in s["coeff"]),
            )
            for s in obj["segments"]
        )
    )
