"""Exact rational polyhedra with a double description engine.

Points are row vectors.  A :class:`QPolyhedron` carries an H-representation
(``a . x >= b`` plus equations ``a . x == b``) and a V-representation
(vertices, rays and lineality lines).  Either one may be given; the other is
computed on demand and cached.

Linear maps act on the right, ``x -> x T``, matching the way transition
matrices act on valuation vectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, floor
from typing import Iterable, List, Optional, Sequence, Tuple

from . import _exact

IntVec = Tuple[int, ...]
QVec = Tuple[Fraction, ...]
Constraint = Tuple[IntVec, Fraction]


class PolyhedronError(ValueError):
    pass


class EmptyPolyhedronError(PolyhedronError):
    """Raised when an operation needs a nonempty polyhedron."""


class UnboundedError(PolyhedronError):
    pass


class NonConvexImageError(PolyhedronError):
    """A piecewise-linear image is not convex."""


# ---------------------------------------------------------------------------
# integer helpers


def _primitive_int(v: Sequence) -> IntVec:
    return _exact.primitive(v)


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _scale_constraint(a: Sequence, b) -> Constraint:
    """Scale ``a . x >= b`` so that ``a`` is a primitive integer vector."""
    fr = [Fraction(x) for x in a]
    if all(x == 0 for x in fr):
        return tuple(0 for _ in fr), Fraction(b)
    prim = _primitive_int(fr)
    k = next(i for i, x in enumerate(fr) if x != 0)
    factor = Fraction(prim[k]) / fr[k]
    return prim, Fraction(b) * factor


# ---------------------------------------------------------------------------
# double description core


def _cone_dd(rows: Sequence[Sequence[int]], d: int) -> Tuple[List[IntVec], List[IntVec]]:
    """Generators of the cone ``{y in Q^d : A y >= 0}``.

    Returns primitive extreme rays of the pointed part and a basis of the
    lineality space.  Rows must be integral.
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    if not rows:
        return [], [tuple(int(i == j) for j in range(d)) for i in range(d)]
    lines = [_primitive_int(v) for v in _exact.nullspace(rows)]
    work = list(rows)
    for line in lines:
        work.append(line)
        work.append(tuple(-x for x in line))

    # initial simplicial cone from d independent rows
    basis: List[int] = []
    chosen: List[Tuple[int, ...]] = []
    for idx, r in enumerate(work):
        if _exact.rank(chosen + [r]) > len(chosen):
            chosen.append(r)
            basis.append(idx)
            if len(chosen) == d:
                break
    if len(chosen) < d:
        raise PolyhedronError("internal: lineality not removed")
    inv = _exact.inverse(chosen)
    rays: List[IntVec] = []
    zeros: List[frozenset] = []
    for j in range(d):
        col = [inv[i][j] for i in range(d)]
        rays.append(_primitive_int(col))
        zeros.append(frozenset(basis[k] for k in range(d) if k != j))

    for idx, a in enumerate(work):
        if idx in basis:
            continue
        vals = [_dot(a, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        if not neg:
            for k in zer:
                zeros[k] = zeros[k] | {idx}
            continue
        new_rays: List[IntVec] = []
        new_zeros: List[frozenset] = []
        for p in pos:
            for n in neg:
                common = zeros[p] & zeros[n]
                if len(common) < d - 2:
                    continue
                if any(
                    k != p and k != n and common <= zeros[k] for k in range(len(rays))
                ):
                    continue
                vp, vn = vals[p], vals[n]
                r = tuple(vp * y - vn * x for x, y in zip(rays[p], rays[n]))
                new_rays.append(_primitive_int(r))
                new_zeros.append(common | {idx})
        keep = pos + zer
        rays = [rays[k] for k in keep] + new_rays
        zeros = [zeros[k] | {idx} if vals[k] == 0 else zeros[k] for k in keep] + new_zeros
    uniq = sorted(set(rays))
    return uniq, sorted(lines)


# ---------------------------------------------------------------------------
# the polyhedron type


@dataclass(frozen=True, eq=False)
class QPolyhedron:
    """Rational polyhedron in ``Q^dim``.

    Parameters
    ----------
    dim
        Ambient dimension.
    h
        Optional pair ``(inequalities, equations)``; each entry is ``(a, b)``
        meaning ``a . x >= b`` (resp. ``==``).
    v
        Optional triple ``(vertices, rays, lines)``.
    """

    dim: int
    h: Optional[Tuple[Tuple[Constraint, ...], Tuple[Constraint, ...]]] = None
    v: Optional[Tuple[Tuple[QVec, ...], Tuple[IntVec, ...], Tuple[IntVec, ...]]] = None

    def __post_init__(self) -> None:
        if self.h is None and self.v is None:
            raise PolyhedronError("need an H- or V-representation")

    # -- representations ---------------------------------------------------

    @cached_property
    def _hrep(self) -> Tuple[Tuple[Constraint, ...], Tuple[Constraint, ...]]:
        if self.h is not None:
            return self.h
        return _v_to_h(self.dim, *self.v)

    @cached_property
    def _vrep(self):
        if self.v is not None:
            return self.v
        return _h_to_v(self.dim, *self.h)

    @property
    def inequalities(self) -> Tuple[Constraint, ...]:
        return self._hrep[0]

    @property
    def equations(self) -> Tuple[Constraint, ...]:
        return self._hrep[1]

    @property
    def vertices(self) -> Tuple[QVec, ...]:
        return self._vrep[0]

    @property
    def rays(self) -> Tuple[IntVec, ...]:
        return self._vrep[1]

    @property
    def lines(self) -> Tuple[IntVec, ...]:
        return self._vrep[2]

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lines

    @property
    def is_cone(self) -> bool:
        return not self.is_empty and all(all(x == 0 for x in p) for p in self.vertices)

    def affine_dimension(self) -> int:
        if self.is_empty:
            return -1
        base = self.vertices[0]
        dirs = [tuple(x - y for x, y in zip(p, base)) for p in self.vertices[1:]]
        dirs += list(self.rays) + list(self.lines)
        return _exact.rank(dirs) if dirs else 0

    def both(self) -> "QPolyhedron":
        """Return a polyhedron carrying both representations."""
        return QPolyhedron(self.dim, h=self._hrep, v=self._vrep)

    # -- predicates --------------------------------------------------------

    def contains(self, x: Sequence) -> bool:
        ineqs, eqs = self._hrep
        return all(_dot(a, x) >= b for a, b in ineqs) and all(_dot(a, x) == b for a, b in eqs)

    def contains_polyhedron(self, other: "QPolyhedron") -> bool:
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        ineqs, eqs = self._hrep
        for p in other.vertices:
            if not self.contains(p):
                return False
        for r in other.rays:
            if any(_dot(a, r) < 0 for a, _ in ineqs) or any(_dot(a, r) != 0 for a, _ in eqs):
                return False
        for line in other.lines:
            if any(_dot(a, line) != 0 for a, _ in ineqs + eqs):
                return False
        return True

    def same_set(self, other: "QPolyhedron") -> bool:
        """Set equality, decided by mutual containment of generators."""
        if self.dim != other.dim:
            return False
        return self.contains_polyhedron(other) and other.contains_polyhedron(self)

    # -- constructions -----------------------------------------------------

    def intersect(self, extra: Iterable[Tuple[Sequence, object]], equations: Iterable = ()) -> "QPolyhedron":
        ineqs, eqs = self._hrep
        more = tuple(_scale_constraint(a, b) for a, b in extra)
        more_eq = tuple(_scale_constraint(a, b) for a, b in equations)
        return QPolyhedron(self.dim, h=(ineqs + more, eqs + more_eq))

    def dilate(self, k) -> "QPolyhedron":
        k = Fraction(k)
        if k <= 0:
            raise PolyhedronError("dilation factor must be positive")
        verts, rays, lines = self._vrep
        return QPolyhedron(
            self.dim, v=(tuple(tuple(k * x for x in p) for p in verts), rays, lines)
        )

    def lattice_points(self) -> List[IntVec]:
        """All integer points, sorted lexicographically."""
        if self.is_empty:
            return []
        if not self.is_bounded:
            raise UnboundedError("lattice points of an unbounded polyhedron")
        return _enumerate(self.dim, self._hrep, self.vertices)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        ineqs, eqs = self._hrep
        verts, rays, lines = self._vrep

        def num(x):
            x = Fraction(x)
            return int(x) if x.denominator == 1 else str(x)

        return {
            "dim": self.dim,
            "vertices": [[num(x) for x in p] for p in verts],
            "rays": [list(r) for r in rays],
            "lines": [list(r) for r in lines],
            "inequalities": [list(a) + [num(b)] for a, b in ineqs],
            "equations": [list(a) + [num(b)] for a, b in eqs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "QPolyhedron":
        dim = int(data["dim"])
        if data.get("inequalities") is not None or data.get("equations"):
            ineqs = [(r[:-1], Fraction(r[-1])) for r in data.get("inequalities", [])]
            eqs = [(r[:-1], Fraction(r[-1])) for r in data.get("equations", [])]
            return from_h(dim, ineqs, eqs)
        return from_v(dim, data.get("vertices", []), data.get("rays", []), data.get("lines", []))

    def __repr__(self) -> str:
        parts = [f"dim={self.dim}"]
        if self.v is not None or "_vrep" in self.__dict__:
            parts.append(f"vertices={len(self.vertices)}, rays={len(self.rays)}")
        if self.h is not None or "_hrep" in self.__dict__:
            parts.append(f"inequalities={len(self.inequalities)}")
        return f"QPolyhedron({', '.join(parts)})"


# ---------------------------------------------------------------------------
# conversions


def _h_to_v(dim: int, ineqs, eqs):
    rows = []
    for a, b in list(ineqs) + [(a, b) for a, b in eqs] + [
        (tuple(-x for x in a), -b) for a, b in eqs
    ]:
        row = [-Fraction(b)] + [Fraction(x) for x in a]
        rows.append(_primitive_int(row) if any(row) else tuple(0 for _ in row))
    rows.append(tuple([1] + [0] * dim))
    rays, lines = _cone_dd(rows, dim + 1)
    verts, out_rays = [], []
    for r in rays:
        if r[0] > 0:
            verts.append(tuple(Fraction(x, r[0]) for x in r[1:]))
        else:
            out_rays.append(tuple(r[1:]))
    if not verts:
        return (), (), ()
    out_lines = [tuple(line[1:]) for line in lines]
    return tuple(sorted(verts)), tuple(sorted(out_rays)), tuple(sorted(out_lines))


def _v_to_h(dim: int, verts, rays, lines):
    if not verts:
        # canonical empty set: 0 >= 1
        return ((tuple([0] * dim), Fraction(1)),), ()
    gens = [_primitive_int([1] + [Fraction(x) for x in p]) for p in verts]
    gens += [tuple([0] + list(r)) for r in rays]
    for line in lines:
        gens.append(tuple([0] + list(line)))
        gens.append(tuple([0] + [-x for x in line]))
    facets, eq_normals = _cone_dd(gens, dim + 1)
    ineqs = []
    for f in facets:
        a = f[1:]
        if all(x == 0 for x in a):
            continue
        ineqs.append(_scale_constraint(a, -Fraction(f[0])))
    eqs = []
    for e in _exact.rref(eq_normals)[0] if eq_normals else []:
        eqs.append(_scale_constraint(e[1:], -Fraction(e[0])))
    return tuple(sorted(ineqs)), tuple(sorted(eqs))


def from_h(dim: int, inequalities: Iterable = (), equations: Iterable = ()) -> QPolyhedron:
    """Polyhedron ``{x : a . x >= b}`` intersected with ``{x : a . x == b}``."""
    ineqs = tuple(_scale_constraint(a, b) for a, b in inequalities)
    eqs = tuple(_scale_constraint(a, b) for a, b in equations)
    for a, _ in ineqs + eqs:
        if len(a) != dim:
            raise PolyhedronError("constraint has the wrong length")
    return QPolyhedron(dim, h=(ineqs, eqs))


def from_v(dim: int, vertices: Iterable = (), rays: Iterable = (), lines: Iterable = ()) -> QPolyhedron:
    """Convex hull of ``vertices`` plus the cone of ``rays`` and ``lines``.

    The V-representation is reduced to extreme generators.
    """
    verts = [tuple(Fraction(x) for x in p) for p in vertices]
    rr = [_primitive_int(r) for r in rays if any(r)]
    ll = [_primitive_int(r) for r in lines if any(r)]
    for p in verts + rr + ll:
        if len(p) != dim:
            raise PolyhedronError("generator has the wrong length")
    if not verts:
        if rr or ll:
            raise PolyhedronError("a V-representation needs at least one vertex")
        return QPolyhedron(dim, h=_v_to_h(dim, (), (), ()), v=((), (), ()))
    hrep = _v_to_h(dim, verts, rr, ll)
    return QPolyhedron(dim, h=hrep)


def cone(rays: Iterable[Sequence[int]], dim: Optional[int] = None) -> QPolyhedron:
    rays = [tuple(r) for r in rays]
    if dim is None:
        if not rays:
            raise PolyhedronError("dimension needed for an empty ray list")
        dim = len(rays[0])
    return from_v(dim, [tuple([0] * dim)], rays)


def dd_convert(p: QPolyhedron) -> QPolyhedron:
    """Return ``p`` with both representations computed (V-side reduced)."""
    q = QPolyhedron(p.dim, h=p._hrep)
    return QPolyhedron(p.dim, h=q._hrep, v=q._vrep)


def extreme_rays(c: QPolyhedron) -> List[IntVec]:
    """Primitive extreme rays of a pointed cone, sorted."""
    if not c.is_cone:
        raise PolyhedronError("not a cone")
    if c.lines:
        raise PolyhedronError("cone is not pointed")
    return sorted(dd_convert(c).rays)


def convex_hull(points: Iterable[Sequence]) -> QPolyhedron:
    pts = [tuple(p) for p in points]
    if not pts:
        raise EmptyPolyhedronError("convex hull of no points")
    return from_v(len(pts[0]), pts)


# ---------------------------------------------------------------------------
# lattice points


def _enumerate(dim: int, hrep, verts) -> List[IntVec]:
    ineqs, eqs = hrep
    cons = list(ineqs) + list(eqs) + [(tuple(-x for x in a), -b) for a, b in eqs]
    lo = [ceil(min(p[k] for p in verts)) for k in range(dim)]
    hi = [floor(max(p[k] for p in verts)) for k in range(dim)]
    by_last: List[List[Constraint]] = [[] for _ in range(dim)]
    for a, b in cons:
        nz = [k for k, x in enumerate(a) if x != 0]
        if nz:
            by_last[nz[-1]].append((a, b))
        elif b > 0:
            return []
    out: List[IntVec] = []
    x = [0] * dim

    def rec(k: int) -> None:
        if k == dim:
            out.append(tuple(x))
            return
        low, high = Fraction(lo[k]), Fraction(hi[k])
        for a, b in by_last[k]:
            rest = b - sum(a[j] * x[j] for j in range(k))
            bound = Fraction(rest) / a[k]
            if a[k] > 0:
                low = max(low, bound)
            else:
                high = min(high, bound)
        for val in range(ceil(low), floor(high) + 1):
            x[k] = val
            rec(k + 1)
        x[k] = 0

    if dim == 0:
        return [()]
    rec(0)
    return out


# ---------------------------------------------------------------------------
# linear maps


def is_unimodular(t: Sequence[Sequence[int]]) -> bool:
    if not t or any(len(r) != len(t) for r in t):
        return False
    if any(Fraction(x).denominator != 1 for r in t for x in r):
        return False
    return abs(_exact.det(t)) == 1


def _apply_matrix(x: Sequence, t: Sequence[Sequence]) -> tuple:
    return tuple(_exact.vecmat(list(x), t))


def linear_image(p: QPolyhedron, t: Sequence[Sequence[int]]) -> QPolyhedron:
    """Image of ``p`` under ``x -> x t``."""
    if len(t) != p.dim:
        raise PolyhedronError("matrix rows must match the ambient dimension")
    out_dim = len(t[0]) if t else 0
    if p.is_empty:
        return from_v(out_dim)
    verts = [_apply_matrix(v, t) for v in p.vertices]
    rays = [_apply_matrix(r, t) for r in p.rays]
    lines = [_apply_matrix(r, t) for r in p.lines]
    return from_v(out_dim, verts, rays, lines)


# ---------------------------------------------------------------------------
# piecewise-linear maps


@dataclass(frozen=True)
class PLPiece:
    """Affine map ``x -> x matrix + shift`` on a closed region."""

    region: Tuple[Constraint, ...]
    matrix: Tuple[Tuple[int, ...], ...]
    shift: Tuple[int, ...]

    def contains(self, x: Sequence) -> bool:
        return all(_dot(a, x) >= b for a, b in self.region)

    def apply(self, x: Sequence) -> tuple:
        y = _apply_matrix(x, self.matrix)
        return tuple(a + b for a, b in zip(y, self.shift))


@dataclass(frozen=True)
class PLMap:
    """Composite of piecewise-affine steps, applied left to right.

    Each step is a tuple of pieces whose regions cover the space and whose
    maps agree on overlaps.
    """

    dim: int
    steps: Tuple[Tuple[PLPiece, ...], ...] = ()

    def __call__(self, x: Sequence) -> tuple:
        y = tuple(x)
        for step in self.steps:
            piece = next((pc for pc in step if pc.contains(y)), None)
            if piece is None:
                raise PolyhedronError("pieces do not cover the point")
            y = piece.apply(y)
        return y

    def then(self, other: "PLMap") -> "PLMap":
        """First ``self``, then ``other``."""
        if other.dim != self.dim:
            raise PolyhedronError("dimension mismatch")
        return PLMap(self.dim, self.steps + other.steps)

    def check_boundaries(self, samples: Iterable[Sequence]) -> bool:
        """Maps of overlapping pieces agree on the sampled points."""
        for x in samples:
            y = tuple(x)
            for step in self.steps:
                images = {pc.apply(y) for pc in step if pc.contains(y)}
                if len(images) != 1:
                    return False
                y = images.pop()
        return True


def identity_map(dim: int) -> PLMap:
    return PLMap(dim)


def linear_map(t: Sequence[Sequence[int]]) -> PLMap:
    mat = tuple(tuple(int(x) for x in r) for r in t)
    return PLMap(len(mat), ((PLPiece((), mat, tuple([0] * len(mat))),),))


def tropical_mutation_map(eps, k) -> PLMap:
    """``mu_k^T`` for the exchange matrix ``eps`` as a two-piece map."""
    n = eps.size
    i = eps.index(k)
    row = eps.row(k)
    e_k = tuple(int(j == i) for j in range(n))
    pieces = []
    for sign in (1, -1):
        mat = [[int(r == c) for c in range(n)] for r in range(n)]
        for j in range(n):
            if j == i:
                mat[i][j] = -1
            else:
                mat[i][j] = max(sign * row[j], 0)
        region = ((tuple(sign * x for x in e_k), Fraction(0)),)
        pieces.append(PLPiece(region, tuple(map(tuple, mat)), tuple([0] * n)))
    return PLMap(n, (tuple(pieces),))


def tropical_sequence_map(eps, seq) -> PLMap:
    """Composite of tropical mutations along ``seq``, starting at ``eps``."""
    from .exchange import mutate_matrix

    out = identity_map(eps.size)
    cur = eps
    for k in seq:
        out = out.then(tropical_mutation_map(cur, k))
        cur = mutate_matrix(cur, k)
    return out


def _sample_points(p: QPolyhedron, radius: int = 2) -> List[IntVec]:
    if p.is_bounded:
        return p.lattice_points()
    box = []
    for k in range(p.dim):
        e = [0] * p.dim
        e[k] = 1
        box.append((tuple(e), Fraction(-radius)))
        box.append((tuple(-x for x in e), Fraction(-radius)))
    return p.intersect(box).lattice_points()


def pl_image(p: QPolyhedron, plmap: PLMap, check_dilation: int = 2) -> QPolyhedron:
    """Image of ``p`` under a piecewise-linear map.

    Each step subdivides the current polyhedron along its pieces, maps every
    piece affinely and takes the convex hull.  Convexity of the union is
    checked on lattice points of the hull (and of its dilations up to
    ``check_dilation`` when all pieces are linear).

    Raises
    ------
    NonConvexImageError
        If a hull point is not covered by any mapped piece.
    """
    if plmap.dim != p.dim:
        raise PolyhedronError("dimension mismatch")
    cur = p
    for step in plmap.steps:
        if cur.is_empty:
            return cur
        images = []
        for pc in step:
            part = cur.intersect(pc.region) if pc.region else cur
            if part.is_empty:
                continue
            verts = [pc.apply(v) for v in part.vertices]
            rays = [_apply_matrix(r, pc.matrix) for r in part.rays]
            lines = [_apply_matrix(r, pc.matrix) for r in part.lines]
            images.append(from_v(p.dim, verts, rays, lines))
        hull = from_v(
            p.dim,
            [v for im in images for v in im.vertices],
            [r for im in images for r in im.rays],
            [r for im in images for r in im.lines],
        )
        linear = all(not any(pc.shift) for pc in step)
        factors = range(1, check_dilation + 1) if linear else (1,)
        for f in factors:
            scaled_hull = hull.dilate(f) if f > 1 else hull
            scaled = [im.dilate(f) if f > 1 else im for im in images]
            for x in _sample_points(scaled_hull):
                if not any(im.contains(x) for im in scaled):
                    raise NonConvexImageError(f"hull point {x} is not in the image")
        cur = hull
    return cur
