"""Matrix models of unipotent cells and their generalized minors.

Points of the lower unipotent cell are products ``y_{i_1}(t_1) ... y_{i_m}(t_m)``
with polynomial entries in ``t_1, ..., t_m``.  The fundamental module of
highest weight ``varpi_k`` is realized inside the ``k``-th exterior power of
the defining representation, so a generalized minor is one entry of a
compound matrix read between two extremal vectors.

Two engines are provided: ``SL_n`` (type ``A_{n-1}``, exact minors of the
matrix itself) and ``Sp_4`` with the ``B_2`` labelling of the Cartan data
(node 1 short).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .rootsys import CartanData, Weight, cartan, is_reduced, minor_exponents
from .symfun import LaurentPoly, echelon_by_order, to_text

Subset = Tuple[int, ...]


class MinorsError(ValueError):
    pass


@dataclass(frozen=True)
class PolyMatrix:
    """A square matrix of Laurent polynomials in a common set of variables."""

    entries: Tuple[Tuple[LaurentPoly, ...], ...]
    nvars: int

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int, nvars: int) -> "PolyMatrix":
        z, o = LaurentPoly.zero(nvars), LaurentPoly.one(nvars)
        return cls(tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), nvars)

    @classmethod
    def from_ints(cls, rows: Sequence[Sequence[int]], nvars: int) -> "PolyMatrix":
        return cls(tuple(tuple(LaurentPoly.const(x, nvars) for x in r) for r in rows), nvars)

    def __getitem__(self, ij: Tuple[int, int]) -> LaurentPoly:
        """0-based entry access."""
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = LaurentPoly.zero(self.nvars)
                for k in range(n):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    b = other.entries[k][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return PolyMatrix(tuple(out), self.nvars)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> LaurentPoly:
        """Determinant of the submatrix on 1-based ``rows`` and ``cols``."""
        if len(rows) != len(cols):
            raise MinorsError("minor needs as many rows as columns")
        if any(not 1 <= r <= self.size for r in list(rows) + list(cols)):
            raise MinorsError("minor index out of range")
        sub = [[self.entries[r - 1][c - 1] for c in cols] for r in rows]
        return _det(sub, self.nvars)

    def det(self) -> LaurentPoly:
        idx = list(range(1, self.size + 1))
        return self.minor(idx, idx)

    def to_json(self) -> list:
        return [[to_text(x) for x in r] for r in self.entries]

    def __str__(self) -> str:
        return json.dumps(self.to_json())


def _det(m: List[List[LaurentPoly]], nvars: int) -> LaurentPoly:
    n = len(m)
    if n == 0:
        return LaurentPoly.one(nvars)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    # expand along the sparsest row
    r = min(range(n), key=lambda i: sum(1 for x in m[i] if not x.is_zero()))
    acc = LaurentPoly.zero(nvars)
    for j in range(n):
        a = m[r][j]
        if a.is_zero():
            continue
        sub = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != r]
        term = a * _det(sub, nvars)
        acc = acc + term if (r + j) % 2 == 0 else acc - term
    return acc


# engines ------------------------------------------------------------------------

class MatrixEngine:
    """A matrix group with Chevalley generators ``f_i`` (and ``e_i = f_i^T``)."""

    n: int  # size of the defining representation
    cd: CartanData
    name: str

    def f(self, i: int) -> List[List[int]]:
        raise NotImplementedError

    def fundamental(self, k: int) -> int:
        """Exterior degree hosting the fundamental module ``varpi_k``."""
        raise NotImplementedError

    def basis_weight(self, r: int) -> Tuple[int, ...]:
        """Torus weight of the standard basis vector ``e_r``."""
        raise NotImplementedError

    # generic machinery --------------------------------------------------------
    def y(self, i: int, t: LaurentPoly) -> PolyMatrix:
        """``y_i(t) = exp(t f_i)``; every ``f_i`` here squares to zero."""
        f = self.f(i)
        nv = t.nvars
        rows = []
        for a in range(self.n):
            row = []
            for b in range(self.n):
                v = LaurentPoly.const(1 if a == b else 0, nv)
                if f[a][b]:
                    v = v + t * f[a][b]
                row.append(v)
            rows.append(tuple(row))
        return PolyMatrix(tuple(rows), nv)

    def point(self, word: Sequence[int]) -> PolyMatrix:
        """``y_{i_1}(t_1) ... y_{i_m}(t_m)`` in ``m = len(word)`` variables."""
        word = tuple(word)
        for a in word:
            if not 1 <= a <= self.cd.rank:
                raise MinorsError(f"letter {a} out of range")
        m = len(word)
        out = PolyMatrix.identity(self.n, m)
        for s, a in enumerate(word):
            out = out @ self.y(a, LaurentPoly.var(s, m))
        return out

    @lru_cache(maxsize=None)
    def sbar(self, i: int) -> Tuple[Tuple[int, ...], ...]:
        """``exp(-e_i) exp(f_i) exp(-e_i)`` as an integer matrix."""
        f = self.f(i)
        n = self.n
        eye = [[int(a == b) for b in range(n)] for a in range(n)]
        xm = [[eye[a][b] - f[b][a] for b in range(n)] for a in range(n)]
        ym = [[eye[a][b] + f[a][b] for b in range(n)] for a in range(n)]
        prod = _imul(_imul(xm, ym), xm)
        return tuple(tuple(r) for r in prod)

    def extremal_vector(self, word: Sequence[int], k: int) -> Dict[Subset, int]:
        """``sbar_{j_1} ... sbar_{j_l}`` applied to the highest vector of ``varpi_k``.

        Returned as a sparse vector in the wedge basis of the exterior power.
        """
        deg = self.fundamental(k)
        vec: Dict[Subset, int] = {tuple(range(1, deg + 1)): 1}
        for j in reversed(tuple(word)):
            vec = _wedge_apply(self.sbar(j), vec)
        return vec

    def minor(self, u: Sequence[int], u_prime: Sequence[int], k: int, M: PolyMatrix) -> LaurentPoly:
        """``D_{u varpi_k, u' varpi_k}(M) = <v_{u varpi_k}, M v_{u' varpi_k}>``."""
        if not 1 <= k <= self.cd.rank:
            raise MinorsError(f"fundamental weight index {k} out of range")
        left = self.extremal_vector(u, k)
        right = self.extremal_vector(u_prime, k)
        acc = LaurentPoly.zero(M.nvars)
        for rows, a in left.items():
            for cols, b in right.items():
                acc = acc + M.minor(rows, cols) * (a * b)
        return acc


def _imul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _wedge_apply(g, vec: Dict[Subset, int]) -> Dict[Subset, int]:
    # apply an integer matrix to a sparse vector of the exterior power
    n = len(g)
    out: Dict[Subset, int] = {}
    for subset, coef in vec.items():
        k = len(subset)
        for rows in itertools.combinations(range(1, n + 1), k):
            d = _int_det([[g[r - 1][c - 1] for c in subset] for r in rows])
            if d:
                out[rows] = out.get(rows, 0) + coef * d
    return {s: c for s, c in out.items() if c}


def _int_det(m) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return sum((-1) ** j * m[0][j] * _int_det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(n) if m[0][j])


class SLEngine(MatrixEngine):
    """``SL_n`` with ``f_i = E_{i+1,i}``; ``varpi_k`` lives in the ``k``-th wedge power."""

    def __init__(self, n: int):
        if n < 2:
            raise MinorsError("SL_n needs n >= 2")
        self.n = n
        self.cd = cartan("A", n - 1)
        self.name = f"SL{n}"

    def f(self, i: int) -> List[List[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        m[i][i - 1] = 1
        return m

    def fundamental(self, k: int) -> int:
        return k

    def basis_weight(self, r: int) -> Tuple[int, ...]:
        return tuple(int(j == r) for j in range(1, self.n + 1))

    def minor(self, u, u_prime, k, M):
        # type A extremal vectors are plain wedge basis vectors
        rows = permute_interval(u, k, self.n)
        cols = permute_interval(u_prime, k, self.n)
        return M.minor(rows, cols)

    def __hash__(self):
        return hash(("SL", self.n))

    def __eq__(self, other):
        return isinstance(other, SLEngine) and other.n == self.n


class Sp4Engine(MatrixEngine):
    """``Sp_4`` with ``f_1 = E_21 - E_43`` (short) and ``f_2 = E_32`` (long).

    This realizes the ``B_2`` Cartan data with node 1 short: ``varpi_1`` is the
    4-dimensional defining module and ``varpi_2`` the 5-dimensional module
    inside the second wedge power.
    """

    def __init__(self):
        self.n = 4
        self.cd = cartan("B", 2)
        self.name = "Sp4"

    def f(self, i: int) -> List[List[int]]:
        m = [[0] * 4 for _ in range(4)]
        if i == 1:
            m[1][0] = 1
            m[3][2] = -1
        elif i == 2:
            m[2][1] = 1
        else:
            raise MinorsError("Sp4 has two simple roots")
        return m

    def fundamental(self, k: int) -> int:
        if k not in (1, 2):
            raise MinorsError("unsupported weight")
        return k

    def basis_weight(self, r: int) -> Tuple[int, ...]:
        return ((1, 0), (0, 1), (0, -1), (-1, 0))[r - 1]

    def __hash__(self):
        return hash("Sp4")

    def __eq__(self, other):
        return isinstance(other, Sp4Engine)


def sl_engine(n: int) -> SLEngine:
    return SLEngine(n)


def sp4_engine() -> Sp4Engine:
    return Sp4Engine()


def permute_interval(word: Sequence[int], k: int, n: int) -> Subset:
    """The sorted set ``u({1, ..., k})`` for the permutation of ``word``."""
    if not 1 <= k < n:
        raise MinorsError(f"k={k} out of range for SL{n}")
    out = set(range(1, k + 1))
    # u = s_{j_1} ... s_{j_l}; apply the rightmost factor first
    for a in reversed(tuple(word)):
        if not 1 <= a < n:
            raise MinorsError(f"letter {a} out of range for SL{n}")
        out = {a + 1 if x == a else a if x == a + 1 else x for x in out}
    return tuple(sorted(out))


# public operations ------------------------------------------------------------

def unipotent_point(word: Sequence[int], n: int) -> PolyMatrix:
    """``y_{i_1}(t_1) ... y_{i_m}(t_m)`` in ``SL_n``."""
    return SLEngine(n).point(word)


def generalized_minor(
    u: Sequence[int],
    u_prime: Sequence[int],
    k: int,
    M: PolyMatrix,
    engine: Optional[MatrixEngine] = None,
) -> LaurentPoly:
    """``Delta_{u varpi_k, u' varpi_k}`` evaluated at ``M``.

    For ``SL_n`` this is the minor on rows ``u({1..k})`` and columns
    ``u'({1..k})``.
    """
    engine = engine or SLEngine(M.size)
    if not 1 <= k <= engine.cd.rank:
        raise MinorsError(f"k={k} out of range")
    return engine.minor(tuple(u), tuple(u_prime), k, M)


def weight_minor(
    u: Sequence[int],
    u_prime: Sequence[int],
    lam: Weight,
    M: PolyMatrix,
    engine: Optional[MatrixEngine] = None,
) -> LaurentPoly:
    """``D_{u lambda, u' lambda}`` as the product of fundamental minors."""
    engine = engine or SLEngine(M.size)
    out = LaurentPoly.one(M.nvars)
    for k, mult in enumerate(lam.coords, start=1):
        if mult:
            out = out * generalized_minor(u, u_prime, k, M, engine) ** mult
    return out


@dataclass(frozen=True)
class FunctionSpace:
    """A basis of the coordinate span of ``y(t) v_lambda``.

    ``weights[k]`` is the torus weight of the coordinate giving ``basis[k]``
    (for ``SL_n`` the multiset of wedge row indices as a length-``n`` vector);
    ``spanning`` counts the coordinate functions before reduction.
    """

    lam: Weight
    word: Tuple[int, ...]
    basis: Tuple[LaurentPoly, ...]
    weights: Tuple[Tuple[int, ...], ...]
    spanning: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam.coords),
            "word": list(self.word),
            "basis": [to_text(p) for p in self.basis],
            "weights": [list(w) for w in self.weights],
        }


class _Lex:
    @staticmethod
    def key(e):
        return e


def function_space(
    lam: Weight,
    word: Sequence[int],
    n: Optional[int] = None,
    engine: Optional[MatrixEngine] = None,
) -> FunctionSpace:
    """Coordinates of ``y_{i_1}(t_1) ... y_{i_m}(t_m) v_lambda``, reduced to a basis.

    ``v_lambda`` is the tensor product of wedge highest vectors, one factor
    ``e_1 ^ ... ^ e_k`` for each unit of ``lambda_k``.  Repeated factors only
    contribute commuting products, so symmetric powers are enumerated.
    """
    if engine is None:
        if n is None:
            raise MinorsError("need n or an engine")
        engine = SLEngine(n)
    if not lam.is_dominant:
        raise MinorsError("lambda must be dominant")
    word = tuple(word)
    M = engine.point(word)
    m = len(word)
    factor_lists = []
    for k, mult in enumerate(lam.coords, start=1):
        if not mult:
            continue
        deg = engine.fundamental(k)
        top = tuple(range(1, deg + 1))
        coords = []
        for rows in itertools.combinations(range(1, engine.n + 1), deg):
            p = M.minor(rows, top)
            if not p.is_zero():
                coords.append((p, rows))
        factor_lists.append(
            [
                _prod_with_weight([coords[c] for c in combo], m, engine)
                for combo in itertools.combinations_with_replacement(range(len(coords)), mult)
            ]
        )
    zero_wt = tuple(0 for _ in engine.basis_weight(1))
    products: List[Tuple[LaurentPoly, Tuple[int, ...]]] = [(LaurentPoly.one(m), zero_wt)]
    for fl in factor_lists:
        products = [
            (p * q, tuple(a + b for a, b in zip(wp, wq))) for p, wp in products for q, wq in fl
        ]
    # reduce within each weight space; distinct weights are independent
    by_weight: Dict[Tuple[int, ...], List[LaurentPoly]] = {}
    for p, wt in products:
        by_weight.setdefault(wt, []).append(p)
    basis: List[LaurentPoly] = []
    weights: List[Tuple[int, ...]] = []
    for wt in sorted(by_weight):
        ech = echelon_by_order(by_weight[wt], _Lex)
        for e in sorted(ech):
            basis.append(_monic(ech[e]))
            weights.append(wt)
    return FunctionSpace(lam, word, tuple(basis), tuple(weights), len(products))


def _prod_with_weight(items, m: int, engine: MatrixEngine) -> Tuple[LaurentPoly, Tuple[int, ...]]:
    p = LaurentPoly.one(m)
    wt = [0] * len(engine.basis_weight(1))
    for q, rows in items:
        p = p * q
        for r in rows:
            for j, x in enumerate(engine.basis_weight(r)):
                wt[j] += x
    return p, tuple(wt)


def _monic(p: LaurentPoly) -> LaurentPoly:
    lead = p.terms[max(p.terms)]
    return p if lead == 1 else p * (1 / Fraction(lead))


def monomial_minor_exponents(u: Sequence[int], lam: Weight, cd: CartanData) -> Tuple[int, ...]:
    """Exponents ``b`` with ``D_{u lambda, lambda} = t^b`` along a reduced word of ``u``."""
    if not is_reduced(u, cd):
        raise MinorsError("word must be reduced")
    return minor_exponents(u, lam, cd)
