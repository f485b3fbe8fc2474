"""Cartan data, weights, Weyl group words and reduced-word bookkeeping.

Indices of simple roots and word positions are 1-based throughout, matching
the usual mathematical labelling.  Weights are integer vectors in the basis of
fundamental weights, so the pairing with a simple coroot is a coordinate read.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Word = Tuple[int, ...]


class RootSystemError(ValueError):
    """Raised for unsupported Cartan types or malformed words."""


@dataclass(frozen=True)
class CartanData:
    """A symmetrizable Cartan matrix with its symmetrizers.

    ``c[i-1][j-1]`` is the Cartan integer ``<alpha_j, h_i>``.
    """

    series: str
    rank: int
    c: Tuple[Tuple[int, ...], ...]
    d: Tuple[int, ...]
    metadata: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        n = self.rank
        if len(self.c) != n or any(len(row) != n for row in self.c):
            raise RootSystemError("Cartan matrix must be rank x rank")
        for i in range(n):
            if self.c[i][i] != 2:
                raise RootSystemError("diagonal Cartan entries must be 2")
            for j in range(n):
                if i == j:
                    continue
                if self.c[i][j] > 0:
                    raise RootSystemError("off-diagonal Cartan entries must be <= 0")
                if (self.c[i][j] == 0) != (self.c[j][i] == 0):
                    raise RootSystemError("c_ij = 0 must imply c_ji = 0")
                if self.d[i] * self.c[i][j] != self.d[j] * self.c[j][i]:
                    raise RootSystemError("symmetrizers do not symmetrize the matrix")

    def entry(self, i: int, j: int) -> int:
        """Return ``c_{i,j}`` for 1-based labels."""
        return self.c[i - 1][j - 1]

    @property
    def index_set(self) -> range:
        return range(1, self.rank + 1)

    def simple_root(self, j: int) -> Tuple[int, ...]:
        """Fundamental-weight coordinates of ``alpha_j`` (column ``j``)."""
        return tuple(self.c[i][j - 1] for i in range(self.rank))

    def fundamental_weight(self, i: int) -> "Weight":
        return Weight(tuple(1 if k == i else 0 for k in self.index_set))

    def rho(self) -> "Weight":
        return Weight((1,) * self.rank)

    def to_dict(self) -> dict:
        return {
            "series": self.series,
            "rank": self.rank,
            "c": [list(row) for row in self.c],
            "d": list(self.d),
            "metadata": dict(self.metadata),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class Weight:
    """An integral weight in fundamental-weight coordinates."""

    coords: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))

    @property
    def is_dominant(self) -> bool:
        return all(x >= 0 for x in self.coords)

    def pairing(self, i: int) -> int:
        """``<lambda, h_i>`` for a 1-based label."""
        return self.coords[i - 1]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)


def _chain(n: int) -> List[List[int]]:
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
        if i + 1 < n:
            c[i][i + 1] = -1
            c[i + 1][i] = -1
    return c


def cartan(series: str, n: int) -> CartanData:
    """Cartan matrix of a classical type with the standard node numbering.

    For ``B_n`` node 1 carries the short simple root (the double bond points
    toward node 1); ``C_n`` is the transpose.  For ``D_n`` node 3 is joined to
    nodes 1, 2 and 4, and ``3 - 4 - ... - n`` is a chain.
    """
    s = series.upper()
    if s == "A":
        if n < 1:
            raise RootSystemError("type A needs rank >= 1")
        return CartanData("A", n, _tup(_chain(n)), (1,) * n)
    if s in ("B", "C"):
        if n < 2:
            raise RootSystemError(f"type {s} needs rank >= 2")
        c = _chain(n)
        if s == "B":
            c[0][1] = -2
            d = (1,) + (2,) * (n - 1)
            meta = (("orientation", "alpha_1 short"),)
        else:
            c[1][0] = -2
            d = (2,) + (1,) * (n - 1)
            meta = (("orientation", "alpha_1 long"),)
        return CartanData(s, n, _tup(c), d, meta)
    if s == "D":
        if n < 3:
            raise RootSystemError("type D needs rank >= 3")
        c = [[0] * n for _ in range(n)]
        for i in range(n):
            c[i][i] = 2
        edges = [(1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n)]
        for a, b in edges:
            c[a - 1][b - 1] = -1
            c[b - 1][a - 1] = -1
        return CartanData("D", n, _tup(c), (1,) * n, (("branch_node", "3"),))
    raise RootSystemError(f"unsupported series {series!r}")


def cartan_from_matrix(matrix: Sequence[Sequence[int]]) -> CartanData:
    """Wrap an explicit symmetrizable Cartan matrix, computing symmetrizers."""
    n = len(matrix)
    c = _tup(matrix)
    d = _symmetrizers(c)
    return CartanData("explicit", n, c, d)


def _symmetrizers(c: Tuple[Tuple[int, ...], ...]) -> Tuple[int, ...]:
    from fractions import Fraction
    from math import lcm

    n = len(c)
    vals: List[Optional[Fraction]] = [None] * n
    for start in range(n):
        if vals[start] is not None:
            continue
        vals[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and c[i][j] != 0 and vals[j] is None:
                    if c[j][i] == 0:
                        raise RootSystemError("c_ij = 0 must imply c_ji = 0")
                    vals[j] = vals[i] * c[i][j] / c[j][i]
                    stack.append(j)
    den = lcm(*[v.denominator for v in vals])
    return tuple(int(v * den) for v in vals)


def _tup(m: Iterable[Iterable[int]]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in m)


def _check_letters(word: Sequence[int], cd: CartanData) -> None:
    for a in word:
        if not 1 <= a <= cd.rank:
            raise RootSystemError(f"letter {a} out of range 1..{cd.rank}")


def reflect(i: int, lam: Weight, cd: CartanData) -> Weight:
    """``s_i lambda = lambda - <lambda, h_i> alpha_i``."""
    p = lam.coords[i - 1]
    if p == 0:
        return lam
    return Weight(tuple(x - p * cd.c[k][i - 1] for k, x in enumerate(lam.coords)))


def weyl_act(word: Sequence[int], lam: Weight, cd: CartanData) -> Weight:
    """Left action of ``s_{j_1} ... s_{j_l}`` on ``lam``."""
    _check_letters(word, cd)
    out = lam
    for j in reversed(tuple(word)):
        out = reflect(j, out, cd)
    return out


def _reflect_root(i: int, beta: List[int], cd: CartanData) -> List[int]:
    # beta in simple-root coordinates
    p = sum(beta[j] * cd.c[i - 1][j] for j in range(cd.rank))
    out = list(beta)
    out[i - 1] -= p
    return out


def is_reduced(word: Sequence[int], cd: CartanData) -> bool:
    """True iff ``s_{i_1} ... s_{i_m}`` has length ``m``.

    A word is reduced exactly when each root ``s_{i_1}...s_{i_{k-1}} alpha_{i_k}``
    of its inversion sequence is positive.
    """
    _check_letters(word, cd)
    word = tuple(word)
    for k, a in enumerate(word):
        beta = [0] * cd.rank
        beta[a - 1] = 1
        for j in reversed(word[:k]):
            beta = _reflect_root(j, beta, cd)
        if any(x < 0 for x in beta):
            return False
    return True


def longest_word(series: str, n: int) -> Word:
    """The reduced word of the longest element used for the ray-generator lists."""
    s = series.upper()
    out: List[int] = []
    if s == "A":
        for k in range(1, n + 1):
            out.extend(range(k, 0, -1))
    elif s in ("B", "C"):
        out.append(1)
        for k in range(2, n + 1):
            out.extend(range(k, 0, -1))
            out.extend(range(2, k + 1))
    elif s == "D":
        if n < 3:
            raise RootSystemError("type D needs rank >= 3")
        out.extend([1, 2])
        for k in range(3, n + 1):
            out.extend(range(k, 2, -1))
            out.extend([1, 2])
            out.extend(range(3, k + 1))
    else:
        raise RootSystemError(f"unsupported series {series!r}")
    return tuple(out)


def positive_roots(cd: CartanData) -> List[Tuple[int, ...]]:
    """Positive roots in simple-root coordinates, closed under simple reflections."""
    roots = set()
    frontier = []
    for i in cd.index_set:
        r = tuple(1 if j == i else 0 for j in cd.index_set)
        roots.add(r)
        frontier.append(r)
    while frontier:
        r = frontier.pop()
        for i in cd.index_set:
            t = tuple(_reflect_root(i, list(r), cd))
            if all(x >= 0 for x in t) and t not in roots:
                roots.add(t)
                frontier.append(t)
    return sorted(roots, key=lambda r: (sum(r), r))


def positive_root_count(cd: CartanData) -> int:
    return len(positive_roots(cd))


def weyl_dimension(lam: Weight, cd: CartanData) -> int:
    """Dimension of the irreducible module of highest weight ``lam``.

    Uses the invariant form ``(alpha_i, alpha_j) = d_i c_ij`` and
    ``(varpi_i, alpha_j) = delta_ij d_j``.
    """
    from fractions import Fraction

    if not lam.is_dominant:
        raise RootSystemError("highest weight must be dominant")
    n = cd.rank
    num = Fraction(1)
    for beta in positive_roots(cd):
        norm = sum(beta[i] * beta[j] * cd.d[i] * cd.c[i][j] for i in range(n) for j in range(n))
        lr = sum(beta[j] * cd.d[j] * (lam.coords[j] + 1) for j in range(n))
        r = sum(beta[j] * cd.d[j] for j in range(n))
        num *= Fraction(2 * lr, norm) / Fraction(2 * r, norm)
    assert num.denominator == 1
    return int(num)


def element_key(word: Sequence[int], cd: CartanData) -> Tuple[int, ...]:
    """A complete invariant of the Weyl group element: its image of rho."""
    return weyl_act(word, cd.rho(), cd).coords


def reduced_words_up_to(cd: CartanData, max_len: int) -> Dict[Tuple[int, ...], List[Word]]:
    """All nonempty reduced words of length <= max_len grouped by element."""
    out: Dict[Tuple[int, ...], List[Word]] = {}
    layer: List[Word] = [()]
    for _ in range(max_len):
        nxt: List[Word] = []
        for w in layer:
            for a in cd.index_set:
                cand = w + (a,)
                if is_reduced(cand, cd):
                    nxt.append(cand)
                    out.setdefault(element_key(cand, cd), []).append(cand)
        layer = nxt
    return out


def minor_exponents(word: Sequence[int], lam: Weight, cd: CartanData) -> Tuple[int, ...]:
    """Exponents ``b_k = <h_{j_k}, s_{j_{k+1}} ... s_{j_l} lambda>``.

    These are the exponents of the monomial ``D_{u lambda, lambda}`` in the
    chart attached to a reduced word of ``u``.
    """
    word = tuple(word)
    out = []
    for k, a in enumerate(word):
        out.append(weyl_act(word[k + 1:], lam, cd).pairing(a))
    return tuple(out)


@dataclass(frozen=True)
class WordData:
    """Index bookkeeping attached to a word ``i = (i_1, ..., i_m)``.

    All maps are keyed by 1-based positions.  ``plus[s]`` is the next position
    carrying the same letter (``m + 1`` if none), ``minus[s]`` the previous
    one (``0`` if none), ``xi[s] = (i_s, k[s])`` where ``k[s]`` counts the
    occurrences of ``i_s`` up to ``s``.  ``vee[s]`` is 0 on frozen positions.
    """

    word: Word
    rank: int
    plus: Dict[int, int]
    minus: Dict[int, int]
    xi: Dict[int, Tuple[int, int]]
    mult: Dict[int, int]
    frozen: Tuple[int, ...]
    unfrozen: Tuple[int, ...]
    R: Dict[int, int]
    vee: Dict[int, int]
    reduced: bool
    _xi_inv: Dict[Tuple[int, int], int] = field(repr=False, default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.word)

    @property
    def J(self) -> range:
        return range(1, self.m + 1)

    def letter(self, s: int) -> int:
        return self.word[s - 1]

    def k(self, s: int) -> int:
        return self.xi[s][1]

    def xi_inv(self, i: int, k: int) -> int:
        """Position of the ``k``-th occurrence of letter ``i``; ``m+1`` past the end, 0 before."""
        if k == 0:
            return 0
        if k > self.mult.get(i, 0):
            return self.m + 1
        return self._xi_inv[(i, k)]

    def minus_letter(self, s: int, j: int) -> int:
        """``s^-(j)``: last position before ``s`` carrying letter ``j`` (0 if none)."""
        for t in range(s - 1, 0, -1):
            if self.word[t - 1] == j:
                return t
        return 0

    def is_frozen(self, s: int) -> bool:
        return self.plus[s] == self.m + 1

    def prefix(self, s: int) -> Word:
        """The word of ``w_{<= s}``."""
        return self.word[:s]

    def to_dict(self) -> dict:
        return {
            "word": list(self.word),
            "rank": self.rank,
            "plus": {str(s): v for s, v in self.plus.items()},
            "minus": {str(s): v for s, v in self.minus.items()},
            "xi": {str(s): list(v) for s, v in self.xi.items()},
            "mult": {str(i): v for i, v in self.mult.items()},
            "frozen": list(self.frozen),
            "unfrozen": list(self.unfrozen),
            "R": {str(s): v for s, v in self.R.items()},
            "vee": {str(s): v for s, v in self.vee.items()},
            "reduced": self.reduced,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _xi_map(word: Word) -> Dict[int, Tuple[int, int]]:
    counts: Dict[int, int] = {}
    xi = {}
    for s, a in enumerate(word, start=1):
        counts[a] = counts.get(a, 0) + 1
        xi[s] = (a, counts[a])
    return xi


def word_data(word: Sequence[int], cd: CartanData, require_reduced: bool = False) -> WordData:
    """Compute all index structures attached to ``word``."""
    word = tuple(int(a) for a in word)
    if not word:
        raise RootSystemError("word must be nonempty")
    _check_letters(word, cd)
    reduced = is_reduced(word, cd)
    if require_reduced and not reduced:
        raise RootSystemError(f"word {word} is not reduced")
    m = len(word)
    plus, minus = {}, {}
    for s in range(1, m + 1):
        a = word[s - 1]
        plus[s] = next((t for t in range(s + 1, m + 1) if word[t - 1] == a), m + 1)
        minus[s] = next((t for t in range(s - 1, 0, -1) if word[t - 1] == a), 0)
    xi = _xi_map(word)
    xi_inv = {v: s for s, v in xi.items()}
    mult: Dict[int, int] = {}
    for a in word:
        mult[a] = mult.get(a, 0) + 1
    op = tuple(reversed(word))
    xi_op_inv = {v: s for s, v in _xi_map(op).items()}
    R = {s: xi_op_inv[xi[s]] for s in range(1, m + 1)}
    frozen = tuple(s for s in range(1, m + 1) if plus[s] == m + 1)
    unfrozen = tuple(s for s in range(1, m + 1) if plus[s] != m + 1)
    vee = {}
    for s in range(1, m + 1):
        a, k = xi[s]
        vee[s] = xi_inv[(a, mult[a] - k)] if k < mult[a] else 0
    return WordData(word, cd.rank, plus, minus, xi, mult, frozen, unfrozen, R, vee, reduced, xi_inv)
