"""Exchange matrices built from reduced words, matrix mutation and total orders.

An :class:`ExchangeMatrix` always stores the square ``J x J`` form.  The
rectangular ``J_uf x J`` matrix used by seeds is its set of unfrozen rows.
Frozen rows are fixed by skew-symmetrizability, so mutating the square form
also tracks arrows between frozen vertices once they appear.

Sign conventions: ``eps[s][t] < 0`` means an arrow ``s -> t``, and
``eps[s][t] * d_t = -eps[t][s] * d_s`` where ``d_s`` is the symmetrizer of the
letter at ``s``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from . import _exact
from .rootsys import CartanData, WordData

Label = Hashable


class ExchangeError(ValueError):
    pass


@dataclass(frozen=True)
class ExchangeMatrix:
    """Square skew-symmetrizable integer matrix indexed by ``labels``.

    Parameters
    ----------
    labels
        Vertex labels in their fixed order.
    frozen
        Frozen flag per label.
    weights
        Positive symmetrizer per label: ``eps[s][t] * w_t == -eps[t][s] * w_s``
        on every pair touching an unfrozen vertex.
    square
        The matrix itself, row-major in ``labels`` order.
    """

    labels: Tuple[Label, ...]
    frozen: Tuple[bool, ...]
    weights: Tuple[int, ...]
    square: Tuple[Tuple[int, ...], ...]
    _pos: Dict[Label, int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.frozen) != n or len(self.weights) != n or len(self.square) != n:
            raise ExchangeError("inconsistent sizes")
        if any(len(r) != n for r in self.square):
            raise ExchangeError("matrix must be square")
        self._pos.update({lab: k for k, lab in enumerate(self.labels)})
        if len(self._pos) != n:
            raise ExchangeError("duplicate labels")

    # construction -----------------------------------------------------------
    @classmethod
    def from_rows(
        cls,
        labels: Sequence[Label],
        frozen: Sequence[bool],
        weights: Sequence[int],
        rows: Dict[Label, Sequence[int]],
    ) -> "ExchangeMatrix":
        """Build from the unfrozen rows, completing frozen rows by skew-symmetry."""
        labels = tuple(labels)
        n = len(labels)
        sq = [[0] * n for _ in range(n)]
        for a, lab in enumerate(labels):
            if not frozen[a]:
                row = rows[lab]
                if len(row) != n:
                    raise ExchangeError("row length mismatch")
                sq[a] = [int(x) for x in row]
        for a in range(n):
            if not frozen[a]:
                continue
            for b in range(n):
                if frozen[b]:
                    continue
                val = Fraction(-sq[b][a] * weights[a], weights[b])
                if val.denominator != 1:
                    raise ExchangeError("rows are not skew-symmetrizable by the weights")
                sq[a][b] = int(val)
        return cls(labels, tuple(bool(f) for f in frozen), tuple(weights), _freeze(sq))

    # access -----------------------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: Label) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise ExchangeError(f"unknown label {label!r}") from None

    def entry(self, s: Label, t: Label) -> int:
        return self.square[self.index(s)][self.index(t)]

    def is_frozen(self, s: Label) -> bool:
        return self.frozen[self.index(s)]

    @property
    def unfrozen_labels(self) -> Tuple[Label, ...]:
        return tuple(l for l, f in zip(self.labels, self.frozen) if not f)

    @property
    def frozen_labels(self) -> Tuple[Label, ...]:
        return tuple(l for l, f in zip(self.labels, self.frozen) if f)

    def rows(self) -> List[List[int]]:
        """The rectangular ``J_uf x J`` matrix."""
        return [list(self.square[a]) for a, f in enumerate(self.frozen) if not f]

    def row(self, s: Label) -> Tuple[int, ...]:
        return self.square[self.index(s)]

    def principal(self) -> List[List[int]]:
        idx = [a for a, f in enumerate(self.frozen) if not f]
        return [[self.square[a][b] for b in idx] for a in idx]

    @cached_property
    def full_rank(self) -> bool:
        r = self.rows()
        return _exact.rank(r) == len(r) if r else True

    def is_skew_symmetrizable(self) -> bool:
        n = self.size
        w = self.weights
        for a in range(n):
            for b in range(n):
                if self.square[a][b] * w[b] != -self.square[b][a] * w[a]:
                    return False
        return True

    def restrict(self, keep: Sequence[Label]) -> "ExchangeMatrix":
        """Principal submatrix on ``keep`` (order preserved as given)."""
        idx = [self.index(l) for l in keep]
        return ExchangeMatrix(
            tuple(keep),
            tuple(self.frozen[a] for a in idx),
            tuple(self.weights[a] for a in idx),
            _freeze([[self.square[a][b] for b in idx] for a in idx]),
        )

    def arrows(self, include_frozen_pairs: bool = True) -> List[Tuple[Label, Label, int]]:
        """Arrows ``(s, t, |eps_st|)`` with ``s -> t`` iff ``eps_st < 0``."""
        out = []
        for a, s in enumerate(self.labels):
            for b, t in enumerate(self.labels):
                v = self.square[a][b]
                if v >= 0:
                    continue
                if not include_frozen_pairs and self.frozen[a] and self.frozen[b]:
                    continue
                out.append((s, t, -v))
        return out

    def arrow_set(self, include_frozen_pairs: bool = True) -> set:
        return {(s, t) for s, t, _ in self.arrows(include_frozen_pairs)}

    def to_dict(self) -> dict:
        return {
            "labels": [str(l) for l in self.labels],
            "frozen": list(self.frozen),
            "weights": list(self.weights),
            "rows": [list(r) for r in self.square],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ExchangeMatrix":
        labels = tuple(int(l) if str(l).lstrip("-").isdigit() else l for l in data["labels"])
        return cls(labels, tuple(data["frozen"]), tuple(data["weights"]), _freeze(data["rows"]))


def _freeze(rows) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in r) for r in rows)


# construction from words ------------------------------------------------------

def _case_entry(s: int, t: int, plus: Callable[[int], int], c: Callable[[int, int], int]) -> int:
    sp, tp = plus(s), plus(t)
    if s == tp:
        return -1
    if sp == t:
        return 1
    if t < s < tp < sp:
        return -c(t, s)
    if s < t < sp < tp:
        return c(t, s)
    return 0


def _word_weights(wd: WordData, cd: CartanData) -> Tuple[int, ...]:
    return tuple(cd.d[wd.letter(s) - 1] for s in wd.J)


def build_epsilon(wd: WordData, cd: CartanData) -> ExchangeMatrix:
    """The exchange matrix of the seed attached to a reduced word.

    Rows are computed by the interval case rule for every ``s`` (frozen rows
    included) and cross-checked against skew-symmetry.
    """
    if not wd.reduced:
        raise ExchangeError("word must be reduced")
    m = wd.m
    plus = lambda s: wd.plus[s]
    cc = lambda t, s: cd.entry(wd.letter(t), wd.letter(s))
    sq = [[_case_entry(s, t, plus, cc) for t in wd.J] for s in wd.J]
    labels = tuple(wd.J)
    frozen = tuple(wd.is_frozen(s) for s in wd.J)
    weights = _word_weights(wd, cd)
    eps = ExchangeMatrix(labels, frozen, weights, _freeze(sq))
    if not eps.is_skew_symmetrizable():
        raise ExchangeError("case rule produced a non skew-symmetrizable matrix")
    if any(sq[a][b] for a in range(m) for b in range(m) if frozen[a] and frozen[b]):
        raise ExchangeError("unexpected frozen-frozen entry")
    return eps


def bar(i: int) -> str:
    """Label of the extra frozen vertex attached to the letter ``i``."""
    return f"{i}bar"


def build_epsilon_double(wd: WordData, cd: CartanData) -> ExchangeMatrix:
    """Exchange matrix with one extra frozen vertex per simple index.

    The extra vertex ``bar(i)`` sits before every position and its successor
    is the first occurrence of ``i`` (``m+1`` if ``i`` does not occur).
    """
    if not wd.reduced:
        raise ExchangeError("word must be reduced")
    n = cd.rank
    # order positions: bars get 1-n..0 so they precede every j in J
    pos: Dict[Label, int] = {}
    letter: Dict[Label, int] = {}
    nxt: Dict[int, int] = {}
    labels: List[Label] = []
    for i in range(1, n + 1):
        lab = bar(i)
        labels.append(lab)
        pos[lab] = i - n
        letter[lab] = i
        nxt[i - n] = wd.xi_inv(i, 1)
    for s in wd.J:
        labels.append(s)
        pos[s] = s
        letter[s] = wd.letter(s)
        nxt[s] = wd.plus[s]
    by_pos = {pos[l]: l for l in labels}
    plus = lambda p: nxt[p]
    cc = lambda pt, ps: cd.entry(letter[by_pos[pt]], letter[by_pos[ps]])
    sq = [[_case_entry(pos[s], pos[t], plus, cc) for t in labels] for s in labels]
    frozen = tuple((not isinstance(l, int)) or wd.is_frozen(l) for l in labels)
    weights = tuple(cd.d[letter[l] - 1] for l in labels)
    for a in range(len(labels)):
        for b in range(len(labels)):
            if frozen[a] and frozen[b]:
                sq[a][b] = 0
    eps = ExchangeMatrix(tuple(labels), frozen, weights, _freeze(sq))
    if not eps.is_skew_symmetrizable():
        raise ExchangeError("case rule produced a non skew-symmetrizable matrix")
    return eps


# mutation ---------------------------------------------------------------------

def _pos(x: int) -> int:
    return x if x > 0 else 0


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def mutate_matrix(eps: ExchangeMatrix, k: Label) -> ExchangeMatrix:
    """Matrix mutation in the unfrozen direction ``k``."""
    kk = eps.index(k)
    if eps.frozen[kk]:
        raise ExchangeError(f"cannot mutate at frozen vertex {k!r}")
    sq = eps.square
    n = eps.size
    rk = sq[kk]
    out = []
    for a in range(n):
        ra = sq[a]
        eik = ra[kk]
        if a == kk:
            out.append(tuple(-x for x in ra))
            continue
        row = []
        for b in range(n):
            if b == kk:
                row.append(-ra[b])
            else:
                ekj = rk[b]
                row.append(ra[b] + _sgn(ekj) * _pos(eik * ekj))
        out.append(tuple(row))
    return ExchangeMatrix(eps.labels, eps.frozen, eps.weights, tuple(out))


def mutate_sequence(eps: ExchangeMatrix, seq: Sequence[Label]) -> ExchangeMatrix:
    """Apply mutations in the order listed (first element first)."""
    for k in seq:
        eps = mutate_matrix(eps, k)
    return eps


# closed forms -----------------------------------------------------------------

def left_sequence(wd: WordData) -> List[int]:
    """Mutation directions of the left sweep, listed in application order."""
    seq: List[int] = []
    for s in wd.J:
        seq.extend(left_sequence_block(wd, s))
    return seq


def left_sequence_block(wd: WordData, s: int) -> List[int]:
    """The block attached to position ``s``; empty when ``s`` is frozen."""
    if wd.is_frozen(s):
        return []
    i, k = wd.xi[s]
    return [wd.xi_inv(i, r) for r in range(1, wd.mult[i] - k + 1)]


def left_closed_form(wd: WordData, cd: CartanData) -> ExchangeMatrix:
    """Square matrix after the full left sweep, from the reflected-order rule.

    Includes the frozen-frozen entries that mutation creates.
    """
    m = wd.m
    R = lambda s: wd.R[s] if s <= m else m + 1
    c = lambda a, b: cd.entry(wd.letter(a), wd.letter(b))
    first = lambda i: wd.xi_inv(i, 1)
    sq = []
    for s in wd.J:
        row = []
        sp = wd.plus[s]
        for t in wd.J:
            tp = wd.plus[t]
            v = 0
            if s == tp:
                v = 1
            elif sp == t:
                v = -1
            elif R(t) < R(s) < R(tp) < R(sp):
                v = c(t, s)
            elif R(s) < R(t) < R(sp) < R(tp):
                v = -c(t, s)
            elif wd.is_frozen(s) and wd.is_frozen(t):
                a, b = wd.letter(s), wd.letter(t)
                if s > t and first(a) < first(b):
                    v = c(t, s)
                elif t > s and first(b) < first(a):
                    v = -c(t, s)
            row.append(v)
        sq.append(tuple(row))
    return ExchangeMatrix(tuple(wd.J), tuple(wd.is_frozen(s) for s in wd.J), _word_weights(wd, cd), tuple(sq))


def first_line_closed_form(wd: WordData, cd: CartanData) -> ExchangeMatrix:
    """Square matrix after the first block of the left sweep (one-line rule).

    Requires the first letter to occur at least twice.
    """
    m = wd.m
    i1 = wd.letter(1)
    if wd.mult[i1] < 2:
        raise ExchangeError("first letter must occur at least twice")
    base = build_epsilon(wd, cd)
    plus = lambda s: wd.plus[s] if s <= m else m + 1
    c = lambda a, b: cd.entry(wd.letter(a), wd.letter(b))
    fr = lambda s: s <= m and wd.is_frozen(s)
    sq = []
    for s in wd.J:
        row = []
        sp = plus(s)
        s2 = plus(sp)
        for t in wd.J:
            tp = plus(t)
            t2 = plus(tp)
            is_, it = wd.letter(s) == i1, wd.letter(t) == i1
            v = 0
            if is_ and s == tp and not fr(s):
                v = -1
            elif is_ and s == tp and fr(s):
                v = 1
            elif is_ and sp < t < s2 < tp:
                v = c(t, s)
            elif is_ and t < sp < tp <= s2:
                v = -c(t, s)
            elif it and sp == t and not fr(t):
                v = 1
            elif it and sp == t and fr(t):
                v = -1
            elif it and s < tp < sp <= t2:
                v = c(t, s)
            elif it and tp < s < t2 < sp:
                v = -c(t, s)
            elif is_ and t < s < tp and tp == sp == m + 1:
                v = c(t, s)
            elif it and s < t < sp and sp == tp == m + 1:
                v = -c(t, s)
            elif not is_ and not it:
                v = base.entry(s, t)
            row.append(v)
        sq.append(tuple(row))
    return ExchangeMatrix(tuple(wd.J), tuple(wd.is_frozen(s) for s in wd.J), _word_weights(wd, cd), tuple(sq))


# dominance order and total orders --------------------------------------------

def dominance_leq(eps: ExchangeMatrix, a: Sequence[int], b: Sequence[int]) -> bool:
    """``a`` is dominated by ``b``: ``a = b + v eps`` with ``v >= 0`` integral."""
    rows = eps.rows()
    if not eps.full_rank:
        raise ExchangeError("dominance order needs a full-rank exchange matrix")
    diff = [x - y for x, y in zip(a, b)]
    if not rows:
        return all(x == 0 for x in diff)
    # v eps = diff  <=>  eps^T v^T = diff^T
    cols = [list(col) for col in zip(*rows)]
    v = _exact.solve(cols, diff)
    if v is None:
        return False
    return all(x.denominator == 1 and x >= 0 for x in v)


@dataclass(frozen=True)
class TotalOrderSpec:
    """A total order on ``Z^m`` compatible with addition.

    Variants
    --------
    ``lex_lt``
        Lexicographic, first coordinate most significant.
    ``lex_prec``
        Lexicographic read from the last coordinate.
    ``matrix_twisted``
        ``a < b`` iff ``b - a = v * Nt`` with ``v`` lex-positive; ``Nt`` is a
        unimodular integer matrix, so ``v`` is integral.
    ``dominance_refined``
        Graded by a linear functional taking the value 1 on every row of an
        exchange matrix, ties broken by coordinate sum then ``lex_lt``.
    """

    variant: str
    dim: int
    matrix: Optional[Tuple[Tuple[int, ...], ...]] = None
    functional: Optional[Tuple[Fraction, ...]] = None
    _inv: Optional[Tuple[Tuple[int, ...], ...]] = field(default=None, repr=False, compare=False)

    VARIANTS = ("lex_lt", "lex_prec", "matrix_twisted", "dominance_refined")

    def __post_init__(self) -> None:
        if self.variant not in self.VARIANTS:
            raise ExchangeError(f"unknown order variant {self.variant!r}")

    def key(self, a: Sequence[int]) -> tuple:
        if self.variant == "lex_lt":
            return tuple(a)
        if self.variant == "lex_prec":
            return tuple(reversed(tuple(a)))
        if self.variant == "matrix_twisted":
            inv = self._inv
            n = self.dim
            return tuple(sum(a[i] * inv[i][j] for i in range(n)) for j in range(n))
        phi = sum(Fraction(x) * c for x, c in zip(a, self.functional))
        return (phi, sum(a)) + tuple(a)

    def less(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.key(a) < self.key(b)

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def min_of(self, exps):
        return min(exps, key=self.key)

    def to_dict(self) -> dict:
        d = {"variant": self.variant, "dim": self.dim}
        if self.matrix is not None:
            d["matrix"] = [list(r) for r in self.matrix]
        if self.functional is not None:
            d["functional"] = [str(x) for x in self.functional]
        return d


def lex_lt(dim: int) -> TotalOrderSpec:
    return TotalOrderSpec("lex_lt", dim)


def lex_prec(dim: int) -> TotalOrderSpec:
    return TotalOrderSpec("lex_prec", dim)


def matrix_twisted(nt: Sequence[Sequence[int]]) -> TotalOrderSpec:
    nt_t = _freeze(nt)
    d = _exact.det(nt_t)
    if abs(d) != 1:
        raise ExchangeError("twisting matrix must be unimodular")
    inv = _freeze(_exact.as_int_matrix(_exact.inverse(nt_t)))
    return TotalOrderSpec("matrix_twisted", len(nt_t), matrix=nt_t, _inv=inv)


def dominance_refined(eps: ExchangeMatrix) -> TotalOrderSpec:
    """A refinement of the opposite dominance order of ``eps``.

    The functional is ``c = eps^T (eps eps^T)^{-1} 1``, which pairs to 1 with
    every row of ``eps``; ties fall back to coordinate sum, then lex.
    """
    rows = eps.rows()
    n = eps.size
    if not rows:
        return TotalOrderSpec("dominance_refined", n, functional=tuple(Fraction(0) for _ in range(n)))
    if not eps.full_rank:
        raise ExchangeError("dominance order needs a full-rank exchange matrix")
    gram = _exact.matmul(rows, [list(c) for c in zip(*rows)])
    y = _exact.solve(gram, [1] * len(rows))
    c = _exact.vecmat(y, rows)
    return TotalOrderSpec("dominance_refined", n, functional=tuple(Fraction(x) for x in c))


def check_refines(order: TotalOrderSpec, eps: ExchangeMatrix) -> bool:
    """Whether ``order`` refines the opposite dominance order of ``eps``."""
    if order.dim != eps.size:
        raise ExchangeError("dimension mismatch")
    zero = order.key((0,) * order.dim)
    return all(zero < order.key(r) for r in eps.rows())


# quiver text --------------------------------------------------------------------

def quiver_dot(eps: ExchangeMatrix, name: str = "quiver", include_frozen_pairs: bool = False) -> str:
    """Graphviz DOT for the quiver; frozen vertices are drawn as boxes."""
    lines = [f"digraph {name} {{"]
    for lab, fz in zip(eps.labels, eps.frozen):
        shape = "box" if fz else "ellipse"
        lines.append(f'  "{lab}" [shape={shape}];')
    for s, t, w in eps.arrows(include_frozen_pairs):
        back = abs(eps.entry(t, s))
        label = "" if (w, back) == (1, 1) else f' [label="{w},{back}"]'
        lines.append(f'  "{s}" -> "{t}"{label};')
    lines.append("}")
    return "\n".join(lines) + "\n"
