"""Seeds with explicit clusters, mutation, X-hat variables and g-vectors.

A :class:`Seed` pairs an :class:`~clusterbody.exchange.ExchangeMatrix` with
one rational function per vertex, all written in a fixed coordinate chart.
Two charts are used in practice: the torus chart ``t_1, ..., t_m`` of a
reduced word, and the abstract chart whose coordinates are the initial
cluster variables themselves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

from . import _exact
from .exchange import (
    ExchangeError,
    ExchangeMatrix,
    Label,
    TotalOrderSpec,
    build_epsilon,
    check_refines,
    left_sequence,
    mutate_matrix,
)
from .rootsys import CartanData, WordData, minor_exponents
from .symfun import LaurentPoly, RationalFn, as_rational, lowest_term, monomial_product


class ClusterError(ValueError):
    pass


class FrozenIndexError(ClusterError):
    """Mutation requested at a frozen vertex."""


class DegenerateChartError(ClusterError):
    """A cluster variable vanishes identically in the chart."""


@dataclass(frozen=True)
class Seed:
    """An exchange matrix with a cluster written in a coordinate chart.

    Parameters
    ----------
    exchange
        Square exchange matrix; its unfrozen rows are the seed matrix.
    cluster
        One entry per label of ``exchange``, in the same order.
    chart
        ``"t"`` for a torus chart, ``"initial"`` when the coordinates are the
        initial cluster variables, or any other tag.
    assert_laurent
        When true every mutated variable must be a Laurent polynomial in the
        chart; a violation raises :class:`ClusterError`.
    """

    exchange: ExchangeMatrix
    cluster: Tuple[RationalFn, ...]
    chart: str = "t"
    assert_laurent: bool = True

    def __post_init__(self) -> None:
        if len(self.cluster) != self.exchange.size:
            raise ClusterError("cluster size does not match the exchange matrix")
        for x in self.cluster:
            if x.is_zero():
                raise DegenerateChartError("cluster variables must be nonzero")

    @property
    def nvars(self) -> int:
        return self.cluster[0].nvars if self.cluster else 0

    @property
    def labels(self) -> Tuple[Label, ...]:
        return self.exchange.labels

    def variable(self, s: Label) -> RationalFn:
        return self.cluster[self.exchange.index(s)]

    def as_dict(self) -> Dict[Label, RationalFn]:
        return dict(zip(self.labels, self.cluster))

    def to_dict(self) -> dict:
        return {
            "chart": self.chart,
            "exchange": self.exchange.to_dict(),
            "cluster": {str(l): str(x) for l, x in zip(self.labels, self.cluster)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def make_seed(
    exchange: ExchangeMatrix,
    cluster: Sequence,
    chart: str = "t",
    assert_laurent: bool = True,
) -> Seed:
    return Seed(exchange, tuple(as_rational(x) for x in cluster), chart, assert_laurent)


def initial_seed_abstract(exchange: ExchangeMatrix) -> Seed:
    """Seed whose cluster is the coordinate functions of its own chart."""
    n = exchange.size
    return make_seed(exchange, LaurentPoly.gens(n), chart="initial")


def minor_row(wd: WordData, cd: CartanData, s: int) -> Tuple[int, ...]:
    """Exponent vector of ``D_{w_{<=s} varpi_{i_s}, varpi_{i_s}}`` in the torus chart."""
    b = minor_exponents(wd.prefix(s), cd.fundamental_weight(wd.letter(s)), cd)
    return tuple(b) + (0,) * (wd.m - s)


def default_engine(cd: CartanData):
    """The matrix engine realizing ``cd``, or None when there is none."""
    from .minors import sl_engine, sp4_engine

    if cd.series == "A":
        return sl_engine(cd.rank + 1)
    if cd.series == "B" and cd.rank == 2:
        return sp4_engine()
    return None


def initial_seed(wd: WordData, cd: CartanData, engine=None) -> Seed:
    """The seed of a reduced word in its torus chart.

    Cluster variables are the minors ``D_{w_{<=s} varpi_{i_s}, varpi_{i_s}}``
    evaluated on ``y_{i_1}(t_1) ... y_{i_m}(t_m)``.
    """
    from .minors import generalized_minor

    engine = engine or default_engine(cd)
    if engine is None:
        raise ClusterError(f"no matrix engine for type {cd.series}{cd.rank}; use the abstract chart")
    eps = build_epsilon(wd, cd)
    M = engine.point(wd.word)
    cluster = [generalized_minor(wd.prefix(s), (), wd.letter(s), M, engine) for s in wd.J]
    return make_seed(eps, cluster, chart="t")


# mutation -----------------------------------------------------------------------

def exchange_binomial(seed: Seed, k: Label) -> Tuple[RationalFn, RationalFn]:
    """The two monomials ``prod A_j^[eps_kj]_+`` and ``prod A_j^[-eps_kj]_+``."""
    row = seed.exchange.row(k)
    n = seed.nvars
    pos = [max(x, 0) for x in row]
    neg = [max(-x, 0) for x in row]
    return monomial_product(seed.cluster, pos, n), monomial_product(seed.cluster, neg, n)


def mutate_seed(seed: Seed, k: Label) -> Seed:
    """Mutation of matrix and cluster in direction ``k``."""
    if k not in seed.exchange._pos:
        raise ClusterError(f"unknown vertex {k!r}")
    if seed.exchange.is_frozen(k):
        raise FrozenIndexError(f"cannot mutate at frozen vertex {k!r}")
    a, b = exchange_binomial(seed, k)
    old = seed.variable(k)
    if old.is_zero():
        raise DegenerateChartError(f"cluster variable at {k!r} vanishes")
    new = (a + b) / old
    if seed.assert_laurent and not new.is_laurent():
        raise ClusterError(f"mutation at {k!r} left the Laurent ring of the chart")
    idx = seed.exchange.index(k)
    cluster = list(seed.cluster)
    cluster[idx] = new
    return Seed(mutate_matrix(seed.exchange, k), tuple(cluster), seed.chart, seed.assert_laurent)


@dataclass(frozen=True)
class MutationSeq:
    """Mutation directions in application order (first entry applied first)."""

    steps: Tuple[Label, ...]

    def __iter__(self) -> Iterator[Label]:
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def reversed(self) -> "MutationSeq":
        return MutationSeq(tuple(reversed(self.steps)))

    def composition(self) -> List[Label]:
        """Directions as written in composition notation (last applied first)."""
        return list(reversed(self.steps))

    def composition_text(self) -> str:
        return " ".join(f"mu_{k}" for k in self.composition()) or "id"

    def to_json(self) -> str:
        return json.dumps(list(self.steps))


def seq_left(wd: WordData) -> MutationSeq:
    """The left sweep: blocks ``[s]`` for ``s = 1, ..., m`` in turn."""
    if not wd.reduced:
        raise ClusterError("word must be reduced")
    return MutationSeq(tuple(left_sequence(wd)))


def seq_right(wd: WordData) -> MutationSeq:
    """Inverse of the left sweep."""
    return seq_left(wd).reversed()


def seq_right_vee(wd: WordData) -> MutationSeq:
    """The inverse sweep with each direction ``s`` replaced by ``s^vee``."""
    steps = []
    for s in seq_right(wd):
        v = wd.vee.get(s, 0)
        if v == 0:
            raise ClusterError(f"direction {s} has no dual position")
        steps.append(v)
    return MutationSeq(tuple(steps))


def apply_sequence(seed: Seed, seq) -> Seed:
    for k in seq:
        seed = mutate_seed(seed, k)
    return seed


def apply_sequence_trace(seed: Seed, seq) -> List[Seed]:
    """All intermediate seeds, starting with ``seed`` itself."""
    out = [seed]
    for k in seq:
        out.append(mutate_seed(out[-1], k))
    return out


# X-hat variables --------------------------------------------------------------

def xhat(seed: Seed, s: Label) -> RationalFn:
    """``prod_j A_j^{eps_sj}`` for an unfrozen ``s``."""
    if seed.exchange.is_frozen(s):
        raise FrozenIndexError(f"X-hat is defined on unfrozen vertices only, got {s!r}")
    return monomial_product(seed.cluster, seed.exchange.row(s), seed.nvars)


def xhat_mutation_rule(seed: Seed, k: Label, j: Label) -> RationalFn:
    """The X-hat variable at ``j`` after mutating at ``k``, from the old X-hats."""
    xk = xhat(seed, k)
    if j == k:
        return xk ** -1
    e = seed.exchange.entry(j, k)
    return xhat(seed, j) * xk ** max(e, 0) * (xk + 1) ** (-e)


# g-vectors ----------------------------------------------------------------------

@dataclass(frozen=True)
class GVector:
    """Extended g-vector with pointedness data.

    ``weakly_pointed`` means every exponent of ``f * A^{-g}`` is a nonnegative
    integral combination of the rows of the exchange matrix; ``c0`` is the
    constant term of that expansion and ``pointed`` additionally asks ``c0 == 1``.
    """

    g: Tuple[int, ...]
    weakly_pointed: bool
    c0: object

    @property
    def pointed(self) -> bool:
        return self.weakly_pointed and self.c0 == 1

    def __iter__(self):
        return iter((self.g, self.weakly_pointed))


def g_vector(f, seed: Seed, order: TotalOrderSpec) -> GVector:
    """g-vector of ``f`` written in the cluster variables of ``seed``.

    ``f`` is a Laurent polynomial whose ``j``-th variable is the cluster
    variable at the ``j``-th label of the seed.
    """
    eps = seed.exchange
    if not eps.full_rank:
        raise ExchangeError("g-vectors need a full-rank exchange matrix")
    if not check_refines(order, eps):
        raise ClusterError("order does not refine the opposite dominance order")
    f = as_rational(f)
    if not f.is_laurent():
        raise ClusterError("function is not a Laurent polynomial in the seed chart")
    p = f.as_laurent()
    if p.nvars != eps.size:
        raise ClusterError("function arity does not match the seed")
    g = lowest_term(p, order)
    c0 = p.coefficient(g)
    rows = eps.rows()
    cols = [list(c) for c in zip(*rows)] if rows else []
    ok = True
    for e in p.terms:
        b = [x - y for x, y in zip(e, g)]
        if not any(b):
            continue
        if not rows:
            ok = False
            break
        v = _exact.solve(cols, b)
        if v is None or any(x.denominator != 1 or x < 0 for x in v):
            ok = False
            break
    return GVector(tuple(g), ok, c0)


def rewrite_in_seed(f, images: Sequence) -> RationalFn:
    """Substitute chart coordinates by their expressions in another chart."""
    from .symfun import substitute

    f = as_rational(f)
    num = substitute(f.num, images)
    den = substitute(f.den, images)
    return num / den


def chart_inverse_images(path: Sequence[Label], start: ExchangeMatrix) -> Tuple[Seed, List[RationalFn]]:
    """Express the initial cluster through the cluster reached along ``path``.

    Returns the abstract seed at the end of ``path`` together with the images
    of the initial variables as Laurent polynomials in its cluster.
    """
    eps_end = start
    for k in path:
        eps_end = mutate_matrix(eps_end, k)
    back = initial_seed_abstract(eps_end)
    back = apply_sequence(back, list(reversed(list(path))))
    if back.exchange != start:
        raise ClusterError("reverse path does not return to the start matrix")
    return initial_seed_abstract(eps_end), list(back.cluster)


# tropical mutation --------------------------------------------------------------

def tropical_mutate(eps: ExchangeMatrix, k: Label, g: Sequence[int]) -> Tuple[int, ...]:
    """``g'_j = g_j + [-eps_kj]_+ g_k + eps_kj [g_k]_+``, ``g'_k = -g_k``."""
    if eps.is_frozen(k):
        raise FrozenIndexError(f"cannot mutate at frozen vertex {k!r}")
    kk = eps.index(k)
    row = eps.square[kk]
    gk = g[kk]
    out = []
    for j, gj in enumerate(g):
        if j == kk:
            out.append(-gk)
        else:
            e = row[j]
            out.append(gj + max(-e, 0) * gk + e * max(gk, 0))
    return tuple(out)


def tropical_sequence(eps: ExchangeMatrix, seq, g: Sequence[int]) -> Tuple[int, ...]:
    g = tuple(g)
    for k in seq:
        g = tropical_mutate(eps, k, g)
        eps = mutate_matrix(eps, k)
    return g
