"""Valuations on torus charts, transition matrices and Newton-Okounkov polytopes.

Everything is computed in the chart ``y_i : (t_1, ..., t_m) -> y_{i_1}(t_1)
... y_{i_m}(t_m)`` of a reduced word ``i``.  A valuation at a seed needs the
chart coordinates ``t_k`` written in the cluster of that seed.  The seed
``s_i^mut`` has a monomial cluster ``t^{N rows}``, so ``t = A_mut^{N^-1}``
there; any other seed is reached from it by mutation, which expresses the
``A_mut`` as Laurent polynomials in its cluster.

Checks return a :class:`Report` rather than raising, so that a suite can
collect every witness of a failure.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import _exact
from .cluster import (
    Seed,
    apply_sequence,
    chart_inverse_images,
    g_vector,
    initial_seed,
    initial_seed_abstract,
    make_seed,
    minor_row,
    mutate_seed,
    seq_left,
    seq_right_vee,
    tropical_mutate,
    xhat,
)
from .exchange import (
    ExchangeMatrix,
    TotalOrderSpec,
    build_epsilon,
    build_epsilon_double,
    check_refines,
    dominance_refined,
    lex_lt,
    lex_prec,
    matrix_twisted,
    mutate_matrix,
    mutate_sequence,
)
from .minors import FunctionSpace, function_space, generalized_minor, unipotent_point
from .polyhedra import (
    QPolyhedron,
    cone,
    convex_hull,
    extreme_rays,
    linear_image,
    pl_image,
    tropical_sequence_map,
)
from .rootsys import CartanData, Weight, WordData, cartan, word_data
from .symfun import (
    LaurentPoly,
    RationalFn,
    as_rational,
    echelon_by_order,
    lowest_term,
    monomial_product,
    substitute,
)


class OkounkovError(ValueError):
    pass


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    """Outcome of a named check.

    ``witnesses`` lists offending inputs on failure and a short summary of
    what was compared on success.
    """

    check: str
    inputs: dict
    status: bool = True
    witnesses: List = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status

    def fail(self, witness) -> None:
        self.status = False
        self.witnesses.append(witness)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "inputs": self.inputs,
            "status": "pass" if self.status else "fail",
            "witnesses": self.witnesses,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, default=str)


def _ivec(v) -> Tuple[int, ...]:
    return tuple(int(x) for x in v)


# ---------------------------------------------------------------------------
# transition matrices


def matrix_M(wd: WordData, cd: CartanData) -> Tuple[Tuple[int, ...], ...]:
    """Rows ``d^{(s)}``: exponents of the initial minors' lowest terms."""
    return tuple(minor_row(wd, cd, s) for s in wd.J)


def mut_seed(wd: WordData, cd: CartanData, engine=None) -> Seed:
    """The seed reached from the word's seed by the dual right sweep."""
    return apply_sequence(initial_seed(wd, cd, engine), seq_right_vee(wd))


def matrix_N(wd: WordData, cd: CartanData, engine=None) -> Tuple[Tuple[int, ...], ...]:
    """Exponent rows of the mutated cluster, which is monomial in the chart.

    Raises
    ------
    OkounkovError
        If a mutated variable is not a monomial or the matrix is not
        unimodular.
    """
    seed = mut_seed(wd, cd, engine)
    rows = []
    for s, var in zip(seed.labels, seed.cluster):
        if not var.is_monomial():
            raise OkounkovError(f"mutated variable at {s} is not a monomial: {var}")
        exp, coeff = var.as_laurent().single_term()
        if coeff != 1:
            raise OkounkovError(f"mutated variable at {s} has coefficient {coeff}")
        rows.append(_ivec(exp))
    if abs(_exact.det(rows)) != 1:
        raise OkounkovError("N is not unimodular")
    return tuple(rows)


@dataclass(frozen=True)
class TransitionMatrices:
    M: Tuple[Tuple[int, ...], ...]
    N: Tuple[Tuple[int, ...], ...]
    N_tilde: Tuple[Tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"M": [list(r) for r in self.M], "N": [list(r) for r in self.N], "N_tilde": [list(r) for r in self.N_tilde]}


def transition_matrices(wd: WordData, cd: CartanData, engine=None) -> TransitionMatrices:
    M = matrix_M(wd, cd)
    N = matrix_N(wd, cd, engine)
    nt = tuple(_ivec(r) for r in _exact.as_int_matrix(_exact.inverse(N)))
    return TransitionMatrices(M, N, nt)


# ---------------------------------------------------------------------------
# charts of seeds


@dataclass(frozen=True)
class SeedChart:
    """Chart coordinates ``t_k`` written in the cluster of one seed.

    ``path`` is the mutation path from the word's own seed.
    """

    word: Tuple[int, ...]
    path: Tuple[int, ...]
    exchange: ExchangeMatrix
    t_images: Tuple[RationalFn, ...]

    def rewrite(self, f) -> LaurentPoly:
        """``f`` in the cluster variables of the seed; must be Laurent."""
        f = as_rational(f)
        out = substitute(f.num, self.t_images)
        if not f.den.is_constant():
            out = out / substitute(f.den, self.t_images)
        if not out.is_laurent():
            raise OkounkovError(f"function is not Laurent at seed {self.path}: {f}")
        return out.as_laurent()


@lru_cache(maxsize=None)
def _seed_chart(word: Tuple[int, ...], cd: CartanData, path: Tuple[int, ...]) -> SeedChart:
    wd = word_data(word, cd, require_reduced=True)
    tm = transition_matrices(wd, cd)
    vee = list(seq_right_vee(wd))
    eps_mut = mutate_sequence(build_epsilon(wd, cd), vee)
    to_target = list(reversed(vee)) + list(path)
    target, imgs = chart_inverse_images(to_target, eps_mut)
    n = target.nvars
    t_imgs = tuple(monomial_product(imgs, tm.N_tilde[k], n) for k in range(wd.m))
    return SeedChart(word, tuple(path), target.exchange, t_imgs)


def seed_chart(wd: WordData, cd: CartanData, path: Sequence[int] = ()) -> SeedChart:
    return _seed_chart(tuple(wd.word), cd, tuple(path))


# ---------------------------------------------------------------------------
# valuations


@dataclass(frozen=True)
class ValuationSpec:
    """A lowest-term valuation on functions written in the torus chart.

    Variants: ``v_low`` (lex ``<`` on ``t``), ``v_tilde_low`` (lex ``<`` read
    from the right) and ``v_seed`` (lowest term in the cluster of a seed with
    an order refining its opposite dominance order).
    """

    variant: str
    dim: int
    order: TotalOrderSpec
    chart: Optional[SeedChart] = None

    def __post_init__(self) -> None:
        if self.variant not in ("v_low", "v_tilde_low", "v_seed"):
            raise OkounkovError(f"unknown valuation {self.variant!r}")
        if self.variant == "v_seed":
            if self.chart is None:
                raise OkounkovError("seed valuation needs a chart")
            if not check_refines(self.order, self.chart.exchange):
                raise OkounkovError("order does not refine the opposite dominance order")

    @classmethod
    def v_low(cls, m: int) -> "ValuationSpec":
        return cls("v_low", m, lex_lt(m))

    @classmethod
    def v_tilde_low(cls, m: int) -> "ValuationSpec":
        return cls("v_tilde_low", m, lex_prec(m))

    @classmethod
    def v_seed(
        cls,
        wd: WordData,
        cd: CartanData,
        path: Sequence[int] = (),
        order: Optional[TotalOrderSpec] = None,
    ) -> "ValuationSpec":
        """Valuation at the seed reached along ``path``.

        Default orders: lex ``<`` read from the right at the word's own seed,
        the matrix-twisted order at the dual-sweep seed, and the
        dominance-refined order elsewhere.
        """
        chart = seed_chart(wd, cd, path)
        if order is None:
            if not path:
                order = lex_prec(wd.m)
            elif tuple(path) == tuple(seq_right_vee(wd)):
                order = matrix_twisted(transition_matrices(wd, cd).N_tilde)
            else:
                order = dominance_refined(chart.exchange)
        return cls("v_seed", wd.m, order, chart)

    def prepare(self, f) -> LaurentPoly:
        if self.chart is not None:
            return self.chart.rewrite(f)
        f = as_rational(f)
        if not f.is_laurent():
            raise OkounkovError("function is not Laurent in the torus chart")
        return f.as_laurent()

    def __call__(self, f) -> Tuple[int, ...]:
        return _ivec(lowest_term(self.prepare(f), self.order))

    def value_set(self, polys: Iterable) -> List[Tuple[int, ...]]:
        """Valuation values of the span of ``polys`` (sorted)."""
        ech = echelon_by_order([self.prepare(f) for f in polys], self.order)
        return sorted(_ivec(k) for k in ech)


def _space(lam, wd: WordData, cd: CartanData, engine=None) -> FunctionSpace:
    lam = lam if isinstance(lam, Weight) else Weight(tuple(lam))
    return function_space(lam, wd.word, None, engine or _engine(cd))


def _engine(cd: CartanData):
    from .cluster import default_engine

    eng = default_engine(cd)
    if eng is None:
        raise OkounkovError(f"no matrix engine for type {cd.series}{cd.rank}")
    return eng


def valuation_values(lam, wd: WordData, cd: CartanData, val: ValuationSpec) -> List[Tuple[int, ...]]:
    """Distinct valuation values of the degree-one function space.

    Their number equals the dimension of the space (one-dimensional leaves).
    """
    space = _space(lam, wd, cd)
    vals = val.value_set(space.basis)
    if len(vals) != space.dim:
        raise OkounkovError("valuation values are not distinct on a basis")
    return vals


def no_polytope(lam, wd: WordData, cd: CartanData, val: ValuationSpec) -> QPolyhedron:
    """Convex hull of the valuation values of the degree-one function space."""
    return convex_hull(valuation_values(lam, wd, cd, val))


def degree_one_check(lam, wd: WordData, cd: CartanData, val: ValuationSpec, k: int = 2) -> Report:
    """Lattice points of ``k`` times the polytope against the degree-``k`` values."""
    lam = lam if isinstance(lam, Weight) else Weight(tuple(lam))
    rep = Report("degree-one", {"lambda": list(lam), "word": list(wd.word), "k": k, "valuation": val.variant})
    poly = no_polytope(lam, wd, cd, val)
    pts = set(poly.dilate(k).lattice_points())
    vals = set(valuation_values(lam.scale(k), wd, cd, val))
    if pts != vals:
        rep.fail({"lattice_only": sorted(pts - vals)[:5], "values_only": sorted(vals - pts)[:5]})
    rep.witnesses.append({"count": len(vals)})
    return rep


# ---------------------------------------------------------------------------
# polytope relations


def _apply(vals, mat) -> List[Tuple[int, ...]]:
    return sorted(_ivec(_exact.vecmat(list(v), mat)) for v in vals)


def string_relation_check(lam, wd: WordData, cd: CartanData) -> Report:
    """``v~(f) = v_{s_i}(f) M`` on a basis, and the polytope identity."""
    rep = Report("string-relation", {"lambda": list(lam), "word": list(wd.word)})
    M = matrix_M(wd, cd)
    vt = ValuationSpec.v_tilde_low(wd.m)
    vs = ValuationSpec.v_seed(wd, cd)
    space = _space(lam, wd, cd)
    for f in space.basis:
        if _ivec(_exact.vecmat(list(vs(f)), M)) != vt(f):
            rep.fail({"function": str(f), "v_seed": vs(f), "v_tilde": vt(f)})
    p_tilde = no_polytope(lam, wd, cd, vt)
    p_seed = no_polytope(lam, wd, cd, vs)
    if not linear_image(p_seed, M).same_set(p_tilde):
        rep.fail("polytope identity fails")
    rep.witnesses.append({"functions": space.dim, "vertices": len(p_tilde.vertices)})
    return rep


def nz_relation_check(lam, wd: WordData, cd: CartanData, order: Optional[TotalOrderSpec] = None) -> Report:
    """``v_low(f) = v_{s_i^mut}(f) N`` on a basis, and the polytope identity."""
    rep = Report("nz-relation", {"lambda": list(lam), "word": list(wd.word)})
    N = matrix_N(wd, cd)
    vl = ValuationSpec.v_low(wd.m)
    vm = ValuationSpec.v_seed(wd, cd, tuple(seq_right_vee(wd)), order)
    space = _space(lam, wd, cd)
    for f in space.basis:
        if _ivec(_exact.vecmat(list(vm(f)), N)) != vl(f):
            rep.fail({"function": str(f), "v_mut": vm(f), "v_low": vl(f)})
    p_low = no_polytope(lam, wd, cd, vl)
    p_mut = no_polytope(lam, wd, cd, vm)
    if not linear_image(p_mut, N).same_set(p_low):
        rep.fail("polytope identity fails")
    rep.witnesses.append({"functions": space.dim, "vertices": len(p_low.vertices)})
    return rep


def refinement_independence_check(lam, wd: WordData, cd: CartanData, path: Sequence[int], orders) -> Report:
    """The polytope at one seed is the same for several refinements."""
    rep = Report("refinement-independence", {"lambda": list(lam), "word": list(wd.word), "path": list(path)})
    sets = []
    for order in orders:
        val = ValuationSpec.v_seed(wd, cd, path, order)
        sets.append(tuple(valuation_values(lam, wd, cd, val)))
    if len(set(sets)) != 1:
        rep.fail({"orders": [o.variant for o in orders]})
    return rep


def saturation_check(lam, wd: WordData, cd: CartanData, val: ValuationSpec, max_degree: int = 3) -> Report:
    """Degree-``k`` values equal the lattice points of ``k`` times the polytope."""
    rep = Report("saturation", {"lambda": list(lam), "word": list(wd.word), "max_degree": max_degree})
    base = no_polytope(lam, wd, cd, val)
    lam = lam if isinstance(lam, Weight) else Weight(tuple(lam))
    for k in range(1, max_degree + 1):
        pts = set(base.dilate(k).lattice_points())
        vals = set(valuation_values(lam.scale(k), wd, cd, val))
        if pts != vals:
            rep.fail({"degree": k, "lattice": len(pts), "values": len(vals)})
        else:
            rep.witnesses.append({"degree": k, "points": len(pts)})
    return rep


# ---------------------------------------------------------------------------
# cones and ray generators


def string_cone_rays(series: str, n: int) -> List[Tuple[int, ...]]:
    """The listed ray generators of the string cone for the standard longest word."""
    series = series.upper()
    out = []

    def block(offset: int, values: Sequence[int], m: int) -> Tuple[int, ...]:
        v = [0] * m
        for k, x in enumerate(values):
            v[offset + k] = x
        return tuple(v)

    if series == "A":
        m = n * (n + 1) // 2
        for i in range(1, n + 1):
            for j in range(1, i + 1):
                out.append(block(i * (i - 1) // 2, [1] * j, m))
    elif series == "B":
        m = n * n
        for i in range(2, n + 1):
            for j in range(1, i):
                out.append(block((i - 1) ** 2, [1] * j, m))
            for j in range(0, i):
                out.append(block((i - 1) ** 2, [1] * (i - 1) + [2] + [1] * j, m))
        out.append(block(0, [1], m))
    elif series == "C":
        m = n * n
        for i in range(1, n + 1):
            for j in range(1, 2 * i):
                out.append(block((i - 1) ** 2, [1] * j, m))
    elif series == "D":
        m = n * (n - 1)
        for i in range(2, n):
            for j in range(1, 2 * i + 1):
                out.append(block(i * (i - 1), [1] * j, m))
            out.append(block(i * (i - 1), [1] * (i - 1) + [0, 1], m))
        out.append(block(0, [1], m))
        out.append(block(0, [0, 1], m))
    else:
        raise OkounkovError(f"no ray list for series {series}")
    return sorted(set(out))


def minimality_check(rays: Sequence[Sequence[int]]) -> Report:
    """Every listed vector is an extreme ray of the cone the list generates."""
    rays = sorted(_ivec(r) for r in rays)
    rep = Report("ray-minimality", {"count": len(rays)})
    got = extreme_rays(cone(rays))
    if got != rays:
        rep.fail({"missing": sorted(set(rays) - set(got)), "extra": sorted(set(got) - set(rays))})
    return rep


def minor_set_type_a(n: int, variant: str = "first") -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Row and column sets of the minor set used for ray generators (type ``A_n``).

    For ``k = 1..n`` the subalgebra ``sl_{k+1}`` on the first ``k+1``
    coordinates contributes the minors with row set ``w_0^{(k)} varpi`` and
    column set ``w varpi`` for every other extremal weight ``w varpi``.
    ``variant="first"`` uses ``varpi = varpi_1`` (single entries below the
    diagonal); ``variant="literal"`` uses ``varpi = varpi_k``.
    """
    out = []
    for k in range(1, n + 1):
        size = 1 if variant == "first" else k
        if variant not in ("first", "literal"):
            raise OkounkovError(f"unknown variant {variant!r}")
        rows = tuple(range(k + 2 - size, k + 2))
        for cols in itertools.combinations(range(1, k + 2), size):
            if cols != rows:
                out.append((rows, cols))
    return out


def minor_set_values(n: int, val: ValuationSpec, variant: str = "first") -> List[Tuple[int, ...]]:
    """Valuations of the minor set evaluated in the longest-word chart of ``SL_{n+1}``."""
    from .rootsys import longest_word

    word = longest_word("A", n)
    M = unipotent_point(word, n + 1)
    return sorted(val(M.minor(list(r), list(c))) for r, c in minor_set_type_a(n, variant))


def cluster_cone(wd: WordData, cd: CartanData, degree_cap: int, val: ValuationSpec) -> QPolyhedron:
    """Cone generated by the values of all function spaces with ``|lambda| <= cap``."""
    gens = set()
    for lam in _weights_up_to(cd.rank, degree_cap):
        gens.update(valuation_values(lam, wd, cd, val))
    gens.discard(tuple([0] * wd.m))
    return cone(sorted(gens), wd.m)


def _weights_up_to(n: int, cap: int) -> List[Weight]:
    out = []
    for coords in itertools.product(range(cap + 1), repeat=n):
        if 0 < sum(coords) <= cap:
            out.append(Weight(coords))
    return out


def ray_check(n: int, degree_cap: int = 1, variant: str = "first") -> Report:
    """Type ``A_n``: string-cone rays against the list, seed-cone rays against the minor set."""
    from .rootsys import longest_word

    cd = cartan("A", n)
    wd = word_data(longest_word("A", n), cd, require_reduced=True)
    rep = Report("rays", {"type": f"A{n}", "degree_cap": degree_cap, "minor_set": variant})
    vt = ValuationSpec.v_tilde_low(wd.m)
    vs = ValuationSpec.v_seed(wd, cd)
    tilde_rays = extreme_rays(cluster_cone(wd, cd, degree_cap, vt))
    listed = string_cone_rays("A", n)
    if tilde_rays != listed:
        rep.fail({"string_cone": tilde_rays, "listed": listed})
    seed_rays = extreme_rays(cluster_cone(wd, cd, degree_cap, vs))
    d_vals = minor_set_values(n, vs, variant)
    if seed_rays != sorted(set(d_vals)) or len(set(d_vals)) != len(d_vals):
        rep.fail({"seed_cone": seed_rays, "minor_set": d_vals})
    rep.witnesses.append({"string_cone": tilde_rays, "seed_cone": seed_rays})
    return rep


def opposite_cone_check(wd: WordData, cd: CartanData, degree_cap: int = 1) -> Report:
    """String cone of the reversed word equals the reversed ``v_low`` cone."""
    rep = Report("opposite-cone", {"word": list(wd.word)})
    op = word_data(tuple(reversed(wd.word)), cd, require_reduced=True)
    c_low = cluster_cone(wd, cd, degree_cap, ValuationSpec.v_low(wd.m))
    c_op = cluster_cone(op, cd, degree_cap, ValuationSpec.v_tilde_low(op.m))
    reversed_rays = sorted(tuple(reversed(r)) for r in extreme_rays(c_low))
    if reversed_rays != extreme_rays(c_op):
        rep.fail({"reversed_low": reversed_rays, "tilde_op": extreme_rays(c_op)})
    return rep


# ---------------------------------------------------------------------------
# twist and modified seeds


def twist_monomial(wd: WordData, cd: CartanData, s: int) -> Tuple[int, ...]:
    """Exponent of the twisted initial minor at ``s`` in the chart: ``-d^{(s)}``."""
    return tuple(-x for x in minor_row(wd, cd, s))


def chamber_ansatz_check(wd: WordData, cd: CartanData) -> Report:
    """``t_s`` equals the chamber ratio of twisted initial minors."""
    rep = Report("chamber-ansatz", {"word": list(wd.word)})
    m = wd.m
    tw = {s: LaurentPoly.monomial(twist_monomial(wd, cd, s)) for s in wd.J}
    tw[0] = LaurentPoly.one(m)
    for s in wd.J:
        num = LaurentPoly.one(m)
        for t in wd.J:
            if t < s < wd.plus[t]:
                num = num * tw[t] ** (-cd.entry(wd.letter(t), wd.letter(s)))
        rhs = as_rational(num) / (as_rational(tw[wd.minus[s]]) * as_rational(tw[s]))
        if not rhs == as_rational(LaurentPoly.var(s - 1, m)):
            rep.fail({"s": s, "ratio": str(rhs)})
    return rep


def _frozen_minor(wd: WordData, i: int, seed: Seed) -> RationalFn:
    return seed.variable(wd.xi_inv(i, wd.mult[i]))


def mod_seed(wd: WordData, cd: CartanData) -> Seed:
    """Twisted left-sweep seed in the chart (closed-form cluster)."""
    base = initial_seed(wd, cd)
    eps = mutate_sequence(base.exchange, seq_left(wd))
    cluster = []
    for s in wd.J:
        i = wd.letter(s)
        top = base.variable(wd.vee[s]) if wd.vee[s] else RationalFn.const(1, wd.m)
        cluster.append(top / _frozen_minor(wd, i, base))
    return make_seed(eps, cluster, assert_laurent=False)


def xhat_mod_check(wd: WordData, cd: CartanData) -> Report:
    """``X^mod_{s^vee} = X_s`` for every unfrozen ``s``."""
    rep = Report("xhat-mod", {"word": list(wd.word)})
    base = initial_seed(wd, cd)
    mod = mod_seed(wd, cd)
    for s in wd.unfrozen:
        lhs = xhat(mod, wd.vee[s])
        rhs = xhat(base, s)
        if not lhs == rhs:
            rep.fail({"s": s, "mod": str(lhs), "initial": str(rhs)})
    return rep


def xhat_mod_mut_check(wd: WordData, cd: CartanData) -> Report:
    """``X^{mod,mut}_s = t_s / t_{s^+}`` and ``X^mut_s = X^{mod,mut}_{s^vee}``."""
    rep = Report("xhat-mod-mut", {"word": list(wd.word)})
    m = wd.m
    right = list(reversed(list(seq_left(wd))))
    mm = apply_sequence(mod_seed(wd, cd), right)
    mut = mut_seed(wd, cd)
    for s in wd.unfrozen:
        expected = as_rational(LaurentPoly.var(s - 1, m)) / as_rational(LaurentPoly.var(wd.plus[s] - 1, m))
        got = xhat(mm, s)
        if not got == expected:
            rep.fail({"s": s, "got": str(got)})
        if not xhat(mut, s) == xhat(mm, wd.vee[s]):
            rep.fail({"s": s, "mut": str(xhat(mut, s))})
    return rep


def modified_ratio_check(wd: WordData, cd: CartanData, path: Sequence[int]) -> Report:
    """Along matched paths, mod and initial variables differ by frozen monomials."""
    rep = Report("modified-ratio", {"word": list(wd.word), "path": list(path)})
    base = initial_seed(wd, cd)
    mod = mod_seed(wd, cd)
    frozen_rows = [minor_row(wd, cd, s) for s in wd.frozen]
    cols = [list(c) for c in zip(*frozen_rows)]
    for k in path:
        base = mutate_seed(base, k)
        mod = mutate_seed(mod, wd.vee[k])
        for s in wd.unfrozen:
            ratio = mod.variable(wd.vee[s]) / base.variable(s)
            if not ratio.is_monomial():
                rep.fail({"after": k, "s": s, "ratio": str(ratio)})
                continue
            exp, coeff = ratio.as_laurent().single_term()
            v = _exact.solve(cols, list(exp))
            if coeff != 1 or v is None or any(x.denominator != 1 for x in v):
                rep.fail({"after": k, "s": s, "ratio": str(ratio)})
    return rep


# ---------------------------------------------------------------------------
# determinantal identities


def _d_minor(wd: WordData, s: int, t: int, M, engine) -> LaurentPoly:
    m = wd.m
    if s == 0:
        return LaurentPoly.one(m) if t == 0 else LaurentPoly.zero(m)
    u_prime = wd.prefix(t) if t else ()
    return generalized_minor(wd.prefix(s), u_prime, wd.letter(s), M, engine)


def determinantal_check(wd: WordData, cd: CartanData) -> Report:
    """The determinantal identity system, and its use along the left sweep."""
    rep = Report("determinantal", {"word": list(wd.word)})
    engine = _engine(cd)
    M = engine.point(wd.word)
    D = lambda s, t: _d_minor(wd, s, t, M, engine)
    count = 0
    for s in wd.J:
        for t in range(1, s):
            if wd.letter(s) != wd.letter(t):
                continue
            i = wd.letter(s)
            lhs = D(wd.minus[s], wd.minus[t]) * D(s, t)
            prod = LaurentPoly.one(wd.m)
            for j in range(1, cd.rank + 1):
                if j == i or cd.entry(j, i) == 0:
                    continue
                prod = prod * D(wd.minus_letter(s, j), wd.minus_letter(t, j)) ** (-cd.entry(j, i))
            rhs = D(s, wd.minus[t]) * D(wd.minus[s], t) + prod
            count += 1
            if lhs != rhs:
                rep.fail({"s": s, "t": t})
    # along the left sweep each mutation moves D(a, b) to D(a^+, b^+)
    seed = initial_seed(wd, cd, engine)
    label = {s: (s, 0) for s in wd.J}
    for k in seq_left(wd):
        a, b = label[k]
        nb = wd.plus[b] if b else wd.xi_inv(wd.letter(a), 1)
        seed = mutate_seed(seed, k)
        label[k] = (wd.plus[a], nb)
        if not seed.variable(k) == as_rational(D(*label[k])):
            rep.fail({"mutation": k, "expected": label[k]})
    rep.witnesses.append({"identities": count})
    return rep


# ---------------------------------------------------------------------------
# cluster monomials and tropical transport


def reachable_seeds(start: Seed, depth: int) -> List[Tuple[Tuple[int, ...], Seed]]:
    """Seeds reachable in at most ``depth`` mutations, one per distinct cluster."""
    seen = {}
    frontier = [((), start)]
    out = []

    def key(seed: Seed):
        return frozenset(str(x) for x in seed.cluster)

    seen[key(start)] = True
    out.append(((), start))
    for _ in range(depth):
        nxt = []
        for path, seed in frontier:
            for k in seed.exchange.unfrozen_labels:
                new = mutate_seed(seed, k)
                kk = key(new)
                if kk in seen:
                    continue
                seen[kk] = True
                nxt.append((path + (k,), new))
        out.extend(nxt)
        frontier = nxt
    return out


def cluster_monomial_basis(lam, wd: WordData, cd: CartanData, depth: int = 8) -> List[LaurentPoly]:
    """A basis of the function space made of cluster monomials, when one exists.

    Raises
    ------
    OkounkovError
        If the cluster monomials found do not span the space.
    """
    from .symfun import in_span

    space = _space(lam, wd, cd)
    vt = ValuationSpec.v_tilde_low(wd.m)
    ech = echelon_by_order(space.basis, vt.order)
    targets = set(_ivec(k) for k in ech)
    hi = [max(v[j] for v in targets) for j in range(wd.m)]
    found: Dict[Tuple[int, ...], LaurentPoly] = {}
    for _, seed in reachable_seeds(initial_seed(wd, cd), depth):
        polys = [x.as_laurent() for x in seed.cluster]
        vals = [vt(p) for p in polys]
        n = len(polys)

        def rec(k: int, acc: Tuple[int, ...], mono: LaurentPoly) -> None:
            if k == n:
                if acc in targets and acc not in found and in_span(mono, ech, vt.order):
                    found[acc] = mono
                return
            e = 0
            cur_acc, cur = acc, mono
            while all(x <= h for x, h in zip(cur_acc, hi)):
                rec(k + 1, cur_acc, cur)
                if not any(vals[k]):
                    break
                e += 1
                cur_acc = tuple(a + b for a, b in zip(cur_acc, vals[k]))
                cur = cur * polys[k]

        rec(0, tuple([0] * wd.m), LaurentPoly.one(wd.m))
    if len(found) != space.dim:
        raise OkounkovError(f"found {len(found)} cluster monomials for a space of dimension {space.dim}")
    return [found[k] for k in sorted(found)]


def tropical_transport_check(lam, wd: WordData, cd: CartanData, path: Sequence[int], per_function: bool = True) -> Report:
    """Polytopes and g-vectors along ``path`` are related by tropical mutation."""
    rep = Report("tropical-transport", {"lambda": list(lam), "word": list(wd.word), "path": list(path)})
    start_val = ValuationSpec.v_seed(wd, cd, ())
    start = no_polytope(lam, wd, cd, start_val)
    eps0 = build_epsilon(wd, cd)
    moved = pl_image(start, tropical_sequence_map(eps0, path))
    end_val = ValuationSpec.v_seed(wd, cd, tuple(path))
    end = no_polytope(lam, wd, cd, end_val)
    if not moved.same_set(end):
        rep.fail("transported polytope differs from the polytope at the end seed")
    if per_function:
        basis = cluster_monomial_basis(lam, wd, cd)
        eps = eps0
        prefix: Tuple[int, ...] = ()
        vals = [ValuationSpec.v_seed(wd, cd, prefix)(b) for b in basis]
        for k in path:
            new_prefix = prefix + (k,)
            val = ValuationSpec.v_seed(wd, cd, new_prefix)
            for b, g in zip(basis, vals):
                gv = g_vector(val.prepare(b), make_seed(val.chart.exchange, LaurentPoly.gens(wd.m), "initial"), val.order)
                if not gv.pointed:
                    rep.fail({"function": str(b), "seed": list(new_prefix), "pointed": False})
            new_vals = [val(b) for b in basis]
            for b, g, g2 in zip(basis, vals, new_vals):
                if tropical_mutate(eps, k, g) != g2:
                    rep.fail({"function": str(b), "mutation": k, "before": g, "after": g2})
            eps = mutate_matrix(eps, k)
            vals = new_vals
            prefix = new_prefix
        rep.witnesses.append({"basis": len(basis)})
    rep.witnesses.append({"vertices": len(end.vertices)})
    return rep


# ---------------------------------------------------------------------------
# double Bruhat specialization


def double_bruhat_specialization_check(wd: WordData, cd: CartanData, path: Sequence[int]) -> Report:
    """Mutating the extended seed and setting the extra frozen variables to 1
    agrees with mutating the seed of the unipotent cell."""
    rep = Report("double-bruhat", {"word": list(wd.word), "path": list(path)})
    big = initial_seed_abstract(build_epsilon_double(wd, cd))
    small = initial_seed_abstract(build_epsilon(wd, cd))
    big = apply_sequence(big, path)
    small = apply_sequence(small, path)
    m = wd.m
    images = []
    for lab in big.labels:
        if isinstance(lab, str):
            images.append(LaurentPoly.one(m))
        else:
            images.append(LaurentPoly.var(lab - 1, m))
    for lab in small.labels:
        got = big.variable(lab)
        specialized = substitute(got.num, images) / substitute(got.den, images)
        if not specialized == small.variable(lab):
            rep.fail({"vertex": lab, "specialized": str(specialized), "expected": str(small.variable(lab))})
    return rep


def double_bruhat_chart_check(wd: WordData, cd: CartanData, path: Sequence[int]) -> Report:
    """Same specialization, with the unipotent-cell cluster in the torus chart."""
    rep = Report("double-bruhat-chart", {"word": list(wd.word), "path": list(path)})
    big = apply_sequence(initial_seed_abstract(build_epsilon_double(wd, cd)), path)
    t_seed = initial_seed(wd, cd)
    images = []
    for lab in big.labels:
        if isinstance(lab, str):
            images.append(RationalFn.const(1, wd.m))
        else:
            images.append(t_seed.variable(lab))
    t_seed = apply_sequence(t_seed, path)
    for lab in t_seed.labels:
        got = big.variable(lab)
        specialized = substitute(got.num, images) / substitute(got.den, images)
        if not specialized == t_seed.variable(lab):
            rep.fail({"vertex": lab, "specialized": str(specialized)})
    return rep
