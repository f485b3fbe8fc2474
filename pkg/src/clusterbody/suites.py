"""Named check suites run by the command line and the acceptance tests.

Each suite returns a list of :class:`~clusterbody.okounkov.Report`; a suite
passes when every report does.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List

from . import _exact
from . import reference as ref
from .cluster import (
    initial_seed_abstract,
    mutate_seed,
    seq_left,
    seq_right_vee,
    tropical_sequence,
)
from .exchange import (
    ExchangeMatrix,
    build_epsilon,
    build_epsilon_double,
    check_refines,
    dominance_refined,
    first_line_closed_form,
    left_closed_form,
    left_sequence_block,
    lex_lt,
    lex_prec,
    matrix_twisted,
    mutate_sequence,
)
from .minors import function_space
from .okounkov import (
    Report,
    ValuationSpec,
    chamber_ansatz_check,
    degree_one_check,
    determinantal_check,
    double_bruhat_chart_check,
    double_bruhat_specialization_check,
    matrix_M,
    minimality_check,
    modified_ratio_check,
    no_polytope,
    nz_relation_check,
    opposite_cone_check,
    ray_check,
    refinement_independence_check,
    saturation_check,
    string_cone_rays,
    string_relation_check,
    transition_matrices,
    tropical_transport_check,
    twist_monomial,
    xhat_mod_check,
    xhat_mod_mut_check,
)
from .polyhedra import from_h, linear_map, pl_image, tropical_mutation_map, tropical_sequence_map
from .rootsys import Weight, cartan, word_data
from .symfun import LaurentPoly, RationalFn, lowest_term, parse

SL3 = ("A", 2, (1, 2, 1))
SL3P = ("A", 2, (2, 1, 2))
SL4 = ("A", 3, (1, 2, 1, 3, 2, 1))
SL4P = ("A", 3, (2, 1, 2, 3, 2, 1))
B2 = ("B", 2, (1, 2, 1, 2))


def _wd(case):
    series, n, word = case
    cd = cartan(series, n)
    return word_data(word, cd, require_reduced=True), cd


def _arrows(eps: ExchangeMatrix, frozen_pairs: bool) -> List:
    return sorted({(s, t) for s, t, _ in eps.arrows(frozen_pairs)}, key=str)


# ---------------------------------------------------------------------------


def suite_sl3_table() -> List[Report]:
    wd, cd = _wd(SL3)
    rep = Report("sl3-table", {"word": list(wd.word), "lambda": [1, 1]})
    v, vt = ValuationSpec.v_low(3), ValuationSpec.v_tilde_low(3)
    for text, low, tilde in ref.SL3_TABLE:
        f = parse(text, 3)
        if v(f) != low or vt(f) != tilde:
            rep.fail({"function": text, "v_low": v(f), "v_tilde": vt(f)})
    # the listed functions span the degree-one space
    space = function_space(cd.rho(), wd.word, 3)
    listed = sorted(vt(parse(t, 3)) for t, _, _ in ref.SL3_TABLE)
    if vt.value_set(space.basis) != listed:
        rep.fail("listed functions do not match the function space")
    return [rep]


def suite_sl4_matrices() -> List[Report]:
    out = []
    for case, M_ref in ((SL3, ref.M_SL3), (SL4, ref.M_SL4)):
        wd, cd = _wd(case)
        rep = Report("matrix-M", {"word": list(wd.word)})
        if matrix_M(wd, cd) != M_ref:
            rep.fail({"computed": matrix_M(wd, cd)})
        out.append(rep)
    wd, cd = _wd(SL4)
    tm = transition_matrices(wd, cd)
    rep = Report("matrix-N", {"word": list(wd.word), "against": "reference"})
    if tm.N != ref.N_SL4_REF:
        rows = [s for s in wd.J if tm.N[s - 1] != ref.N_SL4_REF[s - 1]]
        rep.fail({"computed": [list(r) for r in tm.N], "differing_rows": rows})
    out.append(rep)
    rep = Report("matrix-N-structure", {"word": list(wd.word)})
    if abs(_exact.det(tm.N)) != 1:
        rep.fail({"det": str(_exact.det(tm.N))})
    for s in wd.frozen:
        if tm.N[s - 1] != tm.M[s - 1]:
            rep.fail({"frozen_row": s})
    # unfrozen rows: eps^mut_s N = e_{s^vee} - e_{(s^vee)^+}
    eps_mut = mutate_sequence(build_epsilon(wd, cd), seq_right_vee(wd))
    for s in wd.unfrozen:
        row = [sum(eps_mut.row(s)[a] * tm.N[a][b] for a in range(wd.m)) for b in range(wd.m)]
        v = wd.vee[s]
        want = [0] * wd.m
        want[v - 1] += 1
        if wd.plus[v] <= wd.m:
            want[wd.plus[v] - 1] -= 1
        if row != want:
            rep.fail({"s": s, "product": row})
    out.append(rep)
    return out


def suite_quivers() -> List[Report]:
    out = []
    for (series, n, word, kind), arrows in sorted(ref.QUIVERS.items(), key=str):
        wd, cd = _wd((series, n, word))
        eps = build_epsilon(wd, cd)
        frozen_pairs = kind in ("left_first_block", "left_extended")
        if kind == "left" or kind == "left_extended":
            eps = mutate_sequence(eps, seq_left(wd))
        elif kind == "right_vee":
            eps = mutate_sequence(eps, seq_right_vee(wd))
        elif kind == "left_first_block":
            eps = mutate_sequence(eps, left_sequence_block(wd, 1))
        elif kind == "double":
            eps = build_epsilon_double(wd, cd)
        want = sorted(set(arrows), key=str)
        if kind == "double":
            # frozen-frozen arrows are not encoded by the matrix
            fr = set(eps.frozen_labels)
            want = [a for a in want if not (a[0] in fr and a[1] in fr)]
        rep = Report("quiver", {"type": f"{series}{n}", "word": list(word), "kind": kind})
        got = _arrows(eps, frozen_pairs)
        if got != want:
            rep.fail({"missing": sorted(set(want) - set(got), key=str), "extra": sorted(set(got) - set(want), key=str)})
        out.append(rep)
    for case in (SL4, SL4P, B2):
        wd, cd = _wd(case)
        rep = Report("closed-forms", {"word": list(wd.word)})
        eps = build_epsilon(wd, cd)
        if left_closed_form(wd, cd) != mutate_sequence(eps, seq_left(wd)):
            rep.fail("full left sweep")
        if first_line_closed_form(wd, cd) != mutate_sequence(eps, left_sequence_block(wd, 1)):
            rep.fail("first block")
        out.append(rep)
    return out


def suite_mutation_sequences() -> List[Report]:
    out = []
    for case, seqs in sorted(ref.SEQUENCES.items()):
        wd, cd = _wd(case)
        rep = Report("mutation-sequences", {"word": list(wd.word)})
        if "left" in seqs and seq_left(wd).composition_text() != seqs["left"]:
            rep.fail({"left": seq_left(wd).composition_text()})
        if seq_right_vee(wd).composition_text() != seqs["right_vee"]:
            rep.fail({"right_vee": seq_right_vee(wd).composition_text()})
        out.append(rep)
    # for SL_3 the dual sweep lands on the other word's seed, positions 2 and 3 swapped
    swap = {1: 1, 2: 3, 3: 2}
    for a, b in ((SL3, SL3P), (SL3P, SL3)):
        wd, cd = _wd(a)
        wd2, _ = _wd(b)
        rep = Report("sl3-mut-seed", {"word": list(wd.word)})
        got = mutate_sequence(build_epsilon(wd, cd), seq_right_vee(wd))
        relabelled = sorted(((swap[s], swap[t]) for s, t in _arrows(got, False)), key=str)
        if relabelled != _arrows(build_epsilon(wd2, cd), False):
            rep.fail("matrix differs from the other word's matrix")
        out.append(rep)
    return out


def suite_chamber_ansatz() -> List[Report]:
    out = []
    for case in (SL3, SL3P, SL4, SL4P, B2):
        wd, cd = _wd(case)
        out.append(chamber_ansatz_check(wd, cd))
        rep = Report("twist-monomial", {"word": list(wd.word)})
        M = matrix_M(wd, cd)
        for s in wd.J:
            if twist_monomial(wd, cd, s) != tuple(-x for x in M[s - 1]):
                rep.fail({"s": s})
        out.append(rep)
        out.append(xhat_mod_check(wd, cd))
        out.append(xhat_mod_mut_check(wd, cd))
        out.append(determinantal_check(wd, cd))
        out.append(modified_ratio_check(wd, cd, list(wd.unfrozen) + list(wd.unfrozen)[:2]))
    return out


def suite_rays() -> List[Report]:
    out = [ray_check(2, degree_cap=2), ray_check(3, degree_cap=2)]
    for series, n in (("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 4)):
        rep = minimality_check(string_cone_rays(series, n))
        rep.inputs["type"] = f"{series}{n}"
        out.append(rep)
    for word in ((1, 2, 1), (2, 1, 2), (1, 2, 1, 3, 2, 1), (2, 1, 2, 3, 2, 1)):
        cd = cartan("A", max(word))
        out.append(opposite_cone_check(word_data(word, cd, True), cd))
    return out


def _sl3_self_map_reports() -> List[Report]:
    out = []
    wd, cd = _wd(SL3)
    omega = ((1, 0, 0), (0, 0, 1), (0, 1, 0))
    tmap = tropical_mutation_map(build_epsilon(wd, cd), 1).then(linear_map(omega))
    rep = Report("sl3-self-map", {"lambda": [1, 1]})
    P = no_polytope((1, 1), wd, cd, ValuationSpec.v_seed(wd, cd))
    if not pl_image(P, tmap).same_set(P):
        rep.fail("image differs")
    for v in P.lattice_points():
        if tmap(v) != ref.sl3_omega_mu1(v):
            rep.fail({"point": v, "map": tmap(v), "closed_form": ref.sl3_omega_mu1(v)})
    out.append(rep)
    wd2, _ = _wd(SL3P)
    for lam in ((1, 0), (0, 1), (1, 1), (2, 1), (1, 3), (3, 2)):
        rep = Report("sl3-general-weight", {"lambda": list(lam)})
        P = from_h(3, ref.sl3_seed(lam, (1, 2, 1)))
        Q = from_h(3, ref.sl3_seed(lam, (2, 1, 2)))
        if not pl_image(P, tmap).same_set(Q):
            rep.fail("reference polytopes are not related by the map")
        if not no_polytope(lam, wd, cd, ValuationSpec.v_seed(wd, cd)).same_set(P):
            rep.fail("computed polytope differs for (1, 2, 1)")
        if not no_polytope(lam, wd2, cd, ValuationSpec.v_seed(wd2, cd)).same_set(Q):
            rep.fail("computed polytope differs for (2, 1, 2)")
        out.append(rep)
    return out


def suite_tropical() -> List[Report]:
    out = _sl3_self_map_reports()
    wd, cd = _wd(SL4)
    eps = build_epsilon(wd, cd)
    V = list(seq_right_vee(wd))
    rep = Report("sl4-closed-form-map", {"sequence": V})
    P = no_polytope((1, 1, 1), wd, cd, ValuationSpec.v_seed(wd, cd))
    tmap = tropical_sequence_map(eps, V)
    image = pl_image(P, tmap)
    for v in P.vertices:
        g = tuple(int(x) for x in v)
        if tmap(g) != ref.sl4_right_vee(g) or tropical_sequence(eps, V, g) != ref.sl4_right_vee(g):
            rep.fail({"vertex": g})
    for x in P.lattice_points():
        if not image.contains(ref.sl4_right_vee(x)):
            rep.fail({"point": x})
    out.append(rep)
    for case, lam, path in ((SL3, (1, 1), (1,)), (SL3, (1, 1), ()), (SL3P, (1, 1), (1,)), (SL4, (1, 1, 1), tuple(V)), (SL4, (1, 1, 1), (1, 2, 3, 1))):
        wd, cd = _wd(case)
        out.append(tropical_transport_check(lam, wd, cd, path))
    return out


def suite_polytopes() -> List[Report]:
    out = []
    for case, lam in ((SL3, (1, 1)), (SL3P, (1, 1)), (SL4, (1, 1, 1))):
        wd, cd = _wd(case)
        out.append(string_relation_check(lam, wd, cd))
        out.append(nz_relation_check(lam, wd, cd))
        for val in (ValuationSpec.v_tilde_low(wd.m), ValuationSpec.v_low(wd.m)):
            rep = Report("lattice-count", {"word": list(wd.word), "valuation": val.variant})
            P = no_polytope(lam, wd, cd, val)
            dim = function_space(Weight(tuple(lam)), wd.word, cd.rank + 1).dim
            if len(P.lattice_points()) != dim:
                rep.fail({"lattice": len(P.lattice_points()), "dim": dim})
            out.append(rep)
        out.append(degree_one_check(lam, wd, cd, ValuationSpec.v_tilde_low(wd.m)))
    wd, cd = _wd(SL4)
    lam = (1, 1, 1)
    systems = {
        "string": (ref.sl4_string, ValuationSpec.v_tilde_low(6)),
        "seed": (ref.sl4_seed, ValuationSpec.v_seed(wd, cd)),
        "nz": (ref.sl4_nz, ValuationSpec.v_low(6)),
        "mut": (ref.sl4_mut_ref, ValuationSpec.v_seed(wd, cd, tuple(seq_right_vee(wd)))),
    }
    for name, (builder, val) in systems.items():
        rep = Report("sl4-hrep", {"system": name, "lambda": list(lam)})
        expected = from_h(6, builder(lam))
        computed = no_polytope(lam, wd, cd, val)
        if not expected.same_set(computed):
            pts = set(computed.lattice_points())
            rep.fail({"reference_points": len(expected.lattice_points()), "shared": sum(1 for p in expected.lattice_points() if p in pts)})
        out.append(rep)
    for word in ((1, 2, 1), (2, 1, 2)):
        wd, cd = _wd(("A", 2, word))
        for lam in ((1, 1), (2, 1), (1, 2)):
            rep = Report("sl3-string-hrep", {"word": list(word), "lambda": list(lam)})
            if not from_h(3, ref.sl3_string(lam, word)).same_set(no_polytope(lam, wd, cd, ValuationSpec.v_tilde_low(3))):
                rep.fail("string polytope differs")
            out.append(rep)
    return out


def suite_saturation() -> List[Report]:
    wd, cd = _wd(SL3)
    return [
        saturation_check((1, 1), wd, cd, ValuationSpec.v_seed(wd, cd), 3),
        saturation_check((1, 1), wd, cd, ValuationSpec.v_tilde_low(3), 3),
    ]


def suite_double_bruhat() -> List[Report]:
    out = []
    for case, paths in ((SL3, [(), (1,), (1, 1)]), (SL4, [(), (1,), (1, 2), (1, 2, 3, 1)]), (B2, [(1,), (2, 1)])):
        wd, cd = _wd(case)
        for path in paths:
            out.append(double_bruhat_specialization_check(wd, cd, path))
            if cd.series == "A":
                out.append(double_bruhat_chart_check(wd, cd, path))
    return out


# properties -------------------------------------------------------------------


def _random_poly(rng: random.Random, n: int, terms: int = 3) -> LaurentPoly:
    out = LaurentPoly.zero(n)
    while out.is_zero():
        for _ in range(terms):
            exp = tuple(rng.randint(-2, 2) for _ in range(n))
            out = out + LaurentPoly.monomial(exp, rng.choice([-3, -2, -1, 1, 2, 3]))
    return out


def rational_valuation(f: RationalFn, order) -> tuple:
    """Lowest-term valuation extended to a quotient."""
    a = lowest_term(f.num, order)
    b = lowest_term(f.den, order)
    return tuple(x - y for x, y in zip(a, b))


def valuation_axioms_check(order, samples: int = 500, seed: int = 0) -> Report:
    """Multiplicativity, the ultrametric inequality and constants on random quotients."""
    rep = Report("valuation-axioms", {"order": order.variant, "samples": samples, "seed": seed})
    rng = random.Random(seed)
    n = order.dim
    val = lambda f: rational_valuation(f, order)
    for _ in range(samples):
        f = RationalFn.from_poly(_random_poly(rng, n)) / RationalFn.from_poly(_random_poly(rng, n, 2))
        g = RationalFn.from_poly(_random_poly(rng, n)) / RationalFn.from_poly(_random_poly(rng, n, 2))
        vf, vg = val(f), val(g)
        if val(f * g) != tuple(a + b for a, b in zip(vf, vg)):
            rep.fail({"axiom": "product", "f": str(f), "g": str(g)})
        s = f + g
        if not s.is_zero() and order.less(val(s), min(vf, vg, key=order.key)):
            rep.fail({"axiom": "sum", "f": str(f), "g": str(g)})
        c = RationalFn.const(Fraction(rng.randint(1, 9), rng.randint(1, 9)), n)
        if any(val(c)) or val(c * f) != vf:
            rep.fail({"axiom": "constant"})
    return rep


def mutation_properties_check(case, walks: int = 20, length: int = 6, seed: int = 0) -> Report:
    """Involution and Laurent phenomenon along random paths of the abstract seed."""
    wd, cd = _wd(case)
    rep = Report("mutation-properties", {"word": list(wd.word), "walks": walks, "length": length, "seed": seed})
    rng = random.Random(seed)
    start = initial_seed_abstract(build_epsilon(wd, cd))
    uf = list(wd.unfrozen)
    if not uf:
        rep.witnesses.append("no mutable vertices")
        return rep
    for _ in range(walks):
        seed_ = start
        path = []
        for _ in range(rng.randint(1, length)):
            k = rng.choice(uf)
            path.append(k)
            nxt = mutate_seed(seed_, k)
            back = mutate_seed(nxt, k)
            if back.exchange != seed_.exchange or any(not a == b for a, b in zip(back.cluster, seed_.cluster)):
                rep.fail({"involution": path})
            if not all(x.is_laurent() for x in nxt.cluster):
                rep.fail({"laurent": path})
            if not nxt.exchange.is_skew_symmetrizable():
                rep.fail({"skew": path})
            seed_ = nxt
    return rep


def suite_properties(samples: int = 500) -> List[Report]:
    out = []
    wd, cd = _wd(SL3)
    nt = transition_matrices(wd, cd).N_tilde
    orders = [lex_lt(3), lex_prec(3), matrix_twisted(nt), dominance_refined(build_epsilon(wd, cd))]
    for order in orders:
        out.append(valuation_axioms_check(order, samples))
    for case in (SL4, SL4P, B2, ("A", 4, (1, 2, 1, 3, 2, 1, 4, 3, 2, 1))):
        out.append(mutation_properties_check(case))
    for case in (SL3, SL3P, SL4, SL4P):
        wd, cd = _wd(case)
        rep = Report("order-refinement", {"word": list(wd.word)})
        eps = build_epsilon(wd, cd)
        eps_mut = mutate_sequence(eps, seq_right_vee(wd))
        if not check_refines(lex_prec(wd.m), eps):
            rep.fail("lex from the right does not refine the initial order")
        if not check_refines(matrix_twisted(transition_matrices(wd, cd).N_tilde), eps_mut):
            rep.fail("twisted order does not refine the mutated order")
        out.append(rep)
    for case, lam in ((SL3, (1, 1)), (SL4, (1, 1, 1))):
        wd, cd = _wd(case)
        V = tuple(seq_right_vee(wd))
        eps = build_epsilon(wd, cd)
        out.append(refinement_independence_check(lam, wd, cd, (), [lex_prec(wd.m), dominance_refined(eps)]))
        eps_mut = mutate_sequence(eps, V)
        out.append(
            refinement_independence_check(
                lam, wd, cd, V, [matrix_twisted(transition_matrices(wd, cd).N_tilde), dominance_refined(eps_mut)]
            )
        )
    return out


SUITES: Dict[str, Callable[[], List[Report]]] = {
    "sl3-table": suite_sl3_table,
    "sl4-matrices": suite_sl4_matrices,
    "quivers": suite_quivers,
    "mutation-sequences": suite_mutation_sequences,
    "chamber-ansatz": suite_chamber_ansatz,
    "rays": suite_rays,
    "tropical": suite_tropical,
    "polytopes": suite_polytopes,
    "saturation": suite_saturation,
    "double-bruhat": suite_double_bruhat,
    "properties": suite_properties,
}


def run_suite(name: str) -> List[Report]:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
