from __future__ import annotations

import random

import pytest

from clusterbody import reference as ref
from clusterbody.cluster import (
    DegenerateChartError,
    FrozenIndexError,
    apply_sequence,
    default_engine,
    g_vector,
    initial_seed,
    initial_seed_abstract,
    make_seed,
    mutate_seed,
    seq_left,
    seq_right_vee,
    tropical_mutate,
    tropical_sequence,
    xhat,
    xhat_mutation_rule,
)
from clusterbody.exchange import ExchangeError, build_epsilon, dominance_refined, lex_prec, mutate_sequence
from clusterbody.minors import generalized_minor
from clusterbody.symfun import LaurentPoly, RationalFn

from conftest import case


def same_seed(a, b):
    return a.exchange == b.exchange and all(x == y for x, y in zip(a.cluster, b.cluster))


class TestMutateSeed:
    def test_a2_first_mutation(self, sl3):
        _, t2, _ = LaurentPoly.gens(3)
        seed = mutate_seed(initial_seed(*sl3), 1)
        assert seed.variable(1) == RationalFn.from_poly(t2)
        assert seed.variable(2) == initial_seed(*sl3).variable(2)

    @pytest.mark.parametrize("fixture", ["sl3", "sl4", "b2"])
    def test_involution(self, fixture, request):
        wd, cd = request.getfixturevalue(fixture)
        seed = initial_seed(wd, cd)
        for k in wd.unfrozen:
            assert same_seed(mutate_seed(mutate_seed(seed, k), k), seed)

    def test_frozen_direction(self, sl3):
        with pytest.raises(FrozenIndexError):
            mutate_seed(initial_seed(*sl3), 2)

    def test_degenerate_chart(self, sl3):
        eps = build_epsilon(*sl3)
        one = LaurentPoly.one(1)
        with pytest.raises(DegenerateChartError):
            make_seed(eps, [one, LaurentPoly.zero(1), one])

    def test_frozen_variables_never_change(self, sl4):
        wd, cd = sl4
        start = initial_seed(wd, cd)
        end = apply_sequence(start, [1, 2, 3, 1, 2])
        for s in wd.frozen:
            assert end.variable(s) == start.variable(s)

    @pytest.mark.parametrize("fixture", ["sl4", "sl4p", "b2"])
    def test_left_sweep_gives_dual_minors(self, fixture, request):
        wd, cd = request.getfixturevalue(fixture)
        engine = default_engine(cd)
        M = engine.point(wd.word)
        end = apply_sequence(initial_seed(wd, cd), seq_left(wd))
        for s in wd.J:
            right = wd.prefix(wd.vee[s]) if wd.vee[s] else ()
            want = generalized_minor(wd.word, right, wd.letter(s), M, engine)
            assert end.variable(s) == RationalFn.from_poly(want)

    @pytest.mark.parametrize("series,n,word", [("A", 2, (1, 2, 1)), ("A", 3, (1, 2, 1, 3, 2, 1)), ("B", 2, (1, 2, 1, 2))])
    def test_laurent_phenomenon(self, series, n, word):
        wd, cd = case(series, n, word)
        rng = random.Random(13)
        start = initial_seed_abstract(build_epsilon(wd, cd))
        for _ in range(15):
            seed = start
            for _ in range(rng.randint(1, 6)):
                seed = mutate_seed(seed, rng.choice(wd.unfrozen))
                assert all(x.is_laurent() for x in seed.cluster)


class TestXhat:
    def test_a2_initial(self, sl3):
        t1, _, t3 = LaurentPoly.gens(3)
        assert xhat(initial_seed(*sl3), 1) == RationalFn(t3, t1)

    def test_frozen(self, sl3):
        with pytest.raises(FrozenIndexError):
            xhat(initial_seed(*sl3), 3)

    @pytest.mark.parametrize("fixture", ["sl4", "b2"])
    def test_mutation_rule(self, fixture, request):
        wd, cd = request.getfixturevalue(fixture)
        rng = random.Random(3)
        seed = initial_seed_abstract(build_epsilon(wd, cd))
        for _ in range(8):
            k = rng.choice(wd.unfrozen)
            nxt = mutate_seed(seed, k)
            for j in wd.unfrozen:
                assert xhat(nxt, j) == xhat_mutation_rule(seed, k, j)
            seed = nxt


class TestGVector:
    def test_own_variable(self, sl4):
        seed = initial_seed_abstract(build_epsilon(*sl4))
        for s in range(6):
            gv = g_vector(LaurentPoly.var(s, 6), seed, lex_prec(6))
            assert gv.g == tuple(int(j == s) for j in range(6))
            assert gv.pointed

    def test_a2_t2(self, sl3):
        # t2 (t1 + t3) = t1 t2 + t2 t3, so t2 = A_1^-1 (A_2 + A_3)
        a1, a2, a3 = LaurentPoly.gens(3)
        seed = initial_seed_abstract(build_epsilon(*sl3))
        gv = g_vector(a1 ** -1 * (a2 + a3), seed, lex_prec(3))
        assert gv.g == (-1, 1, 0)
        assert gv.pointed

    def test_weak_pointedness_records_constant(self, sl3):
        a1, a2, a3 = LaurentPoly.gens(3)
        seed = initial_seed_abstract(build_epsilon(*sl3))
        gv = g_vector(a1 ** -1 * (2 * a2 + a3), seed, lex_prec(3))
        assert gv.weakly_pointed and not gv.pointed and gv.c0 == 2

    def test_not_pointed(self, sl3):
        a1, a2, a3 = LaurentPoly.gens(3)
        seed = initial_seed_abstract(build_epsilon(*sl3))
        assert not g_vector(a2 + a1, seed, lex_prec(3)).weakly_pointed

    def test_order_must_refine(self, sl4):
        wd, cd = sl4
        eps = mutate_sequence(build_epsilon(wd, cd), seq_right_vee(wd))
        seed = initial_seed_abstract(eps)
        with pytest.raises(Exception):
            g_vector(LaurentPoly.var(0, 6), seed, lex_prec(6))

    @pytest.mark.parametrize("path", [(1,), (1, 2), (3, 1, 2), (2, 3, 1, 3)])
    def test_cluster_monomials_and_transport(self, sl4, path):
        wd, cd = sl4
        eps0 = build_epsilon(wd, cd)
        start = initial_seed_abstract(eps0)
        end = apply_sequence(start, path)
        eps_end = end.exchange
        orders = [lex_prec(6), dominance_refined(eps0)]
        for s in range(6):
            x = end.cluster[s].as_laurent()
            gvs = [g_vector(x, start, o) for o in orders]
            assert all(gv.pointed for gv in gvs)
            assert gvs[0].g == gvs[1].g
            e_s = tuple(int(j == s) for j in range(6))
            assert gvs[0].g == tropical_sequence(eps_end, list(reversed(path)), e_s)
        # a product of two compatible variables is a cluster monomial too
        mono = end.cluster[0].as_laurent() * end.cluster[1].as_laurent() ** 2
        gv = g_vector(mono, start, orders[1])
        assert gv.pointed and gv.g == g_vector(mono, start, orders[0]).g

    def test_non_laurent_rejected(self, sl3):
        a1, _, _ = LaurentPoly.gens(3)
        seed = initial_seed_abstract(build_epsilon(*sl3))
        with pytest.raises(Exception):
            g_vector(RationalFn(LaurentPoly.one(3), 1 + a1), seed, lex_prec(3))


class TestSequences:
    def test_a3(self, sl4):
        wd, _ = sl4
        assert seq_left(wd).composition_text() == "mu_1 mu_2 mu_3 mu_1"
        assert seq_right_vee(wd).composition_text() == "mu_3 mu_1 mu_2 mu_3"

    def test_b2(self, b2):
        wd, _ = b2
        assert seq_left(wd).composition_text() == "mu_2 mu_1"
        assert seq_right_vee(wd).composition_text() == "mu_1 mu_2"

    def test_reference_texts(self):
        for (series, n, word), texts in ref.SEQUENCES.items():
            wd, _ = case(series, n, word)
            if "left" in texts:
                assert seq_left(wd).composition_text() == texts["left"]
            assert seq_right_vee(wd).composition_text() == texts["right_vee"]

    def test_letters_once(self):
        wd, _ = case("A", 3, (2, 1, 3))
        assert len(seq_left(wd)) == 0 and len(seq_right_vee(wd)) == 0
        assert seq_left(wd).composition_text() == "id"

    def test_application_order(self, sl4):
        wd, cd = sl4
        seq = seq_left(wd)
        assert list(seq) == list(reversed(seq.composition()))
        eps = build_epsilon(wd, cd)
        assert apply_sequence(initial_seed_abstract(eps), seq).exchange == mutate_sequence(eps, list(seq))


class TestTropical:
    def test_zero(self, sl4):
        eps = build_epsilon(*sl4)
        for k in eps.unfrozen_labels:
            assert tropical_mutate(eps, k, (0,) * 6) == (0,) * 6

    def test_involution(self, sl4):
        from clusterbody.exchange import mutate_matrix

        eps = build_epsilon(*sl4)
        rng = random.Random(100)
        for _ in range(100):
            g = tuple(rng.randint(-4, 4) for _ in range(6))
            k = rng.choice(eps.unfrozen_labels)
            assert tropical_mutate(mutate_matrix(eps, k), k, tropical_mutate(eps, k, g)) == g

    def test_sl3_composite(self, sl3):
        eps = build_epsilon(*sl3)
        rng = random.Random(8)
        for _ in range(100):
            g = tuple(rng.randint(-5, 5) for _ in range(3))
            h = tropical_mutate(eps, 1, g)
            assert (h[0], h[2], h[1]) == ref.sl3_omega_mu1(g)

    def test_frozen_direction(self, sl3):
        with pytest.raises(FrozenIndexError):
            tropical_mutate(build_epsilon(*sl3), 2, (0, 0, 0))


def test_abstract_chart_for_other_types():
    wd, cd = case("D", 4, (1, 2, 3, 1, 2, 3))
    assert default_engine(cd) is None
    seed = initial_seed_abstract(build_epsilon(wd, cd))
    assert apply_sequence(seed, [1, 2, 1]).chart == "initial"
    with pytest.raises(Exception):
        initial_seed(wd, cd)


def test_seed_json(sl3):
    import json

    data = json.loads(initial_seed(*sl3).to_json())
    assert data["cluster"] == {"1": "t1 + t3", "2": "t1*t2", "3": "t2*t3"}
    assert data["exchange"]["rows"][0] == [0, -1, 1]
    assert data["exchange"]["frozen"] == [False, True, True]


def test_exchange_error_is_value_error():
    assert issubclass(ExchangeError, ValueError)
