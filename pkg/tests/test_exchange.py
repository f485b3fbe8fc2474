from __future__ import annotations

import random

import pytest

from clusterbody import reference as ref
from clusterbody.cluster import seq_left
from clusterbody.exchange import (
    ExchangeError,
    ExchangeMatrix,
    bar,
    build_epsilon,
    build_epsilon_double,
    check_refines,
    dominance_leq,
    dominance_refined,
    first_line_closed_form,
    left_closed_form,
    left_sequence_block,
    lex_lt,
    lex_prec,
    matrix_twisted,
    mutate_matrix,
    mutate_sequence,
    quiver_dot,
)
from clusterbody.okounkov import transition_matrices
from clusterbody.rootsys import cartan, reduced_words_up_to, word_data
from clusterbody.cluster import seq_right_vee

from conftest import case


def arrows(eps, frozen_pairs=False):
    return {(s, t) for s, t, _ in eps.arrows(frozen_pairs)}


class TestBuildEpsilon:
    def test_a2_row(self, sl3):
        eps = build_epsilon(*sl3)
        assert eps.row(1) == (0, -1, 1)
        assert arrows(eps) == {(1, 2), (3, 1)}

    def test_a3_second_word(self):
        eps = build_epsilon(*case("A", 3, (2, 1, 2, 3, 2, 1)))
        assert arrows(eps) == {(3, 1), (5, 3), (1, 2), (2, 5), (3, 4), (6, 2)}

    def test_b2(self, b2):
        eps = build_epsilon(*b2)
        assert arrows(eps) == {(1, 2), (2, 3), (3, 1), (4, 2)}
        assert eps.is_skew_symmetrizable()
        # arrows between a short and a long letter carry weight 2 one way
        assert {abs(eps.entry(1, 2)), abs(eps.entry(2, 1))} == {1, 2}

    def test_full_rank_and_frozen_block(self, sl4):
        eps = build_epsilon(*sl4)
        assert eps.full_rank
        for s in eps.frozen_labels:
            for t in eps.frozen_labels:
                assert eps.entry(s, t) == 0

    def test_rejects_non_reduced(self):
        cd = cartan("A", 2)
        with pytest.raises(ExchangeError):
            build_epsilon(word_data((1, 2, 1, 2), cd), cd)

    def test_json_round_trip(self, b2):
        eps = build_epsilon(*b2)
        assert ExchangeMatrix.from_dict(eps.to_dict()) == eps


class TestMutation:
    def test_involution_random(self):
        rng = random.Random(7)
        for word, series, n in [((1, 2, 1, 3, 2, 1), "A", 3), ((1, 2, 1, 2), "B", 2), ((1, 2, 1, 3, 2, 1, 3, 2, 3), "C", 3)]:
            eps = build_epsilon(*case(series, n, word))
            for _ in range(20):
                k = rng.choice(eps.unfrozen_labels)
                assert mutate_matrix(mutate_matrix(eps, k), k) == eps
                eps = mutate_matrix(eps, k)

    def test_frozen_direction_rejected(self, sl3):
        with pytest.raises(ExchangeError):
            mutate_matrix(build_epsilon(*sl3), 3)

    @pytest.mark.parametrize("series,n,word", [("A", 4, (1, 2, 1, 3, 2, 1, 4, 3, 2, 1)), ("B", 3, (1, 2, 1, 2, 3, 2, 1, 2, 3)), ("D", 4, (1, 2, 3, 1, 2, 3, 4, 3, 1, 2, 3, 4))])
    def test_skew_symmetrizable_and_rank_preserved(self, series, n, word):
        eps = build_epsilon(*case(series, n, word))
        rng = random.Random(11)
        for _ in range(10):
            for _ in range(rng.randint(1, 12)):
                eps = mutate_matrix(eps, rng.choice(eps.unfrozen_labels))
                assert eps.is_skew_symmetrizable()
                assert eps.full_rank

    def test_a3_left_sweep_quiver(self, sl4):
        wd, cd = sl4
        eps = mutate_sequence(build_epsilon(wd, cd), seq_left(wd))
        assert arrows(eps) == set(ref.QUIVERS[("A", 3, wd.word, "left")])

    def test_b2_left_sweep_quiver(self, b2):
        wd, cd = b2
        eps = mutate_sequence(build_epsilon(wd, cd), seq_left(wd))
        assert arrows(eps) == {(1, 2), (1, 3), (2, 4), (4, 1)}


def _a3_words():
    cd = cartan("A", 3)
    return [w for words in reduced_words_up_to(cd, 6).values() for w in words]


class TestClosedForms:
    @pytest.mark.parametrize("word", _a3_words())
    def test_left_sweep_all_a3_words(self, word):
        wd, cd = case("A", 3, word)
        assert left_closed_form(wd, cd) == mutate_sequence(build_epsilon(wd, cd), seq_left(wd))

    @pytest.mark.parametrize("word", [w for w in _a3_words() if w.count(w[0]) > 1])
    def test_first_block_all_a3_words(self, word):
        wd, cd = case("A", 3, word)
        first = mutate_sequence(build_epsilon(wd, cd), left_sequence_block(wd, 1))
        assert first_line_closed_form(wd, cd) == first

    @pytest.mark.parametrize("series,n,word", [("B", 2, (1, 2, 1, 2)), ("C", 3, (1, 2, 1, 3, 2, 1, 3, 2, 3)), ("B", 3, (1, 2, 1, 2, 3, 2, 1, 2, 3))])
    def test_left_sweep_non_simply_laced(self, series, n, word):
        wd, cd = case(series, n, word)
        assert left_closed_form(wd, cd) == mutate_sequence(build_epsilon(wd, cd), seq_left(wd))
        assert first_line_closed_form(wd, cd) == mutate_sequence(build_epsilon(wd, cd), left_sequence_block(wd, 1))

    def test_first_block_needs_repeated_letter(self):
        wd, cd = case("A", 3, (3, 2, 1, 2))
        with pytest.raises(ExchangeError):
            first_line_closed_form(wd, cd)


class TestDominance:
    def test_reflexive(self, sl3):
        eps = build_epsilon(*sl3)
        assert dominance_leq(eps, (2, 0, -1), (2, 0, -1))

    def test_row_dominated_by_zero(self, sl3):
        eps = build_epsilon(*sl3)
        assert dominance_leq(eps, (0, -1, 1), (0, 0, 0))
        assert not dominance_leq(eps, (0, 0, 0), (0, -1, 1))

    def test_incomparable(self, sl3):
        eps = build_epsilon(*sl3)
        assert not dominance_leq(eps, (1, 0, 0), (0, 0, 0))
        assert not dominance_leq(eps, (0, 0, 0), (1, 0, 0))

    def test_not_full_rank(self):
        eps = ExchangeMatrix((1, 2), (False, False), (1, 1), ((0, 0), (0, 0)))
        with pytest.raises(ExchangeError):
            dominance_leq(eps, (0, 0), (0, 0))


class TestOrders:
    def test_lex_variants(self):
        assert lex_lt(3).less((0, 0, 1), (1, 0, 0))
        assert lex_prec(3).less((1, 0, 0), (0, 0, 1))

    def test_lex_prec_refines_a3(self, sl4):
        assert check_refines(lex_prec(6), build_epsilon(*sl4))

    def test_twisted_refines_mutated(self, sl4):
        wd, cd = sl4
        eps_mut = mutate_sequence(build_epsilon(wd, cd), seq_right_vee(wd))
        assert not check_refines(lex_lt(6), eps_mut)
        assert check_refines(matrix_twisted(transition_matrices(wd, cd).N_tilde), eps_mut)

    def test_dominance_refined_refines(self, sl4):
        wd, cd = sl4
        eps = mutate_sequence(build_epsilon(wd, cd), [1, 2, 3])
        assert check_refines(dominance_refined(eps), eps)

    def test_zero_dimensional(self):
        empty = ExchangeMatrix((), (), (), ())
        assert check_refines(lex_lt(0), empty)

    def test_orders_respect_addition(self):
        rng = random.Random(3)
        orders = [lex_lt(3), lex_prec(3), matrix_twisted(((1, 1, 0), (0, 1, 0), (0, 2, 1)))]
        for order in orders:
            for _ in range(200):
                a, b, c = ([rng.randint(-3, 3) for _ in range(3)] for _ in range(3))
                ac = [x + y for x, y in zip(a, c)]
                bc = [x + y for x, y in zip(b, c)]
                assert order.less(a, b) == order.less(ac, bc)

    def test_twisting_matrix_must_be_unimodular(self):
        with pytest.raises(ExchangeError):
            matrix_twisted(((2, 0), (0, 1)))


class TestDouble:
    def test_a2_entry(self, sl3):
        eps = build_epsilon_double(*sl3)
        assert eps.entry(1, bar(1)) == -1

    @pytest.mark.parametrize("series,n,word", [("A", 2, (1, 2, 1)), ("A", 3, (1, 2, 1, 3, 2, 1)), ("B", 2, (1, 2, 1, 2))])
    def test_deleting_bars_recovers_epsilon(self, series, n, word):
        wd, cd = case(series, n, word)
        big = build_epsilon_double(wd, cd)
        assert big.restrict(tuple(wd.J)) == build_epsilon(wd, cd)

    def test_a4_quiver(self):
        word = (1, 2, 1, 3, 2, 1, 4, 3, 2, 1)
        eps = build_epsilon_double(*case("A", 4, word))
        fr = set(eps.frozen_labels)
        want = {(s, t) for s, t in ref.QUIVERS[("A", 4, word, "double")] if not (s in fr and t in fr)}
        assert arrows(eps) == want


def test_quiver_dot(sl3):
    text = quiver_dot(build_epsilon(*sl3))
    assert text.startswith("digraph quiver {")
    assert '"1" -> "2";' in text and '"3" -> "1";' in text
    assert '"2" [shape=box];' in text and '"1" [shape=ellipse];' in text


def test_quiver_dot_labels_weights(b2):
    text = quiver_dot(build_epsilon(*b2))
    assert 'label="' in text
