"""Literature reference values used by the check suites.

Inequalities are pairs ``(a, b)`` meaning ``a . x >= b``; the builders take the
weight coordinates ``(lambda_1, ..., lambda_n)``.  Arrow sets list ``(s, t)``
for an arrow ``s -> t``; extra frozen vertices use the labels of
:func:`clusterbody.exchange.bar`.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Sequence, Tuple

Ineq = Tuple[Tuple[int, ...], int]


def _pos(x):
    return max(x, 0)


# valuation table: SL_3, word (1, 2, 1), lambda = varpi_1 + varpi_2 -------------

SL3_TABLE: List[Tuple[str, Tuple[int, int, int], Tuple[int, int, int]]] = [
    # function, v_low, v_tilde_low
    ("1", (0, 0, 0), (0, 0, 0)),
    ("t1 + t3", (0, 0, 1), (1, 0, 0)),
    ("t2", (0, 1, 0), (0, 1, 0)),
    ("t1*t2", (1, 1, 0), (1, 1, 0)),
    ("t2*t3", (0, 1, 1), (0, 1, 1)),
    ("t1^2*t2 + t1*t2*t3", (1, 1, 1), (2, 1, 0)),
    ("t2^2*t3", (0, 2, 1), (0, 2, 1)),
    ("t1*t2^2*t3", (1, 2, 1), (1, 2, 1)),
]

# transition matrices -------------------------------------------------------------

M_SL3 = ((1, 0, 0), (1, 1, 0), (0, 1, 1))

M_SL4 = (
    (1, 0, 0, 0, 0, 0),
    (1, 1, 0, 0, 0, 0),
    (0, 1, 1, 0, 0, 0),
    (1, 1, 0, 1, 0, 0),
    (0, 1, 1, 1, 1, 0),
    (0, 0, 0, 1, 1, 1),
)

N_SL4_REF = (
    (0, 1, 0, 1, 1, 0),
    (0, 0, 0, 1, 0, 0),
    (0, 0, 0, 1, 1, 0),
    (1, 1, 0, 1, 0, 0),
    (0, 1, 1, 1, 1, 0),
    (0, 0, 0, 1, 1, 1),
)

# mutation sequences in composition notation (rightmost applied first) -----------

SEQUENCES: Dict[Tuple[str, int, Tuple[int, ...]], Dict[str, str]] = {
    ("A", 2, (1, 2, 1)): {"right_vee": "mu_1"},
    ("A", 2, (2, 1, 2)): {"right_vee": "mu_1"},
    ("A", 3, (1, 2, 1, 3, 2, 1)): {"left": "mu_1 mu_2 mu_3 mu_1", "right_vee": "mu_3 mu_1 mu_2 mu_3"},
    ("A", 3, (2, 1, 2, 3, 2, 1)): {"left": "mu_1 mu_2 mu_3 mu_1", "right_vee": "mu_3 mu_1 mu_2 mu_3"},
    ("B", 2, (1, 2, 1, 2)): {"left": "mu_2 mu_1", "right_vee": "mu_1 mu_2"},
}

# quiver arrow sets ------------------------------------------------------------------
#
# kinds: "initial" (unfrozen-incident arrows of the word's matrix), "left" and
# "right_vee" (after the full sweeps), "left_first_block" and "left_extended"
# (matrix with frozen rows, frozen-frozen arrows included), "double" (matrix
# with one extra frozen vertex per letter).

QUIVERS: Dict[Tuple[str, int, Tuple[int, ...], str], List[Tuple]] = {
    ("A", 2, (1, 2, 1), "initial"): [(1, 2), (3, 1)],
    ("A", 2, (2, 1, 2), "initial"): [(1, 2), (3, 1)],
    ("A", 3, (1, 2, 1, 3, 2, 1), "initial"): [(1, 2), (2, 3), (2, 4), (3, 1), (3, 5), (5, 2), (6, 3)],
    ("A", 3, (2, 1, 2, 3, 2, 1), "initial"): [(1, 2), (2, 5), (3, 1), (3, 4), (5, 3), (6, 2)],
    ("A", 4, (1, 2, 1, 3, 2, 1, 4, 3, 2, 1), "initial"): [
        (1, 2), (2, 3), (2, 4), (3, 1), (3, 5), (4, 5), (4, 7), (5, 2),
        (5, 6), (5, 8), (6, 3), (6, 9), (8, 4), (9, 5), (10, 6),
    ],
    ("B", 2, (1, 2, 1, 2), "initial"): [(1, 2), (2, 3), (3, 1), (4, 2)],
    ("A", 3, (1, 2, 1, 3, 2, 1), "left"): [(1, 3), (2, 1), (2, 5), (3, 2), (3, 6), (4, 2), (5, 3)],
    ("A", 3, (2, 1, 2, 3, 2, 1), "left"): [(1, 3), (2, 6), (3, 2), (3, 5), (4, 1), (6, 3)],
    ("B", 2, (1, 2, 1, 2), "left"): [(1, 2), (1, 3), (2, 4), (4, 1)],
    ("A", 3, (1, 2, 1, 3, 2, 1), "right_vee"): [(1, 3), (1, 6), (2, 1), (3, 2), (3, 5), (4, 3), (5, 1)],
    ("A", 3, (2, 1, 2, 3, 2, 1), "right_vee"): [(1, 3), (2, 6), (3, 2), (3, 4), (4, 1), (5, 3)],
    ("B", 2, (1, 2, 1, 2), "right_vee"): [(1, 2), (2, 4), (3, 2)],
    ("A", 3, (1, 2, 1, 3, 2, 1), "left_first_block"): [
        (1, 5), (2, 1), (2, 4), (3, 1), (3, 6), (5, 2), (5, 3), (6, 5),
    ],
    ("A", 3, (2, 1, 2, 3, 2, 1), "left_first_block"): [
        (1, 4), (2, 3), (3, 1), (3, 5), (4, 3), (5, 4), (6, 2),
    ],
    ("B", 2, (1, 2, 1, 2), "left_first_block"): [(1, 3), (2, 1), (4, 2)],
    ("A", 3, (1, 2, 1, 3, 2, 1), "left_extended"): [
        (1, 3), (2, 1), (2, 5), (3, 2), (3, 6), (4, 2), (5, 3), (5, 4), (6, 5),
    ],
    ("A", 3, (2, 1, 2, 3, 2, 1), "left_extended"): [
        (1, 3), (2, 6), (3, 2), (3, 5), (4, 1), (5, 4), (6, 3),
    ],
    ("B", 2, (1, 2, 1, 2), "left_extended"): [(1, 2), (1, 3), (2, 4), (4, 1)],
    ("A", 4, (1, 2, 1, 3, 2, 1, 4, 3, 2, 1), "double"): [
        (1, 2), (1, "1bar"), (2, 3), (2, 4), (2, "2bar"), (3, 1), (3, 5), (4, 5),
        (4, 7), (4, "3bar"), (5, 2), (5, 6), (5, 8), (6, 3), (6, 9), (7, "4bar"),
        (8, 4), (9, 5), (10, 6), ("2bar", 1), ("3bar", 2), ("4bar", 4),
    ],
}

# inequality systems ---------------------------------------------------------------


def _nonneg(m: int) -> List[Ineq]:
    return [(tuple(1 if j == k else 0 for j in range(m)), 0) for k in range(m)]


def sl3_string(lam: Sequence[int], word: Tuple[int, ...] = (1, 2, 1)) -> List[Ineq]:
    """String polytope of ``SL_3``; for ``(2, 1, 2)`` the weights swap."""
    l1, l2 = lam if word == (1, 2, 1) else (lam[1], lam[0])
    return _nonneg(3) + [
        ((0, 0, -1), -l1),
        ((0, 1, -1), 0),
        ((0, -1, 1), -l2),
        ((-1, 1, -2), -l1),
    ]


def sl3_seed(lam: Sequence[int], word: Tuple[int, ...] = (1, 2, 1)) -> List[Ineq]:
    """Polytope of the word's own seed for ``SL_3``."""
    l1, l2 = lam if word == (1, 2, 1) else (lam[1], lam[0])
    return [
        ((0, 0, 1), 0),
        ((0, 0, -1), -l1),
        ((0, 1, 0), 0),
        ((0, -1, 0), -l2),
        ((1, 1, 0), 0),
        ((-1, 0, -1), -l1),
    ]


def sl4_string(lam: Sequence[int]) -> List[Ineq]:
    l1, l2, l3 = lam
    return _nonneg(6) + [
        ((0, 0, 0, 0, 0, -1), -l1),
        ((0, 0, 0, 0, 1, -1), 0),
        ((0, 0, 0, 0, -1, 1), -l2),
        ((0, 0, 0, 1, -1, 0), 0),
        ((0, 0, 0, -1, 1, 0), -l3),
        ((0, 0, -1, 0, 1, -2), -l1),
        ((0, 1, -1, 0, 0, 0), 0),
        ((0, -1, 1, 1, -2, 1), -l2),
        ((-1, 1, -2, 0, 1, -2), -l1),
    ]


def sl4_seed(lam: Sequence[int]) -> List[Ineq]:
    l1, l2, l3 = lam
    return [
        ((0, 0, 0, 0, 0, 1), 0),
        ((0, 0, 0, 0, 0, -1), -l1),
        ((0, 0, 0, 0, 1, 0), 0),
        ((0, 0, 0, 0, -1, 0), -l2),
        ((0, 0, 0, 1, 0, 0), 0),
        ((0, 0, 0, -1, 0, 0), -l3),
        ((0, 0, 1, 0, 1, 0), 0),
        ((0, 0, -1, 0, 0, -1), -l1),
        ((0, 1, 0, 1, 0, 0), 0),
        ((0, -1, 0, 0, -1, 0), -l2),
        ((1, 1, 0, 1, 0, 0), 0),
        ((-1, 0, -1, 0, 0, -1), -l1),
    ]


def sl4_nz(lam: Sequence[int]) -> List[Ineq]:
    l1, l2, l3 = lam
    return _nonneg(6) + [
        ((0, 0, 0, 0, 0, -1), -l1),
        ((0, 0, 0, 0, -1, 1), -l2),
        ((0, 0, 0, -1, 1, 0), -l3),
        ((0, 0, -1, 0, 1, 0), 0),
        ((0, 0, -1, 0, 0, 0), -l2),
        ((0, -1, 0, 1, 0, 0), 0),
        ((0, -1, 1, 0, 0, 0), -l3),
        ((-1, 1, 0, 0, 0, 0), 0),
        ((-1, 0, 0, 0, 0, 0), -l3),
    ]


def sl4_mut_ref(lam: Sequence[int]) -> List[Ineq]:
    l1, l2, l3 = lam
    return [
        ((0, 0, 0, 0, 0, 1), 0),
        ((0, 0, 0, 0, 0, -1), -l1),
        ((0, 0, 0, 0, 1, 0), 0),
        ((0, 0, 0, 0, -1, 0), -l2),
        ((0, 0, 0, 1, 0, 0), 0),
        ((0, 0, 0, -1, 0, 0), -l3),
        ((1, 0, 0, 0, 1, 0), 0),
        ((-1, 0, 0, -1, 0, 0), -l3),
        ((1, 0, 1, 0, 0, 1), 0),
        ((-1, 0, -1, 0, -1, 0), -l2),
        ((0, 1, 1, 0, 0, 1), 0),
        ((0, -1, 0, -1, 0, 0), -l3),
    ]


# tropical maps in closed form ----------------------------------------------------


def sl3_omega_mu1(g: Sequence[int]) -> Tuple[int, int, int]:
    """Tropical mutation at 1 followed by swapping the last two coordinates."""
    g1, g2, g3 = g
    return (-g1, g3 + _pos(g1), g2 - _pos(-g1))


def sl4_right_vee(g: Sequence[int]) -> Tuple[int, ...]:
    """Tropicalized dual right sweep for ``SL_4``, word ``(1, 2, 1, 3, 2, 1)``."""
    g1, g2, g3, g4, g5, g6 = g
    g3p = -g3 + _pos(g2 + _pos(g3)) - _pos(-g1 + _pos(-g3))
    return (
        -g1 + _pos(-g3) - _pos(-g3p),
        -g2 - _pos(g3) + _pos(g3p),
        -g3p,
        g4 - _pos(-g2 - _pos(g3)) - _pos(-g3p),
        g5 - _pos(-g3) + _pos(g3p),
        g6 + _pos(g3) + _pos(g1 - _pos(-g3)),
    )


CLOSED_MAPS: Dict[str, Callable] = {"sl3-omega-mu1": sl3_omega_mu1, "sl4-right-vee": sl4_right_vee}
