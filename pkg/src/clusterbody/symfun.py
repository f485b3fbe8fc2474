"""Exact multivariate Laurent polynomials and rational functions over Q.

Polynomials are sparse maps from exponent tuples to rational coefficients.
Rational functions are kept as numerator/denominator pairs; the denominator is
stripped of monomial content and of any exact polynomial factor of the
numerator, which is enough to recognise Laurent polynomials without a
multivariate gcd.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

Exp = Tuple[int, ...]
Coeff = Union[int, Fraction]


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _cdiv(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _norm(Fraction(a) / Fraction(b))


class SymfunError(ArithmeticError):
    pass


class LaurentPoly:
    """A Laurent polynomial in ``nvars`` variables ``t1, ..., tm``."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Optional[Dict[Exp, Coeff]] = None, nvars: int = 0):
        self.nvars = nvars
        if terms is None:
            self.terms: Dict[Exp, Coeff] = {}
        else:
            self.terms = {e: _norm(c) for e, c in terms.items() if c != 0}

    # construction -----------------------------------------------------------
    @classmethod
    def _raw(cls, terms: Dict[Exp, Coeff], nvars: int) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        return p

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw({}, nvars)

    @classmethod
    def const(cls, c: Coeff, nvars: int) -> "LaurentPoly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls._raw({(0,) * nvars: 1}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "LaurentPoly":
        """The variable ``t_{i+1}`` (0-based index)."""
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): 1}, nvars)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: Coeff = 1) -> "LaurentPoly":
        return cls({tuple(int(x) for x in exp): coeff}, len(exp))

    @classmethod
    def gens(cls, nvars: int) -> List["LaurentPoly"]:
        return [cls.var(i, nvars) for i in range(nvars)]

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * self.nvars, 0)

    def single_term(self) -> Tuple[Exp, Coeff]:
        if len(self.terms) != 1:
            raise SymfunError("not a monomial")
        return next(iter(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise SymfunError("arity mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e, 0) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = _norm(v)
        return LaurentPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly._raw({e: _norm(c * other) for e, c in self.terms.items()}, self.nvars)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out: Dict[Exp, Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v == 0:
                    out.pop(e, None)
                else:
                    out[e] = v
        return LaurentPoly._raw({e: _norm(c) for e, c in out.items()}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise SymfunError("negative power of a non-monomial")
            e, c = self.single_term()
            return LaurentPoly({tuple(k * x for x in e): Fraction(1) / Fraction(c) ** (-k)}, self.nvars)
        out = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``t^exp``."""
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()}, self.nvars
        )

    def scale(self, c: Coeff) -> "LaurentPoly":
        return self * c

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other, self.nvars)
        if isinstance(other, RationalFn):
            return other == self
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    # structure --------------------------------------------------------------
    def min_exponent(self) -> Exp:
        """Componentwise minimum exponent (the monomial content)."""
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self.terms))

    def max_exponent(self) -> Exp:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(col) for col in zip(*self.terms))

    def is_polynomial(self) -> bool:
        return all(x >= 0 for x in self.min_exponent())

    def exponents(self) -> List[Exp]:
        return list(self.terms)

    def coefficient(self, exp: Sequence[int]) -> Coeff:
        return self.terms.get(tuple(exp), 0)

    def weight(self, grading: Sequence[Sequence[int]]) -> Optional[Tuple[int, ...]]:
        """Common multidegree of all terms under ``grading`` (one vector per variable)."""
        degs = set()
        for e in self.terms:
            degs.add(tuple(sum(e[k] * grading[k][j] for k in range(self.nvars)) for j in range(len(grading[0]))))
        if len(degs) != 1:
            return None
        return degs.pop()

    def exact_divide(self, other: "LaurentPoly") -> Optional["LaurentPoly"]:
        """Return ``self / other`` if it is a Laurent polynomial, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.nvars)
        if other.is_monomial():
            e, c = other.single_term()
            neg = tuple(-x for x in e)
            return LaurentPoly._raw(
                {tuple(a + b for a, b in zip(ex, neg)): _cdiv(cc, c) for ex, cc in self.terms.items()},
                self.nvars,
            )
        gc = other.min_exponent()
        fc = self.min_exponent()
        g = {tuple(a - b for a, b in zip(e, gc)): c for e, c in other.terms.items()}
        f = {tuple(a - b for a, b in zip(e, fc)): c for e, c in self.terms.items()}
        q = _poly_divide(f, g)
        if q is None:
            return None
        off = tuple(a - b for a, b in zip(fc, gc))
        return LaurentPoly._raw({tuple(a + b for a, b in zip(e, off)): c for e, c in q.items()}, self.nvars)

    def evaluate(self, point: Sequence) -> Fraction:
        out = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            out += term
        return out

    def extend(self, nvars: int, offset: int = 0) -> "LaurentPoly":
        """Embed into a ring with more variables, placing ours at ``offset``."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            ne[offset:offset + self.nvars] = e
            out[tuple(ne)] = c
        return LaurentPoly._raw(out, nvars)

    # text and json ----------------------------------------------------------
    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({to_text(self)!r}, nvars={self.nvars})"

    def to_json(self) -> list:
        return [[list(e), str(c)] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data: list, nvars: int) -> "LaurentPoly":
        return cls({tuple(e): Fraction(c) for e, c in data}, nvars)


def _poly_divide(f: Dict[Exp, Coeff], g: Dict[Exp, Coeff]) -> Optional[Dict[Exp, Coeff]]:
    # exact division by one polynomial in lex order; None as soon as a leading
    # term is not divisible, since that term would stay in the remainder
    lg = max(g)
    cg = g[lg]
    rest = [(e, c) for e, c in g.items() if e != lg]
    r = dict(f)
    q: Dict[Exp, Coeff] = {}
    while r:
        lr = max(r)
        diff = tuple(a - b for a, b in zip(lr, lg))
        if min(diff) < 0:
            return None
        c = _cdiv(r.pop(lr), cg)
        q[diff] = c
        for e, ce in rest:
            key = tuple(a + b for a, b in zip(e, diff))
            v = r.get(key, 0) - c * ce
            if v == 0:
                r.pop(key, None)
            else:
                r[key] = _norm(v)
    return q


class RationalFn:
    """A quotient of Laurent polynomials in canonical form.

    The denominator is either 1 or a polynomial without monomial content whose
    lex-leading coefficient is 1 and which does not divide the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: Optional[LaurentPoly] = None):
        if den is None:
            den = LaurentPoly.one(num.nvars)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.nvars != den.nvars:
            raise SymfunError("arity mismatch")
        self.num, self.den = _canonical(num, den)

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalFn":
        r = cls.__new__(cls)
        r.num = p
        r.den = LaurentPoly.one(p.nvars)
        return r

    @classmethod
    def const(cls, c: Coeff, nvars: int) -> "RationalFn":
        return cls.from_poly(LaurentPoly.const(c, nvars))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_constant()

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise SymfunError("not a Laurent polynomial")
        return self.num * _cdiv(1, self.den.constant_term())

    def is_monomial(self) -> bool:
        return self.is_laurent() and self.num.is_monomial()

    def _coerce(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFn.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RationalFn.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RationalFn(self.num + o.num, self.den)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        r = RationalFn.__new__(RationalFn)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "RationalFn":
        if k < 0:
            return RationalFn(self.den ** (-k), self.num ** (-k))
        return RationalFn(self.num ** k, self.den ** k)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    __hash__ = None  # equality is by cross-multiplication

    def __str__(self) -> str:
        if self.is_laurent():
            return to_text(self.as_laurent())
        return f"({to_text(self.num)})/({to_text(self.den)})"

    def __repr__(self) -> str:
        return f"RationalFn({str(self)!r})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def _canonical(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    n = num.nvars
    if num.is_zero():
        return num, LaurentPoly.one(n)
    if den.is_monomial():
        q = num.exact_divide(den)
        return q, LaurentPoly.one(n)
    c = den.min_exponent()
    neg = tuple(-x for x in c)
    den = den.shift(neg)
    num = num.shift(neg)
    lead = den.terms[max(den.terms)]
    if lead != 1:
        inv = _cdiv(1, lead)
        den = den * inv
        num = num * inv
    q = num.exact_divide(den)
    if q is not None:
        return q, LaurentPoly.one(n)
    return num, den


def as_rational(f) -> RationalFn:
    if isinstance(f, RationalFn):
        return f
    if isinstance(f, LaurentPoly):
        return RationalFn.from_poly(f)
    raise TypeError(f"cannot convert {type(f).__name__} to RationalFn")


def _pair(f, g) -> Tuple[RationalFn, RationalFn]:
    # a bare scalar takes the arity of the other operand
    if isinstance(f, (int, Fraction)):
        g = as_rational(g)
        return RationalFn.const(f, g.nvars), g
    if isinstance(g, (int, Fraction)):
        f = as_rational(f)
        return f, RationalFn.const(g, f.nvars)
    return as_rational(f), as_rational(g)


def add(f, g) -> RationalFn:
    a, b = _pair(f, g)
    return a + b


def mul(f, g) -> RationalFn:
    a, b = _pair(f, g)
    return a * b


def div(f, g) -> RationalFn:
    a, b = _pair(f, g)
    return a / b


def is_laurent(f) -> bool:
    return as_rational(f).is_laurent()


def monomial_product(factors: Sequence, exps: Sequence[int], nvars: int) -> RationalFn:
    """``prod factors[j] ** exps[j]`` for rational or Laurent factors."""
    num = LaurentPoly.one(nvars)
    den = LaurentPoly.one(nvars)
    for f, k in zip(factors, exps):
        if k == 0:
            continue
        f = as_rational(f)
        if k > 0:
            num = num * f.num ** k
            den = den * f.den ** k
        else:
            num = num * f.den ** (-k)
            den = den * f.num ** (-k)
    return RationalFn(num, den)


def substitute(f: LaurentPoly, images: Sequence) -> RationalFn:
    """Replace ``t_j`` by ``images[j]`` in ``f``.

    Negative exponents are cleared with one common denominator, so only a
    single exact division is attempted at the end.
    """
    imgs = [as_rational(x) for x in images]
    if not imgs:
        raise SymfunError("need at least one image")
    n_out = imgs[0].nvars
    if f.is_zero():
        return RationalFn.from_poly(LaurentPoly.zero(n_out))
    lo = f.min_exponent()
    hi = f.max_exponent()
    # with t_j = a_j / b_j each term times a^-lo b^hi is a^(e-lo) b^(hi-e)
    cache: Dict[Tuple[int, str, int], LaurentPoly] = {}

    def power(j: int, which: str, k: int) -> LaurentPoly:
        key = (j, which, k)
        if key not in cache:
            base = imgs[j].num if which == "n" else imgs[j].den
            if k == 0:
                cache[key] = LaurentPoly.one(n_out)
            elif k == 1:
                cache[key] = base
            else:
                cache[key] = power(j, which, k - 1) * base
        return cache[key]

    trivial = [imgs[j].den == LaurentPoly.one(n_out) for j in range(f.nvars)]
    num = LaurentPoly.zero(n_out)
    for e, c in f.terms.items():
        term = LaurentPoly.const(c, n_out)
        for j in range(f.nvars):
            a = e[j] - lo[j]
            b = hi[j] - e[j]
            if a:
                term = term * power(j, "n", a)
            if b and not trivial[j]:
                term = term * power(j, "d", b)
        num = num + term
    den = LaurentPoly.one(n_out)
    for j in range(f.nvars):
        if lo[j] < 0:
            den = den * power(j, "n", -lo[j])
        elif lo[j] > 0:
            num = num * power(j, "n", lo[j])
        if not trivial[j]:
            if hi[j] > 0:
                den = den * power(j, "d", hi[j])
            elif hi[j] < 0:
                num = num * power(j, "d", -hi[j])
    return RationalFn(num, den)


def lowest_term(f, order) -> Exp:
    """Exponent of the order-minimal monomial of ``f``; additive on quotients.

    ``order`` is any object with a ``key(exp)`` method (see ``exchange.TotalOrderSpec``).
    """
    if isinstance(f, LaurentPoly):
        if f.is_zero():
            raise SymfunError("valuation of zero is undefined")
        return min(f.terms, key=order.key)
    f = as_rational(f)
    if f.is_zero():
        raise SymfunError("valuation of zero is undefined")
    a = min(f.num.terms, key=order.key)
    b = min(f.den.terms, key=order.key)
    return tuple(x - y for x, y in zip(a, b))


def lowest_coefficient(f: LaurentPoly, order) -> Coeff:
    return f.terms[min(f.terms, key=order.key)]


def echelon_by_order(polys: Iterable[LaurentPoly], order) -> Dict[Exp, LaurentPoly]:
    """Basis of the span of ``polys`` with pairwise distinct lowest terms.

    Returns a map from lowest-term exponent to a basis element with that
    lowest term; the keys form the valuation image of the span.
    """
    pivots: Dict[Exp, LaurentPoly] = {}
    for p in polys:
        cur = p
        while not cur.is_zero():
            e = min(cur.terms, key=order.key)
            piv = pivots.get(e)
            if piv is None:
                pivots[e] = cur
                break
            cur = cur - piv * _cdiv(cur.terms[e], piv.terms[e])
    return pivots


def span_rank(polys: Sequence[LaurentPoly]) -> int:
    """Dimension of the Q-span of ``polys``."""
    class _Lex:
        @staticmethod
        def key(e):
            return e
    return len(echelon_by_order(polys, _Lex))


def in_span(f: LaurentPoly, basis: Dict[Exp, LaurentPoly], order) -> bool:
    """Whether ``f`` lies in the span of an echelon basis built with ``order``."""
    cur = f
    while not cur.is_zero():
        e = min(cur.terms, key=order.key)
        piv = basis.get(e)
        if piv is None:
            return False
        cur = cur - piv * _cdiv(cur.terms[e], piv.terms[e])
    return True


# text form ------------------------------------------------------------------

def _fmt_coeff(c: Coeff) -> str:
    return str(c)


def to_text(p: LaurentPoly, names: Optional[Sequence[str]] = None) -> str:
    """Render as ``c*t1^a1*...*tm^am + ...`` in lex-descending order."""
    if p.is_zero():
        return "0"
    names = names or [f"t{i + 1}" for i in range(p.nvars)]
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k != 0
        )
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        else:
            body = _fmt_coeff(a)
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def parse(text: str, nvars: int) -> LaurentPoly:
    """Parse the text form produced by :func:`to_text`."""
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero(nvars)
    # split on + or - that are not part of an exponent
    tokens = re.split(r"(?<![\^])\s*([+-])\s*", text)
    if tokens and tokens[0] == "":
        tokens = tokens[1:]
    else:
        tokens = ["+"] + tokens
    out = LaurentPoly.zero(nvars)
    for sign, body in zip(tokens[0::2], tokens[1::2]):
        coeff: Coeff = 1
        exp = [0] * nvars
        for factor in body.split("*"):
            factor = factor.strip()
            m = re.fullmatch(r"t(\d+)(?:\^(-?\d+))?", factor)
            if m:
                exp[int(m.group(1)) - 1] += int(m.group(2) or 1)
            else:
                coeff = coeff * Fraction(factor)
        if sign == "-":
            coeff = -coeff
        out = out + LaurentPoly({tuple(exp): coeff}, nvars)
    return out


def dumps(p: LaurentPoly) -> str:
    return json.dumps(p.to_json())
