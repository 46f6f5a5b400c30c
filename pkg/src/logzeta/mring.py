"""Symbolic localized Grothendieck ring.

Elements are finite sums ``sum_s  c_s(L) * [s]`` where ``s`` runs over opaque
class symbols (the reserved symbol ``"1"`` stands for the constant part) and
each coefficient ``c_s`` is a Laurent polynomial in ``L`` divided by a power
of ``(L - 1)``.  Coefficients are kept normalized: either the denominator
power is zero or ``(L - 1)`` does not divide the numerator.

Products of symbols are formal: multiplying ``[A]`` and ``[B]`` yields the
symbol ``A*B`` (atom multisets merged and sorted), with no geometric meaning
attached.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

UNIT_SYMBOL = "1"


class LPoleError(ValueError):
    """Raised when a coefficient retains a pole at L = 1."""


# ---------------------------------------------------------------------------
# Laurent polynomials in L over the integers.


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in one variable, stored as exp -> coeff."""

    coeffs: tuple[tuple[int, int], ...]  # sorted by exponent, no zeros

    @staticmethod
    def from_dict(d: Mapping[int, int]) -> "LaurentPoly":
        return LaurentPoly(tuple(sorted((e, c) for e, c in d.items() if c != 0)))

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly(())

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly(((0, 1),))

    @staticmethod
    def monomial(exp: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly.from_dict({exp: coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = dict(self.coeffs)
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        d: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by L^k."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.coeffs))

    def evaluate(self, value: Fraction) -> Fraction:
        return sum((Fraction(c) * value**e for e, c in self.coeffs), Fraction(0))

    def divmod_l_minus_1(self) -> tuple["LaurentPoly", "LaurentPoly"]:
        """Divide by (L - 1); the remainder is the constant p(1)."""
        if self.is_zero():
            return LaurentPoly.zero(), LaurentPoly.zero()
        low = self.coeffs[0][0]
        # Work with an ordinary polynomial p(L) = self * L^{-low}.
        high = self.coeffs[-1][0] - low
        dense = [0] * (high + 1)
        for e, c in self.coeffs:
            dense[e - low] = c
        q = [0] * (high + 1)
        acc = 0
        for i in range(high, -1, -1):
            acc += dense[i]
            q[i] = acc
        rem = q[0]
        quot = LaurentPoly.from_dict({i - 1 + low: q[i] for i in range(1, high + 1)})
        # self = (L-1)*quot + rem * L^{low}; fold the L^{low} into the remainder
        # only when it vanishes, otherwise report non-divisibility via rem.
        return quot, LaurentPoly.from_dict({low: rem})

    def truncate_below(self, low: int) -> "LaurentPoly":
        """Drop monomials with exponent < low."""
        return LaurentPoly(tuple((e, c) for e, c in self.coeffs if e >= low))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for e, c in sorted(self.coeffs, reverse=True):
            if e == 0:
                body = str(abs(c))
            else:
                lpow = "L" if e == 1 else f"L^{e}"
                body = lpow if abs(c) == 1 else f"{abs(c)}*{lpow}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+{body}" if c > 0 else f"-{body}")
        return "".join(parts)


L = LaurentPoly.monomial(1)
L_MINUS_1 = LaurentPoly.from_dict({1: 1, 0: -1})


# ---------------------------------------------------------------------------
# Coefficients p(L) / (L-1)^k.


@dataclass(frozen=True)
class MCoeff:
    num: LaurentPoly
    den_pow: int  # >= 0

    @staticmethod
    def make(num: LaurentPoly, den_pow: int = 0) -> "MCoeff":
        if den_pow < 0:
            raise ValueError("denominator power must be nonnegative")
        while den_pow > 0 and not num.is_zero():
            q, r = num.divmod_l_minus_1()
            if not r.is_zero():
                break
            num = q
            den_pow -= 1
        if num.is_zero():
            den_pow = 0
        return MCoeff(num, den_pow)

    @staticmethod
    def zero() -> "MCoeff":
        return MCoeff(LaurentPoly.zero(), 0)

    @staticmethod
    def one() -> "MCoeff":
        return MCoeff(LaurentPoly.one(), 0)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "MCoeff") -> "MCoeff":
        k = max(self.den_pow, other.den_pow)
        a = self.num
        for _ in range(k - self.den_pow):
            a = a * L_MINUS_1
        b = other.num
        for _ in range(k - other.den_pow):
            b = b * L_MINUS_1
        return MCoeff.make(a + b, k)

    def __neg__(self) -> "MCoeff":
        return MCoeff(-self.num, self.den_pow)

    def __sub__(self, other: "MCoeff") -> "MCoeff":
        return self + (-other)

    def __mul__(self, other: "MCoeff") -> "MCoeff":
        return MCoeff.make(self.num * other.num, self.den_pow + other.den_pow)

    def mul_l1_pow(self, e: int) -> "MCoeff":
        """Multiply by (L-1)^e, e of any sign."""
        if e >= 0:
            num = self.num
            for _ in range(e):
                num = num * L_MINUS_1
            return MCoeff.make(num, self.den_pow)
        return MCoeff.make(self.num, self.den_pow - e)

    def evaluate(self, value: Fraction) -> Fraction:
        if value == 1 and self.den_pow > 0:
            raise ZeroDivisionError("pole at L = 1")
        return self.num.evaluate(value) / (value - 1) ** self.den_pow

    def laurent_series(self, low: int) -> LaurentPoly:
        """L-adic expansion 1/(L-1) = L^{-1} + L^{-2} + ..., truncated at ``low``.

        Exact on monomials of exponent >= low; anything below is dropped.
        """
        out = self.num
        if self.den_pow > 0:
            if out.is_zero():
                return out
            # Deep enough that dropped geometric tail cannot reach >= low.
            depth = out.coeffs[-1][0] - low + self.den_pow + 1
            geom = LaurentPoly.from_dict({-j: 1 for j in range(1, max(depth, 1) + 1)})
            for _ in range(self.den_pow):
                out = out * geom
        return out.truncate_below(low)

    def __str__(self) -> str:
        num = str(self.num)
        if self.den_pow == 0:
            return num
        den = "(L-1)" if self.den_pow == 1 else f"(L-1)^{self.den_pow}"
        if len(self.num.coeffs) > 1 or num.startswith("-"):
            num = f"({num})"
        return f"{num}/{den}"


# ---------------------------------------------------------------------------
# Symbolic classes.


def _symbol_atoms(symbol: str) -> tuple[str, ...]:
    return tuple(symbol.split("*"))


def _check_symbol(symbol: str) -> str:
    if not symbol:
        raise ValueError("empty class symbol")
    if any(not atom or atom == UNIT_SYMBOL for atom in symbol.split("*")) and symbol != UNIT_SYMBOL:
        raise ValueError(f"bad class symbol {symbol!r}")
    return symbol


def _symbol_product(s1: str, s2: str) -> str:
    if s1 == UNIT_SYMBOL:
        return s2
    if s2 == UNIT_SYMBOL:
        return s1
    return "*".join(sorted(_symbol_atoms(s1) + _symbol_atoms(s2)))


class MClass:
    """Element of the symbolic localized Grothendieck ring."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[str, MCoeff] | None = None):
        clean: dict[str, MCoeff] = {}
        if terms:
            for sym, c in terms.items():
                if not c.is_zero():
                    clean[_check_symbol(sym)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "MClass":
        return MClass()

    @staticmethod
    def one() -> "MClass":
        return MClass({UNIT_SYMBOL: MCoeff.one()})

    @staticmethod
    def from_int(n: int) -> "MClass":
        return MClass({UNIT_SYMBOL: MCoeff.make(LaurentPoly.from_dict({0: n}))})

    @staticmethod
    def symbol(name: str) -> "MClass":
        return MClass({name: MCoeff.one()})

    @staticmethod
    def l_power(k: int) -> "MClass":
        return MClass({UNIT_SYMBOL: MCoeff.make(LaurentPoly.monomial(k))})

    @staticmethod
    def l_minus_1(power: int = 1) -> "MClass":
        return MClass.one().mul_l1_pow(power)

    # -- ring operations ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "MClass") -> "MClass":
        d = dict(self.terms)
        for sym, c in other.terms.items():
            d[sym] = d[sym] + c if sym in d else c
        return MClass(d)

    def __neg__(self) -> "MClass":
        return MClass({s: -c for s, c in self.terms.items()})

    def __sub__(self, other: "MClass") -> "MClass":
        return self + (-other)

    def __mul__(self, other: "MClass") -> "MClass":
        d: dict[str, MCoeff] = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                sym = _symbol_product(s1, s2)
                c = c1 * c2
                d[sym] = d[sym] + c if sym in d else c
        return MClass(d)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MClass) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items(), key=lambda kv: kv[0])))

    def scale_l(self, k: int) -> "MClass":
        """Multiply by L^k."""
        return MClass({s: MCoeff.make(c.num.shift(k), c.den_pow) for s, c in self.terms.items()})

    def mul_l1_pow(self, e: int) -> "MClass":
        """Multiply by (L-1)^e; negative ``e`` raises denominator powers."""
        return MClass({s: c.mul_l1_pow(e) for s, c in self.terms.items()})

    # -- specializations ----------------------------------------------------

    def assert_no_l1_pole(self) -> "MClass":
        for sym, c in self.terms.items():
            if c.den_pow > 0:
                raise LPoleError(f"coefficient of [{sym}] has a pole at L = 1: {c}")
        return self

    def mod_l_minus_1(self) -> "MClass":
        self.assert_no_l1_pole()
        out: dict[str, MCoeff] = {}
        for sym, c in self.terms.items():
            val = c.num.evaluate(Fraction(1))
            assert val.denominator == 1
            cc = MCoeff.make(LaurentPoly.from_dict({0: int(val)}))
            if not cc.is_zero():
                out[sym] = cc
        return MClass(out)

    def specialize(self, table: Mapping[str, Fraction], l_value: Fraction) -> Fraction:
        if l_value == 1:
            self.assert_no_l1_pole()
        total = Fraction(0)
        for sym, c in self.terms.items():
            factor = Fraction(1)
            if sym != UNIT_SYMBOL:
                for atom in _symbol_atoms(sym):
                    if atom not in table:
                        raise KeyError(f"no specialization for symbol {atom!r}")
                    factor *= Fraction(table[atom])
            total += c.evaluate(Fraction(l_value)) * factor
        return total

    def truncate_l_below(self, low: int) -> "MClass":
        """L-adic truncation of every coefficient (used by test oracles)."""
        out: dict[str, MCoeff] = {}
        for sym, c in self.terms.items():
            t = c.laurent_series(low)
            if not t.is_zero():
                out[sym] = MCoeff(t, 0)
        return MClass(out)

    # -- presentation -------------------------------------------------------

    def sorted_terms(self) -> list[tuple[str, MCoeff]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for sym, c in self.sorted_terms():
            cs = str(c)
            if sym == UNIT_SYMBOL:
                parts.append(cs)
            elif cs == "1":
                parts.append(f"[{sym}]")
            else:
                if c.den_pow == 0 and (len(c.num.coeffs) > 1 or cs.startswith("-")):
                    cs = f"({cs})"
                parts.append(f"[{sym}]*{cs}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MClass({self})"


def msum(items: Iterable[MClass]) -> MClass:
    out = MClass.zero()
    for x in items:
        out = out + x
    return out
