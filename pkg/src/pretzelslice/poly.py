"""Dense univariate polynomials over Z and over prime fields F_p.

Alexander polynomials are only defined up to a unit `±t^k`, so equality
questions in this package are really questions about associate classes.
The convention used throughout:

* a value stores plain coefficients, ascending exponent, with the
  leading (highest) coefficient nonzero;
* :meth:`canonical` picks the distinguished associate — constant term
  nonzero and positive leading coefficient over Z, constant term nonzero
  and monic over F_p;
* arithmetic never canonicalizes behind your back.  Compare canonical
  forms when you mean "equal up to a unit".

>>> f = IntPoly((0, -1, 2))           # -t + 2t^2, a raw value
>>> f.canonical()
IntPoly((-1, 2))
>>> str(f.canonical())
'-1 + 2*t'

Coefficients are exact Python integers; the heavy lifting is delegated
to the kernel helpers which pick numpy or big-integer paths safely.
"""

from __future__ import annotations

from typing import Iterable, Tuple

from . import _kernels as _k


class ExactDivisionError(ArithmeticError):
    """Raised when a polynomial division that must be exact is not."""


def _format_terms(coeffs) -> str:
    if not coeffs:
        return "0"
    parts = []
    for e, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        elif e == 1:
            body = "t" if mag == 1 else f"{mag}*t"
        else:
            body = f"t^{e}" if mag == 1 else f"{mag}*t^{e}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


class IntPoly:
    """A polynomial with integer coefficients, ascending exponent order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = _k.trim(list(coeffs))
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("IntPoly is immutable")

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __repr__(self):
        return f"IntPoly({self.coeffs!r})"

    def __str__(self):
        return _format_terms(self.coeffs)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        return IntPoly(_k.mul_int(self.coeffs, other.coeffs))

    def shift(self, k: int) -> "IntPoly":
        """Multiply by t^k (k >= 0)."""
        if k < 0:
            raise ValueError("negative shift")
        return IntPoly((0,) * k + self.coeffs)

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- associate-class operations -----------------------------------------

    def canonical(self) -> "IntPoly":
        """The distinguished associate: nonzero constant term, positive lead.

        >>> IntPoly((0, 0, -2, -4)).canonical()
        IntPoly((2, 4))
        """
        cs = self.coeffs
        if not cs:
            return self
        low = 0
        while cs[low] == 0:
            low += 1
        cs = cs[low:]
        if cs[-1] < 0:
            cs = tuple(-c for c in cs)
        return IntPoly(cs)

    def reverse(self) -> "IntPoly":
        """Coefficients reversed (t^deg * f(1/t)), canonicalized."""
        if not self.coeffs:
            raise ValueError("reverse of the zero polynomial")
        return IntPoly(self.coeffs[::-1]).canonical()

    def is_self_reciprocal(self) -> bool:
        """True when f and its reversal agree up to a unit.

        >>> IntPoly((1, -2, -1, 5, -1, -2, 1)).is_self_reciprocal()
        True
        """
        if not self.coeffs:
            raise ValueError("self-reciprocal test on the zero polynomial")
        return self.canonical() == self.reverse()

    def substitute_neg(self) -> "IntPoly":
        """f(-t), canonicalized."""
        return IntPoly(
            [-c if e & 1 else c for e, c in enumerate(self.coeffs)]
        ).canonical()

    def exact_div(self, den: "IntPoly") -> "IntPoly":
        """Exact quotient over Z; raises ExactDivisionError otherwise."""
        if den.is_zero():
            raise ZeroDivisionError("exact_div by zero polynomial")
        if self.is_zero():
            return IntPoly()
        num = list(self.coeffs)
        dc = den.coeffs
        m = len(dc) - 1
        n = len(num) - 1
        if n < m:
            raise ExactDivisionError("degree of denominator exceeds numerator")
        lead = dc[-1]
        q = [0] * (n - m + 1)
        use_np = _np_div_safe(num, dc)
        if use_np:
            return self._exact_div_np(den)
        for i in range(n - m, -1, -1):
            c = num[i + m]
            if c % lead:
                raise ExactDivisionError("division is not exact over Z")
            c //= lead
            q[i] = c
            if c:
                for j, dj in enumerate(dc):
                    num[i + j] -= c * dj
        if any(num[:m]):
            raise ExactDivisionError("division leaves a remainder")
        return IntPoly(q)

    def _exact_div_np(self, den: "IntPoly") -> "IntPoly":
        import numpy as np

        num = np.asarray(self.coeffs, dtype=np.int64)
        dc = np.asarray(den.coeffs, dtype=np.int64)
        m = len(dc) - 1
        n = len(num) - 1
        lead = int(dc[-1])
        q = [0] * (n - m + 1)
        for i in range(n - m, -1, -1):
            c = int(num[i + m])
            if c % lead:
                raise ExactDivisionError("division is not exact over Z")
            c //= lead
            q[i] = c
            if c:
                num[i : i + m + 1] -= c * dc
        if np.any(num[:m]):
            raise ExactDivisionError("division leaves a remainder")
        return IntPoly(q)

    def reduce_mod(self, p: int) -> "ModPoly":
        """Coefficientwise reduction mod p, then monic canonicalization."""
        return ModPoly(p, [c % p for c in self.coeffs]).canonical()


def _np_div_safe(num, den) -> bool:
    # int64 is safe while every intermediate stays small; exact division of
    # cyclotomic-flavoured inputs keeps coefficients tiny, but guard anyway.
    bound = 1 << 40
    return (
        len(num) > 128
        and max(abs(c) for c in num) < bound
        and max(abs(c) for c in den) < bound
        and abs(den[-1]) == 1
    )


_checked_moduli = set()


def _check_modulus(p: int):
    if p in _checked_moduli:
        return
    from . import numth

    if not numth.is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p >= 1 << 63:
        raise ValueError("modulus does not fit a machine word")
    _checked_moduli.add(p)


class ModPoly:
    """A polynomial over F_p, p prime, coefficients in [0, p)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        _check_modulus(p)
        cs = _k.trim([c % p for c in coeffs])
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("ModPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModPoly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(("ModPoly", self.p, self.coeffs))

    def __repr__(self):
        return f"ModPoly({self.p}, {self.coeffs!r})"

    def __str__(self):
        return _format_terms(self.coeffs)

    def _match(self, other: "ModPoly"):
        if self.p != other.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "ModPoly") -> "ModPoly":
        self._match(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return ModPoly(self.p, out)

    def __neg__(self) -> "ModPoly":
        return ModPoly(self.p, [-c % self.p for c in self.coeffs])

    def __sub__(self, other: "ModPoly") -> "ModPoly":
        return self + (-other)

    def __mul__(self, other: "ModPoly") -> "ModPoly":
        self._match(other)
        if not self.coeffs or not other.coeffs:
            return ModPoly(self.p)
        return ModPoly(self.p, _k.mul_mod(self.coeffs, other.coeffs, self.p))

    def scale(self, c: int) -> "ModPoly":
        c %= self.p
        return ModPoly(self.p, [(c * x) % self.p for x in self.coeffs])

    def shift(self, k: int) -> "ModPoly":
        if k < 0:
            raise ValueError("negative shift")
        return ModPoly(self.p, (0,) * k + self.coeffs)

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def derivative(self) -> "ModPoly":
        return ModPoly(self.p, [(e * c) % self.p for e, c in enumerate(self.coeffs)][1:])

    def divrem(self, den: "ModPoly") -> Tuple["ModPoly", "ModPoly"]:
        """Quotient and remainder; den must be nonzero.

        >>> t3 = ModPoly(5, (0, 0, 0, 1)); t2 = ModPoly(5, (0, 0, 1))
        >>> q, r = t3.divrem(t2); (str(q), str(r))
        ('t', '0')
        """
        self._match(den)
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = _k.divrem_mod(self.coeffs, den.coeffs, self.p)
        return ModPoly(self.p, q), ModPoly(self.p, r)

    def gcd(self, other: "ModPoly") -> "ModPoly":
        """Monic greatest common divisor."""
        self._match(other)
        return ModPoly(self.p, _k.gcd_mod(self.coeffs, other.coeffs, self.p))

    def monic(self) -> "ModPoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = pow(self.coeffs[-1], self.p - 2, self.p)
        return self.scale(inv)

    # -- associate-class operations -----------------------------------------

    def canonical(self) -> "ModPoly":
        """Distinguished associate: nonzero constant term and monic."""
        cs = self.coeffs
        if not cs:
            return self
        low = 0
        while cs[low] == 0:
            low += 1
        return ModPoly(self.p, cs[low:]).monic()

    def reverse(self) -> "ModPoly":
        if not self.coeffs:
            raise ValueError("reverse of the zero polynomial")
        return ModPoly(self.p, self.coeffs[::-1]).canonical()

    def is_self_reciprocal(self) -> bool:
        if not self.coeffs:
            raise ValueError("self-reciprocal test on the zero polynomial")
        return self.canonical() == self.reverse()

    def substitute_neg(self) -> "ModPoly":
        """f(-t), canonicalized (the identity map when p = 2)."""
        return ModPoly(
            self.p,
            [(-c) % self.p if e & 1 else c for e, c in enumerate(self.coeffs)],
        ).canonical()


# Module-level spellings of the associate-class operations; handy when the
# subject reads better as a function than as a method chain.


def canonicalize(raw_coeffs: Iterable[int], lowest_exponent: int = 0) -> IntPoly:
    """Canonical associate of sum(raw_coeffs[i] * t^(lowest_exponent+i)).

    The Laurent offset only shifts by a unit, so it never changes the
    answer; it is accepted so callers holding Laurent data do not have
    to normalize first.
    """
    if not isinstance(lowest_exponent, int):
        raise TypeError("lowest_exponent must be an integer")
    return IntPoly(raw_coeffs).canonical()


def exact_div(num: IntPoly, den: IntPoly) -> IntPoly:
    return num.exact_div(den)


def reduce_mod(f: IntPoly, p: int) -> ModPoly:
    return f.reduce_mod(p)
