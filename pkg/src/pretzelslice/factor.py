"""Complete factorization of polynomials over prime fields.

The pipeline is the classical one: squarefree decomposition, then
distinct-degree splitting by Frobenius powers, then Cantor-Zassenhaus
equal-degree splitting (a trace map replaces the power map when p = 2).
Splitting is randomized internally but fully deterministic for a given
seed: every random draw comes from a counter-mode hash keyed by the
seed, the modulus and the operand, so results do not depend on call
order or process layout.

Divisors of t^n - 1 admit much faster arithmetic: the Frobenius x -> x^p
acts on F_p[t]/(t^n - 1) as a coefficient permutation, and Frobenius
gcds collapse to gcds with t^g - 1 for divisors g of n.  The
``*_cyclic`` entry points exploit this; they validate the divisor claim
on entry and verify their output (reconstruction, equal degrees,
irreducibility), so they are safe to use as an independent oracle for
the closed-form counting rules.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import _kernels as _k
from . import numth
from .poly import ModPoly

DEFAULT_SEED = 0

# Full equal-degree factorization is the oracle of choice up to this
# degree; past it the gcd-certificate routes stay exact but cheaper.
ORACLE_FULL_CAP = 4000


class CounterRng:
    """Deterministic byte stream: blake2b in counter mode over a key."""

    def __init__(self, *material):
        text = "|".join(repr(m) for m in material)
        self._key = hashlib.blake2b(text.encode(), digest_size=32).digest()
        self._counter = 0
        self._buf = b""

    def _refill(self):
        block = hashlib.blake2b(
            self._counter.to_bytes(8, "little"), key=self._key, digest_size=64
        ).digest()
        self._counter += 1
        self._buf += block

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound <= 0:
            raise ValueError("empty range")
        nbytes = (bound.bit_length() + 7) // 8 + 1
        while True:
            while len(self._buf) < nbytes:
                self._refill()
            chunk, self._buf = self._buf[:nbytes], self._buf[nbytes:]
            val = int.from_bytes(chunk, "little")
            limit = (256**nbytes // bound) * bound
            if val < limit:
                return val % bound

    def coeffs(self, count: int, p: int) -> List[int]:
        return [self.randbelow(p) for _ in range(count)]


def _poly_key(coeffs: Sequence[int], p: int) -> str:
    h = hashlib.blake2b(digest_size=16)
    h.update(str(p).encode())
    for c in coeffs:
        h.update(b",")
        h.update(str(c).encode())
    return h.hexdigest()


# ---------------------------------------------------------------------------
# factor multisets


def _canon_key(f: ModPoly):
    return (f.degree, f.coeffs)


@dataclass(frozen=True)
class FactorMultiset:
    """Monic irreducible factors with multiplicities, plus the unit scalar.

    Factors are kept in the canonical order (degree, then coefficient
    tuple), so equal multisets compare equal structurally.
    """

    p: int
    scalar: int
    factors: Tuple[Tuple[ModPoly, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def product(self) -> ModPoly:
        out = ModPoly(self.p, (self.scalar,))
        for g, m in self.factors:
            for _ in range(m):
                out = out * g
        return out

    def total_degree(self) -> int:
        return sum(g.degree * m for g, m in self.factors)


def _make_multiset(p: int, scalar: int, pairs) -> FactorMultiset:
    merged: Dict[Tuple[int, tuple], Tuple[ModPoly, int]] = {}
    for g, m in pairs:
        key = _canon_key(g)
        if key in merged:
            merged[key] = (g, merged[key][1] + m)
        else:
            merged[key] = (g, m)
    ordered = tuple(merged[k] for k in sorted(merged))
    return FactorMultiset(p, scalar % p, ordered)


# ---------------------------------------------------------------------------
# squarefree decomposition (Yun, characteristic p)


def _pth_root(f: ModPoly) -> ModPoly:
    # over the prime field, f = g(t^p) means g has the same coefficients
    return ModPoly(f.p, f.coeffs[:: f.p])


def squarefree_decomposition(f: ModPoly) -> List[Tuple[ModPoly, int]]:
    """Pairwise-coprime squarefree parts [(g, m)] with prod g^m = monic f.

    >>> fp = ModPoly(3, (0, 1)) ; cube = fp * fp * fp
    >>> [(str(g), m) for g, m in squarefree_decomposition(cube)]
    [('t', 3)]
    """
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    p = f.p
    out: Dict[int, ModPoly] = {}

    def accumulate(g: ModPoly, mult: int):
        if g.degree > 0:
            out[mult] = out[mult] * g if mult in out else g

    def walk(g: ModPoly, mult: int):
        if g.degree < 1:
            return
        dg = g.derivative()
        if dg.is_zero():
            walk(_pth_root(g), mult * p)
            return
        c = g.gcd(dg)
        w, _ = g.divrem(c)
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            z, _ = w.divrem(y)
            accumulate(z, mult * i)
            w = y
            c, _ = c.divrem(y)
            i += 1
        if c.degree > 0:
            walk(_pth_root(c), mult * p)

    walk(f.monic(), 1)
    return sorted(((g.monic(), m) for m, g in out.items()), key=lambda t: t[1])


# ---------------------------------------------------------------------------
# generic distinct-degree and equal-degree splitting


def _powmod(base: ModPoly, e: int, mod: ModPoly) -> ModPoly:
    result = ModPoly(base.p, (1,))
    cur = base.divrem(mod)[1]
    while e:
        if e & 1:
            result = (result * cur).divrem(mod)[1]
        cur = (cur * cur).divrem(mod)[1]
        e >>= 1
    return result


def distinct_degree(f: ModPoly) -> List[Tuple[ModPoly, int]]:
    """Split squarefree monic f into [(product of degree-k factors, k)].

    Raises on non-squarefree input, detected via the derivative gcd.
    """
    if f.degree < 1:
        raise ValueError("distinct_degree wants a nonconstant polynomial")
    f = f.monic()
    if f.gcd(f.derivative()).degree != 0:
        raise ValueError("input is not squarefree")
    p = f.p
    t = ModPoly(p, (0, 1))
    out = []
    h = t
    k = 0
    rem = f
    while rem.degree > 2 * k:
        k += 1
        h = _powmod(h, p, rem)
        g = rem.gcd(h - t)
        if g.degree > 0:
            out.append((g.monic(), k))
            rem, _ = rem.divrem(g)
            h = h.divrem(rem)[1]
    if rem.degree > 0:
        out.append((rem.monic(), rem.degree))
    return out


def _split_once(f: ModPoly, k: int, rng: CounterRng) -> Optional[ModPoly]:
    """One Cantor-Zassenhaus attempt; a proper monic divisor or None."""
    p = f.p
    x = ModPoly(p, rng.coeffs(f.degree, p))
    if x.degree < 1:
        return None
    if p == 2:
        acc = x
        tr = x
        for _ in range(k - 1):
            acc = (acc * acc).divrem(f)[1]
            tr = tr + acc
        g = f.gcd(tr)
    else:
        y = _powmod(x, (p**k - 1) // 2, f)
        g = f.gcd(y - ModPoly(p, (1,)))
    if 0 < g.degree < f.degree:
        return g.monic()
    return None


def equal_degree_split(f: ModPoly, k: int, seed: int = DEFAULT_SEED) -> FactorMultiset:
    """All irreducible factors of f when every factor has degree k.

    f must be squarefree and monic; deg f must be a multiple of k.
    """
    f = f.monic()
    if f.degree % k:
        raise ValueError(f"degree {f.degree} is not a multiple of {k}")
    factors: List[ModPoly] = []
    work = [f]
    while work:
        g = work.pop()
        if g.degree == k:
            factors.append(g)
            continue
        rng = CounterRng(seed, "edf", g.p, k, _poly_key(g.coeffs, g.p))
        attempts = 0
        piece = None
        while piece is None:
            attempts += 1
            if attempts > 64 + 8 * g.degree:
                raise ArithmeticError("equal-degree split stalled")  # pragma: no cover
            piece = _split_once(g, k, rng)
        work.append(piece)
        work.append(g.divrem(piece)[0].monic())
    return _make_multiset(f.p, 1, ((g, 1) for g in factors))


def factor(f: ModPoly, seed: int = DEFAULT_SEED) -> FactorMultiset:
    """Complete factorization into monic irreducibles with multiplicities.

    >>> f = ModPoly(2, (1, 0, 1, 1, 1, 0, 1))
    >>> [(str(g), m) for g, m in factor(f)]
    [('1 + t + t^2', 1), ('1 + t + t^2 + t^3 + t^4', 1)]
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    scalar = f.coeffs[-1]
    if f.degree == 0:
        return FactorMultiset(f.p, scalar, ())
    pairs = []
    for part, mult in squarefree_decomposition(f):
        for piece, k in distinct_degree(part):
            for g, _ in equal_degree_split(piece, k, seed):
                pairs.append((g, mult))
    out = _make_multiset(f.p, scalar, pairs)
    if out.total_degree() != f.degree:
        raise ArithmeticError("factorization lost degree")  # pragma: no cover
    return out


def is_irreducible(f: ModPoly) -> bool:
    """Rabin's irreducibility test for monic nonconstant f.

    >>> is_irreducible(ModPoly(2, (1, 1, 0, 0, 0, 0, 1)))
    True
    """
    if f.degree < 1:
        raise ValueError("irreducibility is about nonconstant polynomials")
    f = f.monic()
    n = f.degree
    p = f.p
    t = ModPoly(p, (0, 1))
    frob = [_powmod(t, p, f)]
    while len(frob) < n:
        frob.append(_powmod(frob[-1], p, f))
    if frob[n - 1] != t.divrem(f)[1]:
        return False
    for q in {q for q, _ in numth.factorize(n)}:
        if f.gcd(frob[n // q - 1] - t).degree != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Fox-Milnor test


@dataclass(frozen=True)
class FoxMilnorReport:
    """Outcome of the Fox-Milnor factorization test over F_p."""

    p: int
    admits: bool
    multiset: FactorMultiset
    self_reciprocal: Tuple[Tuple[ModPoly, int], ...]
    odd_multiplicity: Tuple[Tuple[ModPoly, int], ...]


def fox_milnor_mod_p(f: ModPoly, seed: int = DEFAULT_SEED) -> FoxMilnorReport:
    """Whether f(t) = c * g(t) * t^deg(g) * g(1/t) is solvable over F_p.

    Requires a self-reciprocal input; by the reversal symmetry of the
    factor multiset this holds exactly when every self-reciprocal
    irreducible factor appears with even multiplicity.
    """
    if f.is_zero() or not f.is_self_reciprocal():
        raise ValueError("Fox-Milnor test needs a nonzero self-reciprocal input")
    ms = factor(f, seed)
    sr = tuple((g, m) for g, m in ms if g.is_self_reciprocal())
    odd = tuple((g, m) for g, m in sr if m % 2)
    return FoxMilnorReport(f.p, not odd, ms, sr, odd)


# ---------------------------------------------------------------------------
# fast path for divisors of t^n - 1


def _tn_minus_1(n: int, p: int) -> ModPoly:
    return ModPoly(p, [p - 1] + [0] * (n - 1) + [1])


def _validate_cyclic(f: ModPoly, n: int):
    if n < 1:
        raise ValueError("cyclic order must be positive")
    if n % f.p == 0:
        raise ValueError("cyclic order divisible by the characteristic")
    if f.is_zero() or f.coeffs[0] == 0:
        raise ValueError("a divisor of t^n - 1 cannot vanish at 0")
    if f.degree > n:
        raise ValueError("degree exceeds the cyclic order")
    _, r = _tn_minus_1(n, p=f.p).divrem(f)
    if not r.is_zero():
        raise ValueError(f"input does not divide t^{n} - 1")


def _binomial_gcd(rem: ModPoly, g: int) -> ModPoly:
    """gcd(rem, t^g - 1) for rem | t^n - 1 and g | n."""
    p = rem.p
    return rem.gcd(ModPoly(p, [p - 1] + [0] * (g - 1) + [1]))


def distinct_degree_cyclic(f: ModPoly, n: int) -> List[Tuple[ModPoly, int]]:
    """Distinct-degree split of f | t^n - 1, via divisor-gcd collapsing.

    Frobenius powers of t are monomials modulo t^n - 1, so the usual
    gcd(f, t^(p^k) - t) equals gcd(f, t^g - 1) with g = gcd(p^k - 1, n);
    only a handful of distinct g ever occur.
    """
    _validate_cyclic(f, n)
    p = f.p
    rem = f.monic()
    out = []
    dead = set()
    e = 1
    k = 0
    while rem.degree > 2 * k:
        k += 1
        e = (e * p) % n
        g = math.gcd(e - 1, n)
        if g in dead:
            continue
        part = _binomial_gcd(rem, g)
        if part.degree == 0:
            dead.add(g)
            continue
        out.append((part.monic(), k))
        rem, _ = rem.divrem(part)
        dead.add(g)
    if rem.degree > 0:
        out.append((rem.monic(), rem.degree))
    return out


# -- ring F_p[t]/(t^n - 1): fold products, permute for Frobenius


def _ring_mul(a: List[int], b: List[int], n: int, p: int) -> List[int]:
    raw = _k.mul_mod(a, b, p)
    if len(raw) > n:
        for i in range(n, len(raw)):
            raw[i - n] = (raw[i - n] + raw[i]) % p
        del raw[n:]
    return raw + [0] * (n - len(raw))


def _ring_frobenius(a: List[int], pw: int, n: int) -> List[int]:
    # x -> x^(p^w) permutes coefficients: index i moves to i*p^w mod n
    out = [0] * n
    for i, c in enumerate(a):
        if c:
            out[(i * pw) % n] = c
    return out


def _ring_norm(x: List[int], k: int, n: int, p: int) -> List[int]:
    """prod_{i<k} sigma^i(x) in the cyclic ring (norm map to F_p)."""
    acc = x
    have = 1
    for bit in bin(k)[3:]:
        acc = _ring_mul(acc, _ring_frobenius(acc, pow(p, have, n), n), n, p)
        have *= 2
        if bit == "1":
            acc = _ring_mul(_ring_frobenius(acc, p % n, n), x, n, p)
            have += 1
    return acc

def _ring_trace(x: List[int], k: int, n: int) -> List[int]:
    """sum_{i<k} sigma^i(x) in the cyclic ring over F_2."""
    acc = x
    have = 1
    for bit in bin(k)[3:]:
        shifted = _ring_frobenius(acc, pow(2, have, n), n)
        acc = [(u + v) % 2 for u, v in zip(acc, shifted)]
        have *= 2
        if bit == "1":
            acc = [(u + v) % 2 for u, v in zip(_ring_frobenius(acc, 2 % n, n), x)]
            have += 1
    return acc


def _ring_pow(x: List[int], e: int, n: int, p: int) -> List[int]:
    out = [1] + [0] * (n - 1)
    cur = x
    while e:
        if e & 1:
            out = _ring_mul(out, cur, n, p)
        cur = _ring_mul(cur, cur, n, p)
        e >>= 1
    return out


def _edf_cyclic(
    pieces: List[Tuple[ModPoly, int]],
    n: int,
    p: int,
    seed: int,
    limit: Optional[int] = None,
) -> List[Tuple[ModPoly, int]]:
    """Split every (product, k) into its degree-k irreducible factors.

    One random ring element per round refines all pending pieces at
    once; pieces are tracked per k so the norm/trace is computed once
    per degree class each round.  With `limit` set, returns as soon as
    that many factors have been isolated (used when any single witness
    factor suffices).
    """
    done: List[Tuple[ModPoly, int]] = []
    pending: Dict[int, List[ModPoly]] = {}
    anchor: Dict[int, ModPoly] = {}
    for piece, k in pieces:
        if piece.degree == k:
            done.append((piece, k))
        else:
            pending.setdefault(k, []).append(piece)
            anchor[k] = piece if k not in anchor else anchor[k] * piece
    total = sum(c.degree for v in pending.values() for c in v)
    rng = CounterRng(seed, "edf-cyclic", p, n, total)
    rounds = 0
    while pending:
        if limit is not None and len(done) >= limit:
            break
        rounds += 1
        if rounds > 64 + 8 * max(1, total.bit_length()):
            raise ArithmeticError("cyclic equal-degree split stalled")  # pragma: no cover
        x = rng.coeffs(n, p)
        for k in list(pending):
            if p == 2:
                w = _ring_trace(x, k, n)
            else:
                nrm = _ring_norm(x, k, n, p)
                w = _ring_pow(nrm, (p - 1) // 2, n, p)
                w[0] = (w[0] - 1) % p
            # one reduction from ring size down to the class product,
            # then cheap per-piece reductions from there
            wred = ModPoly(p, w).divrem(anchor[k])[1]
            still: List[ModPoly] = []
            for piece in pending[k]:
                g = piece.gcd(wred.divrem(piece)[1])
                if 0 < g.degree < piece.degree:
                    h = piece.divrem(g)[0].monic()
                    for part in (g.monic(), h):
                        if part.degree == k:
                            done.append((part, k))
                        else:
                            still.append(part)
                else:
                    still.append(piece)
            if still:
                pending[k] = still
            else:
                del pending[k]
                del anchor[k]
    return done


def _monomial_mod(e: int, g: ModPoly) -> ModPoly:
    """t^e mod g."""
    if e <= g.degree:
        return ModPoly(g.p, (0,) * e + (1,))
    return ModPoly(g.p, (0,) * e + (1,)).divrem(g)[1]


def is_irreducible_cyclic(g: ModPoly, n: int, k: Optional[int] = None) -> bool:
    """Rabin's test for g | t^n - 1, with Frobenius powers as monomials."""
    if k is None:
        k = g.degree
    if g.degree != k or k < 1:
        return False
    p = g.p
    if k <= 8:
        return is_irreducible(g)
    t = ModPoly(p, (0, 1))
    if _monomial_mod(pow(p, k, n), g) != t.divrem(g)[1]:
        return False
    for q in {q for q, _ in numth.factorize(k)}:
        h = _monomial_mod(pow(p, k // q, n), g) - t
        if g.gcd(h).degree != 0:
            return False
    return True


def factor_cyclic(f: ModPoly, n: int, seed: int = DEFAULT_SEED) -> FactorMultiset:
    """Complete factorization of a divisor of t^n - 1 (all multiplicities 1).

    Validates the divisor claim, splits, then verifies the output:
    every factor passes an irreducibility test and the product
    reconstructs the input exactly.
    """
    _validate_cyclic(f, n)
    scalar = f.coeffs[-1]
    g = f.monic()
    if g.degree == 0:
        return FactorMultiset(f.p, scalar, ())
    classes = distinct_degree_cyclic(g, n)
    split = _edf_cyclic(classes, n, f.p, seed)
    for h, k in split:
        if h.degree != k or not is_irreducible_cyclic(h, n, k):
            raise ArithmeticError("cyclic split produced a reducible piece")  # pragma: no cover
    out = _make_multiset(f.p, scalar, ((h, 1) for h, _ in split))
    if out.product() != f:
        raise ArithmeticError("cyclic factorization failed to reconstruct")  # pragma: no cover
    return out


@dataclass(frozen=True)
class SelfReciprocalSearch:
    """Existence certificate for a self-reciprocal irreducible factor.

    When ``exists``, some irreducible factor h of f satisfies
    h(t) ~ t^deg(h) h(1/t): the roots in the class witnessed by
    ``power`` are inverted by the p^power Frobenius, which is checked
    by a single gcd with t^divisor - 1.  ``factor`` carries an explicit
    witness when one was extracted.
    """

    exists: bool
    power: Optional[int]
    divisor: Optional[int]
    gcd_degree: int
    factor: Optional[ModPoly]


def self_reciprocal_search(
    f: ModPoly,
    n: int,
    seed: int = DEFAULT_SEED,
    exhibit_cap: int = ORACLE_FULL_CAP,
) -> SelfReciprocalSearch:
    """Find out whether f | t^n - 1 has a self-reciprocal irreducible factor.

    An irreducible factor with root set closed under inversion has even
    degree 2m with alpha^(p^m + 1) = 1 for every root alpha, so it
    divides gcd(f, t^(p^m + 1) - 1); modulo t^n - 1 that collapses to a
    gcd with t^g - 1 for g = gcd(p^m + 1, n), and only a few distinct g
    occur.  Linear factors t -/+ 1 would confound the criterion and are
    rejected up front (they never divide the cyclotomic-style inputs
    this is used on).
    """
    _validate_cyclic(f, n)
    p = f.p
    if f.evaluate(1) == 0 or f.evaluate(p - 1) == 0:
        raise ValueError("input vanishes at 1 or -1; criterion not applicable")
    half = f.degree // 2
    tried = set()
    e = 1
    for m in range(1, half + 1):
        e = (e * p) % n
        g = math.gcd(e + 1, n)
        if g <= 2 or g in tried:
            continue
        tried.add(g)
        part = _binomial_gcd(f.monic(), g)
        if part.degree > 0:
            witness = None
            if part.degree <= exhibit_cap:
                classes = distinct_degree_cyclic(part.monic(), n)
                piece, k = classes[0]
                sub = _edf_cyclic([(piece, k)], n, p, seed, limit=1)
                witness = sub[0][0]
                if not witness.is_self_reciprocal():  # pragma: no cover
                    raise ArithmeticError("witness factor is not self-reciprocal")
                if not is_irreducible_cyclic(witness, n, k):  # pragma: no cover
                    raise ArithmeticError("witness factor is not irreducible")
            return SelfReciprocalSearch(True, m, g, part.degree, witness)
    return SelfReciprocalSearch(False, None, None, 0, None)
