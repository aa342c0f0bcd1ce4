"""Exact arithmetic in cyclotomic fields.

A :class:`CycNumber` is stored in the power basis ``1, z, ..., z^(phi(n)-1)`` of
``Q(z)`` with ``z = exp(2 pi i / n)``, reduced modulo the ``n``-th cyclotomic
polynomial, and always at the least conductor whose field contains it.
"""
from __future__ import annotations

import cmath
import functools
import math
from fractions import Fraction
from typing import Iterable, Sequence


def totient(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


def mobius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def ramanujan_sum(n: int, k: int) -> int:
    """``Tr_{Q(z_n)/Q}(z_n^k)``."""
    g = math.gcd(k, n)
    q = n // g
    return mobius(q) * totient(n) // totient(q)


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of ``Phi_n``, constant term first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_exact(num, cyclotomic_poly(d))
    return tuple(num)


def _polydiv_exact(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]  # den is monic
        q[i - dn] = c
        if c:
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    assert not any(num[:dn]), "inexact cyclotomic division"
    return q


@functools.lru_cache(maxsize=None)
def _reduction(n: int) -> tuple[tuple[int, ...], ...]:
    """Row ``k`` is ``z_n^k`` in the power basis, for ``0 <= k < n``."""
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    if d:
        cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z: shift, then replace z^d by -(phi_0 + ... + phi_{d-1} z^{d-1})
        top = cur[-1] if d else 0
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:d])]
    return tuple(rows)


def _reduce_dense(n: int, dense: Sequence) -> tuple[Fraction, ...]:
    rows = _reduction(n)
    d = totient(n)
    out = [Fraction(0)] * d
    for k, c in enumerate(dense):
        if c:
            for i, r in enumerate(rows[k]):
                if r:
                    out[i] += c * r
    return tuple(out)


def _dense(n: int, coeffs: Sequence, target: int) -> list:
    """Power-basis coefficients at conductor ``n`` as a dense vector over ``z_target``."""
    step = target // n
    out = [0] * target
    for i, c in enumerate(coeffs):
        if c:
            out[(i * step) % target] += c
    return out


@functools.lru_cache(maxsize=None)
def _descent(n: int, k: int):
    """Pivot rows and inverse matrix recovering conductor-``k`` coordinates."""
    phi_n, phi_k = totient(n), totient(k)
    rows = _reduction(n)
    step = n // k
    E = [[Fraction(rows[(i * step) % n][r]) for i in range(phi_k)] for r in range(phi_n)]
    # choose pivot rows greedily
    pivots, basis = [], []
    for r in range(phi_n):
        cand = basis + [E[r]]
        if _rank(cand) > len(basis):
            basis = cand
            pivots.append(r)
            if len(basis) == phi_k:
                break
    return tuple(pivots), _inverse(basis)


def _rank(M: list[list[Fraction]]) -> int:
    M = [row[:] for row in M]
    rank, cols = 0, len(M[0]) if M else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c] != 0:
                f = M[r][c] / M[rank][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def _inverse(M: list[list[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [a / p for a in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return tuple(tuple(row[n:]) for row in A)


class CycNumber:
    """An element of ``Q(z_n)`` in canonical (least-conductor) form."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs: Iterable, _canonical: bool = False):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != totient(conductor):
            raise ValueError("coefficient count must equal phi(conductor)")
        if not _canonical:
            conductor, coeffs = _canonicalize(conductor, coeffs)
        self.conductor = conductor
        self.coeffs = coeffs
        self._hash = None

    # -- constructors
    @classmethod
    def from_dense(cls, n: int, dense: Sequence) -> "CycNumber":
        """Element ``sum dense[k] z_n^k``; ``dense`` may have any length (taken mod n)."""
        if len(dense) != n:
            folded = [0] * n
            for k, c in enumerate(dense):
                folded[k % n] += c
            dense = folded
        return cls(n, _reduce_dense(n, dense))

    @classmethod
    def rational(cls, q) -> "CycNumber":
        return cls(1, (Fraction(q),), _canonical=True)

    # -- arithmetic
    def lift(self, n: int) -> list:
        """Dense coefficients over ``z_n``; ``n`` must be a multiple of the conductor."""
        if n % self.conductor:
            raise ValueError(f"conductor {self.conductor} does not divide {n}")
        return _dense(self.conductor, self.coeffs, n)

    def _common(self, other: "CycNumber"):
        L = math.lcm(self.conductor, other.conductor)
        return L, self.lift(L), other.lift(L)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        L, a, b = self._common(other)
        return CycNumber.from_dense(L, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.conductor, [-c for c in self.coeffs], _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.conductor == 1:
            return self.scale(other.coeffs[0])
        if self.conductor == 1:
            return other.scale(self.coeffs[0])
        L, a, b = self._common(other)
        prod = [Fraction(0)] * L
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[(i + j) % L] += x * y
        return CycNumber.from_dense(L, prod)

    __rmul__ = __mul__

    def scale(self, q) -> "CycNumber":
        q = Fraction(q)
        if q == 0:
            return ZERO
        return CycNumber(self.conductor, [q * c for c in self.coeffs], _canonical=True)

    def galois(self, j: int) -> "CycNumber":
        """Image under ``z_n -> z_n^j``."""
        n = self.conductor
        if math.gcd(j, n) != 1:
            raise ValueError(f"{j} is not a unit modulo the conductor {n}")
        dense = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            if c:
                dense[(i * j) % n] += c
        return CycNumber.from_dense(n, dense)

    def conjugate(self) -> "CycNumber":
        return self.galois(-1)

    def trace(self) -> Fraction:
        """Absolute trace ``Tr_{Q(z_c)/Q}`` at the canonical conductor ``c``."""
        n = self.conductor
        total = ZERO
        for j in range(1, n + 1):
            if math.gcd(j, n) == 1:
                total = total + self.galois(j)
        assert total.conductor == 1
        return total.coeffs[0]

    # -- predicates / conversion
    def is_rational(self) -> bool:
        return self.conductor == 1

    def to_fraction(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def __complex__(self):
        n = self.conductor
        return sum(complex(float(c)) * cmath.exp(2j * math.pi * i / n) for i, c in enumerate(self.coeffs))

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.conductor, self.coeffs))
        return self._hash

    def __repr__(self):
        if self.conductor == 1:
            return f"CycNumber({self.coeffs[0]})"
        terms = [f"{c}*z{self.conductor}^{i}" for i, c in enumerate(self.coeffs) if c]
        return "CycNumber(" + (" + ".join(terms) or "0") + ")"

    def to_json(self) -> dict:
        return {"n": self.conductor, "coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}


def _coerce(x):
    if isinstance(x, CycNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNumber.rational(x)
    return NotImplemented


def _fixed_by(n: int, coeffs: tuple, k: int) -> bool:
    """Is the element fixed by every automorphism ``z_n -> z_n^j`` with ``j = 1 mod k``?"""
    for j in range(1 + k, n, k):
        if math.gcd(j, n) != 1:
            continue
        dense = [0] * n
        for i, c in enumerate(coeffs):
            if c:
                dense[(i * j) % n] += c
        if _reduce_dense(n, dense) != coeffs:
            return False
    return True


def _descend(n: int, coeffs: tuple, k: int) -> tuple:
    pivots, inv = _descent(n, k)
    rhs = [coeffs[r] for r in pivots]
    return tuple(sum((a * b for a, b in zip(row, rhs)), Fraction(0)) for row in inv)


def _canonicalize(n: int, coeffs: tuple) -> tuple[int, tuple]:
    while n > 1:
        if not any(coeffs[1:]):
            return 1, (coeffs[0],)
        for p in _primes(n):
            k = n // p
            if k % 4 == 2:
                k //= 2
            if _fixed_by(n, coeffs, k):
                coeffs = _descend(n, coeffs, k)
                n = k
                break
        else:
            break
    return n, coeffs


ZERO = CycNumber(1, (Fraction(0),), _canonical=True)
ONE = CycNumber(1, (Fraction(1),), _canonical=True)


@functools.lru_cache(maxsize=65536)
def root_of_unity(n: int, k: int = 1) -> CycNumber:
    """Canonical form of ``z_n^k``."""
    if n < 1:
        raise ValueError("order must be positive")
    k %= n
    dense = [0] * n
    dense[k] = 1
    return CycNumber.from_dense(n, dense)


def trace_to_Q(x: CycNumber) -> Fraction:
    return x.trace()


def trace_in(x: CycNumber, n: int) -> Fraction:
    """Relative trace ``Tr_{Q(z_n)/Q}(x)`` for ``x`` in ``Q(z_n)``.

    Uses Ramanujan sums on the dense expansion instead of summing Galois
    images; ``trace_to_Q`` is the independent route.
    """
    if n % x.conductor:
        raise ValueError(f"element of conductor {x.conductor} is not in Q(z_{n})")
    return dense_trace(x.lift(n), n)


def dense_trace(dense: Sequence, n: int) -> Fraction:
    """``Tr_{Q(z_n)/Q}(sum dense[k] z_n^k)``."""
    return Fraction(sum(c * ramanujan_sum(n, k) for k, c in enumerate(dense) if c))


def parse_cyc(doc: dict) -> CycNumber:
    """Read ``{"n": int, "coeffs": [[num, den], ...]}`` meaning ``sum c_i z_n^i``.

    A bare integer is accepted as a rational value.
    """
    if isinstance(doc, int) and not isinstance(doc, bool):
        return CycNumber.rational(doc)
    try:
        n = int(doc["n"])
        coeffs = [Fraction(int(a), int(b)) for a, b in doc["coeffs"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad cyclotomic expression {doc!r}: {exc}")
    if n < 1:
        raise ValueError("conductor must be positive")
    return CycNumber.from_dense(n, coeffs)
