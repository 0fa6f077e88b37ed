"""Truncated polynomial jets and jet-coefficient differential forms.

A Jet is a polynomial in z^1..z^n, zbar^1..zbar^n truncated at a total
order; derivatives lower the validity order by one.  JetForms carry a
Jet for every complex monomial dz^I ^ dzbar^J and support the exact
first-order calculus (partial, dbar, d) at a chart base point.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .scalars import GaussianRational, ONE, ZERO, gr
from .forms import (
    CIndex,
    Form,
    HermitianFrame,
    Index,
    _complex_to_real,
    merge_sign,
)

Exponents = Tuple[int, ...]  # z exponents then zbar exponents, length 2n


class JetOrderError(ValueError):
    """Raised when a derivative is requested of an order-0 jet."""


class Jet:
    """Truncated polynomial with GaussianRational coefficients."""

    __slots__ = ("n", "order", "coeffs")

    def __init__(self, n: int, order: int, coeffs: Dict[Exponents, GaussianRational]):
        self.n = n
        self.order = order
        self.coeffs = {
            e: c for e, c in coeffs.items() if not c.is_zero() and sum(e) <= order
        }

    @staticmethod
    def constant(n: int, order: int, value) -> "Jet":
        value = GaussianRational.of(value)
        zero_exp = (0,) * (2 * n)
        return Jet(n, order, {zero_exp: value} if value else {})

    @staticmethod
    def monomial(n: int, order: int, exps: Exponents, value=ONE) -> "Jet":
        return Jet(n, order, {tuple(exps): GaussianRational.of(value)})

    @staticmethod
    def coordinate(n: int, order: int, a: int, barred: bool = False) -> "Jet":
        exps = [0] * (2 * n)
        exps[(a - 1) + (n if barred else 0)] = 1
        return Jet.monomial(n, order, tuple(exps))

    def _check(self, other: "Jet") -> None:
        if self.n != other.n:
            raise ValueError("jets over different chart dimensions")

    def __add__(self, other: "Jet") -> "Jet":
        self._check(other)
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, ZERO) + c
        return Jet(self.n, order, out)

    def __sub__(self, other: "Jet") -> "Jet":
        return self + (-other)

    def __neg__(self) -> "Jet":
        return Jet(self.n, self.order, {e: -c for e, c in self.coeffs.items()})

    def scale(self, c) -> "Jet":
        c = GaussianRational.of(c)
        return Jet(self.n, self.order, {e: c * v for e, v in self.coeffs.items()})

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return self.scale(other)
        self._check(other)
        order = min(self.order, other.order)
        out: Dict[Exponents, GaussianRational] = {}
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, c2 in other.coeffs.items():
                if d1 + sum(e2) > order:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                acc = out.get(e, ZERO) + c1 * c2
                if acc.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = acc
        return Jet(self.n, order, out)

    __rmul__ = __mul__

    def conjugate(self) -> "Jet":
        out = {}
        for e, c in self.coeffs.items():
            swapped = e[self.n :] + e[: self.n]
            out[swapped] = c.conjugate()
        return Jet(self.n, self.order, out)

    def d_z(self, a: int) -> "Jet":
        return self._derive(a - 1)

    def d_zbar(self, a: int) -> "Jet":
        return self._derive(self.n + a - 1)

    def _derive(self, slot: int) -> "Jet":
        if self.order <= 0:
            raise JetOrderError("cannot differentiate an order-0 jet")
        out: Dict[Exponents, GaussianRational] = {}
        for e, c in self.coeffs.items():
            k = e[slot]
            if k == 0:
                continue
            new_e = e[:slot] + (k - 1,) + e[slot + 1 :]
            out[new_e] = out.get(new_e, ZERO) + c * k
        return Jet(self.n, self.order - 1, out)

    def eval0(self) -> GaussianRational:
        return self.coeffs.get((0,) * (2 * self.n), ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_abs(self) -> Fraction:
        return max((c.magnitude() for c in self.coeffs.values()), default=Fraction(0))

    def inverse(self) -> "Jet":
        """Multiplicative inverse; requires an invertible constant term."""
        c0 = self.eval0()
        if c0.is_zero():
            raise ZeroDivisionError("jet has no constant term; not invertible")
        c0_inv = c0.inverse()
        rest = self - Jet.constant(self.n, self.order, c0)
        # (c0 + N)^(-1) = c0^(-1) * sum_k (-N/c0)^k, N nilpotent mod order
        term = Jet.constant(self.n, self.order, ONE)
        acc = Jet.constant(self.n, self.order, ONE)
        factor = rest.scale(-c0_inv)
        for _ in range(self.order):
            term = term * factor
            if term.is_zero():
                break
            acc = acc + term
        return acc.scale(c0_inv)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Jet)
            and other.n == self.n
            and other.coeffs == self.coeffs
        )

    def __repr__(self) -> str:
        return f"Jet(n={self.n}, order={self.order}, {len(self.coeffs)} terms)"


def exponent_tuples(n: int, max_order: int) -> List[Exponents]:
    """All exponent tuples of total degree <= max_order, 2n variables."""
    out = []
    for total in range(max_order + 1):
        for combo in itertools.product(range(total + 1), repeat=2 * n):
            if sum(combo) == total:
                out.append(combo)
    return out


class JetForm:
    """Differential form on a chart with jet coefficients."""

    __slots__ = ("n", "order", "terms")

    def __init__(self, n: int, order: int, terms: Dict[CIndex, Jet]):
        self.n = n
        self.order = order
        self.terms = {k: j for k, j in terms.items() if not j.is_zero()}

    @staticmethod
    def zero(n: int, order: int) -> "JetForm":
        return JetForm(n, order, {})

    @staticmethod
    def monomial(n: int, order: int, zi: Iterable[int], zbari: Iterable[int], jet=None) -> "JetForm":
        key = (tuple(zi), tuple(zbari))
        if jet is None:
            jet = Jet.constant(n, order, ONE)
        return JetForm(n, order, {key: jet})

    @staticmethod
    def function(jet: Jet, order: Optional[int] = None) -> "JetForm":
        return JetForm(jet.n, order if order is not None else jet.order, {((), ()): jet})

    def _check(self, other: "JetForm") -> None:
        if self.n != other.n:
            raise ValueError("jet forms over different chart dimensions")

    def __add__(self, other: "JetForm") -> "JetForm":
        self._check(other)
        out = dict(self.terms)
        for k, j in other.terms.items():
            out[k] = out[k] + j if k in out else j
        return JetForm(self.n, min(self.order, other.order), out)

    def __sub__(self, other: "JetForm") -> "JetForm":
        return self + (-other)

    def __neg__(self) -> "JetForm":
        return JetForm(self.n, self.order, {k: -j for k, j in self.terms.items()})

    def scale(self, c) -> "JetForm":
        return JetForm(self.n, self.order, {k: j.scale(c) for k, j in self.terms.items()})

    def scale_jet(self, jet: Jet) -> "JetForm":
        return JetForm(self.n, self.order, {k: jet * j for k, j in self.terms.items()})

    def __mul__(self, c) -> "JetForm":
        return self.scale(c)

    __rmul__ = __mul__

    def conjugate(self) -> "JetForm":
        out: Dict[CIndex, Jet] = {}
        for (zi, zbi), jet in self.terms.items():
            # conj(dz^I ^ dzbar^J) = (-1)^{|I||J|} dz^J ^ dzbar^I
            sign = -1 if (len(zi) * len(zbi)) % 2 else 1
            cj = jet.conjugate()
            out[(zbi, zi)] = cj if sign > 0 else -cj
        return JetForm(self.n, self.order, out)

    def degrees(self) -> List[int]:
        return sorted({len(zi) + len(zbi) for zi, zbi in self.terms})

    def degree_part(self, k: int) -> "JetForm":
        return JetForm(
            self.n,
            self.order,
            {key: j for key, j in self.terms.items() if len(key[0]) + len(key[1]) == k},
        )

    def bidegree_part(self, p: int, q: int) -> "JetForm":
        return JetForm(
            self.n,
            self.order,
            {
                key: j
                for key, j in self.terms.items()
                if len(key[0]) == p and len(key[1]) == q
            },
        )

    def is_zero(self) -> bool:
        return not self.terms

    def eval_at_base(self) -> Form:
        """Value at the base point as a Form over the canonical frame."""
        frame = HermitianFrame(self.n)
        out = frame.zero()
        for (zi, zbi), jet in self.terms.items():
            c0 = jet.eval0()
            if c0.is_zero():
                continue
            coeffs = dict(_complex_to_real(self.n, zi, zbi))
            out = out + Form(frame, coeffs).scale(c0)
        return out

    def max_abs_at_base(self) -> Fraction:
        return self.eval_at_base().max_abs()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, JetForm)
            and other.n == self.n
            and other.terms == self.terms
        )

    def __repr__(self) -> str:
        return f"JetForm(n={self.n}, {len(self.terms)} terms)"


# letters for the tagged wedge: (0, a) is dz^a, (1, a) is dzbar^a


def _key_letters(key: CIndex) -> Tuple[Tuple[int, int], ...]:
    zi, zbi = key
    return tuple((0, a) for a in zi) + tuple((1, a) for a in zbi)


def _letters_key(letters: Sequence[Tuple[int, int]]) -> CIndex:
    return (
        tuple(a for kind, a in letters if kind == 0),
        tuple(a for kind, a in letters if kind == 1),
    )


def jet_wedge(a: JetForm, b: JetForm) -> JetForm:
    a._check(b)
    out: Dict[CIndex, Jet] = {}
    order = min(a.order, b.order)
    for ka, ja in a.terms.items():
        la = _key_letters(ka)
        for kb, jb in b.terms.items():
            sign, merged = merge_sign(la, _key_letters(kb))
            if sign == 0:
                continue
            prod = ja * jb
            if sign < 0:
                prod = -prod
            key = _letters_key(merged)
            if key in out:
                out[key] = out[key] + prod
            else:
                out[key] = prod
    return JetForm(a.n, order, out)


def _first_order(a: JetForm, barred: bool) -> JetForm:
    if a.order <= 0:
        raise JetOrderError("cannot differentiate an order-0 jet form")
    n = a.n
    out: Dict[CIndex, Jet] = {}
    for key, jet in a.terms.items():
        letters = _key_letters(key)
        for idx in range(1, n + 1):
            dj = jet.d_zbar(idx) if barred else jet.d_z(idx)
            if dj.is_zero():
                continue
            letter = ((1, idx) if barred else (0, idx),)
            sign, merged = merge_sign(letter, letters)
            if sign == 0:
                continue
            if sign < 0:
                dj = -dj
            new_key = _letters_key(merged)
            out[new_key] = out[new_key] + dj if new_key in out else dj
    return JetForm(n, a.order - 1, out)


def partial(a: JetForm) -> JetForm:
    """Holomorphic exterior derivative: sum_a (d/dz^a) dz^a ^ (.)."""
    return _first_order(a, barred=False)


def dbar(a: JetForm) -> JetForm:
    """Antiholomorphic exterior derivative."""
    return _first_order(a, barred=True)


def exterior_d(a: JetForm) -> JetForm:
    return partial(a) + dbar(a)


def jet_matrix_inverse(m: List[List[Jet]]) -> List[List[Jet]]:
    """Inverse of a jet matrix whose constant term is invertible."""
    size = len(m)
    n = m[0][0].n
    order = min(j.order for row in m for j in row)
    const = [[j.eval0() for j in row] for row in m]
    from . import linalg

    const_inv = linalg.inverse(const)
    # write M = C + N; M^-1 = (I + C^-1 N)^-1 C^-1 = sum (-C^-1 N)^k C^-1
    def jmat(scalars):
        return [[Jet.constant(n, order, x) for x in row] for row in scalars]

    def jmul(x, y):
        return [
            [
                sum((x[i][k] * y[k][j] for k in range(size)), Jet.constant(n, order, ZERO))
                for j in range(size)
            ]
            for i in range(size)
        ]

    def jsub(x, y):
        return [[a - b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]

    def jadd(x, y):
        return [[a + b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]

    c_inv = jmat(const_inv)
    nilpotent = jsub(m, jmat(const))
    step = [[-j for j in row] for row in jmul(c_inv, nilpotent)]
    acc = jmat(linalg.identity(size))
    term = jmat(linalg.identity(size))
    for _ in range(order):
        term = jmul(term, step)
        if all(j.is_zero() for row in term for j in row):
            break
        acc = jadd(acc, term)
    return jmul(acc, c_inv)
