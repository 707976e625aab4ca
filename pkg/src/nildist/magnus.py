"""Exact group arithmetic through truncated noncommutative power series.

Each generator a_i of the free nilpotent group of rank m and class c maps to
1 + x_i in the ring of integer polynomials on noncommuting variables
x_1..x_m, truncated above total degree c.  The map lands in the group of
units with constant term 1 and is injective, so equality of polynomials is
equality of group elements and every computation below is exact.  Inversion
is the truncated geometric series: (1 + u)^-1 = 1 - u + u^2 - ... with u of
valuation at least one, so the series stops at degree c on its own.

An element g lies in the k-th term of the lower central series exactly when
every nonconstant term of its image has degree >= k; the weight of g is the
smallest degree that actually occurs (infinite for the identity).
"""

from __future__ import annotations

import math
from functools import lru_cache

from .presentation import Presentation
from .words import Word

Monomial = tuple[int, ...]


def _raw_mul(f: dict, g: dict, cutoff: int) -> dict:
    out: dict[Monomial, int] = {}
    for m1, a in f.items():
        room = cutoff - len(m1)
        for m2, b in g.items():
            if len(m2) > room:
                continue
            key = m1 + m2
            v = out.get(key, 0) + a * b
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return out


class GroupElement:
    """A group element stored as its truncated polynomial image.

    terms maps monomials (tuples of generator indices) to nonzero integer
    coefficients; the empty monomial always carries coefficient 1.
    """

    __slots__ = ("presentation", "terms", "_hash")

    def __init__(self, presentation: Presentation, terms: dict):
        assert terms.get((), 0) == 1, "constant term must be 1"
        self.presentation = presentation
        self.terms = terms
        self._hash = None

    def coefficient(self, monomial: Monomial) -> int:
        return self.terms.get(monomial, 0)

    def homogeneous(self, degree: int) -> dict:
        return {m: v for m, v in self.terms.items() if len(m) == degree}

    def is_identity(self) -> bool:
        return len(self.terms) == 1

    def weight(self):
        if self.is_identity():
            return math.inf
        return min(len(m) for m in self.terms if m)

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return multiply(self, other)

    def __invert__(self):
        return inverse(self)

    def __pow__(self, n):
        return power(self, n)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.presentation == other.presentation and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.presentation, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        names = self.presentation.names
        parts = []
        for mono in sorted(self.terms, key=lambda m: (len(m), m)):
            coeff = self.terms[mono]
            body = "*".join(names[i] for i in mono) if mono else "1"
            if not parts:
                parts.append(body if coeff == 1 and mono == () else f"{coeff}*{body}")
                continue
            sign = "+" if coeff > 0 else "-"
            mag = abs(coeff)
            head = body if mag == 1 else f"{mag}*{body}"
            parts.append(f"{sign} {head}")
        return f"GroupElement({' '.join(parts)})"


def identity(presentation: Presentation) -> GroupElement:
    return GroupElement(presentation, {(): 1})


@lru_cache(maxsize=None)
def _letter_image(presentation: Presentation, index: int, sign: int) -> GroupElement:
    if sign > 0:
        terms = {(): 1, (index,): 1}
    else:
        terms = {(index,) * k: (-1) ** k for k in range(presentation.c + 1)}
    return GroupElement(presentation, terms)


def embed(word: Word, presentation: Presentation) -> GroupElement:
    g = identity(presentation)
    for index, sign in word:
        if not 0 <= index < presentation.m:
            raise ValueError(f"letter index {index} out of range")
        g = multiply(g, _letter_image(presentation, index, sign))
    return g


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.presentation != h.presentation:
        raise ValueError("elements live in different presentations")
    return GroupElement(g.presentation, _raw_mul(g.terms, h.terms, g.presentation.c))


def inverse(g: GroupElement) -> GroupElement:
    c = g.presentation.c
    neg_u = {m: -v for m, v in g.terms.items() if m}
    acc = {(): 1}
    term = {(): 1}
    for _ in range(c):
        term = _raw_mul(term, neg_u, c)
        if not term:
            break
        for mono, v in term.items():
            total = acc.get(mono, 0) + v
            if total:
                acc[mono] = total
            elif mono in acc:
                del acc[mono]
    return GroupElement(g.presentation, acc)


def power(g: GroupElement, n: int) -> GroupElement:
    if n < 0:
        return power(inverse(g), -n)
    result = identity(g.presentation)
    base = g
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    return multiply(multiply(inverse(g), inverse(h)), multiply(g, h))


def weight(g: GroupElement):
    return g.weight()
