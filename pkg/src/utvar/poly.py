"""Sparse multivariate polynomials over a semiring.

Variables are indexed by a letter and a vertex; monomials are canonical
sorted tuples of (variable, exponent) pairs so they hash and compare at
tuple speed.  `FormalPoly` carries coefficients in a concrete semiring,
`CountPoly` carries natural-number multiplicities independent of any
semiring and is mapped into a semiring late via `nat`.

Everything here is an immutable value; operations return fresh objects.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple, Optional

from .semirings import Elem, Semiring, require_same


class Var(NamedTuple):
    """A formal variable: a letter decorated with a vertex of [n].

    Field order is (vertex, letter) so plain tuple comparison gives the
    vertex-major order used for canonical monomial layout and printing.
    """

    vertex: int
    letter: str

    def text(self, letters_only: bool = False) -> str:
        return self.letter if letters_only else f"{self.letter}_{self.vertex}"


class Monomial(tuple):
    """Canonical product of variables: sorted ((Var, exp), ...) pairs."""

    __slots__ = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Var, int]]) -> "Monomial":
        acc: dict[Var, int] = {}
        for var, exp in pairs:
            if exp:
                acc[var] = acc.get(var, 0) + exp
        for var, exp in acc.items():
            if exp < 0:
                raise ValueError(f"negative exponent for {var}")
        return cls(sorted((v, e) for v, e in acc.items() if e > 0))

    @classmethod
    def variable(cls, var: Var) -> "Monomial":
        return cls(((var, 1),))

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not self:
            return other
        if not other:
            return self
        acc = dict(self)
        for var, exp in other:
            acc[var] = acc.get(var, 0) + exp
        return Monomial(sorted(acc.items()))

    def mul_var(self, var: Var) -> "Monomial":
        return self * Monomial.variable(var)

    def degree(self, letter: Optional[str] = None) -> int:
        """Total degree, or the total degree of one letter across vertices."""
        return sum(e for v, e in self
                   if letter is None or v.letter == letter)

    def vars(self) -> tuple[Var, ...]:
        return tuple(v for v, _ in self)

    def drop_vertex(self, vertex: int) -> "Monomial":
        return Monomial(tuple((v, e) for v, e in self if v.vertex != vertex))

    def relabel(self, vertex_map: Mapping[int, int]) -> "Monomial":
        return Monomial.from_pairs(
            (Var(vertex_map.get(v.vertex, v.vertex), v.letter), e)
            for v, e in self)

    def text(self, letters_only: bool = False) -> str:
        if not self:
            return "1"
        parts = []
        for var, exp in self:
            base = var.text(letters_only)
            parts.append(base if exp == 1 else f"{base}^{exp}")
        return " ".join(parts)

    def __repr__(self):
        return f"Monomial({self.text()})"


ONE_MONOMIAL = Monomial(())


def abelianize(word: str, vertex: int) -> Monomial:
    """The letter-count monomial of a word, all variables at one vertex."""
    return Monomial.from_pairs(
        (Var(vertex, letter), 1) for letter in word)


def _term_sort_key(mono: Monomial):
    # Constant term last, otherwise vertex-major variable order.
    return (mono == ONE_MONOMIAL, mono)


class FormalPoly:
    """A formal polynomial: finitely many monomials with nonzero coefficients."""

    __slots__ = ("semiring", "terms")

    def __init__(self, semiring: Semiring, terms: Mapping[Monomial, Elem]):
        self.semiring = semiring
        self.terms = dict(terms)

    @classmethod
    def zero(cls, semiring: Semiring) -> "FormalPoly":
        return cls(semiring, {})

    @classmethod
    def unit(cls, semiring: Semiring) -> "FormalPoly":
        return cls(semiring, {ONE_MONOMIAL: semiring.one})

    @classmethod
    def monomial(cls, semiring: Semiring, mono: Monomial,
                 coeff: Optional[Elem] = None) -> "FormalPoly":
        c = semiring.one if coeff is None else coeff
        if c == semiring.zero:
            return cls.zero(semiring)
        return cls(semiring, {mono: c})

    @classmethod
    def from_terms(cls, semiring: Semiring,
                   terms: Iterable[tuple[Monomial, Elem]]) -> "FormalPoly":
        acc: dict[Monomial, Elem] = {}
        for mono, coeff in terms:
            if mono in acc:
                coeff = semiring.add(acc[mono], coeff)
            acc[mono] = coeff
        return cls(semiring, {m: c for m, c in acc.items()
                              if c != semiring.zero})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def vars(self) -> tuple[Var, ...]:
        seen = set()
        for mono in self.terms:
            seen.update(mono.vars())
        return tuple(sorted(seen))

    def __add__(self, other: "FormalPoly") -> "FormalPoly":
        require_same(self.semiring, other.semiring)
        S = self.semiring
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            if mono in acc:
                s = S.add(acc[mono], coeff)
                if s == S.zero:
                    del acc[mono]
                else:
                    acc[mono] = s
            else:
                acc[mono] = coeff
        return FormalPoly(S, acc)

    def __mul__(self, other: "FormalPoly") -> "FormalPoly":
        require_same(self.semiring, other.semiring)
        S = self.semiring
        acc: dict[Monomial, Elem] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = m1 * m2
                coeff = S.mul(c1, c2)
                if mono in acc:
                    coeff = S.add(acc[mono], coeff)
                acc[mono] = coeff
        return FormalPoly(S, {m: c for m, c in acc.items() if c != S.zero})

    def __eq__(self, other):
        # Formal equality; function equality lives in utvar.funceq.
        return (isinstance(other, FormalPoly)
                and self.semiring.name == other.semiring.name
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.semiring.name, frozenset(self.terms.items())))

    def evaluate(self, point: Mapping[Var, Elem]) -> Elem:
        S = self.semiring
        total = S.zero
        for mono, coeff in self.terms.items():
            value = coeff
            for var, exp in mono:
                if var not in point:
                    raise ValueError(f"missing assignment for {var.text()}")
                value = S.mul(value, S.power(point[var], exp))
            total = S.add(total, value)
        return total

    def collapse_vertex(self, vertex: int) -> "FormalPoly":
        """Evaluate every variable at the given vertex to 1, merging terms."""
        return FormalPoly.from_terms(
            self.semiring,
            ((mono.drop_vertex(vertex), coeff)
             for mono, coeff in self.terms.items()))

    def relabel(self, vertex_map: Mapping[int, int]) -> "FormalPoly":
        return FormalPoly.from_terms(
            self.semiring,
            ((mono.relabel(vertex_map), coeff)
             for mono, coeff in self.terms.items()))

    def sorted_terms(self) -> list[tuple[Monomial, Elem]]:
        return sorted(self.terms.items(), key=lambda kv: _term_sort_key(kv[0]))

    def text(self, letters_only: bool = False) -> str:
        """Render as "c m + ...": unit coefficients are omitted, the zero
        polynomial prints as "0" and the unit constant term as "1"."""
        if not self.terms:
            return "0"
        S = self.semiring
        parts = []
        for mono, coeff in self.sorted_terms():
            if mono == ONE_MONOMIAL:
                parts.append("1" if coeff == S.one else S.format(coeff))
            elif coeff == S.one:
                parts.append(mono.text(letters_only))
            else:
                parts.append(f"{S.format(coeff)} {mono.text(letters_only)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"FormalPoly[{self.semiring.name}]({self.text()})"


class CountPoly:
    """A polynomial with natural-number multiplicities.

    This is the semiring-independent carrier for occurrence counts; the
    image in a concrete semiring is taken late via `into`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int]):
        self.terms = dict(terms)

    @classmethod
    def zero(cls) -> "CountPoly":
        return cls({})

    @classmethod
    def unit(cls) -> "CountPoly":
        return cls({ONE_MONOMIAL: 1})

    @classmethod
    def monomial(cls, mono: Monomial, count: int = 1) -> "CountPoly":
        return cls({mono: count}) if count else cls({})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "CountPoly") -> "CountPoly":
        acc = dict(self.terms)
        for mono, k in other.terms.items():
            acc[mono] = acc.get(mono, 0) + k
        return CountPoly(acc)

    def __mul__(self, other: "CountPoly") -> "CountPoly":
        acc: dict[Monomial, int] = {}
        for m1, k1 in self.terms.items():
            for m2, k2 in other.terms.items():
                mono = m1 * m2
                acc[mono] = acc.get(mono, 0) + k1 * k2
        return CountPoly(acc)

    def mul_var(self, var: Var) -> "CountPoly":
        step = Monomial.variable(var)
        return CountPoly({mono * step: k for mono, k in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, CountPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def total_count(self) -> int:
        return sum(self.terms.values())

    def relabel(self, vertex_map: Mapping[int, int]) -> "CountPoly":
        acc: dict[Monomial, int] = {}
        for mono, k in self.terms.items():
            image = mono.relabel(vertex_map)
            acc[image] = acc.get(image, 0) + k
        return CountPoly(acc)

    def into(self, semiring: Semiring) -> FormalPoly:
        """Map multiplicities through `nat` into a concrete semiring."""
        return FormalPoly(
            semiring,
            {m: c for m, c in
             ((mono, semiring.nat(k)) for mono, k in self.terms.items())
             if c != semiring.zero})

    def __repr__(self):
        if not self.terms:
            return "CountPoly(0)"
        parts = []
        for mono, k in sorted(self.terms.items(),
                              key=lambda kv: _term_sort_key(kv[0])):
            head = "" if k == 1 else f"{k} "
            parts.append(f"{head}{mono.text()}")
        return "CountPoly(" + " + ".join(parts) + ")"
