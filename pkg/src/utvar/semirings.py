"""Commutative semirings with exact carriers.

Every semiring here is commutative with distinguished 0 and 1, 0 != 1.
Carriers are exact: rationals (`fractions.Fraction`) plus a -inf sentinel
for the max-plus family, machine ints for the natural / modular cases,
frozensets of exponent tuples for the free idempotent semiring, and
element names for table-defined finite semirings.  No floating point is
used anywhere.

Values are immutable and all operations are pure, so semiring handles and
elements can be shared freely between threads.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional, Sequence

Elem = Any

# Equality-strategy tags consumed by utvar.funceq.
FORMAL = "formal"
EXHAUSTIVE = "exhaustive"
TROPICAL_DOMINANCE = "tropical-dominance"
BOOLEAN_SUPPORT = "boolean-support"
# One-variable breakpoint method; the four generic strategies are all
# unsound for the capped max-plus interval semiring.
INTERVAL_BREAKPOINT = "interval-breakpoint"


class SemiringMismatchError(ValueError):
    """Raised when operands belong to different semirings."""


class _NegInf:
    """Additive-identity sentinel for max-plus style carriers."""

    __slots__ = ()
    _instance: Optional["_NegInf"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-inf"


MINUS_INF = _NegInf()


class Semiring:
    """A concrete commutative semiring.

    Subclasses fix `name`, `zero`, `one`, `eq_strategy` and the two binary
    operations.  `elements` yields the full carrier for finite instances
    and is None otherwise.  `torsion_free` is True for instances where no
    identity x^i = x^j (i < j) can hold; subclasses setting it must supply
    `torsion_falsifier` producing an element with x^i != x^j.
    """

    name: str = "abstract"
    zero: Elem = None
    one: Elem = None
    eq_strategy: str = FORMAL
    idempotent: bool = False
    torsion_free: Optional[bool] = None

    def add(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def mul(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def eq(self, a: Elem, b: Elem) -> bool:
        return a == b

    def nat(self, k: int) -> Elem:
        """Canonical image of a count: the k-fold sum of 1."""
        if k < 0:
            raise ValueError("nat expects a nonnegative count")
        return self._nat(k)

    def _nat(self, k: int) -> Elem:
        acc = self.zero
        for _ in range(k):
            acc = self.add(acc, self.one)
        return acc

    def elements(self) -> Optional[Sequence[Elem]]:
        """Full carrier for finite semirings, None otherwise."""
        return None

    @property
    def finite(self) -> bool:
        return self.elements() is not None

    def contains(self, value: Elem) -> bool:
        raise NotImplementedError

    def check(self, value: Elem) -> Elem:
        if not self.contains(value):
            raise SemiringMismatchError(
                f"{value!r} is not an element of the {self.name} semiring")
        return value

    def parse(self, text: str) -> Elem:
        raise NotImplementedError

    def format(self, value: Elem) -> str:
        return str(value)

    def sample(self, rng) -> Elem:
        """A random element, used by law checks and randomized oracles."""
        raise NotImplementedError

    def torsion_falsifier(self, i: int, j: int) -> Optional[Elem]:
        """An element x with x^i != x^j, when one is known uniformly."""
        return None

    def power(self, x: Elem, k: int) -> Elem:
        acc = self.one
        for _ in range(k):
            acc = self.mul(acc, x)
        return acc

    def __repr__(self):
        return f"<semiring {self.name}>"


def _parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _format_rational(value: Fraction) -> str:
    return str(value)


class TropicalSemiring(Semiring):
    """Rationals with -inf; addition is max, multiplication is +."""

    name = "tropical"
    zero = MINUS_INF
    one = Fraction(0)
    eq_strategy = TROPICAL_DOMINANCE
    idempotent = True
    torsion_free = True

    def add(self, a, b):
        if a is MINUS_INF:
            return b
        if b is MINUS_INF:
            return a
        return a if a >= b else b

    def mul(self, a, b):
        if a is MINUS_INF or b is MINUS_INF:
            return MINUS_INF
        return a + b

    def _nat(self, k):
        return MINUS_INF if k == 0 else Fraction(0)

    def contains(self, value):
        return value is MINUS_INF or isinstance(value, Fraction)

    def parse(self, text):
        text = text.strip()
        if text in ("-inf", "-oo"):
            return MINUS_INF
        return _parse_rational(text)

    def format(self, value):
        return "-inf" if value is MINUS_INF else _format_rational(value)

    def sample(self, rng):
        if rng.random() < 0.1:
            return MINUS_INF
        return Fraction(rng.randint(-20, 20), rng.randint(1, 6))

    def torsion_falsifier(self, i, j):
        return Fraction(1)


class BooleanSemiring(Semiring):
    """{0, 1} under or / and."""

    name = "boolean"
    zero = 0
    one = 1
    eq_strategy = BOOLEAN_SUPPORT
    idempotent = True
    torsion_free = False

    def add(self, a, b):
        return a | b

    def mul(self, a, b):
        return a & b

    def _nat(self, k):
        return 0 if k == 0 else 1

    def elements(self):
        return (0, 1)

    def contains(self, value):
        return value in (0, 1)

    def parse(self, text):
        v = int(text)
        if v not in (0, 1):
            raise ValueError(f"not a boolean value: {text}")
        return v

    def sample(self, rng):
        return rng.randint(0, 1)


class NaturalSemiring(Semiring):
    """Nonnegative integers under + and *."""

    name = "nat"
    zero = 0
    one = 1
    eq_strategy = FORMAL
    idempotent = False
    torsion_free = True

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def _nat(self, k):
        return k

    def contains(self, value):
        return isinstance(value, int) and not isinstance(value, bool) and value >= 0

    def parse(self, text):
        v = int(text)
        if v < 0:
            raise ValueError("natural numbers are nonnegative")
        return v

    def sample(self, rng):
        return rng.randint(0, 9)

    def torsion_falsifier(self, i, j):
        return 2


class IntegersModSemiring(Semiring):
    """The ring Z_p as a finite semiring (p need not be prime)."""

    eq_strategy = EXHAUSTIVE
    idempotent = False
    torsion_free = False

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("modulus must be at least 2")
        self.p = p
        self.name = f"zmod:{p}"
        self.zero = 0
        self.one = 1
        self._elems = tuple(range(p))

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def _nat(self, k):
        return k % self.p

    def elements(self):
        return self._elems

    def contains(self, value):
        return isinstance(value, int) and 0 <= value < self.p

    def parse(self, text):
        return int(text) % self.p

    def sample(self, rng):
        return rng.randrange(self.p)


class IntervalSemiring(Semiring):
    """{-inf} with the rational interval [0, 1]; max / capped addition.

    x (+) y = max(x, y) and x (*) y = min(x + y, 1).  Zero is -inf and the
    multiplicative identity is the rational 0.
    """

    name = "interval"
    zero = MINUS_INF
    one = Fraction(0)
    eq_strategy = INTERVAL_BREAKPOINT
    idempotent = True
    torsion_free = True

    def add(self, a, b):
        if a is MINUS_INF:
            return b
        if b is MINUS_INF:
            return a
        return a if a >= b else b

    def mul(self, a, b):
        if a is MINUS_INF or b is MINUS_INF:
            return MINUS_INF
        s = a + b
        return s if s <= 1 else Fraction(1)

    def _nat(self, k):
        return MINUS_INF if k == 0 else Fraction(0)

    def contains(self, value):
        return value is MINUS_INF or (
            isinstance(value, Fraction) and 0 <= value <= 1)

    def parse(self, text):
        text = text.strip()
        if text in ("-inf", "-oo"):
            return MINUS_INF
        v = _parse_rational(text)
        if not 0 <= v <= 1:
            raise ValueError("interval elements lie in [0, 1]")
        return v

    def format(self, value):
        return "-inf" if value is MINUS_INF else _format_rational(value)

    def sample(self, rng):
        if rng.random() < 0.1:
            return MINUS_INF
        den = rng.randint(1, 12)
        return Fraction(rng.randint(0, den), den)

    def torsion_falsifier(self, i, j):
        return Fraction(1, j)


class FreeIdempotentSemiring(Semiring):
    """The free commutative idempotent semiring on k symbols.

    Elements are finite sets of monomials over the symbols, stored as
    frozensets of exponent tuples.  Addition is set union (hence
    idempotent), multiplication is pairwise exponent addition.
    """

    eq_strategy = FORMAL
    idempotent = True
    torsion_free = True

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("need at least one symbol")
        self.k = k
        self.name = f"freeidpt:{k}"
        self.zero = frozenset()
        self.one = frozenset({(0,) * k})

    def add(self, a, b):
        return a | b

    def mul(self, a, b):
        return frozenset(
            tuple(x + y for x, y in zip(ma, mb)) for ma in a for mb in b)

    def _nat(self, k):
        return self.zero if k == 0 else self.one

    def contains(self, value):
        return isinstance(value, frozenset) and all(
            isinstance(m, tuple) and len(m) == self.k
            and all(isinstance(e, int) and e >= 0 for e in m)
            for m in value)

    def generator(self, index: int = 0) -> Elem:
        exps = [0] * self.k
        exps[index] = 1
        return frozenset({tuple(exps)})

    def format(self, value):
        if not value:
            return "0"
        parts = []
        for m in sorted(value):
            factors = [
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(m) if e > 0
            ]
            parts.append(" ".join(factors) if factors else "1")
        return " + ".join(parts)

    def parse(self, text):
        raise NotImplementedError(
            "free idempotent elements are constructed programmatically")

    def sample(self, rng):
        size = rng.randint(0, 3)
        return frozenset(
            tuple(rng.randint(0, 2) for _ in range(self.k))
            for _ in range(size))

    def torsion_falsifier(self, i, j):
        return self.generator(0)


class TableSemiring(Semiring):
    """A finite semiring given by explicit operation tables.

    All semiring laws are checked exhaustively when the table is loaded;
    malformed tables are rejected immediately.
    """

    eq_strategy = EXHAUSTIVE
    torsion_free = False

    def __init__(self, name: str, elems: Sequence[str], zero: str, one: str,
                 add_table: Sequence[Sequence[str]],
                 mul_table: Sequence[Sequence[str]]):
        self.name = name
        self._elems = tuple(elems)
        if len(set(self._elems)) != len(self._elems):
            raise ValueError("duplicate element names")
        index = {e: i for i, e in enumerate(self._elems)}
        if zero not in index or one not in index:
            raise ValueError("zero/one must be listed elements")
        if zero == one:
            raise ValueError("semiring requires zero != one")
        self.zero = zero
        self.one = one
        self._add = self._load_table(add_table, index, "add")
        self._mul = self._load_table(mul_table, index, "mul")
        self._index = index
        self._validate()
        self.idempotent = all(self.add(a, a) == a for a in self._elems)

    def _load_table(self, table, index, label):
        k = len(self._elems)
        if len(table) != k or any(len(row) != k for row in table):
            raise ValueError(f"{label} table must be {k}x{k}")
        out = {}
        for i, row in enumerate(table):
            for j, cell in enumerate(row):
                if cell not in index:
                    raise ValueError(f"unknown element {cell!r} in {label} table")
                out[self._elems[i], self._elems[j]] = cell
        return out

    def _validate(self):
        es = self._elems
        for a in es:
            if self.add(self.zero, a) != a:
                raise ValueError("zero is not an additive identity")
            if self.mul(self.one, a) != a:
                raise ValueError("one is not a multiplicative identity")
            if self.mul(self.zero, a) != self.zero:
                raise ValueError("zero does not annihilate")
            for b in es:
                if self.add(a, b) != self.add(b, a):
                    raise ValueError("addition is not commutative")
                if self.mul(a, b) != self.mul(b, a):
                    raise ValueError("multiplication is not commutative")
                for c in es:
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)):
                        raise ValueError("addition is not associative")
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise ValueError("multiplication is not associative")
                    if self.mul(a, self.add(b, c)) != self.add(
                            self.mul(a, b), self.mul(a, c)):
                        raise ValueError("multiplication does not distribute")

    def add(self, a, b):
        return self._add[a, b]

    def mul(self, a, b):
        return self._mul[a, b]

    def elements(self):
        return self._elems

    def contains(self, value):
        return value in self._index

    def parse(self, text):
        if text not in self._index:
            raise ValueError(f"unknown element {text!r}")
        return text

    def sample(self, rng):
        return rng.choice(self._elems)

    @classmethod
    def from_file(cls, path: str) -> "TableSemiring":
        with open(path) as fh:
            data = json.load(fh)
        return cls.from_dict(data, name=f"table:{path}")

    @classmethod
    def from_dict(cls, data: dict, name: str = "table") -> "TableSemiring":
        try:
            return cls(name, data["elements"], data["zero"], data["one"],
                       data["add"], data["mul"])
        except KeyError as exc:
            raise ValueError(f"table file missing field {exc}") from exc


def from_selector(selector: str) -> Semiring:
    """Resolve a selector string to a semiring instance.

    Recognised selectors: "tropical", "boolean", "nat", "zmod:<p>",
    "interval", "freeidpt:<k>", "table:<path>".
    """
    sel = selector.strip()
    if sel == "tropical":
        return TropicalSemiring()
    if sel == "boolean":
        return BooleanSemiring()
    if sel == "nat":
        return NaturalSemiring()
    if sel == "interval":
        return IntervalSemiring()
    if sel.startswith("zmod:"):
        return IntegersModSemiring(int(sel.split(":", 1)[1]))
    if sel.startswith("freeidpt:"):
        return FreeIdempotentSemiring(int(sel.split(":", 1)[1]))
    if sel.startswith("table:"):
        return TableSemiring.from_file(sel.split(":", 1)[1])
    raise ValueError(f"unknown semiring selector: {selector!r}")


def same_semiring(a: Semiring, b: Semiring) -> bool:
    return a.name == b.name


def require_same(a: Semiring, b: Semiring) -> None:
    if not same_semiring(a, b):
        raise SemiringMismatchError(
            f"semiring mismatch: {a.name} vs {b.name}")
