"""Identity checking in upper triangular matrix monoids.

An identity u = v holds in the n x n upper triangular matrices over a
commutative semiring exactly when, for every loop-free path of the
triangular quiver, the occurrence polynomials of u and v agree as
functions.  `check_identity` decides that directly; `oracle_check` is the
independent substitution oracle (exhaustive over finite semirings,
seeded-random otherwise) used for cross-validation and for witness
extraction over finite carriers.

Free objects of the generated varieties are represented by canonical
forms of word images; `free_elem` / `free_mul` / `free_eq` expose them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from random import Random
from typing import Mapping, Optional

from . import funceq
from .poly import Var
from .quiver import Path, PathAlgebraElem, enum_paths, occurrence_poly, word_image
from .semirings import Elem, Semiring, require_same


class UTMatrix:
    """An n x n matrix over a semiring, zero strictly below the diagonal."""

    __slots__ = ("semiring", "n", "rows")

    def __init__(self, semiring: Semiring, n: int, rows):
        rows = tuple(tuple(row) for row in rows)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"expected an {n}x{n} matrix")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != semiring.zero:
                    raise ValueError("entries below the diagonal must be zero")
        self.semiring = semiring
        self.n = n
        self.rows = rows

    @classmethod
    def identity(cls, semiring: Semiring, n: int) -> "UTMatrix":
        return cls(semiring, n, tuple(
            tuple(semiring.one if i == j else semiring.zero
                  for j in range(n)) for i in range(n)))

    @classmethod
    def from_upper(cls, semiring: Semiring, n: int,
                   upper: Mapping[tuple[int, int], Elem]) -> "UTMatrix":
        """Build from a map of 1-based (i, j) positions with i <= j."""
        return cls(semiring, n, tuple(
            tuple(upper.get((i + 1, j + 1), semiring.zero) if j >= i
                  else semiring.zero for j in range(n)) for i in range(n)))

    def __mul__(self, other: "UTMatrix") -> "UTMatrix":
        require_same(self.semiring, other.semiring)
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        S, n = self.semiring, self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if j < i:
                    row.append(S.zero)
                    continue
                acc = S.zero
                for k in range(i, j + 1):
                    acc = S.add(acc, S.mul(self.rows[i][k], other.rows[k][j]))
                row.append(acc)
            rows.append(tuple(row))
        return UTMatrix(S, n, tuple(rows))

    def __eq__(self, other):
        return (isinstance(other, UTMatrix) and self.n == other.n
                and self.semiring.name == other.semiring.name
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.semiring.name, self.n, self.rows))

    def text(self) -> str:
        S = self.semiring
        return "[" + ",".join(
            "[" + ",".join(S.format(x) for x in row) + "]"
            for row in self.rows) + "]"

    def json(self) -> list:
        return [[self.semiring.format(x) for x in row] for row in self.rows]

    def __repr__(self):
        return f"UTMatrix({self.text()})"


def ut_eval(word: str, assignment: Mapping[str, UTMatrix], n: int,
            semiring: Semiring) -> UTMatrix:
    """Evaluate a word under a letter-to-matrix assignment."""
    acc = UTMatrix.identity(semiring, n)
    for ch in word:
        if ch not in assignment:
            raise ValueError(f"no matrix assigned to letter {ch!r}")
        acc = acc * assignment[ch]
    return acc


def all_ut_matrices(semiring: Semiring, n: int) -> list[UTMatrix]:
    """Every upper triangular matrix over a finite semiring, in a fixed
    order."""
    elems = semiring.elements()
    if elems is None:
        raise ValueError(f"{semiring.name} is not finite")
    slots = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    out = []
    for combo in product(elems, repeat=len(slots)):
        out.append(UTMatrix.from_upper(semiring, n, dict(zip(slots, combo))))
    return out


def random_ut_matrix(semiring: Semiring, n: int, rng: Random) -> UTMatrix:
    upper = {(i, j): semiring.sample(rng)
             for i in range(1, n + 1) for j in range(i, n + 1)}
    return UTMatrix.from_upper(semiring, n, upper)


@dataclass(frozen=True)
class Identity:
    """A semigroup or monoid identity between two words."""

    lhs: str
    rhs: str
    kind: str = "semigroup"

    def __post_init__(self):
        if self.kind not in ("semigroup", "monoid"):
            raise ValueError(f"unknown identity kind {self.kind!r}")
        if self.kind == "semigroup" and (not self.lhs or not self.rhs):
            raise ValueError("semigroup identities need nonempty sides")

    @classmethod
    def parse(cls, text: str, kind: Optional[str] = None) -> "Identity":
        if text.count("=") != 1:
            raise ValueError(f"identity must contain exactly one '=': {text!r}")
        lhs, rhs = (side.strip() for side in text.split("="))
        for side in (lhs, rhs):
            if not all(ch.isascii() and ch.isalpha() for ch in side):
                raise ValueError(f"words must be ASCII letter strings: {side!r}")
        if kind is None:
            kind = "semigroup" if lhs and rhs else "monoid"
        return cls(lhs, rhs, kind)

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.lhs) | set(self.rhs)))

    def text(self) -> str:
        return f"{self.lhs} = {self.rhs}"


@dataclass
class Verdict:
    """Outcome of an identity check, reproducible and re-checkable."""

    holds: bool
    identity: Identity
    n: int
    semiring: str
    method: str
    witness_path: Optional[Path] = None
    witness_assignment: Optional[dict[str, UTMatrix]] = None
    seed: Optional[int] = None
    checked: int = 0
    complete: bool = True

    def json(self) -> dict:
        return {
            "holds": self.holds,
            "identity": self.identity.text(),
            "kind": self.identity.kind,
            "n": self.n,
            "semiring": self.semiring,
            "method": self.method,
            "witness_path": (self.witness_path.json()
                             if self.witness_path else None),
            "witness_assignment": (
                {a: m.json() for a, m in self.witness_assignment.items()}
                if self.witness_assignment else None),
            "seed": self.seed,
            "checked": self.checked,
            "complete": self.complete,
        }


def _diagonal_lift(point: Mapping, letters, n: int, semiring: Semiring,
                   isolate: Optional[Path] = None) -> dict[str, UTMatrix]:
    """Matrix substitution from a separating point: variable values on the
    diagonal, the unit on off-diagonal entries.  In isolating mode only
    the edges of the given path keep the unit so no parallel path can mask
    the separated coefficient."""
    assign = {}
    allowed = set()
    if isolate is not None:
        for k, ch in enumerate(isolate.labels):
            allowed.add((isolate.vertices[k], isolate.vertices[k + 1], ch))
    for letter in letters:
        upper = {}
        for i in range(1, n + 1):
            upper[i, i] = point.get(Var(i, letter), semiring.one)
            for j in range(i + 1, n + 1):
                if isolate is None or (i, j, letter) in allowed:
                    upper[i, j] = semiring.one
                else:
                    upper[i, j] = semiring.zero
        assign[letter] = UTMatrix.from_upper(semiring, n, upper)
    return assign


def _verify_assignment(ident: Identity, assign: dict[str, UTMatrix], n: int,
                       semiring: Semiring) -> bool:
    return (ut_eval(ident.lhs, assign, n, semiring)
            != ut_eval(ident.rhs, assign, n, semiring))


_FINITE_SEARCH_CAP = 2_000_000


def _finite_counterexample(ident: Identity, n: int, semiring: Semiring):
    mats = all_ut_matrices(semiring, n)
    letters = ident.letters
    if len(mats) ** len(letters) > _FINITE_SEARCH_CAP:
        return None
    for combo in product(mats, repeat=len(letters)):
        assign = dict(zip(letters, combo))
        if _verify_assignment(ident, assign, n, semiring):
            return assign
    return None


def check_identity(ident: Identity, n: int, semiring: Semiring) -> Verdict:
    """Decide an identity in the n x n upper triangular matrices.

    Holds iff the occurrence polynomials of the two sides agree as
    functions on every loop-free path; the first failing path is reported
    together with a verified separating matrix substitution whenever one
    can be constructed."""
    for path in enum_paths(n, ident.letters):
        left = occurrence_poly(path, ident.lhs)
        right = occurrence_poly(path, ident.rhs)
        if left == right:
            continue
        fl, fr = left.into(semiring), right.into(semiring)
        equal, witness = funceq.func_equal(fl, fr)
        if equal:
            continue
        assignment = None
        if semiring.finite:
            assignment = _finite_counterexample(ident, n, semiring)
        elif witness is not None:
            for isolate in (None, path):
                candidate = _diagonal_lift(witness.point, ident.letters, n,
                                           semiring, isolate=isolate)
                if _verify_assignment(ident, candidate, n, semiring):
                    assignment = candidate
                    break
        return Verdict(holds=False, identity=ident, n=n,
                       semiring=semiring.name, method="decision",
                       witness_path=path, witness_assignment=assignment)
    return Verdict(holds=True, identity=ident, n=n, semiring=semiring.name,
                   method="decision")


# Cached word-evaluation tables for exhaustive oracles, keyed by semiring,
# dimension and letter set.  Entries are flat row-major tuples.
_ORACLE_CACHE: dict = {}


def _flat_identity(semiring: Semiring, n: int) -> tuple:
    return tuple(semiring.one if i == j else semiring.zero
                 for i in range(n) for j in range(n))


def _flat_mul(a: tuple, b: tuple, n: int, semiring: Semiring) -> tuple:
    out = []
    for i in range(n):
        for j in range(n):
            if j < i:
                out.append(semiring.zero)
                continue
            acc = semiring.zero
            for k in range(i, j + 1):
                acc = semiring.add(acc, semiring.mul(a[i * n + k], b[k * n + j]))
            out.append(acc)
    return tuple(out)


def _oracle_context(semiring: Semiring, n: int, letters: tuple[str, ...]):
    key = (semiring.name, n, letters)
    ctx = _ORACLE_CACHE.get(key)
    if ctx is None:
        mats = [tuple(x for row in m.rows for x in row)
                for m in all_ut_matrices(semiring, n)]
        assigns = list(product(range(len(mats)), repeat=len(letters)))
        ctx = {"mats": mats, "assigns": assigns, "tables": {}}
        _ORACLE_CACHE[key] = ctx
    return ctx


def _word_table(ctx, word: str, letters, n: int, semiring: Semiring) -> tuple:
    tables = ctx["tables"]
    cached = tables.get(word)
    if cached is not None:
        return cached
    if not word:
        ident = _flat_identity(semiring, n)
        result = tuple(ident for _ in ctx["assigns"])
    else:
        prev = _word_table(ctx, word[:-1], letters, n, semiring)
        pos = letters.index(word[-1])
        mats = ctx["mats"]
        result = tuple(
            _flat_mul(prev[idx], mats[assign[pos]], n, semiring)
            for idx, assign in enumerate(ctx["assigns"]))
    tables[word] = result
    return result


_ORACLE_TABLE_CAP = 100_000


def oracle_check(ident: Identity, n: int, semiring: Semiring,
                 budget: int = 20000, seed: int = 0) -> Verdict:
    """Check an identity by matrix substitution.

    Finite semirings are swept exhaustively (exact verdict); small
    assignment spaces go through memoized per-word evaluation tables,
    larger ones are streamed with constant memory.  Otherwise `budget`
    seeded-random substitutions are tried and a holding verdict only
    means no counterexample was found: `complete` is False."""
    letters = ident.letters
    if semiring.finite:
        mats = all_ut_matrices(semiring, n)
        total = len(mats) ** len(letters)
        if total <= _ORACLE_TABLE_CAP:
            ctx = _oracle_context(semiring, n, letters)
            lhs = _word_table(ctx, ident.lhs, letters, n, semiring)
            rhs = _word_table(ctx, ident.rhs, letters, n, semiring)
            if lhs == rhs:
                return Verdict(holds=True, identity=ident, n=n,
                               semiring=semiring.name, method="exhaustive",
                               checked=total)
            idx = next(i for i in range(total) if lhs[i] != rhs[i])
            assign = {
                letter: UTMatrix(semiring, n, tuple(
                    tuple(ctx["mats"][mi][r * n + c] for c in range(n))
                    for r in range(n)))
                for letter, mi in zip(letters, ctx["assigns"][idx])}
            return Verdict(holds=False, identity=ident, n=n,
                           semiring=semiring.name, method="exhaustive",
                           witness_assignment=assign, checked=total)
        for combo in product(mats, repeat=len(letters)):
            assign = dict(zip(letters, combo))
            if _verify_assignment(ident, assign, n, semiring):
                return Verdict(holds=False, identity=ident, n=n,
                               semiring=semiring.name, method="exhaustive",
                               witness_assignment=assign, checked=total)
        return Verdict(holds=True, identity=ident, n=n,
                       semiring=semiring.name, method="exhaustive",
                       checked=total)

    rng = Random(seed)
    for step in range(budget):
        assign = {letter: random_ut_matrix(semiring, n, rng)
                  for letter in letters}
        if _verify_assignment(ident, assign, n, semiring):
            return Verdict(holds=False, identity=ident, n=n,
                           semiring=semiring.name, method="randomized",
                           witness_assignment=assign, seed=seed,
                           checked=step + 1)
    return Verdict(holds=True, identity=ident, n=n, semiring=semiring.name,
                   method="randomized", seed=seed, checked=budget,
                   complete=False)


class FreeElem:
    """A canonical element of the free object: every loop-free path mapped
    to the canonical form of its coefficient function."""

    __slots__ = ("n", "semiring", "coeffs", "key", "word")

    def __init__(self, n: int, semiring: Semiring,
                 algebra_elem: PathAlgebraElem, word: Optional[str] = None):
        self.n = n
        self.semiring = semiring
        coeffs = {}
        for path, poly in algebra_elem.coeffs.items():
            if funceq.is_zero_function(poly):
                continue
            coeffs[path] = funceq.canonicalize(poly)
        self.coeffs = coeffs
        self.key = frozenset(
            (path, funceq.canonical_key(poly))
            for path, poly in coeffs.items())
        self.word = word

    def algebra_elem(self) -> PathAlgebraElem:
        return PathAlgebraElem(self.n, self.semiring, self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, FreeElem) and self.n == other.n
                and self.semiring.name == other.semiring.name
                and self.key == other.key)

    def __hash__(self):
        return hash((self.n, self.semiring.name, self.key))

    def text(self) -> str:
        return self.algebra_elem().text()

    def __repr__(self):
        return f"FreeElem[{self.semiring.name}, n={self.n}]({self.text()})"


def free_elem(word: str, n: int, semiring: Semiring) -> FreeElem:
    """The canonical free-object element represented by a word."""
    return FreeElem(n, semiring, word_image(word, n, semiring), word=word)


def free_mul(x: FreeElem, y: FreeElem) -> FreeElem:
    """Product in the free object: multiply any representatives, then
    re-canonicalize (function equality is a congruence, so the choice of
    representative does not matter)."""
    require_same(x.semiring, y.semiring)
    if x.n != y.n:
        raise ValueError("vertex count mismatch")
    word = (x.word + y.word) if x.word is not None and y.word is not None \
        else None
    return FreeElem(x.n, x.semiring, x.algebra_elem() * y.algebra_elem(),
                    word=word)


def free_eq(x: FreeElem, y: FreeElem) -> bool:
    """Equality in the free object: holds iff the identity between any
    representing words holds in the matrix monoid."""
    require_same(x.semiring, y.semiring)
    if x.n != y.n:
        raise ValueError("vertex count mismatch")
    return x.key == y.key
