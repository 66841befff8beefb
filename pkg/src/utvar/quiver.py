"""Paths over triangular quivers and the word representation.

The quiver on vertices 1..n has, for each letter, one edge i -> j for
every i <= j; dropping the loops leaves paths with strictly increasing
vertices, so loop-free paths have length at most n-1.  A word w maps to
the algebra element whose coefficient at each loop-free path counts the
ways the path's label occurs in w as a scattered subword, each occurrence
weighted by the monomial of letters read around loops.

Elements of the path algebra carry finitely many loop-free paths with
nonzero polynomial coefficients; multiplication is convolution over path
concatenation.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Optional

from .poly import CountPoly, FormalPoly, Monomial, Var
from .semirings import Semiring, require_same


class Path:
    """A path in the letter-labelled quiver on [n].

    `vertices` is the visited sequence (nondecreasing; strictly increasing
    for loop-free paths) and `labels` the word read along the edges, with
    len(labels) == len(vertices) - 1.  The empty path at v is ((v,), "").
    """

    __slots__ = ("vertices", "labels")

    def __init__(self, vertices: tuple[int, ...], labels: str):
        if len(vertices) != len(labels) + 1 or not vertices:
            raise ValueError("path needs one more vertex than labels")
        if any(a > b for a, b in zip(vertices, vertices[1:])):
            raise ValueError("path vertices must be nondecreasing")
        self.vertices = tuple(vertices)
        self.labels = labels

    @classmethod
    def empty(cls, vertex: int) -> "Path":
        return cls((vertex,), "")

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def __len__(self):
        return len(self.labels)

    def is_empty(self) -> bool:
        return not self.labels

    def is_loop_free(self) -> bool:
        return all(a < b for a, b in zip(self.vertices, self.vertices[1:]))

    def then(self, other: "Path") -> Optional["Path"]:
        """Concatenation, or None when the endpoints do not match."""
        if self.end != other.start:
            return None
        return Path(self.vertices + other.vertices[1:],
                    self.labels + other.labels)

    def splits(self) -> Iterator[tuple["Path", "Path"]]:
        """All factorizations into a prefix and a suffix."""
        for i in range(len(self.vertices)):
            yield (Path(self.vertices[:i + 1], self.labels[:i]),
                   Path(self.vertices[i:], self.labels[i:]))

    def loop_removal(self) -> "Path":
        verts = [self.vertices[0]]
        labels = []
        for i, ch in enumerate(self.labels):
            if self.vertices[i] != self.vertices[i + 1]:
                verts.append(self.vertices[i + 1])
                labels.append(ch)
        return Path(tuple(verts), "".join(labels))

    def sort_key(self):
        return (len(self.labels), self.vertices, self.labels)

    def __eq__(self, other):
        return (isinstance(other, Path) and self.vertices == other.vertices
                and self.labels == other.labels)

    def __hash__(self):
        return hash((self.vertices, self.labels))

    def text(self) -> str:
        if not self.labels:
            return f"<{self.vertices[0]}>"
        parts = [str(self.vertices[0])]
        for ch, v in zip(self.labels, self.vertices[1:]):
            parts.append(f"-{ch}-> {v}")
        return "<" + " ".join(parts) + ">"

    def json(self) -> dict:
        return {"vertices": list(self.vertices), "labels": self.labels}

    def __repr__(self):
        return f"Path{self.text()}"


class Quiver:
    """The letter-labelled triangular quiver on vertices 1..n.

    With loops there is one edge i -> j per letter for every i <= j;
    without loops only i < j remain and paths have length at most n-1.
    """

    __slots__ = ("n", "sigma", "loops")

    def __init__(self, n: int, sigma: Iterable[str], loops: bool = False):
        if n < 1:
            raise ValueError("need at least one vertex")
        self.n = n
        self.sigma = tuple(sorted(set(sigma)))
        self.loops = loops

    def edges(self) -> Iterator[tuple[int, str, int]]:
        for i in range(1, self.n + 1):
            start = i if self.loops else i + 1
            for j in range(start, self.n + 1):
                for letter in self.sigma:
                    yield (i, letter, j)

    def has_edge(self, i: int, letter: str, j: int) -> bool:
        if letter not in self.sigma or not 1 <= i <= j <= self.n:
            return False
        return self.loops or i < j

    def contains_path(self, path: Path) -> bool:
        return all(
            self.has_edge(path.vertices[k], ch, path.vertices[k + 1])
            for k, ch in enumerate(path.labels))

    def paths(self, max_len: Optional[int] = None) -> list[Path]:
        """All paths up to a length cap, in the canonical order.  The cap
        is required when loops are present (the path set is infinite)."""
        if not self.loops:
            return enum_paths(self.n, self.sigma, max_len)
        if max_len is None:
            raise ValueError("looped quivers have infinitely many paths; "
                             "a length cap is required")
        out = []
        for length in range(max_len + 1):
            if length > 0 and not self.sigma:
                break
            for verts in product(range(1, self.n + 1), repeat=length + 1):
                if any(a > b for a, b in zip(verts, verts[1:])):
                    continue
                for labels in product(self.sigma, repeat=length):
                    out.append(Path(verts, "".join(labels)))
        out.sort(key=Path.sort_key)
        return out


def enum_paths(n: int, sigma: Iterable[str],
               max_len: Optional[int] = None) -> list[Path]:
    """All loop-free paths on [n], ordered by length, vertex sequence,
    then label."""
    if n < 1:
        raise ValueError("need at least one vertex")
    letters = sorted(set(sigma))
    top = n - 1 if max_len is None else min(max_len, n - 1)
    out = []
    for length in range(top + 1):
        if length > 0 and not letters:
            break
        for verts in combinations(range(1, n + 1), length + 1):
            for labels in product(letters, repeat=length):
                out.append(Path(verts, "".join(labels)))
    return out


def occurrence_walks(path: Path, word: str) -> list[Path]:
    """All walks in the looped quiver labelled `word` whose loop removal
    is `path`; they biject with the occurrences of the path's label as a
    scattered subword of the word."""
    if not path.is_loop_free():
        raise ValueError("skeleton path must be loop-free")
    results: list[Path] = []

    def extend(pos: int, edge: int, verts: tuple[int, ...], labels: str):
        if pos == len(word):
            if edge == len(path):
                results.append(Path(verts, labels))
            return
        ch = word[pos]
        here = path.vertices[edge]
        # read the letter around the loop at the current vertex
        extend(pos + 1, edge, verts + (here,), labels + ch)
        # or advance along the skeleton when the labels agree
        if edge < len(path) and path.labels[edge] == ch:
            extend(pos + 1, edge + 1, verts + (path.vertices[edge + 1],),
                   labels + ch)

    extend(0, 0, (path.vertices[0],), "")
    return results


def walk_monomial(walk: Path) -> Monomial:
    """The product of loop-read variables along a walk; skeleton edges
    contribute nothing."""
    pairs = []
    for i, ch in enumerate(walk.labels):
        if walk.vertices[i] == walk.vertices[i + 1]:
            pairs.append((Var(walk.vertices[i], ch), 1))
    return Monomial.from_pairs(pairs)


def occurrence_poly(path: Path, word: str) -> CountPoly:
    """The occurrence-count polynomial of a word against a skeleton path.

    Computed by dynamic programming over (position in word, edges of the
    path consumed); equals the sum of walk monomials with natural
    multiplicities, the zero polynomial when the path's label is not a
    scattered subword of the word.
    """
    edges = len(path)
    dp: list[Optional[CountPoly]] = [None] * (edges + 1)
    dp[0] = CountPoly.unit()
    for ch in word:
        nxt: list[Optional[CountPoly]] = [None] * (edges + 1)
        for k in range(edges + 1):
            cur = dp[k]
            if cur is None:
                continue
            looped = cur.mul_var(Var(path.vertices[k], ch))
            nxt[k] = looped if nxt[k] is None else nxt[k] + looped
            if k < edges and path.labels[k] == ch:
                nxt[k + 1] = cur if nxt[k + 1] is None else nxt[k + 1] + cur
        dp = nxt
    return dp[edges] if dp[edges] is not None else CountPoly.zero()


class PathAlgebraElem:
    """A finitely supported element of the path algebra over n vertices."""

    __slots__ = ("n", "semiring", "coeffs")

    def __init__(self, n: int, semiring: Semiring,
                 coeffs: Mapping[Path, FormalPoly]):
        self.n = n
        self.semiring = semiring
        self.coeffs = {}
        for path, poly in coeffs.items():
            if not path.is_loop_free() or path.end > n:
                raise ValueError(f"support path {path.text()} is not a "
                                 f"loop-free path on [{n}]")
            if not poly.is_zero():
                self.coeffs[path] = poly

    @classmethod
    def identity(cls, n: int, semiring: Semiring) -> "PathAlgebraElem":
        return cls(n, semiring, {
            Path.empty(v): FormalPoly.unit(semiring) for v in range(1, n + 1)})

    @classmethod
    def zero(cls, n: int, semiring: Semiring) -> "PathAlgebraElem":
        return cls(n, semiring, {})

    def _check_compatible(self, other: "PathAlgebraElem"):
        require_same(self.semiring, other.semiring)
        if self.n != other.n:
            raise ValueError(f"vertex count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "PathAlgebraElem") -> "PathAlgebraElem":
        self._check_compatible(other)
        acc = dict(self.coeffs)
        for path, poly in other.coeffs.items():
            acc[path] = acc[path] + poly if path in acc else poly
        return PathAlgebraElem(self.n, self.semiring, acc)

    def __mul__(self, other: "PathAlgebraElem") -> "PathAlgebraElem":
        """Convolution over path concatenation; undefined concatenations
        contribute nothing."""
        self._check_compatible(other)
        by_start: dict[int, list[tuple[Path, FormalPoly]]] = {}
        for path, poly in other.coeffs.items():
            by_start.setdefault(path.start, []).append((path, poly))
        acc: dict[Path, FormalPoly] = {}
        for left, lpoly in self.coeffs.items():
            for right, rpoly in by_start.get(left.end, ()):
                target = left.then(right)
                prod = lpoly * rpoly
                acc[target] = acc[target] + prod if target in acc else prod
        return PathAlgebraElem(self.n, self.semiring, acc)

    def __eq__(self, other):
        # Formal equality of all coefficients.
        return (isinstance(other, PathAlgebraElem)
                and self.n == other.n
                and self.semiring.name == other.semiring.name
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.n, self.semiring.name,
                     frozenset(self.coeffs.items())))

    def coefficient(self, path: Path) -> FormalPoly:
        return self.coeffs.get(path, FormalPoly.zero(self.semiring))

    def sorted_items(self) -> list[tuple[Path, FormalPoly]]:
        return sorted(self.coeffs.items(), key=lambda kv: kv[0].sort_key())

    def map_coeffs(self, fn) -> "PathAlgebraElem":
        return PathAlgebraElem(
            self.n, self.semiring,
            {p: fn(c) for p, c in self.coeffs.items()})

    def text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for path, poly in self.sorted_items():
            if poly == FormalPoly.unit(self.semiring):
                parts.append(path.text())
            elif poly.is_monomial():
                parts.append(f"{poly.text()} {path.text()}")
            else:
                parts.append(f"({poly.text()}) {path.text()}")
        return " + ".join(parts)

    def json(self) -> list:
        return [{"path": path.json(), "coeff": poly.text()}
                for path, poly in self.sorted_items()]

    def __repr__(self):
        return f"PathAlgebraElem[{self.semiring.name}, n={self.n}]({self.text()})"


def word_image(word: str, n: int, semiring: Semiring) -> PathAlgebraElem:
    """The image of a word in the path algebra: each loop-free path gets
    its occurrence polynomial mapped into the semiring.  The empty word
    maps to the algebra identity."""
    coeffs: dict[Path, FormalPoly] = {}
    for path in enum_paths(n, set(word), max_len=len(word)):
        counts = occurrence_poly(path, word)
        if counts.is_zero():
            continue
        poly = counts.into(semiring)
        if not poly.is_zero():
            coeffs[path] = poly
    return PathAlgebraElem(n, semiring, coeffs)


def reduce_top_vertex(elem: PathAlgebraElem) -> PathAlgebraElem:
    """Evaluate every top-vertex variable to 1 in all coefficients.

    This is a semiring morphism of the path algebra and is injective on
    word images for n >= 2."""
    reduced = {}
    for path, poly in elem.coeffs.items():
        collapsed = poly.collapse_vertex(elem.n)
        if not collapsed.is_zero():
            reduced[path] = collapsed
    return PathAlgebraElem(elem.n, elem.semiring, reduced)


def restore_top_vertex(elem: PathAlgebraElem) -> PathAlgebraElem:
    """Invert `reduce_top_vertex` on images of words.

    The coefficient of the empty path at vertex 1 fixes every letter count
    of the underlying word; each term of every coefficient then has a
    unique completion with top-vertex variables.  Raises ValueError when
    the bookkeeping is inconsistent, i.e. the input is not a reduced word
    image.
    """
    n = elem.n
    if n < 2:
        raise ValueError("top-vertex restoration needs n >= 2")
    S = elem.semiring
    anchor = elem.coeffs.get(Path.empty(1))
    if anchor is None or not anchor.is_monomial():
        raise ValueError("input is not a reduced word image: the vertex-1 "
                         "coefficient must be a single monomial")
    (mono, coeff), = anchor.terms.items()
    if coeff != S.one:
        raise ValueError("input is not a reduced word image: the vertex-1 "
                         "coefficient must carry the unit")
    if any(v.vertex != 1 for v in mono.vars()):
        raise ValueError("vertex-1 coefficient mentions a foreign vertex")
    letter_counts = {v.letter: e for v, e in mono}

    restored: dict[Path, FormalPoly] = {}
    for path, poly in elem.coeffs.items():
        label_counts: dict[str, int] = {}
        for ch in path.labels:
            label_counts[ch] = label_counts.get(ch, 0) + 1
        terms = []
        for term, c in poly.terms.items():
            letters = ({v.letter for v in term.vars()} | set(letter_counts)
                       | set(label_counts))
            pairs = list(term)
            for letter in letters:
                target = (letter_counts.get(letter, 0)
                          - label_counts.get(letter, 0))
                missing = target - term.degree(letter)
                if missing < 0:
                    raise ValueError(
                        f"inconsistent degrees at path {path.text()}: "
                        f"letter {letter!r} over target")
                if missing:
                    pairs.append((Var(n, letter), missing))
            terms.append((Monomial.from_pairs(pairs), c))
        restored[path] = FormalPoly.from_terms(S, terms)
    return PathAlgebraElem(n, S, restored)
