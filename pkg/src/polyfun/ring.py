"""Finite unital rings given by structure constants over Z/m.

A ring of rank r over Z/m is the free module (Z/m)^r with basis b_0..b_{r-1}
and multiplication b_i * b_j = sum_k mul[i][j][k] * b_k. Matrix rings,
triangular matrix rings, opposite rings and arbitrary table rings all share
this one representation.
"""

from __future__ import annotations

import functools
import itertools
import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from polyfun.config import Caps, get_caps
from polyfun.errors import CapError, RingSpecError
from polyfun.linalg import HowellForm, howell_form, kernel


class FiniteRing:
    """A unital ring presented as a free Z/m-module with structure constants.

    The structure tensor is validated for associativity and unitality at
    construction. Instances are immutable.
    """

    def __init__(
        self,
        modulus: int,
        basis: Sequence[str],
        mul,
        one: Sequence[int],
        name: str | None = None,
        matrix_shape: tuple | None = None,
    ):
        if not isinstance(modulus, int) or isinstance(modulus, bool) or modulus < 2:
            raise RingSpecError(f"modulus must be an integer >= 2, got {modulus!r}")
        r = len(basis)
        if r < 1:
            raise RingSpecError("rank must be positive")
        if len(set(basis)) != r:
            raise RingSpecError("basis labels must be distinct")
        m = modulus
        try:
            tensor = tuple(
                tuple(tuple(int(c) % m for c in mul[i][j]) for j in range(r)) for i in range(r)
            )
            one_t = tuple(int(c) % m for c in one)
        except (TypeError, ValueError, IndexError) as exc:
            raise RingSpecError(f"malformed structure constants: {exc}") from None
        if len(mul) != r or any(len(row) != r for row in mul):
            raise RingSpecError(f"mul must be a {r}x{r} array")
        if any(len(cell) != r for row in tensor for cell in row):
            raise RingSpecError(f"every mul entry must have length {r}")
        if len(one_t) != r:
            raise RingSpecError(f"one must have length {r}")

        self.modulus = m
        self.rank = r
        self.basis_labels = tuple(str(b) for b in basis)
        self.mul_table = tensor
        self.one_coords = one_t
        self.name = name
        # (family, n, positions) for matrix-family rings; positions[k] = (row, col)
        self.matrix_shape = matrix_shape
        self._terms = [
            (i, j, tuple((k, c) for k, c in enumerate(tensor[i][j]) if c))
            for i in range(r)
            for j in range(r)
            if any(tensor[i][j])
        ]
        self._check_axioms()

    # -- construction checks ------------------------------------------------

    def _check_axioms(self):
        r = self.rank
        basis = [self._unit_vector(i) for i in range(r)]
        prods = [[self.mul_coords(basis[i], basis[j]) for j in range(r)] for i in range(r)]
        for i, j, k in itertools.product(range(r), repeat=3):
            left = self.mul_coords(prods[i][j], basis[k])
            right = self.mul_coords(basis[i], prods[j][k])
            if left != right:
                lab = self.basis_labels
                raise RingSpecError(
                    f"associativity fails for ({lab[i]}, {lab[j]}, {lab[k]}): "
                    f"{list(left)} != {list(right)}"
                )
        for i in range(r):
            if self.mul_coords(self.one_coords, basis[i]) != basis[i] or (
                self.mul_coords(basis[i], self.one_coords) != basis[i]
            ):
                raise RingSpecError(f"one is not a two-sided identity on {self.basis_labels[i]}")

    def _unit_vector(self, i: int) -> tuple[int, ...]:
        v = [0] * self.rank
        v[i] = 1 % self.modulus
        return tuple(v)

    # -- raw coordinate arithmetic -------------------------------------------

    def mul_coords(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        m = self.modulus
        out = [0] * self.rank
        for i, j, terms in self._terms:
            ai = a[i]
            if not ai:
                continue
            bj = b[j]
            if not bj:
                continue
            c = ai * bj
            for k, s in terms:
                out[k] += c * s
        return tuple(x % m for x in out)

    def add_coords(self, a, b) -> tuple[int, ...]:
        m = self.modulus
        return tuple((x + y) % m for x, y in zip(a, b))

    # -- elements --------------------------------------------------------------

    @property
    def order(self) -> int:
        return self.modulus**self.rank

    def element(self, coords: Sequence[int]) -> "RingElement":
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return RingElement(self, tuple(int(c) % self.modulus for c in coords))

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, (0,) * self.rank)

    @property
    def one(self) -> "RingElement":
        return RingElement(self, self.one_coords)

    def basis_elements(self) -> list["RingElement"]:
        return [RingElement(self, self._unit_vector(i)) for i in range(self.rank)]

    def elements(self) -> Iterator["RingElement"]:
        for coords in itertools.product(range(self.modulus), repeat=self.rank):
            yield RingElement(self, coords)

    def is_commutative(self) -> bool:
        r = self.rank
        return all(self.mul_table[i][j] == self.mul_table[j][i] for i in range(r) for j in range(i))

    def opposite(self) -> "FiniteRing":
        """Same module with reversed multiplication."""
        r = self.rank
        mul = [[self.mul_table[j][i] for j in range(r)] for i in range(r)]
        name = f"{self.name}^op" if self.name else None
        shape = None
        if self.matrix_shape is not None:
            shape = (self.matrix_shape[0] + "^op",) + tuple(self.matrix_shape[1:])
        return FiniteRing(self.modulus, self.basis_labels, mul, self.one_coords, name, shape)

    def same_structure(self, other: "FiniteRing") -> bool:
        """Equality of structure tensors, ignoring basis labels."""
        return (self.modulus, self.mul_table, self.one_coords) == (
            other.modulus,
            other.mul_table,
            other.one_coords,
        )

    def _key(self):
        return (self.modulus, self.basis_labels, self.mul_table, self.one_coords)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        label = self.name or f"rank {self.rank}"
        return f"FiniteRing({label}, m={self.modulus})"

    @property
    def ident(self) -> str:
        return self.name or f"table-m{self.modulus}-r{self.rank}"

    # -- text forms -----------------------------------------------------------

    def format_element(self, el: "RingElement") -> str:
        terms = []
        for c, lab in zip(el.coords, self.basis_labels):
            if c == 0:
                continue
            terms.append(lab if c == 1 else f"{c}*{lab}")
        return "+".join(terms) if terms else "0"

    def parse_element(self, text) -> "RingElement":
        """Parse a coordinate list or a label expression such as ``2*e11+e12-I``."""
        if isinstance(text, (list, tuple)):
            return self.element(text)
        s = str(text).replace(" ", "")
        if not s:
            raise RingSpecError("empty element expression")
        if s.startswith("["):
            try:
                return self.element(json.loads(s))
            except (json.JSONDecodeError, ValueError, TypeError) as exc:
                raise RingSpecError(f"bad coordinate list {s!r}: {exc}") from None
        index = {lab: i for i, lab in enumerate(self.basis_labels)}
        acc = [0] * self.rank
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            coef_s, star, lab = body.rpartition("*")
            if not star:
                coef_s, lab = "", body
            try:
                coef = int(coef_s) if coef_s else 1
            except ValueError:
                raise RingSpecError(f"bad coefficient in {body!r}") from None
            if sign == "-":
                coef = -coef
            if lab in index:
                acc[index[lab]] += coef
            elif lab in ("I", "one", "1") and lab not in index:
                acc = [a + coef * o for a, o in zip(acc, self.one_coords)]
            elif re.fullmatch(r"\d+", lab) and not coef_s:
                acc = [a + coef * int(lab) * o for a, o in zip(acc, self.one_coords)]
            else:
                raise RingSpecError(f"unknown basis label {lab!r}")
        if not re.fullmatch(r"([+-]?[^+-]+)+", s):
            raise RingSpecError(f"cannot parse element {text!r}")
        return self.element(acc)

    def to_spec(self) -> dict:
        doc = {}
        if self.name:
            doc["name"] = self.name
        doc["modulus"] = self.modulus
        doc["rank"] = self.rank
        doc["basis"] = list(self.basis_labels)
        doc["one"] = list(self.one_coords)
        doc["mul"] = [[list(cell) for cell in row] for row in self.mul_table]
        return doc

    def dumps(self) -> str:
        """Canonical ring-spec text."""
        return json.dumps(self.to_spec(), separators=(",", ":")) + "\n"


@dataclass(frozen=True, eq=True)
class RingElement:
    ring: FiniteRing
    coords: tuple

    def _check(self, other):
        if not isinstance(other, RingElement):
            raise TypeError(f"expected RingElement, got {type(other).__name__}")
        if other.ring is not self.ring and other.ring != self.ring:
            raise ValueError("operands belong to different rings")

    def __add__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.add_coords(self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        m = self.ring.modulus
        return RingElement(self.ring, tuple((x - y) % m for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        m = self.ring.modulus
        return RingElement(self.ring, tuple((-x) % m for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            m = self.ring.modulus
            return RingElement(self.ring, tuple((x * other) % m for x in self.coords))
        if not isinstance(other, RingElement):
            return NotImplemented
        self._check(other)
        return RingElement(self.ring, self.ring.mul_coords(self.coords, other.coords))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        return f"<{self.ring.format_element(self)}>"

    def __str__(self):
        return self.ring.format_element(self)

    def __hash__(self):
        return hash(self.coords)


def elem_arith(op: str, a: RingElement, b) -> RingElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a**b
    raise ValueError(f"unknown operation {op!r}")


def power_cycle(s: RingElement, cap: int | None = None) -> tuple[int, int]:
    """(preperiod, period) of the sequence s^0, s^1, s^2, ... ."""
    seen = {}
    p = s.ring.one
    k = 0
    limit = cap if cap is not None else s.ring.order + 1
    while p.coords not in seen:
        if k > limit:
            raise CapError(f"power sequence of {s} did not cycle within {limit} steps")
        seen[p.coords] = k
        p = p * s
        k += 1
    start = seen[p.coords]
    return start, k - start


# -- builders -----------------------------------------------------------------


def _matrix_label(a: int, b: int, n: int) -> str:
    return f"e{a + 1}{b + 1}" if n <= 9 else f"e{a + 1}_{b + 1}"


def _matrix_family_ring(n: int, m: int, triangular: bool, caps: Caps | None, name: str) -> FiniteRing:
    caps = caps or get_caps()
    if n < 1 or m < 2:
        raise RingSpecError(f"need n >= 1 and m >= 2, got n={n}, m={m}")
    if n > caps.max_matrix_n or m > caps.max_modulus:
        raise CapError(f"matrix ring n={n}, m={m} exceeds caps (n <= {caps.max_matrix_n}, m <= {caps.max_modulus})")
    positions = [(a, b) for a in range(n) for b in range(n) if not triangular or a <= b]
    index = {pos: k for k, pos in enumerate(positions)}
    r = len(positions)
    mul = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i, (a, b) in enumerate(positions):
        for j, (c, d) in enumerate(positions):
            if b == c:
                mul[i][j][index[(a, d)]] = 1
    one = [1 if a == b else 0 for a, b in positions]
    labels = [_matrix_label(a, b, n) for a, b in positions]
    family = "triangular" if triangular else "full"
    return FiniteRing(m, labels, mul, one, name=name, matrix_shape=(family, n, tuple(positions)))


@functools.lru_cache(maxsize=256)
def _matrix_ring_cached(n, m, triangular, caps):
    prefix = "t" if triangular else "m"
    return _matrix_family_ring(n, m, triangular, caps, f"{prefix}{n}z{m}")


def make_matrix_ring(n: int, m: int, caps: Caps | None = None) -> FiniteRing:
    """M_n(Z/m) on the matrix units e_ab."""
    return _matrix_ring_cached(n, m, False, caps or get_caps())


def make_triangular_ring(n: int, m: int, caps: Caps | None = None) -> FiniteRing:
    """Upper triangular T_n(Z/m), rank n(n+1)/2."""
    return _matrix_ring_cached(n, m, True, caps or get_caps())


@functools.lru_cache(maxsize=256)
def _cyclic_cached(m, caps):
    if m > caps.max_modulus:
        raise CapError(f"modulus {m} exceeds cap {caps.max_modulus}")
    return FiniteRing(m, ["u"], [[[1]]], [1], name=f"z{m}", matrix_shape=("full", 1, ((0, 0),)))


def make_cyclic_ring(m: int, caps: Caps | None = None) -> FiniteRing:
    """Z/m as a rank-1 ring with basis label ``u`` (the identity)."""
    if m < 2:
        raise RingSpecError(f"modulus must be >= 2, got {m}")
    return _cyclic_cached(m, caps or get_caps())


_BUILTIN = re.compile(r"^(?:z(\d+)|([mt])(\d+)z(\d+))$")


def builtin_ring(name: str, caps: Caps | None = None) -> FiniteRing:
    """Resolve builtin names ``z{m}``, ``m{n}z{m}``, ``t{n}z{m}``."""
    match = _BUILTIN.match(name.strip().lower())
    if not match:
        raise RingSpecError(f"unknown builtin ring {name!r} (expected z<m>, m<n>z<m> or t<n>z<m>)")
    if match.group(1):
        return make_cyclic_ring(int(match.group(1)), caps)
    n, m = int(match.group(3)), int(match.group(4))
    if match.group(2) == "m":
        return make_matrix_ring(n, m, caps)
    return make_triangular_ring(n, m, caps)


def load_ring_spec(document: str) -> FiniteRing:
    """Parse a ring-spec JSON document. Either the whole ring is valid or it raises."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise RingSpecError(f"ring spec is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise RingSpecError("ring spec must be a JSON object")
    missing = [k for k in ("modulus", "rank", "basis", "one", "mul") if k not in doc]
    if missing:
        raise RingSpecError(f"ring spec missing fields: {', '.join(missing)}")
    rank = doc["rank"]
    if not isinstance(rank, int) or rank < 1:
        raise RingSpecError(f"rank must be a positive integer, got {rank!r}")
    if not isinstance(doc["basis"], list) or len(doc["basis"]) != rank:
        raise RingSpecError(f"basis must list {rank} labels")
    for cell in _iter_cells(doc["mul"], rank):
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in cell):
            raise RingSpecError("mul entries must be integers")
    if not isinstance(doc["one"], list) or not all(isinstance(c, int) for c in doc["one"]):
        raise RingSpecError("one must be a list of integers")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise RingSpecError("name must be a string")
    return FiniteRing(doc["modulus"], doc["basis"], doc["mul"], doc["one"], name=name)


def _iter_cells(mul, rank):
    if not isinstance(mul, list) or len(mul) != rank:
        raise RingSpecError(f"mul must be a {rank}x{rank} array")
    for row in mul:
        if not isinstance(row, list) or len(row) != rank:
            raise RingSpecError(f"mul must be a {rank}x{rank} array")
        for cell in row:
            if not isinstance(cell, list) or len(cell) != rank:
                raise RingSpecError(f"every mul entry must be a list of length {rank}")
            yield cell


# -- matrix-family helpers ----------------------------------------------------


def element_from_matrix(R: FiniteRing, matrix: Sequence[Sequence[int]]) -> RingElement:
    if R.matrix_shape is None:
        raise ValueError(f"{R!r} is not a matrix-family ring")
    family, n, positions = R.matrix_shape
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError(f"expected a {n}x{n} matrix")
    covered = set(positions)
    for a in range(n):
        for b in range(n):
            if (a, b) not in covered and matrix[a][b] % R.modulus:
                raise ValueError(f"entry ({a + 1},{b + 1}) must vanish in {family} family")
    return R.element([matrix[a][b] for a, b in positions])


def element_to_matrix(el: RingElement) -> list[list[int]]:
    R = el.ring
    if R.matrix_shape is None:
        raise ValueError(f"{R!r} is not a matrix-family ring")
    _, n, positions = R.matrix_shape
    out = [[0] * n for _ in range(n)]
    for c, (a, b) in zip(el.coords, positions):
        out[a][b] = c
    return out


def reduce_mod(matrix: Sequence[Sequence[int]], d: int, family: str = "full", caps: Caps | None = None) -> RingElement:
    """Entrywise residue of an integer matrix in M_n(Z/d) or T_n(Z/d)."""
    if d < 2:
        raise ValueError(f"modulus must be >= 2, got {d}")
    n = len(matrix)
    if family == "full":
        R = make_matrix_ring(n, d, caps)
    elif family == "triangular":
        R = make_triangular_ring(n, d, caps)
    else:
        raise ValueError(f"unknown family {family!r}")
    return element_from_matrix(R, [[x % d for x in row] for row in matrix])


# -- subrings, ideals, subsets ------------------------------------------------


@dataclass(frozen=True)
class SubringDesc:
    ring: FiniteRing
    generators: tuple
    basis: HowellForm

    def contains(self, el: RingElement) -> bool:
        return self.basis.contains(el.coords)

    def basis_elements(self) -> list[RingElement]:
        return [self.ring.element(row) for row in self.basis.rows]

    def elements(self) -> Iterator[RingElement]:
        for coords in self.basis.elements():
            yield RingElement(self.ring, coords)

    @property
    def size(self) -> int:
        return self.basis.size()

    def is_whole_ring(self) -> bool:
        return self.basis.is_full()

    def is_commutative(self) -> bool:
        els = self.basis_elements()
        return all(a * b == b * a for a in els for b in els)

    def opposite(self, Rop: FiniteRing | None = None) -> "SubringDesc":
        Rop = Rop or self.ring.opposite()
        return SubringDesc(Rop, tuple(Rop.element(g.coords) for g in self.generators), self.basis)


@dataclass(frozen=True)
class IdealDesc:
    subring: SubringDesc
    basis: HowellForm

    @property
    def ring(self) -> FiniteRing:
        return self.subring.ring

    def contains(self, el: RingElement) -> bool:
        return self.basis.contains(el.coords)

    def is_zero(self) -> bool:
        return len(self.basis) == 0

    def opposite(self, Rop: FiniteRing | None = None) -> "IdealDesc":
        return IdealDesc(self.subring.opposite(Rop), self.basis)


@dataclass(frozen=True)
class SubsetSpec:
    ring: FiniteRing
    elements: tuple
    ambient: SubringDesc | None = None

    def __post_init__(self):
        seen = {}
        for el in self.elements:
            if not isinstance(el, RingElement):
                raise TypeError("subset members must be RingElements")
            if el.ring is not self.ring and el.ring != self.ring:
                raise ValueError("subset member from a different ring")
            seen.setdefault(el.coords, el)
        object.__setattr__(self, "elements", tuple(seen.values()))
        if self.ambient is not None:
            for el in self.elements:
                if not self.ambient.contains(el):
                    raise ValueError(f"{el} is not in the ambient subring")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def coords(self) -> list[list[int]]:
        return [list(e.coords) for e in self.elements]

    def union(self, other: "SubsetSpec") -> "SubsetSpec":
        return SubsetSpec(self.ring, self.elements + other.elements, self.ambient)

    def opposite(self, Rop: FiniteRing | None = None) -> "SubsetSpec":
        Rop = Rop or self.ring.opposite()
        ambient = self.ambient.opposite(Rop) if self.ambient is not None else None
        return SubsetSpec(Rop, tuple(Rop.element(e.coords) for e in self.elements), ambient)


def subset(R: FiniteRing, items: Iterable, ambient: SubringDesc | None = None) -> SubsetSpec:
    els = [x if isinstance(x, RingElement) else R.parse_element(x) for x in items]
    return SubsetSpec(R, tuple(els), ambient)


def whole_ring(R: FiniteRing) -> SubringDesc:
    rows = [list(e.coords) for e in R.basis_elements()]
    return SubringDesc(R, tuple(R.basis_elements()), howell_form(rows, R.modulus, R.rank))


def _as_subring(X) -> SubringDesc:
    return whole_ring(X) if isinstance(X, FiniteRing) else X


def subring_closure(R: FiniteRing, generators: Iterable[RingElement]) -> SubringDesc:
    """Smallest subring of R containing one and ``generators``."""
    gens = tuple(generators)
    m, r = R.modulus, R.rank
    rows = [list(R.one_coords)] + [list(g.coords) for g in gens]
    form = howell_form(rows, m, r)
    while True:
        els = [tuple(row) for row in form.rows]
        prods = [list(R.mul_coords(a, b)) for a in els for b in els]
        new = howell_form([list(e) for e in els] + prods, m, r)
        if new == form:
            return SubringDesc(R, gens, form)
        form = new


def ideal_generated(T, generators: Iterable[RingElement]) -> IdealDesc:
    """Two-sided ideal of the subring T generated by ``generators``."""
    T = _as_subring(T)
    R = T.ring
    m, r = R.modulus, R.rank
    gens = list(generators)
    for g in gens:
        if not T.contains(g):
            raise ValueError(f"ideal generator {g} is not in the subring")
    tb = [tuple(row) for row in T.basis.rows]
    form = howell_form([list(g.coords) for g in gens], m, r)
    while True:
        els = [tuple(row) for row in form.rows]
        extra = []
        for a in els:
            for t in tb:
                extra.append(list(R.mul_coords(t, a)))
                extra.append(list(R.mul_coords(a, t)))
        new = howell_form([list(e) for e in els] + extra, m, r)
        if new == form:
            return IdealDesc(T, form)
        form = new


def zero_ideal(T) -> IdealDesc:
    T = _as_subring(T)
    return IdealDesc(T, howell_form([], T.ring.modulus, T.ring.rank))


def whole_ideal(T) -> IdealDesc:
    T = _as_subring(T)
    return IdealDesc(T, T.basis)


def center(X) -> SubringDesc:
    """Center of a ring or subring, solved as a linear system over Z/m."""
    T = _as_subring(X)
    R = T.ring
    m = R.modulus
    tb = [tuple(row) for row in T.basis.rows]
    # variable i contributes [t_i, t_j] to block j
    matrix = []
    for ti in tb:
        row = []
        for tj in tb:
            ab = R.mul_coords(ti, tj)
            ba = R.mul_coords(tj, ti)
            row.extend((x - y) % m for x, y in zip(ab, ba))
        matrix.append(row)
    ker = kernel(matrix, m, len(tb) * R.rank)
    rows = []
    for y in ker.rows:
        z = [0] * R.rank
        for coef, t in zip(y, tb):
            if coef:
                z = [(a + coef * b) % m for a, b in zip(z, t)]
        rows.append(z)
    rows.append(list(R.one_coords))
    form = howell_form(rows, m, R.rank)
    return SubringDesc(R, tuple(R.element(row) for row in form.rows), form)


def units(X, caps: Caps | None = None) -> list[tuple[RingElement, RingElement]]:
    """All (unit, inverse) pairs of a ring or subring, in enumeration order."""
    caps = caps or get_caps()
    T = _as_subring(X)
    if T.size > caps.unit_enum_order:
        raise CapError(f"ring of order {T.size} exceeds unit enumeration cap {caps.unit_enum_order}")
    out = []
    for u in T.elements():
        pre, per = power_cycle(u)
        # in a finite ring u is invertible iff its powers return to 1
        if pre == 0:
            out.append((u, u ** (per - 1)))
    return out


def is_unit_generated_over_center(X, caps: Caps | None = None) -> tuple[bool, SubringDesc]:
    """Whether center and units generate X as a ring; also returns the generated subring."""
    T = _as_subring(X)
    Z = center(T)
    gens = Z.basis_elements() + [u for u, _ in units(T, caps)]
    gen = subring_closure(T.ring, gens)
    return gen.basis == T.basis, gen


def conjugation_closure(S: SubsetSpec, unit_pairs=None, caps: Caps | None = None) -> SubsetSpec:
    """Smallest superset of S stable under s -> u^-1 s u for all units u of the ambient."""
    if unit_pairs is None:
        unit_pairs = units(S.ambient if S.ambient is not None else S.ring, caps)
    seen = {e.coords: e for e in S.elements}
    frontier = list(S.elements)
    while frontier:
        nxt = []
        for s in frontier:
            for u, uinv in unit_pairs:
                c = uinv * s * u
                if c.coords not in seen:
                    seen[c.coords] = c
                    nxt.append(c)
        frontier = nxt
    return SubsetSpec(S.ring, tuple(seen.values()), S.ambient)


def conjugation_orbits(X, caps: Caps | None = None) -> list[tuple[RingElement, ...]]:
    """Partition of the elements of X into unit-conjugation orbits."""
    T = _as_subring(X)
    pairs = units(T, caps)
    done = set()
    orbits = []
    for el in T.elements():
        if el.coords in done:
            continue
        orb = conjugation_closure(SubsetSpec(T.ring, (el,)), pairs).elements
        orb = tuple(sorted(orb, key=lambda e: e.coords))
        done.update(e.coords for e in orb)
        orbits.append(orb)
    return orbits
