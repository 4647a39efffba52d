"""Polynomials in the variables x_theta and locally finite linear operators on them.

A monomial ``x^A`` is keyed by its Kostant partition ``A``; the empty partition
is the constant monomial 1.  Coefficients are ints or ``Fraction``s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .quiver import (
    EMPTY,
    DimensionVector,
    KostantPartition,
    Raiz,
    add_vectors,
    dim_raiz,
    enumerate_kostant,
    partition_to_json,
    raiz_key,
    scale_vector,
    zero_vector,
)

Terms = dict  # dict[KostantPartition, int | Fraction]

DENSE_LIMIT = 64


def _add_into(acc: Terms, terms: Mapping, scale=1) -> None:
    for mono, c in terms.items():
        v = acc.get(mono, 0) + scale * c
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)


def insert_part(parts: tuple, theta: Raiz) -> KostantPartition:
    """``parts`` with one more copy of ``theta``, kept in canonical order."""
    if theta.q < theta.p:
        return tuple.__new__(KostantPartition, parts)
    key = (theta.q, theta.p)
    lo = 0
    hi = len(parts)
    while lo < hi:
        mid = (lo + hi) // 2
        t = parts[mid]
        if (t.q, t.p) < key:
            lo = mid + 1
        else:
            hi = mid
    return tuple.__new__(KostantPartition, parts[:lo] + (theta,) + parts[lo:])


def remove_part(parts: tuple, theta: Raiz) -> tuple:
    k = parts.index(theta)
    return parts[:k] + parts[k + 1:]


def replace_part(parts: tuple, old: Raiz, new: Raiz) -> KostantPartition:
    return insert_part(remove_part(parts, old), new)


def multiply_monomials(a: tuple, b: tuple) -> KostantPartition:
    return tuple.__new__(KostantPartition, sorted(a + b, key=raiz_key))


class Polynomial:
    """Finite exact-rational combination of monomials ``x^A``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms: Terms = {}
        if terms:
            _add_into(self.terms, {KostantPartition(k): v for k, v in terms.items()})

    @classmethod
    def _raw(cls, terms: Terms) -> "Polynomial":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def one(cls) -> "Polynomial":
        return cls._raw({EMPTY: 1})

    @classmethod
    def variable(cls, theta: Raiz) -> "Polynomial":
        return cls({KostantPartition([theta]): 1})

    @classmethod
    def monomial(cls, kappa: Iterable[Raiz], coeff=1) -> "Polynomial":
        return cls({KostantPartition(kappa): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial({EMPTY: other}) if other else Polynomial()
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        acc = dict(self.terms)
        _add_into(acc, other.terms)
        return Polynomial._raw(acc)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        acc = dict(self.terms)
        _add_into(acc, other.terms, -1)
        return Polynomial._raw(acc)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({k: -v for k, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial()
            return Polynomial._raw({k: other * v for k, v in self.terms.items()})
        acc: Terms = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                _add_into(acc, {multiply_monomials(a, b): ca * cb})
        return Polynomial._raw(acc)

    __rmul__ = __mul__

    def coefficient(self, kappa: Iterable[Raiz]):
        return self.terms.get(KostantPartition(kappa), 0)

    def degrees(self, n: int) -> set[DimensionVector]:
        """The set of ``|A|`` over the support; the grading is ``deg x^A = -|A|``."""
        return {a.dim(n) for a in self.terms}

    def sorted_terms(self) -> list[tuple[KostantPartition, object]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0].sort_key()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for mono, c in self.sorted_terms():
            name = "*".join(f"x[{t}]" for t in mono) or "1"
            chunks.append(f"{c}*{name}")
        return " + ".join(chunks)

    def to_json(self) -> list:
        return [[partition_to_json(m), str(c)] for m, c in self.sorted_terms()]


# ---------------------------------------------------------------------------
# linear operators


class LinOp:
    """A linear operator determined by its action on monomials.

    ``shift`` is the change of ``|A|`` on every monomial (``None`` for the zero
    operator, which is compatible with every shift).
    """

    shift: DimensionVector | None = None
    cached = False

    def act(self, mono: KostantPartition) -> Terms:  # pragma: no cover - abstract
        raise NotImplementedError

    def on_monomial(self, mono: KostantPartition) -> Terms:
        if not self.cached:
            return self.act(mono)
        cache = self.__dict__.setdefault("_cache", {})
        out = cache.get(mono)
        if out is None:
            out = cache[mono] = self.act(mono)
        return out

    def apply_terms(self, terms: Mapping) -> Terms:
        acc: Terms = {}
        for mono, c in terms.items():
            _add_into(acc, self.on_monomial(mono), c)
        return acc

    def __call__(self, poly: Polynomial) -> Polynomial:
        return Polynomial._raw(self.apply_terms(poly.terms))

    def clear_cache(self) -> None:
        self.__dict__.pop("_cache", None)
        for child in self.children():
            child.clear_cache()

    def children(self) -> tuple["LinOp", ...]:
        return ()

    def __add__(self, other: "LinOp") -> "LinOp":
        return SumOp([(1, self), (1, other)])

    def __sub__(self, other: "LinOp") -> "LinOp":
        return SumOp([(1, self), (-1, other)])

    def __neg__(self) -> "LinOp":
        return SumOp([(-1, self)])

    def __mul__(self, scalar) -> "LinOp":
        return SumOp([(scalar, self)])

    __rmul__ = __mul__

    def __matmul__(self, other: "LinOp") -> "LinOp":
        return Compose(self, other)


def _merge_shift(shifts: Iterable[DimensionVector | None]) -> DimensionVector | None:
    found = None
    for s in shifts:
        if s is None:
            continue
        if found is None:
            found = s
        elif found != s:
            raise ValueError(f"operator terms have different degree shifts {found} and {s}")
    return found


class ZeroOp(LinOp):
    def act(self, mono):
        return {}


ZERO = ZeroOp()


class Identity(LinOp):
    def __init__(self, n: int):
        self.shift = zero_vector(n)

    def act(self, mono):
        return {mono: 1}


class Diagonal(LinOp):
    """``x^A -> weight(A) x^A``."""

    def __init__(self, weight: Callable[[KostantPartition], object], n: int, label: str = ""):
        self.weight = weight
        self.shift = zero_vector(n)
        self.label = label

    def act(self, mono):
        w = self.weight(mono)
        return {mono: w} if w else {}


class Multiplication(LinOp):
    """Multiplication by a fixed homogeneous polynomial."""

    cached = True

    def __init__(self, poly: Polynomial, n: int):
        self.poly = poly
        degs = poly.degrees(n)
        if len(degs) > 1:
            raise ValueError("multiplication operator needs a homogeneous polynomial")
        self.shift = degs.pop() if degs else None

    def act(self, mono):
        acc: Terms = {}
        for b, cb in self.poly.terms.items():
            key = multiply_monomials(mono, b)
            v = acc.get(key, 0) + cb
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
        return acc


class VariableOp(LinOp):
    """Multiplication by a single variable ``x_theta`` (``x_unit = 1``)."""

    def __init__(self, theta: Raiz, n: int):
        self.theta = theta
        self.shift = dim_raiz(theta, n)

    def act(self, mono):
        return {insert_part(mono, self.theta): 1}


class Derivative(LinOp):
    """``d/dx_theta``; the derivative in the unit variable is zero."""

    def __init__(self, theta: Raiz, n: int):
        self.theta = theta
        self.shift = None if theta.is_unit else scale_vector(-1, dim_raiz(theta, n))

    def act(self, mono):
        theta = self.theta
        if theta.is_unit:
            return {}
        m = mono.count(theta)
        if not m:
            return {}
        return {tuple.__new__(KostantPartition, remove_part(mono, theta)): m}


class SumOp(LinOp):
    cached = True

    def __init__(self, terms: Iterable[tuple[object, LinOp]], homogeneous: bool = True):
        flat = []
        for c, op in terms:
            if not c or isinstance(op, ZeroOp):
                continue
            if isinstance(op, SumOp):
                flat.extend((c * c2, op2) for c2, op2 in op.terms)
            else:
                flat.append((c, op))
        self.terms = flat
        # orbit sums in the folded rank mix shifts; they carry no shift
        self.shift = _merge_shift(op.shift for _, op in flat) if homogeneous else None

    def children(self):
        return tuple(op for _, op in self.terms)

    def act(self, mono):
        acc: Terms = {}
        for c, op in self.terms:
            _add_into(acc, op.on_monomial(mono), c)
        return acc


class Compose(LinOp):
    """``left @ right``: apply ``right`` first."""

    cached = True

    def __init__(self, left: LinOp, right: LinOp):
        self.left = left
        self.right = right
        if left.shift is None or right.shift is None:
            self.shift = None
        else:
            self.shift = add_vectors(left.shift, right.shift)

    def children(self):
        return (self.left, self.right)

    def act(self, mono):
        return self.left.apply_terms(self.right.on_monomial(mono))


def commutator(P: LinOp, Q: LinOp) -> LinOp:
    """``[P, Q] = PQ - QP``."""
    return SumOp([(1, Compose(P, Q)), (-1, Compose(Q, P))])


def ad_power(P: LinOp, Q: LinOp, k: int) -> LinOp:
    """``ad(P)^k Q``."""
    for _ in range(k):
        Q = commutator(P, Q)
    return Q


# ---------------------------------------------------------------------------
# matrices of operators on graded pieces


@dataclass
class PieceMatrix:
    source_alpha: DimensionVector
    target_alpha: DimensionVector
    source_basis: tuple[KostantPartition, ...]
    target_basis: tuple[KostantPartition, ...]
    entries: dict[tuple[int, int], object] = field(default_factory=dict)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target_basis), len(self.source_basis)

    def dense(self) -> list[list[object]]:
        rows, cols = self.shape
        out = [[0] * cols for _ in range(rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "PieceMatrix":
        return PieceMatrix(
            self.target_alpha,
            self.source_alpha,
            self.target_basis,
            self.source_basis,
            {(c, r): v for (r, c), v in self.entries.items()},
        )

    def __matmul__(self, other: "PieceMatrix") -> "PieceMatrix":
        if other.target_basis != self.source_basis:
            raise ValueError("incompatible pieces for matrix product")
        by_row: dict[int, list[tuple[int, object]]] = {}
        for (k, c), v in other.entries.items():
            by_row.setdefault(k, []).append((c, v))
        acc: dict[tuple[int, int], object] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                x = acc.get((r, c), 0) + v * w
                if x:
                    acc[(r, c)] = x
                else:
                    acc.pop((r, c), None)
        return PieceMatrix(other.source_alpha, self.target_alpha, other.source_basis,
                           self.target_basis, acc)

    def __sub__(self, other: "PieceMatrix") -> "PieceMatrix":
        acc = dict(self.entries)
        for key, v in other.entries.items():
            x = acc.get(key, 0) - v
            if x:
                acc[key] = x
            else:
                acc.pop(key, None)
        return PieceMatrix(self.source_alpha, self.target_alpha, self.source_basis,
                           self.target_basis, acc)

    def to_json(self) -> dict:
        out = {
            "source_alpha": list(self.source_alpha),
            "target_alpha": list(self.target_alpha),
            "source_basis": [partition_to_json(a) for a in self.source_basis],
            "target_basis": [partition_to_json(a) for a in self.target_basis],
        }
        if max(len(self.source_basis), len(self.target_basis)) <= DENSE_LIMIT:
            out["format"] = "dense"
            out["entries"] = [[str(v) for v in row] for row in self.dense()]
        else:
            out["format"] = "sparse"
            out["entries"] = [[r, c, str(v)] for (r, c), v in sorted(self.entries.items())]
        return out


def matrix_of(op: LinOp, alpha: DimensionVector, shift: DimensionVector | None = None) -> PieceMatrix:
    """Exact matrix of ``op`` restricted to the span of ``x^A``, ``A`` in FK(alpha)."""
    alpha = tuple(alpha)
    shift = op.shift if shift is None else shift
    if shift is None:
        raise ValueError("operator has no declared degree shift; pass one explicitly")
    target = add_vectors(alpha, shift)
    source_basis = enumerate_kostant(alpha)
    target_basis = enumerate_kostant(target) if min(target) >= 0 else ()
    index = {a: k for k, a in enumerate(target_basis)}
    entries = {}
    for c, mono in enumerate(source_basis):
        for image, v in op.on_monomial(mono).items():
            r = index.get(image)
            if r is None:
                raise ValueError(f"operator leaves the target piece {target} on {mono}")
            entries[(r, c)] = v
    return PieceMatrix(alpha, target, source_basis, target_basis, entries)


def first_difference(P: LinOp, Q: LinOp, alpha: DimensionVector):
    """First basis monomial of FK(alpha) on which P and Q differ, with both images."""
    for mono in enumerate_kostant(tuple(alpha)):
        lhs = P.on_monomial(mono)
        rhs = Q.on_monomial(mono)
        if lhs != rhs:
            return mono, lhs, rhs
    return None


def op_equal_on(P: LinOp, Q: LinOp, alpha: DimensionVector) -> bool:
    return first_difference(P, Q, alpha) is None
