"""Exact arithmetic in the path algebra kQ and its dilatation/transvection
automorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .field import Field
from .quiver import Bypass, Path, Quiver


class AlgebraMismatchError(ValueError):
    pass


class AlgebraElement:
    """A finite linear combination of paths with nonzero coefficients."""

    __slots__ = ("quiver", "field", "terms")

    def __init__(self, quiver: Quiver, field: Field, terms: Mapping = None):
        self.quiver = quiver
        self.field = field
        clean = {}
        for p, c in (terms or {}).items():
            p = quiver.path(p)
            c = field(c)
            if c:
                clean[p] = clean.get(p, field.zero) + c
                if not clean[p]:
                    del clean[p]
        self.terms = dict(sorted(clean.items(), key=lambda pc: quiver.path_sort_key(pc[0])))

    @classmethod
    def _raw(cls, quiver, field, terms):
        # terms already clean; skips validation in hot loops
        obj = cls.__new__(cls)
        obj.quiver = quiver
        obj.field = field
        obj.terms = dict(sorted(terms.items(), key=lambda pc: quiver.path_sort_key(pc[0])))
        return obj

    @classmethod
    def from_path(cls, quiver, field, path, coeff=1) -> "AlgebraElement":
        return cls(quiver, field, {quiver.path(path): coeff})

    def _check(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected an AlgebraElement, got {type(other).__name__}")
        if other.quiver != self.quiver or other.field != self.field:
            raise AlgebraMismatchError("elements live in different path algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            s = out.get(p, self.field.zero) + c
            if s:
                out[p] = s
            else:
                out.pop(p, None)
        return AlgebraElement._raw(self.quiver, self.field, out)

    def __neg__(self):
        return AlgebraElement._raw(self.quiver, self.field, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = self.field(c)
        if not c:
            return AlgebraElement._raw(self.quiver, self.field, {})
        return AlgebraElement._raw(self.quiver, self.field, {p: c * v for p, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        self._check(other)
        out = {}
        zero = self.field.zero
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                r = self.quiver.compose(p, q)
                if r is None:
                    continue
                s = out.get(r, zero) + c * d
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return AlgebraElement._raw(self.quiver, self.field, out)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.quiver == other.quiver and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def support(self) -> list:
        return list(self.terms)

    def components(self) -> dict:
        """Split into parallel-class components: ``(source, target) -> element``."""
        parts: dict = {}
        for p, c in self.terms.items():
            parts.setdefault((p.source, p.target), {})[p] = c
        return {st: AlgebraElement._raw(self.quiver, self.field, t) for st, t in parts.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for p, c in self.terms.items():
            neg = self.field.characteristic == 0 and c < 0
            mag = -c if neg else c
            coeff = "" if mag == 1 else f"{mag} "
            sign = "-" if neg else "+"
            out.append(f"{sign} {coeff}{p}")
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]

    def __repr__(self):
        return f"AlgebraElement({self})"


def add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x + y


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """``x * y`` under the right-to-left convention (``y`` is applied first)."""
    return x * y


@dataclass(frozen=True)
class Dilatation:
    scalars: tuple  # sorted ((arrow label, nonzero scalar), ...)

    @classmethod
    def of(cls, scalars: Mapping) -> "Dilatation":
        if any(not c for c in scalars.values()):
            raise ValueError("dilatation scalars must be nonzero")
        return cls(tuple(sorted(scalars.items())))

    def inverse(self) -> "Dilatation":
        return Dilatation(tuple((a, Fraction(1) / c) for a, c in self.scalars))

    def __str__(self):
        inner = ", ".join(f"{a}->{c}{a}" for a, c in self.scalars)
        return f"dil[{inner}]"


@dataclass(frozen=True)
class Transvection:
    bypass: Bypass
    tau: object

    def inverse(self) -> "Transvection":
        return Transvection(self.bypass, -self.tau)

    def __str__(self):
        return f"φ_{{{self.bypass.arrow},{self.bypass.detour},{self.tau}}}"


Atom = Union[Dilatation, Transvection]


@dataclass(frozen=True)
class Automorphism:
    """A composite of dilatations and transvections of kQ.

    ``atoms`` are applied first to last.  ``f @ g`` is the usual composition
    "``g`` then ``f``".
    """

    atoms: tuple = ()

    @classmethod
    def identity(cls) -> "Automorphism":
        return cls(())

    @classmethod
    def transvection(cls, bypass: Bypass, tau) -> "Automorphism":
        return cls((Transvection(bypass, tau),))

    @classmethod
    def dilatation(cls, scalars: Mapping) -> "Automorphism":
        return cls((Dilatation.of(scalars),))

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(other.atoms + self.atoms)

    def inverse(self) -> "Automorphism":
        return Automorphism(tuple(a.inverse() for a in reversed(self.atoms)))

    def __str__(self):
        if not self.atoms:
            return "id"
        return " ∘ ".join(str(a) for a in reversed(self.atoms))


def _apply_atom(atom: Atom, x: AlgebraElement) -> AlgebraElement:
    q, k = x.quiver, x.field
    zero = k.zero
    out: dict = {}

    def put(p, c):
        s = out.get(p, zero) + c
        if s:
            out[p] = s
        else:
            out.pop(p, None)

    if isinstance(atom, Dilatation):
        scal = dict(atom.scalars)
        for p, c in x.terms.items():
            for a in p.arrows:
                if a in scal:
                    c = c * k(scal[a])
            put(p, c)
        return AlgebraElement._raw(q, k, out)

    alpha = atom.bypass.arrow
    detour = atom.bypass.detour.arrows
    tau = k(atom.tau)
    for p, c in x.terms.items():
        put(p, c)
        # acyclic: alpha occurs at most once in p
        if alpha in p.arrows and tau:
            i = p.arrows.index(alpha)
            put(Path(p.source, p.target, p.arrows[:i] + detour + p.arrows[i + 1:]), c * tau)
    return AlgebraElement._raw(q, k, out)


def apply_automorphism(phi: Automorphism, x: AlgebraElement) -> AlgebraElement:
    for atom in phi.atoms:
        x = _apply_atom(atom, x)
    return x


def invert(phi: Automorphism) -> Automorphism:
    return phi.inverse()
