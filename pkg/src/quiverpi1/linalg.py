"""Reduced row echelon forms over an exact field."""

from __future__ import annotations


class EchelonSpace:
    """A subspace of k^n kept in reduced row echelon form.

    Rows are tuples sorted by pivot column; every pivot entry is 1 and every
    pivot column is zero outside its own row, so two spaces are equal exactly
    when their ``rows`` are equal.
    """

    __slots__ = ("n", "zero", "rows", "pivots")

    def __init__(self, n: int, zero):
        self.n = n
        self.zero = zero
        self.rows: list = []
        self.pivots: list = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec) -> list:
        v = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if c:
                for j in range(piv, self.n):
                    if row[j]:
                        v[j] = v[j] - c * row[j]
        return v

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec) -> bool:
        """Insert ``vec``; return ``False`` when it was already in the span."""
        v = self.reduce(vec)
        piv = next((j for j, c in enumerate(v) if c), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        v = tuple(c * inv if c else self.zero for c in v)
        rows = []
        for row in self.rows:
            c = row[piv]
            if c:
                row = tuple(r - c * s if (r or s) else self.zero for r, s in zip(row, v))
            rows.append(row)
        at = 0
        while at < len(self.pivots) and self.pivots[at] < piv:
            at += 1
        rows.insert(at, v)
        self.pivots.insert(at, piv)
        self.rows = rows
        return True

    def key(self) -> tuple:
        return tuple(self.rows)


def rref(rows, n: int, zero) -> EchelonSpace:
    space = EchelonSpace(n, zero)
    for r in rows:
        space.add(r)
    return space
