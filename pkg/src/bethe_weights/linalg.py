"""Row reduction over the rationals, on plain coordinate lists."""

from fractions import Fraction

from .field import ZERO


class Echelon:
    """Incrementally grown echelon basis of a subspace of Q^d."""

    def __init__(self):
        self.rows = []      # each row has a leading 1 at its pivot
        self.pivots = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        w = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                for j, x in enumerate(row):
                    if x:
                        w[j] -= c * x
        return w

    def add(self, vec):
        """Add vec if independent; return the reduced new row or None."""
        w = self.reduce(vec)
        p = next((j for j, x in enumerate(w) if x), None)
        if p is None:
            return None
        c = w[p]
        w = [x / c for x in w]
        # keep existing rows reduced at the new pivot
        for row in self.rows:
            a = row[p]
            if a:
                for j, x in enumerate(w):
                    if x:
                        row[j] -= a * x
        self.rows.append(w)
        self.pivots.append(p)
        return w

    def sorted(self):
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        return [self.rows[i] for i in order], [self.pivots[i] for i in order]

    def coordinates(self, vec):
        """Coordinates in the current rows, or None if vec is not in the span."""
        coords = [vec[p] for p in self.pivots]
        rest = list(vec)
        for c, row in zip(coords, self.rows):
            if c:
                for j, x in enumerate(row):
                    if x:
                        rest[j] -= c * x
        if any(rest):
            return None
        return coords


def nullspace(rows, ncols):
    """Basis of {x : rows·x = 0}, one vector per free column."""
    ech = Echelon()
    for r in rows:
        ech.add([Fraction(x) for x in r])
    rr, piv = ech.sorted()
    free = [j for j in range(ncols) if j not in set(piv)]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = Fraction(1)
        for row, p in zip(rr, piv):
            x[p] = -row[f]
        basis.append(x)
    return basis
