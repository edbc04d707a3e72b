"""Finite groupoids: validated axioms, isotropy, and bisection machinery.

A finite groupoid is a finite arrow set with a partial composition table,
an inverse table, and a distinguished unit subset.  In this finite-discrete
model every subset is compact open, so "compact open bisection" reduces to
"bisection" and the groupoid is automatically ample and Hausdorff.
"""

from __future__ import annotations

from .groups import FiniteGroup
from .validation import BoundExceeded, ValidationReport

DEFAULT_BISECTION_BOUND = 16


class FiniteGroupoid:
    """A finite groupoid with arrows as opaque ids.

    arrows fixes the canonical order; compose is an explicit partial table
    keyed by composable pairs.  Range and source are derived from the
    tables (r(b) = b b^{-1}, s(b) = b^{-1} b) unless given explicitly, so a
    raw candidate can be constructed and then judged by validate_groupoid.
    """

    def __init__(self, arrows, units, inverse, compose,
                 source=None, range_=None, name="groupoid"):
        self.name = name
        self.arrows = list(arrows)
        if len(set(self.arrows)) != len(self.arrows):
            raise ValueError("duplicate arrows")
        self._index = {a: i for i, a in enumerate(self.arrows)}
        self.units = frozenset(units)
        self.inverse_table = dict(inverse)
        self.compose_table = dict(compose)
        if source is None or range_ is None:
            self._range = {}
            self._source = {}
            for a in self.arrows:
                ainv = self.inverse_table.get(a)
                self._range[a] = self.compose_table.get((a, ainv))
                self._source[a] = self.compose_table.get((ainv, a))
        else:
            self._source = dict(source)
            self._range = dict(range_)

    @property
    def n_arrows(self):
        return len(self.arrows)

    def index(self, a):
        return self._index[a]

    def is_unit(self, a):
        return a in self.units

    def inverse(self, a):
        return self.inverse_table[a]

    def source(self, a):
        return self._source[a]

    def range(self, a):
        return self._range[a]

    def composable(self, b, c):
        return (b, c) in self.compose_table

    def compose(self, b, c):
        try:
            return self.compose_table[(b, c)]
        except KeyError:
            raise ValueError(f"arrows {b} and {c} are not composable") from None

    def arrow_key(self, subset):
        """Canonical sort key for an arrow subset."""
        return tuple(sorted(self._index[a] for a in subset))

    def sort_arrows(self, subset):
        return sorted(subset, key=self._index.__getitem__)

    def __repr__(self):
        return f"FiniteGroupoid({self.name}, arrows={self.n_arrows})"


def validate_groupoid(g):
    """Exhaustively check the groupoid axioms; the report names every
    failing pair/triple."""
    report = ValidationReport(f"groupoid {g.name}")
    arrows = g.arrows
    aset = set(arrows)

    for u in g.units:
        if u not in aset:
            report.add(f"unit {u} is not an arrow")
    for a in arrows:
        ainv = g.inverse_table.get(a)
        if ainv is None or ainv not in aset:
            report.add(f"inverse not closed: arrow {a} has no inverse arrow")
    for a, b in g.inverse_table.items():
        if a in aset and b in aset and g.inverse_table.get(b) != a:
            report.add(f"inverse is not an involution on {a}")
    if not report.ok:
        return report

    # r(b) = b b^{-1} and s(b) = b^{-1} b must exist before anything else.
    for a in arrows:
        if g.range(a) is None:
            report.add(f"range undefined: ({a}, {g.inverse(a)}) not composable")
        if g.source(a) is None:
            report.add(f"source undefined: ({g.inverse(a)}, {a}) not composable")
    if not report.ok:
        return report

    image = {g.range(a) for a in arrows} | {g.source(a) for a in arrows}
    if image != g.units:
        report.add(f"units must be the common image of range and source; "
                   f"image is {sorted(map(str, image))}")

    for (b, c), d in g.compose_table.items():
        if b not in aset or c not in aset:
            report.add(f"compose key ({b}, {c}) uses unknown arrows")
        elif d not in aset:
            report.add(f"compose value {d} for ({b}, {c}) is not an arrow")
    if not report.ok:
        return report

    for b in arrows:
        for c in arrows:
            defined = g.composable(b, c)
            matched = g.source(b) == g.range(c)
            if defined and not matched:
                report.add(f"({b}, {c}) composed but s({b}) != r({c})")
            elif matched and not defined:
                report.add(f"({b}, {c}) has s({b}) = r({c}) but no composite")
    if not report.ok:
        return report

    pairs = list(g.compose_table.items())
    for (b, c), bc in pairs:
        # cancellation: b^{-1}(bc) = c and (bc)c^{-1} = b
        left = g.compose_table.get((g.inverse(b), bc))
        if left != c:
            report.add(f"cancellation fails: {b}^-1 ({b}{c}) != {c}")
        right = g.compose_table.get((bc, g.inverse(c)))
        if right != b:
            report.add(f"cancellation fails: ({b}{c}) {c}^-1 != {b}")
    for b in arrows:
        for c in arrows:
            if not g.composable(b, c):
                continue
            bc = g.compose(b, c)
            for d in arrows:
                if not g.composable(c, d):
                    continue
                cd = g.compose(c, d)
                if not g.composable(bc, d) or not g.composable(b, cd):
                    report.add(f"composability not closed on ({b}, {c}, {d})")
                elif g.compose(bc, d) != g.compose(b, cd):
                    report.add(f"associativity fails on ({b}, {c}, {d})")
    if not report.ok:
        return report

    # Unit laws follow from the axioms; checking them gives sharper reports.
    for u in g.units:
        if g.inverse(u) != u or g.range(u) != u or g.source(u) != u:
            report.add(f"unit {u} is not idempotent under inverse/range/source")
    for b in arrows:
        if g.compose_table.get((g.range(b), b)) != b:
            report.add(f"r({b}) does not act as a left unit on {b}")
        if g.compose_table.get((b, g.source(b))) != b:
            report.add(f"s({b}) does not act as a right unit on {b}")
    return report


def isotropy_group(g, u):
    """The isotropy group at a unit: all arrows with range = source = u,
    as a FiniteGroup with identity u."""
    if u not in g.units:
        raise ValueError(f"{u} is not a unit")
    members = [b for b in g.arrows if g.range(b) == u and g.source(b) == u]
    table = {}
    for a in members:
        for b in members:
            if not g.composable(a, b) or g.compose(a, b) not in set(members):
                raise ValueError(f"isotropy at {u} is not closed on ({a}, {b})")
            table[(a, b)] = g.compose(a, b)
    return FiniteGroup(members, table, name=f"isotropy@{u}")


def is_topologically_principal(g):
    """True iff every unit has trivial isotropy (dense = all, finitely).

    Returns (flag, offending_units) with offenders in canonical order.
    """
    offenders = []
    for u in g.sort_arrows(g.units):
        iso = [b for b in g.arrows if g.range(b) == u and g.source(b) == u]
        if iso != [u]:
            offenders.append(u)
    return (not offenders, tuple(offenders))


def is_bisection(g, arrow_set):
    """True iff range and source are both injective on the subset."""
    ranges = [g.range(a) for a in arrow_set]
    sources = [g.source(a) for a in arrow_set]
    return len(set(ranges)) == len(ranges) and len(set(sources)) == len(sources)


def enumerate_bisections(g, bound=DEFAULT_BISECTION_BOUND):
    """All bisections of g, in ascending bitmask order over the canonical
    arrow order (so the empty set comes first and the result is stable).

    Refuses with BoundExceeded when the arrow count makes the subset scan
    too large.
    """
    n = g.n_arrows
    if n > bound:
        raise BoundExceeded(
            f"groupoid too large: {n} arrows exceeds bisection bound {bound}")
    out = []
    for mask in range(1 << n):
        subset = frozenset(g.arrows[i] for i in range(n) if mask >> i & 1)
        if is_bisection(g, subset):
            out.append(subset)
    return out


def bisection_product(g, bis_b, bis_c):
    """BC = {bc : b in B, c in C, s(b) = r(c)}; a bisection, possibly empty."""
    out = {g.compose(b, c) for b in bis_b for c in bis_c if g.composable(b, c)}
    out = frozenset(out)
    if not is_bisection(g, out):
        raise ValueError("product of bisections is not a bisection; "
                         "the groupoid is invalid")
    return out


def bisection_inverse(g, bis):
    return frozenset(g.inverse(b) for b in bis)


def range_set(g, bis):
    return frozenset(g.range(b) for b in bis)


def source_set(g, bis):
    return frozenset(g.source(b) for b in bis)
