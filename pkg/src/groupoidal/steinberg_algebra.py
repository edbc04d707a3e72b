"""The convolution algebra of finitely supported functions on a finite
groupoid, its diagonal subalgebra, and the canonical decomposition of a
function into disjoint bisection indicators."""

from __future__ import annotations

from .groupoid_core import is_bisection
from .scalars import zero_vector


class GroupoidFunction:
    """A finitely supported scalar-valued function on the arrows of a
    finite groupoid.  Zero values are never stored, so equality is
    entry-wise on the support maps."""

    __slots__ = ("parent", "ring", "values")

    def __init__(self, parent, ring, values):
        self.parent = parent
        self.ring = ring
        pruned = {}
        for arrow, scalar in values.items():
            if arrow not in parent._index:
                raise ValueError(f"{arrow} is not an arrow of {parent.name}")
            if scalar.ring != ring:
                raise ValueError("mixed scalar rings in function values")
            if scalar:
                pruned[arrow] = scalar
        self.values = pruned

    @classmethod
    def zero(cls, parent, ring):
        return cls(parent, ring, {})

    @classmethod
    def indicator(cls, parent, ring, arrows, coeff=None):
        coeff = ring.one() if coeff is None else coeff
        return cls(parent, ring, {a: coeff for a in arrows})

    @classmethod
    def point_mass(cls, parent, ring, arrow, coeff=None):
        return cls.indicator(parent, ring, [arrow], coeff)

    @property
    def support(self):
        return frozenset(self.values)

    def __call__(self, arrow):
        if arrow not in self.parent._index:
            raise ValueError(f"{arrow} is not an arrow of {self.parent.name}")
        return self.values.get(arrow, self.ring.zero())

    def _compatible(self, other):
        if self.parent is not other.parent:
            raise ValueError("functions live on different groupoids")
        if self.ring != other.ring:
            raise ValueError("functions have different scalar rings")

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.values)
        for a, c in other.values.items():
            out[a] = out.get(a, self.ring.zero()) + c
        return GroupoidFunction(self.parent, self.ring, out)

    def __neg__(self):
        return GroupoidFunction(self.parent, self.ring,
                                {a: -c for a, c in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        return GroupoidFunction(self.parent, self.ring,
                                {a: coeff * c for a, c in self.values.items()})

    def __mul__(self, other):
        return convolve(self, other)

    def __eq__(self, other):
        return (isinstance(other, GroupoidFunction)
                and self.parent is other.parent and self.ring == other.ring
                and self.values == other.values)

    def __bool__(self):
        return bool(self.values)

    def restrict(self, arrows):
        keep = set(arrows)
        return GroupoidFunction(self.parent, self.ring,
                                {a: c for a, c in self.values.items() if a in keep})

    def serialize(self):
        """Wire form: a list of (arrow id, scalar string) pairs in canonical
        arrow order."""
        g = self.parent
        return [(str(a), str(c)) for a, c in
                sorted(self.values.items(), key=lambda kv: g.index(kv[0]))]

    def __repr__(self):
        g = self.parent
        items = ", ".join(f"{a}:{c}" for a, c in
                          sorted(self.values.items(), key=lambda kv: g.index(kv[0])))
        return f"GroupoidFunction({{{items}}})"


def convolve(f, g):
    """(f * g)(b) = sum of f(c) g(d) over all factorizations b = cd."""
    f._compatible(g)
    parent, ring = f.parent, f.ring
    acc = {}
    for c, fc in f.values.items():
        for d, gd in g.values.items():
            if parent.composable(c, d):
                b = parent.compose(c, d)
                acc[b] = acc.get(b, ring.zero()) + fc * gd
    return GroupoidFunction(parent, ring, acc)


def is_diagonal(f):
    return f.support <= f.parent.units


def diagonal_embed(parent, ring, unit_values):
    """Extend a function on the unit space by zero off the units."""
    for u in unit_values:
        if u not in parent.units:
            raise ValueError(f"{u} is not a unit of {parent.name}")
    return GroupoidFunction(parent, ring, dict(unit_values))


def disjoint_decomposition(f):
    """Write f as a sum of scalar multiples of indicators of pairwise
    disjoint bisections, canonically.

    The support is partitioned into level sets of equal value; each level
    set is split greedily, in ascending canonical arrow order, into maximal
    bisections.  The output is sorted by the bisections' canonical keys, so
    the same function always yields the same list.
    """
    g = f.parent
    levels = {}
    for arrow, value in f.values.items():
        levels.setdefault(value, []).append(arrow)
    pieces = []
    for value, arrows in levels.items():
        remaining = g.sort_arrows(arrows)
        while remaining:
            block = []
            ranges, sources = set(), set()
            rest = []
            for a in remaining:
                if g.range(a) not in ranges and g.source(a) not in sources:
                    block.append(a)
                    ranges.add(g.range(a))
                    sources.add(g.source(a))
                else:
                    rest.append(a)
            pieces.append((value, frozenset(block)))
            remaining = rest
    pieces.sort(key=lambda rv: g.arrow_key(rv[1]))
    for _, block in pieces:
        assert is_bisection(g, block)
    return pieces


def has_unit_check(g, ring):
    """Verify that the indicator of the unit space is a two-sided identity
    on the point-mass spanning set.  Always true for a finite groupoid."""
    unit_fn = GroupoidFunction.indicator(g, ring, g.units)
    for a in g.arrows:
        mass = GroupoidFunction.point_mass(g, ring, a)
        if convolve(unit_fn, mass) != mass or convolve(mass, unit_fn) != mass:
            return False
    return True


def has_local_units_check(g, ring):
    """Verify that diagonal idempotents act as local units: for each arrow,
    the indicator of {r(a), s(a)} fixes the point mass at a on both sides."""
    for a in g.arrows:
        mass = GroupoidFunction.point_mass(g, ring, a)
        e = GroupoidFunction.indicator(g, ring, {g.range(a), g.source(a)})
        if convolve(e, mass) != mass or convolve(mass, e) != mass:
            return False
    return True


class SteinbergAlgebra:
    """Coordinate view of the convolution algebra in the point-mass basis.

    The basis is the canonical arrow order, so the dimension equals the
    arrow count.  mul_sparse is cached; products of point masses are single
    point masses or zero.
    """

    def __init__(self, groupoid, ring):
        self.groupoid = groupoid
        self.ring = ring
        self.basis_labels = list(groupoid.arrows)
        self.dim = len(self.basis_labels)
        self._table = {}

    def mul_sparse(self, i, j):
        entry = self._table.get((i, j))
        if entry is None:
            b, c = self.basis_labels[i], self.basis_labels[j]
            if self.groupoid.composable(b, c):
                k = self.groupoid.index(self.groupoid.compose(b, c))
                entry = {k: self.ring.one()}
            else:
                entry = {}
            self._table[(i, j)] = entry
        return entry

    def mul_basis(self, i, j):
        vec = zero_vector(self.ring, self.dim)
        for k, c in self.mul_sparse(i, j).items():
            vec[k] = c
        return vec

    def mul_vectors(self, u, v):
        out = zero_vector(self.ring, self.dim)
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self.mul_sparse(i, j).items():
                    out[k] = out[k] + a * b * c
        return out

    def to_vector(self, f):
        if f.parent is not self.groupoid or f.ring != self.ring:
            raise ValueError("function does not belong to this algebra")
        vec = zero_vector(self.ring, self.dim)
        for a, c in f.values.items():
            vec[self.groupoid.index(a)] = c
        return vec

    def from_vector(self, vec):
        values = {self.basis_labels[i]: c for i, c in enumerate(vec) if c}
        return GroupoidFunction(self.groupoid, self.ring, values)

    def diagonal_indices(self):
        return [i for i, a in enumerate(self.basis_labels)
                if self.groupoid.is_unit(a)]

    def verify_associativity(self):
        """Check (e_i e_j) e_k = e_i (e_j e_k) on all basis triples; returns
        the first failing triple or None."""
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.mul_sparse(i, j)
                for k in range(self.dim):
                    jk = self.mul_sparse(j, k)
                    left = {}
                    for l, c in ij.items():
                        for m, d in self.mul_sparse(l, k).items():
                            left[m] = left.get(m, self.ring.zero()) + c * d
                    right = {}
                    for l, c in jk.items():
                        for m, d in self.mul_sparse(i, l).items():
                            right[m] = right.get(m, self.ring.zero()) + c * d
                    if {m: c for m, c in left.items() if c} != \
                            {m: c for m, c in right.items() if c}:
                        return (i, j, k)
        return None
