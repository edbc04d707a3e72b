"""Formal sums a_s delta_s over a partial action: the covariance module L
with its twisted product, the partial skew group ring, the ideal
identifying a delta_s with a delta_t for s <= t, and the quotient algebra
realized by exact echelon linear algebra over a field.

The empty-domain convention: an index element with empty domain
contributes no basis vectors (D_s = {0}), which covers the zero bisection
of a bisection semigroup.
"""

from __future__ import annotations

from .inverse_semigroups import natural_order
from .partial_actions import SpaceFunction
from .scalars import SpanTracker, zero_vector
from .validation import ValidationReport, stable


class SkewElement:
    """A finite formal sum of terms a_s delta_s with a_s supported in X_s."""

    __slots__ = ("algebra_action", "terms")

    def __init__(self, algebra_action, terms):
        self.algebra_action = algebra_action
        pruned = {}
        for s, f in terms.items():
            if f.ring != algebra_action.ring:
                raise ValueError("coefficient has the wrong scalar ring")
            if not f.vanishes_off(algebra_action.domains[s]):
                raise ValueError(f"coefficient of delta_{stable(s)} does not "
                                 f"vanish off X_{{{stable(s)}}}")
            if f:
                pruned[s] = f
        self.terms = pruned

    @classmethod
    def zero(cls, algebra_action):
        return cls(algebra_action, {})

    @classmethod
    def basis(cls, algebra_action, s, x, coeff=None):
        mass = SpaceFunction.point_mass(algebra_action.ring, x, coeff)
        return cls(algebra_action, {s: mass})

    def _compatible(self, other):
        if self.algebra_action is not other.algebra_action:
            raise ValueError("skew elements over different actions")

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.terms)
        for s, f in other.terms.items():
            out[s] = out[s] + f if s in out else f
        return SkewElement(self.algebra_action, out)

    def __neg__(self):
        return SkewElement(self.algebra_action,
                           {s: -f for s, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        return SkewElement(self.algebra_action,
                           {s: f.scale(coeff) for s, f in self.terms.items()})

    def __mul__(self, other):
        return skew_multiply(self, other)

    def __eq__(self, other):
        return (isinstance(other, SkewElement)
                and self.algebra_action is other.algebra_action
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        parts = " + ".join(f"{f!r}d[{s}]" for s, f in self.terms.items())
        return f"SkewElement({parts or '0'})"


def skew_multiply(x, y):
    """The linear extension of
    (a_s delta_s)(a_t delta_t) = alpha_s(alpha_{s*}(a_s) a_t) delta_{st}."""
    x._compatible(y)
    alg = x.algebra_action
    index = alg.index
    acc = {}
    for s, a_s in x.terms.items():
        for t, a_t in y.terms.items():
            st = index.mul(s, t)
            coeff = alg.alpha(s, alg.alpha(alg.star(s), a_s) * a_t)
            if coeff:
                acc[st] = acc[st] + coeff if st in acc else coeff
    return SkewElement(alg, acc)


class CovarianceModule:
    """Coordinate view of L in the basis of point masses: one basis vector
    (s, x) for each index element s and each point x of X_s.

    Products of basis vectors are single basis vectors or zero, so the
    multiplication table is materialized sparsely and on demand.
    """

    def __init__(self, algebra_action):
        self.algebra_action = algebra_action
        self.ring = algebra_action.ring
        self.basis_labels = [(s, x) for s in algebra_action.index.elements
                             for x in algebra_action.domain_points(s)]
        self.dim = len(self.basis_labels)
        self._idx = {lbl: i for i, lbl in enumerate(self.basis_labels)}
        self._table = {}
        self.associativity_counterexample = None

    def label_index(self, s, x):
        return self._idx[(s, x)]

    def mul_sparse(self, i, j):
        entry = self._table.get((i, j))
        if entry is None:
            s, x = self.basis_labels[i]
            t, y = self.basis_labels[j]
            product = skew_multiply(SkewElement.basis(self.algebra_action, s, x),
                                    SkewElement.basis(self.algebra_action, t, y))
            entry = {}
            for u, f in product.terms.items():
                for z, c in f.values.items():
                    entry[self._idx[(u, z)]] = c
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

    def basis_mul_vector(self, k, v):
        out = zero_vector(self.ring, self.dim)
        for j, b in enumerate(v):
            if not b:
                continue
            for m, c in self.mul_sparse(k, j).items():
                out[m] = out[m] + b * c
        return out

    def vector_mul_basis(self, v, k):
        out = zero_vector(self.ring, self.dim)
        for i, a in enumerate(v):
            if not a:
                continue
            for m, c in self.mul_sparse(i, k).items():
                out[m] = out[m] + a * c
        return out

    def to_vector(self, elem):
        if elem.algebra_action is not self.algebra_action:
            raise ValueError("element does not belong to this module")
        vec = zero_vector(self.ring, self.dim)
        for s, f in elem.terms.items():
            for x, c in f.values.items():
                vec[self._idx[(s, x)]] = c
        return vec

    def from_vector(self, vec):
        terms = {}
        for i, c in enumerate(vec):
            if c:
                s, x = self.basis_labels[i]
                terms.setdefault(s, {})[x] = c
        return SkewElement(self.algebra_action,
                           {s: SpaceFunction(self.ring, vals)
                            for s, vals in terms.items()})

    def diagonal_indices(self):
        """Basis indices of the copy of the coefficient algebra sitting
        over the unit of the index (empty when there is no unit)."""
        unit = self.algebra_action.unit_element()
        if unit is None:
            return []
        return [i for i, (s, _) in enumerate(self.basis_labels) if s == unit]

    def verify_associativity(self):
        """Check (e_i e_j) e_k = e_i (e_j e_k) on all basis triples; stores
        and returns the first counterexample triple, or None."""
        zero = self.ring.zero()
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.mul_sparse(i, j)
                for k in range(self.dim):
                    left = {}
                    for l, c in ij.items():
                        for m, d in self.mul_sparse(l, k).items():
                            left[m] = left.get(m, zero) + c * d
                    right = {}
                    for l, c in self.mul_sparse(j, k).items():
                        for m, d in self.mul_sparse(i, l).items():
                            right[m] = right.get(m, zero) + c * d
                    if {m: c for m, c in left.items() if c} != \
                            {m: c for m, c in right.items() if c}:
                        self.associativity_counterexample = (i, j, k)
                        return self.associativity_counterexample
        return None


def build_skew_group_ring(algebra_action):
    """The partial skew group ring as a based algebra: dimension is the sum
    of the domain sizes, the multiplication table is materialized, and
    associativity is checked exhaustively on basis triples (a failure is
    recorded as a counterexample on the module, not raised)."""
    module = CovarianceModule(algebra_action)
    module.verify_associativity()
    return module


def ideal_generators(module):
    """Coordinate vectors of the generators 1_x delta_s - 1_x delta_t for
    s < t in the natural order and x ranging over X_s.  Works over any
    ring; closure and dimension queries additionally need a field."""
    alg = module.algebra_action
    order = natural_order(alg.index)
    gens = []
    for t in alg.index.elements:
        for s in order.strictly_below(t):
            for x in alg.domain_points(s):
                vec = zero_vector(module.ring, module.dim)
                vec[module.label_index(s, x)] = module.ring.one()
                vec[module.label_index(t, x)] = -module.ring.one()
                gens.append(vec)
    return gens


class IdealBasis:
    """Reduced echelon basis of the two-sided ideal generated by the
    order-identification vectors, closed under multiplication by L."""

    def __init__(self, module, tracker, generator_count):
        self.module = module
        self.tracker = tracker
        self.generator_count = generator_count

    @property
    def dimension(self):
        return self.tracker.dimension

    @property
    def rows(self):
        return self.tracker.rows

    def contains(self, vec):
        return self.tracker.contains(vec)

    def reduce(self, vec):
        return self.tracker.reduce(vec)


def build_ideal(module):
    """Span the ideal: start from the order generators and close under
    one-sided multiplication by every basis element until the rank stops
    growing.  Field scalars only."""
    if not module.ring.is_field:
        raise ValueError(f"ideal closure needs a field, got {module.ring.tag()}")
    gens = ideal_generators(module)
    tracker = SpanTracker(module.ring, module.dim)
    pending = []
    for g in gens:
        if tracker.add(g):
            pending.append(g)
    while pending:
        vec = pending.pop()
        for k in range(module.dim):
            for product in (module.basis_mul_vector(k, vec),
                            module.vector_mul_basis(vec, k)):
                if tracker.add(product):
                    pending.append(product)
    return IdealBasis(module, tracker, len(gens))


class QuotientAlgebra:
    """L/I with canonical representatives: reducing a coordinate vector by
    the ideal's echelon basis kills every pivot coordinate, so classes are
    identified with vectors supported on the non-pivot coordinates."""

    def __init__(self, module, ideal):
        self.module = module
        self.ideal = ideal
        self.ring = module.ring
        pivots = set(ideal.tracker.pivots)
        self._free = [i for i in range(module.dim) if i not in pivots]
        self.basis_labels = [module.basis_labels[i] for i in self._free]
        self.dim = len(self._free)
        self._table = {}
        self.representative_independence_verified = False

    def reduce(self, vec):
        """Canonical representative of the class of vec, inside L."""
        return self.ideal.reduce(vec)

    def project(self, vec):
        """Quotient coordinates of a canonical representative."""
        return [vec[i] for i in self._free]

    def class_of(self, vec):
        return self.project(self.reduce(vec))

    def lift(self, qvec):
        out = zero_vector(self.ring, self.module.dim)
        for pos, c in zip(self._free, qvec):
            out[pos] = c
        return out

    def mul_sparse(self, i, j):
        entry = self._table.get((i, j))
        if entry is None:
            product = self.module.mul_basis(self._free[i], self._free[j])
            entry = {k: c for k, c in enumerate(self.class_of(product)) if c}
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

    def diagonal_indices(self):
        unit = self.module.algebra_action.unit_element()
        return [i for i, (s, _) in enumerate(self.basis_labels) if s == unit]

    def class_of_element(self, elem):
        return self.class_of(self.module.to_vector(elem))

    def verify_representative_independence(self):
        """The induced product is well defined iff multiplying any ideal
        basis vector by any module basis element stays in the ideal; checks
        this exhaustively and returns the first violation, or None."""
        for r, row in enumerate(self.ideal.rows):
            for k in range(self.module.dim):
                if not self.ideal.contains(self.module.basis_mul_vector(k, row)):
                    return f"e_{k} * ideal row {r} leaves the ideal"
                if not self.ideal.contains(self.module.vector_mul_basis(row, k)):
                    return f"ideal row {r} * e_{k} leaves the ideal"
        return None


def build_quotient(module, ideal):
    """The partial skew inverse semigroup ring L/I.  Field scalars only;
    well-definedness of the product is verified, not assumed."""
    if not module.ring.is_field:
        raise ValueError(f"quotient needs a field, got {module.ring.tag()}")
    quotient = QuotientAlgebra(module, ideal)
    violation = quotient.verify_representative_independence()
    if violation is not None:
        raise ValueError(f"ideal is not two-sided: {violation}")
    quotient.representative_independence_verified = True
    return quotient


class PregradingReport(ValidationReport):
    pass


def check_pregrading(algebra):
    """Check that the family B_s (the images of D_s delta_s) pre-grades the
    algebra: B_s B_t inside B_{st}, monotone along the natural order, and
    jointly spanning.

    Accepts a CovarianceModule (where each B_s is a coordinate block) or a
    QuotientAlgebra (where membership is decided by exact span reduction).
    """
    if isinstance(algebra, QuotientAlgebra):
        module = algebra.module
        quotient = algebra
    else:
        module = algebra
        quotient = None
    alg = module.algebra_action
    index = alg.index
    order = natural_order(index)
    report = PregradingReport(f"pre-grading over {getattr(index, 'name', 'index')}")

    if quotient is None:
        blocks = {s: [_unit_vec(module, module.label_index(s, x))
                      for x in alg.domain_points(s)]
                  for s in index.elements}
        def member(vec, s):
            block = {module.label_index(s, x) for x in alg.domain_points(s)}
            return all(not c or i in block for i, c in enumerate(vec))
        def product(u, v):
            return module.mul_vectors(u, v)
        total_dim = module.dim
    else:
        trackers = {}
        blocks = {}
        for s in index.elements:
            vectors = [quotient.class_of(_unit_vec(module, module.label_index(s, x)))
                       for x in alg.domain_points(s)]
            blocks[s] = vectors
            tracker = SpanTracker(quotient.ring, quotient.dim)
            tracker.extend(vectors)
            trackers[s] = tracker
        def member(vec, s):
            return trackers[s].contains(vec)
        def product(u, v):
            return quotient.mul_vectors(u, v)
        total_dim = quotient.dim

    for s in index.elements:
        for t in index.elements:
            st = index.mul(s, t)
            for u in blocks[s]:
                for v in blocks[t]:
                    w = product(u, v)
                    if any(w) and not member(w, st):
                        report.add(f"B_{{{stable(s)}}} B_{{{stable(t)}}} is "
                                   f"not contained in B_{{{stable(st)}}}")
                        break
                else:
                    continue
                break
    for t in index.elements:
        for s in order.strictly_below(t):
            for u in blocks[s]:
                if any(u) and not member(u, t):
                    report.add(f"{stable(s)} <= {stable(t)} but B_{{{stable(s)}}} "
                               f"is not contained in B_{{{stable(t)}}}")
                    break
    ring = module.ring
    if ring.is_field:
        span = SpanTracker(ring, total_dim)
        for vectors in blocks.values():
            span.extend(vectors)
        if span.dimension != total_dim:
            report.add(f"the union of the B_s spans only {span.dimension} "
                       f"of {total_dim} dimensions")
    else:
        covered = {i for vectors in blocks.values()
                   for v in vectors for i, c in enumerate(v) if c}
        if len(covered) != total_dim:
            report.add("the union of the B_s does not cover the basis")
    return report


def _unit_vec(module, i):
    vec = zero_vector(module.ring, module.dim)
    vec[i] = module.ring.one()
    return vec
