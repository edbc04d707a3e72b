"""Executable, certified algebra isomorphisms between partial skew rings
and Steinberg algebras, orbit-equivalence and groupoid-isomorphism search,
the realization of a Steinberg algebra as a partial skew inverse semigroup
ring, and brute-force group-ring probes.

Every structural flag on an AlgebraMap is backed by an exhaustively
computed certificate; a flag is never asserted without one.
"""

from __future__ import annotations

from itertools import permutations, product

from .groupoid_core import range_set, DEFAULT_BISECTION_BOUND
from .inverse_semigroups import bisection_semigroup
from .partial_actions import (SemigroupPartialAction, SpaceFunction,
                              induce_algebra_action)
from .scalars import SpanTracker, zero_vector
from .skew_rings import (CovarianceModule, SkewElement, build_ideal,
                         build_quotient, build_skew_group_ring)
from .steinberg_algebra import (GroupoidFunction, SteinbergAlgebra,
                                disjoint_decomposition)
from .transformation_groupoid import build_transformation_groupoid
from .validation import BoundExceeded

DEFAULT_ISO_BOUND = 10
DEFAULT_ORBIT_BOUND = 6


class AlgebraMap:
    """A scalar-linear map between two based algebras, given by the images
    of the domain basis.  Certificates (homomorphism, injective,
    surjective, diagonal-preserving) are computed exhaustively on demand
    and cached with their witness or counterexample."""

    def __init__(self, domain, codomain, images, name="map"):
        self.domain = domain
        self.codomain = codomain
        self.images = [list(v) for v in images]
        self.name = name
        self.certificates = {}
        if len(self.images) != domain.dim:
            raise ValueError("one image per domain basis element required")
        for v in self.images:
            if len(v) != codomain.dim:
                raise ValueError("image has the wrong length")

    def apply(self, vec):
        out = zero_vector(self.codomain.ring, self.codomain.dim)
        for i, c in enumerate(vec):
            if c:
                out = [o + c * w for o, w in zip(out, self.images[i])]
        return out

    def _store(self, kind, flag, detail):
        self.certificates[kind] = (flag, detail)
        return flag

    def _flag(self, kind):
        if kind not in self.certificates:
            raise RuntimeError(f"{kind} certificate not computed for {self.name}")
        return self.certificates[kind][0]

    @property
    def is_homomorphism(self):
        return self._flag("homomorphism")

    @property
    def is_injective(self):
        return self._flag("injective")

    @property
    def is_surjective(self):
        return self._flag("surjective")

    @property
    def preserves_diagonal(self):
        return self._flag("diagonal")

    def counterexample(self, kind):
        return self.certificates[kind][1]

    def certify_homomorphism(self):
        """Exhaustive multiplicativity on all domain basis pairs."""
        for i in range(self.domain.dim):
            for j in range(self.domain.dim):
                lhs = self.apply(self.domain.mul_basis(i, j))
                rhs = self.codomain.mul_vectors(self.images[i], self.images[j])
                if lhs != rhs:
                    return self._store(
                        "homomorphism", False,
                        f"fails on basis pair ({self.domain.basis_labels[i]}, "
                        f"{self.domain.basis_labels[j]})")
        return self._store("homomorphism", True, None)

    def _monomial(self):
        """(coordinate, coefficient) per basis image when every image is a
        single coordinate with a unit coefficient; None otherwise."""
        hits = []
        for v in self.images:
            nonzero = [(k, c) for k, c in enumerate(v) if c]
            if len(nonzero) != 1 or not nonzero[0][1].is_unit():
                return None
            hits.append(nonzero[0])
        return hits

    def _augmented_tracker(self):
        ring = self.codomain.ring
        n, m = self.codomain.dim, self.domain.dim
        aug = SpanTracker(ring, n + m)
        for i, img in enumerate(self.images):
            tail = zero_vector(ring, m)
            tail[i] = ring.one()
            aug.add(img + tail)
        return aug

    def certify_injective(self):
        hits = self._monomial()
        if hits is not None:
            coords = [k for k, _ in hits]
            if len(set(coords)) == len(coords):
                return self._store("injective", True, None)
        if not self.codomain.ring.is_field:
            raise ValueError(f"injectivity certificate for {self.name} "
                             "needs a field")
        aug = self._augmented_tracker()
        n = self.codomain.dim
        for row, piv in zip(aug.rows, aug.pivots):
            if piv >= n:
                kernel = row[n:]
                return self._store("injective", False,
                                   f"kernel vector {_vector_repr(self.domain, kernel)}")
        return self._store("injective", True, None)

    def certify_surjective(self):
        hits = self._monomial()
        if hits is not None:
            coords = {k for k, _ in hits}
            if coords == set(range(self.codomain.dim)):
                return self._store("surjective", True, None)
            if not self.codomain.ring.is_field:
                missing = min(set(range(self.codomain.dim)) - coords)
                return self._store(
                    "surjective", False,
                    f"basis coordinate {self.codomain.basis_labels[missing]} "
                    "is not hit")
        if not self.codomain.ring.is_field:
            raise ValueError(f"surjectivity certificate for {self.name} "
                             "needs a field")
        tracker = SpanTracker(self.codomain.ring, self.codomain.dim)
        tracker.extend(self.images)
        if tracker.dimension == self.codomain.dim:
            return self._store("surjective", True, None)
        return self._store("surjective", False,
                           f"image has rank {tracker.dimension} "
                           f"< {self.codomain.dim}")

    def certify_diagonal(self):
        """Image of the domain diagonal equals the codomain diagonal, as
        exact spans."""
        dom_diag = self.domain.diagonal_indices()
        cod_diag = self.codomain.diagonal_indices()
        cod_set = set(cod_diag)
        diag_images = []
        for i in dom_diag:
            img = self.images[i]
            bad = next((k for k, c in enumerate(img) if c and k not in cod_set),
                       None)
            if bad is not None:
                return self._store(
                    "diagonal", False,
                    f"image of diagonal basis {self.domain.basis_labels[i]} "
                    f"leaks to {self.codomain.basis_labels[bad]}")
            diag_images.append(img)
        # containment holds; spans are equal iff the ranks agree
        if self.codomain.ring.is_field:
            tracker = SpanTracker(self.codomain.ring, self.codomain.dim)
            tracker.extend(diag_images)
            if tracker.dimension != len(cod_diag):
                return self._store(
                    "diagonal", False,
                    f"diagonal image has rank {tracker.dimension} "
                    f"< {len(cod_diag)}")
            return self._store("diagonal", True, None)
        covered = set()
        for img in diag_images:
            nonzero = [(k, c) for k, c in enumerate(img) if c]
            if len(nonzero) != 1 or not nonzero[0][1].is_unit():
                raise ValueError(f"diagonal certificate for {self.name} "
                                 "needs a field")
            covered.add(nonzero[0][0])
        flag = covered == cod_set
        return self._store("diagonal", flag,
                           None if flag else "diagonal not covered")

    def certify_all(self):
        self.certify_homomorphism()
        self.certify_injective()
        self.certify_surjective()
        self.certify_diagonal()
        return self

    @property
    def is_isomorphism(self):
        return self.is_homomorphism and self.is_injective and self.is_surjective

    def inverse(self, name=None):
        """The inverse map; requires a bijective map (monomial case works
        over any ring, otherwise exact solving over a field)."""
        name = name or f"{self.name}^-1"
        n, m = self.codomain.dim, self.domain.dim
        if n != m:
            raise ValueError(f"{self.name} maps dimension {m} to {n}; "
                             "not invertible")
        hits = self._monomial()
        if hits is not None and len({k for k, _ in hits}) == m == n:
            images = [None] * n
            for i, (k, c) in enumerate(hits):
                vec = zero_vector(self.domain.ring, m)
                vec[i] = _ring_unit_inverse(c)
                images[k] = vec
            return AlgebraMap(self.codomain, self.domain, images, name=name)
        if not self.codomain.ring.is_field:
            raise ValueError(f"inverse of {self.name} needs a field")
        aug = self._augmented_tracker()
        images = []
        for k in range(n):
            target = zero_vector(self.codomain.ring, n)
            target[k] = self.codomain.ring.one()
            residual = list(target) + zero_vector(self.codomain.ring, m)
            combo = zero_vector(self.codomain.ring, m)
            for row, piv in zip(aug.rows, aug.pivots):
                if piv >= n:
                    continue
                c = residual[piv]
                if c:
                    residual = [a - c * b for a, b in zip(residual, row)]
                    combo = [a + c * b for a, b in zip(combo, row[n:])]
            if any(residual[:n]):
                raise ValueError(f"{self.name} is not surjective; no inverse")
            images.append(combo)
        return AlgebraMap(self.codomain, self.domain, images, name=name)

    def compose(self, inner, name=None):
        """self o inner.  The middle algebras must agree structurally
        (same ring and basis), not necessarily as objects."""
        if (inner.codomain.ring != self.domain.ring
                or inner.codomain.basis_labels != self.domain.basis_labels):
            raise ValueError("composition domains do not match")
        images = [self.apply(v) for v in inner.images]
        return AlgebraMap(inner.domain, self.codomain, images,
                          name=name or f"{self.name}o{inner.name}")

    def is_identity(self):
        if self.domain.dim != self.codomain.dim:
            return False
        ring = self.codomain.ring
        for i, img in enumerate(self.images):
            expected = zero_vector(ring, self.codomain.dim)
            expected[i] = ring.one()
            if img != expected:
                return False
        return True

    def __repr__(self):
        return (f"AlgebraMap({self.name}: {self.domain.dim} -> "
                f"{self.codomain.dim})")


def _ring_unit_inverse(c):
    ring = c.ring
    if ring.kind == "Z":
        return c
    if ring.kind == "Zn":
        return ring.scalar(pow(c.value, -1, ring.modulus))
    return c.inverse()


def _vector_repr(algebra, vec):
    parts = [f"{c}*{algebra.basis_labels[i]}" for i, c in enumerate(vec) if c]
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# The skew group ring <-> Steinberg algebra isomorphism for a partial
# group action.
# ---------------------------------------------------------------------------

def rho(action, ring, module=None, groupoid=None):
    """The isomorphism from the partial skew group ring onto the Steinberg
    algebra of the transformation groupoid.  On basis elements it sends the
    point mass at x in D_g (times delta_g) to the point mass at the arrow
    (g, x).  All four certificates are computed exhaustively."""
    if module is None:
        module = build_skew_group_ring(induce_algebra_action(action, ring))
    if groupoid is None:
        groupoid = build_transformation_groupoid(action)
    algebra = SteinbergAlgebra(groupoid, ring)
    images = []
    for (g, x) in module.basis_labels:
        vec = zero_vector(ring, algebra.dim)
        vec[groupoid.index((g, x))] = ring.one()
        images.append(vec)
    return AlgebraMap(module, algebra, images, name="rho").certify_all()


def rho_inverse(f, module):
    """Recover the formal sum from a function on the transformation
    groupoid: the delta_g coefficient at x is the value at the arrow
    (g, x)."""
    terms = {}
    for (g, x), c in f.values.items():
        terms.setdefault(g, {})[x] = c
    return SkewElement(module.algebra_action,
                       {g: SpaceFunction(module.ring, vals)
                        for g, vals in terms.items()})


def check_diagonal_correspondence(rho_map):
    """The image of the coefficient algebra (the delta_e block) must equal
    the diagonal of the Steinberg algebra, as exact spans."""
    if "diagonal" not in rho_map.certificates:
        rho_map.certify_diagonal()
    return rho_map.preserves_diagonal


# ---------------------------------------------------------------------------
# Continuous orbit equivalence of partial group actions.
# ---------------------------------------------------------------------------

class OrbitEquivalenceData:
    """A bijection of the spaces plus the two pointwise cocycles."""

    def __init__(self, phi, a, b):
        self.phi = dict(phi)
        self.a = dict(a)
        self.b = dict(b)

    def __repr__(self):
        return f"OrbitEquivalenceData(phi={self.phi})"


def verify_orbit_equivalence(theta, gamma, data):
    """Exhaustively check both intertwining identities and the implicit
    containments; returns (ok, first violation or None)."""
    x_space, y_space = set(theta.space), set(gamma.space)
    phi = data.phi
    if set(phi) != x_space or set(phi.values()) != y_space \
            or len(set(phi.values())) != len(phi):
        return (False, "phi is not a bijection between the spaces")
    g_grp, h_grp = theta.group, gamma.group
    for g in g_grp.elements:
        for x in theta.domain_points(g_grp.inv(g)):
            h = data.a.get((g, x))
            if h is None or h not in set(h_grp.elements):
                return (False, f"cocycle a undefined on ({g}, {x})")
            if phi[x] not in gamma.domains[h_grp.inv(h)]:
                return (False, f"a({g}, {x}) = {h} but phi({x}) is outside "
                               f"the domain of gamma_{h}")
            if gamma.theta(h, phi[x]) != phi[theta.theta(g, x)]:
                return (False, f"phi(theta_{g}({x})) != "
                               f"gamma_{h}(phi({x}))")
    phi_inv = {y: x for x, y in phi.items()}
    for h in h_grp.elements:
        for y in gamma.domain_points(h_grp.inv(h)):
            g = data.b.get((h, y))
            if g is None or g not in set(g_grp.elements):
                return (False, f"cocycle b undefined on ({h}, {y})")
            if phi_inv[y] not in theta.domains[g_grp.inv(g)]:
                return (False, f"b({h}, {y}) = {g} but phi^-1({y}) is outside "
                               f"the domain of theta_{g}")
            if theta.theta(g, phi_inv[y]) != phi_inv[gamma.theta(h, y)]:
                return (False, f"phi^-1(gamma_{h}({y})) != "
                               f"theta_{g}(phi^-1({y}))")
    return (True, None)


def identity_orbit_equivalence(action):
    """The equivalence of an action with itself: phi = id, cocycles the
    acting elements themselves."""
    g_grp = action.group
    phi = {x: x for x in action.space}
    a = {(g, x): g for g in g_grp.elements
         for x in action.domain_points(g_grp.inv(g))}
    return OrbitEquivalenceData(phi, a, dict(a))


def search_orbit_equivalence(theta, gamma, bound=DEFAULT_ORBIT_BOUND):
    """Brute-force search over space bijections with pointwise cocycle
    choices; sound and complete within the bound.  Returns the
    lexicographically first witness, or None when exhausted."""
    nx, ny = len(theta.space), len(gamma.space)
    if max(nx, ny) > bound:
        raise BoundExceeded(f"spaces too large: {max(nx, ny)} points "
                            f"exceeds orbit bound {bound}")
    if nx != ny:
        return None
    g_grp, h_grp = theta.group, gamma.group
    for image in permutations(gamma.space):
        phi = dict(zip(theta.space, image))
        a = {}
        feasible = True
        for g in g_grp.elements:
            if not feasible:
                break
            for x in theta.domain_points(g_grp.inv(g)):
                target = phi[theta.theta(g, x)]
                h = next((h for h in h_grp.elements
                          if phi[x] in gamma.domains[h_grp.inv(h)]
                          and gamma.theta(h, phi[x]) == target), None)
                if h is None:
                    feasible = False
                    break
                a[(g, x)] = h
        if not feasible:
            continue
        phi_inv = {y: x for x, y in phi.items()}
        b = {}
        for h in h_grp.elements:
            if not feasible:
                break
            for y in gamma.domain_points(h_grp.inv(h)):
                target = phi_inv[gamma.theta(h, y)]
                g = next((g for g in g_grp.elements
                          if phi_inv[y] in theta.domains[g_grp.inv(g)]
                          and theta.theta(g, phi_inv[y]) == target), None)
                if g is None:
                    feasible = False
                    break
                b[(h, y)] = g
        if feasible:
            return OrbitEquivalenceData(phi, a, b)
    return None


# ---------------------------------------------------------------------------
# Groupoid isomorphism search.
# ---------------------------------------------------------------------------

class GroupoidIsomorphism:
    """An arrow bijection carrying units to units, preserving range and
    source, and multiplicative on composable pairs."""

    def __init__(self, mapping):
        self.mapping = dict(mapping)

    def __call__(self, arrow):
        return self.mapping[arrow]

    def __repr__(self):
        return f"GroupoidIsomorphism({len(self.mapping)} arrows)"


def verify_groupoid_isomorphism(g1, g2, iso):
    m = iso.mapping
    if set(m) != set(g1.arrows) or set(m.values()) != set(g2.arrows) \
            or len(set(m.values())) != len(m):
        return (False, "not an arrow bijection")
    for a in g1.arrows:
        if g1.is_unit(a) != g2.is_unit(m[a]):
            return (False, f"unit flag not preserved on {a}")
        if m[g1.range(a)] != g2.range(m[a]) or m[g1.source(a)] != g2.source(m[a]):
            return (False, f"range/source not preserved on {a}")
        if m[g1.inverse(a)] != g2.inverse(m[a]):
            return (False, f"inverse not preserved on {a}")
    for a in g1.arrows:
        for b in g1.arrows:
            if g1.composable(a, b) != g2.composable(m[a], m[b]):
                return (False, f"composability not preserved on ({a}, {b})")
            if g1.composable(a, b) and m[g1.compose(a, b)] != g2.compose(m[a], m[b]):
                return (False, f"composition not preserved on ({a}, {b})")
    return (True, None)


def search_groupoid_isomorphism(g1, g2, bound=DEFAULT_ISO_BOUND):
    """Backtracking over arrow bijections, units first, pruned by the
    unit/range/source/inverse/composition constraints; sound and complete
    within the bound.  Returns the lexicographically first witness or None."""
    if max(g1.n_arrows, g2.n_arrows) > bound:
        raise BoundExceeded(f"groupoids too large: "
                            f"{max(g1.n_arrows, g2.n_arrows)} arrows exceeds "
                            f"iso bound {bound}")
    if g1.n_arrows != g2.n_arrows or len(g1.units) != len(g2.units):
        return None

    order1 = g1.sort_arrows(g1.units) + \
        [a for a in g1.arrows if not g1.is_unit(a)]
    units2 = [a for a in g2.arrows if g2.is_unit(a)]
    nonunits2 = [a for a in g2.arrows if not g2.is_unit(a)]

    mapping = {}
    used = set()

    def consistent(a, b):
        if g1.is_unit(a) != g2.is_unit(b):
            return False
        ra, sa = g1.range(a), g1.source(a)
        if ra in mapping and mapping[ra] != g2.range(b):
            return False
        if sa in mapping and mapping[sa] != g2.source(b):
            return False
        inv_a = g1.inverse(a)
        if inv_a in mapping and mapping[inv_a] != g2.inverse(b):
            return False
        for a2, b2 in mapping.items():
            if g1.composable(a, a2) != g2.composable(b, b2):
                return False
            if g1.composable(a2, a) != g2.composable(b2, b):
                return False
            if g1.composable(a, a2):
                c = g1.compose(a, a2)
                if c in mapping and mapping[c] != g2.compose(b, b2):
                    return False
            if g1.composable(a2, a):
                c = g1.compose(a2, a)
                if c in mapping and mapping[c] != g2.compose(b2, b):
                    return False
        return True

    def backtrack(pos):
        if pos == len(order1):
            return True
        a = order1[pos]
        candidates = units2 if g1.is_unit(a) else nonunits2
        for b in candidates:
            if b in used or not consistent(a, b):
                continue
            mapping[a] = b
            used.add(b)
            if backtrack(pos + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    if backtrack(0):
        iso = GroupoidIsomorphism(mapping)
        ok, why = verify_groupoid_isomorphism(g1, g2, iso)
        if not ok:
            raise AssertionError(f"search produced a non-isomorphism: {why}")
        return iso
    return None


# ---------------------------------------------------------------------------
# Transport of isomorphisms along a groupoid isomorphism.
# ---------------------------------------------------------------------------

def steinberg_transport(iso, algebra1, algebra2, name="Gamma"):
    """Pull a groupoid isomorphism back to a diagonal-preserving algebra
    isomorphism of the Steinberg algebras (point masses map to point
    masses)."""
    images = []
    for a in algebra1.basis_labels:
        vec = zero_vector(algebra2.ring, algebra2.dim)
        vec[algebra2.groupoid.index(iso(a))] = algebra2.ring.one()
        images.append(vec)
    return AlgebraMap(algebra1, algebra2, images, name=name).certify_all()


def transported_skew_isomorphism(rho1, rho2, gamma, name="Phi"):
    """The induced isomorphism of the partial skew group rings carrying the
    coefficient algebra onto the coefficient algebra: the composite of
    rho1, the Steinberg-level transport, and the inverse of rho2."""
    composite = rho2.inverse().compose(gamma.compose(rho1), name=name)
    return composite.certify_all()


# ---------------------------------------------------------------------------
# The bisection action (the intrinsic partial action of the inverse
# semigroup of bisections on the unit space) and the skew realization of a
# Steinberg algebra.
# ---------------------------------------------------------------------------

def bisection_action(groupoid, semigroup=None, bound=DEFAULT_BISECTION_BOUND):
    """The partial action of the bisection semigroup on the unit space:
    a bisection B acts by source-fiber-to-range-fiber transport, sending
    s(b) to r(b) for each arrow b in B.  The domain attached to B is r(B)."""
    if semigroup is None:
        semigroup = bisection_semigroup(groupoid, bound)
    space = groupoid.sort_arrows(groupoid.units)
    domains = {}
    maps = {}
    for bis in semigroup.elements:
        domains[bis] = range_set(groupoid, bis)
        maps[bis] = {groupoid.source(b): groupoid.range(b) for b in bis}
    return SemigroupPartialAction(semigroup, space, domains, maps,
                                  name=f"bisections@{groupoid.name}")


class SkewRealization:
    """Everything produced while realizing a Steinberg algebra as a partial
    skew inverse semigroup ring: the bisection semigroup, its action, the
    covariance module L, the ideal I, the quotient L/I, and the certified
    maps psi (on L) and psi_tilde (on L/I)."""

    def __init__(self, groupoid, ring, semigroup, action, algebra_action,
                 module, ideal, quotient, steinberg, psi_map, psi_tilde):
        self.groupoid = groupoid
        self.ring = ring
        self.semigroup = semigroup
        self.action = action
        self.algebra_action = algebra_action
        self.module = module
        self.ideal = ideal
        self.quotient = quotient
        self.steinberg = steinberg
        self.psi_map = psi_map
        self.psi_tilde = psi_tilde

    @property
    def dimension_ledger(self):
        """(dim L, dim I, dim L/I, dim A_R(G))."""
        return (self.module.dim, self.ideal.dimension,
                self.quotient.dim, self.steinberg.dim)

    def psi_vanishes_on_ideal(self):
        """Check psi = 0 on the full echelon basis of the ideal."""
        return all(not any(self.psi_map.apply(row)) for row in self.ideal.rows)


def psi(groupoid, ring, bisection_bound=DEFAULT_BISECTION_BOUND):
    """Realize the Steinberg algebra of a finite groupoid as a partial skew
    inverse semigroup ring over its bisection semigroup.

    The map psi sends the basis element (point mass at u) delta_B to the
    point mass at the unique arrow of B with range u; it is certified
    multiplicative and surjective, vanishes on the ideal, and descends to
    the certified isomorphism psi_tilde on the quotient.  Field scalars
    only.
    """
    if not ring.is_field:
        raise ValueError(f"the quotient construction needs a field, "
                         f"got {ring.tag()}")
    semigroup = bisection_semigroup(groupoid, bisection_bound)
    action = bisection_action(groupoid, semigroup)
    algebra_action = induce_algebra_action(action, ring)
    module = CovarianceModule(algebra_action)
    module.verify_associativity()
    steinberg = SteinbergAlgebra(groupoid, ring)

    images = []
    for (bis, u) in module.basis_labels:
        arrow = next(b for b in bis if groupoid.range(b) == u)
        vec = zero_vector(ring, steinberg.dim)
        vec[groupoid.index(arrow)] = ring.one()
        images.append(vec)
    psi_map = AlgebraMap(module, steinberg, images, name="psi")
    psi_map.certify_homomorphism()
    psi_map.certify_injective()
    psi_map.certify_surjective()

    ideal = build_ideal(module)
    quotient = build_quotient(module, ideal)
    tilde_images = [psi_map.apply(quotient.lift(_unit(ring, quotient.dim, q)))
                    for q in range(quotient.dim)]
    psi_tilde = AlgebraMap(quotient, steinberg, tilde_images, name="psi~")
    psi_tilde.certify_homomorphism()
    psi_tilde.certify_injective()
    psi_tilde.certify_surjective()

    return SkewRealization(groupoid, ring, semigroup, action, algebra_action,
                           module, ideal, quotient, steinberg, psi_map,
                           psi_tilde)


def _unit(ring, dim, k):
    vec = zero_vector(ring, dim)
    vec[k] = ring.one()
    return vec


def phi(f, realization):
    """The left inverse of psi_tilde: decompose f canonically into disjoint
    bisection indicators sum r_i 1_{B_i} and map it to the class of
    sum r_i (indicator of r(B_i)) delta_{B_i}.  Returns quotient
    coordinates."""
    if f.parent is not realization.groupoid or f.ring != realization.ring:
        raise ValueError("function does not live on the realized groupoid")
    module = realization.module
    vec = zero_vector(realization.ring, module.dim)
    for coeff, bis in disjoint_decomposition(f):
        for u in range_set(realization.groupoid, bis):
            k = module.label_index(bis, u)
            vec[k] = vec[k] + coeff
    return realization.quotient.class_of(vec)


def verify_phi_left_inverse(realization):
    """phi o psi_tilde must fix every quotient basis class."""
    quotient = realization.quotient
    for q in range(quotient.dim):
        f = realization.steinberg.from_vector(realization.psi_tilde.images[q])
        got = phi(f, realization)
        expected = _unit(realization.ring, quotient.dim, q)
        if got != expected:
            return (False, f"phi(psi~(e_{q})) = "
                           f"{_vector_repr(quotient, got)}")
    return (True, None)


def verify_phi_additive(realization, rng, trials=200):
    """phi(f + g) = phi(f) + phi(g) as classes, on random pairs."""
    steinberg = realization.steinberg
    ring = realization.ring
    for trial in range(trials):
        f = _random_function(steinberg, rng)
        g = _random_function(steinberg, rng)
        lhs = phi(f + g, realization)
        rhs = [a + b for a, b in zip(phi(f, realization),
                                     phi(g, realization))]
        if lhs != rhs:
            return (False, f"additivity fails at trial {trial}")
    return (True, None)


def _random_function(steinberg, rng):
    g = steinberg.groupoid
    values = {}
    for a in g.arrows:
        if rng.random() < 0.5:
            c = steinberg.ring.random(rng)
            if c:
                values[a] = c
    return GroupoidFunction(g, steinberg.ring, values)


# ---------------------------------------------------------------------------
# Brute-force probes of finite group rings.
# ---------------------------------------------------------------------------

class GroupRingProbe:
    """Outcome of an exhaustive scan of the group ring of a finite group
    over a finite ring (or of the ring-flag shortcut for the trivial
    group)."""

    def __init__(self, group, ring, method, has_zero_divisors,
                 zero_divisor_pair, has_nontrivial_units, nontrivial_unit):
        self.group = group
        self.ring = ring
        self.method = method
        self.has_zero_divisors = has_zero_divisors
        self.zero_divisor_pair = zero_divisor_pair
        self.has_nontrivial_units = has_nontrivial_units
        self.nontrivial_unit = nontrivial_unit


def group_ring_probe(group, ring, bound=1024):
    """Scan R[G] for zero divisors and nontrivial units by enumeration.

    The trivial group is answered from the ring flags (R[G] is R, and every
    unit r e is trivial).  Otherwise the ring must be finite with
    |R|^|G| <= bound.
    """
    n = group.order
    if n == 1:
        e = group.identity
        pair = None
        if not ring.is_integral_domain:
            d = next(d for d in range(2, ring.modulus)
                     if ring.modulus % d == 0)
            pair = ({e: d}, {e: ring.modulus // d})
        return GroupRingProbe(group, ring, "ring-flags",
                              not ring.is_integral_domain, pair, False, None)
    if ring.size is None:
        raise BoundExceeded(f"cannot enumerate {ring.tag()}[{group.name}]: "
                            "infinite ring")
    total = ring.size ** n
    if total > bound:
        raise BoundExceeded(f"|{ring.tag()}[{group.name}]| = {total} "
                            f"exceeds probe bound {bound}")

    mod = ring.modulus
    elems = group.elements
    mul_idx = [[elems.index(group.mul(a, b)) for b in elems] for a in elems]

    def conv(x, y):
        out = [0] * n
        for i in range(n):
            if x[i]:
                for j in range(n):
                    if y[j]:
                        k = mul_idx[i][j]
                        out[k] = (out[k] + x[i] * y[j]) % mod
        return tuple(out)

    all_elems = list(product(range(mod), repeat=n))
    zero = tuple([0] * n)
    one = tuple(1 if g == group.identity else 0 for g in elems)

    def as_dict(x):
        return {elems[i]: x[i] for i in range(n) if x[i]}

    zero_pair = None
    for x in all_elems:
        if x == zero:
            continue
        for y in all_elems:
            if y == zero:
                continue
            if conv(x, y) == zero:
                zero_pair = (as_dict(x), as_dict(y))
                break
        if zero_pair:
            break

    nontrivial_unit = None
    for x in all_elems:
        if sum(1 for v in x if v) < 2:
            continue
        inv = next((y for y in all_elems
                    if conv(x, y) == one and conv(y, x) == one), None)
        if inv is not None:
            nontrivial_unit = as_dict(x)
            break

    return GroupRingProbe(group, ring, "enumeration",
                          zero_pair is not None, zero_pair,
                          nontrivial_unit is not None, nontrivial_unit)
