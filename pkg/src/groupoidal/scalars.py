"""Exact coefficient rings (Q, Z, Z/n) and exact linear algebra over fields.

All arithmetic is arbitrary precision; no value is ever rounded.  Rationals
are stored as ``fractions.Fraction`` (lowest terms, positive denominator),
integers as Python ints, and residues mod n as ints in [0, n).
"""

from __future__ import annotations

from fractions import Fraction


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class ScalarRing:
    """A commutative coefficient ring with decidable equality.

    kind is one of "Q" (exact rationals), "Z" (integers) or "Zn"
    (integers mod n, n >= 2).
    """

    def __init__(self, kind, modulus=None):
        if kind not in ("Q", "Z", "Zn"):
            raise ValueError(f"unknown ring kind {kind!r}")
        if kind == "Zn":
            if modulus is None or modulus < 2:
                raise ValueError("modulus must be an integer >= 2")
        elif modulus is not None:
            raise ValueError(f"ring {kind} takes no modulus")
        self.kind = kind
        self.modulus = modulus
        if kind == "Q":
            self.is_field = True
            self.is_integral_domain = True
        elif kind == "Z":
            self.is_field = False
            self.is_integral_domain = True
        else:
            self.is_field = _is_prime(modulus)
            self.is_integral_domain = self.is_field

    def __eq__(self, other):
        return (isinstance(other, ScalarRing)
                and self.kind == other.kind and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.kind, self.modulus))

    def __repr__(self):
        return f"ScalarRing({self.tag()})"

    def tag(self):
        if self.kind == "Zn":
            return f"Z/{self.modulus}"
        return self.kind

    @property
    def size(self):
        """Number of elements, or None when infinite."""
        return self.modulus if self.kind == "Zn" else None

    def _normalize(self, raw):
        if self.kind == "Q":
            return raw if isinstance(raw, Fraction) else Fraction(raw)
        if self.kind == "Z":
            return int(raw)
        return int(raw) % self.modulus

    def scalar(self, raw):
        """Wrap a Python number (or pre-normalized value) in this ring."""
        return Scalar(self, self._normalize(raw))

    def zero(self):
        return self.scalar(0)

    def one(self):
        return self.scalar(1)

    def parse(self, text):
        """Parse a scalar from its string form, e.g. "-3", "5/6"."""
        text = text.strip()
        if "/" in text:
            if self.kind != "Q":
                raise ValueError(f"{text!r} is not a valid {self.tag()} scalar")
            num, den = text.split("/", 1)
            return self.scalar(Fraction(int(num), int(den)))
        return self.scalar(int(text))

    def elements(self):
        """All ring elements; only defined for finite rings."""
        if self.kind != "Zn":
            raise ValueError(f"{self.tag()} is infinite")
        return [self.scalar(v) for v in range(self.modulus)]

    def random(self, rng):
        """A pseudo-random scalar, for property tests."""
        if self.kind == "Q":
            return self.scalar(Fraction(rng.randint(-30, 30), rng.randint(1, 12)))
        if self.kind == "Z":
            return self.scalar(rng.randint(-50, 50))
        return self.scalar(rng.randrange(self.modulus))


def ring_from_tag(tag):
    """Build a ring from its input-file tag: "Q", "Z" or "Z/n"."""
    tag = tag.strip()
    if tag == "Q":
        return ScalarRing("Q")
    if tag == "Z":
        return ScalarRing("Z")
    if tag.startswith("Z/"):
        return ScalarRing("Zn", int(tag[2:]))
    raise ValueError(f"unknown ring tag {tag!r}")


class Scalar:
    """An exact element of a ScalarRing."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    def _check(self, other):
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError(f"mixed rings: {self.ring.tag()} vs {other.ring.tag()}")

    def __add__(self, other):
        self._check(other)
        return self.ring.scalar(self.value + other.value)

    def __sub__(self, other):
        self._check(other)
        return self.ring.scalar(self.value - other.value)

    def __mul__(self, other):
        self._check(other)
        return self.ring.scalar(self.value * other.value)

    def __neg__(self):
        return self.ring.scalar(-self.value)

    def __truediv__(self, other):
        self._check(other)
        if not self.ring.is_field:
            raise ValueError(f"{self.ring.tag()} is not a field; no division")
        if not other:
            raise ZeroDivisionError("scalar division by zero")
        if self.ring.kind == "Q":
            return self.ring.scalar(self.value / other.value)
        return self.ring.scalar(self.value * pow(other.value, -1, self.ring.modulus))

    def inverse(self):
        return self.ring.one() / self

    def is_unit(self):
        """True iff this scalar is invertible in its ring."""
        if self.ring.kind == "Q":
            return bool(self)
        if self.ring.kind == "Z":
            return self.value in (1, -1)
        from math import gcd
        return gcd(self.value, self.ring.modulus) == 1

    def __eq__(self, other):
        return (isinstance(other, Scalar) and self.ring == other.ring
                and self.value == other.value)

    def __hash__(self):
        return hash((self.ring, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}:{self.ring.tag()}"

    def __str__(self):
        return str(self.value)


# ---------------------------------------------------------------------------
# Exact linear algebra over a field.  Vectors are plain lists of Scalar.
# ---------------------------------------------------------------------------

def zero_vector(ring, length):
    z = ring.zero()
    return [z] * length


def is_zero_vector(vec):
    return not any(vec)


def add_vectors(u, v):
    return [a + b for a, b in zip(u, v)]


def scale_vector(c, v):
    return [c * a for a in v]


class SpanTracker:
    """Reduced row-echelon basis of a growing span, over a field.

    Rows are kept fully reduced (each pivot column is zero in every other
    row, pivot entries are 1) and sorted by pivot column, so the tracked
    basis is canonical for the span regardless of insertion order.
    """

    def __init__(self, ring, length):
        if not ring.is_field:
            raise ValueError(f"echelon reduction needs a field, got {ring.tag()}")
        self.ring = ring
        self.length = length
        self.rows = []
        self.pivots = []

    @property
    def dimension(self):
        return len(self.rows)

    def reduce(self, vec):
        """Residual of vec after eliminating all pivot coordinates."""
        if len(vec) != self.length:
            raise ValueError("vector length mismatch")
        vec = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            c = vec[piv]
            if c:
                vec = [a - c * b for a, b in zip(vec, row)]
        return vec

    def contains(self, vec):
        return is_zero_vector(self.reduce(vec))

    def add(self, vec):
        """Adjoin vec to the span; returns True when the rank grew."""
        res = self.reduce(vec)
        piv = next((i for i, a in enumerate(res) if a), None)
        if piv is None:
            return False
        inv = res[piv].inverse()
        res = [inv * a for a in res]
        for i, row in enumerate(self.rows):
            c = row[piv]
            if c:
                self.rows[i] = [a - c * b for a, b in zip(row, res)]
        at = next((k for k, p in enumerate(self.pivots) if p > piv), len(self.pivots))
        self.rows.insert(at, res)
        self.pivots.insert(at, piv)
        return True

    def extend(self, vectors):
        for v in vectors:
            self.add(v)
        return self


class SpanSolution:
    """Outcome of a span-membership query.

    When ``member`` is true, ``coefficients`` expresses the target over the
    input vectors exactly.  Otherwise ``basis`` (the reduced echelon basis
    of the span) together with the nonzero ``residual`` certifies
    non-membership.  ``dimension`` is the rank of the input span either way.
    """

    def __init__(self, member, coefficients, dimension, basis, residual):
        self.member = member
        self.coefficients = coefficients
        self.dimension = dimension
        self.basis = basis
        self.residual = residual


def solve_linear_span(vectors, target, ring):
    """Express target in span(vectors) over a field, or refuse with a witness."""
    if not ring.is_field:
        raise ValueError(f"span solving needs a field, got {ring.tag()}")
    vectors = [list(v) for v in vectors]
    length = len(target)
    for v in vectors:
        if len(v) != length:
            raise ValueError("vector length mismatch")
    n = len(vectors)
    zero, one = ring.zero(), ring.one()
    # Augment each vector with provenance coordinates over the input list,
    # then run the same reduction on the combined rows.
    aug = SpanTracker(ring, length + n)
    for i, v in enumerate(vectors):
        tail = [zero] * n
        tail[i] = one
        aug.add(v + tail)
    residual = list(target) + [zero] * n
    combo = [zero] * n
    for row, piv in zip(aug.rows, aug.pivots):
        if piv >= length:
            continue
        c = residual[piv]
        if c:
            residual = [a - c * b for a, b in zip(residual, row)]
            combo = [a + c * b for a, b in zip(combo, row[length:])]
    front = residual[:length]
    basis = [row[:length] for row, piv in zip(aug.rows, aug.pivots) if piv < length]
    dimension = len(basis)
    if is_zero_vector(front):
        return SpanSolution(True, combo, dimension, basis, None)
    return SpanSolution(False, None, dimension, basis, front)


def span_dimension(vectors, ring):
    if not vectors:
        return 0
    tracker = SpanTracker(ring, len(vectors[0]))
    tracker.extend(vectors)
    return tracker.dimension
