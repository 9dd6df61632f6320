"""Commutative semirings with exact arithmetic.

Every semiring instance exposes ``add``/``mul`` (the two commutative,
associative operations, with ``mul`` distributing over ``add``), optional
neutral elements, and optional division.  Values are plain exact Python
objects: ``int``, ``fractions.Fraction``, :class:`Polynomial`, or the
:data:`STAR` tag of a star-extended semiring.  No floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    DivisionUnsupported,
    EmptySumWithoutNeutral,
    NotInvertible,
    RingRequired,
)


class _Star:
    """The extra absorbing/neutral element of a star-extended semiring."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "STAR"


STAR = _Star()


class Polynomial:
    """Multivariate polynomial over the integers in canonical form.

    ``terms`` maps exponent tuples (one slot per variable, negative entries
    allowed for Laurent monomials) to nonzero integer coefficients.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, coeff in (terms or {}).items():
            if coeff:
                clean[tuple(exps)] = coeff
        self.terms = clean

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars, index, power=1):
        exps = [0] * nvars
        exps[index] = power
        return cls(nvars, {tuple(exps): 1})

    def __add__(self, other):
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            terms[exps] = terms.get(exps, 0) + coeff
        return Polynomial(self.nvars, terms)

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, 0) + c1 * c2
        return Polynomial(self.nvars, terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def substitute(self, values):
        """Evaluate at integer/Fraction values (all exponents must be >= 0)."""
        total = 0
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, exps):
                if e < 0:
                    raise ValueError("negative exponent in substitution")
                term *= v**e
            total += term
        return total

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = []
        for exps in sorted(self.terms):
            mono = "*".join(
                f"v{i}^{e}" for i, e in enumerate(exps) if e
            ) or "1"
            bits.append(f"{self.terms[exps]}*{mono}")
        return "Poly(" + " + ".join(bits) + ")"


def _frac_to_json(x):
    if isinstance(x, int):
        return x
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def _frac_from_json(data):
    if isinstance(data, int):
        return Fraction(data)
    if isinstance(data, str):
        return Fraction(data)
    raise ValueError(f"cannot parse exact rational from {data!r}")


class Semiring:
    """Base class; concrete subclasses fix the value domain and operations."""

    name = "semiring"
    has_zero = False
    has_one = False
    has_additive_inverse = False
    has_division = False

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def zero(self):
        raise EmptySumWithoutNeutral(f"{self.name} has no additive neutral")

    def one(self):
        raise EmptySumWithoutNeutral(f"{self.name} has no multiplicative neutral")

    def negate(self, a):
        raise RingRequired(f"{self.name} has no additive inverses")

    def divide(self, a, b):
        raise DivisionUnsupported(f"{self.name} has no division")

    def contains(self, a):
        raise NotImplementedError

    def equal(self, a, b):
        return a == b

    def from_int(self, k):
        """Map a nonnegative flow count into the semiring (used by tests)."""
        raise NotImplementedError

    def random_value(self, rng):
        raise NotImplementedError

    def to_json(self, a):
        raise NotImplementedError

    def from_json(self, data):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name

    def __hash__(self):
        return hash((type(self), self.name))


class IntegerRing(Semiring):
    name = "integers"
    has_zero = True
    has_one = True
    has_additive_inverse = True

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def zero(self):
        return 0

    def one(self):
        return 1

    def negate(self, a):
        return -a

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool)

    def from_int(self, k):
        return k

    def random_value(self, rng):
        return rng.randint(-9, 9)

    def to_json(self, a):
        return a

    def from_json(self, data):
        if not isinstance(data, int):
            raise ValueError(f"expected integer, got {data!r}")
        return data


class RationalField(Semiring):
    name = "rationals"
    has_zero = True
    has_one = True
    has_additive_inverse = True
    has_division = True

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def negate(self, a):
        return -a

    def divide(self, a, b):
        if b == 0:
            raise NotInvertible("division by zero")
        return Fraction(a) / b

    def contains(self, a):
        return isinstance(a, (int, Fraction)) and not isinstance(a, bool)

    def from_int(self, k):
        return Fraction(k)

    def random_value(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def to_json(self, a):
        return _frac_to_json(Fraction(a))

    def from_json(self, data):
        return _frac_from_json(data)


class PositiveRationals(Semiring):
    """Strictly positive rationals with ordinary + and *: no zero, division."""

    name = "positive-rationals"
    has_one = True
    has_division = True

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def one(self):
        return Fraction(1)

    def divide(self, a, b):
        return Fraction(a) / b

    def contains(self, a):
        return isinstance(a, (int, Fraction)) and not isinstance(a, bool) and a > 0

    def from_int(self, k):
        if k <= 0:
            raise ValueError("positive rationals cannot represent a zero count")
        return Fraction(k)

    def random_value(self, rng):
        return Fraction(rng.randint(1, 9), rng.randint(1, 9))

    def to_json(self, a):
        return _frac_to_json(Fraction(a))

    def from_json(self, data):
        value = _frac_from_json(data)
        if value <= 0:
            raise ValueError(f"{data!r} is not positive")
        return value


class TropicalIntegers(Semiring):
    """Integers with max as addition and + as multiplication."""

    name = "tropical-int"
    has_one = True
    has_division = True

    def add(self, a, b):
        return max(a, b)

    def mul(self, a, b):
        return a + b

    def one(self):
        return 0

    def divide(self, a, b):
        return a - b

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool)

    def random_value(self, rng):
        return rng.randint(-9, 9)

    def to_json(self, a):
        return a

    def from_json(self, data):
        if not isinstance(data, int):
            raise ValueError(f"expected tropical integer, got {data!r}")
        return data


class TropicalRationals(TropicalIntegers):
    name = "tropical-rat"

    def contains(self, a):
        return isinstance(a, (int, Fraction)) and not isinstance(a, bool)

    def random_value(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def to_json(self, a):
        return _frac_to_json(Fraction(a))

    def from_json(self, data):
        return _frac_from_json(data)


class PolynomialRing(Semiring):
    """Polynomials over the integers in named variables, canonical form."""

    has_zero = True
    has_one = True
    has_additive_inverse = True

    def __init__(self, variables):
        self.variables = tuple(variables)
        self.name = "poly[" + ",".join(self.variables) + "]"

    def var(self, name_or_index, power=1):
        index = (
            name_or_index
            if isinstance(name_or_index, int)
            else self.variables.index(name_or_index)
        )
        return Polynomial.variable(len(self.variables), index, power)

    def const(self, c):
        return Polynomial.constant(len(self.variables), c)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def zero(self):
        return Polynomial(len(self.variables))

    def one(self):
        return self.const(1)

    def negate(self, a):
        return -a

    def contains(self, a):
        return isinstance(a, Polynomial) and a.nvars == len(self.variables)

    def from_int(self, k):
        return self.const(k)

    def random_value(self, rng):
        n = len(self.variables)
        poly = self.zero()
        for _ in range(rng.randint(1, 3)):
            exps = tuple(rng.randint(0, 2) for _ in range(n))
            poly = poly + Polynomial(n, {exps: rng.randint(-3, 3)})
        return poly

    def to_json(self, a):
        out = []
        for exps in sorted(a.terms):
            entry = {
                name: e for name, e in zip(self.variables, exps) if e
            }
            out.append({"exps": entry, "coeff": a.terms[exps]})
        return out

    def from_json(self, data):
        terms = {}
        for item in data:
            exps = [0] * len(self.variables)
            for name, e in item["exps"].items():
                exps[self.variables.index(name)] = e
            terms[tuple(exps)] = item["coeff"]
        return Polynomial(len(self.variables), terms)


class StarExtended(Semiring):
    """A semiring without zero, extended by the neutral/absorbing tag STAR."""

    def __init__(self, inner):
        if inner.has_zero:
            raise ValueError("star extension is only for semirings without zero")
        self.inner = inner
        self.name = f"star[{inner.name}]"
        self.has_one = inner.has_one
        self.has_division = inner.has_division

    has_zero = True

    def add(self, a, b):
        if a is STAR:
            return b
        if b is STAR:
            return a
        return self.inner.add(a, b)

    def mul(self, a, b):
        if a is STAR or b is STAR:
            return STAR
        return self.inner.mul(a, b)

    def zero(self):
        return STAR

    def one(self):
        return self.inner.one()

    def divide(self, a, b):
        if b is STAR:
            raise NotInvertible("cannot divide by the star element")
        if a is STAR:
            return STAR
        return self.inner.divide(a, b)

    def contains(self, a):
        return a is STAR or self.inner.contains(a)

    def from_int(self, k):
        if k == 0:
            return STAR
        return self.inner.from_int(k)

    def random_value(self, rng):
        if rng.random() < 0.2:
            return STAR
        return self.inner.random_value(rng)

    def to_json(self, a):
        if a is STAR:
            return "star"
        return self.inner.to_json(a)

    def from_json(self, data):
        if data == "star":
            return STAR
        return self.inner.from_json(data)


INTEGERS = IntegerRing()
RATIONALS = RationalField()
POSITIVE_RATIONALS = PositiveRationals()
TROPICAL_INT = TropicalIntegers()
TROPICAL_RAT = TropicalRationals()


def polynomial_ring(*variables):
    return PolynomialRing(variables)


def star_extend(inner):
    if isinstance(inner, StarExtended):
        return inner
    return StarExtended(inner)


def fold_sum(spec, values):
    """Left fold of the semiring addition; empty input needs a neutral."""
    values = list(values)
    if not values:
        if spec.has_zero:
            return spec.zero()
        raise EmptySumWithoutNeutral(
            f"empty sum in {spec.name}; wrap with star_extend for a neutral"
        )
    acc = values[0]
    for v in values[1:]:
        acc = spec.add(acc, v)
    return acc


def fold_product(spec, values):
    """Left fold of the semiring multiplication; empty input yields one."""
    values = list(values)
    if not values:
        if spec.has_one:
            return spec.one()
        raise EmptySumWithoutNeutral(f"empty product in {spec.name} without a one")
    acc = values[0]
    for v in values[1:]:
        acc = spec.mul(acc, v)
    return acc


def divide(spec, a, b):
    if not spec.has_division:
        raise DivisionUnsupported(f"{spec.name} has no division")
    return spec.divide(a, b)


def power(spec, a, k):
    """a to the k-th multiplicative power; negative k uses division by a."""
    if k == 0:
        return spec.one()
    if k < 0:
        return divide(spec, spec.one(), power(spec, a, -k))
    acc = a
    for _ in range(k - 1):
        acc = spec.mul(acc, a)
    return acc


def parse_semiring(text):
    """Parse a command-line semiring descriptor such as 'tropical-int'."""
    base = {
        "integers": INTEGERS,
        "rationals": RATIONALS,
        "positive-rationals": POSITIVE_RATIONALS,
        "tropical-int": TROPICAL_INT,
        "tropical-rat": TROPICAL_RAT,
    }
    if text in base:
        return base[text]
    if text.startswith("star:"):
        return star_extend(parse_semiring(text[len("star:") :]))
    if text.startswith("poly:"):
        names = [v for v in text[len("poly:") :].split(",") if v]
        return polynomial_ring(*names)
    raise ValueError(f"unknown semiring {text!r}")
