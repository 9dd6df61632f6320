"""Evaluate quadratic flow identities concretely and symbolically."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from . import semiring as sr
from .errors import InconsistentSets, RingRequired
from .flows import fg_value
from .network import build_half_grid, truncated_grid
from .patterns import _normalize_pattern, embed_two

DEFAULT_VERTEX_BUDGET = 25


def consistent(X, Y, Xp, Yp):
    return 2 * len(X) + len(Y) == 2 * len(Xp) + len(Yp)


@dataclass
class RelationInstance:
    spec: object
    network: object
    X: frozenset
    Y: frozenset
    Xp: frozenset
    Yp: frozenset
    family_a: dict   # (A, A') -> multiplicity, subsets of (Y, Y')
    family_b: dict
    size_cap: int = 60

    def __post_init__(self):
        self.X, self.Y = frozenset(self.X), frozenset(self.Y)
        self.Xp, self.Yp = frozenset(self.Xp), frozenset(self.Yp)
        if self.X & self.Y or self.Xp & self.Yp:
            raise InconsistentSets("X,Y (and X',Y') must be disjoint")
        if not consistent(self.X, self.Y, self.Xp, self.Yp):
            raise InconsistentSets("2|X| + |Y| must equal 2|X'| + |Y'|")


def _effective_spec(spec):
    return spec if spec.has_zero else sr.star_extend(spec)


def evaluate_sq(ri):
    """Both sides of the quadratic identity for one concrete instance.

    When the base semiring lacks a zero, empty flow sets are absorbed by
    moving to its star extension.
    """
    spec = _effective_spec(ri.spec)
    net = ri.network

    def f(I, Iprime):
        return fg_value(spec, net, sorted(I), sorted(Iprime), size_cap=ri.size_cap)

    def side(family):
        terms = []
        for (A, Ap), mult in sorted(
            family.items(), key=lambda kv: (sorted(kv[0][0]), sorted(kv[0][1]))
        ):
            first = f(ri.X | A, ri.Xp | Ap)
            second = f(ri.X | (ri.Y - A), ri.Xp | (ri.Yp - Ap))
            terms.extend([spec.mul(first, second)] * mult)
        if not terms:
            return spec.zero()
        return sr.fold_sum(spec, terms)

    lhs = side(ri.family_a)
    rhs = side(ri.family_b)
    return {"lhs": lhs, "rhs": rhs, "equal": spec.equal(lhs, rhs), "spec": spec}


@dataclass
class InstanceConfig:
    """Sampling knobs for symbolic verification."""

    max_cases: int = 4
    vertex_budget: int = DEFAULT_VERTEX_BUDGET
    seed: int = 0
    extra_shift: bool = True


def default_instances(m, m_prime, config=None):
    """Concrete (network, X, Y, X', Y') choices for a pattern shape.

    Grids (truncated to the vertex budget) cover every shape; half-grids are
    added when n = n' fits the budget.  Sets are order-preserving samples.
    """
    config = config or InstanceConfig()
    rng = random.Random(config.seed)
    cases = []

    def grid_case(X, Y, Xp, Yp):
        n = max(Y | X) if Y | X else 1
        np_ = max(Yp | Xp) if Yp | Xp else 1
        net = truncated_grid(n, np_, config.vertex_budget)
        cases.append((net, X, Y, Xp, Yp))

    if m >= m_prime:
        d = (m - m_prime) // 2
        X = frozenset()
        Y = frozenset(range(1, m + 1))
        Xp = frozenset(range(1, d + 1))
        Yp = frozenset(range(d + 1, d + m_prime + 1))
    else:
        d = (m_prime - m) // 2
        X = frozenset(range(1, d + 1))
        Y = frozenset(range(d + 1, d + m + 1))
        Xp = frozenset()
        Yp = frozenset(range(1, m_prime + 1))
    grid_case(X, Y, Xp, Yp)

    if config.extra_shift and len(cases) < config.max_cases:
        # Shift everything one slot to the right and add a spectator column.
        X2 = frozenset(x + 1 for x in X)
        Y2 = frozenset(y + 1 for y in Y)
        Xp2 = frozenset(x + 1 for x in Xp)
        Yp2 = frozenset(y + 1 for y in Yp)
        grid_case(X2, Y2, Xp2, Yp2)

    if len(cases) < config.max_cases:
        # A sparser random placement with one extra X/X' element when it fits.
        n = m + 2
        y_vals = sorted(rng.sample(range(1, n + 1), m)) if m else []
        Y3 = frozenset(y_vals)
        rest = sorted(set(range(1, n + 1)) - Y3)
        X3 = frozenset(rest[:1])
        k = 2 * len(X3) + m
        mp_needed = m_prime
        dp = (k - mp_needed) // 2
        if dp >= 0:
            np_ = dp + mp_needed + 1
            pool = list(range(1, np_ + 1))
            yp_vals = sorted(rng.sample(pool, mp_needed)) if mp_needed else []
            Yp3 = frozenset(yp_vals)
            restp = sorted(set(pool) - Yp3)
            if len(restp) >= dp:
                Xp3 = frozenset(restp[:dp])
                grid_case(X3, Y3, Xp3, Yp3)

    if m == m_prime or m_prime == 0:
        k = max(m, 1)
        if k * (k + 1) // 2 <= config.vertex_budget and len(cases) < config.max_cases:
            net = build_half_grid(k)
            if m == m_prime:
                cases.append(
                    (
                        net,
                        frozenset(),
                        frozenset(range(1, m + 1)),
                        frozenset(),
                        frozenset(range(1, m + 1)),
                    )
                )
            else:
                d = m // 2
                if d <= k:
                    cases.append(
                        (
                            net,
                            frozenset(),
                            frozenset(range(1, m + 1)),
                            frozenset(range(1, d + 1)),
                            frozenset(),
                        )
                    )
    return cases[: config.max_cases]


def verify_symbolic(pattern_a, pattern_b, config=None, instances=None):
    """Check the identity with one polynomial variable per weighted vertex.

    Exact polynomial equality on every sampled instance is strong evidence of
    stability; the decision procedure proper is ``patterns.is_balanced``.
    """
    a = _normalize_pattern(pattern_a)
    b = _normalize_pattern(pattern_b)
    if (a.m, a.m_prime) != (b.m, b.m_prime):
        raise InconsistentSets("patterns live on different shapes")
    if instances is None:
        instances = default_instances(a.m, a.m_prime, config)
    cases = []
    for net, X, Y, Xp, Yp in instances:
        ring = sr.polynomial_ring(*[f"w_{v}" for v in net.vertices])
        weights = {v: ring.var(k) for k, v in enumerate(net.vertices)}
        weighted = net.with_vertex_weights(weights)
        ri = RelationInstance(
            ring,
            weighted,
            X,
            Y,
            Xp,
            Yp,
            embed_two(a, sorted(Y), sorted(Yp)),
            embed_two(b, sorted(Y), sorted(Yp)),
        )
        result = evaluate_sq(ri)
        cases.append(
            {
                "network_vertices": len(net.vertices),
                "X": sorted(X),
                "Y": sorted(Y),
                "Xprime": sorted(Xp),
                "Yprime": sorted(Yp),
                "equal": result["equal"],
            }
        )
    return {"cases": cases, "all_equal": all(c["equal"] for c in cases)}


# ---------------------------------------------------------------------------
# the signed flag-manifold identity

def inversions(I, J):
    return sum(1 for i in I for j in J if i > j)


def flag_manifold_relation(f, I, J, Z, spec):
    """Signed quadratic identity on flag values over a ring.

    ``f`` maps a set of column indices to a ring value (e.g. a flag minor).
    """
    if not spec.has_additive_inverse:
        raise RingRequired("the signed identity needs additive inverses")
    I, J, Z = frozenset(I), frozenset(J), frozenset(Z)
    if len(I) < len(J):
        raise InconsistentSets("need |I| >= |J|")
    if not Z <= J - I:
        raise InconsistentSets("Z must sit inside J - I")
    lhs = spec.mul(f(I), f(J))
    a = len(Z) + inversions(I - J, J - I)
    rhs = spec.zero()
    for K in combinations(sorted(I - J), len(Z)):
        K = frozenset(K)
        left = (I - K) | Z
        right = (J - Z) | K
        sign = (-1) ** ((a + inversions(left, right)) % 2)
        term = spec.mul(f(left), f(right))
        if sign < 0:
            term = spec.negate(term)
        rhs = spec.add(rhs, term)
    return {"lhs": lhs, "rhs": rhs, "equal": spec.equal(lhs, rhs)}
