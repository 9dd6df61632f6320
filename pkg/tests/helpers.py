"""Shared test utilities: independent oracles and pattern generators."""

import random
from itertools import combinations

from planarflows.patterns import (
    _normalize_pattern,
    is_balanced,
    is_proper,
    stock_pattern,
    two_pattern,
)


def brute_force_flows(network, I, Iprime):
    """Independent path-system enumerator: all simple directed paths per
    terminal pair, then a product filter for vertex-disjointness."""
    adj = {}
    for tail, head in network.edges:
        adj.setdefault(tail, []).append(head)

    def all_paths(s, t):
        out = []

        def walk(v, seen, acc):
            if v == t:
                out.append(tuple(acc))
                return
            for u in sorted(adj.get(v, [])):
                if u not in seen:
                    walk(u, seen | {u}, acc + [u])

        walk(s, {s}, [s])
        return out

    I, Iprime = sorted(I), sorted(Iprime)
    per_pair = [
        all_paths(network.sources[i - 1], network.sinks[j - 1])
        for i, j in zip(I, Iprime)
    ]
    systems = [[]]
    for options in per_pair:
        systems = [
            sys + [p]
            for sys in systems
            for p in options
            if not (set(p) & {v for q in sys for v in q})
        ]
    return sorted(tuple(sys) for sys in systems)


def proper_pairs(Y, Yp):
    Y, Yp = sorted(Y), sorted(Yp)
    out = []
    for ka in range(len(Y) + 1):
        for A in combinations(Y, ka):
            for kb in range(len(Yp) + 1):
                for Ap in combinations(Yp, kb):
                    if is_proper(frozenset(Y), frozenset(Yp), frozenset(A), frozenset(Ap)):
                        out.append((frozenset(A), frozenset(Ap)))
    return out


def random_proper_pair(rng, m, mp):
    ground, ground_p = list(range(1, m + 1)), list(range(1, mp + 1))
    while True:
        A = frozenset(v for v in ground if rng.random() < 0.5)
        want = len(A) - (m - mp) // 2
        if 0 <= want <= mp:
            Ap = frozenset(rng.sample(ground_p, want))
            return A, Ap


def _pattern_key(pair):
    a, b = (_normalize_pattern(p) for p in pair)
    return (a.m, a.m_prime, a.members, b.members)


def random_balanced_patterns(seed, count, max_total=8):
    """Seeded balanced pairs built from constructions that guarantee balance:
    stock pairs, parity families, sums, side swaps, and common members."""
    rng = random.Random(seed)
    pool = []

    def push(a, b):
        pool.append((a, b))

    for kind in ("p3", "p4", "quintuple", "dodgson", "homogeneous3", "rowdecomposition3"):
        push(*stock_pattern(kind))

    attempts = 0
    out = []
    seen = set()
    while len(out) < count and attempts < count * 60:
        attempts += 1
        roll = rng.random()
        if roll < 0.35 or not pool:
            p = rng.choice([2, 3, 4])
            m = rng.choice([x for x in range(p + 1, 2 * p + 1) if 2 * p <= max_total])
            q = m - p
            if p < q:
                continue
            A0 = frozenset(rng.sample(range(1, m + 1), p))
            comp = sorted(set(range(1, m + 1)) - A0)
            if not comp:
                continue
            Z = frozenset(rng.sample(comp, rng.randint(1, len(comp))))
            pair = stock_pattern("aa4", m=m, p=p, A0=A0, Z=Z)
        elif roll < 0.55:
            p = rng.choice([2, 3, 4])
            m = rng.choice([x for x in range(p + 2, 2 * p + 1) if 2 * p <= max_total])
            q = m - p
            if q < 2 or p < q:
                continue
            zsize = rng.randint(1, q - 1)
            Z = frozenset(rng.sample(range(1, m + 1), zsize))
            Zp = frozenset(v for v in Z if rng.random() < 0.5)
            pair = stock_pattern("aa5", m=m, p=p, Z=Z, Zprime=Zp)
        elif roll < 0.7:
            a, b = rng.choice(pool)
            pair = (b, a)
        elif roll < 0.85:
            a, b = rng.choice(pool)
            a, b = _normalize_pattern(a), _normalize_pattern(b)
            extra = random_proper_pair(rng, a.m, a.m_prime)
            pair = (
                two_pattern(a.m, a.m_prime, list(a.members) + [extra + (1,)]),
                two_pattern(b.m, b.m_prime, list(b.members) + [extra + (1,)]),
            )
        else:
            a, b = (_normalize_pattern(p) for p in rng.choice(pool))
            candidates = [
                (_normalize_pattern(c), _normalize_pattern(d))
                for c, d in pool
            ]
            same = [
                (c, d)
                for c, d in candidates
                if (c.m, c.m_prime) == (a.m, a.m_prime)
            ]
            if not same:
                continue
            c, d = rng.choice(same)
            pair = (
                two_pattern(a.m, a.m_prime, list(a.members) + list(c.members)),
                two_pattern(b.m, b.m_prime, list(b.members) + list(d.members)),
            )
        norm = _normalize_pattern(pair[0])
        if norm.m + norm.m_prime > max_total:
            continue
        key = _pattern_key(pair)
        if key in seen:
            continue
        seen.add(key)
        pool.append(pair)
        out.append(pair)
    if len(out) < count:
        raise RuntimeError("balanced generator exhausted")
    return out


def random_unbalanced_patterns(seed, count, max_total=8):
    rng = random.Random(seed)
    out = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < count * 200:
        attempts += 1
        m = rng.randint(2, max_total - 1)
        mp_choices = [
            mp for mp in range(0 if m % 2 == 0 else 1, max_total - m + 1, 2)
        ]
        mp_choices = [mp for mp in mp_choices if mp <= m]
        if not mp_choices:
            continue
        mp = rng.choice(mp_choices)
        a_members = [random_proper_pair(rng, m, mp) for _ in range(rng.randint(1, 2))]
        b_members = [random_proper_pair(rng, m, mp) for _ in range(rng.randint(1, 2))]
        try:
            a = two_pattern(m, mp, a_members)
            b = two_pattern(m, mp, b_members)
        except Exception:
            continue
        result = is_balanced(a, b)
        if result.balanced:
            continue
        key = _pattern_key((a, b))
        if key in seen:
            continue
        seen.add(key)
        out.append((a, b))
    if len(out) < count:
        raise RuntimeError("unbalanced generator exhausted")
    return out


def contexts_for(m, mp, with_padding=True):
    """Consistent (X, Y, X', Y') samples for a pattern shape, minimal first."""
    contexts = []
    if m >= mp:
        d = (m - mp) // 2
        contexts.append(
            (
                frozenset(),
                frozenset(range(1, m + 1)),
                frozenset(range(1, d + 1)),
                frozenset(range(d + 1, d + mp + 1)),
            )
        )
        if with_padding:
            contexts.append(
                (
                    frozenset({m + 1}),
                    frozenset(range(1, m + 1)),
                    frozenset(range(1, d + 2)),
                    frozenset(range(d + 2, d + mp + 2)),
                )
            )
    else:
        d = (mp - m) // 2
        contexts.append(
            (
                frozenset(range(1, d + 1)),
                frozenset(range(d + 1, d + m + 1)),
                frozenset(),
                frozenset(range(1, mp + 1)),
            )
        )
        if with_padding:
            contexts.append(
                (
                    frozenset(range(1, d + 2)),
                    frozenset(range(d + 2, d + m + 2)),
                    frozenset({mp + 1}),
                    frozenset(range(1, mp + 1)),
                )
            )
    return contexts
