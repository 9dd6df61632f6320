"""Proper pairs, 1-/2-patterns, feasible matchings, and balancedness.

Elements of Y sit on the lower half of a circle (increasing left to right)
and elements of Y' on the upper half; a matching couple is a chord.  A
matching is feasible for the white/black coloring induced by (A, A') when
same-side couples are bichromatic, cross-side couples monochromatic, and no
two chords cross.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    BadParams,
    BadSizes,
    NotProper,
    SizeMismatch,
)

LOWER, UPPER = 0, 1


def is_proper(Y, Yp, A, Ap):
    """Parity condition |Y| - |Y'| = 2(|A| - |A'|)."""
    return len(Y) - len(Yp) == 2 * (len(A) - len(Ap))


class PlanarMatching:
    """A perfect matching on Y u Y' stored as typed endpoint couples.

    Endpoints are (0, y) for lower elements and (1, y') for upper ones;
    couples are sorted pairs, the whole matching a frozenset.
    """

    __slots__ = ("couples",)

    def __init__(self, couples):
        normalized = frozenset(tuple(sorted(c)) for c in couples)
        for c in normalized:
            if len(c) != 2:
                raise BadParams(f"couple {c} does not have two endpoints")
        self.couples = normalized

    def __eq__(self, other):
        return isinstance(other, PlanarMatching) and self.couples == other.couples

    def __hash__(self):
        return hash(self.couples)

    def __lt__(self, other):
        return self.canonical_key() < other.canonical_key()

    def canonical_key(self):
        return tuple(sorted(self.couples))

    def lower_couples(self):
        return sorted(
            (a[1], b[1])
            for a, b in self.couples
            if a[0] == LOWER and b[0] == LOWER
        )

    def upper_couples(self):
        return sorted(
            (a[1], b[1])
            for a, b in self.couples
            if a[0] == UPPER and b[0] == UPPER
        )

    def verticals(self):
        return sorted(
            (a[1], b[1])
            for a, b in self.couples
            if a[0] == LOWER and b[0] == UPPER
        )

    def elements(self):
        out = set()
        for a, b in self.couples:
            out.add(a)
            out.add(b)
        return out

    def to_json(self):
        return {
            "lower": [list(c) for c in self.lower_couples()],
            "upper": [list(c) for c in self.upper_couples()],
            "vertical": [list(c) for c in self.verticals()],
        }

    def __repr__(self):
        low = ",".join(f"{i}{j}" for i, j in self.lower_couples())
        up = ",".join(f"{i}'{j}'" for i, j in self.upper_couples())
        ver = ",".join(f"{i}{j}'" for i, j in self.verticals())
        return "M[" + ";".join(p for p in (low, up, ver) if p) + "]"


def matching_from_parts(lower=(), upper=(), vertical=()):
    couples = [((LOWER, i), (LOWER, j)) for i, j in lower]
    couples += [((UPPER, i), (UPPER, j)) for i, j in upper]
    couples += [((LOWER, i), (UPPER, j)) for i, j in vertical]
    return PlanarMatching(couples)


def circle_positions(Y, Yp):
    """Cyclic layout: lower elements ascending, then upper descending."""
    pts = [(LOWER, y) for y in sorted(Y)] + [(UPPER, y) for y in sorted(Yp, reverse=True)]
    return {p: k for k, p in enumerate(pts)}


def chords_cross(pos, c1, c2):
    a, b = sorted((pos[c1[0]], pos[c1[1]]))
    c, d = sorted((pos[c2[0]], pos[c2[1]]))
    return (a < c < b) != (a < d < b)


def is_noncrossing(Y, Yp, matching):
    pos = circle_positions(Y, Yp)
    couples = sorted(matching.couples)
    for c1, c2 in combinations(couples, 2):
        if chords_cross(pos, c1, c2):
            return False
    return True


def matching_is_feasible(matching, Y, Yp, A, Ap):
    """Color conditions only; planarity of the matching is assumed/checked."""
    white = {(LOWER, a) for a in A} | {(UPPER, a) for a in Ap}
    for p, q in matching.couples:
        same_side = p[0] == q[0]
        same_color = (p in white) == (q in white)
        if same_side and same_color:
            return False
        if not same_side and not same_color:
            return False
    return True


def feasible_matchings(Y, Yp, A, Ap):
    """All feasible non-crossing perfect matchings for (A, A') on (Y, Y')."""
    Y, Yp = frozenset(Y), frozenset(Yp)
    A, Ap = frozenset(A), frozenset(Ap)
    if not A <= Y or not Ap <= Yp:
        raise NotProper("A must sit inside Y and A' inside Y'")
    if not is_proper(Y, Yp, A, Ap):
        raise NotProper(
            f"|Y|-|Y'| = {len(Y) - len(Yp)} != 2(|A|-|A'|) = {2 * (len(A) - len(Ap))}"
        )
    points = [(LOWER, y) for y in sorted(Y)]
    points += [(UPPER, y) for y in sorted(Yp, reverse=True)]
    if len(points) % 2:
        return []
    white = {(LOWER, a) for a in A} | {(UPPER, a) for a in Ap}

    def couple_ok(p, q):
        same_side = p[0] == q[0]
        same_color = (p in white) == (q in white)
        return same_color != same_side

    def rec(segment):
        if not segment:
            return [[]]
        out = []
        first = segment[0]
        for k in range(1, len(segment), 2):
            partner = segment[k]
            if not couple_ok(first, partner):
                continue
            inside = segment[1:k]
            outside = segment[k + 1:]
            for m1 in rec(inside):
                for m2 in rec(outside):
                    out.append([(first, partner)] + m1 + m2)
        return out

    matchings = [PlanarMatching(cs) for cs in rec(points)]
    matchings.sort()
    return matchings


def all_feasible_matchings_bruteforce(Y, Yp, A, Ap):
    """Oracle: filter every perfect matching by the three conditions."""
    points = [(LOWER, y) for y in sorted(Y)] + [(UPPER, y) for y in sorted(Yp)]
    if len(points) % 2:
        return []

    def pairings(rest):
        if not rest:
            yield []
            return
        first = rest[0]
        for k in range(1, len(rest)):
            partner = rest[k]
            remainder = rest[1:k] + rest[k + 1:]
            for rem in pairings(remainder):
                yield [(first, partner)] + rem

    out = []
    for cs in pairings(points):
        m = PlanarMatching(cs)
        if matching_is_feasible(m, Y, Yp, A, Ap) and is_noncrossing(Y, Yp, m):
            out.append(m)
    out.sort()
    return out


def flag_feasible_matchings(Y, A, p, q):
    """Nested bichromatic couple systems for the flag case (p >= q).

    Returned as frozensets of (i, j) couples: exactly the lower-horizontal
    parts of the feasible matchings of the equivalent 2-pattern.
    """
    Y = frozenset(Y)
    A = frozenset(A)
    if p < q:
        raise BadSizes(f"flag matchings need p >= q, got p={p}, q={q}")
    if len(A) != p or len(Y) != p + q:
        raise BadSizes("sizes do not match |A| = p and |Y| = p + q")
    synthetic_upper = frozenset(range(1, p - q + 1))
    full = feasible_matchings(Y, synthetic_upper, A, synthetic_upper)
    out = sorted({frozenset(m.lower_couples()) for m in full})
    if len(out) != len(full):
        raise BadSizes("flag reduction lost matchings; this cannot happen")
    return out


def apply_exchange(A, Ap, couples):
    """Flip the colors of both elements of each chosen couple."""
    A, Ap = set(A), set(Ap)
    for p, q in couples:
        for side, e in (p, q):
            target = A if side == LOWER else Ap
            if e in target:
                target.remove(e)
            else:
                target.add(e)
    return frozenset(A), frozenset(Ap)


# ---------------------------------------------------------------------------
# patterns

@dataclass(frozen=True)
class TwoPattern:
    m: int
    m_prime: int
    members: tuple  # ((A frozenset, A' frozenset, multiplicity), ...) sorted

    def counter(self):
        c = Counter()
        for A, Ap, mult in self.members:
            c[(A, Ap)] += mult
        return c

    def size(self):
        return sum(mult for _, _, mult in self.members)


@dataclass(frozen=True)
class OnePattern:
    m: int
    p: int
    members: tuple  # ((A frozenset, multiplicity), ...) sorted

    def counter(self):
        c = Counter()
        for A, mult in self.members:
            c[A] += mult
        return c

    def to_two_pattern(self):
        """Flag patterns as 2-patterns: Y' of size |p - (m-p)|, A' forced."""
        q = self.m - self.p
        mp = abs(self.p - q)
        if self.p >= q:
            ap = frozenset(range(1, mp + 1))
        else:
            ap = frozenset()
        members = [(A, ap, mult) for A, mult in self.members]
        return two_pattern(self.m, mp, members)


def _norm_sets(members):
    counter = Counter()
    for item in members:
        if len(item) == 3:
            A, Ap, mult = item
        else:
            (A, Ap), mult = item, 1
        counter[(frozenset(A), frozenset(Ap))] += mult
    return tuple(
        sorted(
            ((A, Ap, mult) for (A, Ap), mult in counter.items()),
            key=lambda t: (sorted(t[0]), sorted(t[1])),
        )
    )


def two_pattern(m, m_prime, members):
    normalized = _norm_sets(members)
    ground, ground_p = frozenset(range(1, m + 1)), frozenset(range(1, m_prime + 1))
    for A, Ap, _ in normalized:
        if not A <= ground or not Ap <= ground_p:
            raise NotProper(f"member ({sorted(A)},{sorted(Ap)}) escapes ([{m}],[{m_prime}])")
        if not is_proper(ground, ground_p, A, Ap):
            raise NotProper(
                f"member ({sorted(A)},{sorted(Ap)}) violates the parity condition"
            )
    return TwoPattern(m, m_prime, normalized)


def one_pattern(m, p, members):
    counter = Counter()
    for item in members:
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[1], int) and not isinstance(item[0], int):
            A, mult = item
        else:
            A, mult = item, 1
        counter[frozenset(A)] += mult
    ground = frozenset(range(1, m + 1))
    for A in counter:
        if not A <= ground or len(A) != p:
            raise NotProper(f"member {sorted(A)} is not a {p}-subset of [{m}]")
    members = tuple(sorted(counter.items(), key=lambda t: sorted(t[0])))
    return OnePattern(m, p, members)


def embed_two(pattern, Y, Yp):
    """Apply the order-preserving bijections [m] -> Y and [m'] -> Y'."""
    Y, Yp = sorted(Y), sorted(Yp)
    if len(Y) != pattern.m or len(Yp) != pattern.m_prime:
        raise SizeMismatch(
            f"|Y|={len(Y)} |Y'|={len(Yp)} but pattern is on ([{pattern.m}],[{pattern.m_prime}])"
        )
    gamma = {i + 1: y for i, y in enumerate(Y)}
    gamma_p = {i + 1: y for i, y in enumerate(Yp)}
    out = Counter()
    for A, Ap, mult in pattern.members:
        out[
            (frozenset(gamma[a] for a in A), frozenset(gamma_p[a] for a in Ap))
        ] += mult
    return out


def embed_one(pattern, Y):
    Y = sorted(Y)
    if len(Y) != pattern.m:
        raise SizeMismatch(f"|Y|={len(Y)} but pattern is on [{pattern.m}]")
    gamma = {i + 1: y for i, y in enumerate(Y)}
    out = Counter()
    for A, mult in pattern.members:
        out[frozenset(gamma[a] for a in A)] += mult
    return out


def embed_matching(matching, Y, Yp):
    Y, Yp = sorted(Y), sorted(Yp)
    gamma = {(LOWER, i + 1): (LOWER, y) for i, y in enumerate(Y)}
    gamma.update({(UPPER, i + 1): (UPPER, y) for i, y in enumerate(Yp)})
    return PlanarMatching(
        tuple((gamma[p], gamma[q]) for p, q in matching.couples)
    )


def matching_multiset(Y, Yp, pattern_or_members):
    """Union with multiplicity of the feasible-matching sets of all members."""
    if isinstance(pattern_or_members, TwoPattern):
        members = pattern_or_members.counter()
        Y = frozenset(range(1, pattern_or_members.m + 1))
        Yp = frozenset(range(1, pattern_or_members.m_prime + 1))
    else:
        members = Counter(dict(pattern_or_members)) if not isinstance(
            pattern_or_members, Counter
        ) else pattern_or_members
    out = Counter()
    for (A, Ap), mult in members.items():
        for m in feasible_matchings(Y, Yp, A, Ap):
            out[m] += mult
    return out


def _normalize_pattern(pattern):
    if isinstance(pattern, OnePattern):
        return pattern.to_two_pattern()
    return pattern


@dataclass(frozen=True)
class BalanceResult:
    balanced: bool
    witness: object      # PlanarMatching or None
    count_a: int
    count_b: int

    def __bool__(self):
        return self.balanced


def is_balanced(pattern_a, pattern_b):
    """Decide balancedness; when unbalanced, report the first differing matching."""
    a = _normalize_pattern(pattern_a)
    b = _normalize_pattern(pattern_b)
    if (a.m, a.m_prime) != (b.m, b.m_prime):
        raise SizeMismatch(
            f"patterns live on different shapes ({a.m},{a.m_prime}) vs ({b.m},{b.m_prime})"
        )
    ma = matching_multiset(None, None, a)
    mb = matching_multiset(None, None, b)
    if ma == mb:
        return BalanceResult(True, None, 0, 0)
    differing = sorted(m for m in set(ma) | set(mb) if ma[m] != mb[m])
    witness = differing[0]
    return BalanceResult(False, witness, ma[witness], mb[witness])


# ---------------------------------------------------------------------------
# stock patterns

def _sigma(S):
    return sum(S)


def stock_pattern(kind, **params):
    """Named balanced pattern pairs; flag kinds return 1-patterns."""
    kind = kind.lower()
    if kind == "p3":
        return (
            one_pattern(3, 2, [{1, 3}]),
            one_pattern(3, 2, [{1, 2}, {2, 3}]),
        )
    if kind == "p4":
        return (
            one_pattern(4, 2, [{1, 3}]),
            one_pattern(4, 2, [{1, 2}, {1, 4}]),
        )
    if kind == "quintuple":
        return (
            one_pattern(5, 3, [{1, 3, 5}]),
            one_pattern(5, 3, [{2, 3, 4}, {1, 2, 5}, {1, 4, 5}]),
        )
    if kind == "aa4":
        m, p = params["m"], params["p"]
        A0 = frozenset(params["A0"])
        Z = frozenset(params["Z"])
        q = m - p
        comp = frozenset(range(1, m + 1)) - A0
        if len(A0) != p or p < q:
            raise BadParams("need |A0| = p >= m - p")
        if not Z or not Z <= comp:
            raise BadParams("Z must be a nonempty subset of the complement of A0")
        family = [
            frozenset(C)
            for C in combinations(range(1, m + 1), p)
            if frozenset(C) & comp == Z
        ]
        a_members = [A0] + [
            C for C in family if (_sigma(C) - _sigma(A0) + len(Z)) % 2 == 1
        ]
        b_members = [
            C for C in family if (_sigma(C) - _sigma(A0) + len(Z)) % 2 == 0
        ]
        return one_pattern(m, p, a_members), one_pattern(m, p, b_members)
    if kind == "aa5":
        m, p = params["m"], params["p"]
        Z = frozenset(params["Z"])
        Zp = frozenset(params["Zprime"])
        q = m - p
        if p < q:
            raise BadParams("need p >= m - p")
        if not 0 < len(Z) <= q - 1 or not Z <= frozenset(range(1, m + 1)):
            raise BadParams("need 0 < |Z| <= q - 1 inside [m]")
        if not Zp <= Z:
            raise BadParams("Z' must sit inside Z")
        family = [
            frozenset(C)
            for C in combinations(range(1, m + 1), p)
            if frozenset(C) & Z == Zp
        ]
        a_members = [C for C in family if _sigma(C) % 2 == 1]
        b_members = [C for C in family if _sigma(C) % 2 == 0]
        return one_pattern(m, p, a_members), one_pattern(m, p, b_members)
    if kind == "dodgson":
        return (
            two_pattern(2, 2, [({1}, {1})]),
            two_pattern(2, 2, [({2}, {1}), ({1, 2}, {1, 2})]),
        )
    if kind == "homogeneous3":
        return (
            two_pattern(3, 3, [({1, 2}, {1, 3}), ({2, 3}, {1, 3})]),
            two_pattern(3, 3, [({1, 3}, {1, 2}), ({1, 3}, {2, 3})]),
        )
    if kind == "rowdecomposition3":
        return (
            two_pattern(3, 3, [({1, 3}, {1, 3})]),
            two_pattern(
                3, 3,
                [({1, 2}, {1, 3}), ({2, 3}, {1, 3}), ({1, 2, 3}, {1, 2, 3})],
            ),
        )
    raise BadParams(f"unknown stock pattern kind {kind!r}")


def stock_pattern_kinds():
    return ["p3", "p4", "quintuple", "aa4", "aa5", "dodgson", "homogeneous3", "rowdecomposition3"]


# ---------------------------------------------------------------------------
# JSON

def pattern_to_json(pattern):
    if isinstance(pattern, OnePattern):
        return {
            "m": pattern.m,
            "p": pattern.p,
            "flag": True,
            "members": [
                {"A": sorted(A), "mult": mult} for A, mult in pattern.members
            ],
        }
    return {
        "m": pattern.m,
        "m_prime": pattern.m_prime,
        "members": [
            {"A": sorted(A), "Aprime": sorted(Ap), "mult": mult}
            for A, Ap, mult in pattern.members
        ],
    }


def pattern_from_json(data):
    if data.get("flag"):
        members = [
            (frozenset(item["A"]), item.get("mult", 1)) for item in data["members"]
        ]
        return one_pattern(data["m"], data["p"], members)
    members = [
        (frozenset(item["A"]), frozenset(item.get("Aprime", [])), item.get("mult", 1))
        for item in data["members"]
    ]
    return two_pattern(data["m"], data["m_prime"], members)
