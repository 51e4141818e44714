# crossfam/generators.py
"""
Family constructions. Labelled universes (pairs (x, y)) are flattened to 0-based integers
by fixed formulas; the 1-based pair of every element is kept in ``metadata["labels"]``.
"""

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .config import Guards, MAX_GROUND_SIZE, current_guards, get_logger
from .errors import GroundSetTooLargeError, GuardExceededError, NotASubfamilyError, ParameterError
from .family_core import SetFamily, conflict_graph, meets
from .reports import VerificationReport, make_report, timed

logger = get_logger(__name__)


def _meta(name: str, **params) -> Dict:
    return {"generator": name, "params": dict(params)}


def _check_ground(n: int) -> None:
    if n > MAX_GROUND_SIZE:
        raise GroundSetTooLargeError(f"ground size {n} exceeds the supported width {MAX_GROUND_SIZE}")


def _check_count(count: int, guards: Guards) -> None:
    if count > guards.family_size:
        raise GuardExceededError("family-size", guards.family_size, count)


def _pair_labels(rows: int, cols: int) -> List[str]:
    return [f"({x + 1},{y + 1})" for x in range(rows) for y in range(cols)]


def gen_powerset(n: int, guards: Optional[Guards] = None) -> SetFamily:
    g = current_guards(guards)
    if n < 0:
        raise ParameterError("n must be non-negative")
    if n > g.powerset:
        raise GuardExceededError("powerset", g.powerset, n)
    return SetFamily.from_bits(n, range(1 << n), _meta("powerset", n=n))


def gen_uniform(n: int, r: int, guards: Optional[Guards] = None) -> SetFamily:
    if not 0 <= r <= n:
        raise ParameterError(f"need 0 <= r <= n, got n={n}, r={r}")
    _check_ground(n)
    _check_count(math.comb(n, r), current_guards(guards))
    bits = [sum(1 << x for x in combo) for combo in itertools.combinations(range(n), r)]
    return SetFamily.from_bits(n, bits, _meta("uniform", n=n, r=r))


def gen_katona(n: int, t: int, guards: Optional[Guards] = None) -> SetFamily:
    """The extremal t-intersecting subfamily of 2^[n]."""
    if not 1 <= t <= n:
        raise ParameterError(f"need 1 <= t <= n, got n={n}, t={t}")
    g = current_guards(guards)
    if n > g.powerset:
        raise GuardExceededError("powerset", g.powerset, n)
    if (n + t) % 2 == 0:
        threshold = (n + t) // 2
        bits = [b for b in range(1 << n) if b.bit_count() >= threshold]
    else:
        # |A ∩ [n-1]| >= (n+t-1)/2, the last element is free
        threshold = (n + t - 1) // 2
        head = (1 << (n - 1)) - 1
        bits = [b for b in range(1 << n) if (b & head).bit_count() >= threshold]
    return SetFamily.from_bits(n, bits, _meta("katona", n=n, t=t))


def gen_signed(n: int, r: int, m: int, guards: Optional[Guards] = None) -> SetFamily:
    """m-signed r-subsets of [n]; (x, y) -> x*m + (y-1)."""
    if not 1 <= r <= n or m < 2:
        raise ParameterError(f"need 1 <= r <= n and m >= 2, got n={n}, r={r}, m={m}")
    _check_ground(n * m)
    _check_count(math.comb(n, r) * m**r, current_guards(guards))
    bits = []
    for xs in itertools.combinations(range(n), r):
        for ys in itertools.product(range(m), repeat=r):
            bits.append(sum(1 << (x * m + y) for x, y in zip(xs, ys)))
    meta = _meta("signed", n=n, r=r, m=m)
    meta["labels"] = _pair_labels(n, m)
    return SetFamily.from_bits(n * m, bits, meta)


def gen_permutations(r: int, n: int, guards: Optional[Guards] = None) -> SetFamily:
    """{(1,y_1),...,(r,y_r)} with distinct y_i in [n]; (i, y) -> i*n + y."""
    if not 1 <= r <= n:
        raise ParameterError(f"need 1 <= r <= n, got r={r}, n={n}")
    _check_ground(r * n)
    _check_count(math.perm(n, r), current_guards(guards))
    bits = [sum(1 << (i * n + y) for i, y in enumerate(ys)) for ys in itertools.permutations(range(n), r)]
    meta = _meta("permutations", r=r, n=n)
    meta["labels"] = _pair_labels(r, n)
    return SetFamily.from_bits(r * n, bits, meta)


def gen_partial_permutations(n: int, r: int, guards: Optional[Guards] = None) -> SetFamily:
    """{(x_1,y_1),...,(x_r,y_r)}: x_i distinct, y_i distinct in [n]; (x, y) -> x*n + y."""
    if not 1 <= r <= n:
        raise ParameterError(f"need 1 <= r <= n, got n={n}, r={r}")
    _check_ground(n * n)
    _check_count(math.comb(n, r) * math.perm(n, r), current_guards(guards))
    bits = []
    for xs in itertools.combinations(range(n), r):
        for ys in itertools.permutations(range(n), r):
            bits.append(sum(1 << (x * n + y) for x, y in zip(xs, ys)))
    meta = _meta("partial_permutations", n=n, r=r)
    meta["labels"] = _pair_labels(n, n)
    return SetFamily.from_bits(n * n, bits, meta)


def _block(index: int, t: int) -> int:
    return ((1 << t) - 1) << (index * t)


def gen_example1(n: int, t: int) -> SetFamily:
    """n disjoint t-sets and their union."""
    if n < 2 or t < 1:
        raise ParameterError(f"need n >= 2 and t >= 1, got n={n}, t={t}")
    _check_ground(n * t)
    parts = [_block(i, t) for i in range(n)]
    return SetFamily.from_bits(n * t, parts + [sum(parts)], _meta("example1", n=n, t=t))


def gen_example2(n: int, m: int, t: int) -> SetFamily:
    """The first example plus m-1 further t-sets disjoint from everything: n+m sets."""
    if not 2 <= m < n or t < 1:
        raise ParameterError(f"need 2 <= m < n and t >= 1, got n={n}, m={m}, t={t}")
    ground = (n + m - 1) * t
    _check_ground(ground)
    parts = [_block(i, t) for i in range(n)]
    extra = [_block(n + j, t) for j in range(m - 1)]
    return SetFamily.from_bits(ground, parts + [sum(parts)] + extra, _meta("example2", n=n, m=m, t=t))


# --- line construction ---

@dataclass(frozen=True)
class LineSpec:
    slope: Fraction
    intercept: Fraction

    def at(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept


class PointRegistry:
    """Intersection points in exact coordinates, each owning a block of t ground elements."""

    def __init__(self, t: int):
        self.t = t
        self._lines: Dict[Tuple[Fraction, Fraction], set] = {}

    def add(self, point: Tuple[Fraction, Fraction], *line_keys) -> None:
        self._lines.setdefault(point, set()).update(line_keys)

    @property
    def points(self) -> List[Tuple[Fraction, Fraction]]:
        return sorted(self._lines)

    def blocks(self) -> Dict[Tuple[Fraction, Fraction], int]:
        return {p: _block(s, self.t) for s, p in enumerate(self.points)}

    def lines_through(self, point) -> set:
        return set(self._lines[point])

    def __len__(self) -> int:
        return len(self._lines)


def _distinct(values: Sequence[Fraction], what: str) -> None:
    if len(set(values)) != len(values):
        raise ParameterError(f"{what} must be pairwise distinct")


def gen_lines(
    p: int,
    t: int,
    slopes: Optional[Sequence[Fraction]] = None,
    intercepts: Optional[Sequence[Fraction]] = None,
) -> SetFamily:
    """
    Lines y = m_i x + c_j for i, j in [p]; every line becomes the union of the t-blocks
    of the intersection points lying on it. Metadata keeps the (i, j) of each member
    and the parallel classes as lists of member indices.
    """
    if p < 3 or t < 1:
        raise ParameterError(f"need p >= 3 and t >= 1, got p={p}, t={t}")
    slopes = [Fraction(s) for s in slopes] if slopes is not None else [Fraction(i) for i in range(1, p + 1)]
    intercepts = (
        [Fraction(c) for c in intercepts] if intercepts is not None else [Fraction(j) for j in range(1, p + 1)]
    )
    if len(slopes) != p or len(intercepts) != p:
        raise ParameterError(f"need exactly {p} slopes and {p} intercepts")
    _distinct(slopes, "slopes")
    _distinct(intercepts, "intercepts")

    lines = {(i, j): LineSpec(slopes[i], intercepts[j]) for i in range(p) for j in range(p)}
    registry = PointRegistry(t)
    for (a, la), (b, lb) in itertools.combinations(lines.items(), 2):
        if la.slope == lb.slope:
            continue
        x = (lb.intercept - la.intercept) / (la.slope - lb.slope)
        registry.add((x, la.at(x)), a, b)

    ground = len(registry) * t
    _check_ground(ground)
    blocks = registry.blocks()
    member_bits = {}
    for key in lines:
        member_bits[key] = sum(block for point, block in blocks.items() if key in registry.lines_through(point))

    family = SetFamily.from_bits(ground, member_bits.values())
    keys = [None] * len(family)
    for key, bits in member_bits.items():
        keys[family.index_of(bits)] = key
    groups = [[idx for idx, key in enumerate(keys) if key[0] == i] for i in range(p)]
    meta = _meta("lines", p=p, t=t)
    meta["lines"] = [f"({i + 1},{j + 1})" for i, j in keys]
    meta["groups"] = groups
    meta["points"] = [f"({a},{b})" for a, b in registry.points]
    logger.debug(f"lines p={p} t={t}: {len(registry)} points, ground {ground}")
    return SetFamily(family.ground_size, family.members, meta)


def line_groups(f: SetFamily) -> List[List[int]]:
    groups = f.metadata.get("groups")
    if groups is None:
        raise ParameterError("family carries no line groups")
    return [list(g) for g in groups]


# --- power set embedding ---

def embed_bits(bits: int, n: int) -> int:
    """(x,1) for x in A, (x,2) otherwise, flattened as in ``gen_signed(n, n, 2)``."""
    out = 0
    for x in range(n):
        out |= 1 << (2 * x + (0 if bits >> x & 1 else 1))
    return out


def embed_powerset_in_signed(a: SetFamily, n: Optional[int] = None) -> SetFamily:
    n = a.ground_size if n is None else n
    for member in a:
        if member.bits >> n:
            raise NotASubfamilyError(f"member {list(member.elements())} exceeds the ground set [0, {n})")
    _check_ground(2 * n)
    meta = {"generator": "signed-embedding", "params": {"n": n}, "labels": _pair_labels(n, 2)}
    return SetFamily.from_bits(2 * n, [embed_bits(m.bits, n) for m in a], meta)


# --- random instances ---

def random_family(rng: random.Random, ground_size: int, max_sets: int, min_sets: int = 1) -> SetFamily:
    """Uniformly random distinct subsets of [ground_size]."""
    universe = 1 << ground_size
    count = rng.randint(min_sets, min(max_sets, universe))
    return SetFamily.from_bits(ground_size, rng.sample(range(universe), count))


def random_t_intersecting(rng: random.Random, f: SetFamily, t: int) -> SetFamily:
    order = list(range(len(f)))
    rng.shuffle(order)
    chosen: List[int] = []
    for i in order:
        b = f.bits[i]
        if b.bit_count() >= t and all(meets(b, f.bits[j], t) for j in chosen):
            chosen.append(i)
    return f.subfamily_of(chosen)


def random_cross_tuple(rng: random.Random, f: SetFamily, t: int, k: int) -> List[SetFamily]:
    """
    k cross-t-intersecting subfamilies of ``f``: A_2..A_k are random parts of a random
    t-intersecting family, A_1 is a random part of everything compatible with them.
    """
    core = random_t_intersecting(rng, f, t)
    rest = [core.subfamily(rng.getrandbits(len(core)) if len(core) else 0) for _ in range(k - 1)]
    used = set()
    for fam in rest:
        used.update(fam.bits)
    candidates = [b for b in f.bits if all(meets(b, u, t) for u in used)]
    first = [b for b in candidates if rng.getrandbits(1)]
    return [SetFamily.from_bits(f.ground_size, first)] + [
        SetFamily(f.ground_size, fam.members) for fam in rest
    ]


@timed
def verify_embedding(n: int, t: int, guards: Optional[Guards] = None) -> VerificationReport:
    """
    Over every subfamily a of 2^[n]: the signed image keeps sizes, keeps plus-members plus,
    and |a+| + (|K_{n,t}|/2^n)|a-| <= |K_{n,t}|.
    """
    g = current_guards(guards)
    powerset = gen_powerset(n, g)
    size = len(powerset)
    if size > g.beta:
        raise GuardExceededError("beta", g.beta, size, "subfamily enumeration over 2^|F| subfamilies")
    katona = len(gen_katona(n, t, g))
    images = [embed_bits(b, n) for b in powerset.bits]
    source_adj = conflict_graph(powerset, t).adjacency
    image_adj = [0] * size
    for i in range(size):
        for j in range(size):
            if i != j and not meets(images[i], images[j], t):
                image_adj[i] |= 1 << j

    plus_kept, bound_holds, checked = True, True, 0
    stack = [(0, 0, 0, 0)]
    while stack:
        mask, minus_a, minus_b, start = stack.pop()
        checked += 1
        plus_a = mask & ~minus_a
        plus_b = mask & ~minus_b
        if plus_a & ~plus_b:
            plus_kept = False
        m = minus_a.bit_count()
        if plus_a.bit_count() * size + katona * m > katona * size:
            bound_holds = False
        for j in range(size - 1, start - 1, -1):
            bit = 1 << j
            hit_a = source_adj[j] & mask
            hit_b = image_adj[j] & mask
            stack.append((
                mask | bit,
                minus_a | hit_a | (bit if hit_a else 0),
                minus_b | hit_b | (bit if hit_b else 0),
                j + 1,
            ))

    checks = {
        "sizes_preserved": all(b.bit_count() == n for b in images),
        "injective": len(set(images)) == size,
        "plus_members_preserved": plus_kept,
        "weighted_bound": bound_holds,
    }
    computed = {"n": n, "katona_size": katona, "subfamilies_checked": checked}
    return make_report("embedding", f"powerset(n={n});t={t}", checks, computed)
