# crossfam/extremal.py
"""
Exact l(F,t), β(F,t), κ(F,t) and the inequalities relating them.

l(F,t) is the clique number of the t-intersection graph (branch and bound with
greedy colouring bounds). β(F,t) is the minimum of β(F,t,A) over all subfamilies A,
found by a lexicographic subfamily enumeration with an optimistic ratio bound.
All values are exact ``Fraction``s.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .config import Guards, current_guards, get_logger
from .errors import EmptyFamilyError, GuardExceededError
from .family_core import (
    ConflictGraph,
    SetFamily,
    conflict_graph,
    decompose,
    iter_bits,
    iter_decompositions,
    minus_mask_within,
)
from .family_io import describe_family
from .reports import VerificationReport, make_report, timed

logger = get_logger(__name__)


@dataclass(frozen=True)
class EllResult:
    value: int
    witness: SetFamily
    mask: int


@dataclass(frozen=True)
class BetaReport:
    beta: Fraction
    kappa: Fraction
    ell: int
    witness: SetFamily
    witness_mask: int
    attains_upper: bool
    family_size: int
    nodes: int = 0


# --- maximum clique ---

def _greedy_colouring(p: int, compat: Sequence[int]) -> List[Tuple[int, int]]:
    """Sequential colouring of the vertices of ``p`` in index order; colours ascend along the list."""
    order = []
    colour = 0
    while p:
        colour += 1
        q = p
        while q:
            low = q & -q
            v = low.bit_length() - 1
            p ^= low
            q ^= low
            q &= ~compat[v]
            order.append((v, colour))
    return order


def _clique_number(compat: Sequence[int]) -> int:
    n = len(compat)
    # vertex order: descending degree, ties by index
    order = sorted(range(n), key=lambda i: (-compat[i].bit_count(), i))
    position = [0] * n
    for new, old in enumerate(order):
        position[old] = new
    relabelled = [0] * n
    for old, mask in enumerate(compat):
        bits = 0
        for j in iter_bits(mask):
            bits |= 1 << position[j]
        relabelled[position[old]] = bits

    # greedy clique in the same order seeds the incumbent
    clique, candidates = 0, (1 << n) - 1
    while candidates:
        low = candidates & -candidates
        v = low.bit_length() - 1
        clique += 1
        candidates &= relabelled[v]
    best = clique

    def expand(size: int, p: int) -> None:
        nonlocal best
        for v, colour in reversed(_greedy_colouring(p, relabelled)):
            if size + colour <= best:
                return
            new_p = p & relabelled[v]
            if new_p:
                expand(size + 1, new_p)
            elif size + 1 > best:
                best = size + 1
            p &= ~(1 << v)

    expand(0, (1 << n) - 1)
    return best


def _least_clique(compat: Sequence[int], omega: int) -> int:
    """Lexicographically least sorted index tuple among cliques of size ``omega``."""
    n = len(compat)

    def search(size: int, p: int, chosen: int) -> Optional[int]:
        if size == omega:
            return chosen
        if size + p.bit_count() < omega:
            return None
        colours = _greedy_colouring(p, compat)
        if size + colours[-1][1] < omega:
            return None
        while p:
            low = p & -p
            v = low.bit_length() - 1
            p ^= low
            found = search(size + 1, p & compat[v], chosen | low)
            if found is not None:
                return found
            if size + p.bit_count() < omega:
                return None
        return None

    found = search(0, (1 << n) - 1, 0)
    assert found is not None
    return found


def ell_of_graph(graph: ConflictGraph) -> Tuple[int, int]:
    if graph.size == 0:
        raise EmptyFamilyError("l undefined on empty family")
    compat = graph.compatibility
    omega = _clique_number(compat)
    return omega, _least_clique(compat, omega)


def ell(f: SetFamily, t: int) -> EllResult:
    if not f:
        raise EmptyFamilyError("l undefined on empty family")
    omega, mask = ell_of_graph(conflict_graph(f, t))
    return EllResult(omega, f.subfamily(mask), mask)


# --- beta / kappa ---

def beta_of(f: SetFamily, t: int, a: SetFamily) -> Fraction:
    if not f:
        raise EmptyFamilyError("β undefined on empty family")
    mask = f.mask_of(a)
    graph = conflict_graph(f, t)
    l, _ = ell_of_graph(graph)
    minus = minus_mask_within(graph, mask)
    if not minus:
        return Fraction(l, len(f))
    plus = mask.bit_count() - minus.bit_count()
    return Fraction(l - plus, minus.bit_count())


def _check_beta_guard(f: SetFamily, guard: int, name: str = "beta") -> None:
    if not f:
        raise EmptyFamilyError("β undefined on empty family")
    if len(f) > guard:
        raise GuardExceededError(name, guard, len(f), "subfamily enumeration over 2^|F| subfamilies")


def beta(f: SetFamily, t: int, guards: Optional[Guards] = None) -> BetaReport:
    g = current_guards(guards)
    _check_beta_guard(f, g.beta)
    graph = conflict_graph(f, t)
    l, _ = ell_of_graph(graph)
    n = len(f)
    adjacency = graph.adjacency

    # incumbent = β(F,t,∅) = l/|F|
    best_num, best_den, best_mask = l, n, 0
    nodes = 0

    def visit(mask: int, minus: int, size: int, start: int) -> None:
        nonlocal best_num, best_den, best_mask, nodes
        nodes += 1
        unconflicted = size - minus.bit_count()
        for j in range(start, n):
            rem = n - j
            # every extension has |A+| <= l-1 and |A-| <= |S| + rem
            top = min(l - 1, unconflicted + rem)
            if (l - top) * best_den >= best_num * (size + rem):
                break
            hit = adjacency[j] & mask
            child_mask = mask | (1 << j)
            child_minus = minus | hit | ((1 << j) if hit else 0)
            cm = child_minus.bit_count()
            if cm:
                plus = size + 1 - cm
                if (l - plus) * best_den < best_num * cm:
                    best_num, best_den, best_mask = l - plus, cm, child_mask
            visit(child_mask, child_minus, size + 1, j + 1)

    visit(0, 0, 0, 0)
    value = Fraction(best_num, best_den)
    assert Fraction(1, n) <= value <= Fraction(l, n)
    logger.debug(f"beta: |F|={n} t={t} l={l} value={value} nodes={nodes}")
    return BetaReport(
        beta=value,
        kappa=1 / value,
        ell=l,
        witness=f.subfamily(best_mask),
        witness_mask=best_mask,
        attains_upper=value == Fraction(l, n),
        family_size=n,
        nodes=nodes,
    )


def beta_reference(f: SetFamily, t: int, guards: Optional[Guards] = None) -> BetaReport:
    """Unpruned enumeration of every subfamily; the correctness oracle for ``beta``."""
    g = current_guards(guards)
    _check_beta_guard(f, g.reference, "reference")
    graph = conflict_graph(f, t)
    l, _ = ell_of_graph(graph)
    n = len(f)
    best, best_mask, nodes = Fraction(l, n), 0, 0
    for mask, minus in iter_decompositions(graph):
        nodes += 1
        if not minus:
            continue
        value = Fraction(l - (mask.bit_count() - minus.bit_count()), minus.bit_count())
        if value < best:
            best, best_mask = value, mask
    return BetaReport(
        beta=best,
        kappa=1 / best,
        ell=l,
        witness=f.subfamily(best_mask),
        witness_mask=best_mask,
        attains_upper=best == Fraction(l, n),
        family_size=n,
        nodes=nodes,
    )


def kappa(f: SetFamily, t: int, guards: Optional[Guards] = None) -> Fraction:
    value = beta(f, t, guards).kappa
    assert value <= len(f)
    return value


def pointwise_slack(f: SetFamily, t: int, c: Fraction, a: SetFamily) -> Fraction:
    """l(F,t) - (|A+| + c|A-|); negative exactly when the inequality fails at A."""
    mask = f.mask_of(a)
    graph = conflict_graph(f, t)
    l, _ = ell_of_graph(graph)
    minus = minus_mask_within(graph, mask).bit_count()
    plus = mask.bit_count() - minus
    return l - (plus + Fraction(c) * minus)


# --- verifiers ---

def _instance(f: SetFamily, t: int, **extra) -> str:
    parts = [describe_family(f), f"t={t}"] + [f"{k}={v}" for k, v in extra.items()]
    return ";".join(parts)


@timed
def verify_pointwise_inequality(
    f: SetFamily,
    t: int,
    c: Fraction,
    guards: Optional[Guards] = None,
    claim_id: str = "pointwise-inequality",
) -> VerificationReport:
    g = current_guards(guards)
    _check_beta_guard(f, g.beta)
    c = Fraction(c)
    graph = conflict_graph(f, t)
    l, _ = ell_of_graph(graph)
    violation, checked = None, 0
    for mask, minus in iter_decompositions(graph):
        checked += 1
        m = minus.bit_count()
        plus = mask.bit_count() - m
        if plus + c * m > l:
            violation = mask
            break
    computed = {"c": c, "ell": l, "subfamilies_checked": checked}
    witnesses = {}
    if violation is not None:
        witnesses["violating_subfamily"] = f.subfamily(violation)
        computed["slack"] = pointwise_slack(f, t, c, witnesses["violating_subfamily"])
    return make_report(
        claim_id, _instance(f, t, c=str(c)), {"inequality_holds": violation is None}, computed, witnesses
    )


@timed
def verify_beta_bounds(f: SetFamily, t: int, guards: Optional[Guards] = None) -> VerificationReport:
    br = beta(f, t, guards)
    n = len(f)
    graph = conflict_graph(f, t)
    all_pairs_conflict = graph.edge_count == n * (n - 1) // 2
    lower, upper = Fraction(1, n), Fraction(br.ell, n)
    checks = {
        "lower_bound": lower <= br.beta,
        "upper_bound": br.beta <= upper,
        "lower_equality_iff_pairwise_conflict": (br.beta == lower) == all_pairs_conflict,
        "kappa_reciprocal": br.kappa * br.beta == 1,
        "kappa_at_most_size": br.kappa <= n,
    }
    computed = {
        "beta": br.beta,
        "kappa": br.kappa,
        "ell": br.ell,
        "size": n,
        "all_pairs_conflict": all_pairs_conflict,
        "attains_lower": br.beta == lower,
        "attains_upper": br.attains_upper,
    }
    return make_report("beta-bounds", _instance(f, t), checks, computed, {"minimizer": br.witness})


@timed
def verify_upper_beta_dichotomy(
    f: SetFamily, t: int, guards: Optional[Guards] = None, expect_converse_failure: bool = False
) -> VerificationReport:
    """β = l/|F| forces F = F+ or F = F-; also records when the converse fails."""
    br = beta(f, t, guards)
    dec = decompose(f, t)
    all_plus = dec.plus_mask == f.full_mask
    all_minus = dec.minus_mask == f.full_mask
    one_sided = all_plus or all_minus
    converse_fails = (not br.attains_upper) and one_sided
    checks = {"implication": (not br.attains_upper) or one_sided}
    if expect_converse_failure:
        # F một phía nhưng β < l/|F|
        checks["converse_fails"] = converse_fails
    computed = {
        "beta": br.beta,
        "upper": Fraction(br.ell, len(f)),
        "attains_upper": br.attains_upper,
        "family_is_plus": all_plus,
        "family_is_minus": all_minus,
        "converse_counterexample": converse_fails,
    }
    return make_report("upper-beta-dichotomy", _instance(f, t), checks, computed, {"minimizer": br.witness})


@timed
def verify_beta_value(
    f: SetFamily,
    t: int,
    expected: Fraction,
    claim_id: str,
    guards: Optional[Guards] = None,
) -> VerificationReport:
    """β(F,t) equals a known closed form; cross-checked with the unpruned path when it fits."""
    g = current_guards(guards)
    br = beta(f, t, g)
    checks = {"beta_matches": br.beta == Fraction(expected)}
    computed = {"beta": br.beta, "expected": Fraction(expected), "kappa": br.kappa, "ell": br.ell}
    notes = []
    if len(f) <= g.reference:
        ref = beta_reference(f, t, g)
        checks["matches_reference"] = ref.beta == br.beta and ref.witness_mask == br.witness_mask
    else:
        notes.append(f"reference enumeration skipped: |F|={len(f)} > {g.reference}")
    return make_report(claim_id, _instance(f, t), checks, computed, {"minimizer": br.witness}, notes)


@timed
def verify_ell_value(f: SetFamily, t: int, expected: int, claim_id: str) -> VerificationReport:
    result = ell(f, t)
    computed = {"ell": result.value, "expected": expected}
    return make_report(
        claim_id, _instance(f, t), {"ell_matches": result.value == expected}, computed, {"largest": result.witness}
    )
