# crossfam/symmetry.py
"""
t-symmetry: a group of bijections of F preserving the t-intersection relation that acts
transitively on F. Two deciders:
  * ground permutations supplied by the caller (orbits of the induced index permutations),
  * exhaustive automorphism search on the relation graph (networkx GraphMatcher).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx  # thành phần liên thông và đẳng cấu đồ thị
from networkx.algorithms.isomorphism import GraphMatcher

from .config import Guards, current_guards, get_logger
from .errors import EmptyFamilyError, GuardExceededError, NotClosedError, ParameterError, PreconditionError
from .extremal import beta, verify_pointwise_inequality
from .family_core import SetFamily, conflict_graph, iter_bits
from .family_io import describe_family
from .reports import VerificationReport, make_report, timed

logger = get_logger(__name__)

GENERATORS = "generators"
BRUTE_FORCE = "brute_force"


@dataclass(frozen=True)
class GroundPermutation:
    image: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ParameterError(f"{list(self.image)} is not a permutation of 0..{len(self.image) - 1}")

    @property
    def size(self) -> int:
        return len(self.image)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "GroundPermutation":
        image = list(range(n))
        seen = set()
        for cycle in cycles:
            for x in cycle:
                if not 0 <= x < n or x in seen:
                    raise ParameterError(f"bad cycle entry {x} for a permutation of size {n}")
                seen.add(x)
            for a, b in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
                image[a] = b
        return cls(tuple(image))

    def apply(self, bits: int) -> int:
        out = 0
        for x in iter_bits(bits):
            out |= 1 << self.image[x]
        return out


@dataclass(frozen=True)
class SymmetryReport:
    is_t_symmetric: bool
    method: str
    orbit_count: int
    orbits: Tuple[Tuple[int, ...], ...]
    certificate: Tuple[Tuple[int, ...], ...] = field(default=())

    def to_dict(self) -> Dict:
        return {
            "is_t_symmetric": self.is_t_symmetric,
            "method": self.method,
            "orbit_count": self.orbit_count,
            "orbits": [list(o) for o in self.orbits],
            "certificate": [list(c) for c in self.certificate],
        }


def induced_action(f: SetFamily, g: GroundPermutation) -> Tuple[int, ...]:
    """Index permutation i -> index of g(F_i)."""
    if g.size != f.ground_size:
        raise ParameterError(f"permutation of size {g.size} on a ground set of size {f.ground_size}")
    images = []
    for member in f:
        moved = g.apply(member.bits)
        if not f.contains_bits(moved):
            raise NotClosedError(
                f"family not closed under permutation: {list(member.elements())} -> {list(iter_bits(moved))}"
            )
        images.append(f.index_of(moved))
    return tuple(images)


def _orbits(size: int, perms: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    g = nx.Graph()
    g.add_nodes_from(range(size))
    for perm in perms:
        g.add_edges_from((i, j) for i, j in enumerate(perm) if i != j)
    return tuple(sorted(tuple(sorted(c)) for c in nx.connected_components(g)))


def is_t_symmetric_via_generators(f: SetFamily, t: int, gens: Sequence[GroundPermutation]) -> SymmetryReport:
    """Ground permutations preserve every intersection size, so only transitivity is left to check."""
    if not f:
        raise EmptyFamilyError("symmetry undefined on empty family")
    if t < 1:
        raise ParameterError(f"t must be at least 1, got {t}")
    perms = [induced_action(f, g) for g in gens]
    orbits = _orbits(len(f), perms)
    logger.debug(f"{describe_family(f)}: {len(orbits)} orbits under {len(gens)} generators")
    return SymmetryReport(
        is_t_symmetric=len(orbits) == 1,
        method=GENERATORS,
        orbit_count=len(orbits),
        orbits=orbits,
        certificate=tuple(g.image for g in gens),
    )


def relation_graph(f: SetFamily, t: int) -> nx.Graph:
    """Members as nodes, an edge when two distinct members t-intersect."""
    return nx.complement(conflict_graph(f, t).to_networkx())


def _pinned_automorphism(relation: nx.Graph, source: int, target: int) -> Optional[Dict[int, int]]:
    g1 = relation.copy()
    g2 = relation.copy()
    nx.set_node_attributes(g1, {v: v == source for v in g1.nodes}, "pin")
    nx.set_node_attributes(g2, {v: v == target for v in g2.nodes}, "pin")
    matcher = GraphMatcher(g1, g2, node_match=lambda a, b: a["pin"] == b["pin"])
    return next(matcher.isomorphisms_iter(), None)


def brute_force_t_symmetric(f: SetFamily, t: int, guards: Optional[Guards] = None) -> SymmetryReport:
    """
    Orbits of the automorphism group of the t-intersection relation, found by asking for an
    automorphism sending each unplaced member to the first member of an open orbit.
    The certificate maps member 0 to every member when the family is t-symmetric.
    """
    g = current_guards(guards)
    if not f:
        raise EmptyFamilyError("symmetry undefined on empty family")
    if len(f) > g.symmetry:
        raise GuardExceededError("symmetry", g.symmetry, len(f), "automorphism search")
    relation = relation_graph(f, t)
    remaining = list(range(len(f)))
    orbits: List[Tuple[int, ...]] = []
    certificate: List[Tuple[int, ...]] = [tuple(range(len(f)))]
    while remaining:
        base = remaining.pop(0)
        orbit = [base]
        for target in list(remaining):
            mapping = _pinned_automorphism(relation, base, target)
            if mapping is not None:
                orbit.append(target)
                remaining.remove(target)
                if base == 0:
                    certificate.append(tuple(mapping[v] for v in range(len(f))))
        orbits.append(tuple(orbit))
    symmetric = len(orbits) == 1
    logger.debug(f"{describe_family(f)}: brute force found {len(orbits)} orbits")
    return SymmetryReport(
        is_t_symmetric=symmetric,
        method=BRUTE_FORCE,
        orbit_count=len(orbits),
        orbits=tuple(orbits),
        certificate=tuple(certificate) if symmetric else (),
    )


@timed
def verify_symmetric_bound(
    f: SetFamily,
    t: int,
    report: Optional[SymmetryReport] = None,
    override: bool = False,
    guards: Optional[Guards] = None,
) -> VerificationReport:
    """
    On a t-symmetric family |A+| + (l/|F|)|A-| <= l for every subfamily A, hence β = l/|F|.
    ``override`` runs the check on a family not known to be t-symmetric and records that.
    """
    g = current_guards(guards)
    if report is None and not override:
        report = brute_force_t_symmetric(f, t, g)
    if not override and not report.is_t_symmetric:
        raise PreconditionError("theorem inapplicable: family is not t-symmetric")
    bounds = beta(f, t, g)
    c = Fraction(bounds.ell, len(f))
    inequality = verify_pointwise_inequality(f, t, c, g, claim_id="symmetric-bound")
    checks = {
        "inequality_holds": inequality.checks["inequality_holds"],
        "beta_equals_upper": bounds.beta == c,
    }
    computed = {
        "c": c,
        "ell": bounds.ell,
        "beta": bounds.beta,
        "method": report.method if report is not None else "override",
        "subfamilies_checked": inequality.computed["subfamilies_checked"],
    }
    notes = ["t-symmetry assumed by the caller"] if override else []
    return make_report(
        "symmetry", f"{describe_family(f)};t={t}", checks, computed, dict(inequality.witnesses), notes
    )


@timed
def verify_symmetry_methods(
    f: SetFamily, t: int, gens: Sequence[GroundPermutation], guards: Optional[Guards] = None
) -> VerificationReport:
    """Generator orbits are transitive, and the brute force agrees when it fits its guard."""
    g = current_guards(guards)
    via = is_t_symmetric_via_generators(f, t, gens)
    checks = {"generators_transitive": via.is_t_symmetric}
    computed = {"orbit_count": via.orbit_count, "generators": len(gens)}
    if len(f) <= g.symmetry:
        brute = brute_force_t_symmetric(f, t, g)
        checks["brute_force_agrees"] = brute.is_t_symmetric
        computed["brute_force_orbits"] = brute.orbit_count
    return make_report("symmetry", f"{describe_family(f)};t={t};method=generators", checks, computed, {"report": via})


@timed
def verify_asymmetric_contrast(f: SetFamily, t: int, guards: Optional[Guards] = None) -> VerificationReport:
    """A family outside the symmetric case: no transitive group, and the bound fails on F itself."""
    g = current_guards(guards)
    brute = brute_force_t_symmetric(f, t, g)
    bound = verify_symmetric_bound(f, t, override=True, guards=g)
    violating = bound.witnesses.get("violating_subfamily")
    checks = {
        "brute_force_rejects": not brute.is_t_symmetric,
        "inequality_fails": not bound.checks["inequality_holds"],
        "fails_at_whole_family": violating == f,
    }
    computed = {"orbit_count": brute.orbit_count, "beta": bound.computed["beta"], "c": bound.computed["c"]}
    return make_report("symmetry", f"{describe_family(f)};t={t};method=contrast", checks, computed, {"orbits": brute})
