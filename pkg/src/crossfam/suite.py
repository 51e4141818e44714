# crossfam/suite.py
"""
Verification suite: every claim id maps to a function that runs its default instance grid.
Claims run concurrently; the reports are sorted by (claim_id, instance) afterwards, and every
claim draws its randomness from its own seeded generator, so the output does not depend on
the number of threads.
"""

import math
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .config import Guards, get_logger, settings
from .cross_config import (
    check_union_lemma,
    product_extension_check,
    verify_cyclic_cover,
    verify_main_theorem,
    verify_powerset_cross,
    verify_product_extension,
    verify_product_small_cases,
    verify_sum_nontrivial,
    verify_sum_threshold,
    verify_sum_upper_beta,
    verify_sum_value,
    verify_line_construction,
)
from .errors import GuardExceededError, HypothesisError, PreconditionError, UnknownClaimError
from .extremal import (
    beta,
    verify_beta_bounds,
    verify_beta_value,
    verify_ell_value,
    verify_upper_beta_dichotomy,
)
from .family_core import alpha
from .family_io import describe_family
from .generators import (
    gen_example1,
    gen_example2,
    gen_katona,
    gen_lines,
    gen_powerset,
    gen_signed,
    gen_uniform,
    random_cross_tuple,
    random_family,
    verify_embedding,
)
from .progress import TerminalProgressBar
from .reports import VerificationReport, make_report, sort_reports, write_report
from .symmetry import (
    GroundPermutation,
    verify_asymmetric_contrast,
    verify_symmetric_bound,
    verify_symmetry_methods,
    is_t_symmetric_via_generators,
)

logger = get_logger(__name__)

# Các khẳng định tiệm cận ("n đủ lớn") không kiểm được ở kích thước nhỏ
OUT_OF_SCOPE_CLAIMS: List[Tuple[str, str]] = [
    ("uniform-product-large-n", "two-family product bound for r-uniform families, n large enough"),
    ("permutation-product-large-n", "product bound for k cross-intersecting permutation families, n large enough"),
    ("powerset-product-odd", "maximum product for the power set with n+t odd and k >= 3 (no closed form)"),
]


class SuiteConfig(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    claims: Optional[List[str]] = None          # None = mọi claim
    guards: Guards = Field(default_factory=settings.guards)
    threads: int = Field(default_factory=lambda: settings.threads, ge=1, le=64)
    seed: int = Field(default_factory=lambda: settings.seed)
    output: Optional[Path] = None
    fmt: str = "json"
    random_families: int = Field(200, ge=0)
    random_tuples: int = Field(500, ge=0)
    extension_inputs: int = Field(100, ge=0)
    progress: Optional[bool] = None            # None = tự bật khi stderr là terminal


ClaimRunner = Callable[[SuiteConfig, random.Random], List[VerificationReport]]
CLAIMS: Dict[str, ClaimRunner] = {}


def register_claim(claim_id: str):
    def decorator(func: ClaimRunner) -> ClaimRunner:
        CLAIMS[claim_id] = func
        return func

    return decorator


def _attempt(claim: str, instance: str, func: Callable, *args, **kwargs) -> List[VerificationReport]:
    """Guard refusals and inapplicable hypotheses become failed reports, not suite errors."""
    try:
        out = func(*args, **kwargs)
    except (GuardExceededError, PreconditionError) as e:
        logger.warning(f"[{claim}] {instance}: {e.message}")
        return [make_report(claim, instance, {"completed": False}, notes=[f"{e.code}: {e.message}"])]
    return out if isinstance(out, list) else [out]


def _sample_families(cfg: SuiteConfig):
    g = cfg.guards
    return [
        (gen_powerset(3, g), 1),
        (gen_powerset(3, g), 2),
        (gen_uniform(4, 2, g), 1),
        (gen_uniform(5, 2, g), 1),
        (gen_example1(3, 1), 1),
        (gen_example1(4, 2), 2),
        (gen_example2(3, 2, 1), 1),
        (gen_lines(3, 1), 1),
    ]


@register_claim("beta-bounds")
def _beta_bounds(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    out = []
    for f, t in _sample_families(cfg):
        out += _attempt("beta-bounds", f"{describe_family(f)};t={t}", verify_beta_bounds, f, t, cfg.guards)
    return out


@register_claim("upper-beta-dichotomy")
def _dichotomy(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    out = []
    for f, t in _sample_families(cfg):
        converse = f.metadata.get("generator") == "example2"
        out += _attempt(
            "upper-beta-dichotomy", f"{describe_family(f)};t={t}", verify_upper_beta_dichotomy, f, t, cfg.guards, converse
        )
    return out


@register_claim("powerset-beta")
def _powerset_beta(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    g = cfg.guards
    out = []
    for n in (2, 3, 4):
        out += _attempt("powerset-beta", f"n={n}", verify_beta_value, gen_powerset(n, g), 1, Fraction(1, 2), "powerset-beta", g)
    return out


@register_claim("powerset-katona")
def _powerset_katona(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    g = cfg.guards
    out = []
    for n in range(1, 8):
        f = gen_powerset(n, g)
        for t in range(1, n + 1):
            size = len(gen_katona(n, t, g))
            out += _attempt("powerset-katona", f"n={n};t={t}", verify_ell_value, f, t, size, "powerset-katona")
            if n <= 4:
                out += _attempt(
                    "powerset-katona", f"n={n};t={t}", verify_beta_value, f, t, Fraction(size, 1 << n), "powerset-katona", g
                )
    return out


@register_claim("uniform-beta")
def _uniform_beta(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    g = cfg.guards
    out = []
    for n, r in ((4, 2), (5, 2), (6, 2), (6, 3)):
        out += _attempt("uniform-beta", f"n={n};r={r}", verify_beta_value, gen_uniform(n, r, g), 1, Fraction(r, n), "uniform-beta", g)
    return out


@register_claim("example-families")
def _example_families(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    g = cfg.guards
    claim = "example-families"
    out = []
    for n in (2, 3, 4):
        for t in (1, 2):
            out += _attempt(claim, f"n={n};t={t}", verify_beta_value, gen_example1(n, t), t, Fraction(1, n), claim, g)
    for n, m in ((3, 2), (4, 2), (4, 3)):
        out += _attempt(claim, f"n={n};m={m}", verify_beta_value, gen_example2(n, m, 1), 1, Fraction(1, n), claim, g)
    # tổng n+k vượt cả hai cấu hình đơn giản; cấu hình tầm thường tối ưu khi k <= m
    out += _attempt(claim, "sum", verify_sum_value, gen_example2(4, 2, 1), 1, 3, 7, claim, g)
    trivial = gen_example2(4, 2, 1)
    out += _attempt(claim, "trivial", verify_sum_value, trivial, 1, 2, len(trivial), claim, g)
    for k in (2, 3):
        out += _attempt(claim, f"nontrivial;k={k}", verify_sum_nontrivial, gen_example1(4, 1), 1, k, g)
    return out


@register_claim("main-theorem")
def _main_theorem(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    g = cfg.guards
    out = []
    for f, t, k in ((gen_powerset(3, g), 1, 3), (gen_lines(3, 1), 1, 3), (gen_example1(3, 1), 1, 3)):
        out += _attempt("main-theorem", f"{describe_family(f)};t={t};k={k}", verify_main_theorem, f, t, k, g)
    return out


@register_claim("line-construction")
def _line_construction(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    out = []
    for p in (3, 4):
        for t in (1, 2):
            # p=4 chỉ chạy tới k=3: tìm kiếm tích với k=4 trên 16 tập quá lớn
            for k in range(2, min(p, 3) + 1):
                out += _attempt("line-construction", f"p={p};t={t};k={k}", verify_line_construction, p, t, k, cfg.guards)
    return out


@register_claim("threshold-random")
def _threshold_random(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    g = cfg.guards
    out = []
    produced = 0
    while produced < cfg.random_families:
        f = random_family(rng, rng.randint(2, 6), 9)
        t = rng.choice((1, 2))
        if alpha(f) < t:
            continue
        produced += 1
        kap = beta(f, t, g).kappa
        ceiling = math.ceil(kap)
        for k in (ceiling, ceiling + 1):
            out += _attempt("threshold-random", f"{describe_family(f)};t={t};k={k}", verify_main_theorem, f, t, k, g)
        if ceiling >= 2:
            out += _attempt("threshold-random", f"{describe_family(f)};t={t};k={ceiling - 1}", verify_sum_threshold, f, t, ceiling - 1, g)
    return out


@register_claim("powerset-sum")
def _powerset_sum(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    g = cfg.guards
    out = []
    f = gen_powerset(3, g)
    for k in (2, 3, 4):
        out += _attempt("powerset-sum", f"k={k}", verify_sum_upper_beta, f, 1, k, g)
    for k in (2, 3):
        out += _attempt("powerset-sum", f"cross;k={k}", verify_powerset_cross, 3, k, g)
    out += _attempt("powerset-sum", "uniform", verify_sum_upper_beta, gen_uniform(6, 2, g), 1, 2, g)
    return out


@register_claim("product-small-cases")
def _product_small_cases(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    return _attempt("product-small-cases", "grid", verify_product_small_cases, cfg.guards)


@register_claim("union-decomposition")
def _union_decomposition(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    out = []
    for t in (1, 2):
        count = cfg.random_tuples // 2 + (cfg.random_tuples % 2 if t == 1 else 0)
        failures = []
        for index in range(count):
            f = random_family(rng, rng.randint(t, 6), 12)
            families = random_cross_tuple(rng, f, t, rng.randint(2, 4))
            if not all(check_union_lemma(families, t).values()):
                failures.append(index)
        out.append(
            make_report(
                "union-decomposition",
                f"random-tuples(seed={cfg.seed},count={count});t={t}",
                {"all_tuples_satisfy": not failures},
                {"tuples": count, "failures": len(failures)},
                {"failing_indices": failures},
            )
        )
    return out


@register_claim("cyclic-cover")
def _cyclic_cover(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    return [verify_cyclic_cover(k, p) for k in range(1, 9) for p in range(1, k + 1)]


def _extension_input(rng: random.Random) -> Tuple[List[Fraction], List[Fraction], int]:
    while True:
        k = rng.randint(2, 6)
        p = rng.randint(1, k)
        y = [Fraction(rng.randint(1, 6)) for _ in range(k)]
        x = [v * Fraction(rng.randint(0, 8), 6) for v in y]
        try:
            product_extension_check(x, y, p)
        except HypothesisError:
            continue
        return x, y, p


@register_claim("product-extension")
def _product_extension(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    g = cfg.guards
    failures = []
    for index in range(cfg.extension_inputs):
        x, y, p = _extension_input(rng)
        if not product_extension_check(x, y, p).passed:
            failures.append(index)
    out = [
        make_report(
            "product-extension",
            f"random-inputs(seed={cfg.seed},count={cfg.extension_inputs})",
            {"all_inputs_pass": not failures},
            {"inputs": cfg.extension_inputs, "failures": len(failures)},
            {"failing_indices": failures},
        )
    ]
    out += _attempt("product-extension", "uniform", verify_product_extension, gen_uniform(4, 2, g), 1, 2, 3, g)
    out += _attempt("product-extension", "powerset", verify_product_extension, gen_powerset(3, g), 1, 2, 4, g)
    return out


def symmetric_instances(guards: Guards):
    """Families with ground permutation generators that act transitively."""
    cycle4 = GroundPermutation.from_cycles(4, [[0, 1, 2, 3]])
    cycle5 = GroundPermutation.from_cycles(5, [[0, 1, 2, 3, 4]])
    flip = GroundPermutation.from_cycles(4, [[0, 1]])
    swap = GroundPermutation.from_cycles(4, [[0, 2], [1, 3]])
    return [
        (gen_uniform(4, 2, guards), 1, [GroundPermutation.from_cycles(4, [[0, 1]]), cycle4]),
        (gen_uniform(5, 2, guards), 1, [GroundPermutation.from_cycles(5, [[0, 1]]), cycle5]),
        (gen_signed(2, 2, 2, guards), 1, [flip, swap]),
    ]


@register_claim("symmetry")
def _symmetry(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    g = cfg.guards
    out = []
    for f, t, gens in symmetric_instances(g):
        out += _attempt("symmetry", f"{describe_family(f)};t={t};methods", verify_symmetry_methods, f, t, gens, g)
        report = is_t_symmetric_via_generators(f, t, gens)
        out += _attempt("symmetry", f"{describe_family(f)};t={t};bound", verify_symmetric_bound, f, t, report, False, g)
    out += _attempt("symmetry", "contrast", verify_asymmetric_contrast, gen_example1(3, 1), 1, g)
    return out


@register_claim("embedding")
def _embedding(cfg: SuiteConfig, rng: random.Random) -> List[VerificationReport]:
    return [r for n in range(1, 5) for t in range(1, n + 1) for r in _attempt("embedding", f"n={n};t={t}", verify_embedding, n, t, cfg.guards)]


def claim_ids() -> List[str]:
    return sorted(CLAIMS)


def _run_claim(cfg: SuiteConfig, claim: str) -> List[VerificationReport]:
    rng = random.Random(f"{cfg.seed}/{claim}")
    reports = CLAIMS[claim](cfg, rng)
    for report in reports:
        report.claim_id = claim
    failed = sum(1 for r in reports if not r.passed)
    logger.info(f"[{claim}] {len(reports)} báo cáo, {failed} lỗi")
    return reports


def run_suite(cfg: SuiteConfig) -> List[VerificationReport]:
    """Run the selected claims over their default grids and collect the sorted reports."""
    selected = cfg.claims or claim_ids()
    unknown = [c for c in selected if c not in CLAIMS]
    if unknown:
        raise UnknownClaimError(f"unknown claim id {', '.join(unknown)}")
    logger.info(f"Chạy {len(selected)} claim với {cfg.threads} luồng, seed={cfg.seed}")
    reports: List[VerificationReport] = []
    with TerminalProgressBar(len(selected), "Verifying", enabled=cfg.progress) as bar:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            futures = {claim: pool.submit(_run_claim, cfg, claim) for claim in selected}
            for claim, future in futures.items():
                batch = future.result()
                reports.extend(batch)
                bar.update(1, claim, failed=sum(1 for r in batch if not r.passed))
    reports = sort_reports(reports)
    if cfg.output is not None:
        write_report(reports, cfg.output, cfg.fmt)
    return reports
