import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

import click
from pydantic import ValidationError

from .config import Guards, ensure_directories, get_logger, resolve_output, settings
from .cross_config import max_product_exact, max_sum_exact
from .errors import CrossFamError
from .extremal import beta, beta_reference, ell
from .family_core import decompose
from .family_io import dump_family, parse_family_file, parse_permutations_json
from .generators import (
    gen_example1,
    gen_example2,
    gen_katona,
    gen_lines,
    gen_partial_permutations,
    gen_permutations,
    gen_powerset,
    gen_signed,
    gen_uniform,
)
from .reports import encode_value, report_payload, write_report
from .suite import OUT_OF_SCOPE_CLAIMS, SuiteConfig, claim_ids, run_suite
from .symmetry import brute_force_t_symmetric, is_t_symmetric_via_generators, verify_symmetric_bound

logger = get_logger(__name__)


@dataclass
class CliState:
    t: int
    k: int
    out: Optional[Path]
    fmt: str
    threads: int
    seed: int
    guards: Guards
    quiet: bool


class CrossFamGroup(click.Group):
    """Structured errors print their code and exit with status 2."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except CrossFamError as e:
            click.echo(f"Error [{e.code}]: {e.message}", err=True)
            ctx.exit(2)


def _emit(state: CliState, payload: Any) -> None:
    text = payload if isinstance(payload, str) else json.dumps(
        encode_value(payload), ensure_ascii=False, indent=2, sort_keys=True
    ) + "\n"
    if state.out is None:
        click.echo(text, nl=False)
        return
    ensure_directories()
    state.out.parent.mkdir(parents=True, exist_ok=True)
    state.out.write_text(text, encoding="utf-8")
    click.echo(f"Đã ghi kết quả vào {state.out}")


@click.group(cls=CrossFamGroup)
@click.option('--t', 't', default=1, show_default=True, type=click.IntRange(min=1), help='Ngưỡng giao t')
@click.option('--k', 'k', default=2, show_default=True, type=click.IntRange(min=1), help='Số họ k')
@click.option('--out', type=click.Path(dir_okay=False, path_type=Path), help='Ghi kết quả ra file thay vì stdout')
@click.option('--format', 'fmt', type=click.Choice(['json', 'csv']), default='json', show_default=True, help='Định dạng báo cáo')
@click.option('--threads', default=lambda: settings.threads, type=click.IntRange(1, 64), help='Số luồng chạy suite')
@click.option('--seed', default=lambda: settings.seed, type=int, help='Seed cho các phép thử ngẫu nhiên')
@click.option('--guard-beta', type=int, help='|F| tối đa khi duyệt mọi họ con')
@click.option('--guard-labeling', type=int, help='Số bit tối đa cho không gian gán nhãn')
@click.option('--guard-uniqueness', type=int, help='Số bit tối đa khi liệt kê mọi nghiệm tối ưu')
@click.option('--guard-symmetry', type=int, help='|F| tối đa cho tìm tự đẳng cấu vét cạn')
@click.option('--quiet', is_flag=True, help='Tắt thanh tiến trình')
@click.pass_context
def cli(ctx, t, k, out, fmt, threads, seed, guard_beta, guard_labeling, guard_uniqueness, guard_symmetry, quiet):
    """Exact computations on cross-t-intersecting families"""
    overrides = {
        name: value
        for name, value in (
            ("beta", guard_beta),
            ("labeling_bits", guard_labeling),
            ("uniqueness_bits", guard_uniqueness),
            ("symmetry", guard_symmetry),
        )
        if value is not None
    }
    try:
        guards = Guards(**{**settings.guards().model_dump(), **overrides})
    except ValidationError as e:
        raise click.BadParameter(e.errors()[0]["msg"], param_hint="--guard-*")
    if fmt == "csv" and ctx.invoked_subcommand != "verify":
        raise click.UsageError("--format csv chỉ áp dụng cho lệnh verify")
    if out is not None:
        out = resolve_output(out)
    ctx.obj = CliState(t, k, out, fmt, threads, seed, guards, quiet)


# --- gen ---

@cli.group()
def gen():
    """Sinh các họ tập chuẩn dưới dạng JSON"""


@gen.command('powerset')
@click.argument('n', type=int)
@click.pass_obj
def gen_powerset_cmd(state, n):
    """2^[n]"""
    _emit(state, dump_family(gen_powerset(n, state.guards)))


@gen.command('uniform')
@click.argument('n', type=int)
@click.argument('r', type=int)
@click.pass_obj
def gen_uniform_cmd(state, n, r):
    """Các tập con r phần tử của [n]"""
    _emit(state, dump_family(gen_uniform(n, r, state.guards)))


@gen.command('katona')
@click.argument('n', type=int)
@click.pass_obj
def gen_katona_cmd(state, n):
    """Họ Katona K(n, t) với t từ --t"""
    _emit(state, dump_family(gen_katona(n, state.t, state.guards)))


@gen.command('signed')
@click.argument('n', type=int)
@click.argument('r', type=int)
@click.argument('m', type=int)
@click.pass_obj
def gen_signed_cmd(state, n, r, m):
    """Các tập con r phần tử có dấu m"""
    _emit(state, dump_family(gen_signed(n, r, m, state.guards)))


@gen.command('permutations')
@click.argument('r', type=int)
@click.argument('n', type=int)
@click.pass_obj
def gen_permutations_cmd(state, r, n):
    """Chỉnh hợp r phần tử của [n]"""
    _emit(state, dump_family(gen_permutations(r, n, state.guards)))


@gen.command('partial-permutations')
@click.argument('n', type=int)
@click.argument('r', type=int)
@click.pass_obj
def gen_partial_permutations_cmd(state, n, r):
    """Hoán vị bộ phận bậc r"""
    _emit(state, dump_family(gen_partial_permutations(n, r, state.guards)))


@gen.command('example1')
@click.argument('n', type=int)
@click.pass_obj
def gen_example1_cmd(state, n):
    """n tập t phần tử rời nhau và hợp của chúng"""
    _emit(state, dump_family(gen_example1(n, state.t)))


@gen.command('example2')
@click.argument('n', type=int)
@click.argument('m', type=int)
@click.pass_obj
def gen_example2_cmd(state, n, m):
    """example1 thêm m-1 tập t phần tử rời nhau"""
    _emit(state, dump_family(gen_example2(n, m, state.t)))


def _fractions(text: Optional[str]):
    if not text:
        return None
    try:
        return [Fraction(v.strip()) for v in text.split(',')]
    except ValueError as e:
        raise click.BadParameter(str(e))


@gen.command('lines')
@click.argument('p', type=int)
@click.option('--slopes', help='Hệ số góc, phân cách bằng dấu phẩy (ví dụ 1,2,5/2)')
@click.option('--intercepts', help='Tung độ gốc, phân cách bằng dấu phẩy')
@click.pass_obj
def gen_lines_cmd(state, p, slopes, intercepts):
    """Họ đường thẳng p x p"""
    _emit(state, dump_family(gen_lines(p, state.t, _fractions(slopes), _fractions(intercepts))))


# --- single-family computations ---

family_file = click.argument('file', type=click.Path(exists=True, dir_okay=False, path_type=Path))


@cli.command('decompose')
@family_file
@click.pass_obj
def decompose_cmd(state, file):
    """Tách F thành F+ và F-"""
    dec = decompose(parse_family_file(file), state.t)
    _emit(state, {"t": state.t, "plus": dec.plus, "minus": dec.minus})


@cli.command('ell')
@family_file
@click.pass_obj
def ell_cmd(state, file):
    """l(F, t): họ con t-giao lớn nhất"""
    res = ell(parse_family_file(file), state.t)
    _emit(state, {"t": state.t, "ell": res.value, "witness": res.witness})


@cli.command('beta')
@family_file
@click.option('--reference', is_flag=True, help='Duyệt toàn bộ họ con, không cắt tỉa')
@click.pass_obj
def beta_cmd(state, file, reference):
    """β(F, t) chính xác"""
    f = parse_family_file(file)
    br = beta_reference(f, state.t, state.guards) if reference else beta(f, state.t, state.guards)
    _emit(state, {
        "t": state.t,
        "beta": br.beta,
        "kappa": br.kappa,
        "ell": br.ell,
        "attains_upper": br.attains_upper,
        "minimizer": br.witness,
    })


@cli.command('kappa')
@family_file
@click.pass_obj
def kappa_cmd(state, file):
    """κ(F, t) = 1/β(F, t)"""
    br = beta(parse_family_file(file), state.t, state.guards)
    _emit(state, {"t": state.t, "kappa": br.kappa})


@cli.command('search-sum')
@family_file
@click.pass_obj
def search_sum_cmd(state, file):
    """Tổng lớn nhất của k họ cross-t-intersecting"""
    _emit(state, max_sum_exact(parse_family_file(file), state.t, state.k, state.guards))


@cli.command('search-product')
@family_file
@click.pass_obj
def search_product_cmd(state, file):
    """Tích lớn nhất của k họ cross-t-intersecting"""
    _emit(state, max_product_exact(parse_family_file(file), state.t, state.k, state.guards))


@cli.command('symmetry')
@family_file
@click.option('--perms', type=click.Path(exists=True, dir_okay=False, path_type=Path), help='File JSON chứa các hoán vị sinh')
@click.option('--bound', is_flag=True, help='Kiểm tra thêm bất đẳng thức cho họ đối xứng')
@click.pass_obj
def symmetry_cmd(state, file, perms, bound):
    """Kiểm tra tính t-đối xứng"""
    f = parse_family_file(file)
    if perms is not None:
        gens = parse_permutations_json(perms.read_text(encoding="utf-8"), f.ground_size)
        report = is_t_symmetric_via_generators(f, state.t, gens)
    else:
        report = brute_force_t_symmetric(f, state.t, state.guards)
    if not bound:
        _emit(state, report)
        return
    verification = verify_symmetric_bound(f, state.t, report, guards=state.guards)
    _emit(state, {"symmetry": report, "bound": report_payload(verification)})
    sys.exit(0 if verification.passed else 1)


# --- suite ---

@cli.command('verify')
@click.option('--claim', 'claims', multiple=True, help='Claim cần kiểm (lặp lại được); mặc định tất cả')
@click.option('--random-families', type=click.IntRange(min=0), default=200, show_default=True)
@click.option('--random-tuples', type=click.IntRange(min=0), default=500, show_default=True)
@click.option('--extension-inputs', type=click.IntRange(min=0), default=100, show_default=True)
@click.pass_obj
def verify_cmd(state, claims, random_families, random_tuples, extension_inputs):
    """Chạy bộ kiểm chứng và xuất báo cáo"""
    cfg = SuiteConfig(
        claims=list(claims) or None,
        guards=state.guards,
        threads=state.threads,
        seed=state.seed,
        fmt=state.fmt,
        random_families=random_families,
        random_tuples=random_tuples,
        extension_inputs=extension_inputs,
        progress=False if state.quiet else None,
    )
    reports = run_suite(cfg)
    if state.out is not None:
        ensure_directories()
        write_report(reports, state.out, state.fmt)
    for r in reports:
        click.echo(f"{'PASS' if r.passed else 'FAIL'}  {r.claim_id}  {r.instance}")
    failed = sum(1 for r in reports if not r.passed)
    click.echo(f"{len(reports) - failed}/{len(reports)} báo cáo đạt")
    sys.exit(1 if failed else 0)


@cli.command('claims')
def claims_cmd():
    """Liệt kê các claim có thể kiểm"""
    for claim in claim_ids():
        click.echo(claim)
    click.echo("")
    click.echo("Ngoài phạm vi (chỉ kiểm ở kích thước nhỏ):")
    for claim, description in OUT_OF_SCOPE_CLAIMS:
        click.echo(f"  {claim}: {description}")


if __name__ == '__main__':
    cli()
