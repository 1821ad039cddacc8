#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""命令行接口模块。

子命令:
    wieferich   扫描 Wieferich 素数
    split       报告素数在数域中的分裂
    layer       构造分圆 Z_l-扩张的第 n 层
    sunit       枚举 S-单位方程的解
    verify      生成定理假设证书
    search-d    批量筛选满足同余条件的素数 d

退出码: 0 = 正常结束（包括结论为 "not applicable"），2 = 用法或输入错误，
3 = 内部不变量被破坏。诊断信息写到 stderr，主要输出写到 stdout 或 --out。

典型用法示例:
    python main.py wieferich --base 2 --max 100000
    python main.py verify --theorem gfe-Q-2d --l 7 --n 1 --d 5 --A 1,0,0 --B -1,1,1 --C 1,4,2 --h-plus odd:table
"""

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

from arith_core import wieferich_scan
from config import (
    DEFAULT_HEIGHT_BOUND, DEFAULT_SEED, LAYER_DEGREE_CAP, SCAN_CHUNK_SIZE, SCAN_WORKERS,
    TOOL_NAME, TOOL_VERSION
)
from cyclotomic_layers import build_layer, layer_to_field_spec
from errors import DomainError, InvariantViolation, ToolkitError
from hypothesis_engine import (
    THEOREM_CHECKS, Scenario, certificate_to_json, parse_descriptor, parse_h_plus, search_valid_d
)
from log_setup import configure_logging
from numberfield import NumberField, make_field, poly_to_str, read_field_spec, split_prime
from sunit_search import SUnitConfig, report_to_json, solve_sunit_equation

logger = logging.getLogger(__name__)

DESCRIPTOR_FLAGS: tuple[str, ...] = ("--A", "--B", "--C")


@dataclass
class RunManifest:
    """一次运行的可复现记录。

    Attributes:
        command (str): 子命令名
        args (dict): 完整的参数回显
        version (str): 工具版本
        seed (int): 有限域分解使用的随机种子
        timing_seconds (float): 运行耗时，只记录在清单中
        exit_code (int): 退出码
    """

    command: str
    args: dict
    version: str
    seed: int
    timing_seconds: float = 0.0
    exit_code: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, ensure_ascii=False) + "\n"


# =============================================================================
# 辅助函数
# =============================================================================

def load_field(spec: str) -> NumberField:
    """"Q" 表示有理数域，否则按域描述文件路径读取。"""
    if spec == "Q":
        return make_field([0, 1])
    coeffs, meta = read_field_spec(spec)
    logger.debug("read field %s from %s (%s)", poly_to_str(coeffs), spec, meta)
    return make_field(coeffs)


def _parse_primes(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError as exc:
        raise DomainError(f"--s must be a comma separated list of primes, got {text!r}") from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _join_descriptor_args(argv: Sequence[str]) -> list[str]:
    """把 "--B -1,2,1" 改写成 "--B=-1,2,1"，避免 argparse 把负数描述符当成选项。"""
    out: list[str] = []
    it = iter(argv)
    for token in it:
        if token in DESCRIPTOR_FLAGS:
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


# =============================================================================
# 子命令
# =============================================================================

def cmd_wieferich(args: argparse.Namespace) -> int:
    if args.min > args.max:
        raise DomainError(f"empty range: --min {args.min} > --max {args.max}")
    reports = wieferich_scan(args.base, args.min, args.max, workers=args.workers, chunk_size=args.chunk_size)
    if reports:
        for r in reports:
            print(r.prime)
    else:
        print("none found")
    print(f"# base {args.base}, range [{args.min}, {args.max}]: {len(reports)} Wieferich prime(s)")
    return 0


def cmd_split(args: argparse.Namespace) -> int:
    K = load_field(args.field)
    report = split_prime(K, args.prime)
    print(report.describe())
    print(f"pattern: {list(report.pattern)}")
    print(f"index caveat: {'yes' if report.index_caveat else 'no'}")
    if report.ramified_root is not None:
        print(f"ramified root: {report.ramified_root}")
    return 0


def cmd_layer(args: argparse.Namespace) -> int:
    layer = build_layer(args.l, args.n, degree_cap=args.degree_cap)
    if not layer.disc_is_power_of_l():
        logger.warning("discriminant %d is not a power of %d", layer.disc, args.l)
    _emit(layer_to_field_spec(layer), args.out)
    return 0


def cmd_sunit(args: argparse.Namespace) -> int:
    cfg = SUnitConfig(load_field(args.field), _parse_primes(args.s), height_bound=args.height,
                      exponent_bound=args.window, workers=args.workers)
    solutions = solve_sunit_equation(cfg)
    _emit(report_to_json(cfg, solutions), args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    coeffs = None
    given = [args.A, args.B, args.C]
    if any(v is not None for v in given):
        if any(v is None for v in given):
            raise DomainError("--A, --B and --C must be given together")
        coeffs = tuple(parse_descriptor(v) for v in given)
    sc = Scenario(
        field_K=None if args.field == "Q" else load_field(args.field),
        l=args.l, n=args.n, d=args.d, coeffs_ABC=coeffs,
        h_plus=None if args.h_plus is None else parse_h_plus(args.h_plus),
    )
    cert = THEOREM_CHECKS[args.theorem](sc)
    _emit(certificate_to_json(cert), args.out)
    return 0


def cmd_search_d(args: argparse.Namespace) -> int:
    found = search_valid_d(args.l, args.max, workers=args.workers)
    for d in found:
        print(d)
    print(f"# l = {args.l}, d <= {args.max}: {len(found)} prime(s)")
    return 0


# =============================================================================
# 参数解析与入口
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=TOOL_NAME, description="asymptotic Fermat criteria over cyclotomic Z_l-layers")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    parser.add_argument("--manifest", metavar="PATH", help="write a RunManifest JSON file")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wieferich", help="scan for Wieferich primes")
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--min", type=int, default=3)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--workers", type=int, default=SCAN_WORKERS)
    p.add_argument("--chunk-size", type=int, default=SCAN_CHUNK_SIZE)
    p.set_defaults(handler=cmd_wieferich)

    p = sub.add_parser("split", help="splitting of a prime in a field")
    p.add_argument("field", help='field spec path, or "Q"')
    p.add_argument("prime", type=int)
    p.set_defaults(handler=cmd_split)

    p = sub.add_parser("layer", help="minimal polynomial of the n-th layer Q_{n,l}")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--degree-cap", type=int, default=LAYER_DEGREE_CAP)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_layer)

    p = sub.add_parser("sunit", help="solutions of the S-unit equation")
    p.add_argument("--field", default="Q")
    p.add_argument("--s", required=True, help="comma separated primes, e.g. 2,5")
    p.add_argument("--height", type=int, default=DEFAULT_HEIGHT_BOUND)
    p.add_argument("--window", type=int, help="exponent window (rational field only)")
    p.add_argument("--workers", type=int, default=SCAN_WORKERS)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_sunit)

    p = sub.add_parser("verify", help="hypothesis certificate for a theorem")
    p.add_argument("--theorem", required=True, choices=sorted(THEOREM_CHECKS))
    p.add_argument("--field", default="Q")
    p.add_argument("--l", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--A", help="u,r,s")
    p.add_argument("--B", help="u,r,s")
    p.add_argument("--C", help="u,r,s")
    p.add_argument("--h-plus", dest="h_plus", help="odd:<provenance> or even:<provenance>")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("search-d", help="primes d passing the congruence hypotheses")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--workers", type=int, default=SCAN_WORKERS)
    p.set_defaults(handler=cmd_search_d)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """解析参数并分派子命令，返回退出码。"""
    parser = build_parser()
    args = parser.parse_args(_join_descriptor_args(sys.argv[1:] if argv is None else argv))
    configure_logging(args.verbose)
    handler: Callable[[argparse.Namespace], int] = args.handler
    echo = {k: v for k, v in vars(args).items() if k not in ("handler", "manifest", "verbose")}
    manifest = RunManifest(args.command, echo, TOOL_VERSION, DEFAULT_SEED)
    start = time.perf_counter()
    code = InvariantViolation.exit_code
    try:
        code = handler(args)
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = exc.exit_code
    except Exception as exc:
        logger.exception("unexpected failure in %s", args.command)
        print(f"error: internal: {type(exc).__name__}: {exc}", file=sys.stderr)
        code = InvariantViolation.exit_code
    finally:
        manifest.timing_seconds = round(time.perf_counter() - start, 6)
        manifest.exit_code = code
        if args.manifest:
            Path(args.manifest).write_text(manifest.to_json(), encoding="utf-8")
    return code
