"""Command-line front end: ``corrspec {spectrum,verify,field-info,bench,export,analyze}``.

Settings resolve as flags > CORRSPEC_* environment > ``--config`` file > defaults.
Exit status: 0 success, 1 audit failure or method disagreement, 2 invalid
parameters, 3 table cap exceeded.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from dataclasses import dataclass, fields
from pathlib import Path

from sympy import factorint

from . import qform
from .audits import Audit
from .cyclotomic import recognize_quadratic, to_complex
from .ffield import DEFAULT_CAP, CapExceededError, FieldError, build_field, cache_status, format_poly
from .seqgen import ParamError, export_sequence, field_for, m_sequence, validate_params
from .spectrum import (METHODS, SpectrumReport, class_values, full_spectrum, rank_data, sums_sweep,
                       verify_all)

log = logging.getLogger("corrspec")

DEFAULT_MATRIX = ((5, 1, 1), (13, 1, 1), (5, 3, 1), (5, 3, 3))
ENV_PREFIX = "CORRSPEC_"


@dataclass
class RunConfig:
    p: int | None = None
    m: int | None = None
    e: int | None = None
    n: int | None = None
    method: str = "all"
    output_format: str = "text"
    output: str | None = None
    cache_dir: str | None = None
    threads: int = 0
    precision_bits: int = 53
    cap: int = DEFAULT_CAP

    @property
    def workers(self) -> int:
        return self.threads or os.cpu_count() or 1


_FLAG_TO_FIELD = {"format": "output_format"}
_INT_FIELDS = {"p", "m", "e", "n", "threads", "precision_bits", "cap"}


def read_config_file(path) -> dict:
    """``key = value`` lines; keys mirror the long flag names."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        out[_FLAG_TO_FIELD.get(key, key)] = value.strip()
    return out


def resolve_config(args: argparse.Namespace, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    merged: dict = {}
    if getattr(args, "config", None):
        merged.update(read_config_file(args.config))
    for f in fields(RunConfig):
        key = ENV_PREFIX + f.name.upper()
        if key in environ:
            merged[f.name] = environ[key]
    for f in fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            merged[f.name] = value
    known = {f.name for f in fields(RunConfig)}
    clean = {}
    for k, v in merged.items():
        if k not in known:
            continue
        clean[k] = int(v) if k in _INT_FIELDS and v is not None else v
    return RunConfig(**clean)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _render(cfg: RunConfig, report: SpectrumReport) -> str:
    if cfg.output_format == "json":
        return report.to_json()
    if cfg.output_format == "csv":
        return report.to_csv()
    return report.to_text()


def _params(cfg: RunConfig):
    if None in (cfg.p, cfg.m, cfg.e):
        raise ParamError("-p, -m and -e are required")
    return validate_params(cfg.p, cfg.m, cfg.e)


def _field(cfg: RunConfig, params):
    return field_for(params, cap=cfg.cap, cache_dir=cfg.cache_dir)


def _precision_audit(report: SpectrumReport, bits: int) -> Audit:
    worst = 0.0
    for v in class_values(report.params).values():
        z = to_complex(v.to_cycint(), bits)
        worst = max(worst, abs(z - float(v)) / max(1.0, abs(float(v))))
    return Audit("class values: cyclotomic vs closed form (float)", worst <= 1e-9, f"{worst:.2e}", "<= 1e-09")


def cmd_spectrum(cfg: RunConfig) -> int:
    params = _params(cfg)
    field = _field(cfg, params)
    report = full_spectrum(params, field, cfg.method, threads=cfg.workers)
    report.audits.append(_precision_audit(report, cfg.precision_bits))
    _emit(cfg, _render(cfg, report))
    return 0 if report.passed else 1


def cmd_verify(cfg: RunConfig) -> int:
    cases = [(cfg.p, cfg.m, cfg.e)] if cfg.p is not None else list(DEFAULT_MATRIX)
    params_list = [validate_params(*c) if None not in c else _params(cfg) for c in cases]
    lines, ok = [], True
    for params in params_list:
        field = _field(cfg, params)
        audits = verify_all(params, field)
        ok &= all(a.passed for a in audits)
        lines.append(f"== p={params.p} m={params.m} e={params.e} ==")
        lines += [a.line() for a in audits]
    lines.append("ALL PASS" if ok else "FAILURES PRESENT")
    _emit(cfg, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_field_info(cfg: RunConfig) -> int:
    if cfg.p is None or cfg.n is None:
        raise FieldError("-p and -n are required")
    bare = build_field(cfg.p, cfg.n, tables=False)
    status = cache_status(cfg.p, cfg.n, cfg.cache_dir, bare.modulus)
    F = build_field(cfg.p, cfg.n, cap=cfg.cap, cache_dir=cfg.cache_dir)
    g = F.generator
    order_ok = g**F.order == F.one and all(g ** (F.order // q) != F.one for q in factorint(F.order))
    text = (f"field GF({F.p}^{F.n})\nmodulus {format_poly(F.modulus)}\n"
            f"order {F.order}\ngenerator order check {'ok' if order_ok else 'FAILED'}\n"
            f"dlog cache {status}\n")
    _emit(cfg, text)
    return 0 if order_ok else 1


def cmd_bench(cfg: RunConfig) -> int:
    params = _params(cfg)
    field = _field(cfg, params)
    timings, reports = {}, {}
    for method in METHODS:
        t0 = time.perf_counter()
        reports[method] = full_spectrum(params, field, method, threads=cfg.workers)
        timings[method] = time.perf_counter() - t0
    base = reports["direct"]
    agree = all(r.counts == base.counts and r.values == base.values for r in reports.values())
    lines = [f"p={params.p} m={params.m} e={params.e}", "method      seconds   speedup_vs_direct"]
    for method in METHODS:
        lines.append(f"{method:<11} {timings[method]:8.3f}  {timings['direct'] / timings[method]:8.1f}x")
    lines.append(f"results identical: {'yes' if agree else 'NO'}")
    _emit(cfg, "\n".join(lines) + "\n")
    return 0 if agree else 1


def cmd_export(cfg: RunConfig) -> int:
    params = _params(cfg)
    field = _field(cfg, params)
    _emit(cfg, export_sequence(params, m_sequence(params, field)))
    return 0


def cmd_analyze(cfg: RunConfig) -> int:
    """Tab-separated per-c dump for the forms q_{-1,c}."""
    params = _params(cfg)
    field = _field(cfg, params)
    data = rank_data(params, field)
    ranks = data.rank(params)
    e1, _ = sums_sweep(params, field)
    rows = ["dlog_c\tkernel_size\trank\tdet_class\tE_u\tE_v"]
    for tau in range(field.order):
        E = recognize_quadratic(e1[tau])
        rows.append(f"{tau}\t{data.kernel[tau]}\t{ranks[tau]}\t{data.det_class[tau]:+d}\t{E.u}\t{E.v}")
    _emit(cfg, "\n".join(rows) + "\n")
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "field-info": cmd_field_info,
    "bench": cmd_bench,
    "export": cmd_export,
    "analyze": cmd_analyze,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="corrspec", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("-p", type=int)
        sp.add_argument("-m", type=int)
        sp.add_argument("-e", type=int)
        sp.add_argument("-n", type=int, help="extension degree (field-info)")
        sp.add_argument("--method", choices=METHODS + ("all",))
        sp.add_argument("--format", dest="output_format", choices=("json", "csv", "text"))
        sp.add_argument("--output")
        sp.add_argument("--cache-dir", dest="cache_dir")
        sp.add_argument("--threads", type=int)
        sp.add_argument("--precision-bits", dest="precision_bits", type=int)
        sp.add_argument("--cap", type=int)
        sp.add_argument("--config", help="key = value file")
    return parser


def main(argv=None, environ=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        cfg = resolve_config(args, environ)
        return COMMANDS[args.command](cfg)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParamError, FieldError, qform.QFormError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
