"""Command-line interface: exact tables, asymptotic comparisons, verification suites."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import mpmath

from . import asymptotics as asym
from .enumeration import enumerate_family
from .genfun import Family, check_crank_identity, check_identity, rank_count, rank_row
from .qseries import SeriesError

PREC_ENV = "UNIMODAL_RANKS_PREC"
FAMILY_CHOICES = ("u", "w", "v", "nu")
SUITES = ("identities", "symmetry", "oracle", "inequalities", "kernels", "coefficients")
KERNEL_CHECKS = ("partial-theta", "moments", "wright")

DEFAULTS = {
    "family": None,
    "m_max": 10,
    "n_min": 0,
    "n_max": 50,
    "n_values": None,
    "trunc": 500,
    "precision_bits": 192,
    "terms": "corollary",
    "N": None,
    "format": "text",
    "out": None,
    "threads": 1,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    families: list
    m_max: int
    n_values: list
    trunc: int
    prec: int
    terms: str
    N: int | None
    fmt: str
    out: str | None
    threads: int
    extra: dict = field(default_factory=dict)


# --------------------------------------------------------------------------
# configuration


def read_config_file(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; keys use dashes or underscores."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def _int(name, value):
    try:
        return int(value)
    except (TypeError, ValueError):
        raise UsageError(f"{name} must be an integer, got {value!r}") from None


def _n_list(text):
    try:
        return [int(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad n list {text!r}") from None


def resolve_config(args) -> RunConfig:
    """Defaults, then the config file, then the environment (precision only), then flags."""
    merged = dict(DEFAULTS)
    if getattr(args, "config", None):
        merged.update(read_config_file(args.config))
    if os.environ.get(PREC_ENV):
        merged["precision_bits"] = os.environ[PREC_ENV]
    for key in DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            merged[key] = v

    fam = merged["family"]
    families = [Family.parse(f) for f in str(fam).split(",")] if fam else list(Family)
    m_max = _int("m-max", merged["m_max"])
    if m_max < 0:
        raise UsageError("m-max must be >= 0")
    if merged["n_values"]:
        n_values = _n_list(merged["n_values"])
    else:
        lo, hi = _int("n-min", merged["n_min"]), _int("n-max", merged["n_max"])
        n_values = list(range(lo, hi + 1))
    if not n_values:
        raise UsageError("the n-range is empty")
    if min(n_values) < 0:
        raise UsageError("weights must be non-negative")
    prec = _int("precision-bits", merged["precision_bits"])
    if prec < 64:
        raise UsageError("precision-bits must be >= 64")
    fmt = str(merged["format"])
    if fmt not in ("csv", "json", "text"):
        raise UsageError(f"unknown format {fmt!r}")
    terms = str(merged["terms"])
    if terms not in ("corollary", "theorem", "near-pole"):
        raise UsageError(f"unknown terms choice {terms!r}")
    threads = _int("threads", merged["threads"])
    if threads < 1:
        raise UsageError("threads must be >= 1")
    N = merged["N"]
    return RunConfig(
        families=families,
        m_max=m_max,
        n_values=n_values,
        trunc=_int("trunc", merged["trunc"]),
        prec=prec,
        terms=terms,
        N=None if N is None else _int("N", N),
        fmt=fmt,
        out=merged["out"],
        threads=threads,
    )


# --------------------------------------------------------------------------
# output


def _fmt_float(x, prec):
    digits = max(6, int(prec * math.log10(2)) - 2)
    return mpmath.nstr(x, digits, min_fixed=1, max_fixed=0, strip_zeros=False)


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    if not rows:
        return ""
    cols = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    lines = ["  ".join(c.ljust(widths[c]) for c in cols)]
    lines += ["  ".join(str(r[c]).ljust(widths[c]) for c in cols) for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def emit(rows, cfg: RunConfig):
    text = render(rows, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# commands


def _series(family, m, cfg):
    if cfg.terms == "corollary":
        return asym.corollary_series(family, m)
    N = cfg.N if cfg.N is not None else asym.COROLLARY_ORDER[family]
    if cfg.terms == "theorem":
        return asym.theorem_series(family, m, N)
    return asym.near_pole_series(family, m, N)


def _asym_row(task):
    family, m, n, terms, N, prec = task
    cfg = RunConfig([family], 0, [n], 0, prec, terms, N, "text", None, 1)
    s = _series(family, m, cfg)
    v, scale = asym.eval_series(s, n, prec)
    with mpmath.workprec(prec):
        ln = mpmath.log(v) + scale if v > 0 else None
    return v, scale, ln


def _map(fn, tasks, threads):
    if threads == 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    # mpmath keeps its precision in process-global state, so workers are processes
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, tasks))


def cmd_exact(cfg: RunConfig) -> list[dict]:
    rows = []
    for family in cfg.families:
        for n in cfg.n_values:
            for m in range(-cfg.m_max, cfg.m_max + 1):
                rows.append(
                    {"family": family.value.lower(), "n": n, "m": m,
                     "count": str(rank_count(family, m, n, max_trunc=max(cfg.trunc, n)))}
                )
    return rows


def cmd_asymptotic(cfg: RunConfig) -> list[dict]:
    ns = [n for n in cfg.n_values if n >= 1]
    if not ns:
        raise UsageError("asymptotic needs n >= 1")
    tasks = [(f, m, n, cfg.terms, cfg.N, cfg.prec) for f in cfg.families for n in ns for m in range(cfg.m_max + 1)]
    rows = []
    for (f, m, n, *_), (v, scale, ln) in zip(tasks, _map(_asym_row, tasks, cfg.threads)):
        rows.append({
            "family": f.value.lower(), "n": n, "m": m,
            "mantissa": _fmt_float(v, cfg.prec), "scale": _fmt_float(scale, cfg.prec),
            "ln_asym": "nan" if ln is None else _fmt_float(ln, cfg.prec),
        })
    return rows


def cmd_compare(cfg: RunConfig) -> list[dict]:
    ns = [n for n in cfg.n_values if n >= 1]
    if not ns:
        raise UsageError("compare needs n >= 1")
    tasks = [(f, m, n, cfg.terms, cfg.N, cfg.prec) for f in cfg.families for n in ns for m in range(cfg.m_max + 1)]
    results = _map(_asym_row, tasks, cfg.threads)
    rows = []
    with mpmath.workprec(cfg.prec):
        for (f, m, n, *_), (v, scale, ln) in zip(tasks, results):
            count = rank_count(f, m, n, max_trunc=max(cfg.trunc, n))
            ln_exact = mpmath.log(count) if count > 0 else None
            if ln is None or ln_exact is None:
                gap = None
            else:
                gap = abs(1 - mpmath.exp(ln - ln_exact))
            rows.append({
                "family": f.value.lower(), "n": n, "m": m,
                "exact": str(count),
                "ln_exact": "nan" if ln_exact is None else _fmt_float(ln_exact, cfg.prec),
                "ln_asym": "nan" if ln is None else _fmt_float(ln, cfg.prec),
                "rel_gap": "nan" if gap is None else _fmt_float(gap, cfg.prec),
            })
    return rows


def _check(rows, suite, item, ok, detail=""):
    rows.append({"suite": suite, "item": item, "status": "PASS" if ok else "FAIL", "detail": detail})


def onset(family, j: int, m: int, n_max: int, max_trunc: int):
    """Smallest n0 with count(j, n) > count(m, n) for all n0 <= n <= n_max, or None."""
    n0 = None
    for n in range(n_max, 0, -1):
        if rank_count(family, j, n, max_trunc) > rank_count(family, m, n, max_trunc):
            n0 = n
        else:
            break
    return n0


def verify(suite: str, cfg: RunConfig) -> list[dict]:
    rows: list[dict] = []
    n_max = max(cfg.n_values)
    if suite == "identities":
        for f in cfg.families:
            rep = check_identity(f, cfg.trunc)
            _check(rows, suite, f.value.lower(), bool(rep), str(rep))
        rep = check_crank_identity(min(cfg.trunc, 100))
        _check(rows, suite, "crank", bool(rep), str(rep))
    elif suite == "symmetry":
        for f in cfg.families:
            bad = [n for n in range(n_max + 1)
                   if any(c != rank_row(f, n, max(cfg.trunc, n)).get(-m, 0)
                          for m, c in rank_row(f, n, max(cfg.trunc, n)).items())]
            _check(rows, suite, f.value.lower(), not bad, f"n<={n_max}" + (f" asymmetric at {bad[:5]}" if bad else ""))
    elif suite == "oracle":
        top = min(n_max, 30)
        for f in cfg.families:
            bad = []
            for n in range(1 if f is Family.NU else 0, top + 1):
                if enumerate_family(f.value, n).counts != {m: c for m, c in sorted(rank_row(f, n).items())}:
                    bad.append(n)
            _check(rows, suite, f.value.lower(), not bad, f"n<={top}" + (f" mismatch at {bad}" if bad else ""))
    elif suite == "inequalities":
        for f in cfg.families:
            for m in range(1, cfg.m_max + 1):
                for j in range(m):
                    n0 = onset(f, j, m, n_max, max(cfg.trunc, n_max))
                    rows.append({
                        "suite": suite, "item": f"{f.value.lower()} j={j} m={m}",
                        "status": "PASS" if n0 is not None else "FAIL",
                        "detail": f"n0={n0}" if n0 is not None else "FAIL-AT-END",
                    })
    elif suite == "coefficients":
        for f in cfg.families:
            N = asym.COROLLARY_ORDER[f]
            bad = [m for m in range(cfg.m_max + 1)
                   if asym.theorem_series(f, m, N).as_dict() != asym.corollary_series(f, m).as_dict()]
            _check(rows, suite, f.value.lower(), not bad, f"N={N}" + (f" differs at m={bad}" if bad else ""))
    elif suite == "kernels":
        for check in KERNEL_CHECKS:
            for r in kernel_check(check, cfg):
                _check(rows, suite, f"{check} {r['case']}", r["status"] == "PASS", r["detail"])
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return rows


def _slope(xs, ys):
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


def kernel_check(check: str, cfg: RunConfig) -> list[dict]:
    from fractions import Fraction

    from . import kernels as K

    prec = cfg.prec
    rows = []
    if check == "partial-theta":
        ys = cfg.extra.get("ys", (8, 16, 32))
        for d, k in ((1, 4), (3, 4), (Fraction(1, 2), 2), (Fraction(3, 2), 2)):
            for z in (0, Fraction(1, 8 * k)):
                for N in (2, 3, 4):
                    with mpmath.workprec(prec):
                        zz = mpmath.mpf(z.numerator) / z.denominator if z else mpmath.mpf(0)
                        errs = []
                        for Y in ys:
                            tau = mpmath.mpc(0, mpmath.mpf(1) / Y)
                            errs.append(abs(K.partial_theta_direct(d, k, zz, tau, prec)
                                            - K.partial_theta_expansion(d, k, zz, tau, N, prec)))
                        target = 2 ** (N + 1)
                        ratios = [errs[i] / errs[i + 1] for i in range(len(errs) - 1)]
                        ok = all(target / 1.5 <= r <= target * 1.5 for r in ratios)
                    rows.append({"case": f"d={d} k={k} z={z} N={N}", "status": "PASS" if ok else "FAIL",
                                 "detail": "ratios " + ", ".join(mpmath.nstr(r, 4) for r in ratios) + f" target {target}"})
    elif check == "moments":
        a = mpmath.mpf(1) / 16
        for name, fn in (("I", K.kernel_I), ("K", K.kernel_K)):
            for l in (0, 1, 2):
                with mpmath.workprec(prec):
                    q, c = fn(l, a, mpmath.mpc(0, mpmath.mpf(1) / 100), prec)
                    rel = abs(q - c) / abs(c)
                    Ys = (100, 200, 300, 400)
                    res = [mpmath.log(abs(_moment_residual(fn, l, a, Y, max(prec, 256)))) for Y in Ys]
                    sl = _slope([mpmath.mpf(Y) for Y in Ys], res)
                    target = -mpmath.pi * a
                    ok_rel = rel <= mpmath.mpf("1e-6")
                    ok_slope = abs(sl / target - 1) <= mpmath.mpf("0.2")
                rows.append({"case": f"{name} l={l} closed form", "status": "PASS" if ok_rel else "FAIL",
                             "detail": f"relative {mpmath.nstr(rel, 3)} (limit 1e-6)"})
                rows.append({"case": f"{name} l={l} residual slope", "status": "PASS" if ok_slope else "FAIL",
                             "detail": f"slope {mpmath.nstr(sl, 5)} vs {mpmath.nstr(target, 5)}"})
    elif check == "wright":
        k = 2
        for s in (1, 2, 3):
            with mpmath.workprec(prec):
                ns = (25, 100, 400)
                lds, imag_ok = [], True
                for n in ns:
                    c, b = K.wright_P(s, k, n, prec)
                    imag_ok &= abs(c.imag) <= mpmath.mpf(2) ** (-prec + 12) * abs(c)
                    lds.append(mpmath.log(abs(c.real - b)))
                sl = _slope([mpmath.sqrt(n) for n in ns], lds)
                bound = mpmath.pi / 2 * mpmath.sqrt(mpmath.mpf(3 * k) / 2)
            ok = imag_ok and sl <= bound
            rows.append({"case": f"s={s} k={k}", "status": "PASS" if ok else "FAIL",
                         "detail": f"rate {mpmath.nstr(sl, 5)} <= {mpmath.nstr(bound, 5)}; imag negligible: {imag_ok}"})
    else:
        raise UsageError(f"unknown kernel check {check!r}")
    return rows


def _moment_residual(fn, l, a, Y, prec):
    q, c = fn(l, a, mpmath.mpc(0, mpmath.mpf(1) / Y), prec)
    return q - c


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=FAMILY_CHOICES, type=str.lower)
    common.add_argument("--m-max", type=int)
    common.add_argument("--n-min", type=int)
    common.add_argument("--n-max", type=int)
    common.add_argument("--n-values", help="comma-separated weights, overrides --n-min/--n-max")
    common.add_argument("--trunc", type=int)
    common.add_argument("--precision-bits", type=int, help=f"default 192; env {PREC_ENV}")
    common.add_argument("--terms", choices=("corollary", "theorem", "near-pole"))
    common.add_argument("--N", type=int, dest="N")
    common.add_argument("--format", choices=("csv", "json", "text"))
    common.add_argument("--out")
    common.add_argument("--threads", type=int)
    common.add_argument("--config", help="key = value file with defaults")

    p = argparse.ArgumentParser(prog="unimodal-ranks", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("exact", parents=[common], help="exact counts (n, m, count)")
    sub.add_parser("asymptotic", parents=[common], help="evaluate the asymptotic series")
    sub.add_parser("compare", parents=[common], help="asymptotic series vs exact counts")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    k = sub.add_parser("kernels", parents=[common], help="numeric kernel checks")
    k.add_argument("check", choices=KERNEL_CHECKS)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "exact":
            rows = cmd_exact(cfg)
        elif args.command == "asymptotic":
            rows = cmd_asymptotic(cfg)
        elif args.command == "compare":
            rows = cmd_compare(cfg)
        elif args.command == "verify":
            rows = verify(args.suite, cfg)
        else:
            rows = [dict(r) for r in kernel_check(args.check, cfg)]
    except (UsageError, SeriesError) as exc:
        parser.exit(2, f"unimodal-ranks: error: {exc}\n")
    emit(rows, cfg)
    failed = [r for r in rows if r.get("status") == "FAIL"]
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
