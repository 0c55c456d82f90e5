"""Command-line front end: exact reports as text or canonical JSON.

Exit codes: 0 success, 1 invalid input, 2 internal consistency failure.
Rationals serialize as {"num": "...", "den": "..."} decimal strings and
divisor-indexed vectors as [{"d": ..., "c": ...}] in ascending divisor
order, so identical inputs always produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

from .arith import divisors_of, is_prime, prime_divisors, primes_upto
from .classifier import enumerate_data, rational_eisenstein_primes
from .classlattice import (
    class_order,
    closed_form_order,
    is_principal,
    lambda_inverse,
    lambda_matrix,
    mat_mul,
    mat_vec,
    r_vector,
    solve_lambda,
)
from .cusps import (
    ConsistencyError,
    RationalCuspDivisor,
    alpha_ram,
    beta_ram,
    covering_degree,
    cusp_count,
    enumerate_cusps,
    alpha_image,
    beta_image,
)
from .eisq import build_qexp, eigen_check, residue_closed, residue_table
from .heckediv import (
    EisensteinDatum,
    NotCovered,
    build_c_divisor,
    epsilon,
    hecke_delta,
    hecke_delta_closed,
)

__all__ = ["main", "run_sweep", "to_json"]


def to_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _rat(x) -> dict:
    f = Fraction(x)
    return {"num": str(f.numerator), "den": str(f.denominator)}


def _vec(pairs) -> list:
    return [{"d": d, "c": _rat(c)} for d, c in sorted(pairs)]


def _matrix_json(rows) -> list:
    return [[_rat(x) for x in row] for row in rows]


def _render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(value, dict):
        if set(value) == {"num", "den"}:
            return [f"{pad}{value['num']}/{value['den']}"]
        for key in sorted(value):
            sub = value[key]
            if isinstance(sub, dict) and set(sub) == {"num", "den"}:
                lines.append(f"{pad}{key}: {sub['num']}/{sub['den']}")
            elif isinstance(sub, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(sub, indent + 1))
            else:
                lines.append(f"{pad}{key}: {sub}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict) and set(item) == {"d", "c"}:
                lines.append(f"{pad}{item['d']} -> {item['c']['num']}/{item['c']['den']}")
            elif isinstance(item, (dict, list)):
                lines.extend(_render_text(item, indent))
                lines.append(f"{pad}-")
            else:
                lines.append(f"{pad}{item}")
    else:
        lines.append(f"{pad}{value}")
    return lines


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on bad input, not argparse's 2
        self.exit(1, f"{self.prog}: error: {message}\n")


def _datum(args) -> EisensteinDatum:
    return EisensteinDatum(args.N, args.M, args.D)


def _parse_divisor(n: int, text: str) -> RationalCuspDivisor:
    coeffs: dict[int, int] = {}
    for part in text.split(","):
        level, _, value = part.partition(":")
        d = int(level.strip())
        coeffs[d] = coeffs.get(d, 0) + int(value.strip())
    return RationalCuspDivisor.from_dict(n, coeffs)


def cmd_cusps(args) -> tuple[dict, int]:
    cusps = enumerate_cusps(args.N)
    outputs = {
        "count": len(cusps),
        "cusps": [{"d": c.d, "x": c.x} for c in cusps],
    }
    consistency = {"count_matches_formula": len(cusps) == cusp_count(args.N)}
    return {"outputs": outputs, "consistency": consistency}, 0


def cmd_lambda(args) -> tuple[dict, int]:
    rows = lambda_inverse(args.N) if args.inverse else lambda_matrix(args.N)
    outputs = {
        "divisors": list(divisors_of(args.N)),
        "inverse": bool(args.inverse),
        "rows": _matrix_json(rows),
    }
    return {"outputs": outputs, "consistency": {}}, 0


def cmd_cdivisor(args) -> tuple[dict, int]:
    div = build_c_divisor(_datum(args))
    outputs = {
        "coefficients": _vec((d, Fraction(c)) for d, c in div.coeffs),
        "degree": div.degree(),
    }
    return {"outputs": outputs, "consistency": {"degree_zero": div.degree() == 0}}, 0


def cmd_order(args) -> tuple[dict, int]:
    datum = _datum(args)
    outputs: dict = {}
    consistency: dict = {}
    engine = closed = None
    if args.method in ("lattice", "both"):
        engine = class_order(datum.n, build_c_divisor(datum))
        outputs["engine"] = engine
    if args.method in ("closed", "both"):
        try:
            closed = closed_form_order(datum)
        except NotCovered:
            closed = None
        outputs["closed"] = closed
    outputs["order"] = engine if engine is not None else closed
    code = 0
    if args.method == "both":
        match = None if closed is None else (engine == closed)
        consistency["engine_closed_match"] = match
        if match is False:
            code = 2
    return {"outputs": outputs, "consistency": consistency}, code


def cmd_residues(args) -> tuple[dict, int]:
    datum = _datum(args)
    table = residue_table(datum)
    at_inf, at_ml = residue_closed(datum)
    ml = datum.m * datum.l_part
    a0 = build_qexp(datum, 4).a(0)
    outputs = {
        "residues": _vec(table.res),
        "closed_at_infinity": _rat(at_inf),
        "closed_at_level_ml": _rat(at_ml),
        "level_ml": ml,
    }
    consistency = {
        "weighted_sum_zero": table.weighted_sum() == 0,
        "closed_matches_infinity": table.at_level(datum.n) == at_inf,
        "closed_matches_level_ml": table.at_level(ml) == at_ml,
        "normalization_link": table.at_level(datum.n) == -24 * a0,
    }
    code = 0 if all(consistency.values()) else 2
    return {"outputs": outputs, "consistency": consistency}, code


def cmd_qexp(args) -> tuple[dict, int]:
    f = build_qexp(_datum(args), args.prec)
    outputs = {
        "level": f.n,
        "precision": f.prec,
        "coefficients": [_rat(a) for a in f.coeffs],
    }
    return {"outputs": outputs, "consistency": {}}, 0


def cmd_hecke(args) -> tuple[dict, int]:
    if not is_prime(args.p):
        raise ValueError(f"{args.p} is not prime")
    div = _parse_divisor(args.N, args.divisor)
    image = hecke_delta(div, args.p)
    outputs = {
        "image": _vec((d, Fraction(c)) for d, c in image.coeffs),
        "input": _vec((d, Fraction(c)) for d, c in div.coeffs),
    }
    return {"outputs": outputs, "consistency": {}}, 0


def cmd_classify(args) -> tuple[dict, int]:
    primes = rational_eisenstein_primes(args.N, args.ell)
    outputs = {
        "primes": [
            {
                "ell": e.ell,
                "M": e.datum.m,
                "D": e.datum.d_part,
                "index": e.index_n,
                "hypothesis_ok": e.hypothesis_ok,
                "new_candidate": e.new_candidate,
            }
            for e in primes
        ]
    }
    return {"outputs": outputs, "consistency": {}}, 0


def cmd_sweep(args) -> tuple[dict, int]:
    report, ok = run_sweep(args.max_N)
    return {"outputs": report, "consistency": {"all_invariants_hold": ok}}, 0 if ok else 2


def run_sweep(max_n: int, prec: int = 24, qmax: int = 5) -> tuple[dict, bool]:
    """Run the cross-module invariant suite for every level up to max_n."""
    failures: list[str] = []
    counts = {"levels": 0, "data": 0, "checks": 0}

    def check(flag: bool, label: str) -> None:
        counts["checks"] += 1
        if not flag:
            failures.append(label)

    for n in range(1, max_n + 1):
        counts["levels"] += 1
        check(len(enumerate_cusps(n)) == cusp_count(n), f"cusp count at {n}")
        for p in primes_upto(7):
            if n * p > 400:
                continue
            deg = covering_degree(n, p)
            afibers: dict = {}
            bfibers: dict = {}
            for c in enumerate_cusps(n * p):
                afibers[alpha_image(c, p)] = afibers.get(alpha_image(c, p), 0) + alpha_ram(c, p)
                bfibers[beta_image(c, p)] = bfibers.get(beta_image(c, p), 0) + beta_ram(c, p)
            for c in enumerate_cusps(n):
                check(afibers.get(c) == deg, f"alpha fiber degree at N={n}, p={p}")
                check(bfibers.get(c) == deg, f"beta fiber degree at N={n}, p={p}")
        ident = mat_mul(lambda_matrix(n), lambda_inverse(n))
        divs = divisors_of(n)
        check(
            all(
                ident[i][j] == (1 if i == j else 0)
                for i in range(len(divs))
                for j in range(len(divs))
            ),
            f"Lambda inverse at {n}",
        )
        rhs = tuple(Fraction((-1) ** i * (i + 1)) for i in range(len(divs)))
        check(
            solve_lambda(n, rhs) == mat_vec(lambda_inverse(n), rhs),
            f"solver agreement at {n}",
        )
        for p in prime_divisors(n):
            for d in divs:
                try:
                    expected = hecke_delta_closed(d, p, n)
                except NotCovered:
                    continue
                check(
                    hecke_delta(RationalCuspDivisor.from_dict(n, {d: 1}), p) == expected,
                    f"case table at N={n}, p={p}, d={d}",
                )
        for datum in enumerate_data(n):
            counts["data"] += 1
            div = build_c_divisor(datum)
            order = class_order(n, div)
            try:
                check(closed_form_order(datum) == order, f"order of {datum}")
            except NotCovered:
                pass
            squarefree_m = math.gcd(datum.m, datum.d_part) == 1
            if squarefree_m:
                check(
                    mat_vec(lambda_matrix(n), r_vector(datum))
                    == tuple(Fraction(c) for c in div.as_vector()),
                    f"exponent vector of {datum}",
                )
            for p in [q for q in divisors_of(n) if is_prime(q)]:
                image = hecke_delta(div, p)
                eps = epsilon(datum, p)
                if squarefree_m:
                    check(image == eps * div, f"divisor eigenvalue of {datum} at {p}")
                else:
                    check(
                        is_principal(n, image - eps * div),
                        f"class eigenvalue of {datum} at {p}",
                    )
            table = residue_table(datum)
            at_inf, at_ml = residue_closed(datum)
            check(table.weighted_sum() == 0, f"residue sum of {datum}")
            check(table.at_level(n) == at_inf, f"residue at infinity of {datum}")
            check(
                table.at_level(datum.m * datum.l_part) == at_ml,
                f"residue at level ML of {datum}",
            )
            check(
                table.at_level(n) == -24 * build_qexp(datum, 4).a(0),
                f"residue normalization of {datum}",
            )
            check(eigen_check(datum, prec, qmax).passed, f"eigenform checks of {datum}")
    report = {
        "max_n": max_n,
        "levels": counts["levels"],
        "data": counts["data"],
        "checks": counts["checks"],
        "failures": failures,
    }
    return report, not failures


_COMMANDS = {
    "cusps": cmd_cusps,
    "lambda": cmd_lambda,
    "cdivisor": cmd_cdivisor,
    "order": cmd_order,
    "residues": cmd_residues,
    "qexp": cmd_qexp,
    "hecke": cmd_hecke,
    "classify": cmd_classify,
    "sweep": cmd_sweep,
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="cuspidal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, needs_level: bool = True):
        p = sub.add_parser(name)
        if needs_level:
            p.add_argument("N", type=int)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--timing", action="store_true")
        return p

    add("cusps")
    p = add("lambda")
    p.add_argument("--inverse", action="store_true")
    for name in ("cdivisor", "order", "residues", "qexp"):
        p = add(name)
        p.add_argument("--M", type=int, required=True)
        p.add_argument("--D", type=int, default=1)
        if name == "order":
            p.add_argument("--method", choices=("closed", "lattice", "both"), default="both")
        if name == "qexp":
            p.add_argument("--prec", type=int, default=60)
    p = add("hecke")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--divisor", type=str, required=True)
    p = add("classify")
    p.add_argument("--ell", type=int, default=None)
    p = add("sweep", needs_level=False)
    p.add_argument("--max-N", dest="max_N", type=int, required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        body, code = _COMMANDS[args.command](args)
    except (ValueError, KeyError) as exc:
        print(f"cuspidal: error: {exc}", file=sys.stderr)
        return 1
    except (ConsistencyError, NotCovered) as exc:
        print(f"cuspidal: consistency failure: {exc}", file=sys.stderr)
        return 2
    inputs = {
        k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format", "timing")
    }
    report = {
        "command": args.command,
        "inputs": inputs,
        "outputs": body["outputs"],
        "consistency": body["consistency"],
    }
    if args.timing:
        report["timing_ms"] = int((time.perf_counter() - started) * 1000)
    if args.format == "json":
        print(to_json(report))
    else:
        print("\n".join(_render_text(report)))
    return code


if __name__ == "__main__":
    sys.exit(main())
