"""Tabulate class orders of the cuspidal divisors for all data up to a bound.

For each level N and each valid datum (M, D) the engine order is printed
next to the closed-form value (or '-' where no closed form applies); any
disagreement would be a bug and is flagged loudly.
"""

import argparse

from cuspidal.classifier import enumerate_data
from cuspidal.classlattice import class_order, closed_form_order
from cuspidal.heckediv import NotCovered, build_c_divisor


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-N", dest="max_n", type=int, default=60)
    parser.add_argument("--only-nontrivial", action="store_true",
                        help="skip data whose class is principal")
    args = parser.parse_args()

    print(f"{'N':>5} {'M':>5} {'D':>4} {'engine':>7} {'closed':>7}")
    mismatches = 0
    for n in range(2, args.max_n + 1):
        for datum in enumerate_data(n):
            engine = class_order(n, build_c_divisor(datum))
            try:
                closed: object = closed_form_order(datum)
            except NotCovered:
                closed = "-"
            if args.only_nontrivial and engine == 1:
                continue
            flag = ""
            if closed != "-" and closed != engine:
                flag = "  << MISMATCH"
                mismatches += 1
            print(f"{n:>5} {datum.m:>5} {datum.d_part:>4} {engine:>7} {closed!s:>7}{flag}")
    if mismatches:
        print(f"{mismatches} mismatches")
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
