"""Survey rational Eisenstein primes for every level up to a bound.

Prints one line per emitted (ell, M, D) with its index and flags; levels
with no candidates are skipped.  Useful for eyeballing how the candidates
thin out as the hypotheses bite.
"""

import argparse

from cuspidal.classifier import rational_eisenstein_primes


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-N", dest="max_n", type=int, default=60)
    parser.add_argument("--ell", type=int, default=None)
    args = parser.parse_args()

    print(f"{'N':>5} {'ell':>4} {'M':>5} {'D':>4} {'index':>6}  flags")
    for n in range(2, args.max_n + 1):
        for e in rational_eisenstein_primes(n, args.ell):
            flags = []
            if e.hypothesis_ok:
                flags.append("hyp-ok")
            if e.new_candidate:
                flags.append("new?")
            print(
                f"{n:>5} {e.ell:>4} {e.datum.m:>5} {e.datum.d_part:>4} "
                f"{e.index_n:>6}  {' '.join(flags)}"
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
