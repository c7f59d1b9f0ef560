"""Sweep every braid-op sequence up to a given length and verify masking.

The op set is both adjacent exchanges, all three circles, and (for the
Ising model) the tripartite braid.  Prints the worst marginal deviation
over the whole sweep and lists any failing sequences.

Usage: python scripts/braid_survey.py [--model abelian|ising] [--max-len L] [--trials N]
"""

import argparse
import itertools

from anyonmask.braid import BraidOp, verify_invariance
from anyonmask.masker import abelian_standard_scheme, ising_cyclic_scheme


def op_set(kind: str) -> list[BraidOp]:
    ops = [
        BraidOp(kind="exchange", x=0, y=1),
        BraidOp(kind="exchange", x=1, y=2),
        BraidOp(kind="circle", x=0, y=1),
        BraidOp(kind="circle", x=0, y=2),
        BraidOp(kind="circle", x=1, y=2),
    ]
    if kind == "ising":
        ops.append(BraidOp(kind="tripartite"))
    return ops


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--model", choices=("abelian", "ising"), default="ising")
    parser.add_argument("--max-len", type=int, default=3)
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--tol", type=float, default=2e-12)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    scheme = abelian_standard_scheme() if args.model == "abelian" else ising_cyclic_scheme()
    ops = op_set(args.model)
    worst = 0.0
    worst_sequence = ""
    failures = []
    count = 0
    for length in range(1, args.max_len + 1):
        for sequence in itertools.product(ops, repeat=length):
            token = ";".join(op.token() for op in sequence)
            report = verify_invariance(
                scheme, sequence, trials=args.trials, tol=args.tol, seed=args.seed + count
            )
            if report.worst_deviation > worst:
                worst = report.worst_deviation
                worst_sequence = token
            if not report.verdict:
                failures.append(token)
            count += 1
    print(
        f"{scheme.model.name}: {count} sequences x {args.trials} trials, "
        f"worst deviation {worst:.3e} (sequence {worst_sequence})"
    )
    if failures:
        print("failing sequences:")
        for token in failures:
            print(f"  {token}")
    else:
        print(f"all sequences preserve masking within {args.tol:g}")


if __name__ == "__main__":
    main()
