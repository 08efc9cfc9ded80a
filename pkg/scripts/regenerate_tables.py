"""Rebuild every quadric table row by closure and print order and recognized family."""
import argparse
import time

from cremona.quadric import TABLE_ROWS, dihedral_rows, verify_table_row


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--conductor", type=int, default=20)
    ap.add_argument("--cap", type=int, default=8000)
    ap.add_argument("--dihedral", type=int, nargs="*", default=[3, 4, 5],
                    help="values of n for the D_n rows (conductor is multiplied by n)")
    args = ap.parse_args()
    rows = [(r, args.conductor) for r in TABLE_ROWS]
    rows += [(r, args.conductor * n) for n in args.dihedral for r in dihedral_rows(n)]
    print(f"{'row':<14} {'listed':>7} {'closure':>7}  family")
    for row, N in rows:
        t = time.time()
        order, fam = verify_table_row(row, conductor=N, cap=args.cap)
        mark = "" if order == row.order else "  MISMATCH"
        print(f"{row.name:<14} {row.order:>7} {order:>7}  {fam}  ({time.time() - t:.2f} s){mark}")


if __name__ == "__main__":
    main()
