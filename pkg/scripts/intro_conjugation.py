"""Check that the quadratic involution conjugates [x(z-y) : z(x-y) : xz] to a linear map over Q(w5)."""
import argparse

from cremona.cyclo import field
from cremona.p2maps import intro_example, symbolic_conjugation_check, verify_p2_conjugation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    f, c, target = intro_example(field(5))
    rep = verify_p2_conjugation(f, c, target, args.trials, args.seed)
    deg, prop = symbolic_conjugation_check(f, c, target)
    print(f"holds: {bool(rep)}  ordering: {rep.ordering}")
    print(f"points checked: {rep.checked}, skipped: {rep.skipped}")
    print(f"composite degree before cancellation: {deg} (bound {rep.composite_degree_bound}); "
          f"proportional to target: {prop}")


if __name__ == "__main__":
    main()
