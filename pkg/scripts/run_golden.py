"""Decide every golden document and, optionally, its relabelled variants."""
import argparse
import json

from cremona.cli import run
from cremona.decider import decide
from cremona.golden import golden_documents, presentation_variants


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--variants", type=int, default=0, help="relabelled copies per document")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    failures = 0
    for doc in golden_documents():
        report, code = run("decide", json.dumps(doc))
        want = (doc["expect"]["decision"], doc["expect"]["rule"])
        got = (report.get("decision"), (report.get("reason") or {}).get("rule"))
        bad = 0
        for s, gens in presentation_variants(doc, args.variants, args.seed) if args.variants else []:
            d = decide(s, gens)
            bad += (d.verdict, d.rule.value) != want
        ok = got == want and not bad
        failures += not ok
        extra = f", {bad}/{args.variants} variants differ" if args.variants else ""
        print(f"{'ok ' if ok else 'BAD'} {doc['name']:<20} {got[0]:<17} {got[1]} (exit {code}{extra})")
    print(f"{failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
