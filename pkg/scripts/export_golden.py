"""Write each golden document to DIR/<name>.json for use with the command-line tool."""
import argparse
import json
import pathlib

from cremona.golden import golden_documents


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("dir", nargs="?", default="golden_json")
    args = ap.parse_args()
    out = pathlib.Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    docs = golden_documents()
    for doc in docs:
        (out / f"{doc['name']}.json").write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    print(f"wrote {len(docs)} documents to {out}")


if __name__ == "__main__":
    main()
