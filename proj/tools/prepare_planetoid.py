#!/usr/bin/env python3
"""Converts the LINQS Cora or Citeseer release into geoap input files.

    prepare_planetoid.py cora.content cora.cites out/cora

Writes out/features.txt (id + binary word vector), out/labels.txt (id + class)
and out/edges.txt. Citation lines naming a paper that has no .content row are
dropped (Citeseer has a handful) and reported on stderr.
"""
import sys
from pathlib import Path


def main():
    if len(sys.argv) != 4:
        sys.exit(__doc__)
    content, cites, out = Path(sys.argv[1]), Path(sys.argv[2]), Path(sys.argv[3])
    out.mkdir(parents=True, exist_ok=True)
    known = set()
    with content.open() as src, (out / "features.txt").open("w") as feat, (out / "labels.txt").open("w") as lab:
        for line in src:
            parts = line.split()
            if not parts:
                continue
            pid, words, cls = parts[0], parts[1:-1], parts[-1]
            known.add(pid)
            feat.write(pid + " " + " ".join(words) + "\n")
            lab.write(f"{pid} {cls}\n")
    dropped = 0
    with cites.open() as src, (out / "edges.txt").open("w") as edges:
        for line in src:
            parts = line.split()
            if len(parts) != 2:
                continue
            if parts[0] in known and parts[1] in known:
                edges.write(f"{parts[0]} {parts[1]}\n")
            else:
                dropped += 1
    print(f"{len(known)} papers, {dropped} citations to unknown papers dropped", file=sys.stderr)


if __name__ == "__main__":
    main()
