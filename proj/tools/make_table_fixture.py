#!/usr/bin/env python3
"""Builds the JSON table fixture from the hand-transcribed grid.

Blank cells are zero groups. Output matches `rdc table --format json`
for the window n in [-5, 5], p in [-8, 8] (sorted keys, compact).
"""
import json
import re
import sys

NMIN, NMAX, PMIN, PMAX = -5, 5, -8, 8


def group(token):
    g = {"circle_factors": [], "free_rank": 0, "real_rank": 0, "torsion": []}
    if token in (".", "0"):
        return g
    if token == "Z^x":
        g["torsion"] = [2]
    elif token == "R^x":
        g["real_rank"] = 1
        g["torsion"] = [2]
    elif re.fullmatch(r"2?Z\(-?\d+\)", token):
        g["free_rank"] = 1
    elif m := re.fullmatch(r"R/Z\((\d+)\)", token):
        g["circle_factors"] = [int(m.group(1))]
    else:
        raise ValueError(f"unknown cell {token!r}")
    return g


def main(grid_path, out_path):
    rows = {}
    with open(grid_path) as f:
        for line in f:
            if not line.strip() or line.startswith("#"):
                continue
            label, cells = line.split("|")
            tokens = cells.split()
            if len(tokens) != NMAX - NMIN + 1:
                raise ValueError(f"row {label.strip()} has {len(tokens)} cells")
            rows[int(label)] = tokens
    if sorted(rows) != list(range(PMIN, PMAX + 1)):
        raise ValueError("grid rows do not cover the window")
    cells = []
    for p in range(PMAX, PMIN - 1, -1):
        for i, n in enumerate(range(NMIN, NMAX + 1)):
            cells.append({"group": group(rows[p][i]), "n": n, "p": p})
    doc = {"cells": cells, "theory": "deligne",
           "window": {"nmax": NMAX, "nmin": NMIN, "pmax": PMAX, "pmin": PMIN}}
    with open(out_path, "w") as f:
        f.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
