"""Convert a ZINC export to the JSON graph format read by `gsn delta`.

Input: a pickle from the benchmarking-gnns ZINC release (a list of dicts with
`num_atom`, `atom_type` and `bond_type` entries, where `bond_type` is an
n x n matrix with 0 for no bond), or the matching torch file. Output: a JSON
array of {"n", "edges", "vertex_labels", "edge_labels"} objects.

    python scripts/zinc_to_json.py test.pickle zinc_test.json
"""

import json
import pickle
import sys


def as_list(x):
    return x.tolist() if hasattr(x, "tolist") else list(x)


def convert(mol):
    n = int(mol["num_atom"])
    atoms = [int(a) for a in as_list(mol["atom_type"])]
    bonds = as_list(mol["bond_type"])
    edges, labels = [], []
    for u in range(n):
        for v in range(u + 1, n):
            b = int(bonds[u][v])
            if b:
                edges.append([u, v])
                labels.append([u, v, b])
    return {"n": n, "edges": edges, "vertex_labels": atoms, "edge_labels": labels}


def main(src, dst):
    with open(src, "rb") as f:
        data = pickle.load(f)
    with open(dst, "w") as f:
        json.dump([convert(m) for m in data], f)


if __name__ == "__main__":
    main(*sys.argv[1:3])
