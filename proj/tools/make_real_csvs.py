#!/usr/bin/env python3
"""Regenerate data/real/*.csv.

Iris, Wine and Breast Cancer are dumped from scikit-learn's bundled copies.
Pima, Banknote and Haberman are seeded statistical surrogates with the
original shapes, feature ranges and class balance; they stand in for the
UCI/Kaggle originals so the test suite never needs network access.
"""
import csv
import numpy as np
from pathlib import Path
from sklearn import datasets

OUT = Path(__file__).resolve().parent.parent / "data" / "real"
OUT.mkdir(parents=True, exist_ok=True)


def dump(name, header, rows):
    with open(OUT / name, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        w.writerows(rows)
    print(name, len(rows), "rows")


def dump_sklearn(name, bunch, label_names=None):
    d, y = bunch.data, bunch.target
    header = [c.replace(" ", "_") for c in bunch.feature_names] + ["label"]
    labels = [label_names[t] if label_names else str(t) for t in y]
    rows = [[f"{v:.6g}" for v in row] + [lab] for row, lab in zip(d, labels)]
    dump(name, header, rows)


dump_sklearn("iris.csv", datasets.load_iris(), list(datasets.load_iris().target_names))
dump_sklearn("wine.csv", datasets.load_wine())
dump_sklearn("breast_cancer.csv", datasets.load_breast_cancer())

rng = np.random.default_rng(20260826)

# Pima Indians Diabetes surrogate: 768 x 8, 500 negative / 268 positive.
def pima():
    spec = [  # (name, neg mean, neg sd, pos mean, pos sd, low, high, int)
        ("pregnancies", 3.3, 3.0, 4.9, 3.7, 0, 17, True),
        ("glucose", 110, 26, 141, 32, 44, 199, True),
        ("blood_pressure", 68, 18, 71, 21, 24, 122, True),
        ("skin_thickness", 20, 15, 22, 17, 0, 99, True),
        ("insulin", 69, 99, 100, 138, 0, 846, True),
        ("bmi", 30.3, 7.7, 35.1, 7.3, 18.2, 67.1, False),
        ("pedigree", 0.43, 0.30, 0.55, 0.37, 0.078, 2.42, False),
        ("age", 31.2, 11.7, 37.1, 11.0, 21, 81, True),
    ]
    rows = []
    for label, count in (("0", 500), ("1", 268)):
        pos = label == "1"
        cols = []
        for _, nm, ns, pm, ps, lo, hi, integer in spec:
            v = rng.normal(pm if pos else nm, ps if pos else ns, count)
            v = np.clip(v, lo, hi)
            cols.append(np.round(v).astype(int) if integer else np.round(v, 3))
        for i in range(count):
            rows.append([str(c[i]) for c in cols] + [label])
    rng.shuffle(rows)
    dump("pima.csv", [s[0] for s in spec] + ["label"], rows)


# Banknote authentication surrogate: 1372 x 4, 762 genuine / 610 forged.
def banknote():
    spec = [
        ("variance", 2.28, 2.02, -1.87, 1.88, -7.05, 6.82),
        ("skewness", 4.26, 5.14, -0.99, 5.40, -13.77, 12.95),
        ("curtosis", 0.80, 3.24, 2.15, 5.26, -5.29, 17.93),
        ("entropy", -1.15, 2.13, -1.25, 2.07, -8.55, 2.45),
    ]
    rows = []
    for label, count in (("0", 762), ("1", 610)):
        forged = label == "1"
        cols = []
        for _, gm, gs, fm, fs, lo, hi in spec:
            v = rng.normal(fm if forged else gm, fs if forged else gs, count)
            cols.append(np.round(np.clip(v, lo, hi), 4))
        for i in range(count):
            rows.append([str(c[i]) for c in cols] + [label])
    rng.shuffle(rows)
    dump("banknote.csv", [s[0] for s in spec] + ["label"], rows)


# Haberman survival surrogate: 306 x 3, 225 survived / 81 died.
def haberman():
    rows = []
    for label, count, nodes_mean in (("1", 225, 2.8), ("2", 81, 7.5)):
        age = np.clip(np.round(rng.normal(52, 10.8, count)), 30, 83).astype(int)
        year = rng.integers(58, 70, count)
        nodes = np.clip(np.round(rng.gamma(0.9, nodes_mean, count)), 0, 52).astype(int)
        for i in range(count):
            rows.append([str(age[i]), str(year[i]), str(nodes[i]), label])
    rng.shuffle(rows)
    dump("haberman.csv", ["age", "op_year", "axillary_nodes", "label"], rows)


pima()
banknote()
haberman()
