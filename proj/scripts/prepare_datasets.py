#!/usr/bin/env python3
"""Extract the five UCI benchmark datasets from PyPI wheels that bundle them.

Every output file is headerless CSV with the class label in the last column.

    python3 scripts/prepare_datasets.py [--out data] [--wheels DIR]

Sources (wheel -> member):
  Py_FS            Py_FS/datasets/database/UCI/{Ionosphere,Sonar}.csv
  common_datasets  common_datasets/data/classification/dermatology/dermatology.dat
                   common_datasets/data/classification/spect_f/SPECTF.train.txt
                   common_datasets/data/classification/spect_f/SPECTFincorrect.test.txt
  mil              mil/data/datasets/csv/musk1.csv
"""
import argparse
import csv
import io
import pathlib
import subprocess
import sys
import tempfile
import zipfile

WHEELS = {
    "Py_FS": "Py-FS==0.2.1",
    "common_datasets": "common-datasets==0.3.10",
    "mil": "mil==1.0.5",
}


def fetch(wheel_dir: pathlib.Path, key: str) -> zipfile.ZipFile:
    hits = sorted(wheel_dir.glob(f"{key}-*.whl"))
    if not hits:
        subprocess.check_call([sys.executable, "-m", "pip", "download", "--no-deps",
                               "-q", "-d", str(wheel_dir), WHEELS[key]])
        hits = sorted(wheel_dir.glob(f"{key}-*.whl"))
    return zipfile.ZipFile(hits[-1])


def rows(zf: zipfile.ZipFile, member: str):
    text = zf.read(member).decode("utf-8")
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("@"):
            continue
        out.append([c.strip() for c in line.split(",")])
    return out


def write(path: pathlib.Path, data):
    with path.open("w", newline="") as f:
        csv.writer(f, lineterminator="\n").writerows(data)
    print(f"{path}: {len(data)} rows, {len(data[0]) - 1} features")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data")
    ap.add_argument("--wheels", default=None)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    wheel_dir = pathlib.Path(args.wheels or tempfile.mkdtemp())

    pyfs = fetch(wheel_dir, "Py_FS")
    write(out / "ionosphere.csv", rows(pyfs, "Py_FS/datasets/database/UCI/Ionosphere.csv"))
    write(out / "sonar.csv", rows(pyfs, "Py_FS/datasets/database/UCI/Sonar.csv"))

    cds = fetch(wheel_dir, "common_datasets")
    base = "common_datasets/data/classification/"
    write(out / "dermatology.csv", rows(cds, base + "dermatology/dermatology.dat"))
    # The original SPECTF release (train + uncorrected test) has 349 instances.
    spectf = rows(cds, base + "spect_f/SPECTF.train.txt") + \
        rows(cds, base + "spect_f/SPECTFincorrect.test.txt")
    write(out / "spectf.csv", [r[1:] + r[:1] for r in spectf])

    mil = fetch(wheel_dir, "mil")
    # columns: class, molecule id, 166 features
    musk = rows(mil, "mil/data/datasets/csv/musk1.csv")
    write(out / "musk.csv", [r[2:] + r[:1] for r in musk])


if __name__ == "__main__":
    main()
