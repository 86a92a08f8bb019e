"""Bundled corpus of small finite groups as Cayley tables.

``python3 -m girthlab.corpus [--out DIR]`` regenerates the files from the
constructions below; :func:`load_corpus` reads them back and checks the
manifest checksums.  ``GIRTHLAB_CORPUS`` overrides the corpus directory.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .errors import CorpusMissing, ValidationError
from .finite import CayleyTable, closure_of, table_from_elements
from .oracles import FiniteGroup

DEFAULT_DIR = Path(__file__).resolve().parent / "data" / "corpus"
MANIFEST = "manifest.json"


@dataclass(frozen=True)
class Construction:
    identity: object
    mul: Callable
    gens: tuple
    description: str


# -- constructions ----------------------------------------------------------------


def cyclic(n: int) -> Construction:
    return Construction(0, lambda x, y: (x + y) % n, (1 % n,), f"cyclic group of order {n}")


def dihedral(n: int) -> Construction:
    # (k, f) = (ab)^k a^f, a = (0, 1), b = (-1, 1)
    def mul(x, y):
        k = x[0] - y[0] if x[1] else x[0] + y[0]
        return (k % n, x[1] ^ y[1])

    return Construction((0, 0), mul, ((0, 1), ((n - 1) % n, 1)), f"dihedral group of order {2 * n}")


def _perm_mul(x, y):
    # apply y first, then x
    return tuple(x[i] for i in y)


def symmetric(n: int) -> Construction:
    ident = tuple(range(n))
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple(range(1, n)) + (0,)
    return Construction(ident, _perm_mul, (cycle, swap), f"symmetric group on {n} points")


def alternating4() -> Construction:
    return Construction((0, 1, 2, 3), _perm_mul, ((1, 2, 0, 3), (1, 0, 3, 2)), "alternating group on 4 points")


def quaternion() -> Construction:
    def mul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    return Construction((1, 0, 0, 0), mul, ((0, 1, 0, 0), (0, 0, 1, 0)), "quaternion group of order 8")


def dicyclic3() -> Construction:
    # <x, y | x^6, y^2 = x^3, y x y^-1 = x^-1>; (k, f) = x^k y^f
    def mul(p, q):
        k, f = p
        l, g = q
        if not f:
            return ((k + l) % 6, g)
        if g:
            return ((k - l + 3) % 6, 0)
        return ((k - l) % 6, 1)

    return Construction((0, 0), mul, ((1, 0), (0, 1)), "dicyclic group of order 12")


def sl23() -> Construction:
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)

    return Construction((1, 0, 0, 1), mul, ((1, 1, 0, 1), (0, 2, 1, 0)), "SL(2,3), order 24")


def direct(g: Construction, h: Construction) -> Construction:
    gens = tuple((x, h.identity) for x in g.gens) + tuple((g.identity, y) for y in h.gens)
    return Construction(
        (g.identity, h.identity),
        lambda x, y: (g.mul(x[0], y[0]), h.mul(x[1], y[1])),
        gens,
        f"direct product ({g.description}) x ({h.description})",
    )


def constructions() -> dict[str, Construction]:
    out: dict[str, Construction] = {}
    for n in range(2, 25):
        out[f"C{n}"] = cyclic(n)
    for n in range(3, 13):
        out[f"D{n}"] = dihedral(n)
    out["V4"] = direct(cyclic(2), cyclic(2))
    out["S3"] = symmetric(3)
    out["S4"] = symmetric(4)
    out["A4"] = alternating4()
    out["Q8"] = quaternion()
    out["Dic3"] = dicyclic3()
    out["SL23"] = sl23()
    out["C2xC4"] = direct(cyclic(2), cyclic(4))
    out["C2xC6"] = direct(cyclic(2), cyclic(6))
    out["C2xC8"] = direct(cyclic(2), cyclic(8))
    out["C3xC3"] = direct(cyclic(3), cyclic(3))
    out["C4xC4"] = direct(cyclic(4), cyclic(4))
    out["C2xC2xC2"] = direct(direct(cyclic(2), cyclic(2)), cyclic(2))
    out["C2xC2xC4"] = direct(direct(cyclic(2), cyclic(2)), cyclic(4))
    out["C2xD4"] = direct(cyclic(2), dihedral(4))
    out["C2xQ8"] = direct(cyclic(2), quaternion())
    out["C2xS3"] = direct(cyclic(2), symmetric(3))
    out["C3xS3"] = direct(cyclic(3), symmetric(3))
    out["C2xA4"] = direct(cyclic(2), alternating4())
    out["C3xQ8"] = direct(cyclic(3), quaternion())
    out["C2xC2xC6"] = direct(direct(cyclic(2), cyclic(2)), cyclic(6))
    out["C4xS3"] = direct(cyclic(4), symmetric(3))
    return out


def build_table(c: Construction) -> tuple[CayleyTable, list[int]]:
    elements = closure_of(list(c.gens), c.mul, c.identity)
    table = table_from_elements(elements, c.mul)
    index = {e: i for i, e in enumerate(elements)}
    return table, [index[g] for g in c.gens]


# -- files ----------------------------------------------------------------------------


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def write_corpus(directory) -> dict:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for name, c in constructions().items():
        table, gens = build_table(c)
        text = table.dumps()
        fname = f"{name}.cayley"
        (directory / fname).write_text(text)
        entries.append(
            {
                "name": name,
                "file": fname,
                "order": table.order,
                "gens": gens,
                "description": c.description,
                "sha256": _sha(text),
            }
        )
    manifest = {"format": 1, "groups": entries}
    (directory / MANIFEST).write_text(json.dumps(manifest, indent=1) + "\n")
    return manifest


def corpus_dir(path=None) -> Path:
    if path is not None:
        return Path(path)
    env = os.environ.get("GIRTHLAB_CORPUS")
    return Path(env) if env else DEFAULT_DIR


def read_manifest(path=None) -> dict:
    d = corpus_dir(path)
    try:
        return json.loads((d / MANIFEST).read_text())
    except FileNotFoundError:
        raise CorpusMissing(f"no corpus manifest at {d / MANIFEST}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"corpus manifest {d / MANIFEST} is not valid JSON: {exc}") from None


def corpus_checksum(path=None) -> str:
    d = corpus_dir(path)
    try:
        return _sha((d / MANIFEST).read_text())
    except FileNotFoundError:
        raise CorpusMissing(f"no corpus manifest at {d / MANIFEST}") from None


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    table: CayleyTable
    gens: tuple
    description: str

    @property
    def order(self) -> int:
        return self.table.order

    def group(self, names=None) -> FiniteGroup:
        return FiniteGroup(self.table, list(self.gens), names=names, label=f"corpus={self.name}")


def _load_entry(d: Path, e: dict) -> CorpusEntry:
    f = d / e["file"]
    try:
        text = f.read_text()
    except FileNotFoundError:
        raise CorpusMissing(f"corpus file {f} is missing") from None
    if _sha(text) != e["sha256"]:
        raise ValidationError(f"corpus file {f} does not match its manifest checksum")
    table = CayleyTable.loads(text, source=str(f))
    if table.order != e["order"]:
        raise ValidationError(f"corpus file {f} has order {table.order}, manifest says {e['order']}")
    return CorpusEntry(e["name"], table, tuple(e["gens"]), e.get("description", ""))


def load_corpus(path=None) -> list[CorpusEntry]:
    d = corpus_dir(path)
    manifest = read_manifest(d)
    return [_load_entry(d, e) for e in manifest["groups"]]


def load_entry(name: str, path=None) -> CorpusEntry:
    d = corpus_dir(path)
    for e in read_manifest(d)["groups"]:
        if e["name"] == name:
            return _load_entry(d, e)
    raise ValidationError(f"no corpus group named {name!r}")


def main(argv=None):
    ap = argparse.ArgumentParser(prog="python3 -m girthlab.corpus", description="Regenerate the Cayley table corpus.")
    ap.add_argument("--out", default=str(DEFAULT_DIR), help="target directory")
    args = ap.parse_args(argv)
    manifest = write_corpus(args.out)
    print(f"wrote {len(manifest['groups'])} groups to {args.out}")


if __name__ == "__main__":
    main()

