"""The bundled check suite behind ``girthlab corpus``.

Each check mirrors one acceptance criterion and reports pass/fail with a
short detail string.  Checks are tagged by area so ``--only genset`` runs
just the generating-set sweep.
"""
from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from . import __version__
from .amalgam import AmalgamPresentation, build_amalgam_witness, check_involution_lemma, find_lemma53_pair
from .corpus import corpus_checksum, load_corpus, load_entry
from .genset import KleinObstruction, find_avoiding_genset, find_nearly_avoiding_genset, profile, proper_subgroups
from .girth import EXACT, LOWER, UPPER, GirthQuery, certify_no_short_relation, girth_exact, law_upper_bound
from .hnn import (
    Classification,
    HnnPresentation,
    build_witness_set_31,
    build_witness_set_32,
    build_witness_set_dihedral,
    classify,
)
from .oracles import DihedralGroup, FreeAbelianGroup, FreeGroup, klein_four_quotient_exists
from .subgroups import FiniteSubgroup, make_subgroup, odd_word_coverage_check
from .verify import shortest_relation_length
from .words import Word, cyclic_reduce


@dataclass
class CheckResult:
    name: str
    criterion: int
    tag: str
    passed: bool
    detail: str
    elapsed: float = 0.0


@dataclass
class RunManifest:
    command: str
    inputs: dict
    results: list = field(default_factory=list)
    versions: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.results)

    def to_dict(self) -> dict:
        return asdict(self)

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def parse(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))


# -- shared fixtures ----------------------------------------------------------------------


def free_proper_hnn() -> HnnPresentation:
    F = FreeGroup(2)
    return HnnPresentation(F, make_subgroup(F, ["a"]), make_subgroup(F, ["b"]), ["b"])


def bs12() -> HnnPresentation:
    F = FreeGroup(1)
    return HnnPresentation(F, make_subgroup(F, ["a"]), make_subgroup(F, ["a^2"]), ["a^2"])


def dihedral_hnn() -> HnnPresentation:
    # A = <a, bab> = G_{0,1}, B = <b, aba> = G_{1,0}; t^-1 a t = aba, t b t^-1 = bab
    D = DihedralGroup()
    A = make_subgroup(D, ["a", "b a b"])
    B = make_subgroup(D, ["b", "a b a"])
    return HnnPresentation(D, A, B, {"a": "a b a", "b a b": "b"})


def z2_hnn() -> HnnPresentation:
    Z = FreeAbelianGroup(2)
    return HnnPresentation(Z, make_subgroup(Z, ["b^-1"]), make_subgroup(Z, ["a b^-1"]), ["a b^-1"])


def sl2z_amalgam() -> AmalgamPresentation:
    L = load_entry("C4").group(["x"])
    R = load_entry("C6").group(["y"])
    return AmalgamPresentation(L, R, make_subgroup(L, ["x^2"]), make_subgroup(R, ["y^3"]), ["y^3"])


def is_cyclic_conjugate(w: Word, target: Word) -> bool:
    core, _ = cyclic_reduce(w)
    letters = core.letters
    for cand in (target, target.inverse()):
        c = cyclic_reduce(cand)[0].letters
        if len(c) == len(letters) and any(letters[i:] + letters[:i] == c for i in range(len(letters) or 1)):
            return True
    return False


# -- the checks -----------------------------------------------------------------------------


def check_girth_dinf():
    D = DihedralGroup()
    cert = girth_exact(GirthQuery(D, ["a", "b"], 4))
    ok = cert.kind == EXACT and cert.value == 2
    return ok, f"girth(D_inf, {{a,b}}) = {cert}"


def check_odd_coverage():
    D = DihedralGroup()
    K, L = make_subgroup(D, ["a", "b a b"]), make_subgroup(D, ["b", "a b a"])
    ok = odd_word_coverage_check(K, L, 15)
    return ok, "all odd alternating words of length <= 15 lie in K u L" if ok else "coverage fails"


def check_hnn_witness():
    P = free_proper_hnn()
    parts, ok = [], True
    for r in (2, 3, 4):
        cap = min(r - 1, 5)
        cert = certify_no_short_relation(P, build_witness_set_31(P, ["a b", "b a^-1"], r), r, cap)
        ok &= cert.kind == LOWER and cert.value == cap + 1
        parts.append(f"r={r}: {cert}")
    return ok, "; ".join(parts)


def check_hnn_witness_mixed():
    P = free_proper_hnn()
    S = ["a b", "a"]
    cert = certify_no_short_relation(P, build_witness_set_32(P, S, 3), 3, 3)
    return cert.kind == LOWER and cert.value == 4, f"S = {{a b, a}}, r=3, cap 3: {cert}"


def check_dihedral_hnn():
    P = dihedral_hnn()
    W = build_witness_set_dihedral(P, 2)
    names = ", ".join(P.format(P.element(x)) for x in W)
    cert = certify_no_short_relation(P, W, 2, 3)
    return cert.kind == LOWER and cert.value == 4, f"witness {{{names}}}, r=2 cap 3: {cert}"


def check_z2_example():
    P = z2_hnn()
    cls = classify(P)
    S = find_nearly_avoiding_genset(P.base, P.A, P.B)
    prof = profile(P.base, P.A, P.B, S)
    cert = certify_no_short_relation(P, build_witness_set_31(P, S, 4), 4, 4)
    ok = cls == Classification.PROPER and prof.in_union == 0 and cert.kind == LOWER and cert.value == 5
    names = ", ".join(P.base.format(x) for x in S)
    return ok, f"{cls}; S' = {{{names}}} {prof.as_dict()}; r=4 cap 4: {cert}"


def check_laws():
    Z = FreeAbelianGroup(2)
    ub = law_upper_bound(Z, ["a", "b"], "abelian")
    ex = girth_exact(GirthQuery(Z, ["a", "b"], 6))
    P = bs12()
    meta = law_upper_bound(P, ["a", "t"], "metabelian", ["a", "t", "a^-1", "t^-1"])
    bs = girth_exact(GirthQuery(P, ["a", "t"], 6))
    target = P.parse("t^-1 a t a^-2")
    ok = (
        getattr(ub, "kind", None) == UPPER
        and ub.value == 4
        and ex.kind == EXACT
        and ex.value == 4
        and getattr(meta, "kind", None) == UPPER
        and meta.value == 16
        and bs.kind == EXACT
        and bs.value == 5
        and is_cyclic_conjugate(bs.witness, target)
    )
    return ok, f"Z^2: {ub}, {ex}; BS(1,2): metabelian {meta}, girth {bs}"


def check_avoiding_sweep(entries=None):
    entries = entries if entries is not None else load_corpus()
    bad, pairs = [], 0
    for e in entries:
        G = e.group()
        klein = klein_four_quotient_exists(G)
        all_ok = True
        for A, B in itertools.combinations_with_replacement(proper_subgroups(G), 2):
            pairs += 1
            res = find_avoiding_genset(G, A, B)
            if isinstance(res, KleinObstruction):
                all_ok = False
            elif profile(G, A, B, res).delta != len(res) or not G.table.generates(res):
                bad.append(f"{e.name}: bad avoiding set")
        if all_ok == klein:
            bad.append(f"{e.name}: property P = {all_ok} but Klein quotient = {klein}")
    return not bad, f"{len(entries)} groups, {pairs} proper pairs" + (f"; failures: {bad}" if bad else "")


def check_involution_sweep(entries=None):
    entries = entries if entries is not None else load_corpus()
    bad, count = [], 0
    for e in entries:
        G = e.group()
        for H in G.table.all_subgroups():
            count += 1
            if not check_involution_lemma(G, FiniteSubgroup.from_elements(G, H)):
                bad.append(f"{e.name}: {sorted(H)}")
    return not bad, f"{count} subgroups checked" + (f"; failures: {bad}" if bad else "")


def check_pair_sweep(entries=None):
    entries = entries if entries is not None else load_corpus()
    bad, count = [], 0
    for e in entries:
        G = e.group()
        for H in G.table.all_subgroups():
            C = FiniteSubgroup.from_elements(G, H)
            if C.index() < 3:
                continue
            count += 1
            a1, a2 = find_lemma53_pair(G, C)
            if not independent_lemma53(G.table, H, a1, a2):
                bad.append(f"{e.name}: {sorted(H)}")
    return not bad, f"{count} (A, C) pairs with index >= 3" + (f"; failures: {bad}" if bad else "")


def independent_lemma53(table, C: frozenset, a1: int, a2: int) -> bool:
    """Re-check the eight conditions straight from the Cayley table."""
    p, inv = table.product, table.inverse
    words = [
        a1,
        a2,
        p[inv[a1]][a2],
        p[a2][inv[a1]],
        p[p[inv[a1]][a2]][a1],
        p[p[a1][a2]][inv[a1]],
        p[p[inv[a2]][a1]][a2],
        p[p[a2][a1]][inv[a2]],
    ]
    return a1 != a2 and all(x not in C for x in words)


def check_amalgam():
    P = sl2z_amalgam()
    W = build_amalgam_witness(P, ["y", "y^2"], ["x"], 2, first="right")
    cert = certify_no_short_relation(P, W, 2, 2)
    return cert.kind == LOWER and cert.value == 3, f"Z/4 *_Z/2 Z/6, r=2 cap 2: {cert}"


def oracle_pairs(entries, count: int = 50, seed: int = 20240601):
    """Deterministic (group, S) sample: the stored generators, then random sets of size 1-3."""
    rng = random.Random(seed)
    out = []
    for e in entries:
        out.append((e, list(e.gens)))
    pool = [e for e in entries if e.order >= 4]
    while len(out) < count * 2:
        e = rng.choice(pool)
        k = rng.choice((1, 2, 2, 3))
        S = rng.sample(range(1, e.order), min(k, e.order - 1))
        out.append((e, S))
    rng.shuffle(out)
    return out[:count]


def check_oracle_agreement(entries=None, count: int = 50):
    entries = entries if entries is not None else load_corpus()
    bad = []
    for e, S in oracle_pairs(entries, count):
        G = e.group()
        cap = 2 * e.order + 2
        cert = girth_exact(GirthQuery(G, S, cap))
        ref = shortest_relation_length(G.table.product, S, G.table.inverse, cap)
        if cert.kind != EXACT or cert.value != ref:
            bad.append(f"{e.name} S={S}: search {cert} vs BFS {ref}")
    return not bad, f"{count} (group, S) pairs agree" if not bad else f"disagreements: {bad}"


@dataclass(frozen=True)
class Check:
    name: str
    criterion: int
    tag: str
    run: Callable


CHECKS = [
    Check("girth_dinf", 1, "girth", check_girth_dinf),
    Check("odd_coverage", 2, "subgroups", check_odd_coverage),
    Check("hnn_witness", 3, "hnn", check_hnn_witness),
    Check("hnn_witness_mixed", 4, "hnn", check_hnn_witness_mixed),
    Check("dihedral_hnn", 5, "hnn", check_dihedral_hnn),
    Check("z2_example", 6, "hnn", check_z2_example),
    Check("laws", 7, "girth", check_laws),
    Check("avoiding_sweep", 8, "genset", check_avoiding_sweep),
    Check("involution_sweep", 9, "amalgam", check_involution_sweep),
    Check("pair_sweep", 10, "amalgam", check_pair_sweep),
    Check("amalgam_certificate", 11, "amalgam", check_amalgam),
    Check("oracle_agreement", 12, "oracles", check_oracle_agreement),
]


def select(only: Optional[list[str]] = None) -> list[Check]:
    if not only:
        return list(CHECKS)
    wanted = set(only)
    out = [c for c in CHECKS if c.tag in wanted or c.name in wanted or str(c.criterion) in wanted]
    unknown = wanted - {c.tag for c in CHECKS} - {c.name for c in CHECKS} - {str(c.criterion) for c in CHECKS}
    if unknown:
        raise ValueError(f"unknown check selector(s): {sorted(unknown)}")
    return out


def run_corpus(only: Optional[list[str]] = None, path=None) -> RunManifest:
    """Run the selected checks against the corpus at ``path`` (or the default)."""
    start = time.perf_counter()
    checks = select(only)
    checksum = corpus_checksum(path)
    entries = load_corpus(path)
    manifest = RunManifest(
        command="corpus",
        inputs={"only": sorted(only) if only else None, "corpus_groups": len(entries)},
        versions={"girthlab": __version__, "corpus_sha256": checksum},
    )
    for c in checks:
        t0 = time.perf_counter()
        try:
            if c.run in (check_avoiding_sweep, check_involution_sweep, check_pair_sweep, check_oracle_agreement):
                ok, detail = c.run(entries)
            else:
                ok, detail = c.run()
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        res = CheckResult(c.name, c.criterion, c.tag, bool(ok), detail, round(time.perf_counter() - t0, 3))
        manifest.results.append(asdict(res))
    manifest.elapsed = round(time.perf_counter() - start, 3)
    return manifest
