"""Batch invariant suites backing the command-line --check mode.

Each suite re-verifies one foundational property over a sweep of genera and
reports pass/fail with a short detail line.  Suites never repair anything:
a failure means an internal invariant is broken and callers should treat it
as an internal error (exit code 3 at the command line).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .actions import (
    braid_move,
    canonical_vector,
    family_group,
    kernel_genus,
    main_action_class,
)
from .errors import FourgError
from .extensions import (
    KIND_A,
    KIND_B,
    build_extensions,
    chain_target_group,
    cone_target_group,
)
from .realforms import _reflection_records, species_set, symmetry_classes
from .report import atlas_reports
from .signatures import enumerate_4g_signatures

__all__ = ["CheckResult", "run_all_checks", "ALL_CHECKS"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: {self.detail}"


def _verify_table(G) -> None:
    """Re-verify the group axioms on a multiplication table.

    Associativity is checked on every triple up to order 64 and on a fixed
    strided sample beyond that, so the cost stays bounded while the sweep
    still touches every row and column.
    """
    n = G.order
    table = G._table
    full = set(range(n))
    for i, row in enumerate(table):
        if set(row) != full:
            raise FourgError(f"{G.name}: row {i} is not a permutation")
        if row[0] != i or table[0][i] != i:
            raise FourgError(f"{G.name}: index 0 is not an identity at {i}")
    for i in range(n):
        if not any(table[i][j] == 0 and table[j][i] == 0 for j in range(n)):
            raise FourgError(f"{G.name}: element {i} has no inverse")
    step = 1 if n <= 64 else max(1, n // 24)
    sample = range(0, n, step)
    for a in sample:
        row_a = table[a]
        for b in sample:
            ab = row_a[b]
            row_ab = table[ab]
            row_b = table[b]
            for c in sample:
                if row_ab[c] != row_a[row_b[c]]:
                    raise FourgError(
                        f"{G.name}: associativity fails at ({a}, {b}, {c})"
                    )


def check_group_axioms(g_min: int, g_max: int, workers: int = 1) -> CheckResult:
    """Identity, inverses, closure, associativity for the working groups."""
    count = 0
    for g in range(g_min, g_max + 1):
        for G in (family_group(g), chain_target_group(g), cone_target_group(g)):
            _verify_table(G)
            count += 1
    return CheckResult(
        "group-axioms", True, f"{count} multiplication tables verified"
    )


def check_braid_invariance(g_min: int, g_max: int, workers: int = 1) -> CheckResult:
    """Braid moves never leave the unique class of the main family."""
    moves = 0
    for g in range(g_min, g_max + 1):
        cls = main_action_class(g, workers=workers)
        v = canonical_vector(g)
        for i in range(1, len(v.images)):
            moved = braid_move(v, i)
            if not cls.contains(moved):
                raise FourgError(f"braid move {i} escapes the class at genus {g}")
            if not cls.contains(braid_move(moved, i)):
                raise FourgError(
                    f"double braid move {i} escapes the class at genus {g}"
                )
            moves += 2
    return CheckResult("braid-invariance", True, f"{moves} moves stayed in class")


def check_kernel_genus(g_min: int, g_max: int, workers: int = 1) -> CheckResult:
    """Every admissible signature yields back the genus it was built for."""
    count = 0
    for g in range(g_min, g_max + 1):
        for ts in enumerate_4g_signatures(g):
            got = kernel_genus(4 * g, ts.signature)
            if got != g:
                raise FourgError(
                    f"signature {ts.signature} gives kernel genus {got},"
                    f" expected {g}"
                )
            count += 1
    return CheckResult("kernel-genus", True, f"{count} signatures round-tripped")


def check_species_constraints(g_min: int, g_max: int, workers: int = 1) -> CheckResult:
    """Every emitted species satisfies the topological oval bounds."""
    emitted = 0
    for g in range(g_min, g_max + 1):
        for kind in (KIND_A, KIND_B):
            for e in build_extensions(g, kind):
                species = species_set(e)
                if len(species) != len(symmetry_classes(e)):
                    raise FourgError(
                        f"{e.label} at genus {g}: {len(species)} species for"
                        f" {len(symmetry_classes(e))} symmetry classes"
                    )
                for sp in species:
                    # Species validates the oval bounds on construction;
                    # re-assert the signed range so the check is explicit.
                    if not -g <= sp.value <= g + 1:
                        raise FourgError(
                            f"species {sp.value} outside [-{g}, {g + 1}]"
                        )
                    emitted += 1
    return CheckResult(
        "species-constraints", True, f"{emitted} species within bounds"
    )


def check_centralizer_images(g_min: int, g_max: int, workers: int = 1) -> CheckResult:
    """Oval-count data sits inside the right centralizers with whole indices."""
    records = 0
    for g in range(g_min, g_max + 1):
        for kind in (KIND_A, KIND_B):
            for e in build_extensions(g, kind):
                records += len(_reflection_records(e))
    return CheckResult(
        "centralizer-images", True, f"{records} reflection records verified"
    )


def check_worker_reproducibility(g_min: int, g_max: int, workers: int = 2) -> CheckResult:
    """Atlas output is byte-identical with one worker and with several."""
    top = min(g_max, g_min + 4)
    serial = json.dumps(
        [r.to_json_dict() for r in atlas_reports(g_min, top, workers=1)]
    )
    threaded = json.dumps(
        [r.to_json_dict() for r in atlas_reports(g_min, top, workers=max(2, workers))]
    )
    if serial != threaded:
        raise FourgError("atlas output differs between 1 worker and several")
    return CheckResult(
        "worker-reproducibility",
        True,
        f"genera {g_min}..{top} byte-identical across worker counts",
    )


ALL_CHECKS = (
    check_group_axioms,
    check_braid_invariance,
    check_kernel_genus,
    check_species_constraints,
    check_centralizer_images,
    check_worker_reproducibility,
)


def run_all_checks(g_min: int = 2, g_max: int = 6, workers: int = 2) -> list:
    """Run every suite; failures become results, never silent passes."""
    if not 2 <= g_min <= g_max:
        raise ValueError(f"need 2 <= g_min <= g_max, got {g_min}..{g_max}")
    results = []
    for check in ALL_CHECKS:
        name = check.__name__.replace("check_", "").replace("_", "-")
        try:
            results.append(check(g_min, g_max, workers=workers))
        except FourgError as exc:
            results.append(CheckResult(name, False, str(exc)))
    return results
