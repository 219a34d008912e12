"""
Axiom-check reports: building, validating and serializing.

Reports are append-only regression artifacts: deterministic JSON (sorted
keys, fixed orderings, schema_version from day one).  Wall-clock timing is
off by default so identical inputs give byte-identical documents.
"""

from __future__ import annotations

import json
import time
from typing import Any

from .compositions import (
    Pair,
    all_compositions,
    refines,
)
from .fiber import (
    FiberReport,
    check_far_commutativity,
    check_recursiveness,
    is_twist_pair,
    total_fiber,
)
from .perms import block_cross
from .shuffles import enumerate_shuffles, shuffle_count

SCHEMA_VERSION = 1
CHECK_NAMES = (
    "adjunctability",
    "recursiveness",
    "far_commutativity",
    "twist_invertibility",
    "defect_vanishing",
)


class ReportError(ValueError):
    pass


def two_part_pairs(n_total: int) -> list[Pair]:
    comps = [(a, n_total - a) for a in range(1, n_total)]
    return [(ab, cd) for ab in comps for cd in comps]


def _structural_adjunctability(n_total: int) -> bool:
    """Induction is a finite free right adjoint: every refinement edge's
    shuffle basis exists with the multinomial rank."""
    comps = all_compositions(n_total)
    for sigma in comps:
        for tau in comps:
            if not refines(sigma, tau):
                continue
            if len(enumerate_shuffles(sigma, tau)) != shuffle_count(sigma, tau):
                return False
    return True


def _global_checks(n_total: int, max_oracle: int) -> tuple[dict[str, bool], list[str]]:
    from .oracle import check_adjunction

    failures: list[str] = []
    adjunct = _structural_adjunctability(n_total)
    if n_total <= max_oracle:
        comps = all_compositions(n_total)
        for sigma in comps:
            for tau in comps:
                if refines(sigma, tau) and not check_adjunction(sigma, tau):
                    adjunct = False
                    failures.append(f"adjunction fails at {sigma} <= {tau}")
    recursive = True
    for comp in all_compositions(n_total):
        for i in range(1, len(comp) + 1):
            if not check_recursiveness(n_total, comp, i):
                recursive = False
                failures.append(f"recursiveness fails at {comp}, slot {i}")
    far = True
    matrix_far = n_total <= max(5, max_oracle)
    for a in range(1, n_total):
        b = n_total - a
        for c0 in all_compositions(a):
            for c1 in all_compositions(a):
                if not refines(c0, c1):
                    continue
                for d0 in all_compositions(b):
                    for d1 in all_compositions(b):
                        if not refines(d0, d1):
                            continue
                        if matrix_far:
                            ok = check_far_commutativity((a, b), c0, c1, d0, d1)
                        else:
                            ok = set(
                                enumerate_shuffles(c0 + d0, c0 + d1)
                            ) == set(enumerate_shuffles(c1 + d0, c1 + d1))
                        if not ok:
                            far = False
                            failures.append(
                                f"far-commutativity fails at ({a},{b}), "
                                f"{c0}<={c1}, {d0}<={d1}"
                            )
    return (
        {
            "adjunctability": adjunct,
            "recursiveness": recursive,
            "far_commutativity": far,
        },
        failures,
    )


def _pair_entry(
    pair: Pair,
    globals_ok: dict[str, bool],
    global_failures: list[str],
    max_oracle: int,
) -> tuple[dict[str, Any], list[str]]:
    from .oracle import flip_action_check, oracle_matches_diagram

    n_total = sum(pair[0])
    report: FiberReport = total_fiber(pair)
    failures: list[str] = list(global_failures)
    twist_ok = True
    defect_ok = True
    if is_twist_pair(pair):
        a, b = pair[0]
        twist_ok = report.verdict == "FlipEquivalence" and report.residual == (
            block_cross(a, b),
        )
        if not twist_ok:
            failures.append(
                f"expected FlipEquivalence with the block crossing, got "
                f"{report.verdict} {report.residual}"
            )
        if twist_ok and n_total <= max_oracle:
            if not flip_action_check(pair, report):
                twist_ok = False
                failures.append("flip action check fails on the nil-Coxeter module")
    else:
        defect_ok = report.verdict == "Vanishes"
        if not defect_ok:
            failures.append(
                f"expected Vanishes, got {report.verdict} {report.residual}"
            )
    if n_total <= max_oracle:
        if not oracle_matches_diagram(pair):
            failures.append("matrix oracle disagrees with the diagram model")
            if is_twist_pair(pair):
                twist_ok = False
            else:
                defect_ok = False
    entry = {
        "pair": {"ab": list(pair[0]), "cd": list(pair[1])},
        "case": {
            "tag": report.case.tag,
            "params": {k: v for k, v in report.case.params},
        },
        "mirrored": report.mirrored,
        "level_tables": [
            {
                "level": level,
                "entries": [
                    {"index_bits": list(index), "rank": rank}
                    for index, rank in entries
                ],
            }
            for level, entries in report.level_table()
        ],
        "verdict": report.verdict,
        "residual_permutations": [list(w) for w in report.residual],
        "checks": {
            "adjunctability": globals_ok["adjunctability"],
            "recursiveness": globals_ok["recursiveness"],
            "far_commutativity": globals_ok["far_commutativity"],
            "twist_invertibility": twist_ok,
            "defect_vanishing": defect_ok,
        },
        "failures": failures,
    }
    return entry, failures


def build_report(
    n_total: int,
    pair_filter: Pair | None = None,
    max_oracle: int = 4,
    with_timing: bool = False,
    threads: int = 1,
) -> dict[str, Any]:
    t0 = time.perf_counter()
    globals_ok, failures = _global_checks(n_total, max_oracle)
    pairs = two_part_pairs(n_total)
    if pair_filter is not None:
        if pair_filter not in pairs:
            raise ReportError(f"pair {pair_filter} is not a pair for n={n_total}")
        pairs = [pair_filter]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            entries = list(
                pool.map(
                    lambda p: _pair_entry(p, globals_ok, failures, max_oracle),
                    pairs,
                )
            )
    else:
        entries = [
            _pair_entry(p, globals_ok, failures, max_oracle) for p in pairs
        ]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "n_total": n_total,
        "pairs": [entry for entry, _ in entries],
        "timing": (
            {"total_s": round(time.perf_counter() - t0, 6)} if with_timing else None
        ),
    }
    validate_report(doc)
    return doc


def report_ok(doc: dict[str, Any]) -> bool:
    return all(
        all(entry["checks"][name] for name in CHECK_NAMES)
        for entry in doc["pairs"]
    )


def to_json(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def from_json(text: str) -> dict[str, Any]:
    doc = json.loads(text)
    validate_report(doc)
    return doc


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ReportError(message)


def validate_report(doc: dict[str, Any]) -> None:
    """Schema walk; raises ReportError on any malformed field."""
    _require(isinstance(doc, dict), "document must be an object")
    _require(doc.get("schema_version") == SCHEMA_VERSION, "bad schema_version")
    n_total = doc.get("n_total")
    _require(isinstance(n_total, int) and n_total >= 2, "bad n_total")
    _require(
        doc.get("timing") is None
        or (
            isinstance(doc["timing"], dict)
            and all(isinstance(v, (int, float)) for v in doc["timing"].values())
        ),
        "bad timing",
    )
    _require(isinstance(doc.get("pairs"), list), "pairs must be a list")
    for entry in doc["pairs"]:
        _require(isinstance(entry, dict), "pair entry must be an object")
        pair = entry.get("pair")
        _require(
            isinstance(pair, dict)
            and sorted(pair) == ["ab", "cd"]
            and all(
                isinstance(c, list) and len(c) == 2 and sum(c) == n_total
                for c in pair.values()
            ),
            "bad pair field",
        )
        case = entry.get("case")
        _require(
            isinstance(case, dict) and isinstance(case.get("tag"), str),
            "bad case field",
        )
        _require(isinstance(entry.get("mirrored"), bool), "bad mirrored flag")
        _require(
            entry.get("verdict") in ("Vanishes", "FlipEquivalence", "Other"),
            "bad verdict",
        )
        _require(
            isinstance(entry.get("residual_permutations"), list),
            "bad residual list",
        )
        for w in entry["residual_permutations"]:
            _require(
                isinstance(w, list) and sorted(w) == list(range(1, n_total + 1)),
                f"residual {w} is not a permutation",
            )
        tables = entry.get("level_tables")
        _require(isinstance(tables, list) and tables, "bad level tables")
        for table in tables:
            _require(
                isinstance(table.get("level"), int)
                and isinstance(table.get("entries"), list),
                "bad level table",
            )
            for cell in table["entries"]:
                _require(
                    isinstance(cell.get("index_bits"), list)
                    and len(cell["index_bits"]) == table["level"]
                    and all(b in (0, 1) for b in cell["index_bits"])
                    and isinstance(cell.get("rank"), int)
                    and cell["rank"] >= 0,
                    "bad level entry",
                )
        checks = entry.get("checks")
        _require(
            isinstance(checks, dict)
            and sorted(checks) == sorted(CHECK_NAMES)
            and all(isinstance(v, bool) for v in checks.values()),
            "bad checks field",
        )
        _require(
            isinstance(entry.get("failures"), list)
            and all(isinstance(f, str) for f in entry["failures"]),
            "bad failures field",
        )
