"""Command line driver.

Three commands: ``check`` classifies a structure file (optionally
running the elementary-law suite), ``represent`` runs both
representation pipelines with staged verification, and ``enumerate``
generates all structures with a given atom count and classifies them.
Reports are deterministic; the exit code is 0 exactly when every
requested check passed.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional

from . import labelling, reduct
from .core import AtomStructure, classify
from .cylindric import (
    check_complex_vs_relativized,
    check_functions,
    check_mgr2,
    check_na3,
    check_orbit_partition,
)
from .enumerate import enumerate_structures, summarize
from .fileformat import ParseError, Report, parse_structure_file
from .laws import elementary_law_suite
from .suitable import build_suitable, check_suitable
from .trails import build_universe


def _classify_into(report: Report, A: AtomStructure, elements_mode: bool) -> bool:
    rep = classify(A, ra4_elements=elements_mode)
    yn = lambda b: "yes" if b else "no"
    report.info("classify.summary", f"WA: {yn(rep.is_wa)}, SA: {yn(rep.is_sa)}, RA: {yn(rep.is_ra)}")
    report.info("classify.isWA", yn(rep.is_wa))
    report.info("classify.isSA", yn(rep.is_sa))
    report.info("classify.isRA", yn(rep.is_ra))
    for name, witness in rep.failures:
        report.info("classify.failure", f"{name} witness {witness}")
    return rep.is_wa


def cmd_check(args: argparse.Namespace) -> Report:
    report = Report()
    A = parse_structure_file(args.file)
    report.add("check", "validate", True)
    is_wa = _classify_into(report, A, args.elements_mode)
    if args.laws:
        if not is_wa:
            report.add("laws", "precondition-wa", False, "law suite needs a WA input")
            return report
        for res in elementary_law_suite(A):
            report.add("laws", res.name, res.holds, str(res.witness or ""))
    return report


def _represent_pipeline(
    report: Report, A: AtomStructure, passes: int, depth: int, seed: int
) -> None:
    ls = labelling.initial_system(A)
    labelling.saturate(ls, passes)
    report.info("labelling.points", ls.point_count())
    report.info("labelling.labels", len(ls.label))
    mode = "full" if len(ls.label) <= 5000 and A.atom_count <= 3 else "certified"
    for res in labelling.verify_representation(ls, stage_bound=passes, mode=mode):
        report.add("labelling", res.name, res.holds, res.detail if not res.holds else "")
    rep = labelling.build_representation(ls)
    report.add(
        "labelling",
        "unit-symmetric-reflexive",
        labelling.unit_is_symmetric_reflexive(rep),
    )
    for a, pairs in sorted(rep.atom_images().items()):
        shown = " ".join(f"({u},{v})" for u, v in sorted(pairs)[:16])
        more = "" if len(pairs) <= 16 else f" ... ({len(pairs)} total)"
        report.info(f"labelling.image.{A.atom_name(a)}", shown + more)

    S = build_suitable(A)
    report.info("suitable.carrier", S.size)
    report.extend_results("suitable", check_suitable(S))
    report.extend_results("cylindric", check_na3(S, seed=seed))
    report.extend_results("cylindric", check_mgr2(S, seed=seed))
    report.extend_results("cylindric", check_functions(S))
    report.extend_results("reduct", reduct.check_reduct_closure(S))
    report.extend_results("reduct", reduct.check_reduct_isomorphism(A, S))

    uni = build_universe(S, depth)
    report.info("trails.points", len(uni.by_id))
    report.info("trails.triples", len(uni.triples))
    report.info("trails.frontier", len(uni.frontier_triples()))
    report.extend_results("setalgebra", [check_orbit_partition(uni)])
    report.extend_results(
        "setalgebra", check_complex_vs_relativized(S, uni, seed=seed)
    )

    ps = reduct.build_pair_structure(A, uni)
    report.extend_results("pairs", reduct.check_pair_partition(ps))
    report.extend_results("pairs", [reduct.check_key_property(A, ps)])
    report.extend_results("pairs", reduct.check_replacement_closure(ps))
    final, checks = reduct.final_representation(A, ps)
    report.extend_results("final", checks)
    report.extend_results("final", [reduct.check_chain_agreement(A, ps)])
    try:
        rebuilt = reduct.rebuilt_structure(final)
        same = (
            rebuilt.identity == A.identity
            and rebuilt.converse == A.converse
            and rebuilt.cycles == A.cycles
        )
        report.add("final", "image-structure-matches", same)
    except ValueError as exc:
        report.add("final", "image-structure-matches", False, str(exc))
    for a, pairs in sorted(final.atom_images().items()):
        shown = " ".join(f"({u},{v})" for u, v in sorted(pairs)[:16])
        more = "" if len(pairs) <= 16 else f" ... ({len(pairs)} total)"
        report.info(f"final.image.{A.atom_name(a)}", shown + more)


def cmd_represent(args: argparse.Namespace) -> Report:
    report = Report()
    A = parse_structure_file(args.file)
    rep = classify(A)
    if not rep.is_wa:
        report.add(
            "represent",
            "precondition-wa",
            False,
            "not weakly associative; failed: " + ", ".join(rep.failed_names()),
        )
        return report
    report.add("represent", "precondition-wa", True)
    _represent_pipeline(report, A, args.passes, args.depth, args.seed)
    return report


def cmd_enumerate(args: argparse.Namespace) -> Report:
    report = Report()
    summary, wa_structures = summarize(args.atoms, mod_iso=args.mod_iso)
    report.info("enumerate.total", summary.total)
    report.info("enumerate.wa", summary.wa)
    report.info("enumerate.sa", summary.sa)
    report.info("enumerate.ra", summary.ra)
    report.info("enumerate.wa_not_sa", summary.wa_not_sa)
    report.info("enumerate.sa_not_ra", summary.sa_not_ra)
    chain_ok = summary.ra <= summary.sa <= summary.wa
    report.add("enumerate", "classification-chain", chain_ok)
    if args.classify_only or not args.pipeline:
        return report
    for i, A in enumerate(wa_structures):
        S = build_suitable(A)
        ok = all(c.holds for c in check_suitable(S))
        ok = ok and all(c.holds for c in check_na3(S, seed=args.seed))
        ok = ok and all(c.holds for c in check_mgr2(S, seed=args.seed))
        ok = ok and all(c.holds for c in check_functions(S))
        ok = ok and all(c.holds for c in reduct.check_reduct_isomorphism(A, S))
        report.add("pipeline", f"wa-{i:04d}", ok)
    return report


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="warel",
        description="finite weakly associative relation algebras: checks and representations",
    )
    parser.add_argument("--report", help="also write the report to this path")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized subset checks")
    parser.add_argument(
        "--timings", action="store_true", help="append wall-clock timings (non-deterministic)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="validate and classify a structure file")
    p_check.add_argument("file")
    p_check.add_argument("--elements-mode", action="store_true", help="full element-mode weak-associativity check")
    p_check.add_argument("--laws", action="store_true", help="also run the elementary-law suite")
    p_check.set_defaults(func=cmd_check)

    p_rep = sub.add_parser("represent", help="run both representation pipelines")
    p_rep.add_argument("file")
    p_rep.add_argument("--passes", type=int, default=2, help="saturation passes")
    p_rep.add_argument("--depth", type=int, default=3, help="trail length bound")
    p_rep.set_defaults(func=cmd_represent)

    p_enum = sub.add_parser("enumerate", help="generate and classify all structures of a size")
    p_enum.add_argument("--atoms", type=int, required=True)
    p_enum.add_argument("--classify-only", action="store_true")
    p_enum.add_argument("--pipeline", action="store_true", help="run the construction pipeline on each WA structure")
    p_enum.add_argument("--mod-iso", action="store_true", help="one representative per relabelling class")
    p_enum.set_defaults(func=cmd_enumerate)

    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        report = args.func(args)
    except (ParseError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    if args.timings:
        report.info("timing.total_seconds", f"{time.monotonic() - started:.3f}")
    text = report.render()
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
