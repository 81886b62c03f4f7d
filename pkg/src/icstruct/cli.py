"""``icstruct`` command line: analyze, generate, oracle.

Exit codes: 0 success, 1 structurally invalid input, 2 parse error,
3 oracle size bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import codec
from .digraph import ParseError, to_dot
from .disjoint import DisjointCycleResult, max_disjoint
from .fixtures import (FIXTURE_NAMES, MODES, GeneratorConfig, GenerationError, fixture_path,
                       generate, write_generated)
from .ic_check import ICStructure, ICValidationReport, check_c1_c2, inner_partition, validate
from .oracle import MAX_CYCLES, MAX_VERTICES, OracleRefusal, OracleResult, oracle_mais, run_oracles
from .outer_cycles import (CycleFamily, ILCReport, LemmaReport, build_family, central_cycles,
                           check_ilc, common_vertex, verify_lemmas)

log = logging.getLogger("icstruct")

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_REFUSED = 0, 1, 2, 3


class InvalidStructure(Exception):
    def __init__(self, report: dict):
        super().__init__("structure is not a valid IC structure with interlocked outer cycles")
        self.report = report


@dataclass
class AnalysisReport:
    structure: ICStructure
    validation: ICValidationReport
    family: CycleFamily | None = None
    ilc: ILCReport | None = None
    centrals: list[int] | None = None
    lemmas: LemmaReport | None = None
    disjoint: DisjointCycleResult | None = None
    oracle: OracleResult | None = None
    code: codec.IndexCode | None = None
    decoding: list[codec.DecodeVerdict] | None = None
    lengths: codec.LengthReport | None = None
    side_conditions: dict | None = None
    partition: dict | None = None

    def to_dict(self) -> dict:
        s = self.structure
        out: dict = {
            "N": s.N,
            "K": s.K,
            "inner": sorted(s.inner),
            "validation": self.validation.to_dict(),
        }
        if self.family is not None and self.family.n:
            fam = self.family
            out["family"] = fam.to_dict()
            out["family"]["ilc"] = self.ilc.to_dict()
            out["family"]["central"] = self.centrals
            out["family"]["common_all"] = sorted(common_vertex(fam, fam.indices))
            out["partition"] = self.partition
            out["side_conditions"] = self.side_conditions
            out["lemmas"] = self.lemmas.to_dict()
            out["disjoint"] = self.disjoint.to_dict()
        if self.oracle is not None:
            out["oracle"] = self.oracle.to_dict()
        if self.code is not None:
            out["code"] = self.code.to_dict()
            out["decoding"] = {
                "all_decodable": all(v.decodable for v in self.decoding),
                "undecodable": [v.receiver for v in self.decoding if not v.decodable],
                "receivers": [v.to_dict() for v in self.decoding],
            }
        out["lengths"] = self.lengths.to_dict() if self.lengths else {"toj_length": s.N - s.K + 1}
        return out


def analyze(s: ICStructure, with_oracle: bool = False, max_vertices: int = MAX_VERTICES,
            max_cycles: int = MAX_CYCLES) -> AnalysisReport:
    """Run the whole pipeline; raises InvalidStructure or OracleRefusal."""
    rep = validate(s)
    if not rep.with_outer_cycles_ok:
        raise InvalidStructure(rep.to_dict())
    out = AnalysisReport(s, rep)
    fam = build_family(s)
    out.family = fam
    mais = None
    if fam.n:
        out.ilc = check_ilc(fam)
        out.centrals = central_cycles(fam)
        if not out.ilc.holds or not out.centrals:
            raise InvalidStructure({"validation": rep.to_dict(), "ilc": out.ilc.to_dict(),
                                    "central": out.centrals})
        part = inner_partition(s, fam.union_vertices)
        out.partition = part.to_dict()
        out.side_conditions = {k: v.to_dict() for k, v in check_c1_c2(s, part, rep).items()}
        out.lemmas = verify_lemmas(s, fam)
        out.disjoint = max_disjoint(s, fam)
    if with_oracle:
        if fam.n:
            out.oracle = run_oracles(fam, max_cycles=max_cycles)
        else:
            out.oracle = OracleResult(0, [], 0, [])
        if s.N <= max_vertices:
            out.oracle.mais, out.oracle.mais_set = oracle_mais(s.graph, max_vertices)
            mais = out.oracle.mais
        else:
            log.warning("MAIS oracle skipped: %d vertices exceeds the bound of %d", s.N, max_vertices)
    out.code = codec.build_toj_code(s)
    out.decoding = codec.check_decodable(out.code, codec.receivers(s.graph))
    if out.disjoint is not None:
        out.lengths = codec.length_report(s, out.disjoint.t, mais)
    return out


def resolve_input(arg: str) -> Path:
    """A file path, or the name of a bundled example (``example3``, ``fixtures/example3``)."""
    p = Path(arg)
    if p.is_file():
        return p
    for cand in (p.with_suffix(".txt"),):
        if cand.is_file():
            return cand
    stem = p.stem if p.suffix == ".txt" else p.name
    if stem in FIXTURE_NAMES:
        return Path(str(fixture_path(stem)))
    raise FileNotFoundError(arg)


def render_text(r: AnalysisReport) -> str:
    s, v = r.structure, r.validation
    lines = [f"structure: N={s.N} K={s.K} inner={sorted(s.inner)}"]
    lines.append("conditions: " + ", ".join(
        f"{k} {'ok' if ok else 'violated'}" for k, ok in
        (("1", v.condition1), ("2", v.condition2), ("3", v.condition3), ("4", v.condition4))))
    fam = r.family
    if fam is not None and fam.n:
        lines.append(f"outer cycles ({fam.n}):")
        for j in fam.indices:
            lines.append(f"  C_{j}: {fam.cycle(j)}   exclusive={sorted(fam.exclusive[j])}")
        lines.append("central cycles: " + ", ".join(f"C_{c}" for c in r.centrals))
        lines.append("lemmas: " + ", ".join(f"{k} {x.status}" for k, x in r.lemmas.verdicts().items()))
        sc = r.side_conditions
        lines.append(f"side conditions: C1 {sc['c1']['holds']}, C2 {sc['c2']['holds']}")
        d = r.disjoint
        lines.append(f"disjoint cycles: t={d.t}  C^S={{{', '.join(f'C_{j}' for j in d.chosen_cycles)}}}"
                     f"  S={{{', '.join(map(str, d.removed_vertices))}}}")
        for st in d.trace:
            lines.append(f"  pick C_{st.cycle} via vertex {st.vertex}; drop "
                         + ", ".join(f"C_{x}" for x in st.dropped)
                         + ("  [fallback]" if st.fallback else ""))
    else:
        lines.append("outer cycles: none")
    if r.oracle is not None:
        o = r.oracle
        lines.append(f"oracle: max_disjoint={o.max_disjoint_size} min_hitting={o.min_hitting_set_size}"
                     f" mais={o.mais if o.mais is not None else 'skipped'}")
    ok = sum(x.decodable for x in r.decoding)
    lines.append(f"code: {r.code.length} symbols, decodable by {ok}/{len(r.decoding)} receivers")
    bad = [x.receiver for x in r.decoding if not x.decodable]
    if bad:
        lines.append(f"  not decodable: {bad}")
    if r.lengths:
        L = r.lengths
        lines.append(f"lengths: toj={L.toj_length} interlocked_bound={L.interlocked_bound} savings={L.savings}")
    else:
        lines.append(f"lengths: toj={s.N - s.K + 1}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    try:
        path = resolve_input(args.input)
        s = ICStructure.from_file(path)
    except FileNotFoundError as exc:
        print(f"error: no such input {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        report = analyze(s, args.oracle, args.max_oracle_vertices, args.max_oracle_cycles)
    except InvalidStructure as exc:
        print(json.dumps(exc.report, indent=2), file=sys.stderr)
        return EXIT_INVALID
    except OracleRefusal as exc:
        print(f"oracle refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    if args.dot:
        marked = report.disjoint.removed_vertices if report.disjoint else ()
        Path(args.dot).write_text(to_dot(s.graph, s.inner, marked))
    if args.json:
        sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        s = ICStructure.from_file(resolve_input(args.input))
    except (FileNotFoundError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    fam = build_family(s)
    try:
        res = run_oracles(fam, max_cycles=args.max_oracle_cycles)
        res.mais, res.mais_set = oracle_mais(s.graph, args.max_oracle_vertices)
    except OracleRefusal as exc:
        print(f"oracle refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    sys.stdout.write(json.dumps(res.to_dict(), indent=2) + "\n")
    return EXIT_OK


def _range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("-")
    lo_i = int(lo)
    return lo_i, int(hi) if hi else lo_i


def cmd_generate(args) -> int:
    cfg = GeneratorConfig(num_cycles=_range(args.cycles), cycle_length=_range(args.cycle_length),
                          sharing_mode=args.mode, inner_count=_range(args.inner), seed=args.seed,
                          relay_count=_range(args.relays))
    try:
        gen = generate(cfg)
    except GenerationError as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    stem = args.out or f"generated_seed{args.seed}"
    Path(stem).parent.mkdir(parents=True, exist_ok=True)
    txt, js = write_generated(gen, stem)
    print(txt)
    print(js)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="icstruct", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="validate a structure and compute t, oracles and code lengths")
    a.add_argument("input", help="digraph text file or bundled example name")
    a.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    a.add_argument("--json", action="store_true")
    a.add_argument("--dot", metavar="PATH", help="write a DOT rendering, removed vertices shaded")
    a.add_argument("--max-oracle-vertices", type=int, default=MAX_VERTICES)
    a.add_argument("--max-oracle-cycles", type=int, default=MAX_CYCLES)
    a.set_defaults(func=cmd_analyze)

    o = sub.add_parser("oracle", help="brute-force disjoint cycles, hitting set and MAIS")
    o.add_argument("input")
    o.add_argument("--max-oracle-vertices", type=int, default=MAX_VERTICES)
    o.add_argument("--max-oracle-cycles", type=int, default=MAX_CYCLES)
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("generate", help="write a random interlocked structure and its expected record")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--cycles", default="2-5", help="count or range, e.g. 3 or 2-5")
    g.add_argument("--cycle-length", default="3-6")
    g.add_argument("--mode", choices=MODES, default="chained-through-central")
    g.add_argument("--inner", default="2-12", help="inner vertex count range")
    g.add_argument("--relays", default="0-2")
    g.add_argument("--out", help="output stem; writes STEM.txt and STEM.json")
    g.set_defaults(func=cmd_generate)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
