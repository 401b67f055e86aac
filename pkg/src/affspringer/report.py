"""Report records for fixed-point sweeps, shared by the CLI and the scripts.

Every record is a plain JSON-ready dictionary: elements in their canonical
text encoding, rationals as ``"p/q"``, monomials as ``[j, i, e]`` triples.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .algebra import format_fraction, monomial_to_triples
from .certificate import (Verdict, candidates_below, common_witness, fixed_point_set,
                          SYMBOLIC_SIZE_LIMIT)
from .oracle import membership_sample_detail, orbit_closure_fixed_points
from .springer import SpectralParameters, default_spectral
from .weyl import (AffineWeylElement, bruhat_leq, elements_up_to_length, is_min_coset_rep,
                   length, reduced_word, w0)

SCHEMA_NAME = "affspringer-report"
SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"
ALL_METHODS = ("certificate", "symbolic", "randomized", "oracle")
SCOPE = ("Verified claims: n = 2 and n = 3 exhaustively (every component, every candidate, "
         "every method); n = 4 by sampled determinant checks. Larger sweeps run by this tool "
         "are reported as computed but are not part of those claims. The statement for all n "
         "is a proof and is not reproduced by computation.")


@dataclass
class RunConfig:
    n: int = 2
    methods: tuple[str, ...] = ("certificate",)
    seed: int = 0
    trials: int = 5
    precision: int | None = None
    spectral: SpectralParameters | None = None
    size_limit: int = SYMBOLIC_SIZE_LIMIT
    budget_seconds: float | None = None
    window: int | None = None
    workers: int = 1
    timings: bool = False
    inject_fault: bool = False
    extra_comparisons: bool = True

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        unknown = set(self.methods) - set(ALL_METHODS)
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}")
        if self.spectral is None:
            self.spectral = default_spectral(self.n)
        if self.spectral.n != self.n:
            raise ValueError("spectral parameters have the wrong length")


def canonical(elements) -> list[AffineWeylElement]:
    return sorted(elements, key=lambda w: (length(w), w))


def encode_all(elements) -> list[str]:
    return [w.encode() for w in canonical(elements)]


def rational(q: Fraction) -> str:
    return format_fraction(Fraction(q))


def witness_map(assignment) -> dict[str, str] | None:
    if assignment is None:
        return None
    return {f"A_{j}_{i}": rational(v) for (j, i), v in sorted(assignment.items())}


def header(command: str, cfg: RunConfig) -> dict:
    return {
        "schema": SCHEMA_NAME,
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "command": command,
        "n": cfg.n,
        "s": cfg.spectral.encode(),
        "seed": cfg.seed,
        "trials": cfg.trials,
        "methods": list(cfg.methods),
        "scope": SCOPE,
    }


def _status(statuses) -> str:
    statuses = list(statuses)
    if "fail" in statuses:
        return "fail"
    if "inconclusive" in statuses:
        return "inconclusive"
    return "pass"


def component_report(x: AffineWeylElement, cfg: RunConfig, inject_fault: bool = False) -> dict:
    """Everything computed about the component of ``x``, as one record."""
    s = cfg.spectral
    started = time.perf_counter()
    bound = orbit_closure_fixed_points(x)
    results = {}
    for method in cfg.methods:
        if method == "oracle":
            continue
        results[method] = fixed_point_set(x, s, method, cfg.seed, cfg.trials, cfg.size_limit)
    candidates = candidates_below(x)
    others = []
    if cfg.extra_comparisons:
        others = [y for y in elements_up_to_length(x.n, length(x) + 1)
                  if is_min_coset_rep(y) and y not in set(candidates)]
    faulted = None
    if inject_fault and "certificate" in results and results["certificate"].certified:
        faulted = results["certificate"].certified[0]

    records = []
    for y in canonical(set(candidates) | set(others)):
        expected = bruhat_leq(y, w0(x.n) * x)
        verdicts: dict[str, dict[str, str]] = {}
        certificates: dict[str, dict] = {}
        for i in range(x.n):
            row = {}
            for method, res in results.items():
                detail = res.verdicts.get((y, i))
                v = detail.verdict.value if detail else Verdict.NOT_COMPARABLE.value
                if method == "certificate" and y == faulted and i == 0:
                    v = Verdict.IDENTICALLY_ZERO.value
                row[method] = v
                if method == "certificate" and detail and detail.monomial is not None:
                    certificates[str(i)] = {"monomial": monomial_to_triples(x.n, detail.monomial),
                                            "coefficient": rational(detail.coefficient)}
            verdicts[str(i)] = row
        record = {"x": x.encode(), "y": y.encode(), "expected": expected,
                  "verdicts": verdicts, "certificates": certificates, "witness": None, "oracle": None}
        if "randomized" in results and y in results["randomized"].certified:
            record["witness"] = witness_map(common_witness(x, y, s, cfg.seed, cfg.trials))
        if "oracle" in cfg.methods:
            sample = membership_sample_detail(x, y, s, cfg.trials, cfg.seed, cfg.precision)
            record["oracle"] = {"member": sample.member, "trial": sample.trial}
        records.append(record)

    fixed: dict[str, list[str]] = {}
    match: dict[str, bool] = {}
    gaps: dict[str, list[str]] = {}
    statuses = []
    for method, res in results.items():
        certified = [y for y in res.certified if not (method == "certificate" and y == faulted)]
        points = set().union(*(_orbit(y) for y in certified)) & bound
        fixed[method] = encode_all(points)
        match[method] = points == bound
        gaps[method] = encode_all(res.gaps)
        rejected = [y for y in candidates if y not in certified and y not in res.gaps]
        if rejected:
            statuses.append("fail")
        elif res.gaps:
            statuses.append("inconclusive")
        else:
            statuses.append("pass" if points == bound else "fail")
    if "certificate" in results and "symbolic" in results:
        for y in candidates:
            for i in range(x.n):
                a = results["certificate"].verdicts[(y, i)].verdict
                b = results["symbolic"].verdicts[(y, i)].verdict
                if a == Verdict.NONZERO and b == Verdict.IDENTICALLY_ZERO:
                    statuses.append("fail")
    if "oracle" in cfg.methods:
        members = set()
        for y in bound:
            sample = membership_sample_detail(x, y, s, cfg.trials, cfg.seed, cfg.precision)
            if sample.member:
                members.add(y)
        fixed["oracle"] = encode_all(members)
        match["oracle"] = members == bound
        gaps["oracle"] = encode_all(bound - members)
        statuses.append("pass" if members == bound else "inconclusive")
    record = {
        "x": x.encode(),
        "word": " ".join(f"s{k}" for k in reduced_word(x)),
        "length": length(x),
        "bound": encode_all(bound),
        "fixed_points": fixed,
        "match": match,
        "gaps": gaps,
        "records": records,
        "fault_injected": faulted.encode() if faulted is not None else None,
        "status": _status(statuses),
    }
    if cfg.timings:
        record["seconds"] = round(time.perf_counter() - started, 6)
    return record


def _orbit(y: AffineWeylElement) -> set:
    from .weyl import finite_weyl_group
    return {z * y for z in finite_weyl_group(y.n)}


def load_schema() -> dict:
    text = resources.files("affspringer").joinpath("schema/report-v1.json").read_text()
    return json.loads(text)


def validate_report(doc: dict) -> None:
    import jsonschema
    jsonschema.validate(doc, load_schema())


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
