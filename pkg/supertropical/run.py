from __future__ import annotations

import json
from typing import Any, Callable

from .config import JobSpec
from .digraph import max_cycle_mean
from .errors import SupertropicalError
from .io import Document, as_system, format_matrix, matrix_document, parse_input
from .lie import (
    LieSystem,
    Obstructed,
    check_two_way_obstruction,
    decide,
    dominant_matrix,
    lower_central_series,
    obstruction_certificate,
    render,
)
from .logging_utils import log_err, setup_logging
from .matrix import SuperMatrix, bracket, mat_pow
from .selftest import run_selftest
from .semiring import format_ext_real

logger = setup_logging(__name__)

# Exit codes
EXIT_OK = 0
EXIT_NOT_NILPOTENT = 1
EXIT_USAGE = 2

NILPOTENT = "NILPOTENT"
NOT_NILPOTENT = "NOT_NILPOTENT"

Result = tuple[int, list[str], dict[str, Any]]


def _matrices(doc: Document) -> list[SuperMatrix]:
    if isinstance(doc, LieSystem):
        return list(doc.generators)
    return [doc]


def _load_system(job: JobSpec) -> LieSystem:
    return as_system(parse_input(job.inputs[0], max_plus=job.max_plus))


def _matrix_block(label: str, a: SuperMatrix) -> list[str]:
    return [f"{label}:"] + format_matrix(a, indent="  ")


def _check(job: JobSpec) -> Result:
    outcome = decide(_load_system(job))
    if isinstance(outcome, Obstructed):
        cycle = list(outcome.cycle.vertices)
        lines = [NOT_NILPOTENT, "cycle: " + " ".join(map(str, cycle))]
        return EXIT_NOT_NILPOTENT, lines, {"result": NOT_NILPOTENT, "cycle": cycle}
    return EXIT_OK, [NILPOTENT], {"result": NILPOTENT}


def _triangularize(job: JobSpec) -> Result:
    outcome = decide(_load_system(job))
    if isinstance(outcome, Obstructed):
        cycle = list(outcome.cycle.vertices)
        lines = [NOT_NILPOTENT, "cycle: " + " ".join(map(str, cycle))]
        payload = {"result": NOT_NILPOTENT, "cycle": cycle, "certificate": render(outcome.certificate)}
        return EXIT_NOT_NILPOTENT, lines, payload

    perm = outcome.perm
    lines = [NILPOTENT, f"permutation: {perm.one_line()}", "order: " + " ".join(map(str, perm.vertex_order()))]
    for k, g in enumerate(outcome.conjugated, start=1):
        lines += _matrix_block(f"g{k}", g)
    payload = {
        "result": NILPOTENT,
        "permutation": list(perm.images),
        "order": list(perm.vertex_order()),
        "matrices": [matrix_document(g) for g in outcome.conjugated],
    }
    return EXIT_OK, lines, payload


def _certificate(job: JobSpec) -> Result:
    system = _load_system(job)
    outcome = decide(system)
    if not isinstance(outcome, Obstructed):
        return EXIT_OK, [NILPOTENT, "certificate: none"], {"result": NILPOTENT, "certificate": None}

    cycle = list(outcome.cycle.vertices)
    lines = [
        NOT_NILPOTENT,
        "cycle: " + " ".join(map(str, cycle)),
        f"certificate: {render(outcome.certificate)}",
    ]
    lines += _matrix_block("value", outcome.certificate_value)
    payload: dict[str, Any] = {
        "result": NOT_NILPOTENT,
        "cycle": cycle,
        "certificate": render(outcome.certificate),
        "matrices": [matrix_document(outcome.certificate_value)],
    }

    obstruction = check_two_way_obstruction(system)
    if obstruction is not None:
        word, value = obstruction_certificate(system, obstruction)
        a, b = obstruction.generators
        v, w = obstruction.vertices
        lines.append(f"two-way: g{a} g{b} v={v} w={w}")
        lines.append(f"two-way certificate: {render(word)}")
        lines += _matrix_block("two-way value", value)
        payload["two_way"] = {
            "generators": [a, b],
            "vertices": [v, w],
            "certificate": render(word),
            "matrix": matrix_document(value),
        }
    return EXIT_OK, lines, payload


def _lcs(job: JobSpec) -> Result:
    series = lower_central_series(_load_system(job), job.max_depth, job.cap)
    lines = [f"level {k}: {count} generators" for k, count in enumerate(series.counts)]
    if series.truncated:
        lines.append(f"truncated: level {len(series.levels)} exceeds cap {job.cap}")
        result = "TRUNCATED"
    elif series.index is None:
        lines.append(f"index: none within depth {job.max_depth}")
        result = "UNDECIDED"
    else:
        lines.append(f"index: {series.index}")
        result = NILPOTENT
    payload = {"result": result, "counts": series.counts, "index": series.index, "truncated": series.truncated}
    return EXIT_OK, lines, payload


def _spectrum(job: JobSpec) -> Result:
    doc = parse_input(job.inputs[0], max_plus=job.max_plus)
    if isinstance(doc, SuperMatrix):
        value = format_ext_real(max_cycle_mean(doc))
        return EXIT_OK, [value], {"result": value}
    values = {f"g{k}": format_ext_real(max_cycle_mean(g)) for k, g in enumerate(doc.generators, start=1)}
    values["dominant"] = format_ext_real(max_cycle_mean(dominant_matrix(doc)))
    lines = [f"{label}: {value}" for label, value in values.items()]
    return EXIT_OK, lines, {"result": values}


def _bracket(job: JobSpec) -> Result:
    operands: list[SuperMatrix] = []
    for path in job.inputs:
        operands += _matrices(parse_input(path, max_plus=job.max_plus))
    if len(operands) != 2:
        raise ValueError(f"bracket needs exactly two matrices, the inputs hold {len(operands)}")
    value = bracket(operands[0], operands[1])
    return EXIT_OK, format_matrix(value), {"result": "OK", "matrices": [matrix_document(value)]}


def _power(job: JobSpec) -> Result:
    operands = _matrices(parse_input(job.inputs[0], max_plus=job.max_plus))
    if len(operands) != 1:
        raise ValueError(f"power needs exactly one matrix, the input holds {len(operands)}")
    value = mat_pow(operands[0], job.k)
    return EXIT_OK, format_matrix(value), {"result": "OK", "matrices": [matrix_document(value)]}


def _selftest(job: JobSpec) -> Result:
    results = run_selftest(job.seed, job.selftest, cap=job.cap, max_depth=job.max_depth)
    lines = []
    for res in results:
        lines.append(f"{res.name}: {res.checked} checks, {res.failed} failed")
        lines += [f"  {failure}" for failure in res.failures]
    checked = sum(r.checked for r in results)
    failed = sum(r.failed for r in results)
    verdict = "PASS" if failed == 0 else "FAIL"
    lines += [f"total: {checked} checks, {failed} failed", verdict]
    payload = {
        "result": verdict,
        "seed": job.seed,
        "suites": [{"name": r.name, "checked": r.checked, "failed": r.failed, "failures": r.failures} for r in results],
    }
    return (EXIT_OK if failed == 0 else EXIT_NOT_NILPOTENT), lines, payload


_HANDLERS: dict[str, Callable[[JobSpec], Result]] = {
    "check": _check,
    "triangularize": _triangularize,
    "certificate": _certificate,
    "lcs": _lcs,
    "spectrum": _spectrum,
    "bracket": _bracket,
    "power": _power,
    "selftest": _selftest,
}


def render_report(job: JobSpec, lines: list[str], payload: dict[str, Any]) -> str:
    if job.format == "json":
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    return "\n".join(lines) + "\n"


def run(job: JobSpec) -> tuple[int, str]:
    """Execute one job; returns the exit code and the report (empty on exit 2).

    Diagnostics for usage and parse errors go to stderr.
    """
    try:
        code, lines, payload = _HANDLERS[job.command](job)
    except (SupertropicalError, ValueError, FileNotFoundError) as e:
        log_err(f"error: {e}")
        return EXIT_USAGE, ""
    except OSError as e:
        log_err(f"error: cannot read input: {e}")
        return EXIT_USAGE, ""
    except Exception as e:
        logger.exception("run.unhandled", command=job.command)
        log_err(f"error: unexpected failure: {e}")
        return EXIT_USAGE, ""
    logger.info("run.done", command=job.command, exit_code=code)
    return code, render_report(job, lines, payload)
