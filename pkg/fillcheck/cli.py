"""
Command-line frontend for fillcheck.
Parses manifold descriptions from JSON files or inline flags, dispatches to the
computation modules and prints either a JSON Report or a cited text report.

Usage:
    python fillcheck_start.py brieskorn --exponents 2,3,5
    python fillcheck_start.py check-duality --sigma s.json --w w.json --output text
    python fillcheck_start.py batch manifest.json --workers 8
"""
import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Annotated, Any, Callable
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, ValidationError, field_validator, model_validator
from fillcheck import brieskorn, bundles, fillings, intlab
from fillcheck.citations import render_citations
from fillcheck.config import settings
from fillcheck.errors import InputValidationError, PreconditionError
from fillcheck.logger import setup_logger
from fillcheck.models import GradedBetti, Verdict, field_characteristic

logger = setup_logger(__name__)

SCHEMA = "fillcheck/1"

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_INVALID = 2
EXIT_PRECONDITION = 3


# ============================================================================
# Payload models (one per command, validated before dispatch)
# ============================================================================

def _coerce_matrix(value: Any) -> Any:
    # Accept the nested {"rows","cols","entries":[[...]]} JSON form
    entries = value.get("entries") if isinstance(value, dict) else None
    if isinstance(entries, list) and any(isinstance(row, list) for row in entries):
        return intlab.IntMatrix.from_dict(value)
    return value


MatrixField = Annotated[intlab.IntMatrix, BeforeValidator(_coerce_matrix)]


class Payload(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FieldPayload(Payload):
    field: str = Field(default_factory=lambda: settings.default_field)

    @field_validator("field")
    @classmethod
    def _check_field(cls, value: str) -> str:
        field_characteristic(value)
        return value


class LinkPayload(FieldPayload):
    exponents: list[int]


class SnfPayload(Payload):
    matrix: MatrixField
    modulus: int | None = None


class DualityPayload(Payload):
    sigma: GradedBetti
    w: GradedBetti
    lax: bool = False


class SteinPayload(Payload):
    sigma: GradedBetti
    subcritical: bool = False


class HcRankPayload(Payload):
    sigma: GradedBetti | None = None
    w: GradedBetti | None = None
    degree: int | None = None

    @model_validator(mode="after")
    def _check_sides(self) -> "HcRankPayload":
        if self.sigma is None and self.w is None:
            raise ValueError("hc-rank needs sigma, w, or both")
        return self


class SphereBundlePayload(Payload):
    base: GradedBetti
    euler_nonzero: bool = False
    surgery_index: int | None = None


class CircleBundlePayload(Payload):
    base: GradedBetti
    cup_rank: int | None = None
    aspherical: bool = True
    c1_zero: bool = False
    surgery_index: int | None = None


class SurgeryPayload(Payload):
    b2_sigma: int
    b2_w: int
    k: int
    n: int


class MvBoundPayload(Payload):
    sigma1: GradedBetti
    sigma2: GradedBetti
    complement: GradedBetti


class EnumeratePayload(FieldPayload):
    n: int = Field(ge=1)
    mu_max: int = Field(ge=1)


class LagrangianPayload(Payload):
    base: GradedBetti


class BallPayload(Payload):
    sigma: GradedBetti


# ============================================================================
# Reports
# ============================================================================

class CommandResult(BaseModel):
    """What a handler hands back before the Report is assembled."""

    results: dict[str, Any] = Field(default_factory=dict)
    verdicts: dict[str, Verdict] = Field(default_factory=dict)
    warnings: list[str] = Field(default_factory=list)
    citations: list[str] = Field(default_factory=list)


class Report(BaseModel):
    command: str
    inputs: dict[str, Any]
    results: dict[str, Any]
    verdicts: dict[str, Verdict] = Field(default_factory=dict)
    warnings: list[str] = Field(default_factory=list)
    citations: list[str] = Field(default_factory=list)

    @classmethod
    def build(cls, command: str, inputs: dict[str, Any], outcome: CommandResult) -> "Report":
        warnings = list(outcome.warnings)
        keys = list(outcome.citations)
        for verdict in outcome.verdicts.values():
            keys.extend(verdict.citations)
            warnings.extend(verdict.warnings)
        return cls(
            command=command,
            inputs=inputs,
            results=outcome.results,
            verdicts=outcome.verdicts,
            warnings=list(dict.fromkeys(warnings)),
            citations=sorted(set(keys)),
        )

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "verdicts": {name: v.to_dict() for name, v in self.verdicts.items()},
            "warnings": self.warnings,
            "citations": render_citations(self.citations),
        }


# ============================================================================
# Handlers
# ============================================================================

def _link(payload: LinkPayload) -> brieskorn.BrieskornLink:
    return brieskorn.BrieskornLink(exponents=tuple(payload.exponents))


def handle_brieskorn(payload: LinkPayload) -> CommandResult:
    report = brieskorn.link_report(_link(payload), payload.field)
    citations = ["milnor-number", "seifert-tensor", "seifert-to-intersection"]
    if "homology" in report["results"]:
        citations.extend(["milnor-sequence", "milnor-intersection-form", "link-connectivity"])
    return CommandResult(results=report["results"], verdicts=report["verdicts"], citations=citations)


def handle_link_homology(payload: LinkPayload) -> CommandResult:
    link = _link(payload)
    profile = brieskorn.link_homology(link, payload.field)
    citations = ["milnor-sequence", "milnor-intersection-form", "link-connectivity"]
    if field_characteristic(payload.field):
        citations.append("field-coefficients")
    return CommandResult(
        results={"link": link.to_dict(), "milnor_number": brieskorn.milnor_number(link), "homology": profile.to_dict()},
        citations=citations,
    )


def handle_snf(payload: SnfPayload) -> CommandResult:
    matrix = payload.matrix
    decomposition = intlab.smith_normal_form(matrix)
    results: dict[str, Any] = {
        "matrix": matrix.to_dict(),
        "smith": decomposition.to_dict(),
        "cokernel": decomposition.cokernel().to_dict(),
        "kernel_rank": decomposition.kernel_rank(),
    }
    if matrix.is_square:
        results["determinant_abs"] = str(intlab.determinant_abs(matrix))
    if payload.modulus is not None:
        results["rank_mod_p"] = {"p": payload.modulus, "rank": intlab.rank_mod_p(matrix, payload.modulus)}
    return CommandResult(results=results)


def handle_check_duality(payload: DualityPayload) -> CommandResult:
    report = fillings.duality_check(payload.sigma, payload.w, lax=payload.lax)
    results: dict[str, Any] = {"duality": report.to_dict()}
    citations = list(report.citations)
    warnings = list(report.notes)
    if not payload.lax:
        onto = fillings.surjectivity_check(payload.sigma, payload.w)
        results["surjectivity"] = onto.to_dict()
        citations.extend(onto.citations)
        if report.holds and payload.sigma.dim >= 5:
            results["hc_consistent"] = fillings.hc_consistency(payload.sigma, payload.w)
            citations.extend(["hc-rank-formula", "hc-filling-sum"])
    return CommandResult(results=results, warnings=warnings, citations=citations)


def handle_stein_fill(payload: SteinPayload) -> CommandResult:
    solution = fillings.stein_filling_betti(payload.sigma, payload.subcritical)
    results: dict[str, Any] = {"filling": solution.to_dict()}
    if solution.fully_determined:
        results["duality"] = fillings.duality_check(payload.sigma, solution.to_profile()).to_dict()
    return CommandResult(
        results=results,
        warnings=["Sigma assumed to embed in R^2n with a Stein filling (caller assertion)"],
        citations=list(solution.citations) + ["filling-duality"],
    )


def handle_hc_rank(payload: HcRankPayload) -> CommandResult:
    sigma, w = payload.sigma, payload.w
    n = (sigma.dim + 1) // 2 if sigma is not None else w.dim // 2
    degrees = [payload.degree] if payload.degree is not None else list(range(-2 * n, 4 * n + 1))
    rows = []
    for k in degrees:
        row: dict[str, Any] = {"k": k}
        if sigma is not None:
            row["from_sigma"] = fillings.hc_rank_from_sigma(sigma, k)
        if w is not None:
            row["from_filling"] = fillings.hc_rank_from_filling(w, k)
        rows.append(row)

    results: dict[str, Any] = {"n": n, "ranks": rows}
    warnings = ["subcritical Stein filling with c_1 = 0 and an embedding in R^2n assumed (caller assertion)"]
    citations = ["hc-rank-formula"] if sigma is not None else []
    if w is not None:
        citations.extend(["hc-yau", "hc-filling-sum"])
    if sigma is not None and w is not None:
        if fillings.duality_check(sigma, w).holds:
            results["consistent"] = fillings.hc_consistency(sigma, w)
        else:
            results["consistent"] = None
            warnings.append("sigma and w violate the duality identity; routes not compared")
        citations.append("filling-duality")
    return CommandResult(results=results, warnings=warnings, citations=citations)


def handle_sphere_bundle(payload: SphereBundlePayload) -> CommandResult:
    base = payload.base
    profile = bundles.sphere_bundle_betti(base, payload.euler_nonzero)
    verdicts = {"r2n_embedding": bundles.cotangent_r2n_verdict(base, payload.euler_nonzero, payload.surgery_index)}
    warnings = []
    if base.dim >= 3:
        verdicts["subcritical_embedding"] = bundles.cotangent_subcritical_verdict(
            base, payload.euler_nonzero, payload.surgery_index
        )
    else:
        warnings.append(f"subcritical verdict skipped: base dimension {base.dim} < 3")
    return CommandResult(
        results={"sphere_bundle": profile.to_dict()},
        verdicts=verdicts,
        warnings=warnings,
        citations=["sphere-bundle-euler-nonzero" if payload.euler_nonzero else "sphere-bundle-euler-zero"],
    )


def handle_circle_bundle(payload: CircleBundlePayload) -> CommandResult:
    data = bundles.CircleBundleInput(base_betti=payload.base, cup_rank=payload.cup_rank)
    return CommandResult(
        results={"n": data.n, "b2_sigma": bundles.circle_bundle_b2(data)},
        verdicts={
            "r2n_embedding": bundles.circle_bundle_r2n_verdict(data, payload.aspherical, payload.surgery_index),
            "subcritical_filling": bundles.circle_bundle_subcritical_verdict(
                payload.base, payload.c1_zero, payload.surgery_index
            ),
        },
        citations=["circle-gysin-degree-two"],
    )


def handle_surgery(payload: SurgeryPayload) -> CommandResult:
    outcome = fillings.surgery_transform(payload.b2_sigma, payload.b2_w, payload.k, payload.n)
    return CommandResult(results={"surgery": outcome.to_dict()}, citations=list(outcome.citations))


def handle_mv_bound(payload: MvBoundPayload) -> CommandResult:
    bound = fillings.mv_bound(payload.sigma1, payload.sigma2, payload.complement)
    return CommandResult(
        results={"bound": {str(j): b for j, b in bound.items()}},
        citations=["mv-bound"],
    )


def handle_enumerate(payload: EnumeratePayload) -> CommandResult:
    links = brieskorn.enumerate_links(payload.n, payload.mu_max)
    manifest = [
        {"command": "brieskorn", "payload": {"exponents": list(link.exponents), "field": payload.field}}
        for link in links
    ]
    return CommandResult(results={"count": len(manifest), "manifest": manifest}, citations=["milnor-number"])


def handle_lagrangian_fill(payload: LagrangianPayload) -> CommandResult:
    profile = bundles.lagrangian_filling_betti(payload.base)
    return CommandResult(
        results={"filling": profile.to_dict()},
        warnings=["L assumed to be a Lagrangian in R^2n and the filling aspherical with H_2(W, ST*L) = 0 (caller assertion)"],
        citations=["lagrangian-filling", "filling-same-betti"],
    )


def handle_ball_fill(payload: BallPayload) -> CommandResult:
    solution = fillings.homology_ball_filling(payload.sigma)
    return CommandResult(
        results={"filling": solution.to_dict()},
        warnings=["Sigma assumed to embed in a subcritical Stein manifold (caller assertion)"],
        citations=list(solution.citations),
    )


Handler = Callable[[Any], CommandResult]

COMMANDS: dict[str, tuple[type[Payload], Handler, str]] = {
    "brieskorn": (LinkPayload, handle_brieskorn, "Milnor/Seifert data, link homology and verdicts of a Brieskorn link"),
    "link-homology": (LinkPayload, handle_link_homology, "Homology of a Brieskorn link over Q or F_p"),
    "check-duality": (DualityPayload, handle_check_duality, "Check the filling identity for a boundary/filling pair"),
    "stein-fill": (SteinPayload, handle_stein_fill, "Betti numbers forced on a Stein filling"),
    "hc-rank": (HcRankPayload, handle_hc_rank, "Contact-homology ranks from the boundary and/or the filling"),
    "sphere-bundle": (SphereBundlePayload, handle_sphere_bundle, "Unit cotangent bundle Betti numbers and verdicts"),
    "circle-bundle": (CircleBundlePayload, handle_circle_bundle, "Circle bundle of a negative line bundle: b_2 and verdicts"),
    "surgery": (SurgeryPayload, handle_surgery, "Propagate b_2 through a contact surgery"),
    "mv-bound": (MvBoundPayload, handle_mv_bound, "Mayer-Vietoris bound for nested hypersurfaces"),
    "snf": (SnfPayload, handle_snf, "Smith normal form with certificates"),
    "enumerate": (EnumeratePayload, handle_enumerate, "Batch manifest of Brieskorn links with bounded Milnor number"),
    "lagrangian-fill": (LagrangianPayload, handle_lagrangian_fill, "Betti numbers of fillings of ST*L for Lagrangian L"),
    "ball-fill": (BallPayload, handle_ball_fill, "Homology-ball filling of a homology sphere"),
}


# ============================================================================
# Execution
# ============================================================================

def _validation_message(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(x) for x in error["loc"]) or "payload"
        parts.append(f"{location}: {error['msg']}")
    return "; ".join(parts)


def execute(command: str, payload: Any) -> Report:
    """
    Validate a payload and run one command.

    Raises:
        InputValidationError: unknown command or payload that fails validation
        PreconditionError: the computation's preconditions are violated
    """
    if not isinstance(command, str) or command not in COMMANDS:
        raise InputValidationError(f"unknown command '{command}'", field="command")
    if not isinstance(payload, dict):
        raise InputValidationError("payload must be a JSON object", field="payload")
    model, handler, _ = COMMANDS[command]
    try:
        parsed = model.model_validate(payload)
        outcome = handler(parsed)
    except ValidationError as e:
        raise InputValidationError(_validation_message(e)) from e

    logger.info(f"Ran command {command}", extra={"command": command})
    return Report.build(command, payload, outcome)


def _run_item(index: int, item: Any) -> dict[str, Any]:
    if not isinstance(item, dict) or set(item) - {"command", "payload"} or "command" not in item:
        error = InputValidationError("batch item must be an object with 'command' and 'payload'")
        return _item_error(index, None, error, EXIT_INVALID)
    command = item["command"]
    if command == "batch":
        return _item_error(index, command, InputValidationError("batch items cannot be batches"), EXIT_INVALID)
    try:
        report = execute(command, item.get("payload", {}))
    except InputValidationError as e:
        return _item_error(index, command, e, EXIT_INVALID)
    except PreconditionError as e:
        return _item_error(index, command, e, EXIT_PRECONDITION)
    except Exception as e:
        # An unexpected failure stays confined to its item
        logger.exception(f"Batch item {index} raised {type(e).__name__}", extra={"index": index})
        return _item_error(index, command, e, EXIT_PARTIAL)
    return {"index": index, "command": command, "status": "ok", "exit_code": EXIT_OK, "report": report.to_dict()}


def _item_error(index: int, command: Any, error: Exception, code: int) -> dict[str, Any]:
    logger.warning(f"Batch item {index} failed: {error}", extra={"index": index, "exit_code": code})
    return {
        "index": index,
        "command": command,
        "status": "error",
        "exit_code": code,
        "error": {"kind": type(error).__name__, "message": str(error)},
    }


def run_batch(manifest: list, workers: int | None = None) -> tuple[int, dict[str, Any]]:
    """
    Run every manifest item independently; item order is preserved.

    Returns:
        (exit code, aggregated report) with exit 0 iff every item succeeded
    """
    pool_size = max(1, workers or settings.batch_workers)
    with ThreadPoolExecutor(max_workers=pool_size) as pool:
        items = list(pool.map(_run_item, range(len(manifest)), manifest))

    failed = sum(1 for item in items if item["status"] != "ok")
    logger.info(f"Batch finished: {len(items) - failed} ok, {failed} failed", extra={"workers": pool_size})
    aggregate = {
        "schema": SCHEMA,
        "command": "batch",
        "results": {"total": len(items), "succeeded": len(items) - failed, "failed": failed},
        "items": items,
    }
    return (EXIT_PARTIAL if failed else EXIT_OK), aggregate


# ============================================================================
# Argument parsing
# ============================================================================

class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so run() owns the exit codes."""

    def error(self, message: str):
        raise InputValidationError(message)


PROFILE_FLAGS = ("sigma", "w", "base", "sigma1", "sigma2", "complement")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from None


def _load_json(path: str, what: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputValidationError(f"cannot read {what} '{path}': {e.strerror}", field=what) from e
    except json.JSONDecodeError as e:
        raise InputValidationError(f"malformed JSON in {what} '{path}': {e.msg} at line {e.lineno}", field=what) from e


def _profile_value(text: str, name: str, field: str, closed_orientable: bool) -> Any:
    """Inline 'b0,b1,...' list or a path to a JSON profile."""
    if text.replace(",", "").replace(" ", "").isdigit():
        return GradedBetti.from_list(_int_list(text), field=field, closed_orientable=closed_orientable).to_dict()
    return _load_json(text, name)


def _flag(*names: str, **kwargs) -> tuple[tuple[str, ...], dict]:
    return names, kwargs


def _true(*names: str, dest: str, help: str) -> tuple[tuple[str, ...], dict]:
    return names, {"dest": dest, "action": "store_const", "const": True, "default": None, "help": help}


_PROFILE_HELP = "Betti profile: inline 'b0,b1,...' or a JSON profile file"

COMMAND_FLAGS: dict[str, list[tuple[tuple[str, ...], dict]]] = {
    "brieskorn": [_flag("--exponents", type=_int_list, help="Exponents a_0,...,a_n")],
    "link-homology": [_flag("--exponents", type=_int_list, help="Exponents a_0,...,a_n")],
    "check-duality": [
        _flag("--sigma", help=_PROFILE_HELP),
        _flag("--w", help=_PROFILE_HELP),
        _true("--lax", dest="lax", help="Report-only mode for mismatched profiles"),
    ],
    "stein-fill": [
        _flag("--sigma", help=_PROFILE_HELP),
        _true("--subcritical", dest="subcritical", help="The Stein filling is subcritical"),
    ],
    "hc-rank": [
        _flag("--sigma", help=_PROFILE_HELP),
        _flag("--w", help=_PROFILE_HELP),
        _flag("--degree", type=int, help="Single degree k (default: all k in [-2n, 4n])"),
    ],
    "sphere-bundle": [
        _flag("--base", help=_PROFILE_HELP),
        _true("--euler-nonzero", dest="euler_nonzero", help="Euler class of L is nonzero over the field"),
        _flag("--surgery-index", type=int, help="Index of a contact surgery applied afterwards"),
    ],
    "circle-bundle": [
        _flag("--base", help=_PROFILE_HELP),
        _flag("--cup-rank", type=int, help="Rank of beta-cup : H^1(N) -> H^3(N)"),
        _flag("--not-aspherical", dest="aspherical", action="store_const", const=False, default=None,
              help="Base is not symplectically aspherical"),
        _true("--c1-zero", dest="c1_zero", help="First Chern class of the filling vanishes"),
        _flag("--surgery-index", type=int, help="Index of a contact surgery applied afterwards"),
    ],
    "surgery": [
        _flag("--b2-sigma", type=int, help="b_2 of the boundary"),
        _flag("--b2-w", type=int, help="b_2 of the filling"),
        _flag("--k", type=int, help="Handle index"),
        _flag("--n", type=int, help="Half-dimension"),
    ],
    "mv-bound": [
        _flag("--sigma1", help=_PROFILE_HELP),
        _flag("--sigma2", help=_PROFILE_HELP),
        _flag("--complement", help=_PROFILE_HELP),
    ],
    "snf": [_flag("--modulus", type=int, help="Also report the rank over F_p")],
    "enumerate": [
        _flag("--n", type=int, help="Number of exponents minus one"),
        _flag("--mu-max", type=int, help="Milnor-number cap"),
        _flag("--out", help="Also write the manifest array to this file"),
    ],
    "lagrangian-fill": [_flag("--base", help=_PROFILE_HELP)],
    "ball-fill": [_flag("--sigma", help=_PROFILE_HELP)],
}

# Flags that shape parsing but never enter a payload
_NON_PAYLOAD = {"command", "input", "output", "field", "closed_orientable", "workers", "manifest", "out"}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fillcheck", description="Homological obstructions to contact embeddings and fillings.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name, (_, _, help_text) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        sub.add_argument("--input", help="JSON payload file")
        sub.add_argument("--output", choices=("json", "text"), default="json")
        sub.add_argument("--field", help="Coefficient field: Q or Fp:<p>")
        sub.add_argument("--closed-orientable", dest="closed_orientable", action="store_true",
                         help="Inline profiles describe closed orientable manifolds")
        for names, kwargs in COMMAND_FLAGS[name]:
            sub.add_argument(*names, **kwargs)

    batch = subparsers.add_parser("batch", help="Run a JSON array of requests")
    batch.add_argument("manifest", help="Manifest file: [{\"command\": ..., \"payload\": {...}}, ...]")
    batch.add_argument("--output", choices=("json", "text"), default="json")
    batch.add_argument("--workers", type=int, help=f"Thread pool size (default {settings.batch_workers})")
    return parser


def _payload_from_args(args: argparse.Namespace) -> dict[str, Any]:
    payload: dict[str, Any] = {}
    if args.input:
        payload = _load_json(args.input, "input")
        if not isinstance(payload, dict):
            raise InputValidationError("input payload must be a JSON object", field="input")

    model = COMMANDS[args.command][0]
    field = args.field or settings.default_field
    if args.field and "field" in model.model_fields:
        payload["field"] = args.field

    for key, value in vars(args).items():
        if key in _NON_PAYLOAD or value is None:
            continue
        if key in PROFILE_FLAGS:
            value = _profile_value(value, key, field, args.closed_orientable)
        payload[key] = value
    return payload


# ============================================================================
# Rendering
# ============================================================================

def _flatten(prefix: str, value: Any, out: list[tuple[str, str]]):
    if isinstance(value, dict) and value:
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else str(key), value[key], out)
    else:
        out.append((prefix, json.dumps(value, sort_keys=True)))


def render_text(report: dict[str, Any]) -> str:
    """Human-readable report: flattened results, numbered verdict traces, quoted citations."""
    lines = [f"fillcheck report ({report['schema']}): {report['command']}"]

    for title in ("inputs", "results"):
        lines.append(f"{title}:")
        flat: list[tuple[str, str]] = []
        _flatten("", report.get(title, {}), flat)
        lines.extend(f"  {key} = {value}" for key, value in flat if key)

    for name in sorted(report.get("verdicts", {})):
        verdict = report["verdicts"][name]
        lines.append(f"verdict {name}: {verdict['status']}")
        for number, step in enumerate(verdict["trace"], start=1):
            lines.append(f"  {number}. {step['statement']} [{step['cite']}]")

    if report.get("warnings"):
        lines.append("warnings:")
        lines.extend(f"  - {w}" for w in report["warnings"])
    if report.get("citations"):
        lines.append("citations:")
        for c in report["citations"]:
            lines.append(f"  [{c['key']}] {c['label']}")
            lines.append(f"      \"{c['quote']}\"")
    return "\n".join(lines)


def render_batch_text(aggregate: dict[str, Any]) -> str:
    results = aggregate["results"]
    lines = [f"fillcheck batch ({aggregate['schema']}): {results['succeeded']}/{results['total']} ok"]
    for item in aggregate["items"]:
        if item["status"] == "ok":
            lines.append(f"--- item {item['index']}: ok")
            lines.append(render_text(item["report"]))
        else:
            lines.append(f"--- item {item['index']}: {item['error']['kind']} (exit {item['exit_code']})")
            lines.append(f"  {item['error']['message']}")
    return "\n".join(lines)


def _dump(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


# ============================================================================
# Entry points
# ============================================================================

def run(argv: list[str]) -> tuple[int, str]:
    """
    Run the CLI on an argument list.

    Returns:
        (exit status, text for stdout on success or a diagnostic on failure)
    """
    try:
        args = build_parser().parse_args(argv)
        if args.command == "batch":
            manifest = _load_json(args.manifest, "manifest")
            if not isinstance(manifest, list):
                raise InputValidationError("batch manifest must be a JSON array", field="manifest")
            code, aggregate = run_batch(manifest, args.workers)
            return code, render_batch_text(aggregate) if args.output == "text" else _dump(aggregate)

        report = execute(args.command, _payload_from_args(args)).to_dict()
        if args.command == "enumerate" and args.out:
            Path(args.out).write_text(_dump(report["results"]["manifest"]) + "\n", encoding="utf-8")
        return EXIT_OK, render_text(report) if args.output == "text" else _dump(report)

    except InputValidationError as e:
        logger.warning(f"Invalid input: {e}", extra={"field": e.field})
        where = f" ({e.field})" if e.field else ""
        return EXIT_INVALID, f"fillcheck: invalid input{where}: {e}"
    except PreconditionError as e:
        logger.warning(f"Precondition failed: {e}")
        return EXIT_PRECONDITION, f"fillcheck: precondition failed: {e}"


def main(argv: list[str] | None = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if code in (EXIT_INVALID, EXIT_PRECONDITION) else sys.stdout
    print(text, file=stream)
    return code
