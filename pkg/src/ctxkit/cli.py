"""Command line front end.

Every command loads a scenario (a file path or the name of a bundled
scenario such as ``yu-oh``), runs the requested analysis and writes a
deterministic text or JSON report to stdout or ``--out``.

Exit codes (also in ``--help``): 0 success, 2 parse/usage error, 3
validation error, 4 unknown ray label, 5 I/O error, 1 anything else.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from . import report as rp
from .assignments import enumerate_assignments
from .contextuality import (
    QuantumState,
    analyze_mixed_states,
    check_witnesses_basis_free,
    find_contextual_pure_states,
    is_logically_contextual,
    noncontextuality_oracle,
    parse_density,
    parse_state,
    possibilistic_model,
)
from .errors import CtxkitError, UnknownLabelError, ValidationError
from .exact import ExactMatrix, parse_scalar, rank1_projector
from .hardy import (
    build_witness_observable,
    crosscheck_reference_observables,
    derive_paradoxes,
    verify_observable,
)
from .sampling import simulate_measurement
from .scenario import (
    Scenario,
    basis_membership,
    bundled_scenario_names,
    check_distinct_complements,
    enumerate_contexts,
    load_bundled,
    load_scenario_path,
)

_EPILOG = """\
exit codes:
  0  success
  2  parse or usage error
  3  validation error (zero vector, duplicate ray, invalid state, ...)
  4  unknown ray label
  5  I/O error (missing or unreadable file)
"""


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation, fully resolved."""

    command: str
    scenario_path: str
    state_spec: str | None = None
    density_path: str | None = None
    fmt: str = "text"
    seed: int = 0
    shots: int = 100_000
    out_path: str | None = None
    eigenvalues: tuple[Fraction, Fraction, Fraction] = (Fraction(1), Fraction(2), Fraction(3))
    witness: str | None = None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctxkit",
        description="Exact contexts, assignments, contextuality verdicts and Hardy-type paradoxes for finite ray sets.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_state in (
        ("contexts", False),
        ("assignments", False),
        ("states", False),
        ("check", True),
        ("paradoxes", True),
        ("observables", True),
        ("simulate", True),
        ("report", False),
    ):
        p = sub.add_parser(name, epilog=_EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--scenario", required=True, help="scenario file path or bundled name (e.g. yu-oh)")
        p.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")
        p.add_argument("--out", default=None, help="write the report to this file instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="64-bit unsigned PRNG seed (default 0)")
        p.add_argument("--shots", type=int, default=100_000, help="measurement repetitions (default 100000)")
        p.add_argument(
            "--eigenvalues",
            default="1,2,3",
            help="three distinct rationals, e.g. 1,2,3 (write --eigenvalues=-1,0,1 for a leading minus)",
        )
        if needs_state:
            p.add_argument("--state", default=None, help='pure state coordinates, e.g. "1,1,1"')
            p.add_argument("--density", default=None, help="density matrix file (dim lines of dim literals)")
        if name == "simulate":
            p.add_argument("--witness", required=True, help="witness ray label selecting the paradox")
    return parser


def _parse_eigenvalues(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ValidationError("exactly three eigenvalues are required")
    eigs = tuple(parse_scalar(p, field="rational").as_fraction() for p in parts)
    if len(set(eigs)) != 3:
        raise ValidationError("eigenvalues must be distinct")
    return eigs  # type: ignore[return-value]


def _load_scenario(config: RunConfig) -> Scenario:
    path = Path(config.scenario_path)
    if path.exists():
        return load_scenario_path(path)
    if config.scenario_path in bundled_scenario_names():
        return load_bundled(config.scenario_path)
    raise FileNotFoundError(f"scenario file not found: {config.scenario_path}")


def _load_state(config: RunConfig, scenario: Scenario) -> QuantumState:
    if config.state_spec is not None and config.density_path is not None:
        raise ValidationError("--state and --density are mutually exclusive")
    if config.state_spec is not None:
        return parse_state(config.state_spec, scenario.dim, scenario.field)
    if config.density_path is not None:
        text = Path(config.density_path).read_text(encoding="utf-8")
        return parse_density(text, scenario.dim, scenario.field)
    raise ValidationError("a state is required: pass --state or --density")


def _emit(config: RunConfig, text_output: str):
    if config.out_path is not None:
        Path(config.out_path).write_text(text_output, encoding="utf-8")
    else:
        sys.stdout.write(text_output)


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    scenario = _load_scenario(config)
    handler = {
        "contexts": _cmd_contexts,
        "assignments": _cmd_assignments,
        "states": _cmd_states,
        "check": _cmd_check,
        "paradoxes": _cmd_paradoxes,
        "observables": _cmd_observables,
        "simulate": _cmd_simulate,
        "report": _cmd_report,
    }[config.command]
    output = handler(config, scenario)
    _emit(config, output)
    return 0


def _cmd_contexts(config: RunConfig, scenario: Scenario) -> str:
    enumerate_contexts(scenario)
    check = check_distinct_complements(scenario) if scenario.dim == 3 else None
    if config.fmt == "json":
        return rp.render_json(
            {
                "schema": rp.SCHEMA,
                "command": "contexts",
                "scenario": rp.scenario_json(scenario),
                "contexts": rp.contexts_json(scenario, check),
            }
        )
    lines = rp.scenario_lines(scenario) + [""] + rp.contexts_lines(scenario, check)
    return "\n".join(lines) + "\n"


def _cmd_assignments(config: RunConfig, scenario: Scenario) -> str:
    assignments = enumerate_assignments(scenario)
    if config.fmt == "json":
        return rp.render_json(
            {
                "schema": rp.SCHEMA,
                "command": "assignments",
                "scenario": rp.scenario_json(scenario),
                "assignments": rp.assignments_json(scenario, assignments),
            }
        )
    lines = rp.assignments_lines(scenario, assignments)
    return "\n".join(lines) + "\n"


def _basis_free_rays(scenario: Scenario) -> list[int]:
    counts = basis_membership(scenario)
    return [i for i, c in enumerate(counts) if c == 0]


def _cmd_states(config: RunConfig, scenario: Scenario) -> str:
    assignments = enumerate_assignments(scenario)
    search = find_contextual_pure_states(scenario, assignments)
    basis_free = check_witnesses_basis_free(scenario, search)
    if config.fmt == "json":
        obj = rp.states_json(scenario, search)
        obj["witnesses_basis_free"] = basis_free
        return rp.render_json(
            {
                "schema": rp.SCHEMA,
                "command": "states",
                "scenario": rp.scenario_json(scenario),
                "search": obj,
            }
        )
    lines = rp.states_lines(scenario, search)
    lines.append(f"all witnesses basis-free: {'yes' if basis_free else 'NO'}")
    return "\n".join(lines) + "\n"


def _cmd_check(config: RunConfig, scenario: Scenario) -> str:
    state = _load_state(config, scenario)
    assignments = enumerate_assignments(scenario)
    verdict = is_logically_contextual(scenario, state, assignments)
    oracle = noncontextuality_oracle(scenario, state, assignments)
    model = possibilistic_model(scenario, state)
    if config.fmt == "json":
        obj = rp.verdict_json(scenario, state, verdict, oracle)
        obj["model"] = {scenario.rays[i].label: v for i, v in enumerate(model.values)}
        return rp.render_json(
            {
                "schema": rp.SCHEMA,
                "command": "check",
                "scenario": rp.scenario_json(scenario),
                "verdict": obj,
            }
        )
    lines = rp.model_lines(scenario, model) + rp.verdict_lines(scenario, state, verdict, oracle)
    return "\n".join(lines) + "\n"


def _states_for_paradoxes(config: RunConfig, scenario: Scenario) -> list[QuantumState]:
    if config.state_spec is not None or config.density_path is not None:
        return [_load_state(config, scenario)]
    assignments = enumerate_assignments(scenario)
    search = find_contextual_pure_states(scenario, assignments)
    return [QuantumState.pure(w.state) for w in search.states]


def _collect_paradoxes(config: RunConfig, scenario: Scenario):
    assignments = enumerate_assignments(scenario)
    numbered = []
    reasons = []
    idx = 0
    for state in _states_for_paradoxes(config, scenario):
        derivation = derive_paradoxes(scenario, state, assignments)
        if derivation.reason is not None:
            reasons.append(derivation.reason)
        for p in derivation.paradoxes:
            idx += 1
            numbered.append((idx, p))
    return numbered, reasons


def _cmd_paradoxes(config: RunConfig, scenario: Scenario) -> str:
    numbered, reasons = _collect_paradoxes(config, scenario)
    reason = "; ".join(reasons) if not numbered and reasons else None
    if config.fmt == "json":
        return rp.render_json(
            {
                "schema": rp.SCHEMA,
                "command": "paradoxes",
                "scenario": rp.scenario_json(scenario),
                "paradoxes": [rp.paradox_json(scenario, i, p) for i, p in numbered],
                "skipped": reasons,
            }
        )
    lines = rp.paradox_lines(scenario, numbered, reason)
    return "\n".join(lines) + "\n"


def _cmd_observables(config: RunConfig, scenario: Scenario) -> str:
    numbered, reasons = _collect_paradoxes(config, scenario)
    blocks = []
    objs = []
    for idx, paradox in numbered:
        observable = build_witness_observable(scenario, paradox, config.eigenvalues)
        verification = verify_observable(paradox, observable)
        blocks.append(rp.observable_lines(scenario, idx, paradox, observable, verification))
        objs.append(rp.observable_json(scenario, idx, paradox, observable, verification))
    crosscheck = _try_crosscheck(scenario)
    if config.fmt == "json":
        doc = {
            "schema": rp.SCHEMA,
            "command": "observables",
            "scenario": rp.scenario_json(scenario),
            "observables": objs,
            "skipped": reasons,
        }
        if crosscheck is not None:
            doc["reference_crosscheck"] = rp.crosscheck_json(crosscheck)
        return rp.render_json(doc)
    lines: list[str] = []
    if not numbered and reasons:
        lines.append("observables: none (" + "; ".join(reasons) + ")")
    for block in blocks:
        lines += block
    if crosscheck is not None:
        lines.append("")
        lines += rp.crosscheck_lines(crosscheck)
    return "\n".join(lines) + "\n"


def _try_crosscheck(scenario: Scenario):
    try:
        return crosscheck_reference_observables(scenario)
    except (ValidationError, UnknownLabelError):
        return None


def _cmd_simulate(config: RunConfig, scenario: Scenario) -> str:
    state = _load_state(config, scenario)
    assignments = enumerate_assignments(scenario)
    witness_idx = scenario.ray_index(config.witness)
    derivation = derive_paradoxes(scenario, state, assignments)
    paradox = next((p for p in derivation.paradoxes if p.witness == witness_idx), None)
    if paradox is None:
        detail = derivation.reason or f"no paradox with witness {config.witness!r} for this state"
        raise ValidationError(detail)
    observable = build_witness_observable(scenario, paradox, config.eigenvalues)
    witness_proj = rank1_projector(scenario.rays[witness_idx].vector)
    rest = ExactMatrix.identity(scenario.dim) - witness_proj
    witness_sim = simulate_measurement(state, [witness_proj, rest], config.shots, config.seed)
    observable_sim = simulate_measurement(state, list(observable.projectors), config.shots, config.seed)
    witness_names = [config.witness, "complement"]
    outcome_names = [f"a{i}={rp.fraction_str(e)}" for i, e in enumerate(observable.eigenvalues, start=1)]
    if config.fmt == "json":
        return rp.render_json(
            {
                "schema": rp.SCHEMA,
                "command": "simulate",
                "scenario": rp.scenario_json(scenario),
                "paradox": rp.paradox_json(scenario, 1, paradox),
                "witness_measurement": rp.simulation_json(witness_names, witness_sim),
                "observable_measurement": rp.simulation_json(outcome_names, observable_sim),
            }
        )
    lines = [f"paradox: {rp.paradox_header(scenario, paradox)}"]
    lines += rp.simulation_lines("witness-event measurement", witness_names, witness_sim)
    lines += rp.simulation_lines("witness-observable measurement", outcome_names, observable_sim)
    return "\n".join(lines) + "\n"


def _cmd_report(config: RunConfig, scenario: Scenario) -> str:
    enumerate_contexts(scenario)
    check = check_distinct_complements(scenario) if scenario.dim == 3 else None
    assignments = enumerate_assignments(scenario)
    search = find_contextual_pure_states(scenario, assignments)
    mixed = analyze_mixed_states(scenario, assignments)
    basis_free_rays = _basis_free_rays(scenario)
    numbered = []
    idx = 0
    for witnessed in search.states:
        state = QuantumState.pure(witnessed.state)
        derivation = derive_paradoxes(scenario, state, assignments)
        for p in derivation.paradoxes:
            idx += 1
            numbered.append((idx, p))
    observables = []
    for idx_, paradox in numbered:
        observable = build_witness_observable(scenario, paradox, config.eigenvalues)
        verification = verify_observable(paradox, observable)
        observables.append((idx_, paradox, observable, verification))
    crosscheck = _try_crosscheck(scenario)
    if config.fmt == "json":
        doc = {
            "schema": rp.SCHEMA,
            "command": "report",
            "seed": config.seed,
            "scenario": rp.scenario_json(scenario),
            "contexts": rp.contexts_json(scenario, check),
            "assignments": rp.assignments_json(scenario, assignments),
            "global_events": rp.global_events_json(scenario, assignments, basis_free_rays),
            "states": rp.states_json(scenario, search),
            "witnesses_basis_free": check_witnesses_basis_free(scenario, search),
            "mixed_analysis": rp.mixed_json(scenario, mixed),
            "paradoxes": [rp.paradox_json(scenario, i, p) for i, p in numbered],
            "observables": [
                rp.observable_json(scenario, i, p, o, v) for i, p, o, v in observables
            ],
        }
        if crosscheck is not None:
            doc["reference_crosscheck"] = rp.crosscheck_json(crosscheck)
        return rp.render_json(doc)
    sections = [
        rp.scenario_lines(scenario),
        rp.contexts_lines(scenario, check),
        rp.assignments_lines(scenario, assignments),
        rp.global_event_lines(scenario, assignments, basis_free_rays),
        rp.states_lines(scenario, search),
        rp.mixed_lines(scenario, mixed),
        rp.paradox_lines(scenario, numbered, None),
    ]
    for idx_, paradox, observable, verification in observables:
        sections.append(rp.observable_lines(scenario, idx_, paradox, observable, verification))
    if crosscheck is not None:
        sections.append(rp.crosscheck_lines(crosscheck))
    return "\n\n".join("\n".join(block) for block in sections) + "\n"


def main(argv: list[str] | None = None) -> int:
    try:
        sys.stdout.reconfigure(encoding="utf-8")
    except AttributeError:
        pass
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        command=args.command,
        scenario_path=args.scenario,
        state_spec=getattr(args, "state", None),
        density_path=getattr(args, "density", None),
        fmt=args.fmt,
        seed=args.seed,
        shots=args.shots,
        out_path=args.out,
        eigenvalues=(Fraction(1), Fraction(2), Fraction(3)),
        witness=getattr(args, "witness", None),
    )
    try:
        config = replace(config, eigenvalues=_parse_eigenvalues(args.eigenvalues))
        if config.seed < 0 or config.seed > (1 << 64) - 1:
            raise ValidationError("seed must fit in 64 unsigned bits")
        if config.shots < 0:
            raise ValidationError("shots must be non-negative")
        return run(config)
    except CtxkitError as exc:
        print(f"ctxkit: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except BrokenPipeError:
        return 0
    except OSError as exc:
        print(f"ctxkit: error: {exc}", file=sys.stderr)
        return 5
    except Exception as exc:  # pragma: no cover - defensive
        print(f"ctxkit: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
