"""Command-line front end: ``zxtoffoli {synth,lower,compile-nmr,verify,stats}``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import core, localize, nmr, qasm, sim, synth

COMMANDS = ("synth", "lower", "compile-nmr", "verify", "stats")


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    input: str | None = None
    output: str | None = None
    format: str = "json"
    tolerance: float = 1e-9
    seed: int = 0
    target: str = "toffoli"
    czx: bool = False
    fused: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise CliError("bad-command", f"unknown command {self.command!r}")
        if self.command in ("synth", "lower", "stats") and (self.n is None or self.n < 3):
            raise CliError("bad-n", f"--n must be an integer >= 3, got {self.n}")
        if not self.tolerance > 0:
            raise CliError("bad-tolerance", f"tolerance must be positive, got {self.tolerance}")
        if self.format not in ("json", "qasm"):
            raise CliError("bad-format", f"unknown format {self.format!r}")


def _read_json(path: str | None) -> dict:
    try:
        text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError("bad-input", f"cannot read JSON from {path or 'stdin'}: {exc}") from exc


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text)


def _circuit_out(c: core.Circuit, cfg: RunConfig, extra: dict | None = None) -> str:
    if cfg.format == "qasm":
        return qasm.export_qasm(c)
    return json.dumps({**core.circuit_to_dict(c), **(extra or {})}, indent=1)


def _synth(cfg: RunConfig) -> int:
    c = synth.gen_czx(cfg.n) if cfg.czx else synth.gen_toffoli(cfg.n)
    if cfg.fused:
        c = synth.fuse_phases(c)
    _emit(_circuit_out(c, cfg), cfg.output)
    return 0


def _lower(cfg: RunConfig) -> int:
    blocks = localize.lower_pipeline(cfg.n)
    meta, start = [], 0
    for b in blocks:
        meta.append({**b.to_dict(), "start": start, "stop": start + len(b.circuit)})
        start += len(b.circuit)
    c = core.compose(*(b.circuit for b in blocks))
    _emit(_circuit_out(c, cfg, {"blocks": meta}), cfg.output)
    return 0


def _compile(cfg: RunConfig) -> int:
    c = core.circuit_from_dict(_read_json(cfg.input))
    report = localize.check_locality(c)
    if not report:
        raise CliError("not-local", f"non-local gates at indices {list(report.offending)}")
    _emit(json.dumps(nmr.schedule_to_dict(nmr.compile_circuit(c)), indent=1), cfg.output)
    return 0


def _verify(cfg: RunConfig) -> int:
    data = _read_json(cfg.input)
    if "steps" in data:
        sched = nmr.schedule_from_dict(data)
        u = nmr.pulse_unitary(sched)
        block = sim.ORACLE_BLOCKS.get(cfg.target)
        if block is None:
            raise CliError("bad-target", f"unknown oracle {cfg.target!r}")
        report = sim.equiv_up_to_phase(u, sim.controlled_matrix(sched.width, block), cfg.tolerance)
    else:
        c = core.circuit_from_dict(data)
        report = sim.verify(c, cfg.target, cfg.tolerance, cfg.seed)
    _emit(json.dumps({"target": cfg.target, **report.to_dict()}), cfg.output)
    return 0 if report.equivalent else 1


def stats(n: int) -> dict:
    tof = synth.gen_toffoli(n)
    czx = synth.gen_czx(n)
    low = localize.lower_toffoli(n)

    def sizes(c):
        return {k.value: v for k, v in core.size(c).items()}

    return {
        "n": n,
        "depth": {"czx": core.depth(czx), "toffoli": core.depth(tof), "lowered": core.depth(low),
                  "phase_overhead": core.depth(tof) - core.depth(czx)},
        "size": {"czx": sizes(czx), "toffoli": sizes(tof), "lowered": sizes(low)},
        "formulas": {"depth_8n_minus_20": 8 * n - 20, "phase_2n_minus_3": 2 * n - 3,
                     "root_x_overhead_14n_minus_21": 14 * n - 21},
        "phase_count": core.size(tof)[core.Kind.PHASE],
        "width": tof.width,
    }


def _stats(cfg: RunConfig) -> int:
    _emit(json.dumps(stats(cfg.n), indent=1), cfg.output)
    return 0


_HANDLERS = {"synth": _synth, "lower": _lower, "compile-nmr": _compile,
             "verify": _verify, "stats": _stats}


def run(cfg: RunConfig) -> int:
    return _HANDLERS[cfg.command](cfg)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zxtoffoli", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_n=False, has_input=False):
        if needs_n:
            sp.add_argument("--n", type=int, required=True, help="qubit count (>= 3)")
        if has_input:
            sp.add_argument("input", nargs="?", default="-", help="JSON file, '-' for stdin")
        sp.add_argument("-o", "--output", default=None, help="output path (default stdout)")

    sp = sub.add_parser("synth", help="emit the n-qubit Toffoli circuit")
    common(sp, needs_n=True)
    sp.add_argument("--czx", action="store_true", help="emit the controlled-Rx skeleton only")
    sp.add_argument("--fused", action="store_true", help="fuse phases into root-of-X gates")
    sp.add_argument("--format", choices=("json", "qasm"), default="json")

    sp = sub.add_parser("lower", help="emit the nearest-neighbour circuit with block orderings")
    common(sp, needs_n=True)
    sp.add_argument("--format", choices=("json", "qasm"), default="json")

    sp = sub.add_parser("compile-nmr", help="compile a local circuit to an NMR pulse schedule")
    common(sp, has_input=True)

    sp = sub.add_parser("verify", help="compare a circuit or pulse schedule with an oracle")
    common(sp, has_input=True)
    sp.add_argument("--target", choices=sorted(sim.ORACLE_BLOCKS), default="toffoli")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("stats", help="depth and gate counts next to the reference formulas")
    common(sp, needs_n=True)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            n=getattr(args, "n", None),
            input=getattr(args, "input", None),
            output=args.output,
            format=getattr(args, "format", "json"),
            tolerance=getattr(args, "tol", 1e-9),
            seed=getattr(args, "seed", 0),
            target=getattr(args, "target", "toffoli"),
            czx=getattr(args, "czx", False),
            fused=getattr(args, "fused", False),
        )
        return run(cfg)
    except CliError as exc:
        print(f"error: {exc.code}: {str(exc).splitlines()[0]}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: invalid-input: {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
