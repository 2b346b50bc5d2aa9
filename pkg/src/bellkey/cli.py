"""Command-line front end.

Subcommands::

    bellkey analyze --alpha A --beta B [--variant one-qubit|symmetric] [--degrees] [--json]
    bellkey scan --grid N --out FILE [--variant ...]
    bellkey multiparty (--ghz N | --state-file FILE) [--functional mk|wwzb] [--seed S]
    bellkey verify [--seed S]

Exit codes: 0 success, 2 usage or domain error, 3 I/O error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from bellkey.attack import VARIANTS, AttackParams, alice_bob_state
from bellkey.chsh import BOUNDARY_BAND
from bellkey.entanglement import ppt_min_eigenvalue
from bellkey.linalg import PureState, check_density_matrix
from bellkey.multiparty import FUNCTIONALS, distillability_classify, ghz_state, optimize_settings
from bellkey.secrecy import security_report

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_VERIFY = 4

STATE_FILE_TOL = 1e-9


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def fmt(x: float) -> str:
    """Fixed CSV float format: 9 significant digits."""
    return format(float(x), ".9g")


@dataclass(frozen=True)
class ScanRecord:
    alpha: str
    beta: str
    chsh: str
    iab: str
    iae: str
    ibe: str
    ppt_min: str
    ck_direct: int
    ck_reverse: int
    violates: int
    consistent: int

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    @classmethod
    def from_values(cls, alpha, beta, chsh, iab, iae, ibe, ppt_min, variant: str) -> "ScanRecord":
        """Build a row whose flags are recomputable from its own printed numbers."""
        s = {k: fmt(v) for k, v in dict(alpha=alpha, beta=beta, chsh=chsh, iab=iab, iae=iae, ibe=ibe, ppt_min=ppt_min).items()}
        c, ab, ae, be = (float(s[k]) for k in ("chsh", "iab", "iae", "ibe"))
        return cls(
            **s,
            ck_direct=int(ab > ae),
            ck_reverse=int(ab > be),
            violates=int(c > 1 + BOUNDARY_BAND),
            consistent=int(row_consistent(c, ab, ae, be, variant)),
        )


def row_consistent(chsh: float, iab: float, iae: float, ibe: float, variant: str) -> bool:
    if abs(chsh - 1) < BOUNDARY_BAND:
        return True
    eve = min(iae, ibe) if variant == "symmetric" else max(iae, ibe)
    return (iab > eve) == (chsh > 1 + BOUNDARY_BAND)


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def _params(alpha: float, beta: float, degrees: bool) -> AttackParams:
    try:
        return AttackParams(_angle(alpha, degrees), _angle(beta, degrees))
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def cmd_analyze(args) -> int:
    params = _params(args.alpha, args.beta, args.degrees)
    report = security_report(params, args.variant)
    rho = alice_bob_state(params, args.variant)
    out = report.as_dict()
    out["ppt_min"] = ppt_min_eigenvalue(rho)
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for k, v in out.items():
            if isinstance(v, bool):
                v = int(v)
            elif isinstance(v, float):
                v = f"{v:.6f}"
            print(f"{k}={v}")
    return EXIT_OK


def scan_records(grid_n: int, variant: str) -> list[ScanRecord]:
    angles = np.linspace(0.0, math.pi / 2, grid_n)
    rows = []
    for a in angles:  # alpha-major
        for b in angles:
            p = AttackParams(float(a), float(b))
            r = security_report(p, variant)
            ppt = ppt_min_eigenvalue(alice_bob_state(p, variant))
            rows.append(ScanRecord.from_values(p.alpha, p.beta, r.chsh, r.info.iab, r.info.iae, r.info.ibe, ppt, variant))
    return rows


def cmd_scan(args) -> int:
    if args.grid < 2:
        raise CliError("--grid must be at least 2")
    out = Path(args.out)
    rows = scan_records(args.grid, args.variant)
    try:
        with out.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(ScanRecord.header())
            for r in rows:
                w.writerow(asdict(r).values())
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}", EXIT_IO) from exc
    bad = sum(1 for r in rows if not r.consistent)
    print(f"wrote {len(rows)} rows to {out}; inconsistent points outside boundary band: {bad}")
    return EXIT_OK


def load_state_file(path: str | Path):
    """Read a StateFile: amplitudes as [re, im] pairs, optional row-major density matrix."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from exc
    try:
        n = int(data["num_qubits"])
        dim = 2**n
        if data.get("density_matrix") is not None:
            entries = np.array(data["density_matrix"], dtype=float)
            rho = (entries[:, 0] + 1j * entries[:, 1]).reshape(dim, dim)
            return check_density_matrix(rho, STATE_FILE_TOL)
        amps = np.array(data["amplitudes"], dtype=float)
        amps = amps[:, 0] + 1j * amps[:, 1]
        if amps.size != dim:
            raise ValueError(f"{n} qubits need {dim} amplitudes, got {amps.size}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1) > STATE_FILE_TOL:
            raise ValueError(f"state is not normalized (|psi|^2 = {norm2!r})")
        return PureState(n, amps / math.sqrt(norm2))
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise CliError(f"invalid state file {path}: {exc}") from exc


def save_state_file(path: str | Path, state: PureState) -> None:
    data = {"num_qubits": state.num_qubits, "amplitudes": [[a.real, a.imag] for a in state.amplitudes]}
    Path(path).write_text(json.dumps(data))


def cmd_multiparty(args) -> int:
    if args.ghz is not None:
        try:
            state = ghz_state(args.ghz)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        label = f"GHZ_{args.ghz}"
    else:
        state = load_state_file(args.state_file)
        label = str(args.state_file)
    try:
        settings, value = optimize_settings(state, args.functional, args.seed)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    result = distillability_classify(settings.num_parties, value)
    out = {
        "state": label,
        "num_qubits": result.n,
        "functional": args.functional,
        "seed": args.seed,
        "value": round(value, 9),
        "degree": result.degree.value,
    }
    if args.json:
        out["settings"] = settings.vectors.tolist()
        print(json.dumps(out, indent=2))
    else:
        out["value"] = f"{value:.6f}"
        for k, v in out.items():
            print(f"{k}={v}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from bellkey.verify import run_all

    checks = run_all(args.seed)
    width = max(len(c.name) for c in checks)
    print(f"{'suite':<{width}}  {'max deviation':>13}  {'tolerance':>9}  verdict")
    for c in checks:
        print(f"{c.name:<{width}}  {c.deviation:13.3e}  {c.tolerance:9.0e}  {'PASS' if c.passed else 'FAIL'}")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bellkey", description="Bell violation versus secret-key extraction under eavesdropping attacks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="security report for one attack")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--variant", choices=VARIANTS, default="one-qubit")
    p.add_argument("--degrees", action="store_true", help="angles are given in degrees")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("scan", help="grid scan over [0, pi/2]^2 written as CSV")
    p.add_argument("--grid", type=int, default=181)
    p.add_argument("--variant", choices=VARIANTS, default="one-qubit")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("multiparty", help="optimized N-party Bell violation and distillability degree")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--ghz", type=int, metavar="N")
    src.add_argument("--state-file")
    p.add_argument("--functional", choices=FUNCTIONALS, default="mk")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_multiparty)

    p = sub.add_parser("verify", help="run the closed-form versus oracle cross-checks")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"bellkey: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
