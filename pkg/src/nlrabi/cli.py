"""Command-line interface.

Subcommands map onto the library layer one-to-one: ``spectrum`` and ``sweep``
diagonalize a chosen model, ``wigner`` and ``squeezing`` analyze cavity
eigenstates, ``polariton`` solves the two-mode problem, ``validate`` runs the
built-in invariant suite, and ``reproduce`` regenerates the data behind the
standard figures.

Exit codes: 0 on success, 1 on usage errors, 2 when a convergence or
validation check fails.  Every data file is accompanied by (or embedded in) a
JSON document carrying ``schema_version`` and the resolved configuration, so a
run can be repeated bit-for-bit from its own output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__, hamiltonians, polariton, validate
from .fock import Space
from .hamiltonians import (
    CAVITY_LABELS,
    MODEL_LABELS,
    ResonatorParams,
    build_model,
    default_cutoff,
    model_space,
    nonlinear_cavity,
    renormalize_cavity_frequency,
)
from .phase_space import squeezing_report, wigner, wigner_grid_meta, write_wigner_csv
from .spectra import convergence_check, fmt_float, sweep, write_sweep_csv

SCHEMA_VERSION = "1"
TOOL_NAME = "nlrabi"

FIGURES = {
    "fig1": "fig1",
    "fig2": "wigner-panel",
    "wigner-panel": "wigner-panel",
    "fig3": "spectra-naive-vs-corrected",
    "spectra-naive-vs-corrected": "spectra-naive-vs-corrected",
    "fig4": "spectra-gauge-consistent",
    "spectra-gauge-consistent": "spectra-gauge-consistent",
}


@dataclass(frozen=True)
class RunConfig:
    """Resolved parameters of a spectrum or sweep run.

    This is what gets serialized next to the data; feeding the JSON back via
    ``--config`` reproduces the run exactly.
    """

    command: str
    model: str
    variant: str
    omega_c: float
    omega_q: float
    eta: float
    J: float
    k: int
    cutoff: int | None
    tolerance: float
    control: str | None = None
    start: float | None = None
    stop: float | None = None
    points: int | None = None


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for convergence
    # failures here, so usage errors are remapped to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _coerce(text: str):
    low = text.strip()
    if low.lower() in ("true", "false"):
        return low.lower() == "true"
    if low.lower() in ("none", "null"):
        return None
    for kind in (int, float):
        try:
            return kind(low)
        except ValueError:
            pass
    return low


def _load_config_file(path: str) -> dict:
    raw = Path(path).read_text()
    if raw.lstrip().startswith("{"):
        doc = json.loads(raw)
        # accept either a bare config dict or a full result sidecar
        if isinstance(doc.get("config"), dict):
            doc = doc["config"]
        return dict(doc)
    entries = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = stripped.partition("=")
        entries[key.strip().replace("-", "_")] = _coerce(value)
    return entries


def _extract_config_path(argv: list[str]) -> str | None:
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if token.startswith("--config="):
            return token.split("=", 1)[1]
    return None


def _apply_config(parser: argparse.ArgumentParser, entries: dict) -> None:
    known = {action.dest for action in parser._actions}
    usable = {k: v for k, v in entries.items() if k in known and k != "command"}
    parser.set_defaults(**usable)


def _outdir(args) -> Path:
    base = args.outdir or os.environ.get("NLRABI_OUTDIR") or "."
    path = Path(base)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _resolve_out(args, default_name: str) -> Path:
    if getattr(args, "out", None):
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        return path
    return _outdir(args) / default_name


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _document(config: dict, **extra) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool": TOOL_NAME,
        "tool_version": __version__,
        "config": config,
    }
    doc.update(extra)
    return doc


def _add_common_output(sub) -> None:
    sub.add_argument("--out", help="output file path (overrides --outdir)")
    sub.add_argument("--outdir", help="output directory (default: $NLRABI_OUTDIR or .)")
    sub.add_argument("--config", help="config file: key=value lines or a JSON run document")


def _add_model_options(sub, *, models) -> None:
    sub.add_argument("--model", choices=sorted(models), default="corrected-dipole"
                     if "corrected-dipole" in models else "minus")
    sub.add_argument("--variant", choices=sorted(hamiltonians.VARIANTS), default="minus",
                     help="nonlinear potential used by coupled models")
    sub.add_argument("--omega-c", type=float, default=1.0, dest="omega_c")
    sub.add_argument("--omega-q", type=float, default=1.0, dest="omega_q")
    sub.add_argument("--eta", type=float, default=0.0)
    sub.add_argument("--J", type=float, default=0.0)
    sub.add_argument("--cutoff", type=int, default=None,
                     help="photon-number cutoff (default: automatic policy)")


def build_parser() -> _Parser:
    parser = _Parser(prog="nlrabi", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    spec = commands.add_parser("spectrum", help="eigenvalues of one model at fixed parameters")
    _add_model_options(spec, models=MODEL_LABELS)
    spec.add_argument("--k", type=int, default=6, help="number of levels")
    spec.add_argument("--tolerance", type=float, default=1e-6,
                      help="allowed drift under cutoff doubling")
    spec.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    _add_common_output(spec)
    spec.set_defaults(handler=cmd_spectrum)

    swp = commands.add_parser("sweep", help="levels along a parameter grid")
    _add_model_options(swp, models=MODEL_LABELS)
    swp.add_argument("--control", choices=("eta", "J"), default="eta")
    swp.add_argument("--start", type=float, default=0.0)
    swp.add_argument("--stop", type=float, default=3.0)
    swp.add_argument("--points", type=int, default=121)
    swp.add_argument("--k", type=int, default=6)
    swp.add_argument("--tolerance", type=float, default=1e-6)
    _add_common_output(swp)
    swp.set_defaults(handler=cmd_sweep)

    wig = commands.add_parser("wigner", help="Wigner function of a cavity eigenstate")
    wig.add_argument("--model", choices=sorted(CAVITY_LABELS), default="minus")
    wig.add_argument("--J", type=float, default=0.1)
    wig.add_argument("--omega-c", type=float, default=1.0, dest="omega_c")
    wig.add_argument("--state", type=int, default=0, help="eigenstate index")
    wig.add_argument("--cutoff", type=int, default=None)
    wig.add_argument("--x-min", type=float, default=-5.0, dest="x_min")
    wig.add_argument("--x-max", type=float, default=5.0, dest="x_max")
    wig.add_argument("--p-min", type=float, default=-5.0, dest="p_min")
    wig.add_argument("--p-max", type=float, default=5.0, dest="p_max")
    wig.add_argument("--resolution", type=int, default=201)
    _add_common_output(wig)
    wig.set_defaults(handler=cmd_wigner)

    sqz = commands.add_parser("squeezing", help="quadrature variances and squeezing measures")
    sqz.add_argument("--model", choices=sorted(CAVITY_LABELS), default="minus")
    sqz.add_argument("--J", type=float, default=0.1)
    sqz.add_argument("--omega-c", type=float, default=1.0, dest="omega_c")
    sqz.add_argument("--state", type=int, default=0)
    sqz.add_argument("--cutoff", type=int, default=None)
    _add_common_output(sqz)
    sqz.set_defaults(handler=cmd_squeezing)

    pol = commands.add_parser("polariton", help="two-mode normal modes and effective parameters")
    pol.add_argument("--omega-photon", type=float, default=1.0, dest="omega_photon")
    pol.add_argument("--omega-matter", type=float, default=2.0, dest="omega_matter")
    pol.add_argument("--lam", type=float, default=0.0, help="coupling strength")
    pol.add_argument("--J-b", type=float, default=0.0, dest="J_b",
                     help="quartic strength of the matter mode")
    _add_common_output(pol)
    pol.set_defaults(handler=cmd_polariton)

    val = commands.add_parser("validate", help="run the built-in invariant checks")
    val.add_argument("--check", action="append", dest="checks", metavar="NAME",
                     help="run only the named check (repeatable)")
    _add_common_output(val)
    val.set_defaults(handler=cmd_validate)

    rep = commands.add_parser("reproduce", help="regenerate the data behind a standard figure")
    rep.add_argument("figure", choices=sorted(FIGURES))
    rep.add_argument("--J", type=float, action="append", dest="Js", metavar="J",
                     help="coupling value (repeatable; default: 0.05 and 0.1)")
    rep.add_argument("--points", type=int, default=None, help="grid resolution override")
    rep.add_argument("--k", type=int, default=None, help="levels per curve override")
    rep.add_argument("--eta-max", type=float, default=3.0, dest="eta_max")
    rep.add_argument("--renormalized", action="store_true",
                     help="use the gap-renormalized cavity frequency in spectra figures")
    rep.add_argument("--resolution", type=int, default=201, help="Wigner grid resolution")
    rep.add_argument("--tolerance", type=float, default=1e-6)
    rep.add_argument("--outdir", help="output directory (default: $NLRABI_OUTDIR or .)")
    rep.add_argument("--config", help="config file: key=value lines or a JSON run document")
    rep.set_defaults(handler=cmd_reproduce)

    return parser


def _run_config(args) -> RunConfig:
    is_sweep = args.command == "sweep"
    return RunConfig(
        command=args.command,
        model=args.model,
        variant=args.variant,
        omega_c=args.omega_c,
        omega_q=args.omega_q,
        eta=args.eta,
        J=args.J,
        k=args.k,
        cutoff=args.cutoff,
        tolerance=args.tolerance,
        control=args.control if is_sweep else None,
        start=args.start if is_sweep else None,
        stop=args.stop if is_sweep else None,
        points=args.points if is_sweep else None,
    )


def _model_builder(cfg: RunConfig):
    def builder(eta: float, J: float, cutoff: int):
        return build_model(
            cfg.model,
            model_space(cfg.model, cutoff),
            eta=eta,
            J=J,
            omega_c=cfg.omega_c,
            omega_q=cfg.omega_q,
            variant=cfg.variant,
        )

    return builder


def cmd_spectrum(args) -> int:
    cfg = _run_config(args)
    cutoff = cfg.cutoff if cfg.cutoff is not None else default_cutoff(cfg.eta, cfg.J)
    builder = _model_builder(cfg)
    spectrum, drift = convergence_check(
        lambda n: builder(cfg.eta, cfg.J, n), cfg.k, cutoff, cfg.tolerance
    )
    levels = spectrum.eigenvalues - spectrum.eigenvalues[0]

    payload = _document(
        asdict(cfg),
        cutoff_used=spectrum.cutoff_used,
        converged=bool(spectrum.converged),
        max_drift=float(drift),
        levels=[float(v) for v in levels],
    )
    if args.fmt == "json":
        out = _resolve_out(args, "spectrum.json")
        _write_json(out, payload)
    else:
        out = _resolve_out(args, "spectrum.csv")
        with open(out, "w") as fh:
            fh.write("level,value\n")
            for i, value in enumerate(levels):
                fh.write(f"{i},{fmt_float(value)}\n")
        _write_json(out.with_suffix(".json"), payload)

    if not spectrum.converged:
        print(
            f"warning: spectrum not converged at cutoff {cutoff} "
            f"(drift {drift:.3e} > tolerance {cfg.tolerance:.3e})",
            file=sys.stderr,
        )
        return 2
    return 0


def cmd_sweep(args) -> int:
    cfg = _run_config(args)
    if cfg.points is None or cfg.points < 1:
        raise ValueError("sweep needs at least one grid point")
    grid = np.linspace(cfg.start, cfg.stop, cfg.points)
    table = sweep(
        _model_builder(cfg),
        cfg.control,
        grid,
        cfg.k,
        eta=cfg.eta,
        J=cfg.J,
        tolerance=cfg.tolerance,
        cutoff=cfg.cutoff,
        label=cfg.model,
    )
    out = _resolve_out(args, "sweep.csv")
    write_sweep_csv(table, out)
    payload = _document(
        asdict(cfg),
        cutoffs=[int(n) for n in table.cutoffs],
        drifts=[float(d) for d in table.drifts],
        converged=[bool(c) for c in table.converged],
        all_converged=bool(all(table.converged)),
    )
    _write_json(out.with_suffix(".json"), payload)

    if not all(table.converged):
        bad = [fmt_float(v) for v, ok in zip(table.control_values, table.converged) if not ok]
        print(
            f"warning: {len(bad)} sweep row(s) not converged at {cfg.control} = "
            + ", ".join(bad),
            file=sys.stderr,
        )
        return 2
    return 0


def _cavity_eigenstate(model: str, J: float, omega_c: float, state: int, cutoff: int | None):
    from .fock import State

    n = cutoff if cutoff is not None else max(default_cutoff(0.0, J), 4 * (state + 2))
    space = Space(photon=n)
    ham = nonlinear_cavity(ResonatorParams(omega_c=omega_c, J=J, variant=model), space)
    _, vecs = np.linalg.eigh(ham.mat)
    if state >= n:
        raise ValueError(f"state index {state} out of range for cutoff {n}")
    return State(space, vecs[:, state]), n


def cmd_wigner(args) -> int:
    psi, cutoff = _cavity_eigenstate(args.model, args.J, args.omega_c, args.state, args.cutoff)
    grid = wigner(
        psi,
        x_min=args.x_min,
        x_max=args.x_max,
        p_min=args.p_min,
        p_max=args.p_max,
        resolution=args.resolution,
    )
    out = _resolve_out(args, "wigner.csv")
    write_wigner_csv(grid, out)
    config = {
        "command": "wigner",
        "model": args.model,
        "J": args.J,
        "omega_c": args.omega_c,
        "state": args.state,
        "cutoff": cutoff,
        "x_min": args.x_min,
        "x_max": args.x_max,
        "p_min": args.p_min,
        "p_max": args.p_max,
        "resolution": args.resolution,
    }
    _write_json(out.with_suffix(".json"), _document(config, grid=wigner_grid_meta(grid)))
    return 0


def cmd_squeezing(args) -> int:
    psi, cutoff = _cavity_eigenstate(args.model, args.J, args.omega_c, args.state, args.cutoff)
    rep = squeezing_report(psi, args.state)
    config = {
        "command": "squeezing",
        "model": args.model,
        "J": args.J,
        "omega_c": args.omega_c,
        "state": args.state,
        "cutoff": cutoff,
    }
    out = _resolve_out(args, "squeezing.json")
    _write_json(out, _document(config, report=asdict(rep)))
    return 0


def _complex_pairs(values) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in values]


def cmd_polariton(args) -> int:
    params = polariton.HopfieldParams(
        omega_photon=args.omega_photon,
        omega_matter=args.omega_matter,
        lam=args.lam,
        J_b=args.J_b,
    )
    sol = polariton.hopfield_coefficients(params)
    config = {
        "command": "polariton",
        "omega_photon": args.omega_photon,
        "omega_matter": args.omega_matter,
        "lam": args.lam,
        "J_b": args.J_b,
    }
    solution = {
        "omega_n": [float(v) for v in sol.omega_n],
        "A_n": _complex_pairs(sol.A_n),
        "A_prime_n": _complex_pairs(sol.A_prime_n),
        "B_n": _complex_pairs(sol.B_n),
        "B_prime_n": _complex_pairs(sol.B_prime_n),
        "phi_n": [float(v) for v in sol.phi_n],
        "C_n": [float(v) for v in sol.C_n],
        "J_eff": float(sol.J_eff),
    }
    out = _resolve_out(args, "polariton.json")
    _write_json(out, _document(config, solution=solution))
    return 0


def cmd_validate(args) -> int:
    results = validate.run_checks(args.checks)
    doc = validate.report(results, __version__)
    config = {"command": "validate", "checks": args.checks or sorted(validate.CHECKS)}
    doc["config"] = config
    out = _resolve_out(args, "validate.json")
    _write_json(out, doc)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status}  {res.name}: measured {res.measured:.6e}, "
              f"requires {res.requirement} {res.tolerance:.6e}")
    print(f"{'all checks passed' if doc['passed'] else 'SOME CHECKS FAILED'} "
          f"({sum(r.passed for r in results)}/{len(results)})")
    return 0 if doc["passed"] else 2


# --- reproduce -------------------------------------------------------------

def _sweep_to_files(table, outdir: Path, stem: str):
    csv_path = outdir / f"{stem}.csv"
    write_sweep_csv(table, csv_path)
    return csv_path


def _reproduce_fig1(args, outdir: Path) -> int:
    points = args.points if args.points is not None else 41
    k = args.k if args.k is not None else 4
    grid = np.linspace(0.0, 0.1, points)

    renorm_cache: dict[tuple[str, float], float] = {}

    def renormalized_omega(variant: str, J: float) -> float:
        key = (variant, J)
        if key not in renorm_cache:
            space = Space(photon=default_cutoff(0.0, J))
            renorm_cache[key] = renormalize_cavity_frequency(variant, J, 1.0, space)
        return renorm_cache[key]

    def cavity_builder(variant: str, renormalized: bool):
        def builder(eta: float, J: float, cutoff: int):
            omega = renormalized_omega(variant, J) if renormalized and J > 0 else 1.0
            params = ResonatorParams(omega_c=omega, J=J, variant=variant)
            return nonlinear_cavity(params, Space(photon=cutoff))

        return builder

    curves = [
        ("kerr", cavity_builder("kerr", False)),
        ("renormalized-plus", cavity_builder("plus", True)),
        ("renormalized-minus", cavity_builder("minus", True)),
    ]
    files = {}
    ok = True
    for label, builder in curves:
        table = sweep(builder, "J", grid, k, tolerance=args.tolerance, label=label)
        ok = ok and all(table.converged)
        files[label] = _sweep_to_files(table, outdir, f"fig1_{label.replace('-', '_')}")

    config = {
        "command": "reproduce",
        "figure": "fig1",
        "points": points,
        "k": k,
        "tolerance": args.tolerance,
        "renormalized": True,
    }
    manifest = _document(
        config,
        figure="fig1",
        kind="levels",
        control="J",
        panels=[
            {
                "panel": "a",
                "title": "confining quartic vs Kerr",
                "curves": [
                    {"label": "kerr", "file": files["kerr"].name},
                    {"label": "renormalized-plus", "file": files["renormalized-plus"].name},
                ],
            },
            {
                "panel": "b",
                "title": "deconfining quartic vs Kerr",
                "curves": [
                    {"label": "kerr", "file": files["kerr"].name},
                    {"label": "renormalized-minus", "file": files["renormalized-minus"].name},
                ],
            },
        ],
        renormalized_frequency={
            "J": [float(v) for v in grid],
            "plus": [float(renormalized_omega("plus", J)) if J > 0 else 1.0 for J in grid],
            "minus": [float(renormalized_omega("minus", J)) if J > 0 else 1.0 for J in grid],
        },
    )
    _write_json(outdir / "fig1_manifest.json", manifest)
    return 0 if ok else 2


def _reproduce_spectra(args, outdir: Path, figure: str) -> int:
    short = "fig3" if figure == "spectra-naive-vs-corrected" else "fig4"
    points = args.points if args.points is not None else 121
    k = args.k if args.k is not None else 6
    Js = args.Js or [0.05, 0.1]
    grid = np.linspace(0.0, args.eta_max, points)

    if figure == "spectra-naive-vs-corrected":
        curves = [
            ("naive-minus", "naive-dipole", "minus"),
            ("naive-kerr", "naive-dipole", "kerr"),
            ("corrected-minus", "corrected-dipole", "minus"),
        ]
    else:
        curves = [
            ("corrected-plus", "corrected-dipole", "plus"),
            ("corrected-minus", "corrected-dipole", "minus"),
            ("corrected-kerr", "corrected-dipole", "kerr"),
        ]

    renorm_cache: dict[tuple[str, float], float] = {}

    def cavity_frequency(variant: str, J: float) -> float:
        if not args.renormalized or variant == "kerr" or J == 0:
            return 1.0
        key = (variant, J)
        if key not in renorm_cache:
            space = Space(photon=default_cutoff(0.0, J))
            renorm_cache[key] = renormalize_cavity_frequency(variant, J, 1.0, space)
        return renorm_cache[key]

    ok = True
    panels = []
    for J in Js:
        entry = {"panel": f"J={J:g}", "J": float(J), "curves": []}
        for label, model, variant in curves:
            def builder(eta: float, Jv: float, cutoff: int, _m=model, _v=variant):
                return build_model(
                    _m,
                    model_space(_m, cutoff),
                    eta=eta,
                    J=Jv,
                    omega_c=cavity_frequency(_v, Jv),
                    variant=_v,
                )

            table = sweep(builder, "eta", grid, k, J=J, tolerance=args.tolerance, label=label)
            ok = ok and all(table.converged)
            stem = f"{short}_{label.replace('-', '_')}_J{J:g}"
            path = _sweep_to_files(table, outdir, stem)
            entry["curves"].append(
                {"label": label, "model": model, "variant": variant, "file": path.name}
            )
        panels.append(entry)

    config = {
        "command": "reproduce",
        "figure": figure,
        "points": points,
        "k": k,
        "J": [float(J) for J in Js],
        "eta_max": args.eta_max,
        "tolerance": args.tolerance,
        "renormalized": bool(args.renormalized),
    }
    manifest = _document(config, figure=figure, kind="levels", control="eta", panels=panels)
    _write_json(outdir / f"{short}_manifest.json", manifest)
    return 0 if ok else 2


def _reproduce_wigner_panel(args, outdir: Path) -> int:
    J = args.Js[0] if args.Js else 0.1
    resolution = args.resolution
    states = (0, 1, 2, 3)
    columns = ("kerr", "minus", "plus")
    cutoff = default_cutoff(0.0, J)

    panels = []
    grid_meta = None
    for model in columns:
        space = Space(photon=cutoff)
        ham = nonlinear_cavity(ResonatorParams(omega_c=1.0, J=J, variant=model), space)
        _, vecs = np.linalg.eigh(ham.mat)
        for state in states:
            from .fock import State

            psi = State(space, vecs[:, state])
            grid = wigner(psi, resolution=resolution)
            name = f"wigner_panel_{model}_n{state}.csv"
            write_wigner_csv(grid, outdir / name)
            rep = squeezing_report(psi, state)
            panels.append(
                {
                    "hamiltonian": model,
                    "state": int(state),
                    "file": name,
                    "s_sq": float(rep.s_sq),
                }
            )
            if grid_meta is None:
                grid_meta = wigner_grid_meta(grid)

    config = {
        "command": "reproduce",
        "figure": "wigner-panel",
        "J": float(J),
        "resolution": resolution,
        "cutoff": cutoff,
    }
    manifest = _document(
        config,
        figure="wigner-panel",
        kind="wigner_grid",
        columns=list(columns),
        rows=[int(s) for s in states],
        grid=grid_meta,
        panels=panels,
    )
    _write_json(outdir / "wigner_panel_manifest.json", manifest)
    return 0


def cmd_reproduce(args) -> int:
    figure = FIGURES[args.figure]
    outdir = _outdir(args)
    if figure == "fig1":
        return _reproduce_fig1(args, outdir)
    if figure == "wigner-panel":
        return _reproduce_wigner_panel(args, outdir)
    return _reproduce_spectra(args, outdir, figure)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    config_path = _extract_config_path(argv)
    if config_path is not None:
        try:
            entries = _load_config_file(config_path)
        except (OSError, ValueError, json.JSONDecodeError) as exc:
            print(f"nlrabi: error: cannot read config {config_path}: {exc}", file=sys.stderr)
            return 1
        # config supplies defaults; explicit flags still win
        for action in parser._actions:
            if isinstance(action, argparse._SubParsersAction):
                for sub in action.choices.values():
                    _apply_config(sub, entries)
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, RuntimeError) as exc:
        print(f"nlrabi: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
