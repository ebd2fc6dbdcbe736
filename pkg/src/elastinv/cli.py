"""Command-line entry point: ``elastinv <subcommand> ...``.

Exit codes: 0 success, 1 validation failure, 2 configuration error,
3 nonconvergence (the partial trace is still written).
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import diagnostics
from .exceptions import ConfigError, ElastinvError
from .inverse import run_algorithm_I, run_algorithm_II, synthesize_data
from .io import RunConfig, read_far_field, write_curve_json, write_curves, write_far_field, write_trace

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_NONCONVERGED = 0, 1, 2, 3

log = logging.getLogger("elastinv")


def _load(path) -> RunConfig:
    return RunConfig.load(path)


def cmd_forward(args) -> int:
    cfg = _load(args.config)
    if cfg.shape is None:
        raise ConfigError("forward needs a 'shape' entry", key="shape")
    s = cfg.solver
    if args.noise is not None:
        s["delta"] = args.noise
    if args.seed is not None:
        s["seed"] = args.seed
    out = Path(args.out or Path(cfg.output_dir) / "farfield.dat")
    out.parent.mkdir(parents=True, exist_ok=True)
    ff = synthesize_data(cfg.shape, cfg.medium, cfg.wave, int(s["n_data"]), int(s["n_bar"]), cfg.reference_ball,
                         float(s["delta"]), int(s["seed"]))
    write_far_field(out, ff, cfg.data_header(False))
    print(f"wrote {out} ({ff.directions.size} directions)")
    if args.phaseless:
        sq = synthesize_data(cfg.shape, cfg.medium, cfg.wave, int(s["n_data"]), int(s["n_bar"]),
                             cfg.reference_ball, float(s["delta"]), int(s["seed"]), phaseless=True)
        out2 = out.with_name(out.stem + "_phaseless" + out.suffix)
        write_far_field(out2, sq, cfg.data_header(True))
        print(f"wrote {out2}")
    return EXIT_OK


def _invert(args, phaseless: bool) -> int:
    cfg = _load(args.config)
    if phaseless and cfg.reference_ball is None:
        print("error: phaseless inversion needs a reference ball; squared far-field moduli are invariant "
              "under translations of the obstacle, so its location cannot be recovered without one",
              file=sys.stderr)
        return EXIT_CONFIG
    if cfg.initial is None:
        raise ConfigError("inversion needs an 'initial' guess", key="initial")
    data, head = read_far_field(args.data)
    cfg.check_header(head)
    if phaseless:
        data = data.modulus_squared()
    elif head.get("phaseless"):
        raise ConfigError("phased inversion was given a phaseless data file", key="phaseless")
    rc = cfg.reconstruction()
    runner = run_algorithm_II if phaseless else run_algorithm_I
    trace = runner(rc, cfg.medium, cfg.wave, data, cfg.initial, exact=cfg.shape)
    outdir = Path(args.out_dir or cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    write_trace(outdir / "trace.csv", trace, rc.M)
    write_curve_json(outdir / "final_curve.json", trace.final_curve)
    curves = {"initial": cfg.initial, "reconstructed": trace.final_curve}
    if cfg.shape is not None:
        curves = {"exact": cfg.shape, **curves}
    if cfg.reference_ball is not None:
        curves["reference_ball"] = cfg.reference_ball
    write_curves(outdir / "curves.csv", curves)
    last = trace.records[-1]
    print(f"status={trace.status} iterations={last.k} E={last.E:.4e} Err={last.Err:.4e}")
    if trace.message:
        print(trace.message)
    return EXIT_OK if trace.converged else EXIT_NONCONVERGED


def cmd_validate(args) -> int:
    results = diagnostics.run_all(corrupt_weights=args.corrupt_weights)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="elastinv", description="Elastic obstacle scattering: forward solver and "
                                "shape reconstruction from phased or phaseless far-field data.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    for name, hlp in (("forward", "compute far-field data for the configured shape"),
                      ("make-data", "alias of forward: synthetic (optionally noisy) data")):
        f = sub.add_parser(name, help=hlp)
        f.add_argument("config")
        f.add_argument("-o", "--out")
        f.add_argument("--phaseless", action="store_true", help="also write squared moduli")
        f.add_argument("--noise", type=float, help="relative noise level (overrides solver.delta)")
        f.add_argument("--seed", type=int)
        f.set_defaults(func=cmd_forward)
    for name, phaseless in (("invert-phased", False), ("invert-phaseless", True)):
        f = sub.add_parser(name, help="reconstruct from squared moduli (needs a reference ball)" if phaseless
                           else "reconstruct from phased far-field data")
        f.add_argument("config")
        f.add_argument("data")
        f.add_argument("-o", "--out-dir")
        f.set_defaults(func=lambda a, ph=phaseless: _invert(a, ph))
    v = sub.add_parser("validate", help="run the built-in consistency checks")
    v.add_argument("--corrupt-weights", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        key = f" [{exc.key}]" if getattr(exc, "key", None) else ""
        print(f"config error{key}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, ElastinvError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION if isinstance(exc, ElastinvError) else EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
