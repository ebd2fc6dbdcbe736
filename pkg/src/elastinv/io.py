"""Run configuration, far-field data files, traces and curve polylines.

Far-field files are plain text: a ``#``-prefixed JSON header followed by one
record per direction, every real number written with 17 significant digits so
binary64 values survive the round trip exactly.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import ConfigError, HeaderMismatchError
from .forward import FarField
from .geometry import CircleBoundary, StarCurve, builtin_shape
from .inverse import IterationTrace, ReconstructionConfig
from .medium import ElasticMedium, IncidentWave, ModeFlags

FORMAT_VERSION = 1
MAGIC = "elastinv-farfield"
CURVE_SAMPLES = 256


def _fmt(x: float) -> str:
    return format(float(x), ".16e")


# -- far-field files ----------------------------------------------------------

def write_far_field(path, ff: FarField, header: dict) -> None:
    """Write ``ff`` with ``header`` (medium, wave, n_bar, delta, seed, ...)."""
    head = {"format": MAGIC, "version": FORMAT_VERSION, "n_bar": ff.n_bar, "phaseless": bool(ff.phaseless)}
    head.update(header)
    lines = ["# " + json.dumps(head, sort_keys=True)]
    if ff.phaseless:
        lines.append("# angle |phi|^2 |psi|^2")
        rows = zip(ff.directions, ff.phi.real, ff.psi.real)
    else:
        lines.append("# angle Re(phi) Im(phi) Re(psi) Im(psi)")
        rows = zip(ff.directions, ff.phi.real, ff.phi.imag, ff.psi.real, ff.psi.imag)
    lines.extend(" ".join(_fmt(v) for v in row) for row in rows)
    Path(path).write_text("\n".join(lines) + "\n")


def read_far_field(path):
    """Return ``(FarField, header)`` from a file written by :func:`write_far_field`."""
    text = Path(path).read_text().splitlines()
    if not text or not text[0].startswith("# "):
        raise HeaderMismatchError(f"{path}: missing header", key="format")
    try:
        head = json.loads(text[0][2:])
    except json.JSONDecodeError as exc:
        raise HeaderMismatchError(f"{path}: unreadable header ({exc})", key="format") from None
    if head.get("format") != MAGIC:
        raise HeaderMismatchError(f"{path}: not a far-field data file", key="format")
    if head.get("version") != FORMAT_VERSION:
        raise HeaderMismatchError(f"{path}: unsupported format version {head.get('version')}", key="version")
    rows = np.array([[float(v) for v in ln.split()] for ln in text[1:] if ln and not ln.startswith("#")])
    phaseless = bool(head["phaseless"])
    ncol = 3 if phaseless else 5
    if rows.ndim != 2 or rows.shape[1] != ncol or rows.shape[0] != 2 * head["n_bar"]:
        raise HeaderMismatchError(f"{path}: records do not match the header", key="n_bar")
    if phaseless:
        ff = FarField(rows[:, 0], rows[:, 1], rows[:, 2], phaseless=True)
    else:
        ff = FarField(rows[:, 0], rows[:, 1] + 1j * rows[:, 2], rows[:, 3] + 1j * rows[:, 4])
    return ff, head


# -- run configuration --------------------------------------------------------

_SOLVER_DEFAULTS = {"n": 64, "n_bar": 32, "n_data": 128, "M": 6, "rho": 0.9, "epsilon": 0.01,
                    "delta": 0.0, "max_iters": 100, "seed": 0, "penalty": "h2", "linearization": "frozen"}
_TOP_KEYS = {"medium", "wave", "mode", "shape", "reference_ball", "initial", "solver", "output_dir"}


def _reject_unknown(section: dict, allowed, where: str):
    if not isinstance(section, dict):
        raise ConfigError(f"{where} must be a mapping", key=where)
    for key in section:
        if key not in allowed:
            raise ConfigError(f"unknown key {where + '.' if where else ''}{key}", key=key)


def _need(section, key, where):
    if key not in section:
        raise ConfigError(f"missing key {where}.{key}", key=key)
    return section[key]


@dataclass
class RunConfig:
    medium: ElasticMedium
    wave: IncidentWave
    mode: ModeFlags = field(default_factory=ModeFlags)
    shape: object = None
    reference_ball: CircleBoundary | None = None
    initial: StarCurve | None = None
    solver: dict = field(default_factory=lambda: dict(_SOLVER_DEFAULTS))
    output_dir: str = "."

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        _reject_unknown(d, _TOP_KEYS, "")
        try:
            med = _need(d, "medium", "config")
            _reject_unknown(med, {"lambda", "mu", "omega"}, "medium")
            medium = ElasticMedium(float(_need(med, "lambda", "medium")), float(_need(med, "mu", "medium")),
                                   float(_need(med, "omega", "medium")))
            wv = _need(d, "wave", "config")
            _reject_unknown(wv, {"kind", "theta"}, "wave")
            wave = IncidentWave(_need(wv, "kind", "wave"), float(_need(wv, "theta", "wave")))
            mode = ModeFlags.from_name(d.get("mode", "p"))
            solver = dict(_SOLVER_DEFAULTS)
            sv = d.get("solver", {})
            _reject_unknown(sv, _SOLVER_DEFAULTS.keys(), "solver")
            solver.update(sv)
            shape = d.get("shape")
            if isinstance(shape, dict):
                _reject_unknown(shape, {"c1", "c2", "alpha", "beta"}, "shape")
                shape = StarCurve.from_dict(shape)
            elif shape is not None:
                shape = builtin_shape(shape)
            ball = d.get("reference_ball")
            if ball is not None:
                _reject_unknown(ball, {"b1", "b2", "R"}, "reference_ball")
                ball = CircleBoundary.from_dict(ball)
            init = d.get("initial")
            if init is not None:
                if "radius" in init:
                    _reject_unknown(init, {"c1", "c2", "radius"}, "initial")
                    init = StarCurve.circle((init["c1"], init["c2"]), init["radius"], M=solver["M"])
                else:
                    _reject_unknown(init, {"c1", "c2", "alpha", "beta"}, "initial")
                    init = StarCurve.from_dict(init)
            cfg = cls(medium, wave, mode, shape, ball, init, solver, str(d.get("output_dir", ".")))
            cfg.reconstruction()  # validates solver parameters
            return cfg
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid configuration: {exc}", key=getattr(exc, "key", None)) from exc

    @classmethod
    def load(cls, path) -> "RunConfig":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON ({exc})", key=None) from None
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        d = {"medium": self.medium.to_dict(), "wave": self.wave.to_dict(), "mode": self.mode.name,
             "solver": dict(self.solver), "output_dir": self.output_dir}
        if self.shape is not None:
            d["shape"] = self.shape.to_dict() if isinstance(self.shape, StarCurve) else self.shape.name
        if self.reference_ball is not None:
            d["reference_ball"] = self.reference_ball.to_dict()
        if self.initial is not None:
            d["initial"] = self.initial.to_dict()
        return d

    def dump(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n")

    def reconstruction(self) -> ReconstructionConfig:
        s = self.solver
        return ReconstructionConfig(M=int(s["M"]), n=int(s["n"]), n_bar=int(s["n_bar"]), rho=float(s["rho"]),
                                    epsilon=float(s["epsilon"]), delta=float(s["delta"]),
                                    max_iters=int(s["max_iters"]), mode=self.mode,
                                    reference_ball=self.reference_ball, rng_seed=int(s["seed"]),
                                    penalty=s["penalty"], linearization=s["linearization"])

    def data_header(self, phaseless: bool) -> dict:
        s = self.solver
        head = {"medium": self.medium.to_dict(), "wave": self.wave.to_dict(), "delta": float(s["delta"]),
                "seed": int(s["seed"]), "n_data": int(s["n_data"]), "phaseless": phaseless,
                "reference_ball": None if self.reference_ball is None else self.reference_ball.to_dict()}
        if self.shape is not None:
            head["shape"] = self.to_dict()["shape"]
        return head

    def check_header(self, head: dict) -> None:
        """Raise HeaderMismatchError if a data file was made under different physics."""
        if not _close_dict(head.get("medium"), self.medium.to_dict()):
            raise HeaderMismatchError("data file medium differs from the configuration", key="medium")
        if not _close_dict(head.get("wave"), self.wave.to_dict()):
            raise HeaderMismatchError("data file incident wave differs from the configuration", key="wave")
        if int(head.get("n_bar", -1)) != int(self.solver["n_bar"]):
            raise HeaderMismatchError("data file n_bar differs from the configuration", key="n_bar")
        ball = None if self.reference_ball is None else self.reference_ball.to_dict()
        if (head.get("reference_ball") is None) != (ball is None) or (
                ball is not None and not _close_dict(head["reference_ball"], ball)):
            raise HeaderMismatchError("data file reference ball differs from the configuration",
                                      key="reference_ball")


def _close_dict(a, b):
    if not isinstance(a, dict) or set(a) != set(b):
        return False
    for k, v in b.items():
        if isinstance(v, str):
            if a[k] != v:
                return False
        elif not math.isclose(float(a[k]), float(v), rel_tol=1e-12, abs_tol=1e-15):
            return False
    return True


# -- traces and curves --------------------------------------------------------

def trace_rows(trace: IterationTrace):
    for r in trace.records:
        yield [r.k, r.E, r.Err, r.lam, *r.curve.coefficients]


def write_trace(path, trace: IterationTrace, M: int) -> None:
    header = ["k", "E", "Err", "lambda", "c1", "c2"] + [f"alpha{m}" for m in range(M + 1)] + \
             [f"beta{m}" for m in range(1, M + 1)]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in trace_rows(trace):
            w.writerow([row[0]] + [_fmt(v) for v in row[1:]])


def read_trace(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array([[float(v) for v in r] for r in rows[1:]])


def write_curves(path, curves: dict, num: int = CURVE_SAMPLES) -> None:
    """Polylines ``name, t, x, y`` for each named curve, ``num`` samples each."""
    t = 2 * math.pi * np.arange(num) / num
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["curve", "t", "x", "y"])
        for name, c in curves.items():
            for ti, (x, y) in zip(t, c(t)):
                w.writerow([name, _fmt(ti), _fmt(x), _fmt(y)])


def write_curve_json(path, curve: StarCurve) -> None:
    Path(path).write_text(json.dumps(curve.to_dict(), indent=2) + "\n")
