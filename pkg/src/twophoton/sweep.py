"""Parameter sweeps and the CSV datasets behind the entropy figures.

A sweep varies one parameter of a state model over a grid and evaluates one
output series per combination of the fixed parameters. The quantity is the
joint entropy of the pair, or the post-measurement entropy of photon 2 when
an analyzer is configured (via a fixed ``n3`` or an explicit direction).

Fixed values may name the swept parameter instead of a number, which ties the
two together (``xi3_2 = xi3_1``). Invalid parameter tuples produce an empty
cell and a message in the trailing ``reason`` column.
"""

import csv
import io
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from twophoton import entropy, measurement, states
from twophoton.errors import DomainError

DEFAULT_POINTS = 201

MODEL_PARAMS = {
    "A": ("zeta", "zeta33"),
    "B": ("xi3_1", "xi3_2"),
    "C": ("xi", "zeta"),
    "five": ("xi3_1", "xi3_2", "z11", "z22", "z33"),
    "full": tuple(f"xi1_{i}" for i in (1, 2, 3))
    + tuple(f"xi2_{i}" for i in (1, 2, 3))
    + tuple(f"zeta_{i}{j}" for i in (1, 2, 3) for j in (1, 2, 3)),
}
ANALYZER_PARAM = "n3"


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep and which series to produce.

    Attributes:
        model: one of ``A``, ``B``, ``C``, ``five``, ``full``.
        swept: ``(name, start, stop, step)``.
        fixed: parameter name -> tuple of values; a value may be a float or the
            swept parameter's name. ``n3`` configures an axial analyzer.
        analyzer: explicit analyzer direction for photon 1, or ``None``.
        reference: add the single-photon entropy of the swept value as an
            extra series.
        points: if set, use this many evenly spaced points instead of ``step``.
    """

    model: str
    swept: tuple
    fixed: dict = field(default_factory=dict)
    analyzer: tuple | None = None
    reference: bool = False
    points: int | None = None
    comments: tuple = ()

    def __post_init__(self):
        if self.model not in MODEL_PARAMS:
            raise DomainError(f"unknown model {self.model!r}; expected one of {sorted(MODEL_PARAMS)}")
        name, start, stop, step = self.swept
        allowed = MODEL_PARAMS[self.model]
        if name not in allowed:
            raise DomainError(f"model {self.model} has no parameter {name!r}; expected one of {allowed}")
        if not step > 0:
            raise DomainError("sweep step must be positive")
        if not start <= stop:
            raise DomainError("sweep start must not exceed stop")
        if self.points is not None and self.points < 2:
            raise DomainError("points must be at least 2")
        for key, values in self.fixed.items():
            if key != ANALYZER_PARAM and key not in allowed:
                raise DomainError(f"model {self.model} has no parameter {key!r}")
            if key == name:
                raise DomainError(f"{key!r} is both swept and fixed")
            if not values:
                raise DomainError(f"no values given for {key!r}")
            for v in values:
                if isinstance(v, str) and v != name:
                    raise DomainError(f"{key}={v!r}: only the swept parameter may be referenced")
        if ANALYZER_PARAM in self.fixed and self.analyzer is not None:
            raise DomainError("give either n3 or an explicit analyzer, not both")

    def grid(self):
        _, start, stop, step = self.swept
        if self.points is not None:
            return np.linspace(start, stop, self.points)
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return start + step * np.arange(n)

    def series(self):
        """``(label, assignment)`` pairs, one per combination of fixed values."""
        keys = sorted(self.fixed)
        varying = [k for k in keys if len(self.fixed[k]) > 1] or keys
        out = []
        for combo in itertools.product(*(self.fixed[k] for k in keys)):
            assign = dict(zip(keys, combo))
            label = ";".join(f"{k}={_fmt_label(assign[k])}" for k in varying) or "value"
            out.append((label, assign))
        return out


def _fmt_label(v):
    return v if isinstance(v, str) else format(float(v), ".9g")


def _params(spec, assign, x):
    """Resolve the full parameter dict for one grid point."""
    name = spec.swept[0]
    vals = {k: 0.0 for k in MODEL_PARAMS[spec.model]}
    vals[name] = float(x)
    n3 = None
    for k, v in assign.items():
        v = float(x) if isinstance(v, str) else float(v)
        if k == ANALYZER_PARAM:
            n3 = v
        else:
            vals[k] = v
    return vals, n3


def _state(model, v):
    if model == "A":
        return states.model_a(v["zeta"], v["zeta33"])
    if model == "B":
        return states.model_b(v["xi3_1"], v["xi3_2"])
    if model == "C":
        return states.model_c(v["xi"], v["zeta"])
    if model == "five":
        s = states.FiveParamState(v["xi3_1"], v["xi3_2"], v["z11"], v["z22"], v["z33"])
        if s.eigenvalues()[-1] < -1e-12:
            raise DomainError("five-parameter state has a negative eigenvalue")
        return s
    p = states.TwoPhotonParams(
        [v[f"xi1_{i}"] for i in (1, 2, 3)],
        [v[f"xi2_{i}"] for i in (1, 2, 3)],
        [[v[f"zeta_{i}{j}"] for j in (1, 2, 3)] for i in (1, 2, 3)],
    )
    if not states.is_physical(p):
        raise DomainError("state has a negative eigenvalue")
    return p


def _joint(model, v, s):
    if model == "A":
        return entropy.entropy_model_a(v["zeta"], v["zeta33"])
    if model == "B":
        return entropy.entropy_model_b(v["xi3_1"], v["xi3_2"])
    if model == "C":
        return entropy.entropy_model_c(v["xi"], v["zeta"])
    if model == "five":
        return entropy.entropy_five_closed(s)
    return entropy.joint_entropy(s)


def evaluate(spec, assign, x):
    """Value of one series at one grid point; raises DomainError if invalid."""
    v, n3 = _params(spec, assign, x)
    s = _state(spec.model, v)
    n = measurement.axial(n3) if n3 is not None else spec.analyzer
    if n is None:
        return _joint(spec.model, v, s)
    n = measurement.unit_vector(n)
    if isinstance(s, states.TwoPhotonParams):
        return measurement.reduce_type_III(s, measurement.AnalyzerIII(n)).post_entropy_2
    return measurement.post_measurement_entropy(s, n)


@dataclass
class SweepResult:
    name: str
    labels: list
    xs: np.ndarray
    values: np.ndarray  # NaN where invalid
    reasons: list
    comments: tuple = ()

    def column(self, label):
        return self.values[:, self.labels.index(label)]


def run_sweep(spec):
    xs = spec.grid()
    series = spec.series()
    labels = [lab for lab, _ in series]
    if spec.reference:
        labels.append(f"S1({spec.swept[0]})")
    values = np.full((len(xs), len(labels)), np.nan)
    reasons = []
    for r, x in enumerate(xs):
        msgs = []
        for c, (lab, assign) in enumerate(series):
            try:
                values[r, c] = evaluate(spec, assign, x)
            except DomainError as exc:
                msgs.append(f"{lab}: {exc}")
        if spec.reference:
            try:
                values[r, -1] = entropy.single_photon_entropy(abs(float(x)))
            except DomainError as exc:
                msgs.append(f"{labels[-1]}: {exc}")
        reasons.append(" | ".join(msgs))
    return SweepResult(spec.swept[0], labels, xs, values, reasons, spec.comments)


def fmt(x):
    """Nine significant digits; scientific notation only below 1e-4."""
    if x == 0:
        return "0"
    if abs(x) < 1e-4:
        return format(x, ".8e")
    return format(x, ".9g")


def to_csv(result):
    buf = io.StringIO()
    for line in result.comments:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([result.name, *result.labels, "reason"])
    for x, row, reason in zip(result.xs, result.values, result.reasons):
        w.writerow([fmt(float(x)), *("" if np.isnan(v) else fmt(float(v)) for v in row), reason])
    return buf.getvalue()


def write_csv(result, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(to_csv(result))


# --------------------------------------------------------------------------
# figure presets


@dataclass(frozen=True)
class FigurePreset:
    id: int
    title: str
    spec: SweepSpec


def _preset(fid, title, model, swept, fixed, reference=False, notes=()):
    comments = (f"figure {fid}: {title}", f"model {model}", *notes)
    return FigurePreset(
        fid,
        title,
        SweepSpec(model, (swept, 0.0, 1.0, 0.005), fixed, reference=reference, comments=comments),
    )


FIGURES = {
    p.id: p
    for p in (
        _preset(
            1,
            "joint entropy of model A versus zeta",
            "A",
            "zeta",
            {"zeta33": (0.0, 0.66, 0.85, 1.0)},
            notes=("zeta33=1 coincides with the single-photon entropy of zeta",),
        ),
        _preset(
            2,
            "joint entropy of model B versus xi3_1",
            "B",
            "xi3_1",
            {"xi3_2": ("xi3_1", 0.0, 0.1, 0.2, 0.4)},
            reference=True,
            notes=(
                "reference series is the single-photon entropy of photon 1, S1(xi3_1)",
                "it crosses each fixed-xi3_2 curve at xi3_1 = (1 - xi3_2)/2",
            ),
        ),
        _preset(
            3,
            "joint entropy of model C versus xi",
            "C",
            "xi",
            {"zeta": (0.0, 0.6, 0.8, 0.9)},
            notes=("zeta=0 coincides with the single-photon entropy of xi",),
        ),
        _preset(
            4,
            "photon 2 entropy after measuring photon 1, model A, versus zeta",
            "A",
            "zeta",
            {"zeta33": (0.0, 0.66, 0.95), "n3": (0.5,)},
            reference=True,
        ),
        _preset(
            5,
            "photon 2 entropy after measuring photon 1, model B with xi3_1 = xi3_2",
            "B",
            "xi3_1",
            {"xi3_2": ("xi3_1",), "n3": (1.0, 0.8, 0.5)},
            reference=True,
        ),
        _preset(
            6,
            "photon 2 entropy after measuring photon 1, model B versus xi3_2",
            "B",
            "xi3_2",
            {"xi3_1": (0.1, 0.4, 0.8), "n3": (-0.3,)},
            reference=True,
        ),
        _preset(
            7,
            "photon 2 entropy after measuring photon 1, model C versus zeta",
            "C",
            "zeta",
            {"xi": (0.0, 0.4, 0.7), "n3": (0.5,)},
            reference=True,
        ),
        _preset(
            8,
            "photon 2 entropy after measuring photon 1, model C versus zeta",
            "C",
            "zeta",
            {"xi": (0.0, 0.4, 0.7), "n3": (-0.7,)},
            reference=True,
        ),
    )
}


def figure_spec(fid, points=DEFAULT_POINTS):
    if fid not in FIGURES:
        raise DomainError(f"unknown figure {fid}; expected 1..8")
    spec = FIGURES[fid].spec
    return SweepSpec(
        spec.model,
        spec.swept,
        spec.fixed,
        spec.analyzer,
        spec.reference,
        points,
        spec.comments,
    )
