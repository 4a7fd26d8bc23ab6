"""Command-line interface.

Exit codes: 0 success (or a physical state), 1 domain or physicality
failure, 2 I/O or parse failure.
"""

import argparse
import math
import sys

import numpy as np

from twophoton import entropy, measurement, states, sweep
from twophoton.errors import DegenerateMeasurementError, DomainError, StateFileError

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2


class _Usage(Exception):
    pass


def _vector(text):
    try:
        v = [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated vector: {text!r}") from exc
    if len(v) != 3:
        raise argparse.ArgumentTypeError(f"expected three components, got {len(v)}")
    return v


def _direction(v):
    """Accept directions that are unit up to typing precision and renormalise."""
    norm = math.sqrt(sum(c * c for c in v))
    if abs(norm - 1.0) > 1e-6:
        raise DomainError(f"analyzer direction {v} is not a unit vector (|n| = {norm:.9g})")
    return [c / norm for c in v]


def _assignment(text):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected name=value[,value...], got {text!r}")
    name, _, rhs = text.partition("=")
    values = []
    for tok in rhs.split(","):
        tok = tok.strip()
        try:
            values.append(float(tok))
        except ValueError:
            values.append(tok)
    return name.strip(), tuple(values)


def _sweep_range(text):
    try:
        name, _, rng = text.partition("=")
        start, stop, step = (float(t) for t in rng.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected name=start:stop:step, got {text!r}") from exc
    return name.strip(), start, stop, step


def _out(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# --------------------------------------------------------------------------
# commands


def cmd_validate(args):
    p = states.load_state(args.state)
    report = states.validate(p)
    for c in report.checks:
        print(c.line())
    print("spectrum: " + " ".join(f"{v:.9g}" for v in report.spectrum))
    for f in report.findings:
        print(f"finding: {f}")
    print("physical" if report.physical else "UNPHYSICAL")
    return EXIT_OK if report.physical else EXIT_DOMAIN


def cmd_entropy(args):
    p = states.load_state(args.state)
    rep = entropy.entropy_report(p)
    scale, unit = (math.log(2.0), "bits") if args.bits else (1.0, "nats")

    def show(label, v):
        print(f"{label:<8} = {v / scale:.6f} {unit}")

    show("S(1,2)", rep.s_joint)
    show("S1", rep.s1)
    show("S2", rep.s2)
    show("S(1|2)", rep.s_cond_1g2)
    show("S(2|1)", rep.s_cond_2g1)
    show("I(1:2)", rep.mutual)
    print(f"classification: {rep.classification.value}")
    if args.closed_form:
        if p.is_five_param():
            closed = entropy.entropy_five_closed(p.to_five())
            show("S closed", closed)
            print(f"residual |closed - numeric| = {abs(closed - rep.s_joint):.3e} nats")
        else:
            print("closed form: state is not in the five-parameter family")
    return EXIT_OK


def cmd_measure(args):
    p = states.load_state(args.state)
    if args.type == "I":
        if args.n is None or args.n2 is None:
            raise _Usage("type I needs --n and --n2")
        a = measurement.AnalyzerI(_direction(args.n), _direction(args.n2))
        print(f"w = {measurement.prob_type_I(p, a):.6f}")
    elif args.type == "II":
        if args.filter is None:
            raise _Usage("type II needs --filter")
        a = measurement.AnalyzerII(states.load_state(args.filter))
        print(f"w = {measurement.prob_type_II(p, a):.6f}")
    else:
        if args.n is None:
            raise _Usage("type III needs --n")
        out = measurement.reduce_type_III(p, measurement.AnalyzerIII(_direction(args.n)))
        xi = out.post_state_2
        print(f"probability = {out.probability:.6f}")
        print(f"xi2' = ({xi[0]:.6f}, {xi[1]:.6f}, {xi[2]:.6f})  |xi2'| = {np.linalg.norm(xi):.6f}")
        print(f"S(n) = {out.post_entropy_2:.6f} nats")
        print(f"delta vs before = {out.delta_vs_single:+.6f} nats")
        print(f"verdict: {out.thermal.value}")
    return EXIT_OK


def cmd_sweep(args):
    if args.figure is not None:
        if args.model or args.sweep or args.fix:
            raise _Usage("--figure cannot be combined with --model/--sweep/--fix")
        spec = sweep.figure_spec(args.figure, args.points or sweep.DEFAULT_POINTS)
    else:
        if not (args.model and args.sweep):
            raise _Usage("give --figure, or --model with --sweep")
        spec = sweep.SweepSpec(
            args.model,
            args.sweep,
            dict(args.fix or ()),
            analyzer=tuple(_direction(args.n)) if args.n else None,
            reference=args.reference,
            points=args.points,
        )
    _out(sweep.to_csv(sweep.run_sweep(spec)), args.out)
    return EXIT_OK


def cmd_generate(args):
    fixed = dict(args.fix or ())
    for k, vs in fixed.items():
        if len(vs) != 1 or isinstance(vs[0], str):
            raise _Usage(f"--fix {k} needs exactly one number")
    v = {k: 0.0 for k in sweep.MODEL_PARAMS[args.model]}
    for k, (x,) in fixed.items():
        if k not in v:
            raise _Usage(f"model {args.model} has no parameter {k!r}")
        v[k] = x
    if args.model == "A":
        p = states.model_a(v["zeta"], v["zeta33"]).to_params()
    elif args.model == "B":
        p = states.model_b(v["xi3_1"], v["xi3_2"]).to_params()
    elif args.model == "C":
        p = states.model_c(v["xi"], v["zeta"]).to_params()
    elif args.model == "five":
        p = states.FiveParamState(v["xi3_1"], v["xi3_2"], v["z11"], v["z22"], v["z33"]).to_params()
    else:
        p = states.TwoPhotonParams(
            [v[f"xi1_{i}"] for i in (1, 2, 3)],
            [v[f"xi2_{i}"] for i in (1, 2, 3)],
            [[v[f"zeta_{i}{j}"] for j in (1, 2, 3)] for i in (1, 2, 3)],
        )
    _out(states.dumps_state(p), args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twophoton",
        description="Entropies and polarization measurements of two-photon states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check physicality of a state file")
    p.add_argument("state")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("entropy", help="joint, conditional and mutual entropies")
    p.add_argument("state")
    p.add_argument("--bits", action="store_true", help="report entropies in bits")
    p.add_argument("--closed-form", action="store_true", help="also evaluate the five-parameter closed form")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("measure", help="polarization measurement probabilities and outcomes")
    p.add_argument("state")
    p.add_argument("--type", choices=("I", "II", "III"), required=True)
    p.add_argument("--n", type=_vector, help="analyzer direction for photon 1 (x,y,z)")
    p.add_argument("--n2", type=_vector, help="analyzer direction for photon 2 (type I)")
    p.add_argument("--filter", help="state file of the two-photon filter (type II)")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("sweep", help="write a parameter sweep as CSV")
    p.add_argument("--figure", type=int, choices=range(1, 9), metavar="1..8")
    p.add_argument("--model", choices=sorted(sweep.MODEL_PARAMS))
    p.add_argument("--sweep", type=_sweep_range, metavar="NAME=START:STOP:STEP")
    p.add_argument("--fix", type=_assignment, action="append", metavar="NAME=V[,V...]")
    p.add_argument("--n", type=_vector, help="analyzer on photon 1; output photon 2 entropy")
    p.add_argument("--reference", action="store_true", help="add S1(swept value) as a series")
    p.add_argument("--points", type=int, help=f"grid points (figures default to {sweep.DEFAULT_POINTS})")
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("generate", help="write a state file for a model")
    p.add_argument("--model", choices=sorted(sweep.MODEL_PARAMS), required=True)
    p.add_argument("--fix", type=_assignment, action="append", metavar="NAME=V")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StateFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except _Usage as exc:
        parser.error(str(exc))
    except DegenerateMeasurementError as exc:
        print(f"error: degenerate measurement: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
