"""Command-line front end.

Every subcommand prints a JSON report that starts with the fully resolved
parameter set (defaults and seed included). Exit status is 0 on success, 1
when a verification finds violations where none are expected, and 2 on
invalid input, with a JSON error object on standard error.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Any, Callable, Optional, Sequence, TextIO

from . import io
from .constructions import (
    Construction,
    ConstructionDescriptor,
    Kind,
    analytic_entropy_vector,
    dilution_classical_gt1,
    explicit_state,
    purify,
    renyi_target_distribution,
    spike_classical,
    spike_quantum_gt1,
    spike_quantum_lt1,
    target_vector_state,
    upset_classical_gt1,
    upset_classical_lt1,
    upward_closure,
)
from .constructions.spikes import purification_descriptor
from .core import (
    ClassicalState,
    DensityMatrix,
    EntropyVector,
    RenyiOrder,
    SparsePureState,
    SubsetMask,
    as_mask,
)
from .entropy import entropy_vector
from .errors import AlphabetTooSmallError, RenyiConeError
from .inequalities import (
    CSV_HEADER,
    audenaert_report,
    check_monotonicity,
    check_vn_inequalities,
    convergence_sweep,
    find_subadditivity_violation,
    sweep_csv_rows,
)

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2
BITS_TO_NATS = math.log(2.0)

KIND_CHOICES = ("spike", "upset", "dilution", "target") + tuple(k.value for k in Kind if k is not Kind.PURIFICATION)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so errors become exit-2 JSON."""

    def error(self, message):
        raise RenyiConeError(f"{self.prog}: {message}")


def _order(text: str) -> RenyiOrder:
    return RenyiOrder.parse(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise RenyiConeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _str_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


# ----------------------------------------------------------------------------
# construct


def _alphabet(args, n: int):
    if args.M is None:
        return None
    return args.M[0] if len(args.M) == 1 else tuple(args.M)


def _scalar_M(args) -> Optional[int]:
    if args.M is None:
        return None
    if len(args.M) != 1:
        raise RenyiConeError("this construction takes a single --M value")
    return args.M[0]


def _need(value, flag: str):
    if value is None:
        raise RenyiConeError(f"{flag} is required for this construction")
    return value


def resolve_kind(kind: str, order: RenyiOrder, n: int, subset: Optional[str]) -> Kind:
    """Map the convenience kinds ``spike``/``upset``/``dilution``/``target`` to a concrete kind."""
    if kind == "spike":
        if order.below_one():
            full = subset is None or as_mask(subset, n).is_full()
            return Kind.SPIKE_CLASSICAL if full else Kind.SPIKE_QUANTUM_LT1
        if order.above_one():
            return Kind.SPIKE_QUANTUM_GT1
        raise RenyiConeError(f"spike constructions need alpha != 0, 1; got {order}")
    if kind == "upset":
        if order.below_one():
            return Kind.UPSET_LT1
        if order.above_one():
            return Kind.UPSET_GT1
        raise RenyiConeError(f"upset constructions need alpha != 0, 1; got {order}")
    if kind == "dilution":
        return Kind.DILUTION_GT1
    if kind == "target":
        return Kind.TENSOR_COMPOSITE
    try:
        return Kind(kind)
    except ValueError:
        raise RenyiConeError(f"unknown construction kind {kind!r}") from None


def build_construction(
    kind: Kind,
    *,
    n: int,
    order: RenyiOrder,
    s: Optional[float],
    M,
    subset: Optional[str] = None,
    generators: Optional[list[str]] = None,
    target: Optional[EntropyVector] = None,
    epsilon: Optional[float] = None,
    explicit: bool = True,
) -> Construction:
    """Build any construction from flat CLI-style parameters."""
    if kind is Kind.SPIKE_CLASSICAL:
        return spike_classical(n, _need(s, "--target"), order, _need(M, "--M"), explicit=explicit)
    if kind is Kind.SPIKE_QUANTUM_LT1:
        return spike_quantum_lt1(
            n, _need(subset, "--subset"), _need(s, "--target"), order, _need(M, "--M"), explicit=explicit
        )
    if kind is Kind.SPIKE_QUANTUM_GT1:
        I = subset if subset is not None else SubsetMask.full(n).bits
        s = _need(s, "--target")
        R = renyi_target_distribution(s, order, M)
        return spike_quantum_gt1(n, as_mask(I, n + 1), s, order, R, explicit=explicit)
    if kind is Kind.DILUTION_GT1:
        R = renyi_target_distribution(_need(s, "--target"), order, M)
        return dilution_classical_gt1(n, order, R, explicit=explicit)
    if kind is Kind.UPSET_LT1:
        return upset_classical_lt1(
            n, _need(generators, "--generators"), _need(s, "--target"), order, _need(M, "--M"), explicit=explicit
        )
    if kind is Kind.UPSET_GT1:
        return upset_classical_gt1(n, _need(generators, "--generators"), _need(s, "--target"), order, M, explicit=explicit)
    if kind is Kind.TENSOR_COMPOSITE:
        return target_vector_state(_need(target, "--target-vector"), order, M, epsilon, explicit=explicit)
    raise RenyiConeError(f"cannot build a {kind.value} construction directly")


def _read_target(path: Optional[str], n: Optional[int]) -> Optional[EntropyVector]:
    if path is None:
        return None
    vec = io.vector_from_json(io.read_json(path))
    if n is not None and vec.n != n:
        raise RenyiConeError(f"--n {n} disagrees with the target vector's n={vec.n}")
    return vec


def cmd_construct(args, out: TextIO, err: TextIO) -> int:
    order = _order(args.alpha)
    target = _read_target(args.target_vector, args.n)
    n = args.n if args.n is not None else (target.n if target is not None else None)
    n = _need(n, "--n")
    kind = resolve_kind(args.kind, order, n, args.subset)
    M = _scalar_M(args) if kind in (Kind.SPIKE_QUANTUM_LT1, Kind.SPIKE_QUANTUM_GT1, Kind.DILUTION_GT1,
                                     Kind.UPSET_GT1, Kind.TENSOR_COMPOSITE) else _alphabet(args, n)
    generators = _str_list(args.generators) if args.generators else None
    cons = build_construction(
        kind, n=n, order=order, s=args.target, M=M, subset=args.subset, generators=generators,
        target=target, epsilon=args.epsilon, explicit=not args.analytic_only,
    )
    desc, state = cons.descriptor, cons.state
    if args.purify:
        if not isinstance(state, ClassicalState) and state is not None:
            raise RenyiConeError("--purify applies to classical constructions only")
        desc = purification_descriptor(desc)
        if state is not None:
            try:
                state = purify(state)
            except RenyiConeError:
                state = None
    params = {
        "kind": desc.kind.value, "requested_kind": args.kind, "n": n, "alpha": str(order),
        "target": args.target, "M": M, "subset": args.subset, "generators": generators,
        "epsilon": args.epsilon, "purify": args.purify, "out": args.out,
    }
    payload = io.state_to_json(state, desc) if state is not None else io.descriptor_only_json(desc)
    if args.out:
        io.write_text(args.out, io.dumps(payload))
        report = {"params": params, "state_type": payload["type"], "descriptor": payload["descriptor"]}
        if state is None:
            report["note"] = "explicit state exceeds its budget; wrote the descriptor only"
        out.write(io.dumps(report) + "\n")
    else:
        out.write(io.dumps({"params": params, "state": payload}) + "\n")
    return EXIT_OK


# ----------------------------------------------------------------------------
# entropy / verify / audenaert


def load_state(path: str):
    """Read a state file; returns ``(state or None, descriptor or None)``."""
    return io.state_from_json(io.read_json(path))


def state_vector(path: str, order: RenyiOrder, analytic: bool = False) -> tuple[EntropyVector, str]:
    state, desc = load_state(path)
    if state is None or (analytic and desc is not None):
        return analytic_entropy_vector(desc, order), "analytic"
    return entropy_vector(state, order), "explicit"


def cmd_entropy(args, out: TextIO, err: TextIO) -> int:
    order = _order(args.alpha)
    vec, tier = state_vector(args.state, order, args.analytic)
    params = {"state": args.state, "alpha": str(order), "tier": tier,
              "unit": "nats" if args.nats else "bits", "format": "csv" if args.csv else "json"}
    scale = BITS_TO_NATS if args.nats else 1.0
    if args.csv:
        unit = "entropy_nats" if args.nats else "entropy_bits"
        rows = ((str(m), float(v) * scale) for m, v in vec.items())
        err.write(io.dumps({"params": params}, indent=0) + "\n")
        out.write(io.csv_text(("subset", unit), rows))
        return EXIT_OK
    report = {"params": params, **io.vector_to_json(vec)}
    if args.nats:
        report["entries_nats"] = {k: v * scale for k, v in vec.as_dict().items()}
    out.write(io.dumps(report) + "\n")
    return EXIT_OK


def cmd_verify(args, out: TextIO, err: TextIO) -> int:
    checks = _str_list(args.checks)
    known = {"monotonicity", "ssa", "weak_monotonicity", "vn"}
    bad = [c for c in checks if c not in known]
    if bad or not checks:
        raise RenyiConeError(f"unknown checks {bad}; choose from {sorted(known)}")
    order = _order(args.alpha)
    result: dict[str, Any] = {}
    failed = False
    if "monotonicity" in checks:
        vec, tier = state_vector(args.state, order, args.analytic)
        violations = check_monotonicity(vec)
        result["monotonicity"] = {
            "alpha": str(order), "tier": tier, "passed": not violations,
            "violations": [
                {"smaller": str(v.smaller), "larger": None if v.larger is None else str(v.larger), "excess": v.excess}
                for v in violations
            ],
        }
        failed |= bool(violations)
    vn_checks = [c for c in checks if c in ("ssa", "weak_monotonicity", "vn")]
    if vn_checks:
        vec, tier = state_vector(args.state, RenyiOrder.of(1), args.analytic)
        report = check_vn_inequalities(vec)
        groups = {"ssa": report.ssa, "weak_monotonicity": report.weak_monotonicity}
        if "vn" in vn_checks:
            vn_checks = ["ssa", "weak_monotonicity"]
        for name in dict.fromkeys(vn_checks):
            slacks = groups[name]
            ok = all(x.slack >= -1e-9 for x in slacks)
            result[name] = {
                "alpha": "1", "tier": tier, "passed": ok,
                "min_slack": min(x.slack for x in slacks),
                "slacks": {x.name: x.slack for x in slacks},
            }
            failed |= not ok
    params = {"state": args.state, "checks": checks, "alpha": str(order), "analytic": args.analytic}
    out.write(io.dumps({"params": params, "passed": not failed, "results": result}) + "\n")
    return EXIT_FAILED if failed else EXIT_OK


def _as_density(state) -> DensityMatrix:
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, SparsePureState):
        return state.to_density()
    if isinstance(state, ClassicalState):
        return DensityMatrix.from_classical(state)
    raise RenyiConeError("audenaert needs an explicit state, not a descriptor")


def cmd_audenaert(args, out: TextIO, err: TextIO) -> int:
    order = _order(args.alpha)
    state, _ = load_state(args.state)
    rho = _as_density(state)
    rep = audenaert_report(rho, order)
    params = {"state": args.state, "alpha": str(order)}
    chain_ok = rep.slack_plus >= -1e-9 and rep.slack_classic >= -1e-9
    body = io._plain(rep)
    body.update(slack_plus=rep.slack_plus, slack_classic=rep.slack_classic, chain_holds=chain_ok)
    out.write(io.dumps({"params": params, "report": body}) + "\n")
    return EXIT_OK if chain_ok else EXIT_FAILED


# ----------------------------------------------------------------------------
# sweep


def _indicator_shape(target: EntropyVector) -> tuple[float, list[SubsetMask]]:
    """Height ``s`` and support of a target of the form ``s * indicator``."""
    support = [m for m, v in target.items() if v != 0.0]
    if not support:
        raise RenyiConeError("target vector is identically zero")
    heights = {target[m] for m in support}
    if len(heights) != 1:
        raise RenyiConeError("spike/upset sweeps need a target of the form s * indicator")
    return heights.pop(), support


def sweep_template(kind: Kind, target: EntropyVector, order: RenyiOrder, epsilon) -> Callable[[int], ConstructionDescriptor]:
    n = target.n
    if kind is Kind.TENSOR_COMPOSITE:
        return lambda M: target_vector_state(target, order, M, explicit=False).descriptor
    s, support = _indicator_shape(target)
    if kind in (Kind.SPIKE_CLASSICAL, Kind.SPIKE_QUANTUM_LT1, Kind.SPIKE_QUANTUM_GT1, Kind.DILUTION_GT1):
        if len(support) != 1:
            raise RenyiConeError("a spike sweep needs a target supported on a single subset")
        subset = str(support[0])
        if kind is Kind.DILUTION_GT1:
            raise RenyiConeError("dilution has no convergence target; sweep spike or target kinds instead")
    else:
        upset = upward_closure(n, support)
        if set(upset.members) != {m.bits for m in support}:
            raise RenyiConeError("an upset sweep needs a target supported on an upward-closed family")
        generators = [str(g) for g in upset.generators]
        subset = None
    return lambda M: build_construction(
        kind, n=n, order=order, s=s, M=M, subset=subset,
        generators=None if subset is not None else generators, explicit=False,
    ).descriptor


def cmd_sweep(args, out: TextIO, err: TextIO) -> int:
    order = _order(args.alpha)
    target = _read_target(args.target_vector, None)
    schedule = _int_list(args.schedule)
    if not schedule:
        raise RenyiConeError("--schedule must list at least one alphabet size")
    subset = None
    if args.kind == "spike":
        _, support = _indicator_shape(target)
        subset = str(support[0])
    kind = resolve_kind(args.kind, order, target.n, subset)
    rows = convergence_sweep(sweep_template(kind, target, order, args.epsilon), schedule, order, target)
    params = {"kind": kind.value, "requested_kind": args.kind, "target_vector": args.target_vector,
              "alpha": str(order), "schedule": schedule, "csv": args.csv}
    table = io.csv_text(CSV_HEADER, sweep_csv_rows(rows, target))
    if args.csv and args.csv != "-":
        io.write_text(args.csv, table)
    report = {"params": params, "rows": [{"M": r.M, "sup_error": r.error} for r in rows]}
    if args.csv == "-":
        err.write(io.dumps(report, indent=0) + "\n")
        out.write(table)
    else:
        out.write(io.dumps(report) + "\n")
    return EXIT_OK


# ----------------------------------------------------------------------------
# witness


def cmd_witness(args, out: TextIO, err: TextIO) -> int:
    if args.property != "subadditivity":
        raise RenyiConeError(f"unknown property {args.property!r}; only 'subadditivity' is searched")
    order = _order(args.alpha)
    dims = tuple(_int_list(args.dims))
    if len(dims) != 2:
        raise RenyiConeError("--dims must give two local dimensions")
    if args.trials < 1:
        raise RenyiConeError("--trials must be positive")
    params = {"property": args.property, "alpha": str(order), "trials": args.trials,
              "seed": args.seed, "dims": list(dims)}
    wit = find_subadditivity_violation(order, args.trials, args.seed, dims)
    if wit is None:
        # absence of a witness within budget says nothing about the inequality holding
        out.write(io.dumps({"params": params, "result": "not found"}) + "\n")
        return EXIT_OK
    found = {
        "trial": wit.trial, "subsets": list(wit.subsets), "lhs": wit.lhs, "rhs": wit.rhs,
        "slack": wit.slack, "state": io.state_to_json(wit.state),
    }
    out.write(io.dumps({"params": params, "result": "found", "witness": found}) + "\n")
    # subadditivity is a theorem at alpha = 1, so a "witness" there means a numerical failure
    return EXIT_FAILED if order.kind == "one" else EXIT_OK


# ----------------------------------------------------------------------------
# parser and entry point


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="renyicone", description="Rényi entropy vectors: constructions, checks and sweeps.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("construct", help="build a construction and write its state JSON")
    c.add_argument("--kind", required=True, choices=KIND_CHOICES)
    c.add_argument("--n", type=int)
    c.add_argument("--alpha", required=True)
    c.add_argument("--target", type=float, help="target entropy s in bits")
    c.add_argument("--M", type=_int_list, help="alphabet size, or one per party (comma-separated)")
    c.add_argument("--subset", help="subset I as ascending digits, e.g. 12")
    c.add_argument("--generators", help="upset generators, comma-separated, e.g. 1,23")
    c.add_argument("--target-vector", help="entropy-vector JSON for --kind target")
    c.add_argument("--epsilon", type=float)
    c.add_argument("--purify", action="store_true", help="purify a classical construction")
    c.add_argument("--analytic-only", action="store_true", help="skip building the explicit state")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("entropy", help="entropy vector of a state file")
    e.add_argument("--state", required=True)
    e.add_argument("--alpha", required=True)
    fmt = e.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true")
    e.add_argument("--nats", action="store_true", help="also report values in nats (JSON keeps bits)")
    e.add_argument("--analytic", action="store_true", help="use the descriptor's closed forms")
    e.set_defaults(func=cmd_entropy)

    v = sub.add_parser("verify", help="check entropy inequalities on a state")
    v.add_argument("--state", required=True)
    v.add_argument("--checks", default="monotonicity")
    v.add_argument("--alpha", default="1", help="order for the monotonicity check")
    v.add_argument("--analytic", action="store_true")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("audenaert", help="Audenaert-type subadditivity bound on a bipartite state")
    a.add_argument("--state", required=True)
    a.add_argument("--alpha", required=True)
    a.set_defaults(func=cmd_audenaert)

    s = sub.add_parser("sweep", help="convergence of a construction toward a target vector")
    s.add_argument("--kind", required=True, choices=KIND_CHOICES)
    s.add_argument("--target-vector", required=True)
    s.add_argument("--alpha", required=True)
    s.add_argument("--schedule", required=True, help="comma-separated alphabet sizes")
    s.add_argument("--epsilon", type=float)
    s.add_argument("--csv", help="CSV path, or - for standard output")
    s.set_defaults(func=cmd_sweep)

    w = sub.add_parser("witness", help="random search for an inequality violation")
    w.add_argument("--property", default="subadditivity")
    w.add_argument("--alpha", required=True)
    w.add_argument("--trials", type=int, default=10_000)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--dims", default="2,2")
    w.set_defaults(func=cmd_witness)
    return p


def _error(exc: Exception, err: TextIO) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, AlphabetTooSmallError):
        payload["min_alphabet_size"] = exc.min_size
    err.write(io.dumps(payload, indent=0) + "\n")
    return EXIT_INVALID


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """Run one command; returns the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out, err)
    except (RenyiConeError, ValueError) as exc:
        return _error(exc, err)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
