"""Command-line interface with machine-stable output.

Four subcommands: ``solve``, ``sparsify``, ``enumerate``, ``verify``.
Sets print as ``set: i1 i2 ...`` with ascending indices (an empty set
prints ``set:``); witness lists are ordered by ascending mask value so
identical runs are byte-identical.  Exit codes: 0 the command ran (NO
answers included), 2 parse or usage errors, 3 a desk-scale guard or an
unsupported capability.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .bruteforce import VerifyScope, enumerate_domain, verify_sparsifier
from .core import CapabilityError, GuardError, SparsifierReport, SubsetMask
from .instances import DomainInstance, ParseError, parse_instance
from .limited import LimitedSparsifyParams, dk_sparsify
from .solvers import ProblemSpec, limited_builder, small_builder, solve
from .sunflower import SmallSparsifyParams, k_sparsify

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GUARD = 3


def _set_line(mask: SubsetMask) -> str:
    inner = " ".join(str(i) for i in mask.members())
    return f"set: {inner}" if inner else "set:"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divsparse",
        description=(
            "Max-distance sparsifiers of implicit combinatorial domains and "
            "exact diversification/clustering solvers on top of them."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_problem: bool) -> None:
        p.add_argument("--instance", required=True, help="instance file path")
        if with_problem:
            p.add_argument(
                "--problem",
                required=True,
                choices=["maxmin", "maxsum", "kcenter", "ksumradii"],
            )
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        if with_problem:
            p.add_argument("--modified", action="store_true")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--epsilon", type=float, default=0.01)
        p.add_argument("--p", type=int, default=None, help="cluster radius override")
        p.add_argument("--trials", type=int, default=None, help="far-set trials override")
        p.add_argument("--mode", choices=["auto", "small", "limited"], default="auto")

    common(sub.add_parser("solve", help="answer a diversification/clustering problem"), True)
    common(sub.add_parser("sparsify", help="emit a max-distance sparsifier"), False)
    enum = sub.add_parser("enumerate", help="list the whole domain (guarded)")
    enum.add_argument("--instance", required=True)
    common(sub.add_parser("verify", help="sparsify, then check the definition"), False)
    return parser


def _pick_mode(mode: str, instance: DomainInstance) -> str:
    if mode == "auto":
        return "small" if instance.prefers_small else "limited"
    return mode


def _make_builder(args, mode: str, instance: DomainInstance):
    if mode == "small":
        if not instance.supports_small:
            raise ValueError(
                f"domain {instance.kind} does not support the small pipeline"
            )
        assert instance.size_bound is not None
        return small_builder(instance.size_bound)
    return limited_builder(
        seed=args.seed, epsilon=args.epsilon, p=args.p, trials=args.trials
    )


def _run_solve(args, instance: DomainInstance) -> int:
    spec = ProblemSpec(
        problem=args.problem, k=args.k, d=args.d, modified=args.modified
    )
    mode = _pick_mode(args.mode, instance)
    builder = _make_builder(args, mode, instance)
    answer = solve(instance.oracle(), spec, builder)
    if not answer.feasible:
        print("NO")
        return EXIT_OK
    print("YES")
    order = sorted(
        range(len(answer.witnesses)), key=lambda i: answer.witnesses[i].bits
    )
    for i in order:
        print(_set_line(answer.witnesses[i]))
    if answer.radii is not None:
        for i in order:
            print(f"radius: {answer.radii[i]}")
    if spec.problem == "maxsum":
        print(f"objective: {answer.objective}")
    return EXIT_OK


def _sparsify_report(args, instance: DomainInstance) -> tuple[SparsifierReport, str]:
    mode = _pick_mode(args.mode, instance)
    if mode == "small":
        if not instance.supports_small:
            raise ValueError(
                f"domain {instance.kind} does not support the small pipeline"
            )
        assert instance.size_bound is not None
        ell = instance.size_bound
        # a full sparsifier w.r.t. the radius-ell ball; --d plays no role here
        params = SmallSparsifyParams(k=args.k, r=ell, ell=ell)
        return k_sparsify(params, instance.oracle()), mode
    params = LimitedSparsifyParams(
        k=args.k,
        d=args.d,
        p=args.p,
        epsilon=args.epsilon,
        trials_override=args.trials,
        seed=args.seed,
    )
    return dk_sparsify(instance.oracle(), params), mode


def _run_sparsify(args, instance: DomainInstance) -> int:
    report, _ = _sparsify_report(args, instance)
    print(f"size: {len(report.family)}")
    for mask in report.family:
        print(_set_line(mask))
    print(f"calls_opt: {report.calls_opt}")
    print(f"calls_extend: {report.calls_extend}")
    print(f"seed: {args.seed}")
    return EXIT_OK


def _run_enumerate(args, instance: DomainInstance) -> int:
    family = enumerate_domain(instance)
    ordered = sorted(family.bits_list())
    print(f"size: {len(ordered)}")
    for bits in ordered:
        print(_set_line(SubsetMask(instance.ground.size, bits)))
    return EXIT_OK


def _run_verify(args, instance: DomainInstance) -> int:
    report, mode = _sparsify_report(args, instance)
    domain = enumerate_domain(instance)
    if mode == "small":
        assert report.r is not None
        scope = VerifyScope.versus_ball(
            k=args.k,
            cap=None,
            center=SubsetMask.empty(instance.ground.size),
            radius=report.r,
        )
    else:
        scope = VerifyScope.versus_all_subsets(k=args.k, cap=args.d)
    result = verify_sparsifier(domain, report.family, scope)
    if result.ok:
        print("OK")
        return EXIT_OK
    print("FAIL")
    assert result.counterexample is not None
    reference_tuple, missed = result.counterexample
    for mask in reference_tuple:
        print(_set_line(mask))
    print(_set_line(missed))
    return EXIT_OK


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    try:
        with open(args.instance, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        print(f"error: cannot read instance: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        instance = parse_instance(text)
        if args.command == "solve":
            return _run_solve(args, instance)
        if args.command == "sparsify":
            return _run_sparsify(args, instance)
        if args.command == "enumerate":
            return _run_enumerate(args, instance)
        return _run_verify(args, instance)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GuardError, CapabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
