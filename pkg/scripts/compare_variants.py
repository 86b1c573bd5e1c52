"""Side-by-side run of all six update variants on one benchmark problem.

Prints a comparison table (iterations, evaluation counts, final values)
and optionally dumps the per-iteration traces for offline plotting.

    python3 scripts/compare_variants.py --problem rosenbrock --n 8
"""

import argparse
from pathlib import Path

from ssbroyden import SolverConfig, VARIANT_ORDER, solve
from ssbroyden.cli import build_problem, emit_trace, RunSpecification
from ssbroyden.problems import default_start


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--problem", default="rosenbrock",
                        choices=("quadratic", "rosenbrock", "pinn1d"))
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--tol", type=float, default=1e-8)
    parser.add_argument("--max-iters", type=int, default=500)
    parser.add_argument("--traces", default=None,
                        help="directory for per-variant CSV traces")
    args = parser.parse_args()

    problem = build_problem(RunSpecification(
        solvers=[], problem=args.problem, n=args.n))
    x0 = default_start(problem)
    f0 = problem.value_and_gradient(x0)[0]

    print(f"problem: {args.problem}  dim: {problem.dimension}  f0: {f0:.6e}")
    print(f"{'variant':<10} {'status':<12} {'iters':>6} {'fevals':>7} "
          f"{'skips':>6} {'taufb':>6} {'final_f':>13} {'gnorm_inf':>11}")
    for variant in VARIANT_ORDER:
        config = SolverConfig(variant=variant, grad_tol=args.tol,
                              max_iters=args.max_iters)
        trace, state, counters = solve(problem, x0, config)
        gnorm = max(abs(float(v)) for v in state.g)
        print(f"{variant.value:<10} {trace.status:<12} "
              f"{counters.qn_iters:>6} {counters.f_evals:>7} "
              f"{counters.update_skips:>6} {counters.tau_fallbacks:>6} "
              f"{state.f:>13.6e} {gnorm:>11.3e}")
        if args.traces:
            out = Path(args.traces)
            out.mkdir(parents=True, exist_ok=True)
            emit_trace(trace, "csv", out / f"{args.problem}_{variant.value}.csv")


if __name__ == "__main__":
    main()
