"""Loss-curve comparison of the update variants on the collocation toy.

Trains the width-M tanh network on the 1D Poisson collocation loss with
every solver variant from the same deterministic start, then writes the
per-iteration losses to loss_curves.csv and, when matplotlib is
importable, a log-scale overlay plot.

    python3 scripts/pinn_convergence.py --iters 300 --out results/
"""

import argparse
import csv
from pathlib import Path

from ssbroyden import PinnPoisson1D, SolverConfig, VARIANT_ORDER, solve


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m", type=int, default=8, help="hidden width")
    parser.add_argument("--npoints", type=int, default=32,
                        help="interior collocation points")
    parser.add_argument("--iters", type=int, default=300)
    parser.add_argument("--out", default="pinn_results")
    args = parser.parse_args()

    pinn = PinnPoisson1D(m=args.m, n_interior=args.npoints)
    x0 = pinn.default_start()
    f0 = pinn.value_and_gradient(x0)[0]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    curves = {}
    print(f"width {args.m} network, {args.npoints} interior points, "
          f"{pinn.dimension} parameters, initial loss {f0:.6e}")
    for variant in VARIANT_ORDER:
        config = SolverConfig(variant=variant, max_iters=args.iters)
        trace, state, _ = solve(pinn, x0, config)
        curves[variant.value] = [f0] + [rec.f for rec in trace.records]
        print(f"{variant.value:<10} final loss {state.f:.6e}  "
              f"reduction {f0 / state.f:9.3e}  "
              f"l2 error vs exact {pinn.l2_error(state.x):.3e}")

    depth = max(len(c) for c in curves.values())
    with open(out_dir / "loss_curves.csv", "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["iter"] + [v.value for v in VARIANT_ORDER])
        for k in range(depth):
            row = [k] + [f"{curves[v.value][k]:.17g}"
                         if k < len(curves[v.value]) else ""
                         for v in VARIANT_ORDER]
            writer.writerow(row)
    print(f"wrote {out_dir / 'loss_curves.csv'}")

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        return
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, losses in curves.items():
        ax.semilogy(range(len(losses)), losses, label=name)
    ax.set_xlabel("iteration")
    ax.set_ylabel("collocation loss")
    ax.legend(frameon=False)
    ax.set_title(f"width-{args.m} network, {args.npoints} interior points")
    fig.tight_layout()
    fig.savefig(out_dir / "loss_curves.png", dpi=150)
    print(f"wrote {out_dir / 'loss_curves.png'}")


if __name__ == "__main__":
    main()
