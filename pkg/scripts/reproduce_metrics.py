"""Print every closed-form security/storage value for q = 6, 7, 8.

Shows the exact fractions next to their decimal renderings, plus the
Monte Carlo twins at 10^5 trials so the closed forms can be eyeballed
against simulation.

    python scripts/reproduce_metrics.py [--trials 100000] [--seed 1]
"""

import argparse
from fractions import Fraction

from qhoney import analysis
from qhoney.catalog import default_lambda


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--skip-simulations", action="store_true")
    args = parser.parse_args()

    d, k = 4, 20
    print(f"{'q':>3} {'lam':>4} {'dos':>12} {'typo-safety%':>14} {'saved%':>10}")
    for q in (6, 7, 8):
        lam = default_lambda(q)
        dos = analysis.dos_probability(k, d, q)
        typo = 1 - Fraction(1, (d - 1) ** lam)
        saved = analysis.storage_saved(q, d)
        print(
            f"{q:>3} {lam:>4} {float(dos):>12.6f} {float(typo * 100):>14.6f} "
            f"{float(saved):>10.6f}"
        )

    print()
    print(f"storage units: conventional {analysis.storage_qba(6, 4)} (q=6), "
          f"this layout {analysis.storage_pqba()}, sweetword file k+1 = {k + 1}")
    planted = analysis.planted_appearance_prob(1000, 50, 20)
    absent = analysis.popular_absence_prob(0.3, 20)
    print(f"planted-password appearance (N=1000, m=50, k=20): {float(planted):.6f}")
    print(f"popular-password absence   (30% popular, k=20):   {float(absent):.6f}")

    if args.skip_simulations:
        return

    print()
    print(f"Monte Carlo twins ({args.trials} trials, seed {args.seed})")
    population = [f"pw-{i:06d}" for i in range(1000)]
    report = analysis.simulate_peer_sampling(
        1000, 50, 20, population, args.trials, seed=args.seed
    )
    print(
        f"peer sampling: mechanism {report.estimate:.6f}, "
        f"k-draw model {report.extras['eq_model_estimate']:.6f}, "
        f"closed form {report.baseline:.6f}"
    )
    report = analysis.simulate_popular_absence(0.3, 20, args.trials, seed=args.seed)
    print(f"popular absence: {report.estimate:.6f} vs {report.baseline:.6f}")
    report = analysis.simulate_dos(6, 4, 20, 3, min(args.trials, 20_000), seed=args.seed)
    print(f"dos ({report.trials} trials): {report.estimate:.6f} vs {report.baseline:.6f}")


if __name__ == "__main__":
    main()
