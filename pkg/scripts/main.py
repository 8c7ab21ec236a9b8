# scripts/main.py
"""Demo script: fit the bundled data sets with every estimator."""

import argparse
import sys
from pathlib import Path

# Add parent directory to path so we can import rwfit
sys.path.insert(0, str(Path(__file__).parent.parent))

from rwfit.facade import fit_all
from rwfit.io import expand_grouped, read_grouped_csv, read_raw_csv

DATA_DIR = Path(__file__).parent.parent / "data"


def print_results(title: str, outcome) -> None:
    print("=" * 60)
    print(title)
    print("=" * 60)
    print(f"{'method':<8}{'delta':>12}{'beta':>12}{'gamma':>12}")
    for method, result in outcome.results.items():
        p = result.params
        flag = "  (boundary)" if result.boundary_hit else ""
        print(f"{method.value:<8}{p.delta:>12.4f}{p.beta:>12.4f}{p.gamma:>12.4f}{flag}")
    for method, message in outcome.failures.items():
        print(f"{method.value:<8} failed: {message}")
    print()


def main():
    parser = argparse.ArgumentParser(
        description="Fit the bundled bearing-fatigue and insurance-age data with MLE, MME and LSPFE."
    )
    parser.add_argument(
        "--data-dir", type=Path, default=DATA_DIR, help=f"Directory with the data files (default: {DATA_DIR})"
    )
    args = parser.parse_args()

    bearing = read_raw_csv(args.data_dir / "bearing_fatigue.csv")
    print(f"\nBearing fatigue (negated), n={bearing.n}\n")
    print_results("BEARING FATIGUE", fit_all(bearing))

    ages = expand_grouped(read_grouped_csv(args.data_dir / "insurance_ages.csv"))
    print(f"Insurance holder ages (grouped), n={ages.n}\n")
    print_results("INSURANCE AGES", fit_all(ages))


if __name__ == "__main__":
    main()
