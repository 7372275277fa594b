"""Command-line interface: Monte Carlo sweeps and invariant self-checks."""

import argparse
import sys

from .config import Scenario, load_scenario
from .driver import AoParams
from .experiment import SweepSpec, run_sweep, write_csv
from .manifold import ManifoldParams
from .verify import run_all


def _parse_grid(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.replace(",", " ").split())


def _add_simulate(subparsers):
    sim = subparsers.add_parser("simulate", help="run a secrecy-rate sweep and write a trial CSV")
    sim.add_argument("--config", help="JSON scenario file (system + geometry); defaults otherwise")
    sim.add_argument("--scenario", choices=["with-ris", "no-ris"], default="with-ris")
    sim.add_argument("--snr-grid", default="0,5,10,15,20,25,30", help="comma-separated dB values")
    sim.add_argument("--trials", type=int, default=200)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", required=True, help="output CSV path")
    sim.add_argument("--manifold-iters", type=int, default=60,
                     help="per-pass cap for the phase conjugate-gradient searches")
    sim.add_argument("--quiet", action="store_true")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="ris-secrecy", description=__doc__)
    subparsers = parser.add_subparsers(dest="command", required=True)
    _add_simulate(subparsers)
    subparsers.add_parser("verify", help="run fast invariant checks; nonzero exit on failure")
    args = parser.parse_args(argv)

    if args.command == "verify":
        return 0 if run_all() else 1

    scenario = load_scenario(args.config) if args.config else Scenario()
    spec = SweepSpec(
        snr_grid_db=_parse_grid(args.snr_grid),
        trials=args.trials,
        scenario="with_legit_ris" if args.scenario == "with-ris" else "no_legit_ris",
        config=scenario.config,
        geometry=scenario.geometry,
        master_seed=args.seed,
        ao_params=AoParams(manifold=ManifoldParams(max_iters=args.manifold_iters)),
    )
    total = len(spec.snr_grid_db) * spec.trials
    done = [0]

    def progress(snr_db, trial):
        done[0] += 1
        if not args.quiet and done[0] % max(1, total // 20) == 0:
            print(f"  {done[0]}/{total} trials (snr {snr_db:g} dB)", file=sys.stderr)

    results, table = run_sweep(spec, progress=progress)
    write_csv(results, args.out)
    print(f"wrote {len(results)} trials to {args.out}")
    for row in table:
        print(
            f"snr {row['snr_db']:6.1f} dB  rate_rx {row['mean_rate_rx']:7.3f}  "
            f"rate_e {row['mean_rate_e']:7.3f}  secrecy {row['mean_secrecy']:7.3f}  "
            f"({row['trials']} trials, {row['failed']} failed)"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
