"""Acquire dependency-path patterns on the bundled synthetic corpus and compare
representations by precision, recall and how many patterns they need.

Run:  python demos/03_relation_extraction.py [economy.png]
"""
import sys
from importlib import resources

from udbart.relex import (
    format_table, load_dataset, patterns_to_reach, plot_economy, read_triggers, run_experiment,
)

data_dir = resources.files("udbart") / "data"
data = load_dataset(data_dir.joinpath("synthetic_re.conllu").read_text())
triggers = read_triggers(data_dir.joinpath("triggers.tsv").read_text())

runs = {rep: run_experiment(data, triggers, rep) for rep in ("ud", "eud", "bart")}
print(format_table([report for _, report in runs.values()]))

for rep, (patterns, report) in runs.items():
    print(f"{rep.upper()} patterns after dev filtering:")
    for p in patterns:
        print(f"  {p.relation:<12} {p}")
    print("  recall by construction:",
          ", ".join(f"{k} {v:.0f}%" for k, v in report.subset_recall.items()))

target = runs["ud"][1].recall
print(f"\npatterns needed to reach {target:.1f}% recall:")
for rep, (_, report) in runs.items():
    print(f"  {rep.upper():<5} {patterns_to_reach(report.economy, target)}")

if len(sys.argv) > 1:
    plot_economy({rep: report.economy for rep, (_, report) in runs.items()}, sys.argv[1])
    print(f"\nwrote {sys.argv[1]}")
