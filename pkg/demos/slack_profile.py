"""Run the quick sweep and tabulate how the slack depends on theta.

Writes ``slack-by-theta.csv`` next to the current directory, one row per
(theta, statement) with the minimum and median slack.
"""

from __future__ import annotations

from pathlib import Path

from gaconvex import emit_plotdata, load_config, run_sweep

config = load_config(Path(__file__).resolve().parent.parent / "configs" / "quick.toml")
report = run_sweep(config)

print(f"{len(report.records)} records")
for statement, counts in sorted(report.summary.items()):
    print(f"  {statement:<28} {dict(counts)}")

out = emit_plotdata(report, "theta", "slack-by-theta.csv")
print(f"\nslack profile written to {out}")
print(out.read_text().splitlines()[0])
for line in out.read_text().splitlines()[1:8]:
    print(line)
