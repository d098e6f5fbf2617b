# Classical versus modified box solver on the built-in suites, through the command line entry point.
from pathlib import Path

from funtervals.cli import main

Path("demo_traces").mkdir(exist_ok=True)

main(["bench-nd", "table1", "--repeats", "3"])
main(["bench-nd", "rastrigin", "--n-range", "1..3", "--repeats", "3"])
main(["bench-nd", "rosenbrock", "--n-range", "2..3", "--repeats", "3", "--out", "demo_traces/rosenbrock_bench.csv"])
