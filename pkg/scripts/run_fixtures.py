"""Time the extraction fixtures over many seeds and summarise sizes and trial counts.

    python3 scripts/run_fixtures.py --seeds 20
"""

import argparse
import statistics
import time
from dataclasses import dataclass, field

from apexminor.apex import ApexInstance, extract_apex
from apexminor.certify import build_model, verify_minor_model
from apexminor.graph import complete_graph, make_grid
from apexminor.k3t import extract_k3t
from apexminor.models import identity_grid_model
from apexminor.oracles import minor_test


@dataclass
class FixtureStats:
    name: str
    sizes: list = field(default_factory=list)
    trials: list = field(default_factory=list)
    seconds: list = field(default_factory=list)

    def line(self):
        return (f"{self.name:<28} runs={len(self.seconds):4d}  size min/mean={min(self.sizes)}/"
                f"{statistics.mean(self.sizes):.1f}  trials mean/max={statistics.mean(self.trials):.2f}/"
                f"{max(self.trials)}  sec mean/max={statistics.mean(self.seconds):.3f}/{max(self.seconds):.3f}")


def grid_plus_apex(side, keep):
    g, spec = make_grid(side, side)
    g = g.add_vertex(spec.vertex(x, y) for x, y in spec.cells() if keep(x, y))
    return g, spec.size, identity_grid_model(g, spec)


def k3t_fixture(name, side, r, keep, seeds):
    g, alpha, gm = grid_plus_apex(side, keep)
    st = FixtureStats(name)
    for seed in range(seeds):
        start = time.perf_counter()
        res = extract_k3t(g, alpha, r, gm, seed)
        st.seconds.append(time.perf_counter() - start)
        assert verify_minor_model(res.model) == []
        st.sizes.append(res.t)
        st.trials.append(res.attempts)
    return st


def apex_fixture(name, side, keep, seeds):
    host, spec = make_grid(3, 3)
    m = minor_test(host, complete_graph(4))
    hm = build_model(host, m.pattern, m.branch_sets, host_grid=spec)
    inst = ApexInstance.from_apex(complete_graph(5), 4)
    g, alpha, gm = grid_plus_apex(side, keep)
    st = FixtureStats(name)
    for seed in range(seeds):
        start = time.perf_counter()
        res = extract_apex(g, alpha, gm, inst, hm, seed)
        st.seconds.append(time.perf_counter() - start)
        assert verify_minor_model(res.model) == []
        st.sizes.append(res.n)
        st.trials.append(res.trials)
    return st


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--skip-large", action="store_true", help="skip the 205x205 apex fixture")
    args = ap.parse_args(argv)
    runs = [
        lambda: k3t_fixture("K3t 20x20 dominant r=1", 20, 1, lambda x, y: True, args.seeds),
        lambda: k3t_fixture("K3t 30x30 both-even r=2", 30, 2, lambda x, y: x % 2 == 0 and y % 2 == 0, args.seeds),
        lambda: apex_fixture("K5 7x7 dominant r=1", 7, lambda x, y: True, args.seeds),
    ]
    if not args.skip_large:
        runs.append(lambda: apex_fixture("K5 205x205 even-sum r=2", 205, lambda x, y: (x + y) % 2 == 0, args.seeds))
    for fn in runs:
        print(fn().line(), flush=True)


if __name__ == "__main__":
    main()
