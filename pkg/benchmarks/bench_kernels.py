"""Compare the compiled and pure-Python integer kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Kernel rows time each routine on the same inputs through both
implementations; the profile rows run a complete per-subgroup H1 table in a
fresh interpreter with and without ``GLAT_PURE_PYTHON``.
"""

import argparse
import os
import subprocess
import sys
import timeit

from glat import _pykernels, gallery
from glat.cohomology import bar_differentials
from glat.lattices import dual

try:
    from glat import _core
except ImportError:
    _core = None

PROFILE_SNIPPET = """
import time
from glat import gallery
from glat.cohomology import h1_profile
from glat.lattices import dual
from glat.resolutions import flasque_resolution
t = time.perf_counter()
for n in (1, 2, 3):
    lat = gallery.trepalin_lattice(n)
    h1_profile(lat); h1_profile(dual(lat))
res = flasque_resolution(gallery.torus_w_lattice())
print(time.perf_counter() - t)
"""


def cases():
    out = []
    for n in (2, 3):
        lat = gallery.trepalin_lattice(n)
        members = list(range(lat.group.order))
        out.append((f"trepalin-{n}", lat, members))
    w = dual(gallery.torus_w_lattice())
    out.append(("torus-w dual", w, list(range(w.group.order))))
    return out


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = [("python", _pykernels)] + ([("cython", _core)] if _core is not None else [])
    if _core is None:
        print("compiled extension not available; timing the pure-Python kernels only")
    print(f"{'case':<28}{'routine':<16}" + "".join(f"{name:>12}" for name, _ in impls) + f"{'speedup':>10}")
    for label, lat, members in cases():
        actions = {x: lat.action[x].rows for x in members}
        d0, d1 = bar_differentials(lat, members)
        d1_rows = [list(r) for r in d1.rows]
        d0_rows = [list(r) for r in d0.rows]
        jobs = [
            ("cocycle_kernel", lambda m: m.cocycle_kernel(actions, lat.group.mul_table, members, lat.rank)),
            ("kernel(d1)", lambda m: m.kernel(d1_rows, d1.ncols)),
            ("hnf(d1)", lambda m: m.hnf(d1_rows, d1.ncols)),
            ("snf(d0)", lambda m: m.snf(d0_rows, d0.nrows, d0.ncols)),
        ]
        for name, job in jobs:
            times = [bench(lambda m=m: job(m), args.repeat) for _, m in impls]
            speed = f"{times[0] / times[1]:>9.1f}x" if len(times) == 2 else ""
            print(f"{label:<28}{name:<16}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + speed)
    print()
    totals = []
    for name, _ in impls:
        env = dict(os.environ)
        env.pop("GLAT_PURE_PYTHON", None)
        if name == "python":
            env["GLAT_PURE_PYTHON"] = "1"
        runs = [float(subprocess.run([sys.executable, "-c", PROFILE_SNIPPET], env=env, check=True,
                                     capture_output=True, text=True).stdout) for _ in range(3)]
        totals.append(min(runs))
    speed = f"{totals[0] / totals[1]:>9.1f}x" if len(totals) == 2 else ""
    print(f"{'profiles + torus-w resolution':<44}" + "".join(f"{t * 1e3:>10.1f}ms" for t in totals) + speed)


if __name__ == "__main__":
    main()
