"""Compiled vs NumPy kernels on a cartpole-sized filter problem.

    python benchmarks/bench_kernels.py [--horizon 15] [--repeat 5] [--json out.json]
"""
import argparse
import json
import timeit

import numpy as np

from pesafety import _kernels_py, envlab, pemodel, termset
from pesafety.kernels import ConstraintSpec

try:
    from pesafety import _ckernels
except ImportError:
    _ckernels = None


def setup(horizon, hidden):
    env = envlab.make_env("cartpole")
    data = envlab.rollout_controller(env, envlab.default_initial_controller(env), 600, 0)
    ds = pemodel.TransitionDataset(env.n_s, env.n_a)
    ds.extend(data["states"], data["actions"], data["next_states"], 0)
    model, _ = pemodel.train(ds, pemodel.TrainConfig(members=5, hidden=hidden, epochs=1), 0)
    ts = termset.floor_box(env.equilibrium, env.constraints, radius=0.2)
    c = env.constraints
    spec = ConstraintSpec.build(0.7, c.state_lower, c.state_upper, ts.facets, ts.offsets,
                                c.action_lower, c.action_upper, False)
    rng = np.random.default_rng(0)
    U = rng.uniform(-1, 1, (horizon, 1))
    K = np.zeros((horizon, 1, 4))
    s0 = env.equilibrium + rng.normal(0, 0.05, 4)
    return model.packed(), s0, U, K, spec


def cases(mod, pk, s0, U, K, spec):
    x = np.concatenate([s0, U[0]])
    lip = (0.0, 1e-3, 0.0)
    return {
        "ens_point": lambda: mod.ens_point(pk, x),
        "tube_rollout": lambda: mod.tube_rollout(pk, s0, U, K, 9.59, *lip),
        "constraint_values": lambda: mod.constraint_values(pk, s0, U, K, 9.59, *lip, spec),
        "constraint_jacobian": lambda: mod.constraint_jacobian(pk, s0, U, K, 9.59, *lip, spec, 1e-6, False),
    }


def best_time(fn, repeat):
    n, _ = timeit.Timer(fn).autorange()
    return min(timeit.repeat(fn, number=n, repeat=repeat)) / n


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--horizon", type=int, default=15)
    ap.add_argument("--hidden", type=int, nargs="+", default=[16, 16])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="also write the timings here")
    args = ap.parse_args(argv)

    pk, s0, U, K, spec = setup(args.horizon, tuple(args.hidden))
    backends = {"python": _kernels_py}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    else:
        print("compiled kernels not built; timing the NumPy fallback only")

    res = {}
    for name, mod in backends.items():
        for case, fn in cases(mod, pk, s0, U, K, spec).items():
            res.setdefault(case, {})[name] = best_time(fn, args.repeat)

    print(f"horizon {args.horizon}, hidden {args.hidden}, 5 members")
    print(f"{'kernel':<22}{'python':>12}{'cython':>12}{'speedup':>10}")
    for case, t in res.items():
        py, cy = t["python"], t.get("cython")
        cy_s = f"{cy * 1e6:10.1f}us" if cy else f"{'-':>12}"
        sp = f"{py / cy:9.1f}x" if cy else f"{'-':>10}"
        print(f"{case:<22}{py * 1e6:10.1f}us{cy_s}{sp}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(dict(horizon=args.horizon, hidden=args.hidden, seconds=res), fh, indent=2)


if __name__ == "__main__":
    main()
