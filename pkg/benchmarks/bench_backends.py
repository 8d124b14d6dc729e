"""Time the pure-Python kernels against the compiled extension.

Each workload builds one evaluation plan and runs the same payload
through both kernel sets, so any difference is backend speed, not
planning.  Results are checked for bit-for-bit agreement before the
timing is trusted.

Run as: python3 benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

from zetaflat import backend, chainsum
from zetaflat.chainsum import _lcm_upto, _plan, flat_chain, zeta_chain
from zetaflat.finite_padic import primes_in
from zetaflat.index_algebra import Index
from zetaflat import _kernels as pure

try:
    from zetaflat import _ckernels as compiled
except ImportError:
    compiled = None


def enum_payload(k, upper):
    spec = flat_chain(Index(k))
    dens, stricts, lbs, ubs = _plan(spec, upper)
    scale = _lcm_upto(upper) ** spec.degree
    return "enum", (dens, stricts, lbs, ubs, scale), f"flat{k} enum N={upper}"


def dp_payload(k, upper, flat=False):
    spec = flat_chain(Index(k)) if flat else zeta_chain(Index(k))
    dens, stricts, lbs, ubs = _plan(spec, upper)
    lcm = _lcm_upto(upper)
    lams = [lcm ** p.weight.degree for p in spec.positions]
    name = ("flat" if flat else "zeta") + f"{k} dp N={upper}"
    return "dp", (dens, stricts, lbs, ubs, lams), name


def mod_payloads(k, primes):
    spec = flat_chain(Index(k))
    payloads = []
    for p in primes:
        plan = _plan(spec, p)
        if plan is None:
            continue
        dens, stricts, lbs, ubs = plan
        dens_mod = [[d % p for d in row] for row in dens]
        payloads.append((dens_mod, stricts, lbs, ubs, p))
    return payloads


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return result, min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"active backend: {backend.active_backend()}")
    if compiled is None:
        print("compiled extension not built; timing the pure kernels only")

    workloads = [
        enum_payload((1, 2, 2), 40),
        dp_payload((1, 2), 2048),
        dp_payload((1, 2, 2), 512, flat=True),
    ]
    runners = {"enum": "enum_sum", "dp": "dp_sum"}

    header = f"{'workload':<28} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for kind, payload, name in workloads:
        attr = runners[kind]
        ref, t_pure = best_of(lambda: getattr(pure, attr)(*payload),
                              args.repeat)
        if compiled is None:
            print(f"{name:<28} {t_pure * 1e3:>8.1f}ms {'-':>10} {'-':>8}")
            continue
        got, t_comp = best_of(lambda: getattr(compiled, attr)(*payload),
                              args.repeat)
        assert got == ref, f"backend mismatch on {name}"
        print(f"{name:<28} {t_pure * 1e3:>8.1f}ms {t_comp * 1e3:>8.1f}ms "
              f"{t_pure / t_comp:>7.1f}x")

    primes = primes_in(3, 199)
    payloads = mod_payloads((1, 2, 2), primes)

    def sweep(mod):
        return [mod.dp_sum_mod(*pl) for pl in payloads]

    ref, t_pure = best_of(lambda: sweep(pure), args.repeat)
    name = f"flat(1,2,2) mod p, p<=199"
    if compiled is None:
        print(f"{name:<28} {t_pure * 1e3:>8.1f}ms {'-':>10} {'-':>8}")
        return
    got, t_comp = best_of(lambda: sweep(compiled), args.repeat)
    assert got == ref, "backend mismatch on mod sweep"
    print(f"{name:<28} {t_pure * 1e3:>8.1f}ms {t_comp * 1e3:>8.1f}ms "
          f"{t_pure / t_comp:>7.1f}x")


if __name__ == "__main__":
    main()
