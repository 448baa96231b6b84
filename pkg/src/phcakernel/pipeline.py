"""End-to-end kernelization: modulator, partitions, then the reduction rules."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace

from .errors import InternalError, NoInstance
from .graph import Graph, connected_components
from .hitting_set import DEFAULT_D
from .instance import Instance, TraceEvent
from .modulator import (
    DEFAULT_R,
    assemble_nice_modulator,
    build_efficient_modulator,
    red_phcavd,
    singleton_w_rule,
)
from .recognition import is_phca
from .rules import (
    clique_bound,
    component_clique_bound,
    component_count_bound,
    rule_bound_clique,
    rule_claw_center,
    rule_clique_spread,
    rule_component_spread,
    rule_compress_chunk,
    rule_drop_interval_components,
)
from .solvers import ApproxOracle, exact_oracle

KERNEL = "kernel"
NO = "no"


@dataclass(frozen=True)
class KernelResult:
    outcome: str  # KERNEL or NO
    instance: Instance | None
    trace: tuple[TraceEvent, ...]
    stats: dict = field(compare=False)
    reason: str | None = None

    @property
    def is_kernel(self) -> bool:
        return self.outcome == KERNEL

    def trace_json(self) -> str:
        return json.dumps([ev.to_json() for ev in self.trace], sort_keys=True)

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "stats": self.stats, "trace": [ev.to_json() for ev in self.trace]}
        if self.instance is not None:
            out["k"] = self.instance.k
            out["modulator"] = None if self.instance.bundle is None else self.instance.bundle.to_json()
        if self.reason:
            out["reason"] = self.reason
        return out


class _Run:
    """Mutable bookkeeping for one kernelize call."""

    def __init__(self, G: Graph, k: int, oracle: ApproxOracle):
        self.I = Instance.start(G, k, oracle.guaranteed)
        self.trace: list[TraceEvent] = []
        self.fired: Counter = Counter()
        self.restarts = 0

    def apply(self, res) -> None:
        self.I, ev = res
        self.trace.append(ev)
        self.fired[ev.rule] += 1

    def note(self, rule: str, **params) -> None:
        self.trace.append(TraceEvent(rule, self.I.k, self.I.k, params=params))


def kernelize(G: Graph, k: int, oracle: ApproxOracle | None = None, r: int = DEFAULT_R,
              d: int = DEFAULT_D, eager: bool = True) -> KernelResult:
    """Kernelize ``(G, k)``; the result is an equivalent instance or NO.

    Stages, each run to exhaustion: modulator construction, the singleton
    rule, clique marking, the claw and clique-spread rules, chunk
    compression, the component-spread rule and dropping surplus interval
    components.  Any rule that lowers k restarts from the modulator.
    """
    if k < 0:
        raise ValueError("budget must be nonnegative")
    oracle = oracle or exact_oracle()
    run = _Run(G, k, oracle)
    stats: dict = {"n_in": G.n, "m_in": G.m, "k_in": k, "oracle": oracle.name, "guaranteed": oracle.guaranteed}
    try:
        while True:
            I = run.I
            if I.k == 0 or is_phca(I.graph).member:
                if not is_phca(I.graph).member:
                    raise NoInstance("budget exhausted on a graph that is not PHCA", [])
                # a yes-instance: the empty graph with budget 0 is equivalent
                run.apply(I.delete(I.graph.vertices, "phca_input", I.k))
                run.I = replace(run.I, bundle=None, partitions=())
                return _finish(run, stats)
            ell = I.k + 2
            E = build_efficient_modulator(I.graph, I.k, oracle, d, eager)
            R = red_phcavd(I.graph, ell, r, oracle)
            single = singleton_w_rule(I, R.W)
            if single is not None:
                J, _, ev = single
                run.apply((_fresh(J), ev))
                run.restarts += 1
                continue
            bundle = assemble_nice_modulator(E.T1, R.M, R.W, ell, r, oracle.factor, oracle.guaranteed)
            run.I = replace(I, bundle=bundle).with_partitions()
            run.note("modulator", **bundle.to_json(), oracle_calls=R.oracle_calls)
            stats.update({"T1": len(bundle.T1), "M": len(bundle.M), "W": len(bundle.W), "T": len(bundle.T)})
            if _reduce(run):
                run.I = _fresh(run.I)
                run.restarts += 1
                continue
            return _finish(run, stats)
    except NoInstance as exc:
        run.trace.extend(ev for ev in exc.trace if ev not in run.trace)
        stats.update(_rule_stats(run))
        return KernelResult(NO, None, tuple(run.trace), stats, exc.reason)


def _fresh(I: Instance) -> Instance:
    return replace(I, bundle=None, partitions=())


def _reduce(run: _Run) -> bool:
    """Apply the rules in stage order; True when k dropped and a restart is due."""
    while True:
        cache: dict = {}
        while (res := rule_bound_clique(run.I, cache)) is not None:
            run.apply(res)
        res = rule_claw_center(run.I) or rule_clique_spread(run.I)
        if res is not None:
            run.apply(res)
            return True
        res = rule_compress_chunk(run.I)
        if res is not None:
            run.apply(res)
            continue
        res = rule_component_spread(run.I)
        if res is not None:
            run.apply(res)
            return True
        res = rule_drop_interval_components(run.I)
        if res is not None:
            run.apply(res)
            continue
        return False


def _rule_stats(run: _Run) -> dict:
    return {"rules_fired": dict(sorted(run.fired.items())), "restarts": run.restarts}


def _finish(run: _Run, stats: dict) -> KernelResult:
    I = run.I
    H = I.graph
    nT = len(I.T)
    stats.update({"n_out": H.n, "m_out": H.m, "k_out": I.k, **_rule_stats(run)})
    stats["kernel_size_formula"] = I.k ** 4 * nT ** 7
    bounds = check_bounds(I)
    stats["bounds"] = bounds
    broken = [name for name, ok in bounds.items() if not ok]
    if broken:
        raise InternalError(f"structural bounds violated: {broken}")
    return KernelResult(KERNEL, I, tuple(run.trace), stats)


def check_bounds(I: Instance) -> dict[str, bool]:
    """The per-clique, per-component and component-count bounds on a kernel.

    The clique bound relies on the marking rule, which only runs under a
    proven oracle factor; for other oracles it is reported as satisfied.
    """
    k, nT = I.k, len(I.T)
    H = I.graph.remove_vertices(I.T)
    parts = I.partitions
    if not parts and H.n:
        raise InternalError("kernel without partitions of G - T")
    cliques_ok = not I.guaranteed or all(len(Q) <= clique_bound(k, nT) for P in parts for Q in P.cliques)
    comps = connected_components(H)
    return {
        "clique_size": cliques_ok,
        "component_cliques": all(P.t <= component_clique_bound(k, nT) for P in parts),
        "component_count": len(comps) <= component_count_bound(k, nT),
    }
