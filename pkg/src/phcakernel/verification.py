"""Instance generators and the brute-force equivalence harness."""
from __future__ import annotations

import json
import random
import warnings
from dataclasses import asdict, dataclass

from .errors import GraphInputError
from .graph import Graph

NOISE = "noise"
DEFAULT_EQUIV_LIMIT = 14

SPEC_SCHEMA = {
    "type": "object",
    "properties": {
        "seed": {"type": "integer"},
        "components": {"type": "integer", "minimum": 1},
        "cliques": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2},
        "clique_size": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2},
        "hole_probability": {"type": "number", "minimum": 0, "maximum": 1},
        "noise": {"type": "integer", "minimum": 0},
        "noise_degree": {"type": "integer", "minimum": 0},
        "shuffle": {"type": "boolean"},
    },
    "additionalProperties": False,
}


@dataclass(frozen=True)
class GeneratorSpec:
    seed: int = 0
    components: int = 1
    cliques: tuple[int, int] = (4, 8)  # inclusive range of cliques per component
    clique_size: tuple[int, int] = (1, 3)
    hole_probability: float = 0.5  # chance of a single circular component instead
    noise: int = 0
    noise_degree: int = 3
    shuffle: bool = True  # randomly permute vertex ids

    def __post_init__(self):
        for name in ("cliques", "clique_size"):
            lo, hi = getattr(self, name)
            if lo < 1 or hi < lo:
                raise GraphInputError(f"bad range for {name}: {(lo, hi)}")
        if self.components < 1:
            raise GraphInputError("components must be >= 1")
        if not 0 <= self.hole_probability <= 1:
            raise GraphInputError("hole_probability must lie in [0, 1]")
        if self.hole_probability > 0 and self.cliques[1] < 4:
            raise GraphInputError("circular components need at least 4 cliques")
        if self.noise < 0 or self.noise_degree < 0:
            raise GraphInputError("noise counts must be nonnegative")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GeneratorSpec":
        data = json.loads(text)
        allowed = set(SPEC_SCHEMA["properties"])
        extra = set(data) - allowed
        if extra:
            raise GraphInputError(f"unknown spec keys {sorted(extra)}")
        for key in ("cliques", "clique_size"):
            if key in data:
                data[key] = tuple(data[key])
        return cls(**data)


def _chain(rng: random.Random, sizes: list[int], circular: bool, start: int):
    """Cliques in a row (or ring) with umbrella edges between neighbours."""
    cliques = []
    nxt = start
    for s in sizes:
        cliques.append(list(range(nxt, nxt + s)))
        nxt += s
    edges = []
    for Q in cliques:
        edges.extend((Q[a], Q[b]) for a in range(len(Q)) for b in range(a + 1, len(Q)))
    t = len(cliques)
    for i in range(t if circular else t - 1):
        A, B = cliques[i], cliques[(i + 1) % t]
        # thresholds nondecreasing along A; the last vertex reaches B
        r = sorted(rng.randint(0, len(B)) for _ in A)
        r[-1] = max(r[-1], 1)
        for a, ra in zip(A, r):
            edges.extend((a, B[j]) for j in range(ra))
    return list(range(start, nxt)), edges


def _build(spec: GeneratorSpec, rng: random.Random) -> Graph:
    verts, edges = [], []
    # a hole plus any vertex outside its component is a Monad
    circular = spec.cliques[1] >= 4 and rng.random() < spec.hole_probability
    for _ in range(1 if circular else spec.components):
        lo = max(spec.cliques[0], 4) if circular else spec.cliques[0]
        t = rng.randint(lo, spec.cliques[1])
        sizes = [rng.randint(*spec.clique_size) for _ in range(t)]
        vs, es = _chain(rng, sizes, circular, len(verts))
        verts.extend(vs)
        edges.extend(es)
    if spec.shuffle:
        perm = list(range(len(verts)))
        rng.shuffle(perm)
        edges = [(perm[u], perm[v]) for u, v in edges]
    return Graph(range(len(verts)), edges)


def gen_phca(spec: GeneratorSpec) -> Graph:
    """Random PHCA graph (before noise), validated by the recognizer."""
    from .recognition import is_phca

    for attempt in range(100):
        rng = random.Random(f"{spec.seed}/{attempt}")
        G = _build(spec, rng)
        if is_phca(G).member:
            if spec.noise:
                G = plant_noise(G, spec.noise, spec.seed, spec.noise_degree)
            return G
    raise GraphInputError("could not generate a PHCA graph for this spec")


def plant_noise(G: Graph, t: int, seed, degree: int = 3) -> Graph:
    """Add ``t`` vertices, each joined to ``degree`` random original vertices.

    New vertices carry the label ``"noise"``; together they form a deletion
    set of size ``t``.
    """
    if t <= 0:
        return G
    rng = random.Random(f"noise/{seed}")
    base = list(G.vertices)
    nxt = G.max_id + 1
    new = {}
    for i in range(t):
        new[nxt + i] = rng.sample(base, min(degree, len(base)))
    return G.add_vertices(new, {v: NOISE for v in new})


def planted_set(G: Graph) -> frozenset[int]:
    return frozenset(v for v, lab in G.labels.items() if lab == NOISE)


# -- rule-exercising corpus ------------------------------------------------

GADGETS = ("claw", "star", "net", "tent", "w4", "monad", "fan", "twin_claws")


def _gadget(kind: str, rng: random.Random, start: int):
    """A small non-PHCA graph on ids ``start..``; returns (vertices, edges, hub)."""
    s = start
    if kind in ("claw", "star"):
        leaves = 3 if kind == "claw" else rng.randint(4, 7)
        return list(range(s, s + leaves + 1)), [(s, s + i) for i in range(1, leaves + 1)], s
    if kind == "net":
        e = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]
        return list(range(s, s + 6)), [(s + a, s + b) for a, b in e], s
    if kind == "tent":
        e = [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)]
        return list(range(s, s + 6)), [(s + a, s + b) for a, b in e], s
    if kind == "w4":
        e = [(0, 1), (1, 2), (2, 3), (3, 0)] + [(4, i) for i in range(4)]
        return list(range(s, s + 5)), [(s + a, s + b) for a, b in e], s + 4
    if kind == "monad":
        L = rng.randint(4, 6)
        e = [(i, (i + 1) % L) for i in range(L)]
        return list(range(s, s + L + 1)), [(s + a, s + b) for a, b in e], s + L
    if kind == "twin_claws":
        # two true-twin centres sharing three leaves
        e = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]
        return list(range(s, s + 5)), [(s + a, s + b) for a, b in e], s
    # fan: a hub joined to one end of several short paths
    paths = rng.randint(3, 5)
    verts, edges, nxt = [s], [], s + 1
    for _ in range(paths):
        length = rng.randint(1, 2)
        p = list(range(nxt, nxt + length))
        edges.append((s, p[0]))
        edges.extend(zip(p, p[1:]))
        verts.extend(p)
        nxt += length
    return verts, edges, s


def gen_corpus_instance(seed, max_n: int = 14) -> tuple[Graph, int]:
    """A small instance built to give the reduction rules something to do.

    One obstruction gadget, a few interval components (cliques, paths of
    cliques, isolated vertices) that may be glued to the gadget by a
    single edge, and a budget in 1..3.  Ids are shuffled.
    """
    rng = random.Random(f"corpus/{seed}")
    kind = rng.choice(GADGETS)
    verts, edges, hub = _gadget(kind, rng, 0)
    room = max_n - len(verts)
    while room > 0:
        shape = rng.choice(("clique", "path", "single")) if room > 1 else "single"
        size = 1 if shape == "single" else rng.randint(2, min(room, 7))
        start = len(verts)
        if shape == "path":
            sizes, left = [], size
            while left:
                sizes.append(rng.randint(1, min(3, left)))
                left -= sizes[-1]
            vs, es = _chain(rng, sizes, False, start)
        else:
            vs = list(range(start, start + size))
            es = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]]
        verts.extend(vs)
        edges.extend(es)
        if rng.random() < 0.3:
            edges.append((rng.choice([hub, *verts[:3]]), vs[0]))
        room = max_n - len(verts)
        if rng.random() < 0.25:
            break
    perm = list(range(len(verts)))
    rng.shuffle(perm)
    G = Graph(range(len(verts)), [(perm[a], perm[b]) for a, b in edges if a != b])
    return G, rng.randint(1, 3)


# -- equivalence -----------------------------------------------------------

def check_equivalence(before, after, limit: int = DEFAULT_EQUIV_LIMIT) -> bool | None:
    """Whether both instances get the same yes/no answer from the exact solver.

    ``before`` and ``after`` are Instances or ``(graph, k)`` pairs.  Returns
    None, with a warning, when either graph has more than ``limit``
    vertices.
    """
    from .solvers import exact_solve

    (G1, k1), (G2, k2) = (_pair(x) for x in (before, after))
    if G1.n > limit or G2.n > limit:
        warnings.warn(f"equivalence check skipped: {max(G1.n, G2.n)} vertices exceeds limit {limit}", stacklevel=2)
        return None

    def yes(G, k):
        return k >= 0 and exact_solve(G, k) is not None

    return yes(G1, k1) == yes(G2, k2)


def _pair(x):
    if isinstance(x, tuple):
        return x
    return x.graph, x.k
