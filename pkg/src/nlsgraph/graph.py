"""Weighted graphs with a vertex measure and their discrete calculus.

Vertex functions are plain 1-D float arrays laid out in the graph's vertex
order (insertion order).  Every operator here accepts either such an array or
a ``{vertex_id: value}`` mapping covering exactly the vertex set.
"""

from collections import deque
from collections.abc import Mapping

import numpy as np
from scipy import sparse

from .errors import (
    DomainMismatch,
    DuplicateEdge,
    DuplicateVertex,
    InvalidExponent,
    NonPositiveMeasure,
    NonPositivePotential,
    NonPositiveWeight,
    SelfLoop,
    UnknownEndpoint,
    UnknownVertex,
)


class WeightedGraph:
    """Immutable undirected graph with edge weights, vertex measure and an
    optional vertex potential.

    Use :func:`build_graph` rather than calling the constructor directly.
    """

    def __init__(self, vertices, mu, edges, potential=None):
        self.vertices = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)

        self.mu = np.asarray(mu, dtype=float)
        self.edges = tuple(edges)
        if self.edges:
            ei, ej, ew = (np.array(c) for c in zip(*self.edges))
        else:
            ei = ej = np.zeros(0, dtype=int)
            ew = np.zeros(0)
        self.edge_i = ei.astype(np.intp)
        self.edge_j = ej.astype(np.intp)
        self.edge_w = ew.astype(float)

        rows = np.concatenate([self.edge_i, self.edge_j])
        cols = np.concatenate([self.edge_j, self.edge_i])
        vals = np.concatenate([self.edge_w, self.edge_w])
        self.weights = sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))
        self.deg = np.asarray(self.weights.sum(axis=1)).ravel()
        # combinatorial Laplacian D - W; note -mu * Delta u = L u
        self.laplacian_matrix = (sparse.diags(self.deg) - self.weights).tocsr()

        self.neighbors = [[] for _ in range(n)]
        for i, j, w in self.edges:
            self.neighbors[i].append((j, w))
            self.neighbors[j].append((i, w))

        self.potential = None if potential is None else np.asarray(potential, dtype=float)
        for arr in (self.mu, self.deg, self.edge_w, self.potential):
            if arr is not None:
                arr.setflags(write=False)

        self.connected = n > 0 and len(_bfs(self.neighbors, 0)) == n

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        return (f"WeightedGraph(n={len(self)}, edges={len(self.edges)}, "
                f"volume={self.volume:g}, connected={self.connected})")

    @property
    def n(self):
        return len(self.vertices)

    @property
    def volume(self):
        """Total measure, the integral of 1 over the vertex set."""
        return float(self.mu.sum())

    @property
    def mu_min(self):
        return float(self.mu.min())

    def idx(self, x):
        try:
            return self.index[x]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {x!r}") from None

    def function(self, values):
        """Coerce ``values`` (array-like or mapping) to a vertex-ordered array."""
        return as_function(self, values)

    def as_dict(self, u):
        u = as_function(self, u)
        return dict(zip(self.vertices, u.tolist()))

    def distances(self, origin):
        """Hop distance from ``origin`` to every vertex (``inf`` if unreachable)."""
        dist = np.full(self.n, np.inf)
        for i, d in _bfs(self.neighbors, self.idx(origin)).items():
            dist[i] = d
        return dist


def _bfs(neighbors, start, radius=None):
    dist = {start: 0}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if radius is not None and dist[x] >= radius:
            continue
        for y, _ in neighbors[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def build_graph(vertices, edges=(), potential=None):
    """Validate a vertex/measure/edge description and build a graph.

    Parameters
    ----------
    vertices : mapping or iterable
        ``{id: mu}`` or an iterable of ``(id, mu)`` pairs.  Ids are stored as
        strings; the iteration order fixes the vertex order.
    edges : iterable of (u, v, w)
        Each undirected edge listed once.
    potential : mapping or array-like, optional
        Vertex potential ``h``; must be strictly positive.

    Returns
    -------
    WeightedGraph
    """
    items = vertices.items() if isinstance(vertices, Mapping) else vertices
    ids, mu = [], []
    seen = set()
    for vid, m in items:
        vid = str(vid)
        if vid in seen:
            raise DuplicateVertex(f"vertex {vid!r} listed twice")
        if not m > 0 or not np.isfinite(m):
            raise NonPositiveMeasure(f"measure of vertex {vid!r} must be positive, got {m!r}")
        seen.add(vid)
        ids.append(vid)
        mu.append(float(m))
    if not ids:
        raise ValueError("a graph needs at least one vertex")
    index = {v: i for i, v in enumerate(ids)}

    out = []
    pairs = set()
    for a, b, w in edges:
        a, b = str(a), str(b)
        for end in (a, b):
            if end not in index:
                raise UnknownEndpoint(f"edge ({a!r}, {b!r}) has unknown endpoint {end!r}")
        if a == b:
            raise SelfLoop(f"self-loop at {a!r}")
        if not w > 0 or not np.isfinite(w):
            raise NonPositiveWeight(f"edge ({a!r}, {b!r}) has non-positive weight {w!r}")
        key = frozenset((a, b))
        if key in pairs:
            raise DuplicateEdge(f"edge ({a!r}, {b!r}) listed twice")
        pairs.add(key)
        out.append((index[a], index[b], float(w)))

    h = None
    if potential is not None:
        if isinstance(potential, Mapping):
            potential = {str(k): v for k, v in potential.items()}
            if set(potential) != set(ids):
                raise DomainMismatch("potential must be given on every vertex")
            potential = [potential[v] for v in ids]
        h = np.asarray(potential, dtype=float)
        if h.shape != (len(ids),):
            raise DomainMismatch(f"potential has shape {h.shape}, expected ({len(ids)},)")
        if not np.all(h > 0):
            raise NonPositivePotential("potential must be strictly positive")
    return WeightedGraph(ids, mu, out, potential=h)


def as_function(g, u):
    """Return ``u`` as a float array in ``g``'s vertex order."""
    if isinstance(u, Mapping):
        keys = {str(k) for k in u}
        if keys != set(g.vertices):
            raise DomainMismatch("function keys do not match the vertex set")
        lookup = {str(k): v for k, v in u.items()}
        return np.array([lookup[v] for v in g.vertices], dtype=float)
    arr = np.asarray(u, dtype=float)
    if arr.ndim == 0:
        return np.full(g.n, float(arr))
    if arr.shape != (g.n,):
        raise DomainMismatch(f"function has shape {arr.shape}, graph has {g.n} vertices")
    return arr


def degree(g, x):
    return float(g.deg[g.idx(x)])


def laplacian(g, u):
    """mu-Laplacian: (1/mu(x)) * sum_y w_xy (u(y) - u(x))."""
    u = as_function(g, u)
    return -stiffness(g, u) / g.mu


def stiffness(g, u):
    """L u with L = D - W the combinatorial Laplacian, i.e. -mu * Delta u.

    Evaluated edgewise so that constants map to exactly zero.
    """
    flux = g.edge_w * (u[g.edge_j] - u[g.edge_i])
    return np.bincount(g.edge_j, flux, minlength=g.n) - np.bincount(g.edge_i, flux, minlength=g.n)


def gamma(g, u, v=None):
    """Gradient form Gamma(u, v); with ``v`` omitted returns |grad u|^2."""
    u = as_function(g, u)
    v = u if v is None else as_function(g, v)
    du = u[g.edge_j] - u[g.edge_i]
    dv = v[g.edge_j] - v[g.edge_i]
    prod = g.edge_w * du * dv
    acc = np.bincount(g.edge_i, prod, minlength=g.n) + np.bincount(g.edge_j, prod, minlength=g.n)
    return acc / (2.0 * g.mu)


def grad_length(g, u):
    return np.sqrt(gamma(g, u))


def integrate(g, f):
    return float(np.dot(g.mu, as_function(g, f)))


def dirichlet(g, u):
    """Integral of |grad u|^2, computed edgewise as sum_xy w_xy (u(x)-u(y))^2."""
    u = as_function(g, u)
    d = u[g.edge_i] - u[g.edge_j]
    return float(np.dot(g.edge_w, d * d))


def lq_norm(g, u, q=2):
    """L^q(mu) norm for ``q >= 1``; ``q=np.inf`` gives the sup norm."""
    u = as_function(g, u)
    if q == np.inf or q == "inf":
        return float(np.max(np.abs(u))) if u.size else 0.0
    if not q >= 1:
        raise InvalidExponent(f"q must be >= 1 or inf, got {q!r}")
    return float(np.dot(g.mu, np.abs(u) ** q) ** (1.0 / q))


def h_norm(g, u):
    """Sobolev norm (integral of |grad u|^2 + u^2)^(1/2)."""
    u = as_function(g, u)
    return float(np.sqrt(dirichlet(g, u) + np.dot(g.mu, u * u)))


class PowerPotential:
    """h(x) = a + b * rho(x)**gamma, rho the hop distance to the origin."""

    def __init__(self, a=1.0, b=1.0, gamma=1.0):
        if not (a > 0 and b > 0):
            raise NonPositivePotential("need a > 0 and b > 0")
        if not gamma >= 1:
            raise ValueError("need gamma >= 1")
        self.a, self.b, self.gamma = float(a), float(b), float(gamma)

    def __call__(self, rho):
        return self.a + self.b * np.asarray(rho, dtype=float) ** self.gamma

    def __repr__(self):
        return f"PowerPotential(a={self.a:g}, b={self.b:g}, gamma={self.gamma:g})"


class IntegerLattice:
    """Unit-weight, unit-measure integer lattice Z^dim, as a vertex generator.

    Calling the lattice with a vertex id returns ``(mu, h, neighbors)`` where
    ``neighbors`` is a list of ``(id, w)``.  Ids are ``"i"`` in 1-D and
    ``"i,j"`` in 2-D; the origin is the all-zero site.
    """

    def __init__(self, dim=1, potential=None):
        if dim not in (1, 2):
            raise ValueError("only 1-D and 2-D lattices are built in")
        self.dim = dim
        self.potential = potential
        self.origin = ",".join(["0"] * dim)

    def _coords(self, vid):
        try:
            c = tuple(int(s) for s in str(vid).split(","))
        except ValueError:
            raise UnknownVertex(f"not a lattice site: {vid!r}") from None
        if len(c) != self.dim:
            raise UnknownVertex(f"not a lattice site: {vid!r}")
        return c

    def __call__(self, vid):
        c = self._coords(vid)
        rho = sum(abs(k) for k in c)
        h = None if self.potential is None else float(self.potential(rho))
        nbrs = []
        for axis in range(self.dim):
            for step in (-1, 1):
                d = list(c)
                d[axis] += step
                nbrs.append((",".join(map(str, d)), 1.0))
        return 1.0, h, nbrs


def ball_subgraph(source, origin, radius):
    """Induced subgraph on the hop-distance ball of ``radius`` around ``origin``.

    ``source`` is a :class:`WeightedGraph` (vertex order inherited) or a
    generator callable as described in :class:`IntegerLattice` (vertex order is
    breadth-first discovery order).
    """
    radius = int(radius)
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if isinstance(source, WeightedGraph):
        start = source.idx(origin)
        keep = sorted(_bfs(source.neighbors, start, radius))
        pos = {old: new for new, old in enumerate(keep)}
        edges = [(source.vertices[i], source.vertices[j], w)
                 for i, j, w in source.edges if i in pos and j in pos]
        h = None if source.potential is None else source.potential[keep]
        return build_graph([(source.vertices[i], source.mu[i]) for i in keep], edges, h)

    origin = str(origin)
    info = {origin: source(origin)}
    dist = {origin: 0}
    order = [origin]
    queue = deque([origin])
    while queue:
        x = queue.popleft()
        if dist[x] >= radius:
            continue
        for y, _ in info[x][2]:
            if y not in dist:
                dist[y] = dist[x] + 1
                info[y] = source(y)
                order.append(y)
                queue.append(y)
    edges = []
    done = set()
    for x in order:
        for y, w in info[x][2]:
            if y in dist and y not in done and y != x:
                edges.append((x, y, w))
        done.add(x)
    hs = [info[x][1] for x in order]
    h = None if any(v is None for v in hs) else hs
    return build_graph([(x, info[x][0]) for x in order], edges, h)
