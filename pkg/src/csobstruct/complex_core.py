"""Finite oriented simplicial complexes and their coboundary calculus.

Simplices are strictly increasing vertex tuples; within each degree the
canonical index is lexicographic order on those tuples.  The coboundary
uses the alternating-face convention: the face obtained by dropping vertex
i carries sign (-1)^i.  All integer arithmetic is exact (Python ints).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import Error

INT = "int"
REAL = "real"


def faces(simplex):
    """All codimension-1 faces of an increasing tuple, in drop-index order."""
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


class SimplicialComplex:
    """Immutable simplicial complex with canonical per-degree orderings.

    Attributes
    ----------
    dim : top dimension
    simplices : dict degree -> list of increasing vertex tuples (lex sorted)
    top_orientation : optional list of +-1 per top simplex
    """

    def __init__(self, top_simplices, top_orientation=None, dim=None):
        tops = [tuple(int(v) for v in s) for s in top_simplices]
        if not tops:
            raise Error("DANGLING_VERTEX", "empty complex")
        for s in tops:
            if any(a >= b for a, b in zip(s, s[1:])):
                raise Error("NON_INCREASING_TUPLE", f"simplex {s}")
        if len(set(tops)) != len(tops):
            raise Error("DUPLICATE_SIMPLEX", "repeated top simplex")

        top_dim = max(len(s) - 1 for s in tops)
        if dim is not None and dim != top_dim:
            raise Error("PARSE_ERROR",
                        f"declared dim {dim} does not match top simplices")
        self.dim = top_dim

        # face closure
        by_degree = [set() for _ in range(self.dim + 1)]
        stack = list(tops)
        for s in tops:
            by_degree[len(s) - 1].add(s)
        while stack:
            s = stack.pop()
            if len(s) == 1:
                continue
            for f in faces(s):
                k = len(f) - 1
                if f not in by_degree[k]:
                    by_degree[k].add(f)
                    stack.append(f)

        vertices = sorted(v for (v,) in by_degree[0])
        if vertices != list(range(len(vertices))):
            raise Error("DANGLING_VERTEX",
                        "vertex labels must be contiguous 0..V-1")

        self.simplices = {k: sorted(by_degree[k]) for k in range(self.dim + 1)}
        self._index = {k: {s: i for i, s in enumerate(self.simplices[k])}
                       for k in range(self.dim + 1)}
        self._top_set = set(tops)
        self._d_cache = {}
        self._d_triplet_cache = {}

        if top_orientation is not None:
            ori = [int(e) for e in top_orientation]
            if len(ori) != len(self.simplices[self.dim]) or \
                    any(e not in (-1, 1) for e in ori):
                raise Error("BAD_ORIENTATION",
                            "orientation must be one +-1 per top simplex")
            self.top_orientation = ori
        else:
            self.top_orientation = None

    # -- basic queries -------------------------------------------------

    def n_simplices(self, k):
        if k < 0 or k > self.dim:
            return 0
        return len(self.simplices[k])

    @property
    def n_vertices(self):
        return self.n_simplices(0)

    def f_vector(self):
        return tuple(self.n_simplices(k) for k in range(self.dim + 1))

    def index(self, simplex):
        s = tuple(simplex)
        k = len(s) - 1
        if k not in self._index or s not in self._index[k]:
            raise Error("UNKNOWN_SIMPLEX", f"simplex {s} not in complex")
        return self._index[k][s]

    def euler_characteristic(self):
        return sum((-1) ** k * self.n_simplices(k)
                   for k in range(self.dim + 1))

    # -- coboundary ----------------------------------------------------

    def _d_triplets(self, k):
        """(row, col, sign) triplets of d_k: C^k -> C^{k+1}."""
        if k in self._d_triplet_cache:
            return self._d_triplet_cache[k]
        rows, cols, signs = [], [], []
        idx_k = self._index[k]
        for r, tau in enumerate(self.simplices[k + 1]):
            for i, f in enumerate(faces(tau)):
                rows.append(r)
                cols.append(idx_k[f])
                signs.append(-1 if i % 2 else 1)
        trip = (rows, cols, signs)
        self._d_triplet_cache[k] = trip
        return trip

    def coboundary_matrix(self, k):
        """Sparse integer matrix of d_k : C^k -> C^{k+1} (rows: (k+1)-simplices)."""
        if not 0 <= k < self.dim:
            raise Error("DEGREE_OUT_OF_RANGE", f"k={k}, dim={self.dim}")
        if k not in self._d_cache:
            rows, cols, signs = self._d_triplets(k)
            m = sp.csr_matrix(
                (np.array(signs, dtype=np.int64), (rows, cols)),
                shape=(self.n_simplices(k + 1), self.n_simplices(k)))
            self._d_cache[k] = m
        return self._d_cache[k]

    def coboundary_dense(self, k):
        return self.coboundary_matrix(k).toarray().astype(float)


# -- cochains and chains ----------------------------------------------


@dataclass(frozen=True)
class Cochain:
    """Degree-k cochain; values aligned with the canonical k-simplex order."""

    degree: int
    ring: str
    values: np.ndarray

    def __post_init__(self):
        if self.ring not in (INT, REAL):
            raise Error("BAD_RING", f"ring must be int or real, got {self.ring}")

    @staticmethod
    def make(degree, ring, values):
        if ring == INT:
            arr = np.array([int(v) for v in values], dtype=object)
        else:
            arr = np.asarray(values, dtype=float)
        return Cochain(degree, ring, arr)

    @staticmethod
    def zeros(complex_, degree, ring=REAL):
        n = complex_.n_simplices(degree)
        if ring == INT:
            return Cochain(degree, INT, np.array([0] * n, dtype=object))
        return Cochain(degree, REAL, np.zeros(n))

    def as_float(self):
        return np.asarray([float(v) for v in self.values]) \
            if self.ring == INT else self.values


@dataclass(frozen=True)
class Chain:
    """Degree-k chain with exact integer coefficients."""

    degree: int
    values: np.ndarray  # dtype=object, Python ints


def apply_d(complex_, cochain):
    """Coboundary of a cochain; exact for integer coefficients."""
    k = cochain.degree
    if not 0 <= k < complex_.dim:
        raise Error("DEGREE_OUT_OF_RANGE", f"degree {k}, dim {complex_.dim}")
    if len(cochain.values) != complex_.n_simplices(k):
        raise Error("BASE_MISMATCH", "cochain length does not match complex")
    if cochain.ring == REAL:
        out = complex_.coboundary_matrix(k) @ cochain.values
        return Cochain(k + 1, REAL, np.asarray(out, dtype=float))
    rows, cols, signs = complex_._d_triplets(k)
    out = [0] * complex_.n_simplices(k + 1)
    vals = cochain.values
    for r, c, s in zip(rows, cols, signs):
        out[r] += s * vals[c]
    return Cochain(k + 1, INT, np.array(out, dtype=object))


# -- fundamental cycle -------------------------------------------------


def fundamental_cycle(complex_):
    """Signs eps per top simplex with boundary(sum eps*sigma) = 0 over Z.

    Signs are found by propagating orientation across shared
    codimension-1 faces; a propagation contradiction means the complex is
    non-orientable, a nonzero boundary after propagation means it is not
    closed.  Memoized per complex (complexes are immutable).
    """
    cached = complex_.__dict__.get("_fundamental_cycle")
    if cached is None:
        cached = _fundamental_cycle_compute(complex_)
        complex_.__dict__["_fundamental_cycle"] = cached
    return cached


def _fundamental_cycle_compute(complex_):
    n = complex_.dim
    if n < 1:
        raise Error("NOT_CLOSED", "0-dimensional complex has no cycle")
    n_top = complex_.n_simplices(n)
    d = complex_.coboundary_matrix(n - 1)  # rows: top simplices
    dT = d.tocsc()

    # cofaces of each (n-1)-simplex, with incidence signs
    cofaces = [[] for _ in range(complex_.n_simplices(n - 1))]
    rows, cols, signs = complex_._d_triplets(n - 1)
    for r, c, s in zip(rows, cols, signs):
        cofaces[c].append((r, s))

    eps = [0] * n_top
    for seed in range(n_top):
        if eps[seed]:
            continue
        eps[seed] = 1
        queue = [seed]
        while queue:
            t = queue.pop()
            for f in (complex_._index[n - 1][fc]
                      for fc in faces(complex_.simplices[n][t])):
                if len(cofaces[f]) != 2:
                    continue  # boundary / non-manifold face, checked below
                (t1, s1), (t2, s2) = cofaces[f]
                other, so = (t2, s2) if t1 == t else (t1, s1)
                st = s1 if t1 == t else s2
                want = -eps[t] * st * so  # eps_t*s_t + eps_o*s_o = 0
                if eps[other] == 0:
                    eps[other] = want
                    queue.append(other)
                elif eps[other] != want:
                    raise Error("NON_ORIENTABLE",
                                "orientation propagation contradicts itself")

    # exact boundary check
    boundary = [0] * complex_.n_simplices(n - 1)
    for r, c, s in zip(rows, cols, signs):
        boundary[c] += s * eps[r]
    if any(b != 0 for b in boundary):
        raise Error("NOT_CLOSED", "no sign choice makes the top sum a cycle")

    if complex_.top_orientation is not None:
        stored = complex_.top_orientation
        if stored != eps and stored != [-e for e in eps]:
            raise Error("BAD_ORIENTATION",
                        "stored orientation is not a fundamental cycle")
        eps = stored
    return Chain(n, np.array(eps, dtype=object))


# -- stars -------------------------------------------------------------


@dataclass(frozen=True)
class Subcomplex:
    """A subcomplex keyed by global simplex tuples, with index maps."""

    parent: SimplicialComplex
    simplices: dict  # degree -> sorted list of global tuples
    indices: dict    # degree -> np.ndarray of global canonical indices

    def dim(self):
        return max(self.simplices) if self.simplices else -1

    def n_simplices(self, k):
        return len(self.simplices.get(k, []))

    def restrict(self, values, k):
        """Restrict a global degree-k value array to this subcomplex."""
        if self.n_simplices(k) == 0:
            return np.zeros(0) if getattr(values, "dtype", None) != object \
                else np.array([], dtype=object)
        return values[self.indices[k]]

    def coboundary_dense(self, k):
        """Local d_k (rows: local (k+1)-simplices, cols: local k-simplices).

        Valid because the subcomplex is closed under faces: every face of a
        local (k+1)-simplex is itself local, so slicing the global matrix
        gives the subcomplex coboundary.
        """
        if self.n_simplices(k + 1) == 0 or self.n_simplices(k) == 0:
            return np.zeros((self.n_simplices(k + 1), self.n_simplices(k)))
        d = self.parent.coboundary_matrix(k)
        return d[self.indices[k + 1], :][:, self.indices[k]].toarray() \
            .astype(float)

    def to_complex(self):
        """Relabeled SimplicialComplex plus local-vertex -> global-vertex map."""
        verts = [s[0] for s in self.simplices[0]]
        relabel = {v: i for i, v in enumerate(verts)}
        top = []
        covered = set()
        for k in sorted(self.simplices, reverse=True):
            for s in self.simplices[k]:
                if s not in covered:
                    top.append(tuple(relabel[v] for v in s))
                for f in itertools.chain.from_iterable(
                        itertools.combinations(s, r)
                        for r in range(1, len(s) + 1)):
                    covered.add(f)
        return SimplicialComplex(top), verts


def _closure(parent, core):
    by_degree = {}
    seen = set()
    for s in core:
        for r in range(1, len(s) + 1):
            for f in itertools.combinations(s, r):
                seen.add(f)
    for f in seen:
        by_degree.setdefault(len(f) - 1, []).append(f)
    simplices = {k: sorted(v) for k, v in by_degree.items()}
    indices = {k: np.array([parent._index[k][s] for s in simplices[k]],
                           dtype=int)
               for k in simplices}
    return Subcomplex(parent, simplices, indices)


def star_subcomplex(complex_, v):
    """Closed star of a vertex, with local-to-global index maps."""
    if not 0 <= v < complex_.n_vertices:
        raise Error("UNKNOWN_VERTEX", f"vertex {v}")
    return star_of_simplex(complex_, (v,))


def star_of_simplex(complex_, simplex):
    """Closed star of a simplex: all cofaces of it, plus their faces."""
    s = tuple(simplex)
    complex_.index(s)  # validates membership
    sset = set(s)
    core = [t for k in range(len(s) - 1, complex_.dim + 1)
            for t in complex_.simplices[k] if sset.issubset(t)]
    return _closure(complex_, core)


# -- interchange format ------------------------------------------------


def load_complex(text):
    """Parse the JSON interchange document into a SimplicialComplex."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise Error("PARSE_ERROR", str(e))
    if not isinstance(doc, dict) or "top_simplices" not in doc:
        raise Error("PARSE_ERROR", "missing top_simplices field")
    return SimplicialComplex(doc["top_simplices"],
                             top_orientation=doc.get("orientation"),
                             dim=doc.get("dim"))


def dump_complex(complex_):
    doc = {
        "dim": complex_.dim,
        "top_simplices": [list(s) for s in complex_.simplices[complex_.dim]],
    }
    if complex_.top_orientation is not None:
        doc["orientation"] = complex_.top_orientation
    return json.dumps(doc, sort_keys=True, indent=2)


def load_cochain(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise Error("PARSE_ERROR", str(e))
    for f in ("degree", "ring", "values"):
        if f not in doc:
            raise Error("PARSE_ERROR", f"missing cochain field {f}")
    return Cochain.make(int(doc["degree"]), doc["ring"], doc["values"])


def dump_cochain(cochain):
    vals = [int(v) for v in cochain.values] if cochain.ring == INT \
        else [float(v) for v in cochain.values]
    return json.dumps({"degree": cochain.degree, "ring": cochain.ring,
                       "values": vals}, sort_keys=True, indent=2)
