"""Backend equivalence: the compiled kernels and the pure-Python fallbacks
must produce identical results."""

import math

import numpy as np
import pytest

from rainbowdp import _fast_py, kernels


def _backends():
    mods = {"python": _fast_py}
    try:
        from rainbowdp import _fast

        mods["compiled"] = _fast
    except ImportError:
        pass
    return mods


BACKENDS = _backends()
needs_compiled = pytest.mark.skipif(
    "compiled" not in BACKENDS, reason="compiled extension not built"
)


def random_relax_instance(rng, n):
    indptr = [0]
    cols = []
    adjacency = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                adjacency[i].append(j)
                adjacency[j].append(i)
    for i in range(n):
        cols.extend(adjacency[i])
        indptr.append(len(cols))
    fixed = (rng.random(n) < 0.3).astype(np.uint8)
    if not fixed.any():
        fixed[0] = 1
    residual = rng.uniform(0.2, 1.0, size=n)
    values = residual.copy()
    pinned = rng.uniform(0.0, 0.3, size=n)
    values[fixed == 1] = np.minimum(pinned, residual)[fixed == 1]
    return (
        np.array(indptr, dtype=np.int64),
        np.array(cols, dtype=np.int64),
        fixed,
        values,
        residual,
    )


@needs_compiled
class TestBackendEquivalence:
    def test_relax_rank_identical(self):
        rng = np.random.default_rng(71)
        for _ in range(100):
            n = int(rng.integers(2, 16))
            indptr, cols, fixed, values, residual = random_relax_instance(rng, n)
            e_eps = math.exp(float(rng.uniform(0.05, 2.0)))
            results = {}
            for name, mod in BACKENDS.items():
                vals = values.copy()
                swept = mod.relax_rank(
                    indptr, cols, fixed, vals, residual.copy(), e_eps, 1e-12, n + 1
                )
                results[name] = (vals, swept)
            v_py, s_py = results["python"]
            v_c, s_c = results["compiled"]
            assert np.array_equal(v_py, v_c)
            assert s_py == s_c

    def test_dp_scan_identical(self):
        rng = np.random.default_rng(73)
        for _ in range(100):
            n = int(rng.integers(2, 12))
            k = int(rng.integers(2, 5))
            m = int(rng.integers(1, 20))
            probs = rng.dirichlet(np.ones(k), size=n)
            eu = rng.integers(0, n, size=m).astype(np.int64)
            ev = rng.integers(0, n, size=m).astype(np.int64)
            e_eps = math.exp(float(rng.uniform(0.0, 1.0)))
            out_py = BACKENDS["python"].dp_scan(eu, ev, probs, e_eps, 1e-9)
            out_c = BACKENDS["compiled"].dp_scan(eu, ev, probs, e_eps, 1e-9)
            assert np.array_equal(out_py, out_c)


class TestDispatcher:
    def test_switching(self):
        original = kernels.active_backend()
        try:
            for name in kernels.available():
                kernels.use(name)
                assert kernels.active_backend() == name
        finally:
            kernels.use(original)

    def test_unknown_backend(self):
        with pytest.raises(ValueError):
            kernels.use("fortran")

    def test_solver_identical_across_backends(self):
        from rainbowdp import Epsilon, solve_lexicographic

        from conftest import feasible_spec, max_abs_dev, random_graph

        rng = np.random.default_rng(79)
        g = random_graph(rng, max_vertices=10)
        eps = Epsilon(0.6)
        spec = feasible_spec(g, eps, rng)
        original = kernels.active_backend()
        results = {}
        try:
            for name in kernels.available():
                kernels.use(name)
                results[name] = solve_lexicographic(g, spec, eps)
        finally:
            kernels.use(original)
        names = list(results)
        for other in names[1:]:
            assert max_abs_dev(results[names[0]], results[other], g.vertices) == 0.0
