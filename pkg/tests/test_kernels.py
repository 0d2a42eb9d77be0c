from array import array

import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodic_sca import kernels
from periodic_sca.kernels import TransportTables, load_backend
from periodic_sca.tableau import r_matrix

try:
    COMPILED = load_backend("cython")
except ImportError:
    COMPILED = None
PURE = load_backend("python")

needs_compiled = pytest.mark.skipif(COMPILED is None, reason="compiled extension not built")


def tables(impl, r, l, n):
    return TransportTables(r_matrix(r, l, n), impl)


case = st.tuples(st.integers(1, 2), st.integers(1, 3), st.integers(1, 3)).filter(lambda t: t[0] <= t[2]) \
    .flatmap(lambda t: st.tuples(st.just(t), st.lists(st.integers(1, t[2] + 1), min_size=1, max_size=12)))


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


@needs_compiled
@given(case)
def test_fixed_carriers_agree(args):
    (r, l, n), word = args
    path = array("i", word)
    assert tables(COMPILED, r, l, n).fixed_carriers(path) == tables(PURE, r, l, n).fixed_carriers(path)


@needs_compiled
@given(case, st.integers(0, 40))
def test_transport_agrees(args, v):
    (r, l, n), word = args
    a, b = tables(COMPILED, r, l, n), tables(PURE, r, l, n)
    v %= a.n_carriers
    out_a, out_b = a.transport(array("i", word), v), b.transport(array("i", word), v)
    assert (list(out_a[0]), out_a[1], list(out_a[2])) == (list(out_b[0]), out_b[1], list(out_b[2]))


@needs_compiled
@given(case, st.integers(0, 30), st.booleans())
def test_evolution_loop_agrees(args, steps, stop):
    (r, l, n), word = args
    pa, pb = array("i", word), array("i", word)
    sa, va = tables(COMPILED, r, l, n).evolve_steps(pa, steps, stop)
    sb, vb = tables(PURE, r, l, n).evolve_steps(pb, steps, stop)
    assert tuple(sa) == tuple(sb) and list(va) == list(vb) and list(pa) == list(pb)


def test_environment_forces_the_pure_backend():
    import os
    import subprocess
    import sys
    env = dict(os.environ, PERIODIC_SCA_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import periodic_sca; print(periodic_sca.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
