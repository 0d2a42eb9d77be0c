"""Pure-Python transport kernels; the reference twin of ``_kernels.pyx``.

Tables are flat integer arrays indexed by ``carrier * alphabet + (letter - 1)``.
Paths hold letters ``1..alphabet``.  Status codes of :func:`evolve_steps`:
0 finished, 1 no carrier, 2 non-unique evolution, 3 returned to the start.
"""

STATUS_OK = 0
STATUS_NO_CARRIER = 1
STATUS_NON_UNIQUE = 2
STATUS_RETURNED = 3

BACKEND = "python"


def fixed_carriers(next_carrier, alphabet, n_carriers, path):
    found = []
    for v0 in range(n_carriers):
        v = v0
        for x in path:
            v = next_carrier[v * alphabet + x - 1]
        if v == v0:
            found.append(v0)
    return found


def run_transport(out_letter, next_carrier, energy, alphabet, path, v, out_path, out_energy):
    """Carry ``v`` through ``path``; fill ``out_path``/``out_energy``; return the final carrier."""
    for k in range(len(path)):
        idx = v * alphabet + path[k] - 1
        out_path[k] = out_letter[idx]
        out_energy[k] = energy[idx]
        v = next_carrier[idx]
    return v


def evolve_steps(out_letter, next_carrier, energy, alphabet, n_carriers,
                 path, steps, visits, stop_on_return):
    """Apply the evolution up to ``steps`` times to ``path`` in place.

    ``visits[v]`` counts how often carrier ``v`` was the (first) fixed point.
    Returns ``(status, steps_done, info1, info2)``; for non-uniqueness the
    info fields are the two disagreeing carriers.
    """
    size = len(path)
    start = list(path)
    buf_a = [0] * size
    en_a = [0] * size
    buf_b = [0] * size
    en_b = [0] * size
    for step in range(steps):
        fixed = fixed_carriers(next_carrier, alphabet, n_carriers, path)
        if not fixed:
            return STATUS_NO_CARRIER, step, -1, -1
        first = fixed[0]
        run_transport(out_letter, next_carrier, energy, alphabet, path, first, buf_a, en_a)
        for other in fixed[1:]:
            run_transport(out_letter, next_carrier, energy, alphabet, path, other, buf_b, en_b)
            if buf_a != buf_b or en_a != en_b:
                return STATUS_NON_UNIQUE, step, first, other
        visits[first] += 1
        for k in range(size):
            path[k] = buf_a[k]
        if stop_on_return and list(path) == start:
            return STATUS_RETURNED, step + 1, -1, -1
    return STATUS_OK, steps, -1, -1
