# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled transport kernels; behaviour mirrors ``_kernels_py`` exactly."""

STATUS_OK = 0
STATUS_NO_CARRIER = 1
STATUS_NON_UNIQUE = 2
STATUS_RETURNED = 3

BACKEND = "cython"


cdef int _final_carrier(const int[:] next_carrier, int alphabet, int v, int[:] path) noexcept nogil:
    cdef Py_ssize_t k
    for k in range(path.shape[0]):
        v = next_carrier[v * alphabet + path[k] - 1]
    return v


cdef int _transport(const int[:] out_letter, const int[:] next_carrier, const int[:] energy,
                    int alphabet, int[:] path, int v, int[:] out_path, int[:] out_energy) noexcept nogil:
    cdef Py_ssize_t k
    cdef int idx
    for k in range(path.shape[0]):
        idx = v * alphabet + path[k] - 1
        out_path[k] = out_letter[idx]
        out_energy[k] = energy[idx]
        v = next_carrier[idx]
    return v


def fixed_carriers(const int[:] next_carrier, int alphabet, int n_carriers, int[:] path):
    cdef int v0
    found = []
    for v0 in range(n_carriers):
        if _final_carrier(next_carrier, alphabet, v0, path) == v0:
            found.append(v0)
    return found


def run_transport(const int[:] out_letter, const int[:] next_carrier, const int[:] energy,
                  int alphabet, int[:] path, int v, int[:] out_path, int[:] out_energy):
    return _transport(out_letter, next_carrier, energy, alphabet, path, v, out_path, out_energy)


def evolve_steps(const int[:] out_letter, const int[:] next_carrier, const int[:] energy,
                 int alphabet, int n_carriers, int[:] path, long steps, long[:] visits,
                 bint stop_on_return):
    cdef Py_ssize_t size = path.shape[0]
    cdef Py_ssize_t k
    cdef long step
    cdef int v, first, other, same
    cdef int[:] start = path.copy()
    cdef int[:] buf_a = path.copy()
    cdef int[:] en_a = path.copy()
    cdef int[:] buf_b = path.copy()
    cdef int[:] en_b = path.copy()
    for step in range(steps):
        first = -1
        for v in range(n_carriers):
            if _final_carrier(next_carrier, alphabet, v, path) != v:
                continue
            if first < 0:
                first = v
                _transport(out_letter, next_carrier, energy, alphabet, path, v, buf_a, en_a)
            else:
                _transport(out_letter, next_carrier, energy, alphabet, path, v, buf_b, en_b)
                for k in range(size):
                    if buf_a[k] != buf_b[k] or en_a[k] != en_b[k]:
                        return STATUS_NON_UNIQUE, step, first, v
        if first < 0:
            return STATUS_NO_CARRIER, step, -1, -1
        visits[first] += 1
        same = 1
        for k in range(size):
            path[k] = buf_a[k]
            if path[k] != start[k]:
                same = 0
        if stop_on_return and same:
            return STATUS_RETURNED, step + 1, -1, -1
    return STATUS_OK, steps, -1, -1
