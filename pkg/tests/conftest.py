import numpy as np
import pytest

from worstload import (INNER, MATRIX, OUTER, Mesh, generate_disk_mesh,
                       generate_polygon_mesh, generate_square_hole_mesh, material_field)


def boundary_of(tris, quads=()):
    """Edges used by exactly one element, oriented as in that element."""
    count = {}
    for el in list(tris) + list(quads):
        m = len(el)
        for k in range(m):
            a, b = int(el[k]), int(el[(k + 1) % m])
            key = (min(a, b), max(a, b))
            count.setdefault(key, []).append((a, b))
    return [v[0] for v in count.values() if len(v) == 1]


def make_mesh(nodes, tris=(), quads=(), omega=None, regions=None, inner=()):
    """Small hand-built mesh; free edges are OUTER unless listed in ``inner``."""
    tris = np.asarray(tris, int).reshape(-1, 3)
    quads = np.asarray(quads, int).reshape(-1, 4)
    n_el = len(tris) + len(quads)
    edges = boundary_of(tris, quads)
    inner = {tuple(sorted(e)) for e in inner}
    tags = [INNER if tuple(sorted(e)) in inner else OUTER for e in edges]
    return Mesh(nodes=nodes, tris=tris, quads=quads,
                element_region=regions if regions is not None else np.full(n_el, MATRIX),
                element_in_omega=omega if omega is not None else np.ones(n_el, bool),
                boundary_edges=edges, boundary_tags=tags)


def structured_quads(nx, ny, x0=0.0, y0=0.0, x1=1.0, y1=1.0, split=False):
    """Tensor grid of Q1 quads; ``split`` turns the left half into triangles."""
    xs, ys = np.linspace(x0, x1, nx + 1), np.linspace(y0, y1, ny + 1)
    X, Y = np.meshgrid(xs, ys, indexing="xy")
    nodes = np.column_stack([X.ravel(), Y.ravel()])
    idx = lambda i, j: j * (nx + 1) + i  # noqa: E731
    tris, quads = [], []
    for j in range(ny):
        for i in range(nx):
            q = [idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)]
            if split and i < nx // 2:
                tris += [[q[0], q[1], q[2]], [q[0], q[2], q[3]]]
            else:
                quads.append(q)
    return make_mesh(nodes, tris, quads)


@pytest.fixture(scope="session")
def square_mesh():
    return generate_polygon_mesh([(0, 0), (1, 0), (1, 1), (0, 1)], 0.1)


@pytest.fixture(scope="session")
def disk_mesh():
    return generate_disk_mesh(1.0, 0.5, 0.1)


@pytest.fixture(scope="session")
def holed_mesh():
    """Square with a clamped hole, an omega annulus and two stiff inclusions."""
    return generate_square_hole_mesh(2.0, 0.3, 0.7, [((0.75, 0.75), 0.15),
                                                     ((-0.75, 0.7), 0.12)], 0.1)


@pytest.fixture(scope="session")
def holed_material(holed_mesh):
    return material_field(holed_mesh)


def annulus_mesh(h, r_in=0.3, r_out=1.0):
    n = int(np.ceil(2 * np.pi * r_out / h))
    t = 2 * np.pi * np.arange(n) / n
    outline = np.column_stack([r_out * np.cos(t), r_out * np.sin(t)])
    return generate_polygon_mesh(outline, h, holes=[((0.0, 0.0), r_in)])


def polar_annulus_mesh(h, r_in=0.3, r_out=1.0):
    """Structured polar grid of the annulus; both circles are clamped/OUTER."""
    nt = int(np.ceil(2 * np.pi * r_out / h))
    nr = int(np.ceil((r_out - r_in) / h))
    r = np.linspace(r_in, r_out, nr + 1)
    t = 2 * np.pi * np.arange(nt) / nt
    R, T = np.meshgrid(r, t, indexing="ij")
    nodes = np.column_stack([(R * np.cos(T)).ravel(), (R * np.sin(T)).ravel()])
    i, j = np.meshgrid(np.arange(nr), np.arange(nt), indexing="ij")
    i, j = i.ravel(), j.ravel()
    a, b = i * nt + j, i * nt + (j + 1) % nt
    c, d = b + nt, a + nt
    tris = np.concatenate([np.column_stack([a, b, c]), np.column_stack([a, c, d])])
    inner = [(k, (k + 1) % nt) for k in range(nt)]
    return make_mesh(nodes, tris, inner=inner)


def annulus_log(nodes, r_in=0.3, r_out=1.0):
    r = np.hypot(nodes[:, 0], nodes[:, 1])
    return np.log(r / r_in) / np.log(r_out / r_in)


# acceptance summary ------------------------------------------------------------

_ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance_line(request):
    """Record the one-line verdict of an acceptance criterion."""
    def record(number, title, passed, detail):
        verdict = "PASS" if passed else "FAIL"
        _ACCEPTANCE_LINES[number] = f"[{verdict}] criterion {number}: {title}: {detail}"
        print(_ACCEPTANCE_LINES[number])
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(_ACCEPTANCE_LINES[k])
