#!/usr/bin/env python3
"""Regenerate the bundled geometry meshes in src/worstload/presets/.

Inclusion positions are illustrative only: the layouts they stand in for
were published as pictures without coordinates.

    python tools/make_presets.py [--only geo1 geo3]
"""
import argparse
from pathlib import Path

from worstload.mesh import generate_polygon_mesh, validate, write_mesh

PRESET_DIR = Path(__file__).resolve().parents[1] / "src" / "worstload" / "presets"


def _cross_outline(core=3.0, arm=7.0):
    e = core + arm
    return [(-core, -e), (core, -e), (core, -core), (e, -core), (e, core), (core, core),
            (core, e), (-core, e), (-core, core), (-e, core), (-e, -core), (-core, -core)]


GEOMETRIES = {
    "geo1": dict(
        description="square side 2, clamped hole r=0.3, omega annulus to r=0.7",
        outline=[(-1, -1), (1, -1), (1, 1), (-1, 1)],
        holes=[((0.0, 0.0), 0.3)],
        omega=((0.0, 0.0), 0.3, 0.7),
        inclusions=[((0.5 * sx / 2 ** 0.5, 0.5 * sy / 2 ** 0.5), 0.1)
                    for sx in (-1, 1) for sy in (-1, 1)]
        + [((0.75 * sx, 0.75 * sy), 0.15) for sx in (-1, 1) for sy in (-1, 1)],
        target_h=0.05,
    ),
    "geo2": dict(
        description="rectangle 2 x 6, clamped hole r=0.5 near the top, omega to r=0.85",
        outline=[(-1, -3), (1, -3), (1, 3), (-1, 3)],
        holes=[((0.0, 2.0), 0.5)],
        omega=((0.0, 2.0), 0.5, 0.85),
        inclusions=[((0.0, -2.0), 0.3), ((0.0, -0.5), 0.3),
                    ((-0.5, 0.6), 0.2), ((0.5, 0.6), 0.2)],
        target_h=0.05,
    ),
    "geo3": dict(
        description="cross: core 6 x 6, arms 7 long and 6 wide, clamped holes r=1.5 "
                    "in every arm, omega to r=2.5 around the top hole",
        outline=_cross_outline(),
        holes=[((0.0, 6.5), 1.5), ((6.5, 0.0), 1.5), ((0.0, -6.5), 1.5), ((-6.5, 0.0), 1.5)],
        omega=((0.0, 6.5), 1.5, 2.5),
        inclusions=[((1.5 * sx, 1.5 * sy), 0.6) for sx in (-1, 1) for sy in (-1, 1)]
        + [((6.5, 2.2), 0.5), ((6.5, -2.2), 0.5), ((-6.5, 2.2), 0.5), ((-6.5, -2.2), 0.5),
           ((2.2, -6.5), 0.5), ((-2.2, -6.5), 0.5)],
        target_h=0.2,
    ),
    "geo4": dict(
        description="L bracket: outer edges 6, inner edges 4, legs 2 wide, clamped hole "
                    "r=0.35 in the top leg, omega to r=0.85",
        outline=[(0, 0), (6, 0), (6, 2), (2, 2), (2, 6), (0, 6)],
        holes=[((1.0, 5.0), 0.35)],
        omega=((1.0, 5.0), 0.35, 0.85),
        inclusions=[((1.0, 1.0), 0.4), ((3.0, 1.0), 0.4), ((5.0, 1.0), 0.4), ((1.0, 3.0), 0.4)],
        target_h=0.08,
    ),
}


def build(name):
    g = GEOMETRIES[name]
    mesh = generate_polygon_mesh(g["outline"], g["target_h"], holes=g["holes"],
                                 omega=g["omega"], inclusions=g["inclusions"])
    diags = validate(mesh)
    if diags:
        raise SystemExit(f"{name}: {diags[0]}")
    incl = "; ".join(f"({c[0]:.4g}, {c[1]:.4g}) r={r:g}" for c, r in g["inclusions"])
    comment = (f"{name}: {g['description']}\n"
               f"APPROXIMATE inclusion layout (illustrative, not traced coordinates): {incl}\n"
               f"target_h={g['target_h']}; generated by tools/make_presets.py")
    path = PRESET_DIR / f"{name}.mesh"
    write_mesh(mesh, path, comment=comment)
    print(f"{path}: {mesh.n_nodes} nodes, {mesh.n_elements} elements, "
          f"{len(mesh.outer_nodes)} OUTER nodes, a={mesh.parametrization.a:.6g}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--only", nargs="*", choices=sorted(GEOMETRIES))
    args = p.parse_args()
    for name in args.only or sorted(GEOMETRIES):
        build(name)


if __name__ == "__main__":
    main()
