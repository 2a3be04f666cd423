#!/usr/bin/env python3
"""Smoke test for the paradot_py extension module.

Run after either `pip install crates/py` (maturin) or a plain
`cargo build -p paradot-py`; in the latter case the compiled cdylib is
located under target/ and loaded directly.
"""

import math
import shutil
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def _import_module():
    try:
        import paradot_py  # noqa: F401  (installed wheel)

        return paradot_py
    except ImportError:
        pass
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    candidates = [
        REPO / "target" / profile / ("libparadot_py" + ext)
        for profile in ("debug", "release")
        for ext in (".so", ".dylib")
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit("paradot_py not installed and no built cdylib found; "
                 "run `cargo build -p paradot-py` first")
    stage = Path(tempfile.mkdtemp(prefix="paradot_py_"))
    shutil.copy2(built, stage / ("paradot_py" + suffix))
    sys.path.insert(0, str(stage))
    import paradot_py

    return paradot_py


def main():
    pp = _import_module()

    # transformation-map algebra
    t = pp.Translation([0.5, 0.0], -0.25)
    x, y = [1.0, 2.0], [0.3, -0.7]
    assert abs(t.identity_residual(x, y)) < 1e-9
    closed, numeric = t.jacobian(x), t.jacobian_numeric(x, 1e-5)
    assert abs(closed - numeric) <= max(1e-5 * abs(closed), 1e-9)
    image = t.transform(x)
    assert len(image) == 2 and all(math.isfinite(v) for v in image)

    report = pp.Translation([1.0, 0.0], 0.0).region_report(3)
    assert abs(report["canonical_distance"] - 2.0 / math.sqrt(5.0)) < 1e-12
    rot = pp.Translation([1.0, 0.0], 0.0).canonical_rotation(3)
    assert len(rot) == 3 and len(rot[0]) == 3

    samples = pp.degenerate_samples([1.0, 0.0], 0.0, 3, 5, seed=7)
    assert len(samples) == 5 and len(samples[0]) == 3

    # tube measurements
    ext = pp.sphere_tube_extent([3.0, 0.0], 1.0, "near", [1.0, 0.0], 1e-3, 2001)
    assert 0.0 < ext < 0.1
    cover = pp.sphere_tube_cover_count([3.0, 0.0], 1.0, "near", [1.0, 0.0], 1e-3, 2001)
    assert cover >= 1
    e1 = pp.tangent_cap_extent([3.0, 0.0], 1.0, 1e-4)
    e2 = pp.tangent_cap_extent([3.0, 0.0], 1.0, 4e-4)
    assert abs(e2 / e1 - 2.0) < 0.1  # square-root scaling

    # lattice covers and box dimension
    assert pp.lattice_cell_count(0.4, 10, 2, 1) == 121
    summary = pp.dot_cover_summary("euclidean", 0.4, 10, 2)
    assert summary["total_length"] <= summary["covering_bound_length"] + 1e-12
    assert summary["covering_bound_length"] <= summary["lattice_bound_length"] + 1e-9
    dim = pp.box_dimension(1.0 / 3.0, 2, [2, 131072])
    assert abs(dim - 2.0 / 3.0) < 0.1
    assert abs(pp.log_log_slope([1.0, 2.0, 4.0], [1.0, 4.0, 16.0]) - 2.0) < 1e-12

    # finite fields
    assert pp.ff_dot_product_set(3, 3) == [0, 1, 2]
    assert len(pp.ff_dot_product_set(7, 3)) == 7
    assert pp.ff_isotropic_vectors(7, 2) == []
    sub = pp.ff_subset_dot_product_set(11, 3, 5, seed=1)
    assert set(sub) <= set(range(11))

    # measures
    atoms = [([0.0, 0.0], 0.5), ([1.0, 0.0], 0.5)]
    assert abs(pp.fourier_magnitude(atoms, [0.5, 0.0])) < 1e-12
    assert pp.pushforward_residual(atoms, [1.0, 1.0], 0.0) == 0.0
    assert pp.pushforward_residual(atoms, [1.0, 1.0], 2.5) < 1e-10
    pushed = pp.pushforward_atoms(atoms, [1.0, 0.0])
    assert abs(sum(w for _, w in pushed) - 1.0) < 1e-12

    print("paradot_py smoke test: OK")


if __name__ == "__main__":
    main()
