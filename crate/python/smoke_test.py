"""Smoke test for the superwl_py extension.

Imports an installed ``superwl_py`` if present, otherwise loads the library
built by ``cargo build -p superwl-py --release --features extension-module``.
"""

import importlib.machinery
import importlib.util
import json
import math
import pathlib
import sys


def load():
    try:
        import superwl_py

        return superwl_py
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parents[1]
    for profile in ("release", "debug"):
        path = root / "target" / profile / "libsuperwl_py.so"
        if path.exists():
            loader = importlib.machinery.ExtensionFileLoader("superwl_py", str(path))
            spec = importlib.util.spec_from_loader("superwl_py", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("superwl_py not found; build it first")


def main():
    sw = load()

    assert abs(sw.ln_gamma(0.5) - 0.5 * math.log(math.pi)) < 1e-13
    assert abs(sw.bessel_k(0.5, 2.0) - math.sqrt(math.pi / 4.0) * math.exp(-2.0)) < 1e-14

    rho = sw.Density("gen", 0.4, gamma=2.0)
    assert abs(rho.moment(0) - 1.0) < 1e-8 and abs(rho.moment(1) - 1.0) < 1e-8
    assert sw.Density("mp", 0.4).pdf(10.0) == 0.0

    p = sw.Spacing("gen", 1, gamma=7.0)
    assert abs(p.moment(0) - 1.0) < 1e-7 and abs(p.moment(1) - 1.0) < 1e-7
    assert abs(sw.Spacing("wd", 1).pdf(1.0) - math.pi / 2 * math.exp(-math.pi / 4)) < 1e-14

    spectra = sw.sample_spectra(1, 4, 8, "invchi2", 50, 7, gamma=2.0)
    assert len(spectra) == 50 and all(len(s) == 4 for s in spectra)
    assert spectra == sw.sample_spectra(1, 4, 8, "invchi2", 50, 7, gamma=2.0)

    report = json.loads(sw.density_experiment(1, 10, 20, "wl", 500, 1))
    assert 0.0 <= report["ks"] <= 0.05, report["ks"]

    pooled = [x for s in sw.sample_spectra(1, 50, 200, "invchi2", 100, 3, gamma=2.0) for x in s]
    gamma_hat, objective = sw.fit_gamma(pooled, 0.25, "invchi2")
    assert 1.0 < gamma_hat < 4.0 and objective >= 0.0

    try:
        sw.Density("gen", 1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("missing gamma accepted")

    failed = [name for name, ok, _ in sw.selfcheck() if not ok]
    assert not failed, failed
    print("superwl_py smoke test passed")


if __name__ == "__main__":
    main()
