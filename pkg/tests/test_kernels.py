import importlib
import os
import subprocess
import sys

import numpy as np
import pytest

from evdkit import TABLE3_PRESETS, DistributionSpec, sample
from evdkit import _core, _kernels_py
from tests import oracle

compiled = pytest.importorskip("evdkit._kernels")
BACKENDS = [_kernels_py, compiled]
SPECS = list(TABLE3_PRESETS.values()) + [
    DistributionSpec.of("GEV", 1.0, 2.0, -0.3),
    DistributionSpec.of("TEV", 0.0, 1.0, 0.8),
    DistributionSpec.of("GTIEV3", 0.0, 1.0, 2.5),
    DistributionSpec.of("GLIV", 0.0, 1.0, 2.0, 3.0),
    DistributionSpec.of("TCEV", 0.0, 1.0, 10.0, 5.0, 0.3),
]
XS = np.array([-3.0, -1.0, 0.0, 0.5, 2.0, 6.0, 15.0])


def _ids(specs):
    return [str(s) for s in specs]


@pytest.mark.parametrize("backend", BACKENDS, ids=["python", "cython"])
@pytest.mark.parametrize("spec", SPECS, ids=_ids(SPECS))
def test_cdf_against_oracle(backend, spec):
    got = backend.cdf(spec.family.code, np.asarray(spec.params), XS)
    want = np.array([float(oracle.cdf(spec.family.value, spec.params, x)) for x in XS])
    np.testing.assert_allclose(got, want, rtol=1e-10, atol=1e-14)


@pytest.mark.parametrize("backend", BACKENDS, ids=["python", "cython"])
@pytest.mark.parametrize("spec", SPECS, ids=_ids(SPECS))
def test_logpdf_against_oracle(backend, spec):
    got = backend.logpdf(spec.family.code, np.asarray(spec.params), XS)
    for x, g in zip(XS, got):
        ref = oracle.pdf(spec.family.value, spec.params, x)
        if ref <= 0:
            assert g == -np.inf
        else:
            assert g == pytest.approx(float(oracle.mp.log(ref)), rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("spec", SPECS, ids=_ids(SPECS))
def test_backends_agree(spec):
    x = sample(spec, 400, 3)
    code, par = spec.family.code, np.asarray(spec.params)
    assert compiled.loglik(code, par, x) == pytest.approx(_kernels_py.loglik(code, par, x), rel=1e-12)
    np.testing.assert_allclose(compiled.cdf(code, par, x), _kernels_py.cdf(code, par, x), rtol=1e-12, atol=1e-300)
    z = np.sort(np.clip(_kernels_py.cdf(code, par, x), 1e-12, 1 - 1e-12))
    np.testing.assert_allclose(compiled.ad_stats(z), _kernels_py.ad_stats(z), rtol=1e-9)


def test_loglik_is_sum_of_logpdf():
    spec = TABLE3_PRESETS["GLIV"]
    x = sample(spec, 100, 1)
    for k in BACKENDS:
        par = np.asarray(spec.params)
        assert k.loglik(spec.family.code, par, x) == pytest.approx(k.logpdf(spec.family.code, par, x).sum(), rel=1e-13)


def test_backend_selected_by_default():
    assert _core.BACKEND == "cython"


def test_pure_python_env_forces_fallback():
    env = dict(os.environ, EVDKIT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import evdkit; print(evdkit.BACKEND)"], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "python"


def test_reload_without_env_picks_compiled(monkeypatch):
    monkeypatch.delenv("EVDKIT_PURE_PYTHON", raising=False)
    mod = importlib.reload(_core)
    assert mod.BACKEND == "cython"
