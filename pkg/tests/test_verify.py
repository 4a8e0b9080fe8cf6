import json
import math

import pytest

from gst import verify
from gst.errors import DomainError


def test_suites_are_namespaced_and_nonempty():
    assert set(verify.SUITES) == {"kernel", "catalog", "roundtrip", "forms", "laplace", "abel", "radial"}
    for name in verify.SUITES:
        assert verify.build_suite(name), name
    total = sum(len(verify.build_suite(n)) for n in verify.SUITES)
    assert len(verify.build_suite("all")) == total


def test_unknown_suite():
    with pytest.raises(DomainError):
        verify.build_suite("everything")


def test_rho_override_restricts_grids():
    assert verify.build_suite("radial", rho=2.0) == []
    for fn, kw in verify.build_suite("kernel", rho=1.0):
        assert kw.get("rho", 1.0) == 1.0


def test_record_json():
    rec = verify._compare("demo", {"x": 1.0}, 1.0 + 1e-9, 1.0, rel_tol=1e-6)
    data = json.loads(json.dumps(rec.as_json()))
    assert data["pass"] is True
    assert data["rel_err"] == pytest.approx(1e-9, rel=1e-5)
    assert "error" not in data
    bad = verify._compare("demo", {}, 2.0, 1.0, rel_tol=1e-6)
    assert not bad.passed


def test_errors_become_failed_records():
    (rec,) = verify.run_tasks([(verify.chk_rho1, dict(nu=0.5, y=-1.0))])
    assert not rec.passed and rec.error.startswith("DomainError")
    assert rec.lhs is None


def test_parallel_matches_serial():
    tasks = verify.build_suite("catalog")[:6]
    serial = [r.as_json() for r in verify.run_tasks(tasks)]
    parallel = [r.as_json() for r in verify.run_tasks(tasks, jobs=2)]
    assert serial == parallel


@pytest.mark.parametrize("name", sorted(verify.SUITES))
def test_suite_passes(name):
    records = verify.run_tasks(verify.build_suite(name))
    failed = [r.as_json() for r in records if not r.passed]
    assert not failed, failed[:3]
    assert all(math.isfinite(r.abs_err) for r in records)
