from math import comb

import pytest

import dmodkit


def test_version():
    assert dmodkit.__version__ == "0.1.0"


def test_bf_dims_match_binomials():
    assert dmodkit.bf_dims(1, imax=10) == [comb(i + 2, 2) for i in range(11)]
    assert dmodkit.bf_dims(2, imax=6) == [comb(i + 4, 4) for i in range(7)]


def test_length_bound():
    # e_G^2 (C+1)^theta (C+2)^theta / e_F with e_G = 1, e_F = 1/2, C = 1, theta = 1
    assert dmodkit.length_bound("1", "1/2", 1, "1") == "12"


def test_bernstein_sato_of_square():
    res = dmodkit.bs_solve("x^2")
    assert res["found"]
    assert res["b"] == "s^2 + 3/2*s + 1/2"


def test_report_layout():
    status, report = dmodkit.run_job(
        {"subcommand": "charp", "operation": "split", "params": {"ring": "xy-hypersurface-p2", "emax": 3}}
    )
    assert status == 0
    assert list(report)[:2] == ["tool", "version"]
    assert report["result"]["verdict"] == "F-pure, not strongly F-regular (window)"


def test_usage_error_names_field():
    with pytest.raises(ValueError, match="ring.slope"):
        dmodkit.run_job({"subcommand": "bf", "operation": "dim", "ring": {"n": 1, "slope": "1"}, "params": {"imax": 3}})
