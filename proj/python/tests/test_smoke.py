from fractions import Fraction

import pytest

import hjfa


def test_field_core():
    assert hjfa.legendre(3, 7) == -1
    assert hjfa.sqrt_mod_p(2, 7) == 3
    assert hjfa.hensel_sqrt(6, 5, 3) == 16
    assert hjfa.square_class("qp:5:16", 50) == (0, 1)
    assert hjfa.square_class("fp:7", Fraction(1, 2)) == (0,)
    assert hjfa.square_class_group("fp:7") == [1, 3]
    with pytest.raises(hjfa.Error, match="no-square-root"):
        hjfa.sqrt_mod_p(5, 7)


def test_hales_jewett():
    assert hjfa.hj_number(2, 2, 4) == 2
    assert hjfa.hj_number(3, 2, 2) is None
    assert hjfa.line_free_coloring(2, 2, 1) == [0, 1]
    assert hjfa.line_free_coloring(2, 2, 2) is None
    assert hjfa.find_monochromatic_line(2, 2, [0, 1, 1, 0]) == ("**", 0)
    assert hjfa.template_count(3, 2) == 7


def test_points_round_trip():
    certs = hjfa.find_points("fp:97", [0, 1, 2, 3], count=5)
    assert len(certs) == 5
    assert len({c["x"] for c in certs}) == 5
    for cert in certs:
        assert hjfa.verify_certificate(cert) == (True, "")
        x, y = Fraction(cert["x"]), Fraction(cert["y"])
        assert (y * y - x * (x - 1) * (x - 2) * (x - 3)) % 97 == 0

    bad = dict(certs[0], y=str((int(Fraction(certs[0]["y"])) + 1) % 97))
    ok, reason = hjfa.verify_certificate(bad)
    assert not ok and reason.startswith("(v)")


def test_padic_points():
    certs = hjfa.find_points("qp:5:16", [0, 1, 2, 3], count=3)
    assert [c["y_precision"] for c in certs] == [16, 16, 16]
    assert all(hjfa.verify_certificate(c)[0] for c in certs)


def test_rank():
    roots = [-1, 0, 1]
    assert hjfa.threshold_constant(1) == 13
    assert hjfa.count_points(roots, 5) == 8
    assert hjfa.count_points_ext(roots, 5) == 32
    assert hjfa.nonresidue_x(roots, 17) == 2
    assert hjfa.squarefree_part(Fraction(-12, 25)) == -3

    family = hjfa.independent_family(roots, 3)
    assert family["complete"] is True
    ds = [p["d"] for p in family["points"]]
    assert ds[0] == 6 and len(set(ds)) == 3
    assert hjfa.verify_family(family)
    family["points"][1]["d"] = 6
    assert not hjfa.verify_family(family)
