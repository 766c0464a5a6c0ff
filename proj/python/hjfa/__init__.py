"""Certified rational points from combinatorial lines, and rank growth over
quadratic towers.

Thin Python layer over the C++ core. Rationals are exchanged as strings
("3/4"), integers as Python ints.
"""

import json
from fractions import Fraction

from . import _core
from ._core import Error, ResourceLimitError

__all__ = [
    "Error",
    "ResourceLimitError",
    "legendre",
    "sqrt_mod_p",
    "hensel_sqrt",
    "square_class",
    "square_class_group",
    "hj_number",
    "line_free_coloring",
    "find_monochromatic_line",
    "template_count",
    "find_points",
    "verify_certificate",
    "threshold_constant",
    "count_points",
    "count_points_ext",
    "nonresidue_x",
    "squarefree_part",
    "independent_family",
    "verify_family",
]


def _q(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _roots(roots):
    return [str(int(a)) for a in roots]


def legendre(a, p):
    return _core.legendre(str(int(a)), p)


def sqrt_mod_p(a, p):
    return _core.sqrt_mod_p(str(int(a)), p)


def hensel_sqrt(r, p, k):
    return int(_core.hensel_sqrt(_q(r), p, k))


def square_class(field, x):
    """Bit vector of the class of x in K^x/(K^x)^2, field as "fp:7" or "qp:5:16"."""
    return tuple(_core.square_class(field, _q(x)))


def square_class_group(field):
    return [Fraction(r) for r in _core.square_class_group(field)]


hj_number = _core.hj_number
line_free_coloring = _core.line_free_coloring
find_monochromatic_line = _core.find_monochromatic_line
template_count = _core.template_count
threshold_constant = _core.threshold_constant


def find_points(field, roots, count=10, n_max=6, max_c=1000):
    """Certificates (as dicts) for points on y^2 = prod (x - a) with distinct x."""
    text = _core.points_json(field, ",".join(_q(a) for a in roots), count, n_max, max_c)
    return json.loads(text)


def verify_certificate(cert):
    """(ok, reason) for a certificate dict produced by find_points."""
    return _core.verify_certificate_json(json.dumps(cert))


def count_points(roots, p):
    return _core.count_points(_roots(roots), p)


def count_points_ext(roots, p):
    return _core.count_points_ext(_roots(roots), p)


def nonresidue_x(roots, p):
    return _core.nonresidue_x(_roots(roots), p)


def squarefree_part(r):
    return int(_core.squarefree_part(_q(r)))


def independent_family(roots, count):
    return json.loads(_core.family_json(_roots(roots), count))


def verify_family(doc):
    return _core.verify_family_json(json.dumps(doc))
