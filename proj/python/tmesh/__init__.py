"""Exact spline-space dimension analysis over T-meshes.

Meshes and components may be passed as dicts or JSON text; reports come back
as dicts. Rationals are ints or "p/q" strings.
"""

import json
from fractions import Fraction

from . import _tmesh
from ._tmesh import InvalidGeometry, NotDiagonalizable, ParseError, PreconditionError, TMeshError

__all__ = [
    "TMeshError", "ParseError", "InvalidGeometry", "PreconditionError", "NotDiagonalizable",
    "validate", "analyze", "dimension", "partition", "isomorphic", "similar", "witness",
    "sample", "random_mesh", "render_svg", "rank", "det",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def _matrix(rows):
    return [[str(Fraction(x)) for x in row] for row in rows]


def validate(mesh):
    return json.loads(_tmesh.validate(_text(mesh)))


def analyze(mesh, degree, dump_matrix=False):
    return json.loads(_tmesh.analyze(_text(mesh), degree, dump_matrix))


def dimension(mesh, degree):
    return json.loads(_tmesh.dimension(_text(mesh), degree))


def partition(component, degree):
    return json.loads(_tmesh.partition(_text(component), degree))


def isomorphic(a, b):
    return json.loads(_tmesh.isomorphic(_text(a), _text(b)))


def similar(a, b, budget=1_000_000):
    return json.loads(_tmesh.similar(_text(a), _text(b), budget))


def witness(component, degree, seed, budget=1000, target=None):
    """target is (edge index, coordinate) or None."""
    edge, coord = (None, None) if target is None else (target[0], str(Fraction(target[1])))
    return json.loads(_tmesh.witness(_text(component), degree, seed, budget, edge, coord))


def sample(component, degree, n, seed):
    return {int(k): v for k, v in json.loads(_tmesh.sample(_text(component), degree, n, seed)).items()}


def random_mesh(seed, steps=5, degree=0, lattice=12):
    return json.loads(_tmesh.random_mesh(seed, steps, degree, lattice))


def render_svg(mesh):
    return _tmesh.render_svg(_text(mesh))


def rank(rows):
    return _tmesh.rank(_matrix(rows))


def det(rows):
    return Fraction(_tmesh.det(_matrix(rows)))
