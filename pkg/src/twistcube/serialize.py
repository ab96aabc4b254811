"""JSON documents for fields, algebras, cubes, group words and algebras on E^2.

Scalars over Q are strings ``"n"`` or ``"n/d"``; over F_p they are integers
in [0, p).  Every ``*_to_json`` has a ``*_from_json`` inverse with
``from_json(to_json(x)) == x``.
"""

from __future__ import annotations

import json

from .composition import CompAlg2, TitsPair
from .cube import AlgAut, Cube, GroupWord, Mat2, Torus, UnipotentLower, UnipotentUpper, Weyl
from .errors import ValidationError
from .etale import CubicAlgebra, CubicElem
from .field import Field, QuadExt, field_from_spec


def field_to_json(F: Field):
    return F.to_json()


def field_from_json(doc) -> Field:
    return field_from_spec(doc)


def _need(doc, key, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise ValidationError(f"missing key {key!r}")
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise ValidationError(f"key {key!r} has the wrong type")
    return val


def scalar_to_json(F: Field, x):
    return F.encode(x)


def scalar_from_json(F: Field, doc):
    return F.decode(doc)


# algebras ------------------------------------------------------------------------


def algebra_to_json(E: CubicAlgebra) -> dict:
    """{"field": ..., "shape": "split" | {"quad_pair": d} | {"cubic_poly": [c0, c1, c2]}}."""
    F = E.field
    if E.kind == "split":
        shape = "split"
    elif E.kind == "quad_pair":
        shape = {"quad_pair": F.encode(E.shape[1])}
    else:
        shape = {"cubic_poly": [F.encode(c) for c in E.shape[1:]]}
    return {"field": field_to_json(F), "shape": shape}


def algebra_from_json(doc, default_field: Field | None = None) -> CubicAlgebra:
    """Also accepts the flat form {"shape": "quad_pair", "d": ...} / {"shape": "cubic_poly", "coeffs": [...]}."""
    if isinstance(doc, str):
        doc = {"shape": doc}
    if not isinstance(doc, dict):
        raise ValidationError("algebra must be an object")
    F = field_from_json(doc["field"]) if "field" in doc else default_field
    if F is None:
        raise ValidationError("algebra needs a field")
    shape = _need(doc, "shape")
    if isinstance(shape, dict):
        if len(shape) != 1:
            raise ValidationError("shape object must have exactly one key")
        (kind, arg), = shape.items()
    elif isinstance(shape, str):
        kind = shape
        arg = doc.get("d") if kind == "quad_pair" else doc.get("coeffs")
    else:
        raise ValidationError("shape must be a string or an object")
    if kind == "split":
        return CubicAlgebra.split(F)
    if kind == "quad_pair":
        if arg is None:
            raise ValidationError("quad_pair needs d")
        return CubicAlgebra.quad_pair(F, F.decode(arg))
    if kind == "cubic_poly":
        if not isinstance(arg, list) or len(arg) != 3:
            raise ValidationError("cubic_poly needs three coefficients [c0, c1, c2]")
        return CubicAlgebra.cubic_poly(F, *(F.decode(c) for c in arg))
    raise ValidationError(f"unknown algebra shape {kind!r}")


def elem_to_json(x: CubicElem) -> list:
    return [x.alg.field.encode(c) for c in x.coords]


def elem_from_json(E: CubicAlgebra, doc) -> CubicElem:
    if not isinstance(doc, list) or len(doc) != 3:
        raise ValidationError("algebra elements are lists of 3 scalars")
    return E([E.field.decode(c) for c in doc])


# cubes ------------------------------------------------------------------------------


def cube_to_json(v: Cube) -> dict:
    F = v.E.field
    return {
        "algebra": algebra_to_json(v.E),
        "a": F.encode(v.a),
        "e": elem_to_json(v.e),
        "f": elem_to_json(v.f),
        "b": F.encode(v.b),
    }


def cube_from_json(doc, default_algebra: CubicAlgebra | None = None) -> Cube:
    if not isinstance(doc, dict):
        raise ValidationError("cube must be an object")
    if "algebra" in doc:
        E = algebra_from_json(doc["algebra"], default_algebra.field if default_algebra else None)
    elif default_algebra is not None:
        E = default_algebra
    else:
        raise ValidationError("cube needs an algebra")
    F = E.field
    return Cube(F.decode(_need(doc, "a")), elem_from_json(E, _need(doc, "e")), elem_from_json(E, _need(doc, "f")), F.decode(_need(doc, "b")))


# words ------------------------------------------------------------------------------


def _matrix3_to_json(F, m):
    return [[F.encode(c) for c in row] for row in m]


def gen_to_json(g, E: CubicAlgebra) -> dict:
    if isinstance(g, UnipotentLower):
        return {"gen": "n-", "u": elem_to_json(g.u)}
    if isinstance(g, UnipotentUpper):
        return {"gen": "n+", "u": elem_to_json(g.u)}
    if isinstance(g, Torus):
        return {"gen": "torus", "alpha": elem_to_json(g.alpha), "beta": elem_to_json(g.beta)}
    if isinstance(g, Weyl):
        return {"gen": "weyl"}
    if isinstance(g, AlgAut):
        return {"gen": "aut", "sigma": _matrix3_to_json(E.field, g.sigma)}
    raise ValidationError(f"unknown generator {g!r}")


def gen_from_json(E: CubicAlgebra, doc):
    kind = _need(doc, "gen", str)
    if kind == "n-":
        return UnipotentLower(elem_from_json(E, _need(doc, "u")))
    if kind == "n+":
        return UnipotentUpper(elem_from_json(E, _need(doc, "u")))
    if kind == "torus":
        return Torus(elem_from_json(E, _need(doc, "alpha")), elem_from_json(E, _need(doc, "beta")))
    if kind == "weyl":
        return Weyl()
    if kind == "aut":
        sigma = tuple(tuple(E.field.decode(c) for c in row) for row in _need(doc, "sigma", list))
        if not E.is_automorphism(sigma):
            raise ValidationError("sigma is not an algebra automorphism")
        return AlgAut(sigma)
    raise ValidationError(f"unknown generator {kind!r}")


def word_to_json(w: GroupWord, E: CubicAlgebra) -> dict:
    return {"algebra": algebra_to_json(E), "word": [gen_to_json(g, E) for g in w.gens]}


def word_from_json(doc, default_algebra: CubicAlgebra | None = None) -> GroupWord:
    E = algebra_from_json(doc["algebra"]) if "algebra" in doc else default_algebra
    if E is None:
        raise ValidationError("word needs an algebra")
    return GroupWord(tuple(gen_from_json(E, g) for g in _need(doc, "word", list)))


# 2x2 matrices over E ----------------------------------------------------------------


def mat2_to_json(m: Mat2) -> list:
    return [[elem_to_json(m.p), elem_to_json(m.q)], [elem_to_json(m.r), elem_to_json(m.s)]]


def mat2_from_json(E: CubicAlgebra, doc) -> Mat2:
    if not isinstance(doc, list) or len(doc) != 2 or any(not isinstance(r, list) or len(r) != 2 for r in doc):
        raise ValidationError("a 2x2 matrix is [[p, q], [r, s]]")
    return Mat2(*(elem_from_json(E, doc[i][j]) for i in range(2) for j in range(2)))


# composition algebras and Tits pairs --------------------------------------------------


def comp_to_json(C: CompAlg2) -> dict:
    doc = cube_to_json(Cube(C.a, C.e, C.f, C.b))
    doc["type"] = "comp_alg2"
    return doc


def comp_from_json(doc, default_algebra: CubicAlgebra | None = None) -> CompAlg2:
    if doc.get("type") != "comp_alg2":
        raise ValidationError("expected a document with type comp_alg2")
    v = cube_from_json(doc, default_algebra)
    return CompAlg2(v.E, v.a, v.e, v.f, v.b)


def quad_to_json(x) -> dict:
    F = x.K.field
    return {"x": F.encode(x.x), "y": F.encode(x.y), "d": F.encode(x.K.d)}


def quad_from_json(F: Field, doc):
    K = QuadExt(F, F.decode(_need(doc, "d")))
    return K(F.decode(_need(doc, "x")), F.decode(_need(doc, "y")))


def tits_to_json(t: TitsPair) -> dict:
    return {"algebra": algebra_to_json(t.e.alg), "e": elem_to_json(t.e), "nu": quad_to_json(t.nu)}


def tits_from_json(doc, default_algebra: CubicAlgebra | None = None) -> TitsPair:
    E = algebra_from_json(doc["algebra"]) if "algebra" in doc else default_algebra
    if E is None:
        raise ValidationError("Tits pair needs an algebra")
    return TitsPair(elem_from_json(E, _need(doc, "e")), quad_from_json(E.field, _need(doc, "nu")))


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True)
