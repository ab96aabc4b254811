"""Command-line interface: ``twistcube <subcommand> [INPUT] [options]``.

INPUT is a JSON document given inline, as a file path, or ``-`` for stdin.
Exit codes: 0 success, 2 invalid input, 3 a checked property failed (the
output then contains a replayable counterexample).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import serialize as ser
from .composition import axiom_failure, check_axioms, cube_of, from_tits, phi, to_tits
from .cube import delta_E, reduce, slice_forms
from .cube import slice as cube_slice
from .errors import (
    AxiomViolation,
    DegenerateCubeError,
    NotAGoodBasisError,
    NotInvertibleError,
    SearchExhausted,
    UnsupportedShapeError,
    ValidationError,
)
from .etale import CubicAlgebra
from .field import QQ, GF, field_from_spec

EXIT_OK, EXIT_INVALID, EXIT_PROPERTY = 0, 2, 3

INPUT_ERRORS = (
    ValidationError,
    DegenerateCubeError,
    UnsupportedShapeError,
    NotInvertibleError,
    SearchExhausted,
    NotAGoodBasisError,
    KeyError,
    TypeError,
)


class PropertyFailure(Exception):
    def __init__(self, doc):
        super().__init__("property failure")
        self.doc = doc


def read_json(text_or_path: str):
    """Parse inline JSON, a file, or stdin ('-')."""
    if text_or_path == "-":
        text = sys.stdin.read()
    elif text_or_path.lstrip()[:1] in ("{", "[", '"') or not os.path.exists(text_or_path):
        text = text_or_path
    else:
        with open(text_or_path, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON at line {exc.lineno} column {exc.colno} (char {exc.pos}): {exc.msg}") from exc


def context_algebra(args) -> CubicAlgebra:
    F = field_from_spec(args.field)
    if args.algebra is None:
        return CubicAlgebra.split(F)
    doc = read_json(args.algebra)
    return ser.algebra_from_json(doc, F)


def _input(args):
    if args.input is None:
        raise ValidationError(f"{args.command} needs an INPUT document")
    return read_json(args.input)


def _cube(args):
    return ser.cube_from_json(_input(args), context_algebra(args))


# subcommands -------------------------------------------------------------------------


def cmd_invariant(args):
    v = _cube(args)
    F = v.E.field
    d = delta_E(v)
    return {"delta": F.encode(d), "class": F.encode(F.square_class(d).rep)}


def cmd_reduce(args):
    v = _cube(args)
    word, red = reduce(v)
    F = v.E.field
    doc = {
        "word": ser.word_to_json(word, v.E),
        "reduced": ser.cube_to_json(red),
        "delta_class": F.encode(F.square_class(delta_E(v)).rep),
    }
    if word.act(v) != red or F.square_class(delta_E(red)) != F.square_class(delta_E(v)):
        raise PropertyFailure({"property": "reduce replays", "cube": ser.cube_to_json(v), **doc})
    return doc


def cmd_slice(args):
    v = _cube(args)
    F = v.E.field
    d = delta_E(v)
    out = []
    for (A, B), (p, q, r) in zip(cube_slice(v), slice_forms(v)):
        disc = q * q - 4 * p * r
        out.append({
            "A": [[F.encode(x) for x in row] for row in A],
            "B": [[F.encode(x) for x in row] for row in B],
            "form": [F.encode(p), F.encode(q), F.encode(r)],
            "discriminant": F.encode(disc),
        })
    doc = {"slices": out, "delta": F.encode(d)}
    if any(s["discriminant"] != doc["delta"] for s in out):
        raise PropertyFailure({"property": "slice discriminants equal Delta", "cube": ser.cube_to_json(v), **doc})
    return doc


def _pair(w):
    return [ser.elem_to_json(w[0]), ser.elem_to_json(w[1])]


def cmd_to_comp(args):
    v = _cube(args)
    C = phi(v)
    E = v.E
    A, B, Cc = C.q_coeffs()
    doc = ser.comp_to_json(C)
    doc["Q"] = {"x2": ser.elem_to_json(A), "xy": ser.elem_to_json(B), "y2": ser.elem_to_json(Cc)}
    doc["beta_e1"] = _pair(C.beta((E.one, E.zero)))
    doc["beta_e2"] = _pair(C.beta((E.zero, E.one)))
    return doc


def cmd_to_cube(args):
    C = ser.comp_from_json(_input(args), context_algebra(args))
    return ser.cube_to_json(cube_of(C))


def cmd_check_axioms(args):
    doc = _input(args)
    E0 = context_algebra(args)
    if doc.get("type") == "comp_alg2":
        C = ser.comp_from_json(doc, E0)
    else:
        C = phi(ser.cube_from_json(doc, E0))
    E = C.E
    algebra_doc = ser.comp_to_json(C)
    if "witness" in doc:
        w = doc["witness"]
        v = tuple(ser.elem_from_json(E, x) for x in w["v"])
        lam = ser.elem_from_json(E, w["lambda"])
        bad = axiom_failure(C, v, lam)
        report = {"ok": bad is None, "samples": 1, "algebra": algebra_doc}
    else:
        rng = random.Random(args.seed)
        rep = check_axioms(C, args.samples, rng)
        bad = rep.axiom
        report = {"ok": rep.ok, "samples": rep.samples, "algebra": algebra_doc}
        if not rep.ok:
            v, lam = rep.witness["v"], rep.witness["lambda"]
    if bad:
        ce = dict(algebra_doc)
        ce["witness"] = {"v": _pair(v), "lambda": ser.elem_to_json(lam)}
        raise PropertyFailure({"ok": False, "axiom": bad, "counterexample": ce})
    return report


def cmd_tits(args):
    doc = _input(args)
    E0 = context_algebra(args)
    if "nu" in doc:
        pair = ser.tits_from_json(doc, E0)
        v = from_tits(pair)
        return {"cube": ser.cube_to_json(v), "delta": v.E.field.encode(delta_E(v))}
    v = ser.cube_from_json(doc, E0)
    pair = to_tits(phi(v))
    back = from_tits(pair)
    out = {"pair": ser.tits_to_json(pair), "norm_e": v.E.field.encode(pair.e.norm()), "norm_nu": v.E.field.encode(pair.nu.norm())}
    if back != v:
        raise PropertyFailure({"property": "from_tits(to_tits(v)) = v", "cube": ser.cube_to_json(v), **out})
    return out


def cmd_springer(args):
    from .jordan import FullMatrix, Hermitian, check_springer_axioms, k_classes, springer_decompose

    doc = _input(args) if args.input is not None else {"model": "full"}
    F = field_from_spec(doc.get("field", args.field))
    model = doc.get("model")
    if model == "full":
        J = FullMatrix(F)
    elif model == "hermitian":
        if "d" not in doc:
            raise ValidationError("hermitian model needs d")
        J = Hermitian(F, F.decode(doc["d"]))
    else:
        raise ValidationError("model must be 'full' or 'hermitian'")
    S = springer_decompose(J)
    kc, ke, kj = k_classes(J, S)
    rng = random.Random(args.seed)
    out = {
        "cube": ser.cube_to_json(S.cube),
        "classes": {"K_C": F.encode(kc.rep), "K_E": F.encode(ke.rep), "K_J": F.encode(kj.rep)},
        "orthogonal": S.orthogonality_ok,
        "axioms": check_springer_axioms(S, args.samples, rng),
        "product_trivial": (kc * ke * kj).is_trivial,
    }
    if not (out["orthogonal"] and out["axioms"] and out["product_trivial"]):
        raise PropertyFailure({"input": doc, **out})
    return out


def cmd_gauss(args):
    from .gauss import IntegralCompAlg, cube_to_triple, is_primitive

    doc = _input(args)
    if "f" not in doc or "b" not in doc:
        raise ValidationError("gauss expects {\"f\": [f1, f2, f3], \"b\": b}")
    f, b = doc["f"], doc["b"]
    if isinstance(f, dict) or not all(isinstance(x, int) for x in list(f) + [b]):
        raise ValidationError("gauss needs integer f and b")
    if "e" in doc and any(doc["e"]) or doc.get("a", 1) != 1:
        raise ValidationError("gauss needs a reduced cube (1, 0, f, b)")
    t = cube_to_triple(f, b)
    A = IntegralCompAlg(t)
    rng = random.Random(args.seed)
    nc_ok = True
    for _ in range(20):
        z = A.random_element(rng)
        n = A.norm_form(z)
        nc_ok &= n.denominator == 1 and all(x == n for x in A.bQ(z, A.beta(z)))
        nc_ok &= A.coordinates(A.beta(z)) == A.coordinate_beta(A.coordinates(z))
    ident = t.norm_identities()
    ident["colinear"] = t.colinear()
    ident["norm_form_integral"] = nc_ok
    out = {
        "discriminant": t.order.D,
        "modules": [[ser.quad_to_json(x) for x in M.basis] for M in t.modules],
        "module_norms": [QQ.encode(M.norm()) for M in t.modules],
        "delta": ser.quad_to_json(t.delta),
        "delta_norm": QQ.encode(t.delta.norm()),
        "forms": [{"coeffs": list(q), "primitive": is_primitive(q)} for q in t.forms],
        "projective": t.projective,
        "identities": ident,
    }
    if not all(ident.values()):
        raise PropertyFailure({"input": doc, **out})
    return out


def cmd_orbits(args):
    from .orbits import enumerate_orbits

    E = context_algebra(args)
    if E.field.characteristic == 0:
        raise ValidationError("orbits needs --field Fp:5 or Fp:7")
    table = enumerate_orbits(E.field.p, E)
    if not table.orbit_stabilizer_ok() or not all(o.constant_delta_class for o in table.orbits):
        sys.stderr.write("orbit census failed its consistency checks\n")
        return table.to_csv(), EXIT_PROPERTY
    return table.to_csv()


def cmd_verify(args):
    from .verify import replay, run_suite

    if args.input is not None:
        doc = _input(args)
        ok = replay(doc)
        if not ok:
            raise PropertyFailure({"ok": False, "counterexample": doc})
        return {"ok": True, "replayed": doc.get("identity")}
    fields = [field_from_spec(args.field)] if args.field_given else [GF(5), GF(7), GF(11), QQ]
    algebras = [context_algebra(args)] if args.algebra is not None else None
    height = 1000 if fields == [QQ] else 10
    report = run_suite(fields, args.samples, seed=args.seed, algebras=algebras, height=height)
    doc = report.to_json()
    if not report.ok:
        raise PropertyFailure(doc)
    return doc


COMMANDS = {
    "invariant": (cmd_invariant, "quartic invariant and its square class"),
    "reduce": (cmd_reduce, "reduce a cube to (1, 0, f, b) with a witness word"),
    "slice": (cmd_slice, "the three slicings of a split cube"),
    "to-comp": (cmd_to_comp, "composition algebra of a cube"),
    "to-cube": (cmd_to_cube, "cube of a composition algebra"),
    "check-axioms": (cmd_check_axioms, "sample the composition-algebra axioms"),
    "tits": (cmd_tits, "reduced cube <-> Tits pair (e, nu)"),
    "springer": (cmd_springer, "Springer decomposition of a matrix Jordan algebra"),
    "gauss": (cmd_gauss, "integral module triple of a reduced integer cube"),
    "orbits": (cmd_orbits, "orbit census over F_5 or F_7 (CSV)"),
    "verify": (cmd_verify, "seeded identity fuzz suite"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistcube", description="Twisted Bhargava cubes and twisted composition algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", help="JSON document, file path, or - for stdin")
        p.add_argument("--field", default=None, help="Q or Fp:<p> (default Q)")
        p.add_argument("--algebra", default=None, help="algebra JSON or file (default split)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--out", default=None, help="write output here instead of stdout")
    return parser


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.field_given = args.field is not None
    if args.field is None:
        args.field = "Q"
    if args.samples < 1:
        parser.error("--samples must be positive")
    func = COMMANDS[args.command][0]
    try:
        result = func(args)
    except PropertyFailure as exc:
        _emit(ser.dumps(exc.doc) + "\n", args.out)
        return EXIT_PROPERTY
    except AxiomViolation as exc:
        _emit(ser.dumps({"ok": False, "error": str(exc)}) + "\n", args.out)
        return EXIT_PROPERTY
    except INPUT_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    text = result if isinstance(result, str) else ser.dumps(result) + "\n"
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
