"""Seeded fuzz suite for the algebraic identities.

Each identity is a pure function of a few inputs.  A failure is returned as a
JSON document that :func:`replay` evaluates again, so any counterexample can
be fed straight back through ``twistcube verify``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import serialize as ser
from .composition import beta_identities, phi, vscale, vsub
from .cube import AlgAut, Cube, GroupWord, Torus, UnipotentLower, UnipotentUpper, Weyl, delta_E
from .errors import ValidationError
from .etale import CubicAlgebra, check_curious_identity
from .field import QQ, Field, GF

IDENTITIES = ("curious", "sharp_norm", "double_sharp", "beta2", "beta_reduced")


def default_algebras(F: Field):
    """One algebra of each shape over F."""
    if F.characteristic == 0:
        return [CubicAlgebra.split(F), CubicAlgebra.quad_pair(F, 5), CubicAlgebra.cubic_poly(F, -2, 0, 0)]
    p = F.p
    cubic = None
    for c0 in range(1, p):
        for c1 in range(p):
            if all((t * t * t + c1 * t + c0) % p for t in range(p)):
                cubic = (c0, c1)
                break
        if cubic:
            break
    return [CubicAlgebra.split(F), CubicAlgebra.quad_pair(F, F.nonresidue), CubicAlgebra.cubic_poly(F, cubic[0], cubic[1], 0)]


# identities -------------------------------------------------------------------------


def check_sharp_norm(a) -> bool:
    return a * a.sharp() == a.alg.scalar(a.norm())


def check_double_sharp(a) -> bool:
    return a.sharp().sharp() == a * a.norm()


def check_beta2(v: Cube, w) -> bool:
    C = phi(v)
    bw = C.beta(w)
    return C.beta(bw) == vsub(vscale(C.E.scalar(C.norm_form(w, bw)), w), vscale(C.Q(w), bw))


def check_beta_reduced(v: Cube, w, x, y) -> bool:
    return beta_identities(phi(v), w, x, y)


def _random_nondegenerate(E, rng, height):
    while True:
        v = Cube.random(E, rng, height)
        if delta_E(v) != 0:
            return v


def _random_pair(E, rng, height):
    return (E.random(rng, height), E.random(rng, height))


def sample_inputs(name: str, E: CubicAlgebra, rng, height: int):
    if name == "curious":
        return {"f": E.random(rng, height), "y": E.random(rng, height)}
    if name in ("sharp_norm", "double_sharp"):
        return {"a": E.random(rng, height)}
    v = _random_nondegenerate(E, rng, height)
    if name == "beta2":
        return {"cube": v, "v": _random_pair(E, rng, height)}
    C = phi(v)
    while True:
        w = _random_pair(E, rng, height)
        if C.delta_C(w) != 0:
            break
    return {"cube": v, "v": w, "x": E.random(rng, height), "y": E.random(rng, height)}


def evaluate(name: str, inputs) -> bool:
    if name == "curious":
        return check_curious_identity(inputs["f"], inputs["y"])
    if name == "sharp_norm":
        return check_sharp_norm(inputs["a"])
    if name == "double_sharp":
        return check_double_sharp(inputs["a"])
    if name == "beta2":
        return check_beta2(inputs["cube"], inputs["v"])
    if name == "beta_reduced":
        return check_beta_reduced(inputs["cube"], inputs["v"], inputs["x"], inputs["y"])
    raise ValidationError(f"unknown identity {name!r}")


def inputs_to_json(inputs) -> dict:
    out = {}
    for k, val in inputs.items():
        if isinstance(val, Cube):
            out[k] = ser.cube_to_json(val)
        elif isinstance(val, tuple):
            out[k] = [ser.elem_to_json(c) for c in val]
        else:
            out[k] = ser.elem_to_json(val)
    return out


def inputs_from_json(E: CubicAlgebra, doc) -> dict:
    out = {}
    for k, val in doc.items():
        if k == "cube":
            out[k] = ser.cube_from_json(val, E)
        elif k == "v":
            if not isinstance(val, list) or len(val) != 2:
                raise ValidationError("v must be a pair of algebra elements")
            out[k] = tuple(ser.elem_from_json(E, c) for c in val)
        else:
            out[k] = ser.elem_from_json(E, val)
    return out


def counterexample(name: str, E: CubicAlgebra, inputs) -> dict:
    return {"identity": name, "algebra": ser.algebra_to_json(E), "inputs": inputs_to_json(inputs)}


def replay(doc) -> bool:
    """Re-evaluate a counterexample document; True when the identity now holds."""
    if not isinstance(doc, dict):
        raise ValidationError("counterexample must be an object")
    name = doc.get("identity")
    if name not in IDENTITIES:
        raise ValidationError(f"unknown identity {name!r}")
    E = ser.algebra_from_json(doc.get("algebra"))
    return evaluate(name, inputs_from_json(E, doc.get("inputs", {})))


# suite --------------------------------------------------------------------------------


@dataclass
class SuiteReport:
    seed: int
    results: list = field(default_factory=list)  # (field, algebra, identity, samples, passed)
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "ok": self.ok,
            "results": [
                {"field": f, "algebra": a, "identity": i, "samples": n, "passed": p}
                for f, a, i, n, p in self.results
            ],
            "counterexamples": self.failures,
        }


def run_suite(fields, samples: int, seed: int = 0, algebras=None, identities=IDENTITIES, height: int = 10) -> SuiteReport:
    """Run every identity ``samples`` times per algebra.  Deterministic in ``seed``."""
    report = SuiteReport(seed)
    t0 = time.perf_counter()
    for F in fields:
        algs = algebras if algebras is not None else default_algebras(F)
        for E in algs:
            if E.field != F:
                continue
            for name in identities:
                rng = random.Random(f"{seed}/{F!r}/{E!r}/{name}")
                passed = 0
                for _ in range(samples):
                    inputs = sample_inputs(name, E, rng, height)
                    if evaluate(name, inputs):
                        passed += 1
                    elif len(report.failures) < 5:
                        report.failures.append(counterexample(name, E, inputs))
                report.results.append((ser.field_to_json(F), ser.algebra_to_json(E), name, samples, passed))
    report.elapsed = time.perf_counter() - t0
    return report


# group words ---------------------------------------------------------------------------


def random_generator(E: CubicAlgebra, rng, height: int = 5, automorphisms=None):
    """A random n-, n+, Weyl, torus or (when ``automorphisms`` is given) AlgAut generator."""
    F = E.field
    kind = rng.randrange(5 if automorphisms else 4)
    if kind == 4:
        return AlgAut(tuple(tuple(row) for row in rng.choice(automorphisms)))
    if kind == 0:
        return UnipotentLower(E.random(rng, height))
    if kind == 1:
        return UnipotentUpper(E.random(rng, height))
    if kind == 2:
        return Weyl()
    while True:
        alpha = E.random(rng, height)
        c = F.random(rng, height, nonzero=True)
        if alpha.is_invertible():
            return Torus(alpha, alpha.inverse() * c)


def random_word(E: CubicAlgebra, rng, max_len: int = 8, height: int = 5, automorphisms=None) -> GroupWord:
    n = rng.randint(1, max_len)
    return GroupWord(tuple(random_generator(E, rng, height, automorphisms) for _ in range(n)))


def delta_equivariance(v: Cube, w: GroupWord) -> bool:
    d = w.det(v.E.field)
    return delta_E(w.act(v)) == d * d * delta_E(v)


STANDARD_FIELDS = {"Q": QQ, "Fp:5": GF(5), "Fp:7": GF(7), "Fp:11": GF(11)}
