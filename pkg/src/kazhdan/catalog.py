"""Built-in group presets and closed-form reference values.

Reference values are evaluated with 40-digit working precision before
the final float conversion, so the printed comparisons are good to 1e-12.
Each carries its exact expression as text and a provenance tag.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import mpmath

from .backends import (Backend, FinitelyPresentedBackend, MatrixBackend,
                       MonomialBackend, MonomialGroupSpec, special_linear_spec)
from .presentations import PresentationSpec, presentation
from .rewriting import RewriteBudget
from .triangles import generate_triangle_presentations, triangle_group

mpmath.mp.dps = 40


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class ReferenceValue:
    name: str
    expression: str
    value: float
    provenance: str

    def as_dict(self) -> Dict[str, object]:
        return {"name": self.name, "expression": self.expression,
                "value": self.value, "provenance": self.provenance}


def _ref(name: str, expression: str, value, provenance: str) -> ReferenceValue:
    return ReferenceValue(name, expression, float(value), provenance)


# ---------------------------------------------------------------------------
# closed-form reference values


def eps_q(q: int) -> ReferenceValue:
    v = 1 - q * (mpmath.sqrt(q) + mpmath.sqrt(mpmath.mpf(1) / q) + 1) / (q * q + q + 1)
    return _ref(f"eps_q({q})",
                f"1 - {q}*(sqrt({q}) + sqrt(1/{q}) + 1)/{q * q + q + 1}",
                v, "closed form: normalized spectral gap of A2-tilde groups")


def a2tilde_kappa(q: int) -> ReferenceValue:
    v = mpmath.sqrt(2 * mpmath.mpf(eps_q(q).value))
    v = mpmath.sqrt(2 * (1 - q * (mpmath.sqrt(q) + mpmath.sqrt(mpmath.mpf(1) / q) + 1)
                         / (q * q + q + 1)))
    return _ref(f"a2tilde_kappa({q})", f"sqrt(2*eps_q({q}))", v,
                "closed form: Kazhdan constant of A2-tilde groups, natural generators")


def lambda_pg(q: int) -> ReferenceValue:
    v = 1 - mpmath.sqrt(q) / (q + 1)
    return _ref(f"lambda_pg({q})", f"1 - sqrt({q})/{q + 1}", v,
                "closed form: first positive eigenvalue of the incidence-graph Laplacian")


def ronan_conjectured_gap() -> ReferenceValue:
    v = (mpmath.sqrt(2) - 1) ** 2
    return _ref("ronan_gap_conjecture", "(sqrt(2)-1)^2", v,
                "conjectured common spectral gap of the triangle-geometry family")


def ronan_conjectured_kappa() -> ReferenceValue:
    v = (mpmath.sqrt(2) - 1) / mpmath.sqrt(3)
    return _ref("ronan_kappa_conjecture", "(sqrt(2)-1)/sqrt(3)", v,
                "conjectured common Kazhdan bound of the triangle-geometry family")


def zuk_upper(n: int) -> ReferenceValue:
    return _ref(f"zuk_upper({n})", f"sqrt(2/{n})", mpmath.sqrt(mpmath.mpf(2) / n),
                "upper bound for kappa(SL(n,Z), E_n)")


def kassabov_lower(n: int) -> ReferenceValue:
    v = 1 / (42 * mpmath.sqrt(n) + 860)
    return _ref(f"kassabov_lower({n})", f"1/(42*sqrt({n}) + 860)", v,
                "prior lower bound for kappa(SL(n,Z), E_n)")


def kassabov_lower_finite(n: int) -> ReferenceValue:
    v = 1 / (31 * mpmath.sqrt(n) + 700)
    return _ref(f"kassabov_lower_finite({n})", f"1/(31*sqrt({n}) + 700)", v,
                "lower bound for kappa(SL(n,F_p), E_n)")


COXETER_NUMBER: Dict[str, Callable[[int], int]] = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n,
    "D": lambda n: 2 * (n - 1),
    "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
    "F": lambda n: 12,
    "H": lambda n: {3: 10, 4: 30}[n],
}


def coxeter_number(family: str, n: int) -> int:
    if family == "I":
        return n
    try:
        return COXETER_NUMBER[family](n)
    except KeyError:
        raise CatalogError(f"no Coxeter number for {family}{n}") from None


def coxeter_gap(family: str, n: int) -> ReferenceValue:
    """Spectral gap of the unnormalized Laplacian: 2(1 - cos(pi/h)).

    The tables' sqrt(2*eps/|S|) column and the exact regular-representation
    oracle on A2 both confirm this normalization; the doubled variant is
    kept alongside as coxeter_gap_paper.
    """
    h = coxeter_number(family, n)
    v = 2 * (1 - mpmath.cos(mpmath.pi / h))
    return _ref(f"coxeter_gap({family}{n})", f"2*(1 - cos(pi/{h}))", v,
                "closed form: Coxeter-group spectral gap (table normalization)")


def coxeter_gap_paper(family: str, n: int) -> ReferenceValue:
    h = coxeter_number(family, n)
    v = 4 * (1 - mpmath.cos(mpmath.pi / h))
    return _ref(f"coxeter_gap_paper({family}{n})", f"4*(1 - cos(pi/{h}))", v,
                "stated closed form (double the table normalization)")


def coxeter_table_bound(family: str, n: int) -> ReferenceValue:
    """sqrt(2*gap/|S|) with |S| = n, the tables' third column."""
    h = coxeter_number(family, n)
    size = 2 if family == "I" else n
    v = mpmath.sqrt(2 * 2 * (1 - mpmath.cos(mpmath.pi / h)) / size)
    return _ref(f"coxeter_table_bound({family}{n})",
                f"sqrt(4*(1 - cos(pi/{h}))/{size})", v,
                "closed form: sqrt(2*eps/|S|) for the Coxeter Laplacian")


def coxeter_kappa(family: str, n: int) -> ReferenceValue:
    """Exact Kazhdan constants of the finite Coxeter groups."""
    s2 = mpmath.sqrt(2)
    s5 = mpmath.sqrt(5)
    if family == "A":
        v = mpmath.sqrt(mpmath.mpf(24) / ((n + 1) ** 3 - (n + 1)))
        expr = f"sqrt(24/(({n + 1})^3 - {n + 1}))"
    elif family == "B":
        v = mpmath.sqrt(12 / (n * (4 - 3 * s2 + 3 * (s2 - 1) * n + 2 * n * n)))
        expr = f"sqrt(12/({n}*(4 - 3*sqrt(2) + 3*(sqrt(2)-1)*{n} + 2*{n}^2)))"
    elif family == "D":
        v = mpmath.sqrt(mpmath.mpf(12) / (n * (n - 1) * (2 * n - 1)))
        expr = f"sqrt(12/({n}*{n - 1}*{2 * n - 1}))"
    elif family == "E":
        v = {6: mpmath.sqrt(mpmath.mpf(1) / 39),
             7: mpmath.sqrt(mpmath.mpf(4) / 399),
             8: mpmath.sqrt(mpmath.mpf(1) / 310)}[n]
        expr = {6: "sqrt(1/39)", 7: "sqrt(4/399)", 8: "sqrt(1/310)"}[n]
    elif family == "F":
        v = mpmath.sqrt((14 - 9 * s2) / 34)
        expr = "sqrt((14 - 9*sqrt(2))/34)"
    elif family == "H":
        v = {3: mpmath.sqrt((124 - 48 * s5) / 241),
             4: mpmath.sqrt((83 - 36 * s5) / 409)}[n]
        expr = {3: "sqrt((124 - 48*sqrt(5))/241)",
                4: "sqrt((83 - 36*sqrt(5))/409)"}[n]
    elif family == "I":
        if n < 3:
            raise CatalogError("I2(n) needs n >= 3")
        v = 2 * mpmath.sin(mpmath.pi / (2 * n))
        expr = f"2*sin(pi/(2*{n}))"
    else:
        raise CatalogError(f"unknown Coxeter family {family!r}")
    return _ref(f"coxeter_kappa({family}{n})", expr, v,
                "exact Kazhdan constant of the finite Coxeter group")


def bagno_kappa_hat(m: int, n: int) -> ReferenceValue:
    """Irreducible-representation Kazhdan constant of G(m,1,n)."""
    zeta_gap = abs(1 - mpmath.exp(2j * mpmath.pi / m))
    denom = mpmath.fsum((1 + zeta_gap / mpmath.sqrt(2) * (j - 1)) ** 2
                        for j in range(1, n + 1))
    v = mpmath.sqrt(zeta_gap ** 2 / denom)
    return _ref(f"bagno_kappa_hat({m},{n})",
                f"sqrt(|1-zeta_{m}|^2 / sum_j=1..{n} (1 + |1-zeta_{m}|/sqrt(2)*(j-1))^2)",
                v, "closed form: kappa-hat for G(m,1,n)")


def gmmn_upper(m: int, n: int) -> ReferenceValue:
    """Upper bound for kappa(G(m,m,n)) from the displacement witness eta."""
    if m < 2 or n < 2:
        raise CatalogError("need m >= 2 and n >= 2")
    zeta_gap = abs(1 - mpmath.exp(1j * mpmath.pi / m))      # |1 - zeta_2m|
    denom = 2 + mpmath.fsum(abs(1 + zeta_gap * j) ** 2 for j in range(1, n - 1))
    v = mpmath.sqrt(2 * zeta_gap ** 2 / denom)
    return _ref(f"gmmn_upper({m},{n})",
                f"sqrt(2*|1-zeta_{2 * m}|^2 / (2 + sum_j=1..{n - 2} |1 + |1-zeta_{2 * m}|*j|^2))",
                v, "upper bound for kappa(G(m,m,n))")


def eta_witness(m: int, n: int):
    """The displacement vector behind gmmn_upper, as complex numbers."""
    zeta2m = complex(mpmath.exp(1j * mpmath.pi / m))
    gap = abs(1 - zeta2m)
    return [1.0 + 0j] + [zeta2m + zeta2m * gap * j for j in range(n - 1)]


REFERENCES: Dict[str, Callable[..., ReferenceValue]] = {
    "eps_q": eps_q,
    "a2tilde_kappa": a2tilde_kappa,
    "lambda_pg": lambda_pg,
    "ronan_gap": lambda: ronan_conjectured_gap(),
    "ronan_kappa": lambda: ronan_conjectured_kappa(),
    "zuk_upper": zuk_upper,
    "kassabov_lower": kassabov_lower,
    "kassabov_lower_finite": kassabov_lower_finite,
    "coxeter_gap": coxeter_gap,
    "coxeter_gap_paper": coxeter_gap_paper,
    "coxeter_table_bound": coxeter_table_bound,
    "coxeter_kappa": coxeter_kappa,
    "bagno_kappa_hat": bagno_kappa_hat,
    "gmmn_upper": gmmn_upper,
}


def reference(name: str, *params) -> ReferenceValue:
    try:
        fn = REFERENCES[name]
    except KeyError:
        raise CatalogError(f"unknown reference {name!r}") from None
    return fn(*params)


# ---------------------------------------------------------------------------
# presentations of the built-in families


RONAN_RELATORS = {
    "G1": ["a^3", "b^3", "c^3", "(a*b)^2 = b*a", "(b*c)^2 = c*b", "(c*a)^2 = a*c"],
    "G2": ["a^3", "b^3", "c^3", "(a*b)^2 = b*a", "(b*c)^2 = c*b", "(a*c)^2 = c*a"],
    "G3": ["a^3", "b^3", "c^3", "(a*b)^2 = b*a", "(a*c)^2 = c*a", "(c'*b)^2 = b*c'"],
    "G4": ["a^3", "b^3", "c^3", "(a*b)^2 = b*a", "(a*c)^2 = c*a", "(b*c')^2 = c'*b"],
}


def ronan_spec(which: str) -> PresentationSpec:
    if which not in RONAN_RELATORS:
        raise CatalogError(f"unknown Ronan group {which!r} (G1..G4)")
    return presentation(["a", "b", "c"], RONAN_RELATORS[which], name=f"ronan:{which}")


def steinberg_spec(n: int) -> PresentationSpec:
    """St_n(Z): generators x_ij, relations [x_ij, x_jk] = x_ik and
    commuting pairs [x_ij, x_kl] = 1 for j != k, i != l."""
    if n < 3:
        raise CatalogError("Steinberg preset needs n >= 3")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    gens = [f"x{i}{j}" for (i, j) in pairs]
    rels = []
    for (i, j) in pairs:
        for (k, l) in pairs:
            if (i, j) < (k, l) and j != k and i != l and (k, l) != (j, i):
                rels.append(f"x{i}{j}*x{k}{l}*x{i}{j}'*x{k}{l}'")
    for (i, j) in pairs:
        for (k, l) in pairs:
            if j == k and i != l:
                rels.append(f"x{i}{j}*x{k}{l}*x{i}{j}'*x{k}{l}' = x{i}{l}")
    return presentation(gens, rels, name=f"steinberg:{n}")


COXETER_EDGES: Dict[str, Callable[[int], List[Tuple[int, int, int]]]] = {
    "A": lambda n: [(i, i + 1, 3) for i in range(1, n)],
    "B": lambda n: [(i, i + 1, 3) for i in range(1, n - 1)] + [(n - 1, n, 4)],
    "D": lambda n: [(i, i + 1, 3) for i in range(1, n - 1)] + [(n - 2, n, 3)],
    "E": lambda n: ([(1, 3, 3), (3, 4, 3), (2, 4, 3)]
                    + [(i, i + 1, 3) for i in range(4, n)]),
    "F": lambda n: [(1, 2, 3), (2, 3, 4), (3, 4, 3)],
    "H": lambda n: [(1, 2, 5)] + [(i, i + 1, 3) for i in range(2, n)],
}

COXETER_RANK_RANGE = {"A": (1, 12), "B": (2, 12), "D": (4, 12),
                      "E": (6, 8), "F": (4, 4), "H": (3, 4)}


def coxeter_spec(family: str, n: int, order: Optional[int] = None) -> PresentationSpec:
    """Coxeter presentation; generators are involutions, |S| = n."""
    family = family.upper()
    if family == "I":
        if n < 3:
            raise CatalogError("I2(n) needs n >= 3")
        edges = [(1, 2, n)]
        rank = 2
        name = f"coxeter:I2:{n}"
    else:
        if family not in COXETER_EDGES:
            raise CatalogError(f"unknown Coxeter family {family!r}")
        lo, hi = COXETER_RANK_RANGE[family]
        if not lo <= n <= hi:
            raise CatalogError(f"{family}{n} outside supported rank range")
        edges = COXETER_EDGES[family](n)
        rank = n
        name = f"coxeter:{family}{n}"
    gens = [f"s{i}" for i in range(1, rank + 1)]
    rels = []
    seen = set()
    for (i, j, m) in edges:
        rels.append("(" + f"s{i}*s{j}" + f")^{m}")
        seen.add((min(i, j), max(i, j)))
    for i in range(1, rank + 1):
        for j in range(i + 1, rank + 1):
            if (i, j) not in seen:
                rels.append(f"(s{i}*s{j})^2")
    return presentation(gens, rels, involutions=gens, name=name)


# ---------------------------------------------------------------------------
# the preset registry


@dataclass
class Preset:
    name: str
    kind: str                                  # fp | matrix | monomial
    build: Callable[[], Backend]
    default_d: int                             # table-matching radius
    suggested_d: int                           # support-range heuristic
    references: List[ReferenceValue]
    description: str = ""


def _fp_preset(spec: PresentationSpec, default_d: int, refs, desc,
               budget: Optional[RewriteBudget] = None) -> Preset:
    budget = budget or RewriteBudget()
    return Preset(
        name=spec.name, kind="fp",
        build=lambda: FinitelyPresentedBackend(spec, budget=budget),
        default_d=default_d, suggested_d=spec.suggested_radius(),
        references=list(refs), description=desc)


def preset(name: str) -> Preset:
    """Resolve a preset name like ronan:G1, sl:3:Z, coxeter:B3, gmpn:4:2:3."""
    parts = name.split(":")
    head = parts[0].lower()
    if head == "ronan" and len(parts) == 2:
        spec = ronan_spec(parts[1].upper())
        return _fp_preset(spec, 2,
                          [ronan_conjectured_gap(), ronan_conjectured_kappa()],
                          "triangle-geometry lattice, |S|=6")
    if head == "steinberg" and len(parts) == 2:
        spec = steinberg_spec(int(parts[1]))
        return _fp_preset(spec, 2, [],
                          "Steinberg group, commutator presentation")
    if head == "sl" and len(parts) == 3:
        n = int(parts[1])
        field = parts[2]
        if field.upper() == "Z":
            refs = [zuk_upper(n), kassabov_lower(n)]
            mspec = special_linear_spec(n)
            desc = f"SL({n},Z) with elementary generators"
        elif field.upper().startswith("F"):
            p = int(field[1:])
            refs = [kassabov_lower_finite(n)]
            mspec = special_linear_spec(n, modulus=p)
            desc = f"SL({n},F_{p}) with elementary generators"
        else:
            raise CatalogError(f"unknown field tag {field!r}")
        return Preset(name=mspec.name, kind="matrix",
                      build=lambda: MatrixBackend(mspec),
                      default_d=2, suggested_d=2, references=refs,
                      description=desc)
    if head == "coxeter" and len(parts) in (2, 3):
        if len(parts) == 3:
            family, n = parts[1].upper().rstrip("2"), int(parts[2])
            if family != "I":
                raise CatalogError("three-part Coxeter names are I2 only")
            spec = coxeter_spec("I", n)
            h = n
        else:
            family, n = parts[1][0].upper(), int(parts[1][1:])
            spec = coxeter_spec(family, n)
        refs = [coxeter_kappa(family if family != "I" else "I", n),
                coxeter_gap(family, n), coxeter_table_bound(family, n)]
        default_d = 3 if family in ("B", "F", "H", "I") else 2
        return _fp_preset(spec, default_d, refs,
                          "finite Coxeter group, involutive generators")
    if head == "gmpn" and len(parts) == 4:
        m, p, n = (int(v) for v in parts[1:])
        mspec = MonomialGroupSpec(m, p, n)
        refs = []
        if p == 1:
            refs.append(bagno_kappa_hat(m, n))
        if p == m and n >= 2 and m >= 2:
            refs.append(gmmn_upper(m, n))
        return Preset(name=f"gmpn:{m}:{p}:{n}", kind="monomial",
                      build=lambda: MonomialBackend(mspec),
                      default_d=3, suggested_d=3, references=refs,
                      description=f"complex reflection group G({m},{p},{n})")
    if head == "a2tilde" and len(parts) >= 2 and parts[1] == "q2":
        which = int(parts[2]) if len(parts) > 2 else 0
        tps = generate_triangle_presentations(2, limit=which + 1)
        if which >= len(tps):
            raise CatalogError(f"only {len(tps)} generated q=2 presentations")
        spec = triangle_group(tps[which])
        spec = PresentationSpec(spec.alphabet, spec.relators,
                                name=f"a2tilde:q2:{which}")
        return _fp_preset(spec, 1, [eps_q(2), a2tilde_kappa(2)],
                          "A2-tilde group from a generated q=2 triangle presentation")
    raise CatalogError(f"unknown preset {name!r}")


def preset_names() -> List[str]:
    """Representative preset names for the CLI listing."""
    names = [f"ronan:{g}" for g in ("G1", "G2", "G3", "G4")]
    names += ["steinberg:3", "sl:3:Z", "sl:4:Z", "sl:2:F3", "sl:2:F5", "sl:2:F7",
              "sl:3:F3", "sl:3:F5"]
    names += [f"coxeter:A{n}" for n in range(2, 9)]
    names += [f"coxeter:B{n}" for n in range(2, 9)]
    names += [f"coxeter:D{n}" for n in range(4, 9)]
    names += ["coxeter:E6", "coxeter:E7", "coxeter:E8", "coxeter:F4",
              "coxeter:H3", "coxeter:H4", "coxeter:I2:5"]
    names += ["gmpn:3:1:2", "gmpn:3:1:3", "gmpn:4:1:2", "gmpn:3:3:2",
              "gmpn:3:3:3", "gmpn:4:4:2", "gmpn:4:2:2", "gmpn:4:2:3",
              "gmpn:6:2:2", "gmpn:6:3:2"]
    names += ["a2tilde:q2:0"]
    return names
