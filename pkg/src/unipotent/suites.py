"""Verification suites shared by the command line and the acceptance tests.

Each suite sweeps a grid of parameters and returns check records.  A record
passes when every case in its grid holds; otherwise it carries the first
counterexample found.  Grids are deterministic functions of the config.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Optional

from . import matrices as mx
from .binomial import (
    BinomialPoly,
    RescaleTable,
    delta_product,
    is_z_closed,
    is_z_closed_exact,
    rescale_coeffs_basis,
    rescale_coeffs_recursive,
    tpoly_eval,
)
from .coeffs import QQ, CoeffField, NotAUnitError, PrimeField, format_exact
from .export import MatrixBundle, field_name
from .jordan import (
    change_of_generator_matrix,
    evaluation_matrix,
    exp_structure_check,
    galois_matrix,
    inclusion,
    iterated_mult,
    leading_quotient,
    monodromy_matrix,
    mult_map,
    mult_map_oracle,
    nonsemisimple_witness,
    nu_basis_change,
    partial_quotient_map,
    ses_inclusion,
    top_quotient,
)
from .pointed import (
    PointedMap,
    all_pointed_maps,
    compose,
    compose_data,
    degree_window,
    diagonal_equivariance_check,
    factorize,
    galois_equivariance_check,
    is_special,
    linear_map_matrix,
)
from .poset import (
    brute_force_count,
    check_groupoid_connectivity,
    check_initiality,
    enumerate_poset,
    is_partial_order,
)

# Every check names one of these anchors; the text says what is being verified.
ANCHORS = {
    "binomial-product": "structure constants of the binomial basis",
    "rescale-integrality": "c_r^j(t) takes integer values at integer t",
    "rescale-two-routes": "basis conversion and Vandermonde recursion agree",
    "rescale-endpoints": "c_r^r(t) = t^r and c_r^0(t) = [r = 0]",
    "rescale-c21": "c_2^1(t) = (t^2 - t)/2",
    "z-closed-criterion": "integer-valued iff integer binomial coordinates",
    "jordan-independence": "evaluation matrices are invertible, so dim L_a = a",
    "jordan-unipotence": "(M(n) - 1)^a = 0",
    "jordan-group-law": "M(m) M(n) = M(m + n)",
    "jordan-continuity": "M(n) depends on n modulo l^k over F_l",
    "jordan-generator-change": "base change between generators is invertible and multiplicative",
    "jordan-galois": "G(t) G(s) = G(ts) and closed form matches sampling",
    "jordan-semidirect": "G(t) M(m) G(t)^-1 = M(m / t)",
    "jordan-ses": "L_{a-1} -> L_a is equivariant with quotient scalar t^(a-1)",
    "jordan-mult": "multiplication is equivariant with image containing L_max(a,b)",
    "jordan-nu-exp": "monodromy is exp(-n S) in the nu basis",
    "jordan-differentiation": "a-fold differentiation has kernel L_a and twists Galois by t^a",
    "frobenius-witness": "Frobenius on L_3 over F_2 is not semisimple",
    "mult-associativity": "iterated multiplication is independent of bracketing",
    "mult-top-quotient": "multiplication is compatible with the top quotients",
    "mult-inclusions": "successive inclusions compose coherently",
    "pointed-factorization": "a pointed map factors as surjection then injection",
    "pointed-rank-law": "the linear map is injective/surjective as the pointed map is surjective/injective",
    "pointed-functoriality": "the induced linear map reverses composition",
    "degree-window": "perverse-degree window of a pointed map",
    "composition-data": "splitting c = a + b - 1 with b' special for beta",
    "pullback-equivariance": "fibrewise multiplication respects monodromy and Galois",
    "poset-count": "reduced chain counts agree with brute force",
    "poset-initial": "the one-step chain is the unique initial element",
    "poset-connected": "the comparability graph is connected",
    "poset-order": "refinement is a partial order with bounded chain length",
    "smith-form": "Smith normal form and exact integer solving",
    "homotopy-soundness": "returned homotopies and refusal certificates verify",
    "vanishing-composite": "b - a + 1 cohomologically zero maps compose to zero",
    "vanishing-sharpness": "one cohomologically zero map need not be null-homotopic",
}


@dataclass
class Check:
    name: str
    anchor: str
    status: str  # pass | fail | skip
    cases: int = 0
    witness: Optional[dict] = None

    def to_obj(self) -> dict:
        out = {"name": self.name, "anchor": self.anchor, "status": self.status, "cases": self.cases}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class Recorder:
    """Collects checks; ``case`` returns False after the first failure of a check."""

    def __init__(self):
        self.checks: dict[str, Check] = {}

    def start(self, name: str, anchor: str) -> Check:
        if anchor not in ANCHORS:
            raise KeyError(f"unknown anchor {anchor!r}")
        chk = Check(name, anchor, "pass")
        self.checks[name] = chk
        return chk

    def sweep(self, name: str, anchor: str, cases: Iterable, predicate: Callable) -> Check:
        """Run ``predicate(*case)`` over the grid, stopping at the first failure."""
        chk = self.start(name, anchor)
        for case in cases:
            if not isinstance(case, tuple):
                case = (case,)
            chk.cases += 1
            try:
                ok = predicate(*case)
            except Exception as exc:  # a crash is a failure with its message as witness
                chk.status = "fail"
                chk.witness = {"case": _jsonable(case), "error": f"{type(exc).__name__}: {exc}"}
                return chk
            if not ok:
                chk.status = "fail"
                chk.witness = {"case": _jsonable(case)}
                return chk
        return chk

    def skip(self, name: str, anchor: str, reason: str) -> Check:
        chk = self.start(name, anchor)
        chk.status = "skip"
        chk.witness = {"reason": reason}
        return chk

    def records(self) -> list[Check]:
        return [self.checks[k] for k in sorted(self.checks)]


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, PointedMap):
        return x.to_obj()
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    try:
        return format_exact(x)
    except TypeError:
        return str(x)


@dataclass
class SuiteConfig:
    l: Optional[int] = None
    a_max: int = 5
    r_max: int = 10
    t_max: int = 50
    n_range: tuple = (-3, 3)
    t_set: tuple = (Fraction(2), Fraction(1, 3), Fraction(3))
    seed: int = 0
    p_size: int = 3
    p_max: int = 3
    instances: int = 100

    def fields(self) -> list[CoeffField]:
        return [QQ] + ([PrimeField(self.l)] if self.l else [])

    def n_values(self) -> list[int]:
        return list(range(self.n_range[0], self.n_range[1] + 1))

    def units(self, field: CoeffField) -> list:
        """Members of ``t_set`` that are units for ``field``."""
        out = []
        for t in self.t_set:
            t = Fraction(t)
            if t == 0:
                continue
            if field.characteristic and (t.numerator % field.characteristic == 0 or t.denominator % field.characteristic == 0):
                continue
            out.append(t)
        return out


# -- binomial calculus -------------------------------------------------------------


def rescale_suite(cfg: SuiteConfig, rec: Recorder) -> dict:
    r_max, t_max = cfg.r_max, cfg.t_max
    grid = [(r, t) for r in range(r_max + 1) for t in range(t_max + 1)]

    def integral(r, t):
        return all(tpoly_eval(p, Fraction(t)).denominator == 1 for p in rescale_coeffs_basis(r))

    def agree(r, t):
        return [tpoly_eval(p, Fraction(t)) for p in rescale_coeffs_basis(r)] == rescale_coeffs_recursive(r, t)

    rec.sweep("rescale.integrality", "rescale-integrality", grid, integral)
    rec.sweep("rescale.two-routes", "rescale-two-routes", grid, agree)

    def endpoints(r, t):
        row = rescale_coeffs_basis(r)
        t = Fraction(t)
        return tpoly_eval(row[r], t) == t**r and tpoly_eval(row[0], t) == (1 if r == 0 else 0)

    ts = [Fraction(t) for t in range(-5, 6)] + [Fraction(1, 2), Fraction(-2, 3)]
    rec.sweep("rescale.endpoints", "rescale-endpoints", [(r, t) for r in range(r_max + 1) for t in ts], endpoints)
    rec.sweep(
        "rescale.c21",
        "rescale-c21",
        ts,
        lambda t: tpoly_eval(rescale_coeffs_basis(2)[1], t) == (t * t - t) / 2,
    )

    def product(r, s):
        # sample x = 0..r+s: both sides are polynomials of degree <= r+s
        p = delta_product(r, s)
        return all(p(x) == comb(x, r) * comb(x, s) for x in range(r + s + 1)) and all(
            c == factorial(r + s - i) // (factorial(r - i) * factorial(s - i) * factorial(i))
            for i, c in ((r + s - k, c) for k, c in enumerate(p.coeffs) if k >= max(r, s))
        )

    rec.sweep("binomial.product", "binomial-product", [(r, s) for r in range(9) for s in range(9)], product)

    def criterion(coords):
        poly = BinomialPoly(tuple(Fraction(c) for c in coords))
        return is_z_closed_exact(poly) == all(Fraction(c).denominator == 1 for c in coords) and (
            is_z_closed(poly, 2 * len(coords) + 2) == is_z_closed_exact(poly)
        )

    samples = [(1, 2), (0, Fraction(1, 2)), (3, -1, 4), (0, 0, Fraction(1, 3)), (Fraction(5, 2), 1, 1, 1)]
    rec.sweep("binomial.z-closed", "z-closed-criterion", [(s,) for s in samples], criterion)
    return {"rescale_table": RescaleTable.build(min(r_max, 4)).to_obj()}


# -- Jordan modules ---------------------------------------------------------------


def _mat_pow(m, k, field):
    return mx.matpow(m, k, field.one, field.zero)


def jordan_suite(cfg: SuiteConfig, rec: Recorder, witness: Optional[int] = None) -> dict:
    a_max = cfg.a_max
    ns = cfg.n_values()
    result = {}
    for field in cfg.fields():
        tag = field_name(field)
        one, zero = field.one, field.zero
        dims = range(1, a_max + 1)
        units = cfg.units(field)

        def independent(a):
            return mx.rank(evaluation_matrix(a, field)) == a

        rec.sweep(f"jordan.{tag}.independence", "jordan-independence", dims, independent)

        def unipotent(a, n):
            m = monodromy_matrix(a, n, field)
            nil = mx.sub(m, mx.identity(a, one, zero))
            return mx.is_zero(_mat_pow(nil, a, field))

        rec.sweep(f"jordan.{tag}.unipotence", "jordan-unipotence", [(a, n) for a in dims for n in ns], unipotent)

        def group_law(a, m, n):
            lhs = mx.matmul(monodromy_matrix(a, m, field), monodromy_matrix(a, n, field))
            return mx.equal(mx.convert(lhs, field), monodromy_matrix(a, m + n, field))

        rec.sweep(f"jordan.{tag}.group-law", "jordan-group-law", [(a, m, n) for a in dims for m in ns for n in ns], group_law)

        def gen_change(a, u, v):
            cu, cv = change_of_generator_matrix(a, u, field), change_of_generator_matrix(a, v, field)
            if mx.rank(cu) != a:
                return False
            return mx.equal(mx.convert(mx.matmul(cu, cv), field), change_of_generator_matrix(a, u * v, field))

        grid = [(a, u, v) for a in dims for u in units for v in units]
        rec.sweep(f"jordan.{tag}.generator-change", "jordan-generator-change", grid, gen_change)

        def galois(a, t, s):
            lhs = mx.convert(mx.matmul(galois_matrix(a, t, field), galois_matrix(a, s, field)), field)
            diag_ok = all(galois_matrix(a, t, field)[r][r] == field(t) ** r for r in range(a))
            return diag_ok and mx.equal(lhs, galois_matrix(a, t * s, field))

        rec.sweep(f"jordan.{tag}.galois", "jordan-galois", grid, galois)

        def ses(a, n, t):
            inc = ses_inclusion(a, field)
            if not (inc.is_monodromy_equivariant(n) and inc.is_galois_equivariant(t)):
                return False
            return galois_matrix(a, t, field)[a - 1][a - 1] == field(t) ** (a - 1)

        sgrid = [(a, n, t) for a in range(2, a_max + 1) for n in ns for t in units]
        rec.sweep(f"jordan.{tag}.ses", "jordan-ses", sgrid, ses)

        def mult(a, b):
            mm = mult_map(a, b, field)
            if mx.rank(mm.matrix) < max(a, b):
                return False
            if not mx.equal(mm.matrix, mx.convert(mult_map_oracle(a, b, field), field)):
                return False
            # image contains L_max(a,b): the inclusion's columns lie in the column span
            inc = inclusion(max(a, b), a + b - 1, field).matrix
            both = [r1 + r2 for r1, r2 in zip(mm.matrix, inc)]
            if mx.rank(both) != mx.rank(mm.matrix):
                return False
            return all(mm.is_monodromy_equivariant(n) for n in ns) and all(mm.is_galois_equivariant(t) for t in units)

        mdims = range(1, a_max + 1)
        rec.sweep(f"jordan.{tag}.mult", "jordan-mult", [(a, b) for a in mdims for b in mdims], mult)

        def chain(a, b):
            m = mx.identity(a, one, zero)
            for k in range(a + 1, b + 1):
                m = mx.matmul(ses_inclusion(k, field).matrix, m)
            if not mx.equal(mx.convert(m, field), inclusion(a, b, field).matrix):
                return False
            for mid in range(a, b + 1):
                comp = mx.matmul(inclusion(mid, b, field).matrix, inclusion(a, mid, field).matrix)
                if not mx.equal(mx.convert(comp, field), inclusion(a, b, field).matrix):
                    return False
            return True

        rec.sweep(
            f"mult.{tag}.inclusions",
            "mult-inclusions",
            [(a, b) for a in range(1, a_max + 2) for b in range(a, a_max + 2)],
            chain,
        )

        if field.characteristic:
            l = field.characteristic

            def continuity(a, k, n):
                return mx.equal(monodromy_matrix(a, n, field), monodromy_matrix(a, n + l**k, field))

            cgrid = [(a, k, n) for k in (1, 2) for a in range(1, min(a_max, l**k) + 1) for n in range(2 * l**k + 1)]
            rec.sweep(f"jordan.{tag}.continuity", "jordan-continuity", cgrid, continuity)
        else:

            def semidirect(a, u, m):
                t = Fraction(1, u)
                g = galois_matrix(a, t, field)
                lhs = mx.matmul(mx.matmul(g, monodromy_matrix(a, m, field)), mx.inverse(g))
                return mx.equal(lhs, monodromy_matrix(a, u * m, field))

            grid3 = [(a, u, m) for a in dims for u in (1, 2, 3, 5) for m in range(-2, 3)]
            rec.sweep(f"jordan.{tag}.semidirect", "jordan-semidirect", grid3, semidirect)
            rec.sweep(
                f"jordan.{tag}.nu-exp",
                "jordan-nu-exp",
                [(a, n) for a in dims for n in ns],
                lambda a, n: exp_structure_check(a, n),
            )

            def differentiation(a, b, t):
                d = partial_quotient_map(a, b)
                kernel = mx.kernel(d.matrix)
                # kernel equals span(phi_0..phi_{a-1})
                if len(kernel) != a or any(v[r] != 0 for v in kernel for r in range(a, b)):
                    return False
                lhs = mx.matmul(d.matrix, galois_matrix(b, t))
                rhs = mx.scale(t**a, mx.matmul(galois_matrix(b - a, t), d.matrix))
                return mx.equal(lhs, rhs) and d.is_galois_equivariant(t) and all(d.is_monodromy_equivariant(n) for n in ns)

            dgrid = [(a, b, t) for b in range(2, a_max + 1) for a in range(1, b) for t in units]
            rec.sweep(f"jordan.{tag}.differentiation", "jordan-differentiation", dgrid, differentiation)
            result["nu_basis_change"] = MatrixBundle(min(a_max, 3), QQ, "nu-basis-change", None, nu_basis_change(min(a_max, 3))).to_obj()
        result[f"monodromy_{tag}"] = MatrixBundle(min(a_max, 3), field, "monodromy", -1, monodromy_matrix(min(a_max, 3), -1, field)).to_obj()

    def frob(p):
        return mx.equal(nonsemisimple_witness(p), mx.convert([[1, 0, 0], [0, 1, 1], [0, 0, 1]], PrimeField(2)))

    rec.sweep("jordan.frobenius-witness", "frobenius-witness", [3, 7, 11, 19], frob)
    if witness is not None:
        result["witness"] = MatrixBundle(3, PrimeField(2), "galois", f"1/{witness}", nonsemisimple_witness(witness)).to_obj()
    return result


def mult_suite(cfg: SuiteConfig, rec: Recorder) -> dict:
    a_max = min(cfg.a_max, 4)
    out = {}
    for field in cfg.fields():
        tag = field_name(field)

        def assoc(dims):
            return mx.equal(iterated_mult(dims, field, "left").matrix, iterated_mult(dims, field, "right").matrix)

        grid = [(d,) for k in (2, 3) for d in itertools.product(range(1, a_max), repeat=k)]
        rec.sweep(f"mult.{tag}.associativity", "mult-associativity", grid, assoc)

        def square(a, b):
            # the top row of mult is binom(a+b-2, a-1) times the product of the top rows
            mm = mult_map(a, b, field)
            tq = mx.kron(top_quotient(a, field).matrix, top_quotient(b, field).matrix)
            lhs = mx.matmul(top_quotient(a + b - 1, field).matrix, mm.matrix)
            if not mx.equal(mx.convert(lhs, field), mx.convert(mx.scale(comb(a + b - 2, a - 1), tq), field)):
                return False
            if field.characteristic:
                return True
            # with leading-coefficient quotients the square commutes on the nose
            lq = mx.kron(leading_quotient(a).matrix, leading_quotient(b).matrix)
            return mx.equal(mx.matmul(leading_quotient(a + b - 1).matrix, mm.matrix), lq)

        rec.sweep(f"mult.{tag}.top-quotient", "mult-top-quotient", [(a, b) for a in range(1, a_max + 1) for b in range(1, a_max + 1)], square)
        out[f"mult_2_2_{tag}"] = MatrixBundle(3, field, "mult", [2, 2], mult_map(2, 2, field).matrix).to_obj()
    return out


# -- pointed maps ---------------------------------------------------------------------


def _labels(prefix: str, n: int) -> tuple:
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


def _pairs(p_max: int, q_max: int):
    for np_ in range(p_max + 1):
        for nq in range(q_max + 1):
            for alpha in all_pointed_maps(_labels("p", np_), _labels("q", nq)):
                yield alpha


def compose_suite(cfg: SuiteConfig, rec: Recorder, q_max: int = 3, r_max: int = 1, c_max: int = 4) -> dict:
    p_max = cfg.p_max

    def fact(alpha):
        a1, a2 = factorize(alpha)
        return compose(a2, a1) == alpha and a1.is_surjective() and (a2.is_injective() or not a2.source)

    maps = list(_pairs(p_max, p_max))
    rec.sweep("pointed.factorization", "pointed-factorization", maps, fact)

    def rank_law(alpha):
        m = linear_map_matrix(alpha)
        rows, cols = len(alpha.source), len(alpha.target)
        rk = mx.rank(m) if rows and cols else 0
        return (rk == cols) == alpha.is_surjective() and (rk == rows) == (alpha.is_injective() or rows == 0)

    rec.sweep("pointed.rank-law", "pointed-rank-law", maps, rank_law)

    def functorial(alpha, beta):
        lhs = linear_map_matrix(compose(beta, alpha))
        rows, cols = len(alpha.source), len(beta.target)
        rhs = mx.matmul(linear_map_matrix(alpha), linear_map_matrix(beta)) if alpha.target else mx.zeros(rows, cols)
        return mx.equal(lhs, rhs) if rows else True

    small = min(p_max, 3)

    def composable():
        for np_, nq, nr in itertools.product(range(small + 1), repeat=3):
            P, Q, R = _labels("p", np_), _labels("q", nq), _labels("r", nr)
            for alpha in all_pointed_maps(P, Q):
                for beta in all_pointed_maps(Q, R):
                    yield alpha, beta

    rec.sweep("pointed.functoriality", "pointed-functoriality", composable(), functorial)

    def window(alpha):
        P, Q = alpha.source, alpha.target
        hit = sum(1 for q in Q if any(alpha(p) == q for p in P))
        lo, hi = degree_window(alpha)
        ok = (lo, hi) == (len(Q) - len(P), len(Q) - hit) and lo <= hi
        if not Q:
            ok = ok and (lo, hi) == (-len(P), 0)
        return ok

    wmaps = list(_pairs(max(p_max, 4), max(p_max, 4))) if p_max >= 4 else maps
    rec.sweep("pointed.degree-window", "degree-window", wmaps, window)
    rec.sweep(
        "pointed.degree-window-classical",
        "degree-window",
        [PointedMap(("p",), (), (None,))],
        lambda a: degree_window(a) == (-1, 0),
    )

    def data_cases():
        for np_ in range(p_max + 1):
            for nq in range(q_max + 1):
                for nr in range(r_max + 1):
                    P, Q, R = _labels("p", np_), _labels("q", nq), _labels("r", nr)
                    for alpha in all_pointed_maps(P, Q):
                        for beta in all_pointed_maps(Q, R):
                            free = [i for i, q in enumerate(alpha.images) if q is None or beta(q) is None]
                            for vals in itertools.product(range(1, c_max + 1), repeat=len(free)):
                                c = [1] * np_
                                for i, v in zip(free, vals):
                                    c[i] = v
                                yield alpha, beta, tuple(c)

    def data_ok(alpha, beta, c):
        d = compose_data(c, alpha, beta)
        if not (is_special(d.a, alpha) and is_special(d.b_prime, beta)):
            return False
        if any(x + y - 1 != z for x, y, z in zip(d.a, d.b, d.c)):
            return False
        cval = dict(zip(alpha.source, c))
        for q, bq in zip(alpha.target, d.b_prime):
            fib = [p for p in alpha.source if alpha(p) == q]
            if beta(q) is None and bq != 1 - len(fib) + sum(cval[p] for p in fib):
                return False
            if beta(q) is not None and bq != 1:
                return False
        return True

    rec.sweep("pointed.composition-data", "composition-data", data_cases(), data_ok)

    fields = cfg.fields()
    ns = cfg.n_values()

    def pullbacks():
        for size in range(1, 4):
            for b in itertools.product(range(1, 4), repeat=size):
                P = _labels("p", size)
                yield PointedMap(P, ("q",), ("q",) * size), b
        # a mix of fibres, an empty fibre, and a label at the basepoint
        yield PointedMap(("p1", "p2", "p3"), ("q1", "q2", "q3"), ("q2", None, "q2")), (2, 3, 2)
        yield PointedMap(("p1", "p2"), ("q1", "q2"), ("q1", "q1")), (3, 2)

    def equivariant(alpha, b):
        for field in fields:
            if not all(diagonal_equivariance_check(alpha, b, n, field) for n in ns):
                return False
            if not all(galois_equivariance_check(alpha, b, t, field) for t in cfg.units(field)):
                return False
        return True

    rec.sweep("pointed.pullback-equivariance", "pullback-equivariance", pullbacks(), equivariant)
    example = compose_data((2, 3, 4), PointedMap((1, 2, 3), ("q",), ("q", "q", "q")), PointedMap(("q",), (), (None,)))
    return {"composition_example": example.to_obj()}


# -- refinement poset -------------------------------------------------------------------


def poset_suite(cfg: SuiteConfig, rec: Recorder, sizes: Optional[Iterable[int]] = None) -> dict:
    sizes = list(range(0, cfg.p_size + 1)) if sizes is None else list(sizes)
    posets = {n: enumerate_poset(tuple(range(1, n + 1))) for n in sizes}
    rec.sweep(
        "poset.count",
        "poset-count",
        sizes,
        lambda n: len(posets[n].nodes) == brute_force_count(tuple(range(1, n + 1))),
    )
    rec.sweep("poset.initial", "poset-initial", sizes, lambda n: check_initiality(posets[n]))
    rec.sweep("poset.connected", "poset-connected", sizes, lambda n: check_groupoid_connectivity(posets[n]))
    rec.sweep(
        "poset.order",
        "poset-order",
        sizes,
        lambda n: is_partial_order(posets[n]) and all(c.length <= n + 1 for c in posets[n].nodes),
    )
    top = posets[cfg.p_size] if cfg.p_size in posets else enumerate_poset(tuple(range(1, cfg.p_size + 1)))
    return {"counts": {str(n): len(posets[n].nodes) for n in sizes}, "hasse": top.to_hasse_obj()}


# -- vanishing ----------------------------------------------------------------------------


def vancrit_suite(cfg: SuiteConfig, rec: Recorder, widths=(0, 1, 2)) -> dict:
    from .homotopy.smith import Certificate, smith_decomposition, solve_integer
    from .homotopy.complexes import cohomology_defects, null_homotopy
    from .homotopy.vanishing import TWindow, bockstein_witness, generate_cohomologically_zero_instance, vancrit_check
    import numpy as np

    def smith_ok(case):
        m = np.array(case, dtype=object)
        sf = smith_decomposition(m)
        diag = sf.diagonal
        divides = all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1) if diag[i])
        return (sf.U @ m @ sf.V == sf.D).all() and divides

    rec.sweep(
        "homotopy.smith",
        "smith-form",
        [[[2]], [[2, 0], [0, 3]], [[0, 0], [0, 0]], [[4, 6], [6, 9]], [[1, 2, 3], [4, 5, 6], [7, 8, 10]]],
        smith_ok,
    )
    summary = {}
    for w in widths:
        window = TWindow(0, w)
        seeds = [cfg.seed * 100003 + i for i in range(cfg.instances)]
        not_null = []

        def composite(seed):
            inst = generate_cohomologically_zero_instance(window, seed)
            verdict = vancrit_check(inst.maps, window)
            if not null_homotopy(inst.maps[0]).exists:
                not_null.append(seed)
            return verdict.vanishes and verdict.homotopy.verify()

        rec.sweep(f"vanishing.width-{w}", "vanishing-composite", seeds, composite)
        summary[str(w)] = {"instances": len(seeds), "single_map_not_null_homotopic": len(not_null)}

    def sharp(k):
        f = bockstein_witness(k)
        res = null_homotopy(f)
        return not cohomology_defects(f) and not res.exists and res.verify()

    rec.sweep("vanishing.sharpness", "vanishing-sharpness", [-1, 0, 1, 2], sharp)
    witness = null_homotopy(bockstein_witness(0))
    summary["sharpness_witness"] = {"map": bockstein_witness(0).to_obj(), "homotopy": witness.to_obj()}
    return summary
