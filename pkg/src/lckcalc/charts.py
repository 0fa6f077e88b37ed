"""Pointwise Hermitian calculus on coordinate charts with jet metrics.

A MetricChart is a fundamental (1,1) form with jet coefficients,
positive definite at the base point.  It realizes the full operator
catalog exactly on jets: the Hodge star from the defining property
< a, b > vol = a ^ star(conj b), the Lefschetz pair, the wedge torsion
operators lam = (del omega) ^ . and lamb = (dbar omega) ^ ., their
commutator torsions tau and taub, Gram-matrix adjoints for every
zero-order operator, and star-conjugated adjoints for the first-order
ones (d* = -*d*, del* = -*dbar*, dbar* = -*del*).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import linalg
from .forms import merge_sign
from .identities import IDENTITY_CATALOG, apply_expr
from .jets import (
    CIndex,
    Jet,
    JetForm,
    dbar,
    exterior_d,
    exponent_tuples,
    jet_matrix_inverse,
    jet_wedge,
    partial,
)
from .scalars import GaussianRational, I, MINUS_I, ONE, ZERO, gr, parse_gaussian

DEFAULT_JET_ORDER = 3
DEFAULT_SEED = 20210608


class ChartError(ValueError):
    """Raised for invalid chart data."""


class NotLCKError(ChartError):
    """Raised when d(omega) is not divisible by omega at this jet."""


def _monomial_keys(n: int) -> List[CIndex]:
    """All complex basis monomials (I, J), degree-major then lex."""
    singles = list(range(1, n + 1))
    keys = []
    for p in range(n + 1):
        for q in range(n + 1):
            for zi in itertools.combinations(singles, p):
                for zbi in itertools.combinations(singles, q):
                    keys.append((zi, zbi))
    keys.sort(key=lambda k: (len(k[0]) + len(k[1]), k))
    return keys


def _key_degree(key: CIndex) -> int:
    return len(key[0]) + len(key[1])


def _det(rows: List[List[Jet]]) -> Jet:
    """Determinant of a small jet matrix by cofactor expansion."""
    size = len(rows)
    if size == 0:
        raise ValueError("empty determinant")
    if size == 1:
        return rows[0][0]
    first = rows[0]
    acc: Optional[Jet] = None
    for j, entry in enumerate(first):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = entry * _det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        exemplar = rows[0][0]
        return Jet.constant(exemplar.n, exemplar.order, ZERO)
    return acc


ZERO_ORDER_OPS = ("L", "Lam", "star", "lam", "lamb", "tau", "taub",
                  "lam_adj", "lamb_adj", "tau_adj", "taub_adj", "Lam_gram")
FIRST_ORDER_OPS = ("d", "del", "dbar", "d_adj", "del_adj", "dbar_adj")
OP_NAMES = ZERO_ORDER_OPS[:11] + FIRST_ORDER_OPS


class MetricChart:
    """Chart with an exact jet Hermitian metric, all operators pointwise."""

    def __init__(self, name: str, omega: JetForm):
        self.name = name
        self.n = omega.n
        self.order = omega.order
        if self.n < 2:
            raise ChartError("charts need complex dimension at least 2")
        if self.order < 1:
            raise ChartError("the metric jet must have order at least 1")
        for key in omega.terms:
            if (len(key[0]), len(key[1])) != (1, 1):
                raise ChartError("omega must be a (1,1) form")
        if omega.conjugate() != omega:
            raise ChartError("omega must be a real form")
        self.omega = omega
        # omega = i sum h[a][b] dz^{a+1} ^ dzbar^{b+1}
        zero_jet = Jet.constant(self.n, self.order, ZERO)
        self.h: List[List[Jet]] = [
            [
                omega.terms.get(((a,), (b,)), zero_jet).scale(MINUS_I)
                for b in range(1, self.n + 1)
            ]
            for a in range(1, self.n + 1)
        ]
        self._check_positive_definite()
        self.hinv = jet_matrix_inverse(self.h)
        vol = omega
        for _ in range(self.n - 1):
            vol = jet_wedge(vol, omega)
        factorial = 1
        for k in range(2, self.n + 1):
            factorial *= k
        self.vol = vol.scale(Fraction(1, factorial))
        top_key = (tuple(range(1, self.n + 1)), tuple(range(1, self.n + 1)))
        if set(self.vol.terms) != {top_key}:
            raise ChartError("volume form is degenerate at this jet")
        self._top_key = top_key
        self._vol_jet = self.vol.terms[top_key]
        self.keys = _monomial_keys(self.n)
        self._gram: Dict[Tuple[CIndex, CIndex], Jet] = {}
        self._matrices: Dict[str, Dict[CIndex, JetForm]] = {}
        self._gram_inv_blocks: Dict[int, List[List[Jet]]] = {}
        self.del_omega = partial(omega)
        self.dbar_omega = dbar(omega)

    # -- metric structure ---------------------------------------------------

    def _check_positive_definite(self) -> None:
        h0 = [[j.eval0() for j in row] for row in self.h]
        for a in range(self.n):
            for b in range(self.n):
                if h0[a][b] != h0[b][a].conjugate():
                    raise ChartError("metric is not Hermitian at the base point")
        for k in range(1, self.n + 1):
            sub = [row[:k] for row in h0[:k]]
            det = _det([[Jet.constant(self.n, 0, x) for x in row] for row in sub]).eval0()
            if det.im != 0 or det.re <= 0:
                raise ChartError("metric is not positive definite at the base point")

    def _pair_one_forms(self, a: int, b: int, barred: bool) -> Jet:
        # <dz^a, dz^b> = hinv[b][a]; <dzbar^a, dzbar^b> = hinv[a][b]
        if barred:
            return self.hinv[a - 1][b - 1]
        return self.hinv[b - 1][a - 1]

    def gram(self, s: CIndex, t: CIndex) -> Jet:
        """Pointwise inner product of basis monomials (jets)."""
        cached = self._gram.get((s, t))
        if cached is not None:
            return cached
        (si, sj), (ti, tj) = s, t
        if len(si) != len(ti) or len(sj) != len(tj):
            value = Jet.constant(self.n, self.order, ZERO)
        else:
            value = Jet.constant(self.n, self.order, ONE)
            if si:
                rows = [[self._pair_one_forms(u, v, False) for v in ti] for u in si]
                value = value * _det(rows)
            if sj:
                rows = [[self._pair_one_forms(u, v, True) for v in tj] for u in sj]
                value = value * _det(rows)
        self._gram[(s, t)] = value
        return value

    def pointwise_inner(self, a: JetForm, b: JetForm) -> Jet:
        """Hermitian pointwise inner product, linear in the first slot."""
        acc = Jet.constant(self.n, min(a.order, b.order), ZERO)
        for s, ja in a.terms.items():
            for t, jb in b.terms.items():
                g = self.gram(s, t)
                if g.is_zero():
                    continue
                acc = acc + ja * jb.conjugate() * g
        return acc

    def _complement(self, key: CIndex) -> Tuple[CIndex, int]:
        zi, zbi = key
        zc = tuple(a for a in range(1, self.n + 1) if a not in zi)
        zbc = tuple(a for a in range(1, self.n + 1) if a not in zbi)
        letters = tuple((0, a) for a in zi) + tuple((1, a) for a in zbi)
        letters_c = tuple((0, a) for a in zc) + tuple((1, a) for a in zbc)
        sign, merged = merge_sign(letters, letters_c)
        return (zc, zbc), sign

    # -- operator definitions -------------------------------------------------

    def star(self, a: JetForm) -> JetForm:
        """Hodge star: the unique form with u ^ star(a) = <u, conj a> vol."""
        out = JetForm.zero(self.n, a.order)
        conj_a = a.conjugate()
        for s in self.keys:
            comp, kappa = self._complement(s)
            unit = JetForm.monomial(self.n, a.order, s[0], s[1])
            coeff = self.pointwise_inner(unit, conj_a)
            if coeff.is_zero():
                continue
            coeff = coeff * self._vol_jet
            if kappa < 0:
                coeff = -coeff
            out = out + JetForm(self.n, a.order, {comp: coeff})
        return out

    def star_inverse(self, a: JetForm) -> JetForm:
        out = JetForm.zero(self.n, a.order)
        for k in a.degrees():
            part = self.star(a.degree_part(k))
            out = out + (part if k % 2 == 0 else -part)
        return out

    def _lefschetz(self, a: JetForm) -> JetForm:
        return jet_wedge(self.omega, a)

    def _lefschetz_dual(self, a: JetForm) -> JetForm:
        return self.star_inverse(self._lefschetz(self.star(a)))

    def _wedge_op(self, gamma: JetForm) -> Callable[[JetForm], JetForm]:
        return lambda a: jet_wedge(gamma, a)

    # zero-order operators get sparse matrices over the monomial basis

    def _matrix_of(self, name: str) -> Dict[CIndex, JetForm]:
        cached = self._matrices.get(name)
        if cached is not None:
            return cached
        fn = self._raw_zero_order(name)
        matrix = {}
        for key in self.keys:
            img = fn(JetForm.monomial(self.n, self.order, key[0], key[1]))
            if not img.is_zero():
                matrix[key] = img
        self._matrices[name] = matrix
        return matrix

    def _raw_zero_order(self, name: str) -> Callable[[JetForm], JetForm]:
        if name == "L":
            return self._lefschetz
        if name == "Lam":
            return self._lefschetz_dual
        if name == "star":
            return self.star
        if name == "lam":
            return self._wedge_op(self.del_omega)
        if name == "lamb":
            return self._wedge_op(self.dbar_omega)
        if name == "tau":
            return lambda a: self.apply("Lam", self.apply("lam", a)) - self.apply(
                "lam", self.apply("Lam", a)
            )
        if name == "taub":
            return lambda a: self.apply("Lam", self.apply("lamb", a)) - self.apply(
                "lamb", self.apply("Lam", a)
            )
        if name == "Lam_gram":
            return None  # built by _adjoint_matrix("L")
        if name.endswith("_adj"):
            return None  # built by _adjoint_matrix
        raise ValueError(f"unknown zero-order operator {name}")

    def _gram_inverse_block(self, degree: int) -> Tuple[List[CIndex], List[List[Jet]]]:
        basis = [k for k in self.keys if _key_degree(k) == degree]
        inv = self._gram_inv_blocks.get(degree)
        if inv is None:
            # A[u][v] = gram(v, u); solves <sum_v W_v Phi_v, Phi_u> = R_u
            a_mat = [[self.gram(v, u) for v in basis] for u in basis]
            inv = jet_matrix_inverse(a_mat)
            self._gram_inv_blocks[degree] = inv
        return basis, inv

    def _adjoint_matrix(self, base_name: str, shift: int) -> Dict[CIndex, JetForm]:
        """Gram adjoint of a zero-order operator of pure degree shift."""
        base = self._matrix_of(base_name)
        matrix: Dict[CIndex, JetForm] = {}
        for src_degree in range(0, 2 * self.n + 1):
            tgt_degree = src_degree - shift
            if tgt_degree < 0 or tgt_degree > 2 * self.n:
                continue
            src_basis = [k for k in self.keys if _key_degree(k) == src_degree]
            tgt_basis, a_inv = self._gram_inverse_block(tgt_degree)
            if not tgt_basis:
                continue
            # R_u(x) = <x, O Phi_u> = sum_S x_S sum_T conj(M[T][u]) gram(S, T)
            r_rows: List[List[Jet]] = []
            zero_jet = Jet.constant(self.n, self.order, ZERO)
            for u in tgt_basis:
                img = base.get(u)
                row = []
                for s_key in src_basis:
                    acc = zero_jet
                    if img is not None:
                        for t_key, jet in img.terms.items():
                            g = self.gram(s_key, t_key)
                            if g.is_zero():
                                continue
                            acc = acc + jet.conjugate() * g
                    row.append(acc)
                r_rows.append(row)
            # W = A^{-1} R: columns indexed by src monomials
            for col, s_key in enumerate(src_basis):
                terms: Dict[CIndex, Jet] = {}
                for vi, v_key in enumerate(tgt_basis):
                    acc = zero_jet
                    for ui in range(len(tgt_basis)):
                        if r_rows[ui][col].is_zero():
                            continue
                        acc = acc + a_inv[vi][ui] * r_rows[ui][col]
                    if not acc.is_zero():
                        terms[v_key] = acc
                if terms:
                    matrix[s_key] = JetForm(self.n, self.order, terms)
        return matrix

    _ADJOINT_SHIFTS = {
        "lam_adj": ("lam", 3),
        "lamb_adj": ("lamb", 3),
        "tau_adj": ("tau", 1),
        "taub_adj": ("taub", 1),
        "Lam_gram": ("L", 2),
    }

    def apply(self, name: str, a: JetForm) -> JetForm:
        """Apply a catalog operator to a jet form."""
        if a.is_zero():
            return a
        if name == "d":
            return exterior_d(a)
        if name == "del":
            return partial(a)
        if name == "dbar":
            return dbar(a)
        if name == "d_adj":
            return -self.star(exterior_d(self.star(a)))
        if name == "del_adj":
            return -self.star(dbar(self.star(a)))
        if name == "dbar_adj":
            return -self.star(partial(self.star(a)))
        if name in self._ADJOINT_SHIFTS:
            if name not in self._matrices:
                base, shift = self._ADJOINT_SHIFTS[name]
                self._matrices[name] = self._adjoint_matrix(base, shift)
            matrix = self._matrices[name]
        else:
            matrix = self._matrix_of(name)
        out = JetForm.zero(self.n, a.order)
        for key, jet in a.terms.items():
            img = matrix.get(key)
            if img is not None:
                out = out + img.scale_jet(jet)
        return out

    # -- Lee form --------------------------------------------------------------

    def lee_form(self) -> JetForm:
        """The unique 1-form theta with d(omega) = theta ^ omega, d theta = 0.

        Raises NotLCKError when no such closed 1-form exists at this jet.
        """
        d_omega = exterior_d(self.omega)
        order = d_omega.order
        target_keys = [k for k in self.keys if _key_degree(k) == 3]
        unknown_keys: List[CIndex] = [((a,), ()) for a in range(1, self.n + 1)]
        unknown_keys += [((), (a,)) for a in range(1, self.n + 1)]
        columns = []
        for key in unknown_keys:
            theta_unit = JetForm.monomial(self.n, order, key[0], key[1])
            wedge_form = jet_wedge(theta_unit, self.omega)
            columns.append(
                [wedge_form.terms.get(t, Jet.constant(self.n, order, ZERO)) for t in target_keys]
            )
        rows = [[columns[c][r] for c in range(len(unknown_keys))] for r in range(len(target_keys))]
        rhs = [d_omega.terms.get(t, Jet.constant(self.n, order, ZERO)) for t in target_keys]
        solution = _jet_linear_solve(rows, rhs, self.n, order)
        if solution is None:
            raise NotLCKError("d(omega) is not divisible by omega at this jet")
        theta = JetForm(
            self.n, order, {key: jet for key, jet in zip(unknown_keys, solution)}
        )
        if jet_wedge(theta, self.omega) != d_omega:
            raise NotLCKError("d(omega) is not divisible by omega at this jet")
        if not exterior_d(theta).is_zero():
            raise NotLCKError("the Lee form candidate is not closed at this jet")
        return theta

    # -- identity verification --------------------------------------------------

    def spanning_forms(self) -> List[JetForm]:
        """Monomial jet forms: every basis monomial times every polynomial
        monomial of total order up to order - 1."""
        out = []
        for key in self.keys:
            for exps in exponent_tuples(self.n, self.order - 1):
                jet = Jet.monomial(self.n, self.order, exps)
                out.append(JetForm(self.n, self.order, {key: jet}))
        return out

    def random_jet_forms(self, count: int, seed: int = DEFAULT_SEED) -> List[JetForm]:
        """Seeded pseudo-random jet forms; reproducible bit-exactly."""
        rng = random.Random(seed)
        exps = exponent_tuples(self.n, self.order)
        out = []
        for _ in range(count):
            terms: Dict[CIndex, Jet] = {}
            for key in rng.sample(self.keys, k=rng.randint(1, 3)):
                coeffs = {}
                for e in rng.sample(exps, k=rng.randint(1, 4)):
                    coeffs[e] = gr(
                        Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                        Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                    )
                jet = Jet(self.n, self.order, coeffs)
                if not jet.is_zero():
                    terms[key] = jet
            if terms:
                out.append(JetForm(self.n, self.order, terms))
        return out

    def identity_residual(self, identity_id: str, test_forms: Sequence[JetForm]) -> "Residual":
        """Max base-point residual of one catalog identity over test forms."""
        identity = IDENTITY_CATALOG.get(identity_id)
        if identity is None:
            raise KeyError(f"unknown identity id {identity_id!r}")
        worst = Fraction(0)
        witness = None
        for form in test_forms:
            lhs = apply_expr(identity.lhs, self.apply, form)
            rhs = apply_expr(identity.rhs, self.apply, form)
            if lhs is None and rhs is None:
                continue
            if lhs is None:
                diff = -rhs
            elif rhs is None:
                diff = lhs
            else:
                diff = lhs - rhs
            residual = diff.max_abs_at_base()
            if residual > worst:
                worst = residual
                witness = form
        return Residual(identity_id, self.name, worst, witness)

    def verify_identity(self, identity_id: str, trials: int = 0, seed: int = DEFAULT_SEED) -> "Residual":
        forms = self.spanning_forms()
        if trials:
            forms = forms + self.random_jet_forms(trials, seed)
        return self.identity_residual(identity_id, forms)


@dataclass
class Residual:
    identity_id: str
    chart: str
    max_abs: Fraction
    witness: Optional[JetForm] = None

    @property
    def is_zero(self) -> bool:
        return self.max_abs == 0


def _jet_linear_solve(
    rows: List[List[Jet]], rhs: List[Jet], n: int, order: int
) -> Optional[List[Jet]]:
    """Solve M x = b over the jet ring by order-by-order lifting.

    Works whenever the constant-term system is solvable at every order;
    returns None when some order is inconsistent.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    m0 = [[rows[i][j].eval0() for j in range(n_cols)] for i in range(n_rows)]
    exps = exponent_tuples(n, order)
    sol_coeffs: Dict[Tuple[int, ...], List[GaussianRational]] = {}
    for mu in exps:
        total = sum(mu)
        b_mu = [rhs[i].coeffs.get(mu, ZERO) for i in range(n_rows)]
        # subtract contributions of higher-order matrix entries times
        # lower-order solution coefficients
        for nu, x_nu in sol_coeffs.items():
            if any(a > b for a, b in zip(nu, mu)):
                continue
            rho = tuple(b - a for a, b in zip(nu, mu))
            if sum(rho) == 0:
                continue
            for i in range(n_rows):
                acc = b_mu[i]
                for j in range(n_cols):
                    entry = rows[i][j].coeffs.get(rho)
                    if entry is not None and x_nu[j]:
                        acc = acc - entry * x_nu[j]
                b_mu[i] = acc
        x_mu = linalg.solve(m0, b_mu)
        if x_mu is None:
            return None
        sol_coeffs[mu] = x_mu
    out = []
    for j in range(n_cols):
        coeffs = {mu: sol_coeffs[mu][j] for mu in exps if not sol_coeffs[mu][j].is_zero()}
        out.append(Jet(n, order, coeffs))
    return out


# -- chart catalog ------------------------------------------------------------


def flat_chart(n: int = 2, order: int = DEFAULT_JET_ORDER) -> MetricChart:
    """Flat Kaehler chart: omega = (i/2) sum dz^a ^ dzbar^a."""
    half_i = gr(0, Fraction(1, 2))
    terms = {((a,), (a,)): Jet.constant(n, order, half_i) for a in range(1, n + 1)}
    return MetricChart("flat", JetForm(n, order, terms))


def conformal_chart(n: int = 2, order: int = DEFAULT_JET_ORDER) -> MetricChart:
    """Conformally flat chart: omega = exp(z^1 + zbar^1) * omega_flat."""
    t = Jet.coordinate(n, order, 1) + Jet.coordinate(n, order, 1, barred=True)
    exp_t = Jet.constant(n, order, ONE)
    term = Jet.constant(n, order, ONE)
    for k in range(1, order + 1):
        term = term * t
        exp_t = exp_t + term.scale(Fraction(1, _factorial(k)))
    half_i = gr(0, Fraction(1, 2))
    terms = {
        ((a,), (a,)): exp_t.scale(half_i) for a in range(1, n + 1)
    }
    return MetricChart("conformal", JetForm(n, order, terms))


def hopf_chart(n: int = 2, order: int = DEFAULT_JET_ORDER) -> MetricChart:
    """Boothby-type chart: omega = i sum dz^a ^ dzbar^a / |z|^2,
    recentred so the base point sits at z = (1, 0, ..., 0)."""
    denom = Jet.constant(n, order, ONE)
    denom = denom + Jet.coordinate(n, order, 1) + Jet.coordinate(n, order, 1, barred=True)
    denom = denom + Jet.coordinate(n, order, 1) * Jet.coordinate(n, order, 1, barred=True)
    for a in range(2, n + 1):
        denom = denom + Jet.coordinate(n, order, a) * Jet.coordinate(n, order, a, barred=True)
    inv = denom.inverse()
    terms = {((a,), (a,)): inv.scale(I) for a in range(1, n + 1)}
    return MetricChart("hopf", JetForm(n, order, terms))


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


CHART_BUILDERS = {
    "flat": flat_chart,
    "conformal": conformal_chart,
    "hopf": hopf_chart,
}


def catalog_chart(name: str, n: int = 2, order: int = DEFAULT_JET_ORDER) -> MetricChart:
    try:
        builder = CHART_BUILDERS[name]
    except KeyError:
        raise ChartError(f"unknown chart {name!r}; available: {sorted(CHART_BUILDERS)}")
    return builder(n, order)


# -- chart files ---------------------------------------------------------------


def load_chart(path: str) -> MetricChart:
    """Read a chart definition file (JSON; see README for the schema)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ChartError(f"cannot read chart file: {exc}") from exc
    try:
        n = int(data["n"])
        order = int(data.get("order", DEFAULT_JET_ORDER))
        terms: Dict[CIndex, Jet] = {}
        for entry in data["omega"]:
            zi = tuple(int(x) for x in entry["dz"])
            zbi = tuple(int(x) for x in entry["dzbar"])
            coeffs = {}
            for exp_text, value_text in entry["jet"].items():
                exps = tuple(int(x) for x in exp_text.split(","))
                if len(exps) != 2 * n:
                    raise ChartError(
                        f"exponent tuple {exp_text!r} must have {2 * n} entries"
                    )
                coeffs[exps] = parse_gaussian(value_text)
            key = (zi, zbi)
            jet = Jet(n, order, coeffs)
            terms[key] = terms[key] + jet if key in terms else jet
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ChartError):
            raise
        raise ChartError(f"malformed chart file: {exc}") from exc
    name = str(data.get("name", "user-chart"))
    return MetricChart(name, JetForm(n, order, terms))
