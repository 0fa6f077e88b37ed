"""Exact operator calculus on the left-invariant form complex of a LieModel.

Every operator is a 2^{2n} x 2^{2n} matrix over the Gaussian rationals in
the monomial coframe basis e_S.  Adjoints are exact matrix adjoints for
the invariant inner product (the frame is orthonormal and integration
over the compact quotient is normalized away), Laplacians are built as
[delta, delta*], and kernels are computed by exact row reduction.

Conventions: the fundamental form is omega(X, Y) = g(X, JY); the (1,0)
coframe is the -i eigenspace of the pullback alpha -> alpha(J .), the
unique choice making omega = +(i/2) sum f^a ^ conj(f^a) (positive
metric coefficients), which is what the quoted signs of the twenty
operator identities require.  The anti-Lee form is J(theta) =
theta(J .).  With the catalog J these give omega = sum_a e^{2a-1} ^
e^{2a}, the (1,0) coframe e^{2a-1} + i e^{2a}, and the Vaisman
structure identity omega = theta ^ Jtheta - d(Jtheta) exactly; the
transversal form satisfies omega' = -d(Jtheta) = 2i dbar(theta^{1,0})
= -2i del(theta^{0,1}) in this labeling (see the foliation module).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .forms import (
    Form,
    HermitianFrame,
    Index,
    contract,
    form_to_vector,
    hodge_star,
    vector_to_form,
    wedge,
)
from .identities import IDENTITY_CATALOG, expr_matrix
from .models import LieModel, ModelError
from .scalars import GaussianRational, I, ONE, ZERO, gr

Matrix = linalg.Matrix
Vector = linalg.Vector


class StructureError(RuntimeError):
    """Internal inconsistency while assembling the operator suite."""


@dataclass
class GradedOperator:
    """An exact matrix operator on the invariant complex.

    degree_shift, when set, records that the operator maps k-forms to
    (k + shift)-forms;  blocks outside that pattern are zero.
    """

    name: str
    matrix: Matrix
    degree_shift: Optional[int] = None

    def adjoint(self, name: Optional[str] = None) -> "GradedOperator":
        shift = None if self.degree_shift is None else -self.degree_shift
        return GradedOperator(
            name or f"{self.name}_adj", linalg.conj_transpose(self.matrix), shift
        )

    def compose(self, other: "GradedOperator", name: str = "") -> "GradedOperator":
        shift = None
        if self.degree_shift is not None and other.degree_shift is not None:
            shift = self.degree_shift + other.degree_shift
        return GradedOperator(
            name or f"{self.name}*{other.name}",
            linalg.mat_mul(self.matrix, other.matrix),
            shift,
        )


class InvariantComplex:
    """The full exterior algebra of invariant forms with all operators."""

    def __init__(self, model: LieModel):
        self.model = model
        self.n = model.n
        self.frame = HermitianFrame(model.n)
        self.basis: List[Index] = self.frame.all_indices()
        self.dim = len(self.basis)
        self.position = {key: pos for pos, key in enumerate(self.basis)}
        self._d_cache: Dict[Index, Form] = {}

        self.omega = self._fundamental_form()
        self.volume = self._volume_and_orientation()
        self.theta_form = self._covector_form(model.theta)
        self.jtheta_form = self._covector_form(self._pullback_by_J(model.theta))

        self.d = GradedOperator("d", self._matrix_of(self._d_form), 1)
        if not linalg.is_zero_matrix(
            linalg.mat_mul(self.d.matrix, self.d.matrix)
        ):
            raise StructureError("d^2 != 0; structure constants are inconsistent")

        self._build_bigrading()
        self._build_operator_suite()
        self.lck_sign = self._solve_lck_sign()

    # -- scaffolding ------------------------------------------------------

    def _covector_form(self, coeffs: Sequence[Fraction]) -> Form:
        return Form(
            self.frame,
            {(i,): gr(c) for i, c in enumerate(coeffs, start=1) if c != 0},
        )

    def _pullback_by_J(self, coeffs: Sequence[Fraction]) -> List[Fraction]:
        """(alpha o J)_j = sum_i alpha_i J[i][j]; the 1-form J action."""
        J = self.model.J
        return [
            sum(coeffs[i] * J[i][j] for i in range(self.model.dim))
            for j in range(self.model.dim)
        ]

    def _fundamental_form(self) -> Form:
        J = self.model.J
        coeffs = {}
        for i in range(1, self.model.dim + 1):
            for j in range(i + 1, self.model.dim + 1):
                value = J[i - 1][j - 1]  # omega(E_i, E_j) = g(E_i, J E_j)
                if value != 0:
                    coeffs[(i, j)] = gr(value)
        return Form(self.frame, coeffs)

    def _volume_and_orientation(self) -> Form:
        vol = self.frame.one()
        for _ in range(self.n):
            vol = wedge(vol, self.omega)
        fact = 1
        for k in range(2, self.n + 1):
            fact *= k
        vol = vol.scale(Fraction(1, fact))
        top = tuple(range(1, self.model.dim + 1))
        coeff = vol.coefficient(top)
        if coeff == ONE:
            self.orientation = 1
        elif coeff == -ONE:
            self.orientation = -1
        else:
            raise StructureError(f"omega^n/n! = {coeff} vol; J is not compatible")
        return vol

    def form_to_vector(self, a: Form) -> Vector:
        return form_to_vector(a, self.basis)

    def vector_to_form(self, v: Vector) -> Form:
        return vector_to_form(self.frame, v, self.basis)

    def _matrix_of(self, fn) -> Matrix:
        cols = []
        for key in self.basis:
            cols.append(self.form_to_vector(fn(self.frame.basis_form(key))))
        return linalg.from_columns(cols)

    def star(self, a: Form) -> Form:
        return hodge_star(a, self.orientation)

    # -- the invariant differential ----------------------------------------

    def _d_one_form(self, k: int) -> Form:
        # d e^k = - sum_{i<j} c^k_{ij} e^i ^ e^j
        coeffs = {}
        for (i, j), comps in self.model.brackets.items():
            c = comps.get(k)
            if c:
                coeffs[(i, j)] = gr(-c)
        return Form(self.frame, coeffs)

    def _d_basis(self, key: Index) -> Form:
        cached = self._d_cache.get(key)
        if cached is not None:
            return cached
        if len(key) == 0:
            out = self.frame.zero()
        elif len(key) == 1:
            out = self._d_one_form(key[0])
        else:
            head, rest = key[0], key[1:]
            head_form = self.frame.basis_form((head,))
            out = wedge(self._d_one_form(head), self.frame.basis_form(rest))
            out = out - wedge(head_form, self._d_basis(rest))
        self._d_cache[key] = out
        return out

    def _d_form(self, a: Form) -> Form:
        out = self.frame.zero()
        for key, c in a.coeffs.items():
            out = out + self._d_basis(key).scale(c)
        return out

    # -- bigrading ------------------------------------------------------------

    def _build_bigrading(self) -> None:
        dim = self.model.dim
        # (1,0) covectors alpha satisfy alpha(J .) = -i alpha, i.e.
        # J^T a = -i a; this eigenspace makes the metric coefficients of
        # omega positive, matching the operator-identity sign conventions
        jt = [[gr(self.model.J[j][i]) for j in range(dim)] for i in range(dim)]
        eigen = [
            [jt[i][j] + (I if i == j else ZERO) for j in range(dim)]
            for i in range(dim)
        ]
        holo = linalg.nullspace(eigen)
        if len(holo) != self.n:
            raise ModelError("E-CPLX", "the (1,0) coframe does not have dimension n")
        self.holo_coframe: List[Form] = [
            Form(
                self.frame,
                {(i + 1,): c for i, c in enumerate(row) if not c.is_zero()},
            )
            for row in holo
        ]
        # monomial bases of each (p, q) block, columns over e_S coordinates
        self.pq_list: List[Tuple[int, int]] = []
        self.pq_basis: Dict[Tuple[int, int], List[Vector]] = {}
        order: List[Vector] = []
        for k in range(self.model.dim + 1):
            for p in range(k + 1):
                q = k - p
                if p > self.n or q > self.n:
                    continue
                cols = []
                for zi in combinations(range(self.n), p):
                    for zbi in combinations(range(self.n), q):
                        term = self.frame.one()
                        for a in zi:
                            term = wedge(term, self.holo_coframe[a])
                        for b in zbi:
                            term = wedge(term, self.holo_coframe[b].conjugate())
                        cols.append(self.form_to_vector(term))
                if cols:
                    self.pq_list.append((p, q))
                    self.pq_basis[(p, q)] = cols
                    order.extend(cols)
        change = linalg.from_columns(order)
        change_inv = linalg.inverse(change)
        self.projector: Dict[Tuple[int, int], Matrix] = {}
        offset = 0
        for pq in self.pq_list:
            cols = self.pq_basis[pq]
            block = linalg.from_columns(cols)
            rows = change_inv[offset : offset + len(cols)]
            self.projector[pq] = linalg.mat_mul(block, rows)
            offset += len(cols)

    def project_pq(self, a: Form, p: int, q: int) -> Form:
        proj = self.projector.get((p, q))
        if proj is None:
            return self.frame.zero()
        return self.vector_to_form(linalg.mat_vec(proj, self.form_to_vector(a)))

    # -- operator suite ---------------------------------------------------------

    def _graded_component(self, op: Matrix, dp: int, dq: int) -> Matrix:
        total = linalg.zeros(self.dim, self.dim)
        for (p, q) in self.pq_list:
            target = self.projector.get((p + dp, q + dq))
            if target is None:
                continue
            total = linalg.mat_add(
                total,
                linalg.mat_mul(target, linalg.mat_mul(op, self.projector[(p, q)])),
            )
        return total

    def _wedge_matrix(self, gamma: Form, name: str, shift: int) -> GradedOperator:
        return GradedOperator(
            name, self._matrix_of(lambda a: wedge(gamma, a)), shift
        )

    def _build_operator_suite(self) -> None:
        ops: Dict[str, GradedOperator] = {}
        ops["d"] = self.d
        del_matrix = self._graded_component(self.d.matrix, 1, 0)
        dbar_matrix = self._graded_component(self.d.matrix, 0, 1)
        if not linalg.mat_eq(
            linalg.mat_add(del_matrix, dbar_matrix), self.d.matrix
        ):
            raise ModelError(
                "E-INTEG", "d has components outside types (1,0) and (0,1)"
            )
        ops["del"] = GradedOperator("del", del_matrix, 1)
        ops["dbar"] = GradedOperator("dbar", dbar_matrix, 1)

        ops["L"] = self._wedge_matrix(self.omega, "L", 2)
        ops["Lam"] = ops["L"].adjoint("Lam")
        ops["H"] = GradedOperator(
            "H", linalg.commutator(ops["L"].matrix, ops["Lam"].matrix), 0
        )
        ops["star"] = GradedOperator("star", self._matrix_of(self.star), None)

        d_omega = self._d_form(self.omega)
        self.del_omega = self.project_pq(d_omega, 2, 1)
        self.dbar_omega = self.project_pq(d_omega, 1, 2)
        if not (d_omega - self.del_omega - self.dbar_omega).is_zero():
            raise StructureError("d(omega) has parts outside (2,1) + (1,2)")
        ops["lam"] = self._wedge_matrix(self.del_omega, "lam", 3)
        ops["lamb"] = self._wedge_matrix(self.dbar_omega, "lamb", 3)
        ops["tau"] = GradedOperator(
            "tau", linalg.commutator(ops["Lam"].matrix, ops["lam"].matrix), 1
        )
        ops["taub"] = GradedOperator(
            "taub", linalg.commutator(ops["Lam"].matrix, ops["lamb"].matrix), 1
        )
        for base in ("d", "del", "dbar", "lam", "lamb", "tau", "taub"):
            ops[f"{base}_adj"] = ops[base].adjoint()

        for base in ("d", "del", "dbar", "lam", "lamb", "tau", "taub"):
            lap = linalg.mat_add(
                linalg.mat_mul(ops[base].matrix, ops[f"{base}_adj"].matrix),
                linalg.mat_mul(ops[f"{base}_adj"].matrix, ops[base].matrix),
            )
            ops[f"lap_{base}"] = GradedOperator(f"lap_{base}", lap, 0)

        box = ops["lap_del"].matrix
        for name in ("lap_dbar", "lap_tau", "lap_taub", "lap_lam", "lap_lamb"):
            box = linalg.mat_add(box, ops[name].matrix)
        ops["box"] = GradedOperator("box", box, 0)

        theta_wedge = self._matrix_of(lambda a: wedge(self.theta_form, a))
        ops["theta_wedge"] = GradedOperator("theta_wedge", theta_wedge, 1)
        d_theta = linalg.mat_add(self.d.matrix, theta_wedge)
        ops["d_theta"] = GradedOperator("d_theta", d_theta, 1)
        ops["d_theta_adj"] = ops["d_theta"].adjoint()
        ops["lap_theta"] = GradedOperator(
            "lap_theta",
            linalg.mat_add(
                linalg.mat_mul(d_theta, ops["d_theta_adj"].matrix),
                linalg.mat_mul(ops["d_theta_adj"].matrix, d_theta),
            ),
            0,
        )
        self.ops = ops

    def operator(self, name: str) -> GradedOperator:
        return self.ops[name]

    def _solve_lck_sign(self) -> Optional[int]:
        """The sign s with (d - s theta ^ .) omega = 0, if one exists."""
        d_omega = self._d_form(self.omega)
        theta_omega = wedge(self.theta_form, self.omega)
        if (d_omega - theta_omega).is_zero():
            return 1
        if (d_omega + theta_omega).is_zero():
            return -1
        if self.model.theta_is_zero() and d_omega.is_zero():
            return 1
        return None

    @property
    def is_lck(self) -> bool:
        return self.lck_sign is not None and not self.model.theta_is_zero()

    # -- graded restriction and kernels -------------------------------------

    def degree_basis(self, k: int) -> List[Vector]:
        cols = []
        for key in self.frame.basis_indices(k):
            v = [ZERO] * self.dim
            v[self.position[key]] = ONE
            cols.append(v)
        return cols

    def grade_basis(self, grade) -> List[Vector]:
        """Coordinate basis of a degree k (int) or bidegree (p, q) block."""
        if isinstance(grade, tuple):
            return [list(col) for col in self.pq_basis.get(tuple(grade), [])]
        return self.degree_basis(grade)

    def kernel(self, op: GradedOperator, grade) -> Tuple[int, List[Form]]:
        """Exact kernel of an operator restricted to a graded block."""
        rows, cols = linalg.shape(op.matrix)
        if rows != self.dim or cols != self.dim:
            raise ValueError("operator matrix has the wrong shape")
        basis = self.grade_basis(grade)
        if not basis:
            return 0, []
        return self.kernel_on_span(op.matrix, basis)

    def kernel_on_span(
        self, matrix: Matrix, basis: Sequence[Vector]
    ) -> Tuple[int, List[Form]]:
        restricted = linalg.mat_mul(matrix, linalg.from_columns(list(basis)))
        null = linalg.nullspace(restricted)
        vectors = []
        for coeffs in null:
            v = [ZERO] * self.dim
            for c, col in zip(coeffs, basis):
                if c:
                    v = [x + c * y for x, y in zip(v, col)]
            vectors.append(v)
        vectors = linalg.canonical_basis(vectors)
        return len(vectors), [self.vector_to_form(v) for v in vectors]

    def joint_kernel_on_span(
        self, matrices: Sequence[Matrix], basis: Sequence[Vector]
    ) -> Tuple[int, List[Form]]:
        stacked: Matrix = []
        for m in matrices:
            stacked.extend(linalg.mat_mul(m, linalg.from_columns(list(basis))))
        null = linalg.nullspace(stacked)
        vectors = []
        for coeffs in null:
            v = [ZERO] * self.dim
            for c, col in zip(coeffs, basis):
                if c:
                    v = [x + c * y for x, y in zip(v, col)]
            vectors.append(v)
        vectors = linalg.canonical_basis(vectors)
        return len(vectors), [self.vector_to_form(v) for v in vectors]

    # -- reporting helpers ---------------------------------------------------

    def betti_numbers(self) -> List[int]:
        lap = self.ops["lap_d"]
        return [self.kernel(lap, k)[0] for k in range(self.model.dim + 1)]

    def morse_novikov_numbers(self) -> List[int]:
        lap = self.ops["lap_theta"]
        return [self.kernel(lap, k)[0] for k in range(self.model.dim + 1)]

    def hodge_numbers(self) -> Dict[Tuple[int, int], int]:
        lap = self.ops["lap_dbar"]
        return {pq: self.kernel(lap, pq)[0] for pq in self.pq_list}

    def box_numbers(self) -> Dict[Tuple[int, int], int]:
        box = self.ops["box"]
        return {pq: self.kernel(box, pq)[0] for pq in self.pq_list}

    def box_degree_numbers(self) -> List[int]:
        box = self.ops["box"]
        return [self.kernel(box, k)[0] for k in range(self.model.dim + 1)]

    def identity_residual(self, identity_id: str) -> Fraction:
        """Max entry of LHS - RHS of a catalog identity as matrices."""
        identity = IDENTITY_CATALOG[identity_id]
        mats = {name: op.matrix for name, op in self.ops.items()}
        lhs = expr_matrix(identity.lhs, mats, self.dim)
        rhs = expr_matrix(identity.rhs, mats, self.dim)
        diff = linalg.mat_sub(lhs, rhs)
        return max(
            (x.magnitude() for row in diff for x in row), default=Fraction(0)
        )

    def lemma_interior_vs_wedge_residual(self) -> Fraction:
        """Residual of star(i_theta a) = (-1)^(k-1) theta ^ star(a), all k."""
        theta_vec = [gr(c) for c in self.model.theta]
        worst = Fraction(0)
        for k in range(self.model.dim + 1):
            for key in self.frame.basis_indices(k):
                a = self.frame.basis_form(key)
                lhs = self.star(contract(a, theta_vec))
                rhs = wedge(self.theta_form, self.star(a))
                if (k - 1) % 2:
                    rhs = -rhs
                worst = max(worst, (lhs - rhs).max_abs())
        return worst


def complex_for(model: LieModel) -> InvariantComplex:
    """Invariant complex of a model, memoized on the model instance.

    Models are immutable after validation, so the complex is a pure
    function of the model; the cache only avoids rebuilding matrices.
    """
    cached = model.__dict__.get("_invariant_complex")
    if cached is None:
        cached = InvariantComplex(model)
        model.__dict__["_invariant_complex"] = cached
    return cached
