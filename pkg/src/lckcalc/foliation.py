"""Vertical foliation and transversal calculus of a Vaisman model.

The Lee field and anti-Lee field span the vertical distribution; basic
(foliate) forms are the invariant forms annihilated by both contraction
and Lie derivative along it.  On basic forms the engine builds the
transversal differential with its Gram adjoint, the transversal
Lefschetz operator of omega' = -d(Jtheta), and the spaces of
transversally harmonic, transversally effective forms.

The exterior differential also splits by (transversal degree, leaf
degree) into components of types (1,0), (0,1) and (2,-1); the last one
is called d_V here.  Only its type bookkeeping is used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .complexes import InvariantComplex, StructureError
from .forms import Form, contract, wedge
from .models import ModelError
from .scalars import GaussianRational, ONE, ZERO, gr

Matrix = linalg.Matrix
Vector = linalg.Vector


@dataclass
class VaismanReport:
    """Outcome of the exact Vaisman structure checks."""

    model: str
    theta_parallel: bool
    theta_unit: bool
    jtheta_unit: bool
    theta_jtheta_orthogonal: bool
    lck_sign: Optional[int]
    omega_structure: bool  # omega == theta ^ Jtheta - d(Jtheta)
    omega_prime_basic: bool
    omega_prime_sign: Optional[int]  # s' with omega' = s' * 2i del(theta^{0,1})
    metric_splitting: bool
    d_split_types: bool  # d = d' + d'' + d_V with types (1,0),(0,1),(2,-1)
    adjoint_split_types: bool
    basic_no_leaf_component: bool

    @property
    def ok(self) -> bool:
        return all(
            [
                self.theta_parallel,
                self.theta_unit,
                self.jtheta_unit,
                self.theta_jtheta_orthogonal,
                self.lck_sign is not None,
                self.omega_structure,
                self.omega_prime_basic,
                self.omega_prime_sign is not None,
                self.metric_splitting,
                self.d_split_types,
                self.adjoint_split_types,
                self.basic_no_leaf_component,
            ]
        )


class Foliation:
    """Exact transversal calculus on the vertical foliation."""

    def __init__(self, ic: InvariantComplex):
        model = ic.model
        if model.theta_is_zero():
            raise ModelError("E-VAISMAN", "theta = 0: there is no vertical foliation")
        from .models import theta_norm_squared

        if theta_norm_squared(model) != 1:
            raise ModelError("E-VAISMAN", "the foliation calculus needs |theta| = 1")
        self.ic = ic
        self.model = model
        self.n = ic.n
        self.dim = ic.dim
        self.theta_vec = [gr(c) for c in model.theta]
        jtheta = ic._pullback_by_J(model.theta)
        self.jtheta_vec = [gr(c) for c in jtheta]
        self.theta_form = ic.theta_form
        self.jtheta_form = ic.jtheta_form
        self.omega_prime = -ic._d_form(ic.jtheta_form)
        self._build_basic_space()
        self._build_basic_operators()
        self._build_leaf_grading()

    # -- basic forms --------------------------------------------------------

    def _contraction_matrix(self, vector: Sequence[GaussianRational]) -> Matrix:
        return self.ic._matrix_of(lambda a: contract(a, list(vector)))

    def _build_basic_space(self) -> None:
        ic = self.ic
        d = ic.d.matrix
        self.i_theta = self._contraction_matrix(self.theta_vec)
        self.i_jtheta = self._contraction_matrix(self.jtheta_vec)
        conditions: Matrix = []
        for i_x in (self.i_theta, self.i_jtheta):
            lie = linalg.mat_add(
                linalg.mat_mul(i_x, d), linalg.mat_mul(d, i_x)
            )
            conditions.extend(i_x)
            conditions.extend(lie)
        self.basic_cols = linalg.nullspace(conditions)
        if not self.basic_cols:
            raise StructureError("the basic subcomplex is empty")
        self.basic_matrix = linalg.from_columns(self.basic_cols)
        self.basic_dim = len(self.basic_cols)

    def to_basic_coords(self, cols: Sequence[Vector]) -> Optional[Matrix]:
        if not cols:
            return []
        return linalg.solve_matrix(self.basic_matrix, linalg.from_columns(list(cols)))

    def _build_basic_operators(self) -> None:
        ic = self.ic
        d_image = linalg.mat_mul(ic.d.matrix, self.basic_matrix)
        d_basic = linalg.solve_matrix(self.basic_matrix, d_image)
        if d_basic is None:
            raise StructureError("d does not preserve the basic subcomplex")
        self.d_basic = d_basic
        gram = linalg.mat_mul(
            linalg.conj_transpose(self.basic_matrix), self.basic_matrix
        )
        self.gram_basic = gram
        self.gram_basic_inv = linalg.inverse(gram)
        self.delta_basic = self._basic_adjoint(d_basic)
        lp_image = linalg.mat_mul(
            ic._matrix_of(lambda a: wedge(self.omega_prime, a)), self.basic_matrix
        )
        lp_basic = linalg.solve_matrix(self.basic_matrix, lp_image)
        if lp_basic is None:
            raise StructureError("omega' wedge does not preserve basic forms")
        self.lefschetz_basic = lp_basic
        self.lefschetz_basic_adj = self._basic_adjoint(lp_basic)
        self.laplacian_basic = linalg.mat_add(
            linalg.mat_mul(self.d_basic, self.delta_basic),
            linalg.mat_mul(self.delta_basic, self.d_basic),
        )

    def _basic_adjoint(self, op: Matrix) -> Matrix:
        """Adjoint within the basic subspace for the restricted metric."""
        return linalg.mat_mul(
            self.gram_basic_inv,
            linalg.mat_mul(linalg.conj_transpose(op), self.gram_basic),
        )

    # -- transversally harmonic effective forms ------------------------------

    def basic_block(self, grade) -> List[Vector]:
        """Basic forms of a degree (int) or complex bidegree (p, q)."""
        ambient = self.ic.grade_basis(grade)
        return linalg.intersect_spans(self.basic_cols, ambient)

    def harmonic_effective(self, grade) -> Tuple[int, List[Form]]:
        """S-space of a grade: basic, transversally harmonic and effective."""
        block = self.basic_block(grade)
        if not block:
            return 0, []
        coords = self.to_basic_coords(block)
        if coords is None:
            raise StructureError("basic block is not inside the basic space")
        stacked: Matrix = []
        for cond in (self.d_basic, self.delta_basic, self.lefschetz_basic_adj):
            stacked.extend(linalg.mat_mul(cond, coords))
        null = linalg.nullspace(stacked)
        vectors = []
        for combo in null:
            v = [ZERO] * self.dim
            for c, col in zip(combo, block):
                if c:
                    v = [x + c * y for x, y in zip(v, col)]
            vectors.append(v)
        vectors = linalg.canonical_basis(vectors)
        return len(vectors), [self.ic.vector_to_form(v) for v in vectors]

    def transversal_dimensions(self) -> Dict[str, object]:
        """All s_k and s_{p,q} for k, p+q <= n-1, with the direct sum check."""
        cached = self.__dict__.get("_transversal_dimensions")
        if cached is not None:
            return cached
        n = self.n
        s_k: List[int] = []
        s_pq: Dict[Tuple[int, int], int] = {}
        bases_k: Dict[int, List[Form]] = {}
        bases_pq: Dict[Tuple[int, int], List[Form]] = {}
        direct_sum = True
        for k in range(n):
            dim_k, basis_k = self.harmonic_effective(k)
            s_k.append(dim_k)
            bases_k[k] = basis_k
            total = 0
            span_pq: List[Vector] = []
            for p in range(k + 1):
                q = k - p
                dim_pq, basis_pq = self.harmonic_effective((p, q))
                s_pq[(p, q)] = dim_pq
                bases_pq[(p, q)] = basis_pq
                total += dim_pq
                span_pq.extend(self.ic.form_to_vector(b) for b in basis_pq)
            if total != dim_k or not linalg.spans_equal(
                span_pq, [self.ic.form_to_vector(b) for b in basis_k]
            ):
                direct_sum = False
        result = {
            "s_k": s_k,
            "s_pq": s_pq,
            "bases_k": bases_k,
            "bases_pq": bases_pq,
            "direct_sum": direct_sum,
        }
        self.__dict__["_transversal_dimensions"] = result
        return result

    # -- leaf/transversal real bigrading (the d = d' + d'' + d_V split) -------

    def _build_leaf_grading(self) -> None:
        ic = self.ic
        dim2n = self.model.dim
        pairing = [
            [x for x in self.theta_vec],
            [x for x in self.jtheta_vec],
        ]
        horizontal = linalg.nullspace(pairing)
        if len(horizontal) != dim2n - 2:
            raise StructureError("horizontal coframe has the wrong dimension")
        vertical_forms = [self.theta_form, self.jtheta_form]
        horizontal_forms = [
            Form(ic.frame, {(i + 1,): c for i, c in enumerate(row) if not c.is_zero()})
            for row in horizontal
        ]
        blocks: Dict[Tuple[int, int], List[Vector]] = {}
        order: List[Vector] = []
        self.leaf_blocks: List[Tuple[int, int]] = []
        for trans in range(dim2n - 1):
            for leaf in range(3):
                cols: List[Vector] = []
                for vert_set in combinations(range(2), leaf):
                    for hor_set in combinations(range(dim2n - 2), trans):
                        term = ic.frame.one()
                        for vi in vert_set:
                            term = wedge(term, vertical_forms[vi])
                        for hi in hor_set:
                            term = wedge(term, horizontal_forms[hi])
                        if not term.is_zero():
                            cols.append(ic.form_to_vector(term))
                if cols:
                    blocks[(trans, leaf)] = cols
                    self.leaf_blocks.append((trans, leaf))
                    order.extend(cols)
        change = linalg.from_columns(order)
        change_inv = linalg.inverse(change)
        self.leaf_projector: Dict[Tuple[int, int], Matrix] = {}
        offset = 0
        for key in self.leaf_blocks:
            cols = blocks[key]
            block_mat = linalg.from_columns(cols)
            rows = change_inv[offset : offset + len(cols)]
            self.leaf_projector[key] = linalg.mat_mul(block_mat, rows)
            offset += len(cols)

    def _graded_piece(self, op: Matrix, dt: int, dl: int) -> Matrix:
        total = linalg.zeros(self.dim, self.dim)
        for (t, l) in self.leaf_blocks:
            target = self.leaf_projector.get((t + dt, l + dl))
            if target is None:
                continue
            total = linalg.mat_add(
                total,
                linalg.mat_mul(target, linalg.mat_mul(op, self.leaf_projector[(t, l)])),
            )
        return total

    def differential_split(self) -> Dict[str, Matrix]:
        """Components of d by (transversal, leaf) type; d_V is the (2,-1) one."""
        d = self.ic.d.matrix
        d_prime = self._graded_piece(d, 1, 0)
        d_dprime = self._graded_piece(d, 0, 1)
        d_v = self._graded_piece(d, 2, -1)
        return {"d_prime": d_prime, "d_dprime": d_dprime, "d_V": d_v}

    # -- the structure report -----------------------------------------------

    def structure_report(self) -> VaismanReport:
        from .models import levi_civita_parallel_theta, theta_norm_squared

        ic = self.ic
        model = self.model
        theta_unit = theta_norm_squared(model) == 1
        jtheta_norm = sum(
            (c * c.conjugate() for c in self.jtheta_vec), ZERO
        )
        jtheta_unit = jtheta_norm == ONE
        ortho = sum(
            (a * b.conjugate() for a, b in zip(self.theta_vec, self.jtheta_vec)),
            ZERO,
        ).is_zero()

        omega_structure = (
            ic.omega - wedge(self.theta_form, self.jtheta_form) + ic._d_form(self.jtheta_form)
        ).is_zero()

        # omega' must be basic
        op_vec = ic.form_to_vector(self.omega_prime)
        basic_ok = linalg.in_span(self.basic_cols, op_vec)

        # resolved sign s' with omega' = s' * 2i del(theta^{0,1});
        # equivalently s' = +1 for 2i dbar(theta^{1,0})
        theta01 = ic.project_pq(self.theta_form, 0, 1)
        del_theta01 = ic.vector_to_form(
            linalg.mat_vec(ic.ops["del"].matrix, ic.form_to_vector(theta01))
        )
        target = del_theta01.scale(gr(0, 2))
        sign: Optional[int] = None
        if (self.omega_prime - target).is_zero():
            sign = 1
        elif (self.omega_prime + target).is_zero():
            sign = -1

        metric_splitting = self._metric_splitting_ok()

        split = self.differential_split()
        total = linalg.mat_add(
            linalg.mat_add(split["d_prime"], split["d_dprime"]), split["d_V"]
        )
        d_split_types = linalg.mat_eq(total, ic.d.matrix)

        adj_ok = True
        for name, (dt, dl) in (
            ("d_prime", (-1, 0)),
            ("d_dprime", (0, -1)),
            ("d_V", (-2, 1)),
        ):
            adj = linalg.conj_transpose(split[name])
            if not linalg.mat_eq(self._graded_piece(adj, dt, dl), adj):
                adj_ok = False
        total_adj = linalg.conj_transpose(total)
        if not linalg.mat_eq(total_adj, linalg.conj_transpose(ic.d.matrix)):
            adj_ok = False

        leaf_raising = linalg.mat_mul(split["d_dprime"], self.basic_matrix)
        leaf_lowering = linalg.mat_mul(split["d_V"], self.basic_matrix)
        basic_no_leaf = linalg.is_zero_matrix(leaf_raising) and linalg.is_zero_matrix(
            leaf_lowering
        )

        return VaismanReport(
            model=model.name,
            theta_parallel=levi_civita_parallel_theta(model),
            theta_unit=theta_unit,
            jtheta_unit=jtheta_unit,
            theta_jtheta_orthogonal=ortho,
            lck_sign=ic.lck_sign,
            omega_structure=omega_structure,
            omega_prime_basic=basic_ok,
            omega_prime_sign=sign,
            metric_splitting=metric_splitting,
            d_split_types=d_split_types,
            adjoint_split_types=adj_ok,
            basic_no_leaf_component=basic_no_leaf,
        )

    def _metric_splitting_ok(self) -> bool:
        """g = (transversal part) + theta x theta + Jtheta x Jtheta, exactly:
        the complement is the orthogonal projection onto the horizontal
        distribution."""
        dim2n = self.model.dim
        proj = [
            [
                (ONE if i == j else ZERO)
                - self.theta_vec[i] * self.theta_vec[j]
                - self.jtheta_vec[i] * self.jtheta_vec[j]
                for j in range(dim2n)
            ]
            for i in range(dim2n)
        ]
        if not linalg.mat_eq(linalg.mat_mul(proj, proj), proj):
            return False
        if not linalg.mat_eq(linalg.transpose(proj), proj):
            return False
        if any(x for x in linalg.mat_vec(proj, self.theta_vec)):
            return False
        if any(x for x in linalg.mat_vec(proj, self.jtheta_vec)):
            return False
        return linalg.rank(proj) == dim2n - 2


def foliation_for(ic: InvariantComplex) -> Foliation:
    """Foliation data of a complex, memoized on the complex instance."""
    cached = ic.__dict__.get("_foliation")
    if cached is None:
        cached = Foliation(ic)
        ic.__dict__["_foliation"] = cached
    return cached
