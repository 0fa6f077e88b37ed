"""Exact exterior algebra of a Hermitian vector space of complex dimension n.

The real coframe e^1, ..., e^{2n} is orthonormal, the complex structure
acts on it as J e^{2a-1} = e^{2a}, J e^{2a} = -e^{2a-1}, and the
fundamental form is omega = sum_a e^{2a-1} ^ e^{2a}.  The (p, q)
bigrading is taken with respect to the complex coframe

    dz^a = e^{2a-1} + i e^{2a},      dzbar^a = e^{2a-1} - i e^{2a}

(no 1/2 in dz).  The inner product is Hermitian, linear in the first
slot, and the Hodge star is the C-linear operator fixed by

    <a, b> vol = a ^ star(conj(b)),      vol = omega^n / n!.

All scalars are Gaussian rationals; every operation here is exact.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .scalars import GaussianRational, I, MINUS_I, ONE, ZERO, gr
from . import linalg

Index = Tuple[int, ...]

DEFAULT_MAX_N = 4  # 2^(2n) basis monomials; everything needed fits in n <= 4


class FrameMismatchError(ValueError):
    """Raised when two forms over different frames are combined."""


class HermitianFrame:
    """Orthonormal real coframe of a Hermitian vector space, complex dim n."""

    def __init__(self, n: int, max_n: int = DEFAULT_MAX_N):
        if n < 2:
            raise ValueError("complex dimension must be at least 2")
        if n > max_n:
            raise ValueError(f"complex dimension {n} exceeds the cap {max_n}")
        self.n = n
        self.dim = 2 * n
        self._primitive_cache: Dict[int, List[linalg.Vector]] = {}

    def __eq__(self, other) -> bool:
        return isinstance(other, HermitianFrame) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("HermitianFrame", self.n))

    def __repr__(self) -> str:
        return f"HermitianFrame(n={self.n})"

    def basis_indices(self, k: int) -> List[Index]:
        return [tuple(c) for c in itertools.combinations(range(1, self.dim + 1), k)]

    def all_indices(self) -> List[Index]:
        out: List[Index] = []
        for k in range(self.dim + 1):
            out.extend(self.basis_indices(k))
        return out

    def basis_form(self, indices: Iterable[int]) -> "Form":
        key = tuple(indices)
        if list(key) != sorted(set(key)):
            raise ValueError(f"basis indices must be strictly increasing, got {key}")
        if key and (key[0] < 1 or key[-1] > self.dim):
            raise ValueError(f"basis index out of range 1..{self.dim}: {key}")
        return Form(self, {key: ONE})

    def zero(self) -> "Form":
        return Form(self, {})

    def one(self) -> "Form":
        return Form(self, {(): ONE})

    def omega(self) -> "Form":
        coeffs = {(2 * a - 1, 2 * a): ONE for a in range(1, self.n + 1)}
        return Form(self, coeffs)

    def volume(self) -> "Form":
        return Form(self, {tuple(range(1, self.dim + 1)): ONE})


def merge_sign(a: Sequence, b: Sequence) -> Tuple[int, Optional[Tuple]]:
    """Sign and result of wedging two sorted index tuples; 0 on a repeat."""
    if set(a) & set(b):
        return 0, None
    merged = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining len(a) - i letters of a
            if (len(a) - i) % 2:
                sign = -sign
            merged.append(b[j])
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return sign, tuple(merged)


def complement_sign(indices: Index, dim: int) -> Tuple[Index, int]:
    """Complement S^c and the sign making e_S ^ e_{S^c} = sign * e_{1..2n}."""
    s = set(indices)
    comp = tuple(i for i in range(1, dim + 1) if i not in s)
    sign, merged = merge_sign(indices, comp)
    assert merged == tuple(range(1, dim + 1))
    return comp, sign


class Form:
    """A complex-valued form: sparse coefficients over basis monomials e_S."""

    __slots__ = ("frame", "coeffs")

    def __init__(self, frame: HermitianFrame, coeffs: Dict[Index, GaussianRational]):
        self.frame = frame
        self.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}

    # -- ring structure ----------------------------------------------------

    def _check(self, other: "Form") -> None:
        if self.frame != other.frame:
            raise FrameMismatchError(
                f"forms over different frames: {self.frame} vs {other.frame}"
            )

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return Form(self.frame, out)

    def __sub__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) - v
        return Form(self.frame, out)

    def __neg__(self) -> "Form":
        return Form(self.frame, {k: -v for k, v in self.coeffs.items()})

    def scale(self, c) -> "Form":
        c = GaussianRational.of(c)
        return Form(self.frame, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, c) -> "Form":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form)
            and other.frame == self.frame
            and other.coeffs == self.coeffs
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def conjugate(self) -> "Form":
        return Form(self.frame, {k: v.conjugate() for k, v in self.coeffs.items()})

    def coefficient(self, indices: Iterable[int]) -> GaussianRational:
        return self.coeffs.get(tuple(indices), ZERO)

    def max_abs(self) -> Fraction:
        """Largest coefficient magnitude; exact zero iff the form is zero."""
        return max((v.magnitude() for v in self.coeffs.values()), default=Fraction(0))

    # -- grading -----------------------------------------------------------

    def degrees(self) -> List[int]:
        return sorted({len(k) for k in self.coeffs})

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"form is not homogeneous (degrees {degs})")
        return degs[0]

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree_part(self, k: int) -> "Form":
        return Form(self.frame, {s: v for s, v in self.coeffs.items() if len(s) == k})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Form(0)"
        bits = []
        for k in sorted(self.coeffs, key=lambda s: (len(s), s)):
            name = "^".join(f"e{i}" for i in k) if k else "1"
            bits.append(f"({self.coeffs[k]})*{name}")
        return "Form(" + " + ".join(bits) + ")"


# -- operations ---------------------------------------------------------------


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; graded-commutative and exact."""
    a._check(b)
    out: Dict[Index, GaussianRational] = {}
    for s, u in a.coeffs.items():
        for t, v in b.coeffs.items():
            sign, merged = merge_sign(s, t)
            if sign == 0:
                continue
            c = u * v if sign > 0 else -(u * v)
            acc = out.get(merged, ZERO) + c
            if acc.is_zero():
                out.pop(merged, None)
            else:
                out[merged] = acc
    return Form(a.frame, out)


def inner_product(a: Form, b: Form) -> GaussianRational:
    """Hermitian inner product, linear in the first slot (orthonormal frame)."""
    a._check(b)
    acc = ZERO
    for s, u in a.coeffs.items():
        v = b.coeffs.get(s)
        if v is not None:
            acc = acc + u * v.conjugate()
    return acc


def hodge_star(a: Form, orientation: int = 1) -> Form:
    """C-linear Hodge star of a homogeneous form.

    The orientation flag is the sign of vol relative to e^{1...2n}; the
    canonical frame always uses +1.
    """
    if not a.is_homogeneous():
        raise ValueError("hodge_star requires a homogeneous form")
    out: Dict[Index, GaussianRational] = {}
    for s, u in a.coeffs.items():
        comp, sign = complement_sign(s, a.frame.dim)
        c = u if sign * orientation > 0 else -u
        out[comp] = out.get(comp, ZERO) + c
    return Form(a.frame, out)


def hodge_star_inverse(a: Form, orientation: int = 1) -> Form:
    """Inverse star; on a k-form in real dimension 2n this is (-1)^k star."""
    if a.is_zero():
        return a
    out = a.frame.zero()
    for k in a.degrees():
        part = hodge_star(a.degree_part(k), orientation)
        out = out + (part if k % 2 == 0 else -part)
    return out


def lefschetz_L(a: Form) -> Form:
    """Wedge with the fundamental form; raises degree by two."""
    return wedge(a.frame.omega(), a)


def lefschetz_Lambda(a: Form, orientation: int = 1) -> Form:
    """Adjoint of L, realized as star^{-1} L star (degree -2)."""
    if a.is_zero():
        return a
    out = a.frame.zero()
    for k in a.degrees():
        part = a.degree_part(k)
        out = out + hodge_star_inverse(
            lefschetz_L(hodge_star(part, orientation)), orientation
        )
    return out


def counting_H(a: Form) -> Form:
    """The sl(2) counting operator: (k - n) * id on homogeneous k-forms."""
    if a.is_zero():
        return a
    k = a.degree()
    return a.scale(gr(k - a.frame.n))


def contract(a: Form, vector: Sequence) -> Form:
    """Interior product with a frame vector sum_j vector[j-1] E_j."""
    coeffs = [GaussianRational.of(c) for c in vector]
    if len(coeffs) != a.frame.dim:
        raise ValueError("vector length must equal the real dimension")
    out: Dict[Index, GaussianRational] = {}
    for s, u in a.coeffs.items():
        for pos, idx in enumerate(s):
            c = coeffs[idx - 1]
            if c.is_zero():
                continue
            rest = s[:pos] + s[pos + 1 :]
            val = u * c if pos % 2 == 0 else -(u * c)
            acc = out.get(rest, ZERO) + val
            if acc.is_zero():
                out.pop(rest, None)
            else:
                out[rest] = acc
    return Form(a.frame, out)


# -- bigrading via the canonical complex coframe ------------------------------

# A complex monomial is (I, J): indices of dz factors and dzbar factors.
CIndex = Tuple[Index, Index]


@lru_cache(maxsize=None)
def _complex_to_real(n: int, I: Index, J: Index) -> Tuple[Tuple[Index, GaussianRational], ...]:
    """Expansion of dz^I ^ dzbar^J over the real basis monomials."""
    frame = HermitianFrame(n)
    result = frame.one()
    for a in I:
        dz = Form(frame, {(2 * a - 1,): ONE, (2 * a,): I_GR})
        result = wedge(result, dz)
    for a in J:
        dzb = Form(frame, {(2 * a - 1,): ONE, (2 * a,): MINUS_I_GR})
        result = wedge(result, dzb)
    return tuple(result.coeffs.items())


I_GR = I
MINUS_I_GR = MINUS_I


@lru_cache(maxsize=None)
def _real_to_complex(n: int, S: Index) -> Tuple[Tuple[CIndex, GaussianRational], ...]:
    """Expansion of e_S over complex monomials dz^I ^ dzbar^J."""
    # wedge in the letter algebra: letters (0, a) for dz^a, (1, a) for dzbar^a
    half = gr(Fraction(1, 2))
    minus_i_half = gr(0, Fraction(-1, 2))
    terms: Dict[Tuple[Tuple[int, int], ...], GaussianRational] = {(): ONE}
    for idx in S:
        a = (idx + 1) // 2
        if idx % 2 == 1:
            pieces = [(((0, a),), half), (((1, a),), half)]
        else:
            pieces = [(((0, a),), minus_i_half), (((1, a),), -minus_i_half)]
        new_terms: Dict[Tuple[Tuple[int, int], ...], GaussianRational] = {}
        for word, c in terms.items():
            for letter, lc in pieces:
                sign, merged = merge_sign(word, letter)
                if sign == 0:
                    continue
                val = c * lc if sign > 0 else -(c * lc)
                acc = new_terms.get(merged, ZERO) + val
                if acc.is_zero():
                    new_terms.pop(merged, None)
                else:
                    new_terms[merged] = acc
        terms = new_terms
    # letters stay sorted by (kind, index), so I and J come out sorted
    out = []
    for word, c in terms.items():
        Ipart = tuple(a for kind, a in word if kind == 0)
        Jpart = tuple(a for kind, a in word if kind == 1)
        out.append(((Ipart, Jpart), c))
    return tuple(out)


def complex_components(a: Form) -> Dict[CIndex, GaussianRational]:
    """Coefficients of a over the complex monomial basis dz^I ^ dzbar^J."""
    out: Dict[CIndex, GaussianRational] = {}
    for s, u in a.coeffs.items():
        for key, c in _real_to_complex(a.frame.n, s):
            acc = out.get(key, ZERO) + u * c
            if acc.is_zero():
                out.pop(key, None)
            else:
                out[key] = acc
    return out


def from_complex_components(
    frame: HermitianFrame, comps: Dict[CIndex, GaussianRational]
) -> Form:
    out = frame.zero()
    for (Ipart, Jpart), c in comps.items():
        coeffs = dict(_complex_to_real(frame.n, Ipart, Jpart))
        out = out + Form(frame, coeffs).scale(c)
    return out


def bidegree_split(a: Form) -> Dict[Tuple[int, int], Form]:
    """Decompose into (p, q) parts; the parts sum back to a exactly."""
    buckets: Dict[Tuple[int, int], Dict[CIndex, GaussianRational]] = {}
    for key, c in complex_components(a).items():
        pq = (len(key[0]), len(key[1]))
        buckets.setdefault(pq, {})[key] = c
    return {
        pq: from_complex_components(a.frame, comps) for pq, comps in buckets.items()
    }


def bidegree_project(a: Form, p: int, q: int) -> Form:
    return bidegree_split(a).get((p, q), a.frame.zero())


def bidegree(a: Form) -> Optional[Tuple[int, int]]:
    """The (p, q) bidegree if a is bihomogeneous, else None."""
    parts = bidegree_split(a)
    if len(parts) == 1:
        return next(iter(parts))
    return None


# -- primitive forms and the Lefschetz decomposition --------------------------


def primitive_test(a: Form) -> bool:
    """Whether Lambda a = 0; defined for forms of degree at most n."""
    if a.is_zero():
        return True
    k = a.degree()
    if k > a.frame.n:
        raise ValueError(f"primitive forms have degree <= n, got degree {k}")
    return lefschetz_Lambda(a).is_zero()


def form_to_vector(a: Form, basis: Sequence[Index]) -> linalg.Vector:
    return [a.coeffs.get(s, ZERO) for s in basis]


def vector_to_form(frame: HermitianFrame, v: linalg.Vector, basis: Sequence[Index]) -> Form:
    return Form(frame, {s: c for s, c in zip(basis, v) if not c.is_zero()})


def operator_matrix(frame: HermitianFrame, fn, src_deg: int, dst_deg: int) -> linalg.Matrix:
    """Matrix of a linear operator between degree blocks of the basis."""
    src = frame.basis_indices(src_deg)
    dst = frame.basis_indices(dst_deg)
    cols = []
    for s in src:
        img = fn(frame.basis_form(s))
        cols.append(form_to_vector(img, dst))
    if not cols:
        return [[] for _ in dst]
    return linalg.from_columns(cols)


def _primitive_basis(frame: HermitianFrame, k: int) -> List[linalg.Vector]:
    """Coordinate basis of the primitive k-forms (kernel of Lambda)."""
    if k < 0 or k > frame.n:
        return []
    cached = frame._primitive_cache.get(k)
    if cached is not None:
        return cached
    if k < 2:
        basis = linalg.columns(linalg.identity(len(frame.basis_indices(k))))
    else:
        lam = operator_matrix(frame, lefschetz_Lambda, k, k - 2)
        basis = linalg.nullspace(lam)
    frame._primitive_cache[k] = basis
    return basis


def primitive_decompose(a: Form) -> List[Tuple[int, Form]]:
    """Unique expansion a = sum_r L^r beta_r with each beta_r primitive.

    Returns the nonzero (r, beta_{k-2r}) pairs; solving the full linear
    system keeps the computation exact and certifies uniqueness.
    """
    if a.is_zero():
        return []
    k = a.degree()
    frame = a.frame
    r_min = max(0, k - frame.n)
    target_basis = frame.basis_indices(k)
    columns: List[linalg.Vector] = []
    slots: List[Tuple[int, int]] = []  # (r, index into primitive basis)
    prim_bases: Dict[int, List[linalg.Vector]] = {}
    for r in range(r_min, k // 2 + 1):
        j = k - 2 * r
        pbasis = _primitive_basis(frame, j)
        prim_bases[r] = pbasis
        src_basis = frame.basis_indices(j)
        for idx, vec in enumerate(pbasis):
            form = vector_to_form(frame, vec, src_basis)
            for _ in range(r):
                form = lefschetz_L(form)
            columns.append(form_to_vector(form, target_basis))
            slots.append((r, idx))
    matrix = linalg.from_columns(columns)
    sol = linalg.solve(matrix, form_to_vector(a, target_basis))
    if sol is None:
        raise RuntimeError("Lefschetz decomposition system is inconsistent")
    parts: Dict[int, Form] = {}
    for (r, idx), c in zip(slots, sol):
        if c.is_zero():
            continue
        j = k - 2 * r
        beta = vector_to_form(frame, prim_bases[r][idx], frame.basis_indices(j)).scale(c)
        parts[r] = parts.get(r, frame.zero()) + beta
    return sorted(
        ((r, beta) for r, beta in parts.items() if not beta.is_zero()),
        key=lambda item: item[0],
    )


def lefschetz_power(a: Form, power: int) -> Form:
    out = a
    for _ in range(power):
        out = lefschetz_L(out)
    return out


def evaluate_form(a: Form, vectors: Sequence[Sequence]) -> GaussianRational:
    """Evaluate a k-form on k frame-coordinate vectors.

    Uses e_S(X_1, ..., X_k) = det(X_b[s_a - 1]) per basis monomial.
    """
    k = len(vectors)
    coords = [[GaussianRational.of(c) for c in v] for v in vectors]
    total = ZERO
    for s, u in a.coeffs.items():
        if len(s) != k:
            continue
        det = _determinant([[coords[b][idx - 1] for b in range(k)] for idx in s])
        total = total + u * det
    return total


def _determinant(rows: List[List[GaussianRational]]) -> GaussianRational:
    size = len(rows)
    if size == 0:
        return ONE
    if size == 1:
        return rows[0][0]
    acc = ZERO
    for j in range(size):
        if rows[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = rows[0][j] * _determinant(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc
