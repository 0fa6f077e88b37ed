"""Lie-group model manifolds: structure constants, complex structure, Lee form.

A LieModel is a real 2n-dimensional Lie algebra with rational structure
constants relative to an orthonormal frame E_1..E_2n, an orthogonal
complex structure J with J^2 = -1 and vanishing Nijenhuis tensor, and a
closed Lee covector theta.  Every invariant is validated exactly at
construction; violations raise ModelError with a stable diagnostic code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

FractionMatrix = List[List[Fraction]]
FractionVector = List[Fraction]
BracketTable = Dict[Tuple[int, int], Dict[int, Fraction]]


class ModelError(ValueError):
    """Invalid model data; .code is a stable diagnostic identifier."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass
class LieModel:
    """Validated left-invariant model data."""

    name: str
    dim: int
    brackets: BracketTable  # keys (i, j) with i < j; [E_i, E_j] = sum c^k E_k
    J: FractionMatrix  # J E_j = sum_i J[i][j] E_i
    theta: FractionVector
    expected_betti: Optional[List[int]] = None
    vaisman: bool = False
    unimodular: bool = field(init=False, default=True)

    @property
    def n(self) -> int:
        return self.dim // 2

    def bracket(self, i: int, j: int) -> Dict[int, Fraction]:
        """[E_i, E_j] as a sparse coefficient map (1-based indices)."""
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        return self.bracket(i, j).get(k, Fraction(0))

    def bracket_vectors(self, x: FractionVector, y: FractionVector) -> FractionVector:
        out = [Fraction(0)] * self.dim
        for i in range(1, self.dim + 1):
            xi = x[i - 1]
            if not xi:
                continue
            for j in range(1, self.dim + 1):
                yj = y[j - 1]
                if not yj:
                    continue
                for k, c in self.bracket(i, j).items():
                    out[k - 1] += xi * yj * c
        return out

    def theta_is_zero(self) -> bool:
        return all(c == 0 for c in self.theta)


def _validate_antisymmetry(entries: Sequence[Tuple[int, int, int, Fraction]], dim: int) -> BracketTable:
    table: Dict[Tuple[int, int, int], Fraction] = {}
    for i, j, k, value in entries:
        for idx in (i, j, k):
            if not 1 <= idx <= dim:
                raise ModelError("E-SCHEMA", f"index {idx} outside 1..{dim}")
        if i == j:
            if value != 0:
                raise ModelError("E-ANTISYM", f"c^{k}_{{{i}{j}}} must vanish for i = j")
            continue
        key = (i, j, k)
        if key in table and table[key] != value:
            raise ModelError("E-SCHEMA", f"duplicate entry for c^{k}_{{{i}{j}}}")
        table[key] = value
    for (i, j, k), value in list(table.items()):
        mirrored = table.get((j, i, k))
        if mirrored is not None and mirrored != -value:
            raise ModelError(
                "E-ANTISYM",
                f"c^{k}_{{{i}{j}}} = {value} but c^{k}_{{{j}{i}}} = {mirrored}",
            )
    brackets: BracketTable = {}
    for (i, j, k), value in table.items():
        if value == 0:
            continue
        if i < j:
            brackets.setdefault((i, j), {})[k] = value
        else:
            existing = brackets.setdefault((j, i), {})
            existing[k] = existing.get(k, Fraction(0)) - value
            if existing[k] == 0:
                del existing[k]
    return {key: val for key, val in brackets.items() if val}


def _validate_jacobi(model: LieModel) -> None:
    dim = model.dim
    for i, j, k in combinations(range(1, dim + 1), 3):
        total = [Fraction(0)] * dim
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            inner = model.bracket(b, c)
            for m, coeff in inner.items():
                for r, c2 in model.bracket(a, m).items():
                    total[r - 1] += coeff * c2
        if any(total):
            raise ModelError(
                "E-JACOBI", f"Jacobi identity fails on (E_{i}, E_{j}, E_{k})"
            )


def _validate_complex_structure(model: LieModel) -> None:
    dim = model.dim
    J = model.J
    if len(J) != dim or any(len(row) != dim for row in J):
        raise ModelError("E-SCHEMA", f"J must be a {dim}x{dim} matrix")
    # J^2 = -1
    for i in range(dim):
        for j in range(dim):
            acc = sum(J[i][k] * J[k][j] for k in range(dim))
            if acc != (Fraction(-1) if i == j else Fraction(0)):
                raise ModelError("E-CPLX", "J^2 differs from -identity")
    # orthogonality: J^T J = 1 (frame metric is the identity)
    for i in range(dim):
        for j in range(dim):
            acc = sum(J[k][i] * J[k][j] for k in range(dim))
            if acc != (Fraction(1) if i == j else Fraction(0)):
                raise ModelError("E-ORTH", "J is not compatible with the metric")


def _nijenhuis(model: LieModel, x: FractionVector, y: FractionVector) -> FractionVector:
    def jv(v: FractionVector) -> FractionVector:
        return [
            sum(model.J[i][j] * v[j] for j in range(model.dim))
            for i in range(model.dim)
        ]

    jx, jy = jv(x), jv(y)
    term1 = model.bracket_vectors(jx, jy)
    term2 = model.bracket_vectors(x, y)
    term3 = jv(model.bracket_vectors(jx, y))
    term4 = jv(model.bracket_vectors(x, jy))
    return [term1[i] - term2[i] - term3[i] - term4[i] for i in range(model.dim)]


def _validate_integrability(model: LieModel) -> None:
    dim = model.dim
    for i, j in combinations(range(1, dim + 1), 2):
        x = [Fraction(1) if a == i - 1 else Fraction(0) for a in range(dim)]
        y = [Fraction(1) if a == j - 1 else Fraction(0) for a in range(dim)]
        if any(_nijenhuis(model, x, y)):
            raise ModelError(
                "E-INTEG", f"Nijenhuis tensor does not vanish on (E_{i}, E_{j})"
            )


def _validate_theta_closed(model: LieModel) -> None:
    # d(theta)(E_i, E_j) = -theta([E_i, E_j])
    for i, j in combinations(range(1, model.dim + 1), 2):
        value = sum(
            model.theta[k - 1] * c for k, c in model.bracket(i, j).items()
        )
        if value != 0:
            raise ModelError("E-DTHETA", "the Lee covector is not closed")


def christoffel(model: LieModel, i: int, j: int, k: int) -> Fraction:
    """g(nabla_{E_i} E_j, E_k) from the Koszul formula on invariant fields."""
    return (
        model.structure_constant(i, j, k)
        - model.structure_constant(j, k, i)
        + model.structure_constant(k, i, j)
    ) / 2


def levi_civita_parallel_theta(model: LieModel) -> bool:
    """Whether nabla theta = 0 for the Levi-Civita connection."""
    dim = model.dim
    for i in range(1, dim + 1):
        for j in range(1, dim + 1):
            acc = Fraction(0)
            for l in range(1, dim + 1):
                t = model.theta[l - 1]
                if t:
                    acc += t * christoffel(model, i, j, l)
            if acc != 0:
                return False
    return True


def theta_norm_squared(model: LieModel) -> Fraction:
    return sum(c * c for c in model.theta)


def _validate_vaisman(model: LieModel) -> None:
    if not model.vaisman:
        return
    if theta_norm_squared(model) != 1:
        raise ModelError("E-VAISMAN", "a Vaisman model needs |theta| = 1 exactly")
    if not levi_civita_parallel_theta(model):
        raise ModelError("E-VAISMAN", "theta is not parallel (nabla theta != 0)")


def _compute_unimodular(model: LieModel) -> bool:
    # trace of ad_{E_i} must vanish for every i
    for i in range(1, model.dim + 1):
        trace = sum(
            model.structure_constant(i, j, j) for j in range(1, model.dim + 1)
        )
        if trace != 0:
            return False
    return True


def make_model(
    name: str,
    dim: int,
    entries: Sequence[Tuple[int, int, int, Fraction]],
    J: FractionMatrix,
    theta: FractionVector,
    expected_betti: Optional[List[int]] = None,
    vaisman: bool = False,
) -> LieModel:
    """Build and fully validate a LieModel."""
    if dim <= 0 or dim % 2:
        raise ModelError("E-SCHEMA", f"dim must be a positive even integer, got {dim}")
    if len(theta) != dim:
        raise ModelError("E-SCHEMA", "theta must have one entry per frame covector")
    brackets = _validate_antisymmetry(entries, dim)
    model = LieModel(
        name=name,
        dim=dim,
        brackets=brackets,
        J=[list(row) for row in J],
        theta=list(theta),
        expected_betti=list(expected_betti) if expected_betti else None,
        vaisman=vaisman,
    )
    _validate_jacobi(model)
    _validate_complex_structure(model)
    _validate_integrability(model)
    _validate_theta_closed(model)
    _validate_vaisman(model)
    model.unimodular = _compute_unimodular(model)
    return model


# -- catalog -------------------------------------------------------------------


def _standard_J(dim: int) -> FractionMatrix:
    """Block J with J E_{2a-1} = -E_{2a}, J E_{2a} = E_{2a-1}.

    This choice makes omega = g(., J .) equal to sum e^{2a-1} ^ e^{2a}.
    """
    J = [[Fraction(0)] * dim for _ in range(dim)]
    for a in range(dim // 2):
        J[2 * a + 1][2 * a] = Fraction(-1)  # column 2a+1 (E_{2a-1}) -> -E_{2a}
        J[2 * a][2 * a + 1] = Fraction(1)  # column 2a+2 (E_{2a}) -> E_{2a-1}
    return J


def torus4() -> LieModel:
    return make_model(
        name="torus4",
        dim=4,
        entries=[],
        J=_standard_J(4),
        theta=[Fraction(0)] * 4,
        expected_betti=[1, 4, 6, 4, 1],
        vaisman=False,
    )


def hopf_surface() -> LieModel:
    """Real line times the unit quaternions, with the homogeneous metric.

    The scaling is fixed so d(omega) = theta ^ omega holds with
    theta = e^1 of norm one.
    """
    f = Fraction(1)
    entries = [
        (2, 3, 4, f),
        (3, 4, 2, f),
        (4, 2, 3, f),
    ]
    return make_model(
        name="hopf-surface",
        dim=4,
        entries=entries,
        J=_standard_J(4),
        theta=[Fraction(1), Fraction(0), Fraction(0), Fraction(0)],
        expected_betti=[1, 1, 0, 1, 1],
        vaisman=True,
    )


def kodaira_surface() -> LieModel:
    """Two-step nilpotent model: d e^4 = e^1 ^ e^2, all other d e^i = 0.

    With the standard J the Lee form is theta = -e^3 (unit, parallel).
    """
    entries = [(1, 2, 4, Fraction(-1))]
    return make_model(
        name="kodaira-surface",
        dim=4,
        entries=entries,
        J=_standard_J(4),
        theta=[Fraction(0), Fraction(0), Fraction(-1), Fraction(0)],
        expected_betti=[1, 3, 4, 3, 1],
        vaisman=True,
    )


CATALOG = {
    "torus4": torus4,
    "hopf-surface": hopf_surface,
    "kodaira-surface": kodaira_surface,
}


def catalog_names() -> List[str]:
    return list(CATALOG)


def catalog_model(name: str) -> LieModel:
    try:
        return CATALOG[name]()
    except KeyError:
        raise ModelError(
            "E-SCHEMA", f"unknown catalog model {name!r}; available: {catalog_names()}"
        )


# -- file format -----------------------------------------------------------------


def model_to_json(model: LieModel) -> dict:
    entries = []
    for (i, j), comps in sorted(model.brackets.items()):
        for k, value in sorted(comps.items()):
            entries.append([i, j, k, str(value)])
    data = {
        "name": model.name,
        "dim": model.dim,
        "structure_constants": entries,
        "J": [[str(x) for x in row] for row in model.J],
        "theta": [str(x) for x in model.theta],
    }
    if model.expected_betti is not None:
        data["expected_betti"] = model.expected_betti
    data["vaisman"] = model.vaisman
    return data


def model_from_json(data: dict) -> LieModel:
    try:
        name = str(data["name"])
        dim = int(data["dim"])
        entries = [
            (int(i), int(j), int(k), Fraction(str(v)))
            for i, j, k, v in data["structure_constants"]
        ]
        J = [[Fraction(str(x)) for x in row] for row in data["J"]]
        theta = [Fraction(str(x)) for x in data["theta"]]
        expected = data.get("expected_betti")
        if expected is not None:
            expected = [int(b) for b in expected]
        vaisman = bool(data.get("vaisman", False))
    except ModelError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ModelError("E-SCHEMA", f"malformed model data: {exc}") from exc
    return make_model(name, dim, entries, J, theta, expected, vaisman)


def load_model(path: str) -> LieModel:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelError("E-PARSE", f"cannot read model file: {exc}") from exc
    return model_from_json(data)


def save_model(model: LieModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_json(model), fh, indent=2)
        fh.write("\n")
