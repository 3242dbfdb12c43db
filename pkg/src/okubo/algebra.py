"""Structure-constant algebras with quadratic forms.

An algebra is a basis, a rank-3 multiplication tensor c[i][j][k] (meaning
b_i * b_j = sum_k c[i][j][k] b_k), an optional quadratic form and an optional
grading by Z3 x Z3.  Quadratic forms are stored as values-on-basis plus the
polar bilinear matrix, so every characteristic, including 2, is representable:

    q(sum a_i b_i) = sum a_i^2 q(b_i) + sum_{i<j} a_i a_j B[i][j]

The symmetric-composition checker verifies the three defining identities
exhaustively on basis pairs/triples (a proof for the multilinear one) and on
randomized element trials (guarding the nonlinear ones at element level).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .errors import AlgebraMismatch, NoForm
from .fields import field_from_spec
from .linalg import Matrix, Subspace, nullspace


class QuadraticForm:
    """A quadratic form given by basis values and its polar matrix."""

    __slots__ = ("values", "polar")

    def __init__(self, values, polar):
        self.values = tuple(values)
        self.polar = polar
        n = len(self.values)
        if polar.nrows != n or polar.ncols != n:
            raise ValueError("polar matrix size does not match value count")
        for i in range(n):
            for j in range(i + 1, n):
                if polar[i, j] != polar[j, i]:
                    raise ValueError("polar matrix must be symmetric")
            if polar[i, i] != self.values[i] + self.values[i]:
                raise ValueError(f"polar diagonal B[{i}][{i}] must equal 2*q(b_{i})")

    def evaluate(self, coords):
        field = self.polar.field
        acc = field.zero
        n = len(coords)
        for i in range(n):
            ci = coords[i]
            if not ci:
                continue
            acc = acc + ci * ci * self.values[i]
            for j in range(i + 1, n):
                if coords[j]:
                    acc = acc + ci * coords[j] * self.polar[i, j]
        return acc

    def polar_eval(self, x, y):
        field = self.polar.field
        acc = field.zero
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj and self.polar[i, j]:
                    acc = acc + xi * yj * self.polar[i, j]
        return acc


class AlgebraElement:
    """A coordinate vector over an algebra's basis."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        if len(coords) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = tuple(coords)

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        s = self.algebra.field.scalar(other)
        return AlgebraElement(self.algebra, [a * s for a in self.coords])

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement):
            return NotImplemented
        s = self.algebra.field.scalar(other)
        return AlgebraElement(self.algebra, [s * a for a in self.coords])

    def norm(self):
        return self.algebra.norm(self)

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return any(map(bool, self.coords))

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.algebra is self.algebra
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        parts = []
        for c, label in zip(self.coords, self.algebra.labels):
            if c:
                parts.append(f"({c})*{label}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<{self}>"


class StructureConstantAlgebra:
    """A finite-dimensional algebra given by its multiplication tensor."""

    def __init__(self, field, dim, labels, tensor, form=None, grading=None):
        self.field = field
        self.dim = dim
        self.labels = tuple(labels)
        if len(self.labels) != dim:
            raise ValueError("label count must equal dimension")
        self.tensor = tuple(
            tuple(tuple(tensor[i][j][k] for k in range(dim)) for j in range(dim))
            for i in range(dim)
        )
        self.form = form
        self.grading = tuple(grading) if grading is not None else None
        # sparse view: list of (i, j, k, coefficient)
        self.entries = [
            (i, j, k, self.tensor[i][j][k])
            for i in range(dim)
            for j in range(dim)
            for k in range(dim)
            if self.tensor[i][j][k]
        ]

    # -- element construction --

    def element(self, coords):
        return AlgebraElement(self, [self.field.scalar(c) for c in coords])

    def basis_element(self, i):
        coords = [self.field.zero] * self.dim
        coords[i] = self.field.one
        return AlgebraElement(self, coords)

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def zero(self):
        return AlgebraElement(self, [self.field.zero] * self.dim)

    def random_element(self, rng):
        return AlgebraElement(self, [self.field.random_scalar(rng) for _ in range(self.dim)])

    # -- multiplication and the form --

    def multiply(self, x, y):
        if x.algebra is not self or y.algebra is not self:
            raise AlgebraMismatch("elements belong to a different algebra")
        zero = self.field.zero
        out = [zero] * self.dim
        xc, yc = x.coords, y.coords
        for i, j, k, c in self.entries:
            xi = xc[i]
            if not xi:
                continue
            yj = yc[j]
            if not yj:
                continue
            out[k] = out[k] + c * xi * yj
        return AlgebraElement(self, out)

    def norm(self, x):
        if self.form is None:
            raise NoForm("algebra carries no quadratic form")
        return self.form.evaluate(x.coords)

    def norm_polar(self, x, y):
        if self.form is None:
            raise NoForm("algebra carries no quadratic form")
        return self.form.polar_eval(x.coords, y.coords)

    def left_mult_matrix(self, x):
        """Matrix of y -> x*y in the basis."""
        cols = [self.multiply(x, self.basis_element(j)).coords for j in range(self.dim)]
        return Matrix(self.field, list(zip(*cols)))

    def right_mult_matrix(self, x):
        """Matrix of y -> y*x in the basis."""
        cols = [self.multiply(self.basis_element(j), x).coords for j in range(self.dim)]
        return Matrix(self.field, list(zip(*cols)))

    # -- verification --

    def check_grading(self):
        """True iff every nonzero tensor entry respects degree addition mod 3."""
        if self.grading is None:
            raise ValueError("algebra carries no grading")
        for i, j, k, _ in self.entries:
            gi, gj, gk = self.grading[i], self.grading[j], self.grading[k]
            if ((gi[0] + gj[0]) % 3, (gi[1] + gj[1]) % 3) != (gk[0] % 3, gk[1] % 3):
                return False
        return True

    def commutative_center(self):
        """Solution space of u*b_j = b_j*u for all j, as a Subspace."""
        rows = []
        for j in range(self.dim):
            bj = self.basis_element(j)
            lm = self.left_mult_matrix(bj)  # u -> b_j * u
            rm = self.right_mult_matrix(bj)  # u -> u * b_j
            diff = rm - lm
            rows.extend(diff.rows)
        return nullspace(Matrix(self.field, rows))

    def check_symmetric_composition(self, trials=200, seed=0):
        """Verify the symmetric-composition identities; see CompositionReport."""
        import random

        if self.form is None:
            raise NoForm("symmetric composition needs a quadratic form")
        rng = random.Random(seed)
        basis = self.basis()
        products = [[self.multiply(a, b) for b in basis] for a in basis]
        checks = []

        # polar associativity n(x*y, z) = n(x, y*z): trilinear, so basis
        # triples are a complete proof
        failures = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    lhs = self.norm_polar(products[i][j], basis[k])
                    rhs = self.norm_polar(basis[i], products[j][k])
                    if lhs != rhs:
                        failures.append((self.labels[i], self.labels[j], self.labels[k]))
        checks.append(
            IdentityCheck("polar_associative_basis", self.dim**3, failures[:3])
        )

        # multiplicativity and the flip identity on basis pairs
        mult_fail, flip_fail = [], []
        for i in range(self.dim):
            ni = self.norm(basis[i])
            for j in range(self.dim):
                if self.norm(products[i][j]) != ni * self.norm(basis[j]):
                    mult_fail.append((self.labels[i], self.labels[j]))
                lhs = self.multiply(products[i][j], basis[i])
                mid = basis[j] * ni
                rhs = self.multiply(basis[i], products[j][i])
                if lhs != mid or rhs != mid:
                    flip_fail.append((self.labels[i], self.labels[j]))
        checks.append(IdentityCheck("norm_multiplicative_basis", self.dim**2, mult_fail[:3]))
        checks.append(IdentityCheck("xyx_identity_basis", self.dim**2, flip_fail[:3]))

        # randomized element-level trials for the nonlinear identities
        rand_fail = {"norm_multiplicative": [], "xyx_identity": [], "polar_associative": []}
        for _ in range(trials):
            x = self.random_element(rng)
            y = self.random_element(rng)
            z = self.random_element(rng)
            xy = self.multiply(x, y)
            if self.norm(xy) != self.norm(x) * self.norm(y):
                rand_fail["norm_multiplicative"].append(tuple(map(str, x.coords)))
            nx = self.norm(x)
            if self.multiply(xy, x) != y * nx or self.multiply(x, self.multiply(y, x)) != y * nx:
                rand_fail["xyx_identity"].append(tuple(map(str, x.coords)))
            if self.norm_polar(xy, z) != self.norm_polar(x, self.multiply(y, z)):
                rand_fail["polar_associative"].append(tuple(map(str, x.coords)))
        for name, fails in rand_fail.items():
            checks.append(IdentityCheck(f"{name}_random", trials, fails[:3]))

        return CompositionReport(seed=seed, trials=trials, checks=checks)

    # -- serialization --

    def to_json_dict(self):
        data = {
            "field": self.field.spec_string(),
            "dim": self.dim,
            "labels": list(self.labels),
            "entries": [[i, j, k, str(c)] for i, j, k, c in self.entries],
        }
        if self.form is not None:
            data["form"] = {
                "values": [str(v) for v in self.form.values],
                "polar": [[str(x) for x in row] for row in self.form.polar.rows],
            }
        if self.grading is not None:
            data["grading"] = [list(g) for g in self.grading]
        return data

    def to_json(self, indent=None):
        return json.dumps(self.to_json_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_json_dict(cls, data):
        field = field_from_spec(data["field"])
        dim = data["dim"]
        zero = field.zero
        tensor = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
        for i, j, k, c in data["entries"]:
            tensor[i][j][k] = field.parse(c)
        form = None
        if "form" in data:
            values = [field.parse(v) for v in data["form"]["values"]]
            polar = Matrix(field, [[field.parse(x) for x in row] for row in data["form"]["polar"]])
            form = QuadraticForm(values, polar)
        grading = None
        if "grading" in data:
            grading = [tuple(g) for g in data["grading"]]
        return cls(field, dim, data["labels"], tensor, form=form, grading=grading)

    @classmethod
    def from_json(cls, text):
        return cls.from_json_dict(json.loads(text))

    def same_tensor_as(self, other):
        """Entrywise tensor equality (labels and field must already agree)."""
        return self.tensor == other.tensor

    def __repr__(self):
        return f"StructureConstantAlgebra(dim {self.dim} over {self.field})"


@dataclass
class IdentityCheck:
    name: str
    cases: int
    failures: list

    @property
    def passed(self):
        return not self.failures

    def summary(self):
        return {
            "name": self.name,
            "cases": self.cases,
            "passed": self.passed,
            "witnesses": [list(map(str, w)) for w in self.failures],
        }


@dataclass
class CompositionReport:
    seed: int
    trials: int
    checks: list = dc_field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def summary(self):
        return {
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "checks": [c.summary() for c in self.checks],
        }
