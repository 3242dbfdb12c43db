"""Derivation algebras and Lie-algebra analysis.

The derivation space of a structure-constant algebra is the nullspace of the
Leibniz system d(b_i b_j) = d(b_i) b_j + b_i d(b_j): for an 8-dimensional
algebra that is one exact row reduction of a 512 x 64 system.  On top of
that live the usual tools: inner derivations, Lie closure, derived
subalgebras, Killing forms, centers, and a MeatAxe-style simplicity
certificate for finite fields (Norton's criterion on the adjoint module,
Las Vegas with a fixed retry budget).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from . import polys
from .errors import BadCharacteristic, Inconclusive, InfiniteField, NotClosed, SingularMatrix
from .linalg import CoordinateSolver, Matrix, Subspace, nullspace, rref, spin


def _map_to_vec(m):
    return m.to_vec()


def _vec_to_map(field, vec, dim):
    return Matrix.from_vec(field, vec, dim, dim)


def leibniz_system(algebra):
    """The Leibniz conditions as a (dim^3) x (dim^2) matrix.

    Unknown 8r+c is the (r, c) entry of the derivation matrix; D(b_j) is
    column j.
    """
    field = algebra.field
    dim = algebra.dim
    zero = field.zero
    nrows = dim * dim * dim
    rows = [[zero] * (dim * dim) for _ in range(nrows)]
    for i, j, k, c in algebra.entries:
        # d(b_i * b_j) term: equation (i, j, m) uses D[m][k]
        for m in range(dim):
            r = (i * dim + j) * dim + m
            rows[r][m * dim + k] = rows[r][m * dim + k] + c
        # d(b_i) * b_j term: the entry is c = c[r0][j][m] with r0 = i, m = k
        # it appears in equation (i2, j, k) at unknown D[i][i2] for every i2
        for i2 in range(dim):
            r = (i2 * dim + j) * dim + k
            rows[r][i * dim + i2] = rows[r][i * dim + i2] - c
        # b_i * d(b_j) term: the entry is c = c[i][r0][m] with r0 = j, m = k
        for j2 in range(dim):
            r = (i * dim + j2) * dim + k
            rows[r][j * dim + j2] = rows[r][j * dim + j2] - c
    return Matrix(field, rows)


def derivations(algebra):
    """The full derivation space as a Subspace of flattened dim x dim maps."""
    return nullspace(leibniz_system(algebra))


def leibniz_holds(algebra, dmat, pairs=None):
    """Does the map satisfy d(x*y) = d(x)*y + x*d(y) on the given basis pairs?"""
    dim = algebra.dim
    basis = algebra.basis()
    images = [algebra.element(dmat.col(j)) for j in range(dim)]
    if pairs is None:
        pairs = [(i, j) for i in range(dim) for j in range(dim)]
    for i, j in pairs:
        prod = algebra.multiply(basis[i], basis[j])
        lhs = algebra.element(dmat.matvec(prod.coords))
        rhs = algebra.multiply(images[i], basis[j]) + algebra.multiply(basis[i], images[j])
        if lhs != rhs:
            return False
    return True


def ad_star(algebra, u):
    """The inner derivation v -> u*v - v*u as a matrix."""
    return algebra.left_mult_matrix(u) - algebra.right_mult_matrix(u)


def inner_derivation_span(algebra):
    """Span of the inner derivations ad*_u, u over the basis.

    Each generator is verified against the Leibniz system.
    """
    vecs = []
    for i in range(algebra.dim):
        m = ad_star(algebra, algebra.basis_element(i))
        if not leibniz_holds(algebra, m):
            raise AssertionError(f"ad*_{algebra.labels[i]} is not a derivation")
        vecs.append(m.to_vec())
    return Subspace.from_vectors(algebra.field, algebra.dim**2, vecs)


class LieAlgebra:
    """A Lie algebra by structure constants, optionally backed by matrices.

    Construction verifies [x,x] = 0 and antisymmetry on the basis and the
    Jacobi identity on all basis triples.
    """

    def __init__(self, field, dim, tensor, maps=None):
        self.field = field
        self.dim = dim
        self.tensor = tuple(
            tuple(tuple(tensor[i][j][k] for k in range(dim)) for j in range(dim))
            for i in range(dim)
        )
        self.maps = list(maps) if maps is not None else None
        self._validate()

    def _validate(self):
        dim = self.dim
        zero = self.field.zero
        for i in range(dim):
            if any(self.tensor[i][i][k] for k in range(dim)):
                raise ValueError("bracket [x,x] != 0 on basis")
            for j in range(dim):
                for k in range(dim):
                    if self.tensor[i][j][k] != -self.tensor[j][i][k]:
                        raise ValueError("bracket tensor is not antisymmetric")
        for i in range(dim):
            for j in range(i + 1, dim):
                for k in range(j + 1, dim):
                    acc = [zero] * dim
                    for m in range(dim):
                        for t, coefs in (
                            (k, self.tensor[i][j]),
                            (i, self.tensor[j][k]),
                            (j, self.tensor[k][i]),
                        ):
                            c = coefs[m]
                            if c:
                                for n in range(dim):
                                    cc = self.tensor[m][t][n]
                                    if cc:
                                        acc[n] = acc[n] + c * cc
                    if any(acc):
                        raise ValueError("Jacobi identity fails on basis triple")

    @classmethod
    def from_maps(cls, field, maps):
        """Lie algebra on an independent family of matrices under commutator."""
        n = len(maps)
        solver = CoordinateSolver(field, [m.to_vec() for m in maps])
        tensor = []
        for a in range(n):
            row = []
            for b in range(n):
                k = maps[a] @ maps[b] - maps[b] @ maps[a]
                coords = solver.solve(k.to_vec())
                if coords is None:
                    raise NotClosed("commutator leaves the span of the given maps")
                row.append(list(coords))
            tensor.append(row)
        return cls(field, n, tensor, maps=maps)

    def bracket_coords(self, u, v):
        """Bracket of two coordinate vectors, as a coordinate vector."""
        zero = self.field.zero
        out = [zero] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                row = self.tensor[i][j]
                for k in range(self.dim):
                    if row[k]:
                        out[k] = out[k] + ui * vj * row[k]
        return tuple(out)

    def ad_matrix(self, i):
        """ad b_i in the algebra's own basis."""
        cols = [self.tensor[i][j] for j in range(self.dim)]
        return Matrix(self.field, list(zip(*cols)))

    def ad_of_coords(self, u):
        zero = self.field.zero
        rows = [[zero] * self.dim for _ in range(self.dim)]
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j in range(self.dim):
                for k in range(self.dim):
                    c = self.tensor[i][j][k]
                    if c:
                        rows[k][j] = rows[k][j] + ui * c
        return Matrix(self.field, rows)

    def __repr__(self):
        return f"LieAlgebra(dim {self.dim} over {self.field})"


def lie_close(subspace):
    """Lie algebra on a commutator-closed subspace of flattened maps.

    Raises NotClosed when a commutator escapes the subspace.
    """
    field = subspace.field
    n = subspace.dim
    side = _int_sqrt(subspace.ambient)
    mats = [_vec_to_map(field, row, side) for row in subspace.basis]
    tensor = []
    for a in range(n):
        row = []
        for b in range(n):
            k = mats[a] @ mats[b] - mats[b] @ mats[a]
            coords = subspace.coordinates_of(k.to_vec())
            if coords is None:
                raise NotClosed("subspace of maps is not closed under commutator")
            row.append(list(coords))
        tensor.append(row)
    return LieAlgebra(field, n, tensor, maps=mats)


def _int_sqrt(n):
    r = int(round(n**0.5))
    if r * r != n:
        raise ValueError(f"{n} is not a perfect square")
    return r


def derived_subalgebra(lie):
    """The span of all pairwise brackets, as a Lie algebra in its own basis."""
    field = lie.field
    vecs = []
    for i in range(lie.dim):
        for j in range(i + 1, lie.dim):
            vecs.append(lie.tensor[i][j])
    span = Subspace.from_vectors(field, lie.dim, vecs)
    basis = list(span.basis)
    n = len(basis)
    tensor = []
    for a in range(n):
        row = []
        for b in range(n):
            w = lie.bracket_coords(basis[a], basis[b])
            coords = span.coordinates_of(w)
            if coords is None:
                raise NotClosed("derived span not closed; bracket tensor inconsistent")
            row.append(list(coords))
        tensor.append(row)
    maps = None
    if lie.maps is not None:
        maps = []
        for b in basis:
            acc = Matrix.zeros(field, lie.maps[0].nrows, lie.maps[0].ncols)
            for c, m in zip(b, lie.maps):
                if c:
                    acc = acc + c * m
            maps.append(acc)
    return LieAlgebra(field, n, tensor, maps=maps)


def killing_form(lie):
    """K[i][j] = trace(ad b_i o ad b_j)."""
    ads = [lie.ad_matrix(i) for i in range(lie.dim)]
    rows = []
    for i in range(lie.dim):
        rows.append([(ads[i] @ ads[j]).trace() for j in range(lie.dim)])
    return Matrix(lie.field, rows)


def killing_rank(lie):
    _, rank, _ = rref(killing_form(lie))
    return rank


def center_of(lie):
    """Elements commuting with the whole algebra, in the algebra's own coordinates."""
    field = lie.field
    rows = []
    for j in range(lie.dim):
        for k in range(lie.dim):
            rows.append([lie.tensor[i][j][k] for i in range(lie.dim)])
    if not rows:
        return Subspace.full(field, lie.dim)
    return nullspace(Matrix(field, rows))


def _poly_apply_matrix(poly, m):
    field = m.field
    acc = Matrix.zeros(field, m.nrows, m.ncols)
    p = Matrix.identity(field, m.nrows)
    for c in poly:
        if c:
            acc = acc + p * c
        p = p @ m
    return acc


def _random_enveloping_element(gens, field, rng):
    """A random element of the enveloping algebra: sums of short products."""
    n = gens[0].nrows
    acc = Matrix.zeros(field, n, n)
    for _ in range(rng.randrange(2, 5)):
        term = gens[rng.randrange(len(gens))]
        for _ in range(rng.randrange(0, 3)):
            term = term @ gens[rng.randrange(len(gens))]
        coef = field.random_scalar(rng)
        if not coef:
            coef = field.one
        acc = acc + term * coef
    return acc


def is_simple_finite(lie, seed=0, max_trials=20):
    """Simplicity over a finite field.

    Quick certificates first: a proper derived subalgebra or a nonzero center
    disproves simplicity outright.  Otherwise the adjoint module is tested
    for irreducibility MeatAxe-style: pick a random element of the enveloping
    algebra of the ad maps, factor its characteristic polynomial, and apply
    Norton's criterion on an irreducible factor of minimal nullity.  The
    random stream is deterministic in ``seed``; Inconclusive is raised when
    the retry budget runs out without a proof either way.
    """
    field = lie.field
    if field.cardinality is None:
        raise InfiniteField("simplicity test requires a finite base field")
    if lie.dim == 0:
        return False
    if derived_subalgebra(lie).dim != lie.dim:
        return False
    if center_of(lie).dim != 0:
        return False
    gens = [lie.ad_matrix(i) for i in range(lie.dim)]
    gens_t = [g.transpose() for g in gens]
    n = lie.dim
    rng = random.Random(seed)
    for _ in range(max_trials):
        theta = _random_enveloping_element(gens, field, rng)
        charpoly = theta.charpoly()
        for f in polys.factor_into_irreducibles(charpoly, field):
            ker = nullspace(_poly_apply_matrix(f, theta))
            if ker.dim == 0:
                continue
            v = ker.basis[0]
            if spin(field, n, [v], gens).dim != n:
                return False
            if ker.dim == polys.degree(f):
                ker_t = nullspace(_poly_apply_matrix(f, theta.transpose()))
                w = ker_t.basis[0]
                if spin(field, n, [w], gens_t).dim != n:
                    return False
                return True
    raise Inconclusive(
        f"no irreducible factor of minimal nullity in {max_trials} trials"
    )


# ---------------------------------------------------------------------------
# the commutator algebra of (O, *) and the Block bracket
# ---------------------------------------------------------------------------


def minus_algebra(algebra):
    """The commutator algebra u*v - v*u of a structure-constant algebra."""
    field = algebra.field
    dim = algebra.dim
    tensor = [
        [
            [algebra.tensor[i][j][k] - algebra.tensor[j][i][k] for k in range(dim)]
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    return LieAlgebra(field, dim, tensor)


def verify_block_bracket(algebra):
    """Check [x^i y^j, x^k y^l]* = (il - jk) x^(i+k) y^(j+l) on all basis pairs.

    Uses the grading degrees as monomial exponents; characteristic 3 only.
    """
    if algebra.field.characteristic != 3:
        raise BadCharacteristic("the Block bracket identity lives in characteristic 3")
    if algebra.grading is None:
        raise ValueError("algebra carries no grading")
    field = algebra.field
    minus = minus_algebra(algebra)
    degree_to_index = {d: i for i, d in enumerate(algebra.grading)}
    mismatches = []
    for a in range(algebra.dim):
        i, j = algebra.grading[a]
        for b in range(algebra.dim):
            k, l = algebra.grading[b]
            delta = field.from_int(i * l - j * k)
            target = ((i + k) % 3, (j + l) % 3)
            expected = [field.zero] * algebra.dim
            if target != (0, 0) and delta:
                expected[degree_to_index[target]] = delta
            got = [minus.tensor[a][b][m] for m in range(algebra.dim)]
            if got != expected:
                mismatches.append((algebra.labels[a], algebra.labels[b]))
    return mismatches


def inner_bracket_matches_minus(algebra):
    """Check [ad*_u, ad*_v] = ad*_{[u,v]*} on all basis pairs.

    This is the coordinate form of the isomorphism between the span of the
    inner derivations and the commutator algebra.
    """
    dim = algebra.dim
    basis = algebra.basis()
    ads = [ad_star(algebra, u) for u in basis]
    for a in range(dim):
        for b in range(dim):
            lhs = ads[a] @ ads[b] - ads[b] @ ads[a]
            uv = algebra.multiply(basis[a], basis[b]) - algebra.multiply(basis[b], basis[a])
            rhs = ad_star(algebra, uv)
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# the grading on the derivation algebra (characteristic 3)
# ---------------------------------------------------------------------------


@dataclass
class DerGradingReport:
    dims: dict
    total: int
    der_dim: int
    components_fill_der: bool
    ad_cube_in_degree_zero: bool

    @property
    def passed(self):
        return (
            self.total == self.der_dim
            and self.components_fill_der
            and self.ad_cube_in_degree_zero
        )

    def summary(self):
        return {
            "dims": {f"({g[0]},{g[1]})": d for g, d in sorted(self.dims.items())},
            "total": self.total,
            "der_dim": self.der_dim,
            "components_fill_der": self.components_fill_der,
            "ad_cube_in_degree_zero": self.ad_cube_in_degree_zero,
            "passed": self.passed,
        }


def _homogeneous_map_subspace(algebra, g):
    """Maps D with D(O_h) <= O_(h+g), as a coordinate subspace of maps."""
    field = algebra.field
    dim = algebra.dim
    degree_to_index = {d: i for i, d in enumerate(algebra.grading)}
    zero, one = field.zero, field.one
    vecs = []
    for j in range(dim):
        h = algebra.grading[j]
        target = ((h[0] + g[0]) % 3, (h[1] + g[1]) % 3)
        r = degree_to_index.get(target)
        if r is None:
            continue  # image must vanish on this column
        v = [zero] * (dim * dim)
        v[r * dim + j] = one
        vecs.append(v)
    return Subspace.from_vectors(field, dim * dim, vecs)


def grading_on_derivations(algebra):
    """Dimensions of the Z3xZ3-homogeneous components of the derivation algebra."""
    if algebra.field.characteristic != 3:
        raise BadCharacteristic("the graded derivation analysis is characteristic 3")
    if algebra.grading is None:
        raise ValueError("algebra carries no grading")
    der = derivations(algebra)
    dims = {}
    parts = []
    for gi in range(3):
        for gj in range(3):
            comp = der.intersect(_homogeneous_map_subspace(algebra, (gi, gj)))
            if comp.dim:
                dims[(gi, gj)] = comp.dim
                parts.append(comp)
    total = sum(dims.values())
    acc = Subspace.zero(algebra.field, algebra.dim**2)
    for p in parts:
        acc = acc.sum_with(p)
    fill = acc == der
    zero_part = _homogeneous_map_subspace(algebra, (0, 0))
    ad_cube_ok = True
    for i in range(algebra.dim):
        a = ad_star(algebra, algebra.basis_element(i))
        cube = a @ a @ a
        vec = cube.to_vec()
        if not (zero_part.contains_vector(vec) and der.contains_vector(vec)):
            ad_cube_ok = False
    return DerGradingReport(
        dims=dims,
        total=total,
        der_dim=der.dim,
        components_fill_der=fill,
        ad_cube_in_degree_zero=ad_cube_ok,
    )


# ---------------------------------------------------------------------------
# automorphisms of the matrix model by conjugation
# ---------------------------------------------------------------------------


def conjugation_automorphism(model, g):
    """The map u -> g u g^-1 on the matrix model, in basis coordinates.

    Verified to transport the product (an automorphism) and to preserve the
    norm and its polar form (an isometry).
    """
    field = model.field
    if g.det() == field.zero:
        raise SingularMatrix("conjugating matrix must be invertible")
    ginv = g.inverse()
    algebra = model.algebra
    cols = []
    for j in range(algebra.dim):
        m = g @ model.basis_matrices[j] @ ginv
        cols.append(model.coords_of(m))
    phi = Matrix(field, list(zip(*cols)))
    basis = algebra.basis()
    images = [algebra.element(phi.col(j)) for j in range(algebra.dim)]
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            lhs = algebra.element(phi.matvec(algebra.multiply(basis[i], basis[j]).coords))
            rhs = algebra.multiply(images[i], images[j])
            if lhs != rhs:
                raise AssertionError("conjugation failed to be an automorphism")
    for i in range(algebra.dim):
        if algebra.norm(images[i]) != algebra.form.values[i]:
            raise AssertionError("conjugation failed to be an isometry")
        for j in range(i + 1, algebra.dim):
            if algebra.norm_polar(images[i], images[j]) != algebra.form.polar[i, j]:
                raise AssertionError("conjugation failed to preserve the polar form")
    return phi


@dataclass
class DerivationAnalysis:
    """The full derivation profile reported by the CLI."""

    field_spec: str
    dim_der: int
    dim_inner: int
    inner_equals_der: bool
    dim_derived: int
    derived_equals_inner: bool
    killing_rank_derived: int
    center_dim_derived: int
    derived_simple: bool | None
    grading_dims: dict | None = None
    seed: int = 0
    notes: list = dc_field(default_factory=list)

    def summary(self):
        """Report keys match the CLI contract: killing_rank, center_dim and
        simple describe the derived subalgebra [Der, Der]."""
        out = {
            "field": self.field_spec,
            "dim_der": self.dim_der,
            "dim_inner": self.dim_inner,
            "inner_equals_der": self.inner_equals_der,
            "dim_derived": self.dim_derived,
            "derived_equals_inner": self.derived_equals_inner,
            "killing_rank": self.killing_rank_derived,
            "center_dim": self.center_dim_derived,
            "simple": self.derived_simple,
            "seed": self.seed,
            "notes": self.notes,
        }
        if self.grading_dims is not None:
            out["grading_dims"] = {
                f"({g[0]},{g[1]})": d for g, d in sorted(self.grading_dims.items())
            }
        return out


def analyze_derivations(algebra, seed=0, max_trials=20):
    """Compute the derivation profile of an algebra (drives the CLI report)."""
    field = algebra.field
    der = derivations(algebra)
    inner = inner_derivation_span(algebra)
    der_lie = lie_close(der)
    derived = derived_subalgebra(der_lie)
    derived_span = Subspace.from_vectors(
        field, algebra.dim**2, [m.to_vec() for m in derived.maps]
    )
    notes = []
    simple = None
    if field.cardinality is not None:
        try:
            simple = is_simple_finite(derived, seed=seed, max_trials=max_trials)
        except Inconclusive as exc:
            notes.append(str(exc))
    else:
        notes.append("simplicity certificate restricted to finite fields")
    grading_dims = None
    if field.characteristic == 3 and algebra.grading is not None:
        grading_dims = grading_on_derivations(algebra).dims
    return DerivationAnalysis(
        field_spec=field.spec_string(),
        dim_der=der.dim,
        dim_inner=inner.dim,
        inner_equals_der=inner == der,
        dim_derived=derived.dim,
        derived_equals_inner=derived_span == inner,
        killing_rank_derived=killing_rank(derived),
        center_dim_derived=center_of(derived).dim,
        derived_simple=simple,
        grading_dims=grading_dims,
        seed=seed,
        notes=notes,
    )
