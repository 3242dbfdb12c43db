"""Idempotents: census, the order-3 automorphism tau, the unital twist, and
the characteristic-3 classification.

A nonzero idempotent f of a symmetric composition algebra has n(f) = 1 and
induces

* an order-3 automorphism tau(x) = f*(f*x) whose fixed space is the
  centralizer of f, and
* a unital composition algebra (the twist) with product x.y = (f*x)*(y*f)
  and unit f.

In characteristic 3 the pair (dim of the centralizer, rank of the norm on
it) takes exactly three values, giving the quaternionic / quadratic /
singular trichotomy; anything else is reported as an anomaly, never forced
into a bucket.  The exhaustive census runs through the integer-encoded scan
kernels and is cross-checked by a second pass over the algebra's serialized
tensor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _kernels
from .algebra import StructureConstantAlgebra
from .errors import (
    BadCharacteristic,
    BudgetExceeded,
    ClassificationAnomaly,
    InfiniteField,
    NotIdempotent,
)
from .linalg import Matrix, Subspace, nullspace, solve


def is_idempotent(algebra, f):
    return bool(f) and algebra.multiply(f, f) == f


def _require_idempotent(algebra, f):
    if not is_idempotent(algebra, f):
        raise NotIdempotent(f"{f} is not a nonzero idempotent")


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------


def enumerate_idempotents(algebra, budget=10**8):
    """All nonzero v with v*v = v over a finite field, exhaustively.

    Enumeration is lexicographic on coordinate tuples (in the field's
    canonical element order) with the zero vector skipped.
    """
    field = algebra.field
    if field.cardinality is None:
        raise InfiniteField("the census needs a finite field")
    candidates = field.cardinality**algebra.dim
    if candidates > budget:
        raise BudgetExceeded(
            f"{candidates} candidates exceed the census budget {budget}"
        )
    codes = _kernels.census_codes(field, algebra.entries, algebra.dim)
    coords = _kernels.decode_census(field, codes, algebra.dim)
    return [algebra.element(c) for c in coords]


def find_idempotents_slice_search(algebra, count, seed=0, free=3, max_slices=20000):
    """Distinct idempotents found by brute-forcing random affine slices.

    Each slice fixes all but ``free`` coordinates at random values and scans
    the q^free completions with the batched kernel.
    """
    field = algebra.field
    if field.cardinality is None:
        raise InfiniteField("slice search needs a finite field")
    q = field.cardinality
    dim = algebra.dim
    rng = random.Random(seed)
    found = {}
    for _ in range(max_slices):
        if len(found) >= count:
            break
        positions = rng.sample(range(dim), free)
        base = [rng.randrange(q) for _ in range(dim)]
        n_batch = q**free
        batch = np.tile(np.array(base, dtype=np.int64), (n_batch, 1))
        for r in range(n_batch):
            x = r
            for p in positions:
                batch[r, p] = x % q
                x //= q
        prod = _kernels.batch_multiply(field, algebra.entries, batch, batch)
        hits = np.nonzero((prod == batch).all(axis=1) & batch.any(axis=1))[0]
        for r in hits.tolist():
            el = algebra.element(_kernels.decode_coords(field, batch[r]))
            found[el.coords] = el
    return list(found.values())[:count]


# ---------------------------------------------------------------------------
# tau and the centralizer
# ---------------------------------------------------------------------------


def centralizer(algebra, f):
    """Solution space of x*f = f*x."""
    diff = algebra.right_mult_matrix(f) - algebra.left_mult_matrix(f)
    return nullspace(diff)


def fixed_space(matrix):
    """Fixed vectors of a linear map."""
    return nullspace(matrix - Matrix.identity(matrix.field, matrix.nrows))


def tau_map(algebra, f):
    """The map x -> f*(f*x) for an idempotent f, with its contract verified:
    order 3, not the identity, an automorphism of the product, fixing f, and
    fixed space equal to the centralizer of f.
    """
    _require_idempotent(algebra, f)
    field = algebra.field
    lf = algebra.left_mult_matrix(f)
    tau = lf @ lf
    ident = Matrix.identity(field, algebra.dim)
    tau3 = tau @ tau @ tau
    if tau3 != ident:
        raise AssertionError("tau^3 is not the identity")
    if tau == ident:
        raise AssertionError("tau is the identity; f would be in the commutative center")
    if (lf @ lf @ lf) @ (lf @ lf @ lf) != ident:
        raise AssertionError("sixth power of left multiplication is not the identity")
    if algebra.element(tau.matvec(f.coords)) != f:
        raise AssertionError("tau does not fix f")
    basis = algebra.basis()
    images = [algebra.element(tau.col(j)) for j in range(algebra.dim)]
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            lhs = algebra.element(tau.matvec(algebra.multiply(basis[i], basis[j]).coords))
            if lhs != algebra.multiply(images[i], images[j]):
                raise AssertionError("tau is not an automorphism of the product")
    if fixed_space(tau) != centralizer(algebra, f):
        raise AssertionError("fixed space of tau differs from the centralizer")
    return tau


# ---------------------------------------------------------------------------
# the unital twist and para-Hurwitz algebras
# ---------------------------------------------------------------------------


def petersson_twist(algebra, f):
    """The unital composition algebra with product x.y = (f*x)*(y*f).

    Keeps the norm of the input algebra; f is verified to be a two-sided
    unit of the result.
    """
    _require_idempotent(algebra, f)
    field = algebra.field
    dim = algebra.dim
    basis = algebra.basis()
    left = [algebra.multiply(f, b) for b in basis]   # f*x
    right = [algebra.multiply(b, f) for b in basis]  # y*f
    tensor = []
    for i in range(dim):
        row = []
        for j in range(dim):
            row.append(list(algebra.multiply(left[i], right[j]).coords))
        tensor.append(row)
    twisted = StructureConstantAlgebra(
        field, dim, algebra.labels, tensor, form=algebra.form, grading=None
    )
    ft = twisted.element(f.coords)
    for j in range(dim):
        bj = twisted.basis_element(j)
        if twisted.multiply(ft, bj) != bj or twisted.multiply(bj, ft) != bj:
            raise AssertionError("twist unit is not two-sided")
    return twisted


@dataclass
class TwistReport:
    field_spec: str
    idempotent: list
    unit_ok: bool
    norm_multiplicative_basis_ok: bool
    recovery_ok: bool
    alternative_trials: int
    alternative_ok: bool
    seed: int

    @property
    def passed(self):
        return (
            self.unit_ok
            and self.norm_multiplicative_basis_ok
            and self.recovery_ok
            and self.alternative_ok
        )

    def summary(self):
        return {
            "field": self.field_spec,
            "idempotent": self.idempotent,
            "unit_ok": self.unit_ok,
            "norm_multiplicative_basis_ok": self.norm_multiplicative_basis_ok,
            "recovery_ok": self.recovery_ok,
            "alternative_trials": self.alternative_trials,
            "alternative_ok": self.alternative_ok,
            "seed": self.seed,
            "passed": self.passed,
        }


def _alternative_laws_hold(twisted, trials, seed):
    """x.(x.y) = (x.x).y and (y.x).x = y.(x.x) on random pairs."""
    field = twisted.field
    if _kernels.supports_field(field):
        rng = random.Random(seed)
        X = _kernels.random_coord_batch(field, rng, trials, twisted.dim)
        Y = _kernels.random_coord_batch(field, rng, trials, twisted.dim)
        mul = lambda a, b: _kernels.batch_multiply(field, twisted.entries, a, b)
        xx = mul(X, X)
        left_ok = _kernels.batch_equal(mul(X, mul(X, Y)), mul(xx, Y))
        right_ok = _kernels.batch_equal(mul(mul(Y, X), X), mul(Y, xx))
        return left_ok and right_ok
    rng = random.Random(seed)
    for _ in range(trials):
        x = twisted.random_element(rng)
        y = twisted.random_element(rng)
        xx = twisted.multiply(x, x)
        if twisted.multiply(x, twisted.multiply(x, y)) != twisted.multiply(xx, y):
            return False
        if twisted.multiply(twisted.multiply(y, x), x) != twisted.multiply(y, xx):
            return False
    return True


def twist_report(algebra, f, trials=500, seed=0):
    """Full verification that the twist at f is a unital composition algebra:
    two-sided unit, multiplicative norm on all basis pairs, alternative laws
    on random pairs, and the recovery identity x*y = (x*f).(f*y).
    """
    twisted = petersson_twist(algebra, f)
    basis = twisted.basis()
    norm_ok = True
    for i in range(twisted.dim):
        ni = twisted.norm(basis[i])
        for j in range(twisted.dim):
            prod = twisted.multiply(basis[i], basis[j])
            if twisted.norm(prod) != ni * twisted.norm(basis[j]):
                norm_ok = False
    recovery_ok = True
    a_basis = algebra.basis()
    for i in range(algebra.dim):
        xf = algebra.multiply(a_basis[i], f)
        for j in range(algebra.dim):
            fy = algebra.multiply(f, a_basis[j])
            via_twist = twisted.multiply(
                twisted.element(xf.coords), twisted.element(fy.coords)
            )
            direct = algebra.multiply(a_basis[i], a_basis[j])
            if via_twist.coords != direct.coords:
                recovery_ok = False
    alt_ok = _alternative_laws_hold(twisted, trials, seed)
    return TwistReport(
        field_spec=algebra.field.spec_string(),
        idempotent=[str(c) for c in f.coords],
        unit_ok=True,  # petersson_twist already raised otherwise
        norm_multiplicative_basis_ok=norm_ok,
        recovery_ok=recovery_ok,
        alternative_trials=trials,
        alternative_ok=alt_ok,
        seed=seed,
    )


def unit_of(algebra):
    """The two-sided unit of a unital algebra, or None."""
    field = algebra.field
    dim = algebra.dim
    rows = []
    rhs = []
    one, zero = field.one, field.zero
    for j in range(dim):
        for k in range(dim):
            rows.append([algebra.tensor[i][j][k] for i in range(dim)])
            rhs.append(one if j == k else zero)
    u = solve(Matrix(field, rows), rhs)
    if u is None:
        return None
    cand = algebra.element(u)
    for j in range(dim):
        bj = algebra.basis_element(j)
        if algebra.multiply(bj, cand) != bj:
            return None
    return cand


def para_hurwitz_of(algebra):
    """The para-Hurwitz algebra x.y = conj(x) conj(y) of a unital algebra,
    with conj(x) = n(1, x) 1 - x."""
    unit = unit_of(algebra)
    if unit is None:
        raise ValueError("para-Hurwitz construction needs a unital algebra")
    field = algebra.field
    dim = algebra.dim
    basis = algebra.basis()
    conj = []
    for b in basis:
        coef = algebra.norm_polar(unit, b)
        conj.append(unit * coef - b)
    tensor = []
    for i in range(dim):
        row = []
        for j in range(dim):
            row.append(list(algebra.multiply(conj[i], conj[j]).coords))
        tensor.append(row)
    return StructureConstantAlgebra(
        field, dim, algebra.labels, tensor, form=algebra.form, grading=None
    )


# ---------------------------------------------------------------------------
# the rank of the norm on a subspace
# ---------------------------------------------------------------------------


def norm_rank_on(subspace, algebra):
    """Rank of the algebra's form on a subspace: dim V - dim V' with
    V' = {v in V : q(v) = 0 and B(v, V) = 0}.

    The polar radical is linear; on it, q vanishes identically when the
    characteristic is odd (q = B/2), and is checked pointwise by exhaustive
    enumeration over finite fields of characteristic 2.
    """
    form = algebra.form
    field = algebra.field
    basis = list(subspace.basis)
    d = len(basis)
    if d == 0:
        return 0
    gram = Matrix(
        field, [[form.polar_eval(a, b) for b in basis] for a in basis]
    )
    rad_coords = nullspace(gram)
    # radical vectors in ambient coordinates
    rad_vectors = []
    zero = field.zero
    for rc in rad_coords.basis:
        vec = [zero] * subspace.ambient
        for c, row in zip(rc, basis):
            if c:
                for j, x in enumerate(row):
                    if x:
                        vec[j] = vec[j] + c * x
        rad_vectors.append(vec)
    if field.characteristic != 2:
        for v in rad_vectors:
            if form.evaluate(v):
                raise AssertionError("quadratic form fails to vanish on the polar radical")
        vprime_dim = len(rad_vectors)
    else:
        if field.cardinality is None:
            raise InfiniteField(
                "characteristic-2 rank needs a finite field for the radical scan"
            )
        # scan the radical for q(v) = 0; the vanishing set is a subspace here
        els = list(field.elements())
        good = []
        r = len(rad_vectors)
        for code in range(field.cardinality**r):
            x = code
            coefs = []
            for _ in range(r):
                coefs.append(els[x % field.cardinality])
                x //= field.cardinality
            vec = [zero] * subspace.ambient
            for c, rv in zip(coefs, rad_vectors):
                if c:
                    for j, val in enumerate(rv):
                        if val:
                            vec[j] = vec[j] + c * val
            if not form.evaluate(vec):
                good.append(vec)
        vprime_dim = Subspace.from_vectors(field, subspace.ambient, good).dim
    return d - vprime_dim


# ---------------------------------------------------------------------------
# classification (characteristic 3)
# ---------------------------------------------------------------------------

QUATERNIONIC = "quaternionic"
QUADRATIC = "quadratic"
SINGULAR = "singular"
NONCLASSIFIED = "nonclassified-char-not-3"

_CLASS_BY_SIGNATURE = {
    (6, 4): QUATERNIONIC,
    (4, 2): QUADRATIC,
    (4, 1): SINGULAR,
}


@dataclass
class IdempotentReport:
    element: object
    norm_value: object
    centralizer_dim: int
    tau_fixed_dim: int
    norm_rank: int
    type_tag: str
    minpoly_degree: int | None = None

    def summary(self):
        out = {
            "element": [str(c) for c in self.element.coords],
            "norm": str(self.norm_value),
            "centralizer_dim": self.centralizer_dim,
            "tau_fixed_dim": self.tau_fixed_dim,
            "norm_rank": self.norm_rank,
            "type": self.type_tag,
        }
        if self.minpoly_degree is not None:
            out["minpoly_degree"] = self.minpoly_degree
        return out


def classify_idempotent(algebra, f):
    """Assign the characteristic-3 type from (centralizer dim, norm rank).

    Raises ClassificationAnomaly for any pair outside the three known cases.
    """
    if algebra.field.characteristic != 3:
        raise BadCharacteristic("the idempotent taxonomy is characteristic 3 only")
    _require_idempotent(algebra, f)
    cent = centralizer(algebra, f)
    tau = tau_map(algebra, f)
    tfix = fixed_space(tau)
    if tfix != cent:
        raise AssertionError("tau-fixed space differs from the centralizer")
    rank = norm_rank_on(cent, algebra)
    tag = _CLASS_BY_SIGNATURE.get((cent.dim, rank))
    if tag is None:
        raise ClassificationAnomaly([str(c) for c in f.coords], cent.dim, rank)
    return IdempotentReport(
        element=f,
        norm_value=algebra.norm(f),
        centralizer_dim=cent.dim,
        tau_fixed_dim=tfix.dim,
        norm_rank=rank,
        type_tag=tag,
    )


def nonclassified_report(algebra, f, model=None):
    """The characteristic != 3 report: tagged, with the minimal-polynomial degree."""
    _require_idempotent(algebra, f)
    cent = centralizer(algebra, f)
    tau = tau_map(algebra, f)
    tfix = fixed_space(tau)
    deg = None
    if model is not None:
        deg = minpoly_check_char_not3(model, model.algebra.element(f.coords))
    return IdempotentReport(
        element=f,
        norm_value=algebra.norm(f),
        centralizer_dim=cent.dim,
        tau_fixed_dim=tfix.dim,
        norm_rank=norm_rank_on(cent, algebra),
        type_tag=NONCLASSIFIED,
        minpoly_degree=deg,
    )


def minpoly_check_char_not3(model, f):
    """Degree of the minimal polynomial of an idempotent of the matrix model,
    viewed as a 3x3 matrix."""
    if model.field.characteristic == 3:
        raise BadCharacteristic("minimal-polynomial check applies when char != 3")
    _require_idempotent(model.algebra, f)
    m = model.matrix_of(f)
    return len(m.minpoly()) - 1


# ---------------------------------------------------------------------------
# the census summary
# ---------------------------------------------------------------------------


@dataclass
class CensusSummary:
    field_spec: str
    total: int
    by_type: dict
    quaternionic_witness: list | None
    quaternionic_is_distinguished: bool
    anomalies: list
    all_norms_one: bool
    dual_pass_consistent: bool
    reports: list = dc_field(default_factory=list, repr=False)

    @property
    def passed(self):
        return (
            self.by_type.get(QUATERNIONIC, 0) == 1
            and self.quaternionic_is_distinguished
            and not self.anomalies
            and self.all_norms_one
            and self.dual_pass_consistent
        )

    def summary(self):
        return {
            "field": self.field_spec,
            "total": self.total,
            "by_type": dict(self.by_type),
            "quaternionic_witness": self.quaternionic_witness,
            "quaternionic_is_distinguished": self.quaternionic_is_distinguished,
            "anomalies": self.anomalies,
            "all_norms_one": self.all_norms_one,
            "dual_pass_consistent": self.dual_pass_consistent,
            "passed": self.passed,
        }


def _dual_pass_codes(algebra):
    """Re-run the census over the serialized-and-reread tensor.

    The second pass always runs the numpy implementation, so with numba
    active the two passes share neither code path nor tensor object; under
    OKUBO_PURE_NUMPY the independence comes from the JSON round trip.
    """
    reread = StructureConstantAlgebra.from_json(algebra.to_json())
    impls = _kernels.implementations()["census"]
    return _kernels.census_codes(
        reread.field, reread.entries, reread.dim, impl=impls["numpy"]
    )


def census_summary(algebra, budget=10**8):
    """Exhaustive census with classification over a finite characteristic-3 field."""
    if algebra.field.characteristic != 3:
        raise BadCharacteristic("the classified census is characteristic 3 only")
    idems = enumerate_idempotents(algebra, budget=budget)
    codes_main = _kernels.census_codes(algebra.field, algebra.entries, algebra.dim)
    codes_check = _dual_pass_codes(algebra)
    dual_ok = bool(np.array_equal(np.sort(codes_main), np.sort(codes_check)))
    by_type = {QUATERNIONIC: 0, QUADRATIC: 0, SINGULAR: 0}
    anomalies = []
    reports = []
    witness = None
    all_norms_one = True
    one = algebra.field.one
    for f in idems:
        if algebra.norm(f) != one:
            all_norms_one = False
        try:
            rep = classify_idempotent(algebra, f)
        except ClassificationAnomaly as exc:
            anomalies.append(
                {
                    "element": exc.coords,
                    "centralizer_dim": exc.centralizer_dim,
                    "norm_rank": exc.norm_rank,
                }
            )
            continue
        reports.append(rep)
        by_type[rep.type_tag] += 1
        if rep.type_tag == QUATERNIONIC:
            witness = [str(c) for c in f.coords]
    e = algebra.element([one] * algebra.dim)
    q_is_e = (
        by_type[QUATERNIONIC] == 1
        and witness == [str(c) for c in e.coords]
    )
    return CensusSummary(
        field_spec=algebra.field.spec_string(),
        total=len(idems),
        by_type=by_type,
        quaternionic_witness=witness,
        quaternionic_is_distinguished=q_is_e,
        anomalies=anomalies,
        all_norms_one=all_norms_one,
        dual_pass_consistent=dual_ok,
        reports=reports,
    )
