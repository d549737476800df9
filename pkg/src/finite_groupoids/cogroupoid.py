"""Cogroupoids in finite-dimensional commutative unital algebras.

Everything is the formal dual of the groupoid picture: S, T, U are algebra
endomorphisms of C, composable pairs become the pushout
C² = (C ⊗ C) / ⟨S(c) ⊗ 1 − 1 ⊗ T(c)⟩, and the composition becomes a
comultiplication m : C → C².  Maps out of a pushout are always obtained from
a cocone on the tensor product; the codiagonal is the multiplication of C.

Tensor coordinates: e_a ⊗ e_b has index a * dim(B) + b.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .algebra import FiniteDimAlgebra, bilinear, multiplicative_failures
from .core import FiniteGroupoid, require_groupoid
from .linalg import Field, Quotient
from .reports import InvalidStructure, MalformedInput, ValidationReport


@dataclass(frozen=True, eq=False)
class CommAlgebra(FiniteDimAlgebra):
    """A commutative algebra with a designated unit vector."""

    unit: np.ndarray = None

    def __post_init__(self):
        super().__post_init__()
        u = self.unit
        u = self.F.zeros((self.dim,)) if u is None or np.size(u) == 0 else self.F.array(u)
        if u.shape != (self.dim,):
            raise MalformedInput(f"unit must have length {self.dim}", field="unit")
        object.__setattr__(self, "unit", u)

    def violations(self) -> list[str]:
        """Names of the failed algebra laws (empty means a commutative unital algebra)."""
        if self.dim == 0:
            return ["unit"]
        bad = []
        if self.associativity_failures():
            bad.append("associativity")
        if not self.is_commutative():
            bad.append("commutativity")
        d = self.dim
        # unit * e_j = e_j for every j (commutativity covers the other side)
        left = self.F.matmul(self.unit.reshape(1, d), self.sc.reshape(d, d * d)).reshape(d, d)
        if not np.all(left == self.F.eye(d)):
            bad.append("unit")
        return bad

    def __eq__(self, other):
        return (super().__eq__(other) and isinstance(other, CommAlgebra)
                and bool(np.all(self.unit == other.unit)))

    __hash__ = None


def functions_algebra(F: Field, k: int) -> CommAlgebra:
    """Field-valued functions on a k-point set; e_a is the indicator of a."""
    sc = np.zeros((k, k, k), dtype=np.int64)
    for a in range(k):
        sc[a, a, a] = 1
    return CommAlgebra(F, k, F.array(sc), F.array(np.ones(k, dtype=np.int64)))


def tensor_product(A: CommAlgebra, B: CommAlgebra) -> CommAlgebra:
    F = A.F
    a, b = A.dim, B.dim
    outer = F.matmul(A.sc.reshape(-1, 1), B.sc.reshape(1, -1)).reshape(a, a, a, b, b, b)
    sc = outer.transpose(0, 3, 1, 4, 2, 5).reshape(a * b, a * b, a * b)
    unit = F.matmul(A.unit.reshape(-1, 1), B.unit.reshape(1, -1)).reshape(a * b)
    return CommAlgebra(F, a * b, sc, unit)


def hom_failures(A: CommAlgebra, B: CommAlgebra, m: np.ndarray) -> list:
    """Witnesses that ``m`` is not a unital algebra map A -> B."""
    if m.shape != (B.dim, A.dim):
        return ["shape"]
    bad: list = multiplicative_failures(A.F, A, B, m)
    if not np.all(A.F.matmul(m, A.unit) == B.unit):
        bad.append("unit")
    return bad


def _close_ideal(F: Field, T: CommAlgebra, gens: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """RREF basis of the ideal of T generated by the rows of ``gens``.

    The current span is multiplied by every basis element and re-reduced
    until nothing new appears.
    """
    D = T.dim
    if gens.shape[0] == 0:
        return F.zeros((0, D)), []
    R, piv = la.rref(F, gens)
    flat = T.sc.reshape(D, D * D)
    while R.shape[0]:
        products = F.matmul(R, flat).reshape(R.shape[0] * D, D)
        # residual modulo the current span: products @ (I - Sel R)
        sel = F.zeros((D, len(piv)))
        for i, c in enumerate(piv):
            sel[c, i] = 1
        residual = F.matmul(products, F.reduce(F.eye(D) - F.matmul(sel, R)))
        fresh = residual[np.any(residual != 0, axis=1)]
        if fresh.shape[0] == 0:
            break
        R, piv = la.rref(F, np.concatenate([R, fresh]))
    return R, piv


@dataclass(eq=False)
class Pushout:
    """(A ⊗ B) / ⟨α(c) ⊗ 1 − 1 ⊗ β(c)⟩ with its two legs j1, j2.

    Unpacks as ``(algebra, j1, j2)``.
    """

    A: CommAlgebra
    B: CommAlgebra
    alpha: np.ndarray
    beta: np.ndarray
    tensor: CommAlgebra
    quotient: Quotient
    algebra: CommAlgebra
    j1: np.ndarray
    j2: np.ndarray
    projection: np.ndarray     # A ⊗ B -> algebra

    def __iter__(self):
        return iter((self.algebra, self.j1, self.j2))

    @property
    def ideal_dim(self) -> int:
        return self.tensor.dim - self.algebra.dim

    def cocone_failures(self, phi1: np.ndarray, phi2: np.ndarray) -> np.ndarray:
        """Basis indices c where phi1(α(c)) != phi2(β(c))."""
        F = self.A.F
        lhs = F.matmul(phi1, self.alpha)
        rhs = F.matmul(phi2, self.beta)
        return np.nonzero(np.any(lhs != rhs, axis=0))[0]

    def induced(self, phi1: np.ndarray, phi2: np.ndarray, X: CommAlgebra) -> np.ndarray:
        """The map out of the pushout determined by the legs phi1, phi2 into X.

        Raises InvalidStructure if the legs do not form a cocone (then no
        such map exists).
        """
        F = self.A.F
        bad = self.cocone_failures(phi1, phi2)
        if len(bad):
            raise InvalidStructure(f"legs do not agree on basis elements {bad[:3].tolist()}",
                                   axiom="cocone")
        on_tensor = bilinear(X, phi1, phi2).reshape(X.dim, self.tensor.dim)
        if self.quotient.ideal.shape[0] and not la.is_zero(
                F.matmul(on_tensor, self.quotient.ideal.T)):
            raise InvalidStructure("induced map does not vanish on the ideal", axiom="cocone")
        return on_tensor[:, list(self.quotient.keep)]

    def legs_generate(self) -> bool:
        """Products j1(a) j2(b) span the pushout, so induced maps are unique."""
        P = self.algebra
        span = bilinear(P, self.j1, self.j2).reshape(P.dim, -1)
        return la.rank(P.F, span) == P.dim


def pushout_of(A: CommAlgebra, B: CommAlgebra, alpha: np.ndarray, beta: np.ndarray,
               C: CommAlgebra | None = None) -> Pushout:
    """Pushout of A <- C -> B given by α : C -> A and β : C -> B."""
    F = A.F
    C = C if C is not None else A
    for name, tgt, m in (("alpha", A, alpha), ("beta", B, beta)):
        bad = hom_failures(C, tgt, m)
        if bad:
            raise InvalidStructure(f"{name} is not a unital algebra map: {bad[:3]}",
                                   axiom="coA8")
    Tn = tensor_product(A, B)
    gens = F.reduce(np.kron(alpha, B.unit.reshape(-1, 1))
                    - np.kron(A.unit.reshape(-1, 1), beta)).T
    R, piv = _close_ideal(F, Tn, gens)
    Q = Quotient(F, Tn.dim, R, tuple(int(c) for c in piv),
                 tuple(c for c in range(Tn.dim) if c not in piv))
    proj = Q.projection()
    keep = list(Q.keep)
    q = len(keep)
    if q:
        block = Tn.sc[np.ix_(keep, keep)].reshape(q * q, Tn.dim)
        sc = F.matmul(block, proj.T).reshape(q, q, q)
    else:
        sc = F.zeros((0, 0, 0))
    P = CommAlgebra(F, q, sc, F.matmul(proj, Tn.unit) if q else F.zeros((0,)))
    j1 = F.matmul(proj, F.reduce(np.kron(A.basis(), B.unit.reshape(-1, 1))))
    j2 = F.matmul(proj, F.reduce(np.kron(A.unit.reshape(-1, 1), B.basis())))
    return Pushout(A, B, alpha, beta, Tn, Q, P, j1, j2, proj)


def pushout(C: CommAlgebra, S: np.ndarray, T: np.ndarray) -> Pushout:
    """C² for the endomorphisms S, T of C; unpacks as ``(Csq, i1, i2)``."""
    return pushout_of(C, C, S, T, C)


@dataclass(eq=False)
class Cogroupoid:
    C: CommAlgebra
    S: np.ndarray
    T: np.ndarray
    U: np.ndarray
    Csq: CommAlgebra
    i1: np.ndarray
    i2: np.ndarray
    m: np.ndarray

    def __post_init__(self):
        F, d = self.C.F, self.C.dim
        for name in ("S", "T", "U"):
            a = F.array(getattr(self, name))
            if a.shape != (d, d):
                raise MalformedInput(f"{name} must be {d}x{d}", field=name)
            setattr(self, name, a)
        e = self.Csq.dim
        for name in ("i1", "i2", "m"):
            a = F.array(getattr(self, name)) if np.size(getattr(self, name)) else F.zeros((e, d))
            if a.shape != (e, d):
                raise MalformedInput(f"{name} must be {e}x{d}", field=name)
            setattr(self, name, a)
        if self.Csq.F != F:
            raise MalformedInput("C and Csq live over different fields", field="Csq")

    @property
    def F(self) -> Field:
        return self.C.F


def _diff_cols(x: np.ndarray, y: np.ndarray) -> list[int]:
    return [int(c) for c in np.nonzero(np.any(x != y, axis=0))[0]]


def validate_cogroupoid(c: Cogroupoid) -> ValidationReport:
    """Check every dual axiom by exact matrix identities.

    coA0 algebra laws (C and C² commutative, unital), coA1..coA7 the
    idempotent/involution equations, coA8 the structure maps are unital
    algebra maps, coA9 the square commutes, coA10 C² is the pushout,
    coA11/12 m against T and S, coA13/14 counit, coA15/16 antipode,
    coA17 coassociativity.
    """
    F, C = c.F, c.C
    rep = ValidationReport("cogroupoid")
    bad = C.violations()
    rep.add("coA0", "C is a commutative unital algebra", bad)
    rep.add("coA0", "C² is a commutative unital algebra", c.Csq.violations())
    if not rep.ok:
        return rep
    S, T, U = c.S, c.T, c.U
    I = F.eye(C.dim)

    def mm(*ms):
        out = ms[-1]
        for x in reversed(ms[:-1]):
            out = F.matmul(x, out)
        return out

    rep.add("coA1", "S∘S = S", _diff_cols(mm(S, S), S))
    rep.add("coA2", "T∘T = T", _diff_cols(mm(T, T), T))
    rep.add("coA3", "S∘T = S", _diff_cols(mm(S, T), S))
    rep.add("coA4", "T∘S = T", _diff_cols(mm(T, S), T))
    rep.add("coA5", "U∘T = S", _diff_cols(mm(U, T), S))
    rep.add("coA6", "S∘U = S", _diff_cols(mm(S, U), S))
    rep.add("coA7", "U∘U = id", _diff_cols(mm(U, U), I))
    for name, tgt, m in (("S", C, S), ("T", C, T), ("U", C, U),
                         ("i1", c.Csq, c.i1), ("i2", c.Csq, c.i2), ("m", c.Csq, c.m)):
        rep.add("coA8", f"{name} is a unital algebra map",
                [f"{name}:{w}" for w in hom_failures(C, tgt, m)])
    rep.add("coA9", "i1∘S = i2∘T", _diff_cols(mm(c.i1, S), mm(c.i2, T)))
    rep.add("coA11", "m∘T = i1∘T", _diff_cols(mm(c.m, T), mm(c.i1, T)))
    rep.add("coA12", "m∘S = i2∘S", _diff_cols(mm(c.m, S), mm(c.i2, S)))
    if any(v.axiom in ("coA1", "coA2", "coA3", "coA4", "coA8") for v in rep.violations):
        return rep

    P = pushout(C, S, T)
    rep.info["pushout_dim"] = P.algebra.dim
    rep.info["ideal_dim"] = P.ideal_dim
    kappa = None
    if not rep.axioms.count("coA9"):
        kappa = P.induced(c.i1, c.i2, c.Csq)
        if la.inverse(F, kappa) is None:
            rep.add("coA10", "C² is the pushout of (S, T)",
                    [f"dim {c.Csq.dim} vs {P.algebra.dim}"])
            kappa = None
    if kappa is None:
        return rep
    kappa_inv = la.inverse(F, kappa)

    def out_of_csq(phi1, phi2, X):
        """Map C² -> X from legs phi1, phi2, or None if they are not a cocone."""
        try:
            return F.matmul(P.induced(phi1, phi2, X), kappa_inv)
        except InvalidStructure:
            return None

    def diagram(axiom, law, phi1, phi2, expected):
        f = out_of_csq(phi1, phi2, C)
        if f is None:
            rep.add(axiom, law, ["legs do not form a cocone"])
            return
        rep.add(axiom, law, _diff_cols(mm(f, c.m), expected))

    diagram("coA13", "δ∘(T⊔id)∘m = id", T, I, I)
    diagram("coA14", "δ∘(id⊔S)∘m = id", I, S, I)
    diagram("coA15", "δ∘(U⊔id)∘m = S", U, I, S)
    diagram("coA16", "δ∘(id⊔U)∘m = T", I, U, T)

    # C³ = C² ⊔ C over (i2∘S, T); bracketings compared via induced maps
    C3 = pushout_of(c.Csq, C, mm(c.i2, S), T, C)
    X = C3.algebra
    rep.info["triple_dim"] = X.dim
    rho = out_of_csq(mm(C3.j1, c.i2), C3.j2, X)
    left = out_of_csq(mm(C3.j1, c.m), C3.j2, X)
    right = out_of_csq(mm(C3.j1, c.i1), mm(rho, c.m), X) if rho is not None else None
    if left is None or right is None:
        rep.add("coA17", "(m⊔id)∘m = (id⊔m)∘m", ["bracketing maps undefined"])
    else:
        rep.add("coA17", "(m⊔id)∘m = (id⊔m)∘m", _diff_cols(mm(left, c.m), mm(right, c.m)))
    if rep.ok:
        rep.info["cobase_dim"] = cobase(c).shape[1]
    return rep


def require_cogroupoid(c: Cogroupoid) -> None:
    rep = validate_cogroupoid(c)
    if not rep.ok:
        raise InvalidStructure("not a cogroupoid: " + ", ".join(rep.axioms), report=rep)


def cobase(c: Cogroupoid) -> np.ndarray:
    """Basis (columns) of the equalizer of (S, id), i.e. the fixed subalgebra of S.

    Verified to equal im S, and to be carried isomorphically onto the fixed
    subalgebra of T by T (with S as the inverse).  The two fixed subalgebras
    are in general different subspaces of C.
    """
    F, d = c.F, c.C.dim
    I = F.eye(d)
    fix_s = la.nullspace(F, F.reduce(c.S - I))
    fix_t = la.nullspace(F, F.reduce(c.T - I))
    assert la.same_span(F, fix_s, la.column_space(F, c.S)), "fixed space of S is not im S"
    assert fix_s.shape[1] == fix_t.shape[1], "fixed spaces of S and T differ in dimension"
    assert np.all(F.matmul(c.S, F.matmul(c.T, fix_s)) == fix_s), "T then S is not id on Fix S"
    assert np.all(F.matmul(c.T, F.matmul(c.S, fix_t)) == fix_t), "S then T is not id on Fix T"
    return la.column_space(F, fix_s) if fix_s.shape[1] else fix_s


# -- duality with finite groupoids -------------------------------------------

def _precompose(F: Field, f: tuple[int, ...]) -> np.ndarray:
    """Matrix of c -> c∘f on indicator functions: column j has 1 at x iff f(x) = j."""
    n = len(f)
    a = np.zeros((n, n), dtype=np.int64)
    for x, y in enumerate(f):
        a[x, y] = 1
    return F.array(a)


def dualize_groupoid(g: FiniteGroupoid, field_: Field | str = "Q") -> Cogroupoid:
    """The cogroupoid of field-valued functions on a finite groupoid."""
    F = la.field(field_)
    require_groupoid(g)
    if g.n == 0:
        raise InvalidStructure("the empty groupoid has the zero algebra, which has no unit",
                               axiom="coA0")
    n = g.n
    C = functions_algebra(F, n)
    S, T, U = (_precompose(F, g.sigma), _precompose(F, g.tau), _precompose(F, g.upsilon))
    P = pushout(C, S, T)
    pairs = g.composable_pairs()
    # δ_(a,b) ↦ class of e_a ⊗ e_b: an algebra isomorphism functions(G₂) ≅ C²
    iso = P.projection[:, [a * n + b for a, b in pairs]]
    if la.inverse(F, iso) is None:
        raise AssertionError("functions on composable pairs do not match the pushout")
    m = F.zeros((P.algebra.dim, n))
    for k, (a, b) in enumerate(pairs):
        m[:, g.mu[a][b]] += iso[:, k]
    return Cogroupoid(C, S, T, U, P.algebra, P.j1, P.j2, F.reduce(m))


# -- the Hopf case ------------------------------------------------------------

@dataclass(eq=False)
class HopfPresentation:
    """Commutative Hopf algebra: C with unit, comultiplication into C ⊗ C
    (index a*d + b), counit row vector and antipode."""

    C: CommAlgebra
    comult: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray

    @property
    def F(self) -> Field:
        return self.C.F

    def violations(self) -> list[str]:
        F, C = self.F, self.C
        d = C.dim
        bad = [f"algebra:{v}" for v in C.violations()]
        if bad:
            return bad
        D, e, A = self.comult, self.counit.reshape(1, d), self.antipode
        if D.shape != (d * d, d) or A.shape != (d, d):
            return ["shape"]
        I = F.eye(d)
        CC = tensor_product(C, C)
        if not np.all(F.matmul(F.array(np.kron(D, I)), D) == F.matmul(F.array(np.kron(I, D)), D)):
            bad.append("coassociativity")
        if not (np.all(F.matmul(F.array(np.kron(e, I)), D) == I)
                and np.all(F.matmul(F.array(np.kron(I, e)), D) == I)):
            bad.append("counit")
        if hom_failures(C, CC, D):
            bad.append("comultiplication-multiplicative")
        one = F.array(np.ones((1, 1), dtype=np.int64))
        field_alg = CommAlgebra(F, 1, F.array(np.ones((1, 1, 1), dtype=np.int64)), one[0])
        if hom_failures(C, field_alg, e):
            bad.append("counit-multiplicative")
        mult = C.product_matrix()
        ue = F.matmul(C.unit.reshape(d, 1), e)
        if not (np.all(F.matmul(mult, F.matmul(F.array(np.kron(A, I)), D)) == ue)
                and np.all(F.matmul(mult, F.matmul(F.array(np.kron(I, A)), D)) == ue)):
            bad.append("antipode")
        if not np.all(F.matmul(D, C.unit) == CC.unit):
            bad.append("m(1)=1⊗1")
        return bad


def hopf_check(c: Cogroupoid) -> HopfPresentation | None:
    """The Hopf presentation when S = T = ι∘ε, else None."""
    F, C = c.F, c.C
    d = C.dim
    if not np.all(c.S == c.T) or la.rank(F, c.S) != 1:
        return None
    if not np.all(F.matmul(c.S, C.unit) == C.unit):
        return None
    # S = unit ⊗ ε; read ε off a row where the unit is nonzero
    r = int(np.nonzero(C.unit)[0][0])
    eps = F.reduce(c.S[r] * F.inv(C.unit[r]))
    if not np.all(F.matmul(C.unit.reshape(d, 1), eps.reshape(1, d)) == c.S):
        return None
    P = pushout(C, c.S, c.T)
    if P.ideal_dim:
        return None
    kappa = P.induced(c.i1, c.i2, c.Csq)
    kappa_inv = la.inverse(F, kappa)
    if kappa_inv is None:
        return None
    # with no ideal the pushout coordinates are those of C ⊗ C
    comult = F.matmul(kappa_inv, c.m)
    h = HopfPresentation(C, comult, eps, c.U.copy())
    bad = h.violations()
    if bad:
        raise InvalidStructure(f"S = ι∘ε but Hopf axioms fail: {', '.join(bad)}",
                               axiom=bad[0])
    return h


def cogroupoid_from_hopf(h: HopfPresentation) -> Cogroupoid:
    bad = h.violations()
    if bad:
        raise InvalidStructure(f"not a Hopf algebra: {', '.join(bad)}", axiom=bad[0])
    F, C = h.F, h.C
    d = C.dim
    S = F.matmul(C.unit.reshape(d, 1), h.counit.reshape(1, d))
    P = pushout(C, S, S)
    m = F.matmul(P.projection, h.comult)
    return Cogroupoid(C, S, S.copy(), h.antipode, P.algebra, P.j1, P.j2, m)

