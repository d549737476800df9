"""Groupoid objects in finite-dimensional associative algebras.

Vectors are coordinate columns; a map G -> H is a (dim H) x (dim G) matrix.
The pullback G2 = {(g, f) : Σg = Tf} sits inside G x G (coordinates of g
first), is computed as a kernel, and carries the componentwise product.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg as la
from .linalg import Field
from .reports import InvalidStructure, MalformedInput, ValidationReport


@dataclass(frozen=True, eq=False)
class FiniteDimAlgebra:
    """``sc[i, j, k]`` is the coefficient of e_k in e_i e_j."""

    F: Field
    dim: int
    sc: np.ndarray

    def __post_init__(self):
        d = self.dim
        sc = self.F.array(self.sc) if np.size(self.sc) else self.F.zeros((d, d, d))
        if sc.shape != (d, d, d):
            raise MalformedInput(f"structure constants must be {d}x{d}x{d}", field="sc")
        object.__setattr__(self, "sc", sc)

    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        d = self.dim
        if d == 0:
            return self.F.zeros((0,))
        uv = np.outer(u, v).reshape(d * d)
        return self.F.matmul(uv, self.sc.reshape(d * d, d))

    def left_mult(self, i: int) -> np.ndarray:
        """Matrix of v -> e_i v."""
        return self.sc[i].T.copy()

    def right_mult(self, j: int) -> np.ndarray:
        """Matrix of v -> v e_j."""
        return self.sc[:, j, :].T.copy()

    def basis(self) -> np.ndarray:
        return self.F.eye(self.dim)

    def associativity_failures(self) -> list[tuple[int, int, int]]:
        d, F, sc = self.dim, self.F, self.sc
        # (e_i e_j) e_k vs e_i (e_j e_k), all triples at once
        if d == 0:
            return []
        flat = sc.reshape(d * d, d)
        left = F.matmul(flat, sc.reshape(d, d * d)).reshape(d, d, d, d)
        right = F.matmul(flat, sc.transpose(1, 0, 2).reshape(d, d * d))
        right = right.reshape(d, d, d, d).transpose(2, 0, 1, 3)
        bad = np.argwhere(np.any(left != right, axis=3))
        return [tuple(int(x) for x in b) for b in bad]

    def is_commutative(self) -> bool:
        return bool(np.all(self.sc == self.sc.transpose(1, 0, 2)))

    def product_matrix(self) -> np.ndarray:
        """The linear map A ⊗ A -> A, tensor index i*d + j."""
        d = self.dim
        return self.sc.reshape(d * d, d).T.copy()

    def __eq__(self, other):
        return (isinstance(other, FiniteDimAlgebra) and self.F == other.F
                and self.dim == other.dim and bool(np.all(self.sc == other.sc)))


def direct_product(A: FiniteDimAlgebra, B: FiniteDimAlgebra) -> FiniteDimAlgebra:
    F, a, b = A.F, A.dim, B.dim
    sc = F.zeros((a + b, a + b, a + b))
    sc[:a, :a, :a] = A.sc
    sc[a:, a:, a:] = B.sc
    return FiniteDimAlgebra(F, a + b, sc)


def bilinear(X: FiniteDimAlgebra, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """``out[:, a, b]`` is the product of columns U[:, a] and V[:, b] in X."""
    F, d = X.F, X.dim
    a, b = U.shape[1], V.shape[1]
    if d == 0 or a == 0 or b == 0:
        return F.zeros((d, a, b))
    W = F.matmul(U.T, X.sc.reshape(d, d * d)).reshape(a, d, d)
    out = F.matmul(W.transpose(0, 2, 1).reshape(a * d, d), V).reshape(a, d, b)
    return out.transpose(1, 0, 2)


def multiplicative_failures(F: Field, A: FiniteDimAlgebra, B: FiniteDimAlgebra,
                            m: np.ndarray) -> list[tuple[int, int]]:
    """Basis pairs (i, j) with m(e_i e_j) != m(e_i) m(e_j)."""
    d = A.dim
    if d == 0:
        return []
    lhs = F.matmul(A.sc.reshape(d * d, d), m.T).reshape(d, d, B.dim).transpose(2, 0, 1)
    rhs = bilinear(B, m, m)
    bad = np.argwhere(np.any(lhs != rhs, axis=0))
    return [(int(i), int(j)) for i, j in bad]


@dataclass(frozen=True, eq=False)
class AlgebraMap:
    domain: FiniteDimAlgebra
    codomain: FiniteDimAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        F = self.domain.F
        m = F.array(self.matrix) if np.size(self.matrix) else F.zeros(
            (self.codomain.dim, self.domain.dim))
        if m.shape != (self.codomain.dim, self.domain.dim):
            raise MalformedInput(f"map matrix must be {self.codomain.dim}x{self.domain.dim}",
                                 field="matrix")
        object.__setattr__(self, "matrix", m)

    def failures(self) -> list[tuple[int, int]]:
        return multiplicative_failures(self.domain.F, self.domain, self.codomain, self.matrix)


def split_projection(F: Field, P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Kernel and image bases (as columns) of an idempotent matrix."""
    P = F.array(P)
    if not np.all(F.matmul(P, P) == P):
        raise InvalidStructure("map is not idempotent", axiom="P∘P=P")
    ker, im = la.nullspace(F, P), la.column_space(F, P)
    d = P.shape[0]
    if ker.shape[1] + im.shape[1] != d or la.rank(F, np.concatenate([ker, im], axis=1).T) != d:
        raise AssertionError("kernel and image do not split the space")
    return ker, im


# -- groupoid objects --------------------------------------------------------------

@dataclass(eq=False)
class AlgebraGroupoidObject:
    """``g2_basis`` columns span G2 inside G x G; ``mu`` acts on their coordinates."""

    G: FiniteDimAlgebra
    Sigma: np.ndarray
    Tau: np.ndarray
    Upsilon: np.ndarray
    mu: np.ndarray
    g2_basis: np.ndarray

    def __post_init__(self):
        F, d = self.G.F, self.G.dim
        for name in ("Sigma", "Tau", "Upsilon"):
            m = F.array(getattr(self, name)) if np.size(getattr(self, name)) else F.zeros((d, d))
            if m.shape != (d, d):
                raise MalformedInput(f"{name} must be {d}x{d}", field=name)
            setattr(self, name, m)
        gb = F.array(self.g2_basis) if np.size(self.g2_basis) else F.zeros((2 * d, 0))
        if gb.ndim != 2 or gb.shape[0] != 2 * d:
            raise MalformedInput(f"g2_basis must have {2 * d} rows", field="g2_basis")
        self.g2_basis = gb
        r = gb.shape[1]
        mu = F.array(self.mu) if np.size(self.mu) else F.zeros((d, r))
        if mu.shape != (d, r):
            raise MalformedInput(f"mu must be {d}x{r}", field="mu")
        self.mu = mu

    @property
    def F(self) -> Field:
        return self.G.F

    def _coordinate_rows(self):
        # r independent rows of the basis matrix give a left inverse on its span
        if getattr(self, "_rows", None) is None:
            F, B = self.F, self.g2_basis
            r = B.shape[1]
            if r == 0:
                self._rows = ([], F.zeros((0, 0)))
            else:
                _, piv = la.rref(F, B.T)
                inv = la.inverse(F, B[piv]) if len(piv) == r else None
                self._rows = (piv, inv)
        return self._rows

    def g2_coords(self, pairs: np.ndarray) -> np.ndarray | None:
        """Coordinates of pair vectors (columns) in ``g2_basis``; None if outside."""
        F, B = self.F, self.g2_basis
        rows, inv = self._coordinate_rows()
        if inv is None:
            return la.solve(F, B, pairs)
        x = F.matmul(inv, pairs[rows])
        if not np.all(F.matmul(B, x) == pairs):
            return None
        return x

    def mu_on_pairs(self, pairs: np.ndarray) -> np.ndarray | None:
        x = self.g2_coords(pairs)
        return None if x is None else self.F.matmul(self.mu, x)


def pullback_basis(F: Field, Sigma: np.ndarray, Tau: np.ndarray) -> np.ndarray:
    """Basis of {(g, f) : Σg = Tf} as columns of length 2d."""
    return la.nullspace(F, F.reduce(np.concatenate([Sigma, -Tau], axis=1)))


def _stack(F, top, bottom):
    return F.reduce(np.concatenate([top, bottom], axis=0))


def validate_algebra_groupoid(a: AlgebraGroupoidObject) -> ValidationReport:
    """All category/groupoid axioms by exact linear algebra on bases."""
    F, G, d = a.F, a.G, a.G.dim
    S, T, U = a.Sigma, a.Tau, a.Upsilon
    I = F.eye(d)
    report = ValidationReport("algebra groupoid")

    def eq(x, y):
        return bool(np.all(x == y))

    def cols(x, y):
        return [j for j in range(x.shape[1]) if not np.all(x[:, j] == y[:, j])]

    report.add("ALG", "G is associative", G.associativity_failures())
    for name, m in (("Σ", S), ("T", T), ("Υ", U)):
        report.add("HOM", f"{name} is multiplicative",
                   [f"{name}{w}" for w in multiplicative_failures(F, G, G, m)])
    report.add("A1", "TΣ=Σ", cols(F.matmul(T, S), S))
    report.add("A2", "ΣT=T", cols(F.matmul(S, T), T))

    # G2 must be exactly the kernel and closed under the componentwise product
    expected = pullback_basis(F, S, T)
    if not la.same_span(F, expected, a.g2_basis) or la.rank(F, a.g2_basis.T) != a.g2_basis.shape[1]:
        report.add("A3", "g2_basis spans {(g,f): Σg=Tf}", ["span"])
        return report
    B = a.g2_basis
    r = B.shape[1]
    not_closed = []
    mu_bad = []
    for i in range(r):
        for j in range(r):
            # componentwise product in G x G
            prod = np.concatenate([G.mul(B[:d, i], B[:d, j]), G.mul(B[d:, i], B[d:, j])])
            coords = a.g2_coords(prod)
            if coords is None:
                not_closed.append((i, j))
                continue
            lhs = F.matmul(a.mu, coords)
            rhs = G.mul(a.mu[:, i], a.mu[:, j])
            if not eq(lhs, rhs):
                mu_bad.append(f"μ{(i, j)}")
    report.add("A3", "G2 is a subalgebra of G×G", not_closed)
    report.add("HOM", "μ is multiplicative", mu_bad)
    if not report.ok:
        return report

    mu_of = a.mu_on_pairs
    report.add("A4", "μ(g,Σg)=g", cols(mu_of(_stack(F, I, S)), I))
    report.add("A5", "μ(Tg,g)=g", cols(mu_of(_stack(F, T, I)), I))
    mu_B = F.matmul(a.mu, F.eye(r))
    report.add("A6", "Σμ(g,f)=Σf", cols(F.matmul(S, mu_B), F.matmul(S, B[d:])))
    report.add("A7", "Tμ(g,f)=Tg", cols(F.matmul(T, mu_B), F.matmul(T, B[:d])))

    # triple pullback {(h, g, f) : Σh = Tg, Σg = Tf}
    Z = F.zeros((d, d))
    cons = F.reduce(np.block([[S, -T, Z], [Z, S, -T]]))
    G3 = la.nullspace(F, cons)
    h, g, f = G3[:d], G3[d:2 * d], G3[2 * d:]
    hg = mu_of(_stack(F, h, g))
    gf = mu_of(_stack(F, g, f))
    if hg is None or gf is None:
        report.add("A8", "μ(μ(h,g),f)=μ(h,μ(g,f))", ["G3 leaves G2"])
    else:
        lhs, rhs = mu_of(_stack(F, hg, f)), mu_of(_stack(F, h, gf))
        if lhs is None or rhs is None:
            report.add("A8", "μ(μ(h,g),f)=μ(h,μ(g,f))", ["composite pair leaves G2"])
        else:
            report.add("A8", "μ(μ(h,g),f)=μ(h,μ(g,f))", cols(lhs, rhs))

    report.add("G1", "TΥ=Σ", cols(F.matmul(T, U), S))
    report.add("G1", "ΥΣ=Σ", cols(F.matmul(U, S), S))
    report.add("G1", "ΥΥ=id", cols(F.matmul(U, U), I))
    if report.ok:
        report.add("G2", "μ(g,Υg)=Tg", cols(mu_of(_stack(F, I, U)), T))
        report.add("G3", "μ(Υg,g)=Σg", cols(mu_of(_stack(F, U, I)), S))
    else:
        # (g, Υg) need not be composable when G1 fails
        for axiom, law, pairs, target in (("G2", "μ(g,Υg)=Tg", _stack(F, I, U), T),
                                          ("G3", "μ(Υg,g)=Σg", _stack(F, U, I), S)):
            v = mu_of(pairs)
            report.add(axiom, law, ["(g,Υg) not composable"] if v is None else cols(v, target))
    primitive_ok = report.ok
    report.add("D1", "ΣΣ=Σ and TT=T",
               cols(F.matmul(S, S), S) + cols(F.matmul(T, T), T), derived=primitive_ok)
    report.add("D2", "ΣΥ=T", cols(F.matmul(S, U), T), derived=primitive_ok)
    return report


@dataclass
class StructureReport:
    sigma_equals_tau: bool
    upsilon_signs: bool
    kernel_square_zero: bool
    mu_is_sum: bool
    kernel_dim: int = 0
    image_dim: int = 0
    details: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.sigma_equals_tau and self.upsilon_signs and self.kernel_square_zero \
            and self.mu_is_sum

    def items(self) -> list[tuple[str, bool]]:
        return [("Σ=T", self.sigma_equals_tau), ("Υ|N=-id, Υ|H=id", self.upsilon_signs),
                ("N·N=0", self.kernel_square_zero), ("μ(g,f)=g+f-Σg", self.mu_is_sum)]

    def to_json(self) -> dict:
        return {"checks": {k: v for k, v in self.items()}, "all_pass": self.ok,
                "dim_N": self.kernel_dim, "dim_H": self.image_dim}


def structure_theorem_check(a: AlgebraGroupoidObject) -> StructureReport:
    """Verify that a valid object is an abelian extension with additive μ."""
    report = validate_algebra_groupoid(a)
    if not report.ok:
        raise InvalidStructure("structure check needs a valid groupoid object", report)
    F, G, d = a.F, a.G, a.G.dim
    S = a.Sigma
    N, H = split_projection(F, S)
    same = bool(np.all(S == a.Tau))
    ups = bool(np.all(F.matmul(a.Upsilon, N) == F.reduce(-N))
               and np.all(F.matmul(a.Upsilon, H) == H))
    square_zero = all(not np.any(G.mul(N[:, i], N[:, j]))
                      for i in range(N.shape[1]) for j in range(N.shape[1]))
    B = a.g2_basis
    summed = F.reduce(B[:d] + B[d:] - F.matmul(S, B[:d]))
    mu_sum = bool(np.all(a.mu == summed))
    return StructureReport(same, ups, square_zero, mu_sum, N.shape[1], H.shape[1])


# -- abelian extensions ---------------------------------------------------------------

@dataclass(eq=False)
class Bimodule:
    """Left and right action matrices of each basis element of H on N."""

    F: Field
    dim: int
    left: np.ndarray    # (dim H, dim N, dim N)
    right: np.ndarray

    def __post_init__(self):
        self.left = self.F.array(self.left) if np.size(self.left) else self.left
        self.right = self.F.array(self.right) if np.size(self.right) else self.right

    def violations(self, H: FiniteDimAlgebra) -> list[str]:
        F, k, dn = self.F, H.dim, self.dim
        if self.left.shape != (k, dn, dn) or self.right.shape != (k, dn, dn):
            return ["shape"]
        if dn == 0:
            return []
        Ls, Rs = self.left, self.right
        bad = []

        def combo(mats, coeffs):
            return F.reduce(np.tensordot(coeffs, mats, axes=1))

        if any(not np.all(combo(Ls, H.sc[i, j]) == F.matmul(Ls[i], Ls[j]))
               for i in range(k) for j in range(k)):
            bad.append("left-associativity")
        if any(not np.all(combo(Rs, H.sc[i, j]) == F.matmul(Rs[j], Rs[i]))
               for i in range(k) for j in range(k)):
            bad.append("right-associativity")
        if any(not np.all(F.matmul(Rs[j], Ls[i]) == F.matmul(Ls[i], Rs[j]))
               for i in range(k) for j in range(k)):
            bad.append("left-right-commutation")
        return bad


def zero_bimodule(H: FiniteDimAlgebra, dn: int) -> Bimodule:
    z = H.F.zeros((H.dim, dn, dn))
    return Bimodule(H.F, dn, z, z.copy())


def extension_algebra(H: FiniteDimAlgebra, N: Bimodule) -> FiniteDimAlgebra:
    """H ⊕ N with (h,n)(h',n') = (hh', h·n' + n·h'); basis of H first."""
    F, k, dn = H.F, H.dim, N.dim
    d = k + dn
    sc = F.zeros((d, d, d))
    sc[:k, :k, :k] = H.sc
    for i in range(k):
        for j in range(dn):
            sc[i, k + j, k:] = N.left[i][:, j]
            sc[k + j, i, k:] = N.right[i][:, j]
    return FiniteDimAlgebra(F, d, sc)


def build_abelian_extension(H: FiniteDimAlgebra, N: Bimodule) -> AlgebraGroupoidObject:
    """Σ = T = projection onto H, Υ = id on H and -id on N, μ(g, f) = g + f - Σg."""
    F = H.F
    if N.F != F:
        raise MalformedInput("bimodule and algebra are over different fields", field="field")
    bad = H.associativity_failures()
    if bad:
        raise InvalidStructure("H is not associative", axiom="associativity")
    bad = N.violations(H)
    if bad:
        raise InvalidStructure(f"bimodule axioms fail: {', '.join(bad)}", axiom=bad[0])
    G = extension_algebra(H, N)
    k, d = H.dim, G.dim
    P = F.zeros((d, d))
    for i in range(k):
        P[i, i] = 1
    U = F.eye(d)
    for i in range(k, d):
        U[i, i] = -U[i, i]
    U = F.reduce(U)
    B = pullback_basis(F, P, P)
    mu = F.reduce(np.concatenate([F.reduce(F.eye(d) - P), F.eye(d)], axis=1))
    mu = F.matmul(mu, B)
    return AlgebraGroupoidObject(G, P, P.copy(), U, mu, B)


def change_basis(a: AlgebraGroupoidObject, Q: np.ndarray) -> AlgebraGroupoidObject:
    """Same object written in the basis given by the columns of invertible Q."""
    F, G, d = a.F, a.G, a.G.dim
    Qi = la.inverse(F, Q)
    if Qi is None:
        raise InvalidStructure("change of basis is singular")
    # new structure constants: e'_i e'_j = Q^-1 (Q e_i)(Q e_j)
    sc = F.zeros((d, d, d))
    for i in range(d):
        for j in range(d):
            sc[i, j] = F.matmul(Qi, G.mul(Q[:, i], Q[:, j]))
    G2 = FiniteDimAlgebra(F, d, sc)

    def conj(m):
        return F.matmul(Qi, F.matmul(m, Q))

    Z = F.zeros((d, d))
    QQi = F.reduce(np.block([[Qi, Z], [Z, Qi]]))
    return AlgebraGroupoidObject(G2, conj(a.Sigma), conj(a.Tau), conj(a.Upsilon),
                                 F.matmul(Qi, a.mu), F.matmul(QQi, a.g2_basis))


# -- random fixtures --------------------------------------------------------------------

def _algebra_catalog(F: Field) -> list[tuple[str, FiniteDimAlgebra]]:
    def alg(d, entries):
        sc = np.zeros((d, d, d), dtype=np.int64)
        for (i, j, k), v in entries.items():
            sc[i, j, k] = v
        return FiniteDimAlgebra(F, d, sc)

    return [
        ("field", alg(1, {(0, 0, 0): 1})),
        ("zero1", alg(1, {})),
        ("dual", alg(2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})),
        ("split2", alg(2, {(0, 0, 0): 1, (1, 1, 1): 1})),
        ("zero2", alg(2, {})),
        ("nilpotent3", alg(3, {(0, 0, 1): 1, (0, 1, 2): 1, (1, 0, 2): 1})),
        ("upper2", alg(3, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 2, 1): 1, (2, 2, 2): 1})),
        ("split3", alg(3, {(0, 0, 0): 1, (1, 1, 1): 1, (2, 2, 2): 1})),
    ]


def _characters(H: FiniteDimAlgebra) -> list[np.ndarray]:
    """Algebra maps H -> field among zero and the coordinate functionals."""
    F, d = H.F, H.dim
    cands = [F.zeros((d,))]
    for i in range(d):
        v = F.zeros((d,))
        v[i] = 1
        cands.append(v)
    out = []
    for chi in cands:
        if all(F.matmul(chi, H.sc[i, j]) == F.reduce(np.array(chi[i] * chi[j]))
               for i in range(d) for j in range(d)):
            out.append(chi)
    return out


def _random_invertible(F: Field, d: int, rng: random.Random) -> np.ndarray:
    while True:
        Q = F.array([[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)])
        if d == 0 or la.rank(F, Q) == d:
            return Q


def random_extension_inputs(F: Field, rng: random.Random, max_h: int = 3,
                            max_n: int = 3) -> tuple[FiniteDimAlgebra, Bimodule]:
    """A random associative H (dim <= max_h) and H-bimodule N (1 <= dim <= max_n).

    H comes from a small catalog.  N is a direct sum of pieces, each either
    the regular bimodule H or a line on which H acts through characters on
    the left and on the right.  Both are then rewritten in random bases.
    """
    catalog = [a for _, a in _algebra_catalog(F) if a.dim <= max_h]
    H0 = rng.choice(catalog)
    k = H0.dim
    chars = _characters(H0)
    blocks_l, blocks_r = [], []
    budget = rng.randint(1, max_n)
    if k <= budget and rng.random() < 0.4:
        blocks_l.append(np.stack([H0.left_mult(i) for i in range(k)]))
        blocks_r.append(np.stack([H0.right_mult(i) for i in range(k)]))
        budget -= k
    if not blocks_l:
        budget = max(budget, 1)
    for _ in range(budget):
        cl, cr = rng.choice(chars), rng.choice(chars)
        blocks_l.append(cl.reshape(k, 1, 1))
        blocks_r.append(cr.reshape(k, 1, 1))
    dn = sum(b.shape[1] for b in blocks_l)
    L0, R0 = F.zeros((k, dn, dn)), F.zeros((k, dn, dn))
    at = 0
    for bl, br in zip(blocks_l, blocks_r):
        w = bl.shape[1]
        L0[:, at:at + w, at:at + w] = bl
        R0[:, at:at + w, at:at + w] = br
        at += w

    Q = _random_invertible(F, k, rng)
    Qi = la.inverse(F, Q)
    sc = F.zeros((k, k, k))
    for i in range(k):
        for j in range(k):
            sc[i, j] = F.matmul(Qi, H0.mul(Q[:, i], Q[:, j]))
    H = FiniteDimAlgebra(F, k, sc)
    P = _random_invertible(F, dn, rng)
    Pi = la.inverse(F, P)
    # the action of the new basis element Q e_i is the Q-combination of old actions
    L, R = F.zeros((k, dn, dn)), F.zeros((k, dn, dn))
    for i in range(k):
        Li = F.reduce(np.tensordot(Q[:, i], L0, axes=1))
        Ri = F.reduce(np.tensordot(Q[:, i], R0, axes=1))
        L[i] = F.matmul(Pi, F.matmul(Li, P))
        R[i] = F.matmul(Pi, F.matmul(Ri, P))
    return H, Bimodule(F, dn, L, R)
