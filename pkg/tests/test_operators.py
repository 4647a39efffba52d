from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cyclic_quiver.operators import (
    Bop,
    Eop,
    Etilde,
    ModuleParams,
    as_rational,
    chevalley,
    d,
    eps_coeff,
    eps_matrix,
    h_eigenvalue,
    phi_coeff,
    phi_matrix,
)
from cyclic_quiver.polynomial import Identity, Polynomial, commutator, matrix_of, op_equal_on
from cyclic_quiver.quiver import (
    UNIT,
    KostantPartition,
    Raiz,
    add_vectors,
    cartan_matrix,
    enumerate_kostant,
    kostant_from_pairs,
    raiz,
    simple,
    simple_vector,
    smile,
    vectors_up_to,
)

from strategies import params_of_rank, partitions_of_rank, ranks


def kp(n, *pairs):
    return kostant_from_pairs(pairs, n)


# -- independent oracle: the same operators as literal sums of x * d/dx in sympy ------------


class SymbolicModel:
    def __init__(self, n, max_length):
        self.n = n
        self.pool = [raiz(q - L + 1, q, n) for L in range(1, max_length + 1) for q in range(n)]
        self.sym = {t: sympy.Symbol(f"x_{t.p}_{t.q}") for t in self.pool}

    def x(self, t):
        return sympy.Integer(1) if t.is_unit else self.sym.get(t)

    def poly(self, mono):
        return sympy.Mul(*[self.sym[t] for t in mono])

    def dx(self, expr, t):
        return sympy.Integer(0) if t.is_unit else sympy.diff(expr, self.sym[t])

    def ending(self, j):
        return [UNIT] + [t for t in self.pool if t.q % self.n == j % self.n]

    def beginning(self, j):
        return [UNIT] + [t for t in self.pool if t.p % self.n == j % self.n]

    def etilde(self, theta, expr):
        out = 0
        for v in self.ending(theta.p - 1):
            eta = smile(v, theta, self.n)
            if eta in self.sym:
                out += self.x(v) * self.dx(expr, eta)
        return sympy.expand(out)

    def E(self, theta, expr):
        out = 0
        for v in self.ending(theta.p - 1):
            eta = smile(v, theta, self.n)
            if eta in self.sym:
                out += self.x(eta) * self.dx(expr, v)
        return sympy.expand(out)

    def B(self, theta, expr):
        out = 0
        for v in self.beginning(theta.q + 1):
            eta = smile(theta, v, self.n)
            if eta in self.sym:
                out += self.x(eta) * self.dx(expr, v)
        return sympy.expand(out)

    def number(self, ts, expr):
        return sympy.expand(sum((self.x(t) * self.dx(expr, t) for t in ts if not t.is_unit), sympy.Integer(0)))

    def delta(self, i, c, expr):
        bb = lambda j: self.number(self.beginning(j + 1), expr)
        return sympy.expand(bb(i - 1) - bb(i) + c * expr)

    def chevalley(self, kind, i, c, expr):
        s = simple(i, self.n)
        if kind == "e":
            return self.etilde(s, expr)
        ee = lambda j: self.number(self.ending(j - 1), expr)
        if kind == "h":
            return sympy.expand(ee(i + 1) - ee(i) + self.delta(i, c, expr))
        return sympy.expand(self.B(s, expr) - self.E(s, expr) + self.x(s) * self.delta(i, c, expr))

    def from_terms(self, terms):
        return sympy.expand(sum((sympy.Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else v)
                                * self.poly(m) for m, v in terms.items()))


@given(st.data())
def test_generators_match_symbolic_oracle(data):
    n = data.draw(ranks)
    mono = data.draw(partitions_of_rank(n, max_parts=3, max_length=3))
    theta = data.draw(st.builds(lambda L, q: raiz(q - L + 1, q, n), st.integers(1, 3), st.integers(0, n - 1)))
    model = SymbolicModel(n, 7)
    expr = model.poly(mono)
    for ours, theirs in ((Etilde, model.etilde), (Eop, model.E), (Bop, model.B)):
        assert model.from_terms(ours(theta, n).on_monomial(mono)) == theirs(theta, expr)


@given(st.data())
def test_chevalley_match_symbolic_oracle(data):
    n = data.draw(ranks)
    params = data.draw(params_of_rank(n))
    mono = data.draw(partitions_of_rank(n, max_parts=3, max_length=3))
    i = data.draw(st.integers(0, n - 1))
    model = SymbolicModel(n, 5)
    c = sympy.Rational(params.ci(i).numerator, params.ci(i).denominator) if isinstance(params.ci(i), Fraction) \
        else params.ci(i)
    for kind in "ehf":
        got = model.from_terms(chevalley(kind, i, params).on_monomial(mono))
        assert got == model.chevalley(kind, i, c, model.poly(mono)), kind


# -- worked examples --------------------------------------------------------------


def test_derivative_examples():
    t = Raiz(0, 0)
    assert d(t, 2)(Polynomial.one()) == Polynomial()
    assert d(t, 2)(Polynomial.monomial([t, t])) == Polynomial.monomial([t], 2)
    assert d(t, 2)(Polynomial.monomial([t, Raiz(1, 1)])) == Polynomial.monomial([Raiz(1, 1)])


def test_etilde_examples():
    theta = Raiz(-1, 0)
    assert Etilde(theta, 2)(Polynomial.variable(theta)) == Polynomial.one()
    assert Etilde(Raiz(0, 0), 2)(Polynomial.variable(Raiz(-1, 0))) == Polynomial.variable(Raiz(1, 1))


def test_chevalley_examples():
    params = ModuleParams(3, ("5/2", "-1", 0))
    for i in range(3):
        xi = Polynomial.variable(simple(i, 3))
        assert chevalley("e", i, params)(xi) == Polynomial.one()
        assert chevalley("f", i, params)(Polynomial.one()) == xi * params.ci(i)
        assert chevalley("h", i, params)(Polynomial.one()) == params.ci(i)


def test_as_rational():
    assert as_rational("5/2") == Fraction(5, 2)
    assert as_rational("−1") == -1 and isinstance(as_rational("4/2"), int)


def test_geometric_params():
    p = ModuleParams.from_geometry(3, 1, 5, (0, 2, 1))
    assert p.c0 == (2 - 2) * 3 + 5
    assert ModuleParams.from_geometry(2, 0, 1).c == (2, 3)
    with pytest.raises(ValueError):
        ModuleParams(2, (1,))


def test_eps_examples():
    assert eps_coeff(kp(2, (1, 1), (1, 1)), kp(2, (-1, 0), (1, 1)), 0, 2) == 1
    assert eps_coeff(KostantPartition(), kp(3, (1, 1)), 1, 3) == 1
    assert eps_coeff(kp(2, (1, 1)), kp(2, (0, 1)), 0, 2) == 0
    with pytest.raises(ValueError):
        eps_coeff(kp(2, (0, 0)), kp(2, (0, 0)), 0, 2)


def test_phi_examples():
    params = ModuleParams(2, ("7/3", -4))
    assert phi_coeff(kp(2, (0, 0)), KostantPartition(), 0, params) == Fraction(7, 3)
    assert phi_coeff(kp(2, (-1, 0)), kp(2, (1, 1)), 0, params) == -1
    assert phi_coeff(kp(2, (0, 1)), kp(2, (1, 1)), 0, params) == 1


# -- matrices ----------------------------------------------------------------------


def test_identity_matrix():
    m = matrix_of(Identity(2), (2, 1))
    k = len(enumerate_kostant((2, 1)))
    assert m.dense() == [[int(r == c) for c in range(k)] for r in range(k)]


@pytest.mark.parametrize("n", [2, 3])
def test_h_is_scalar_and_central_sum(n):
    params = ModuleParams(n, tuple(Fraction(j + 1, 2) for j in range(n)))
    for alpha in vectors_up_to(n, 4):
        k = len(enumerate_kostant(alpha))
        total = 0
        for i in range(n):
            m = matrix_of(chevalley("h", i, params), alpha)
            lam = h_eigenvalue(i, alpha, params)
            assert m.entries == {(r, r): lam for r in range(k) if lam}
            total += lam
        assert total == params.c0


@pytest.mark.parametrize("n", [2, 3])
def test_crosscheck_transposes(n):
    params = ModuleParams.from_geometry(n, 0, 1, None)
    for alpha in vectors_up_to(n, 3):
        for i in range(n):
            up = add_vectors(alpha, simple_vector(i, n))
            assert matrix_of(chevalley("e", i, params), up).transpose().entries == eps_matrix(alpha, i, n).entries
            assert matrix_of(chevalley("f", i, params), alpha).transpose().entries == \
                phi_matrix(alpha, i, params).entries


@given(st.data())
def test_matrix_of_composition_is_product(data):
    n = data.draw(st.integers(2, 3))
    params = data.draw(params_of_rank(n))
    i, j = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    alpha = data.draw(st.sampled_from(vectors_up_to(n, 3)))
    e, f = chevalley("e", i, params), chevalley("f", j, params)
    mid = add_vectors(alpha, simple_vector(j, n))
    assert matrix_of(e @ f, alpha).entries == (matrix_of(e, mid) @ matrix_of(f, alpha)).entries
    lhs = matrix_of(commutator(e, f), alpha)
    if i == j:
        assert lhs.entries == matrix_of(chevalley("h", i, params), alpha).entries


@given(st.data())
def test_e_f_bracket_and_degree(data):
    n = data.draw(ranks)
    params = data.draw(params_of_rank(n))
    alpha = data.draw(st.sampled_from(vectors_up_to(n, 3)))
    a = cartan_matrix(n)
    for i in range(n):
        for j in range(n):
            ef = commutator(chevalley("e", i, params), chevalley("f", j, params))
            rhs = chevalley("h", i, params) if i == j else Identity(n) * 0
            assert op_equal_on(ef, rhs, alpha)
            he = commutator(chevalley("h", i, params), chevalley("e", j, params))
            assert op_equal_on(he, chevalley("e", j, params) * (-a[i][j]), alpha)


@given(st.data())
def test_e_lowers_number_of_parts_by_at_most_one(data):
    n = data.draw(ranks)
    mono = data.draw(partitions_of_rank(n))
    i = data.draw(st.integers(0, n - 1))
    for image in chevalley("e", i, ModuleParams(n, (0,) * n)).on_monomial(mono):
        assert len(image) in (len(mono), len(mono) - 1)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        ModuleParams(2, (0.5, 1))
