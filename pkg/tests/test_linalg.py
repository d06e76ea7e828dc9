from fractions import Fraction

from trilie.linalg import SpanSolver, null_space, span_equal


def test_span_solver_rank_and_membership():
    s = SpanSolver()
    assert s.add({"a": 1, "b": 2})
    assert s.add({"b": 1})
    assert not s.add({"a": 2, "b": 7})  # dependent
    assert s.rank == 2
    assert s.contains({"a": 5})
    assert not s.contains({"c": 1})


def test_span_solver_express():
    s = SpanSolver()
    s.add({"x": 1, "y": 1}, tag="u")
    s.add({"y": 1, "z": 1}, tag="v")
    combo = s.express({"x": 2, "y": 3, "z": 1})
    assert combo == {"u": 2, "v": 1}
    assert s.express({"w": 1}) is None


def test_rref_is_canonical():
    a = SpanSolver()
    a.add({"x": 2, "y": 4})
    a.add({"y": 3, "z": 3})
    b = SpanSolver()
    b.add({"x": 1, "y": 2})
    b.add({"x": 1, "y": 3, "z": 1})
    assert span_equal(a, b)


def test_rows_fully_reduced():
    s = SpanSolver()
    s.add({"x": 1, "y": 1})
    s.add({"y": 1})
    # pivot column of the second row must be cleared from the first
    assert s.rows == [{"x": 1}, {"y": 1}]
    assert s.pivots == ["x", "y"]


def test_null_space():
    # x + y = 0, y + z = 0 -> kernel spanned by (1, -1, 1)
    eqs = [{"x": 1, "y": 1}, {"y": 1, "z": 1}]
    basis = null_space(eqs, ["x", "y", "z"])
    assert len(basis) == 1
    vec = basis[0]
    assert vec["x"] == vec["z"] and vec["y"] == -vec["x"]


def test_null_space_full_rank():
    eqs = [{"x": 1}, {"y": 2}]
    assert null_space(eqs, ["x", "y"]) == []


def test_null_space_no_equations():
    basis = null_space([], ["x", "y"])
    assert basis == [{"x": 1}, {"y": 1}]


def test_exactness_with_fractions():
    s = SpanSolver()
    s.add({"x": Fraction(1, 3), "y": Fraction(2, 7)})
    combo = s.express({"x": Fraction(2, 3), "y": Fraction(4, 7)})
    assert combo == {0: 2}
