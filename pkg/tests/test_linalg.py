import random

import pytest

from simplexalg.errors import SingularSystem
from simplexalg.linalg import ExactMatrix, SpanBasis, exact_solve
from simplexalg.scalar import Rat


def test_identity_solve():
    eye = ExactMatrix.identity(3)
    b = [Rat(1, 2), 3, Rat(-7, 5)]
    assert exact_solve(eye, b) == b


def test_diagonal_solve():
    a = ExactMatrix([[2, 0], [0, 3]])
    assert exact_solve(a, [1, 1]) == [Rat(1, 2), Rat(1, 3)]


def test_homogeneous_nonsingular():
    a = ExactMatrix([[1, 1], [1, -1]])
    assert exact_solve(a, [0, 0]) == [Rat(0), Rat(0)]


def test_singular_reports_rank():
    a = ExactMatrix([[1, 2], [2, 4]])
    with pytest.raises(SingularSystem) as err:
        exact_solve(a, [1, 0])
    assert err.value.rank == 1


@pytest.mark.parametrize("size", [1, 4, 13, 50])
def test_solve_round_trip(size):
    rng = random.Random(1000 + size)
    while True:
        a = ExactMatrix(
            [
                [Rat(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(size)]
                for _ in range(size)
            ]
        )
        if a.rank() == size:
            break
    v = [Rat(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(size)]
    assert exact_solve(a, a.matvec(v)) == v


def test_rank_and_nullspace():
    a = ExactMatrix([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    assert a.rank() == 2
    for vec in a.nullspace():
        assert all(value == 0 for value in a.matvec(vec))
    assert len(a.nullspace()) == 1


def test_inverse():
    a = ExactMatrix([[1, 2], [3, Rat(1, 5)]])
    assert a @ a.inverse() == ExactMatrix.identity(2)


def test_matrix_algebra():
    a = ExactMatrix([[1, 2], [3, 4]])
    b = ExactMatrix([[0, 1], [1, 0]])
    assert a + b - b == a
    assert (a @ b).transpose() == b.transpose() @ a.transpose()
    assert a.scale(2) == a + a
    assert (-a) + a == ExactMatrix.zeros(2, 2)


def test_span_basis_growth():
    span = SpanBasis(3)
    assert span.add([1, 0, 0])
    assert span.add([1, 1, 0])
    assert not span.add([3, 5, 0])
    assert span.contains([Rat(1, 2), Rat(-7, 3), 0])
    assert not span.contains([0, 0, 1])
    assert span.add([0, 0, Rat(2, 7)])
    assert span.dim == 3
