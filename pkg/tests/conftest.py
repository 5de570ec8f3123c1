import pytest

from qfermat import qmatrix, structure

# The lex-minimal generic matrix, written out so the fixtures do not depend
# on the enumeration scan; its identity with the computed canonical form is
# itself asserted in the classification tests.
CANONICAL_ROWS = (
    (0, 0, 0, 0, 0),
    (0, 0, 1, 1, 3),
    (0, 4, 0, 2, 4),
    (0, 4, 3, 0, 3),
    (0, 2, 1, 2, 0),
)


@pytest.fixture(scope="session")
def canonical_matrix():
    return qmatrix.QMatrix(CANONICAL_ROWS)


@pytest.fixture(scope="session")
def canonical_table(canonical_matrix):
    return structure.build_table(canonical_matrix)


@pytest.fixture(scope="session")
def zero_table():
    return structure.build_table(qmatrix.QMatrix.zero())
