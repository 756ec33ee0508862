import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from numrad import matrixio
from numrad.blocks import BlockMatrix
from numrad.matrixio import MatrixFileError

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@st.composite
def complex_arrays(draw):
    shape = draw(st.tuples(st.integers(1, 4), st.integers(1, 4)))
    re = draw(hnp.arrays(np.float64, shape, elements=finite))
    im = draw(hnp.arrays(np.float64, shape, elements=finite))
    return re + 1j * im


@settings(max_examples=60, deadline=None)
@given(complex_arrays())
def test_round_trip_is_bit_exact(A):
    B = matrixio.loads(matrixio.dumps(A))
    assert B.shape == A.shape
    assert np.array_equal(B.view(np.float64), A.view(np.float64))


def test_round_trip_awkward_values():
    A = np.array([[0.1 + 1e-300j, 1 / 3, -0.0], [np.nextafter(1.0, 2.0), 5e-324, 1.7976931348623157e308]])
    B = matrixio.loads(matrixio.dumps(A))
    assert np.array_equal(B.view(np.float64), A.view(np.float64))


def test_block_round_trip_with_null_blocks(rng):
    A = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    M = BlockMatrix([2, 1], [[A, None], [None, [[3.0]]]])
    obj = json.loads(matrixio.dumps(M))
    assert obj["blocks"][0][1] is None and obj["blocks"][1][0] is None
    back = matrixio.loads(matrixio.dumps(M))
    assert isinstance(back, BlockMatrix)
    assert back.block_dims == (2, 1)
    np.testing.assert_array_equal(back.embed(), M.embed())


def test_file_round_trip(tmp_path, rng):
    A = rng.standard_normal((3, 3)) + 0j
    path = tmp_path / "a.json"
    matrixio.dump(A, path)
    np.testing.assert_array_equal(matrixio.load(path), A)


def test_plain_matrix_shape():
    A = matrixio.loads('{"rows": 1, "cols": 2, "entries": [[[1, 0], [0, 2.5]]]}')
    np.testing.assert_array_equal(A, [[1, 2.5j]])


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"rows": 1, "cols": 1, "entries": [[[1, 0]]', "line 1"),
        ('{\n  "rows": 2,\n  "cols": 1\n  "entries": []\n}', "line 4"),
    ],
)
def test_malformed_json_reports_location(text, fragment):
    with pytest.raises(MatrixFileError, match=fragment):
        matrixio.loads(text)


def test_bad_entry_reports_row_and_column():
    text = '{"rows": 2, "cols": 2, "entries": [[[1, 0], [0, 0]], [[0, 0], "x"]]}'
    with pytest.raises(MatrixFileError, match="row 1, column 1"):
        matrixio.loads(text)


def test_wrong_row_length():
    with pytest.raises(MatrixFileError, match="row 0"):
        matrixio.loads('{"rows": 1, "cols": 2, "entries": [[[1, 0]]]}')


def test_bool_is_not_a_number():
    with pytest.raises(MatrixFileError):
        matrixio.loads('{"rows": 1, "cols": 1, "entries": [[[true, 0]]]}')


def test_nested_block_error_names_block():
    text = '{"block_dims": [1, 1], "blocks": [[null, {"rows": 1, "cols": 1, "entries": [[[1]]]}], [null, null]]}'
    with pytest.raises(MatrixFileError, match=r"blocks\[0\]\[1\]: row 0, column 0"):
        matrixio.loads(text)


def test_block_conformance_error():
    text = '{"block_dims": [1, 2], "blocks": [[{"rows": 2, "cols": 2, "entries": [[[1,0],[0,0]],[[0,0],[1,0]]]}, null], [null, null]]}'
    with pytest.raises(MatrixFileError, match="conformance"):
        matrixio.loads(text)
