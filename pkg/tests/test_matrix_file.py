import numpy as np
import pytest

from src.utils.errors import NonNormalMatrixError, ParseError
from src.utils.matrix_file import normal_eigenvalues, parse_complex, parse_complex_list, read_matrix_file


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1", 1 + 0j),
        ("-2.5", -2.5 + 0j),
        ("2i", 2j),
        ("-i", -1j),
        ("i", 1j),
        ("1-i", 1 - 1j),
        ("1+2i", 1 + 2j),
        ("0.5-0.25i", 0.5 - 0.25j),
        ("3+4j", 3 + 4j),
        ("1e-3+2e1i", 0.001 + 20j),
    ],
)
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


@pytest.mark.parametrize("text", ["", "abc", "1++2i", "nan"])
def test_parse_complex_rejects(text):
    with pytest.raises(ParseError):
        parse_complex(text)


def test_parse_complex_list():
    assert parse_complex_list("0, 1+i 2") == [0j, 1 + 1j, 2 + 0j]
    assert parse_complex_list(["i", "-1"]) == [1j, -1 + 0j]


def test_read_matrix_file(matrix_file):
    path = matrix_file("# diagonal\n2\n1 0\n0 2i\n")
    np.testing.assert_array_equal(read_matrix_file(path), np.array([[1, 0], [0, 2j]]))


@pytest.mark.parametrize(
    "text",
    ["", "two\n1\n", "0\n", "2\n1 0\n", "2\n1 0\n0\n", "1\nx\n"],
)
def test_read_matrix_file_errors(matrix_file, text):
    with pytest.raises(ParseError):
        read_matrix_file(matrix_file(text))


def test_read_matrix_file_missing(tmp_path):
    with pytest.raises(ParseError):
        read_matrix_file(tmp_path / "missing.txt")


def test_normal_eigenvalues():
    rotation = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert sorted(normal_eigenvalues(rotation), key=lambda z: z.imag) == pytest.approx([-1j, 1j])
    with pytest.raises(NonNormalMatrixError) as excinfo:
        normal_eigenvalues(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert excinfo.value.exit_code == 2
