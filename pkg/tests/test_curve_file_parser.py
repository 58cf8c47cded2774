import numpy as np
import pytest

from elbowkit.handlers.curve_file_parser import (
    decode_contents,
    format_curve,
    parse_curve_text,
    read_curve_file,
    write_curve_file,
)
from elbowkit.processors.curve import validate
from elbowkit.utils.custom_exceptions import (
    CurveFileFormatError,
    CurveFileReadError,
    EmptyCurveError,
    NonFiniteCurveError,
    NonMonotoneCurveError,
)


class TestParseCurveText:

    def test_plain_file(self):
        values, k_min = parse_curve_text("k,value\n0,10\n1,4\n2,2.5\n")
        np.testing.assert_array_equal(values, [10.0, 4.0, 2.5])
        assert k_min == 0

    def test_offset_and_comment(self):
        text = "# k_min=2\n# produced by a sweep\nk,value\n\n2, 7.0\n3, 1e-3\n"
        values, k_min = parse_curve_text(text)
        np.testing.assert_array_equal(values, [7.0, 0.001])
        assert k_min == 2

    def test_offset_without_comment(self):
        _, k_min = parse_curve_text("K,Value\n5,3\n6,1\n")
        assert k_min == 5

    @pytest.mark.parametrize('text, line, fragment', [
        ("k,value\n0,1\nx,2\n", 3, 'k is not an integer'),
        ("k,value\n0,1\n1,abc\n", 3, 'value is not a number'),
        ("k,value\n0,1\n1,2,3\n", 3, 'expected 2 fields'),
        ("k,value\n0,3\n2,1\n", 3, 'increase by 1'),
        ("k,value\n0,3\n0,1\n", 3, 'duplicate'),
        ("k,value\n-1,3\n", 2, 'non-negative'),
        ("index,score\n0,1\n", 1, "expected header"),
        ("# k_min=1\nk,value\n0,3\n", 1, 'disagrees'),
        ("# k_min=one\nk,value\n0,3\n", 1, 'not an integer'),
    ])
    def test_format_errors_name_the_line(self, text, line, fragment):
        with pytest.raises(CurveFileFormatError) as exc_info:
            parse_curve_text(text, 'curve.csv')
        assert exc_info.value.line_number == line
        assert exc_info.value.detail.startswith(f"line {line}: ")
        assert fragment in exc_info.value.detail
        assert exc_info.value.exit_code == 2

    def test_missing_header(self):
        with pytest.raises(CurveFileFormatError, match='header'):
            parse_curve_text("# only a comment\n")

    def test_header_without_rows(self):
        with pytest.raises(EmptyCurveError):
            parse_curve_text("k,value\n")


class TestDecodeContents:

    def test_utf8_with_bom(self):
        assert decode_contents('\ufeffk,value\n0,1\n'.encode('utf-8')).startswith('k,value')

    def test_latin1_fallback(self):
        text = "# données de l'expérience à coût élevé, réglée très précisément\nk,value\n0,2\n1,1\n"
        decoded = decode_contents(text.encode('latin-1'))
        values, _ = parse_curve_text(decoded)
        np.testing.assert_array_equal(values, [2.0, 1.0])


class TestReadWrite:

    def test_read_validates_and_clamps(self, tmp_path):
        path = tmp_path / 'curve.csv'
        path.write_text("k,value\n0,5\n1,2\n2,2.0000000001\n3,1\n")
        curve = read_curve_file(path)
        np.testing.assert_array_equal(curve.values, [5.0, 2.0, 2.0, 1.0])

    def test_read_rejects_increase(self, tmp_path):
        path = tmp_path / 'curve.csv'
        path.write_text("k,value\n0,5\n1,2\n2,3\n")
        with pytest.raises(NonMonotoneCurveError):
            read_curve_file(path)

    def test_read_rejects_nan(self, tmp_path):
        path = tmp_path / 'curve.csv'
        path.write_text("k,value\n0,5\n1,nan\n")
        with pytest.raises(NonFiniteCurveError):
            read_curve_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(CurveFileReadError) as exc_info:
            read_curve_file(tmp_path / 'absent.csv')
        assert exc_info.value.exit_code == 1

    def test_format_curve(self):
        assert format_curve([3.0, 0.1], k_min=1) == "# k_min=1\nk,value\n1,3.0\n2,0.1\n"

    def test_written_file_reads_back_exactly(self, tmp_path):
        values = np.array([np.pi * 100, np.e, 1.0 / 3.0, -2.5e-17])
        curve = validate(values, k_min=4)
        path = tmp_path / 'dump.csv'
        write_curve_file(path, curve)
        again = read_curve_file(path)
        np.testing.assert_array_equal(again.values, curve.values)
        assert again.k_min == 4

    def test_write_into_missing_directory(self, tmp_path):
        with pytest.raises(CurveFileReadError, match='Failed to write'):
            write_curve_file(tmp_path / 'no' / 'such' / 'dir.csv', validate([1.0, 0.0]))
