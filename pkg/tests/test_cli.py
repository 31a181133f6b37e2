"""Tests for CLI interface."""

import json
import logging
from unittest.mock import patch

import pytest

from src.cli import main, parse_arguments, render_object, setup_logging
from src.linalg import IntMatrix
from src.report import CheckResult, VerificationReport


class TestParseArguments:
    """Tests for argument parsing."""

    def test_command_is_required(self):
        with patch('sys.argv', ['qlattice']):
            with pytest.raises(SystemExit):
                parse_arguments()

    def test_verify_defaults(self):
        with patch('sys.argv', ['qlattice', 'verify', '--n', '3', '--q', '2']):
            args = parse_arguments()
            assert args.command == 'verify'
            assert args.n == 3
            assert args.q == 2
            assert args.suite == 'all'
            assert args.format == 'text'
            assert args.workers == 1
            assert not args.no_timing
            assert args.out is None

    def test_table_options(self):
        argv = ['qlattice', '-v', 'table', '--q', '3', '--n', '3..6', '--format', 'csv', '--engine', 'both']
        with patch('sys.argv', argv):
            args = parse_arguments()
            assert args.n == '3..6'
            assert args.engine == 'both'
            assert args.verbose

    def test_dump_requires_out(self):
        with patch('sys.argv', ['qlattice', 'dump', '--object', 'A', '--n', '3', '--q', '2']):
            with pytest.raises(SystemExit):
                parse_arguments()

    def test_unknown_object(self):
        with pytest.raises(SystemExit):
            parse_arguments(['dump', '--object', 'Z', '--n', '3', '--q', '2', '--out', 'z.txt'])

    def test_budget_must_be_positive(self):
        with pytest.raises(SystemExit):
            parse_arguments(['verify', '--n', '3', '--q', '2', '--budget', '0'])


class TestMain:
    """Tests for main CLI function."""

    def test_verify_passes(self, capsys):
        with patch('sys.argv', ['qlattice', 'verify', '--n', '3', '--q', '2']):
            exit_code = main()
        assert exit_code == 0
        assert "Result: PASS" in capsys.readouterr().out

    def test_verify_json_to_file(self, tmp_path):
        output_file = tmp_path / "report.json"
        argv = ['verify', '--n', '3', '--q', '3', '--suite', 'incidence', '--format', 'json',
                '--no-timing', '-o', str(output_file)]
        assert main(argv) == 0
        data = json.loads(output_file.read_text())
        assert data['params'] == {'n': 3, 'q': 3, 'suite': 'incidence'}
        assert all(c['pass'] for c in data['checks'])
        assert all(c['ms'] == 0 for c in data['checks'])

    def test_pretty_output(self, tmp_path):
        output_file = tmp_path / "pretty.json"
        argv = ['verify', '--n', '2', '--q', '2', '--format', 'json', '-p', '-o', str(output_file)]
        assert main(argv) == 0
        content = output_file.read_text()
        assert '\n' in content
        assert '  ' in content

    @patch('src.cli.run_verification')
    def test_failed_check_exits_1(self, mock_run):
        report = VerificationReport(3, 2, 'all')
        report.checks.append(CheckResult.compare('|det A|', 24, 25))
        mock_run.return_value = report
        assert main(['verify', '--n', '3', '--q', '2']) == 1

    def test_table(self, capsys):
        assert main(['table', '--q', '2', '--n', '3..4']) == 0
        out = capsys.readouterr().out
        assert out.startswith("q = 2")
        assert "2^14·7" in out

    def test_table_to_file(self, tmp_path, capsys, caplog):
        caplog.set_level(logging.INFO)
        output_file = tmp_path / "table.csv"
        assert main(['table', '--q', '2', '--n', '3..4', '--format', 'csv', '-o', str(output_file)]) == 0
        assert capsys.readouterr().out == ""
        assert output_file.read_text().startswith("n,")
        assert f"Table for q=2 written to {output_file}" in caplog.text

    def test_table_empty_range(self):
        assert main(['table', '--q', '2', '--n', '5..3']) == 2

    def test_not_a_prime_power(self):
        assert main(['verify', '--n', '3', '--q', '6']) == 2

    def test_dump_matrix(self, tmp_path):
        output_file = tmp_path / "A.txt"
        assert main(['dump', '--object', 'A', '--n', '3', '--q', '2', '--out', str(output_file)]) == 0
        A = IntMatrix.from_text(output_file.read_text())
        assert A.dim == 7
        assert A.row_sums() == [3] * 7

    def test_dump_points(self, tmp_path):
        output_file = tmp_path / "points.txt"
        assert main(['dump', '--object', 'points', '--n', '2', '--q', '3', '--out', str(output_file)]) == 0
        assert output_file.read_text().splitlines() == ["0 1", "1 0", "1 1", "1 2"]

    def test_dump_generator(self, tmp_path):
        output_file = tmp_path / "F.txt"
        assert main(['dump', '--object', 'generator', '--n', '3', '--q', '2', '--out', str(output_file)]) == 0
        assert output_file.read_text().startswith("X1X2X4")

    def test_dump_hyperplane_basis(self, tmp_path):
        output_file = tmp_path / "hyperplanes.txt"
        argv = ['dump', '--object', 'hyperplane-basis', '--n', '3', '--q', '2', '--out', str(output_file)]
        assert main(argv) == 0
        assert output_file.read_text().splitlines() == ["2 4", "1 4", "3 4", "1 2", "2 5", "1 6", "3 5"]

    def test_dump_echelon(self, tmp_path):
        output_file = tmp_path / "echelon.txt"
        assert main(['dump', '--object', 'echelon', '--n', '2', '--q', '5', '--out', str(output_file)]) == 0
        assert output_file.read_text() == "j = 0\n(zero subspace)\n\nj = 1\n1 *\n\n0 1\n\nj = 2\n1 0\n0 1\n"

    def test_dump_over_budget(self, tmp_path):
        output_file = tmp_path / "bases.txt"
        argv = ['dump', '--object', 'basis-set', '--n', '4', '--q', '3', '--budget', '100',
                '--out', str(output_file)]
        assert main(argv) == 2
        assert not output_file.exists()

    def test_output_is_a_directory(self, tmp_path):
        assert main(['dump', '--object', 'B', '--n', '2', '--q', '2', '--out', str(tmp_path)]) == 2


class TestRenderObject:
    """Tests for dump rendering."""

    def test_hessian(self):
        H = IntMatrix.from_text(render_object('H', 3, 2))
        assert H.dim == 7
        assert H.diagonal() == [0] * 7
        assert H[0, 1] == 4

    def test_lefschetz(self):
        M = IntMatrix.from_text(render_object('M', 3, 2))
        assert M.row_sums() == [6] * 7

    def test_basis_set(self):
        assert render_object('basis-set', 3, 2).splitlines()[0] == "1 2 4"

    def test_echelon_lists_every_pattern(self):
        text = render_object('echelon', 4, 2)
        assert "j = 2\n1 0 * *\n0 1 * *\n\n1 * 0 *\n0 0 1 *" in text
        assert text.count("j = ") == 5
        # 1 + 4 + 6 + 4 + 1 patterns
        assert len(text.strip().split("\n\n")) == 16

    def test_hyperplane_basis_needs_two_dimensions(self):
        with pytest.raises(ValueError):
            render_object('hyperplane-basis', 1, 2)


class TestSetupLogging:
    """Tests for logging setup."""

    def test_normal_logging(self):
        setup_logging(verbose=False)

    def test_verbose_logging(self):
        setup_logging(verbose=True)
