import json

import numpy as np
import pytest

import services.transform as transform
from app import main
from services.algebra import UnitaryMatrix


def run_json(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_factor_360(capsys):
    code, doc = run_json(capsys, 'factor', '360')
    assert code == 0
    assert doc['success'] is True
    summary = doc['reports'][0]
    assert summary['factors'] == [[2, 3], [3, 2], [5, 1]]
    assert summary['n_distinct'] == 3
    assert summary['pair_count'] == 4
    assert (summary['m_bar'], summary['c_multiplier']) == (30, 12)
    assert [p['m_a'] for p in doc['pairs']] == [1, 5, 8, 9]


def test_factor_prime(capsys):
    code, doc = run_json(capsys, 'factor', '7')
    assert code == 0
    assert doc['reports'][0]['pair_count'] == 1
    assert doc['pairs'] == [{'m_a': 1, 'm_atilde': 7, 'subset_mask': 0, 'kind': 'fourier', 'label': 'a=1|7'}]


def test_factor_rejects_zero(capsys):
    code, doc = run_json(capsys, 'factor', '0')
    assert code == 1
    assert doc['success'] is False
    assert 'error' in doc


def test_bad_arguments_exit_with_validation_code():
    with pytest.raises(SystemExit) as exc:
        main(['factor', 'twelve'])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(['transpose', '12'])
    assert exc.value.code == 1


@pytest.mark.parametrize(["argv", "expected"], ((['30'], [1, 2, 3, 5]), (['12'], [1, 3]), (['1'], [1]), (['12', '--ma', '4'], [4])))
def test_pairs(capsys, argv, expected):
    code, doc = run_json(capsys, 'pairs', *argv)
    assert code == 0
    assert [p['m_a'] for p in doc['pairs']] == expected


def test_pairs_rejects_non_coprime_selection(capsys):
    code, doc = run_json(capsys, 'pairs', '12', '--ma', '2')
    assert code == 1
    assert doc['success'] is False


@pytest.mark.parametrize("m", ['6', '30'])
def test_mub_check_passes(capsys, m):
    code, doc = run_json(capsys, 'mub-check', m)
    assert code == 0
    assert doc['success'] is True
    assert len(doc['reports']) == {'6': 2, '30': 4}[m]
    for report in doc['reports']:
        assert report['passed'] is True
        assert report['modulus_min'] == pytest.approx(1 / np.sqrt(int(m)), abs=1e-10)


def test_mub_check_single_pair(capsys):
    code, doc = run_json(capsys, 'mub-check', '12', '--ma', '3')
    assert code == 0
    assert [(r['m_a'], r['m_atilde']) for r in doc['reports']] == [(3, 4)]


def test_mub_check_reports_violation(capsys, monkeypatch):
    original = transform.build_overlap_matrix

    def perturbed(cfg, b, method=transform.CLOSED_FORM):
        U = original(cfg, b, method)
        if method != transform.CLOSED_FORM:
            return U
        entries = U.entries.copy()
        entries[0, 0] *= np.exp(1e-6j)
        return UnitaryMatrix(entries, U.row_basis_tag, U.col_basis_tag)

    monkeypatch.setattr(transform, 'build_overlap_matrix', perturbed)
    code, doc = run_json(capsys, 'mub-check', '30')
    assert code == 2
    assert doc['success'] is False


def test_localize_m6(capsys, tmp_path):
    heatmap = tmp_path / 'h.pgm'
    code, doc = run_json(capsys, 'localize', '6', '--ma', '2', '--heatmap', str(heatmap))
    assert code == 0
    report = doc['reports'][0]
    assert report['status'] == 'ok'
    assert report['support_size'] == 4
    assert report['support_amplitude'] == pytest.approx(0.5, abs=1e-10)
    assert report['support_indices'] == [[1, 1], [1, 2], [2, 1], [2, 2]]
    assert report['law_holds'] is True
    header = b'P5\n3 2\n255\n'
    data = heatmap.read_bytes()
    assert data.startswith(header)
    assert sum(1 for px in data[len(header):] if px == 255) == 4


def test_localize_fourier_pair(capsys):
    code, doc = run_json(capsys, 'localize', '6', '--ma', '1')
    assert code == 0
    assert doc['reports'][0]['support_size'] == 1
    assert doc['reports'][0]['support_amplitude'] == pytest.approx(1.0)


def test_localize_skips_larger_m_a(capsys):
    code, doc = run_json(capsys, 'localize', '6', '--ma', '3')
    assert code == 0
    assert doc['reports'][0]['status'] == 'skipped'
    assert 'notice' in doc['reports'][0]


def test_localize_writes_one_heatmap_per_pair(capsys, tmp_path):
    code, doc = run_json(capsys, 'localize', '12', '--heatmap', str(tmp_path / 'h.pgm'))
    assert code == 0
    assert [r['support_size'] for r in doc['reports']] == [1, 9]
    assert (tmp_path / 'h_ma1.pgm').exists()
    assert (tmp_path / 'h_ma3.pgm').exists()


def test_report(capsys):
    code, doc = run_json(capsys, 'report', '30')
    assert code == 0
    assert doc['summary']['pair_count'] == 4
    for row in doc['reports']:
        assert row['operator_algebra']['ok'] is True
        assert row['operator_algebra']['orbit_size'] == 30
        assert row['overlap']['passed'] is True
        assert row['localization']['law_holds'] is True


def test_report_carries_scaling_constant(capsys):
    code, doc = run_json(capsys, 'report', '6', '--ma', '2', '--c', '1/2')
    assert code == 0
    assert (doc['reports'][0]['a'], doc['reports'][0]['atilde']) == ('1', '3/2')


@pytest.mark.parametrize("c", ['-1', '0', 'x'])
def test_rejects_bad_scaling_constant(capsys, c):
    assert main(['report', '6', '--c', c]) == 1


def test_output_is_deterministic(capsys):
    assert main(['report', '12']) == 0
    first = capsys.readouterr().out
    assert main(['report', '12']) == 0
    assert capsys.readouterr().out == first


def test_csv_and_text_formats(capsys):
    assert main(['mub-check', '6', '--format', 'csv']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert 'modulus_min' in lines[0].split(',')
    assert len(lines) == 3
    assert main(['pairs', '6', '--format', 'text']) == 0
    assert 'pairs (2):' in capsys.readouterr().out


def test_tolerance_from_environment(capsys, monkeypatch):
    monkeypatch.setenv('ZAKSPACE_TOL', '1e-8')
    code, doc = run_json(capsys, 'mub-check', '6')
    assert code == 0
    assert doc['reports'][0]['tolerance'] == 1e-8
    monkeypatch.setenv('ZAKSPACE_TOL', 'tight')
    assert main(['mub-check', '6']) == 1


def test_rejects_non_positive_tolerance():
    assert main(['mub-check', '6', '--tol', '0']) == 1


def test_max_m_guardrail(capsys):
    code, doc = run_json(capsys, 'mub-check', '12', '--max-m', '10')
    assert code == 1
    assert 'max-m' in doc['error']


def test_output_file(capsys, tmp_path):
    target = tmp_path / 'out' / 'factor.json'
    assert main(['factor', '12', '--output', str(target)]) == 0
    assert capsys.readouterr().out == ''
    assert json.loads(target.read_text())['reports'][0]['pair_count'] == 2


def test_mub_check_tight_tolerance_exits_with_violation(capsys):
    code, doc = run_json(capsys, 'mub-check', '30', '--tol', '1e-16')
    assert code == 2
    assert doc['success'] is False
    assert all(report['mub_flat'] for report in doc['reports'])


def test_mub_check_json_is_byte_identical(capsys):
    assert main(['mub-check', '30', '--format', 'json']) == 0
    first = capsys.readouterr().out
    assert main(['mub-check', '30', '--format', 'json']) == 0
    assert capsys.readouterr().out == first
