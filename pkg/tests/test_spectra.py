import math

import pytest

import oracles
from entrocut import (
    SpectrumFileError,
    exponential_cap,
    extend_model,
    fit_growth_constants,
    log_dim,
    model_dims,
    parse_spectrum_file,
    partition_log_asymptotic,
    partition_numbers,
)


def test_partition_recurrence_matches_enumeration_to_35():
    p = partition_numbers(35)
    for n in range(36):
        assert p[n] == oracles.count_partitions_enumerated(n)


def test_partition_recurrence_matches_coin_change_to_500():
    assert partition_numbers(500) == oracles.partition_counts_table(500)


def test_partition_known_values():
    p = partition_numbers(100)
    assert p[0] == 1 and p[1] == 1 and p[5] == 7 and p[10] == 42
    assert p[100] == 190569292


def test_u1_dims_are_partition_numbers():
    m = model_dims("u1", 25)
    assert m.dims == partition_numbers(25)
    assert m.label == "u1"


def test_virasoro_dims_count_no_ones_partitions():
    m = model_dims("virasoro", 200)
    assert m.dims == oracles.partition_counts_table(200, min_part=2)
    assert m.dims[:7] == [1, 0, 1, 1, 2, 2, 4]


def test_tensor_power_matches_generating_function_product():
    base = model_dims("u1", 20).dims
    cube = oracles.convolve_exact(oracles.convolve_exact(base, base, 20), base, 20)
    assert model_dims("u1", 20, power=3).dims == cube
    assert model_dims("u1", 20, power=3).label == "u1^3"


def test_extend_model_preserves_prefix():
    m = model_dims("virasoro", 10)
    big = extend_model(m, 50)
    assert big.dims[:11] == m.dims
    assert big.n_max == 50


def test_custom_dim_beyond_range_is_zero(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("0 1\n3 5\n")
    m = model_dims("custom", 10, path=str(path))
    assert m.dims == [1, 0, 0, 5]
    assert m.dim(7) == 0


def test_builtin_dim_beyond_range_raises():
    m = model_dims("u1", 5)
    with pytest.raises(IndexError):
        m.dim(6)


def test_spectrum_file_comments_blanks_and_gaps(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("# header\n0 1\n\n2 7   # inline\n5 3\n")
    assert parse_spectrum_file(str(path)) == [1, 0, 7, 0, 0, 3]


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("0 1\nbroken\n", "expected 'N d_N'"),
        ("0 1\n1 x\n", "non-integer"),
        ("0 1\n2 3\n1 4\n", "strictly increasing"),
        ("0 2\n", "d_0 must be 1"),
        ("0 1\n-1 2\n", "nonnegative"),
        ("# nothing\n", "no spectrum rows"),
    ],
)
def test_spectrum_file_errors(tmp_path, text, fragment):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(SpectrumFileError) as exc:
        parse_spectrum_file(str(path))
    assert fragment in str(exc.value)


def test_spectrum_file_missing_path_raises():
    with pytest.raises(SpectrumFileError) as exc:
        parse_spectrum_file("/nonexistent/spectrum.txt")
    assert "cannot read" in str(exc.value)


def test_growth_fit_certifies_inequality_on_range(u1_3000, u1_fit):
    fit = u1_fit
    lo, hi = fit.certified_range
    assert (lo, hi) == (0, 3000)
    for n in range(hi + 1):
        d = u1_3000.dims[n]
        if d:
            assert math.log(d) <= fit.log_C + float(n) ** fit.kappa + 1e-12
    # the ratio turns over inside the scan, so extrapolation is meaningful
    assert fit.plateau
    assert 0 < fit.argmax_n < hi


def test_growth_fit_flags_maximizer_at_range_end(u1_3000):
    # kappa = 0.5 matches the true sqrt-N growth of log p(N), so the ratio
    # climbs through the whole range
    fit = fit_growth_constants(u1_3000, 0.5)
    assert not fit.plateau


def test_growth_fit_rejects_bad_kappa(u1_small):
    with pytest.raises(ValueError):
        fit_growth_constants(u1_small, 1.0)


def test_exponential_cap_bounds_dims(u1_small):
    cap = exponential_cap(u1_small)
    for n, d in enumerate(u1_small.dims):
        assert d <= cap * math.exp(n) * (1.0 + 1e-12)


def test_log_dim_handles_zero_dims():
    m = model_dims("virasoro", 5)
    assert log_dim(m, 1) == -math.inf
    assert log_dim(m, 4) == math.log(2)


def test_partition_log_asymptotic_within_two_percent_at_1000():
    exact = math.log(partition_numbers(1000)[1000])
    approx = partition_log_asymptotic(1000)
    assert abs(approx - exact) / exact < 0.02


def test_model_rejects_bad_input(tmp_path):
    with pytest.raises(ValueError):
        model_dims("u1", -1)
    with pytest.raises(ValueError):
        model_dims("nosuch", 5)
    with pytest.raises(ValueError):
        model_dims("custom", 5)  # path required
