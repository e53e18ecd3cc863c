import os
import tempfile

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roughrank.discretize import (
    Binning,
    apply_bins,
    fit_bins,
    load_binning,
    save_binning,
)
from roughrank.errors import ConfigurationError, DataError


def column(values):
    return np.asarray(values, dtype=float).reshape(-1, 1)


class TestFitBins:
    def test_equal_width_two_bins(self):
        b = fit_bins(column([0, 1, 2, 3]), n_bins=2, strategy="equal_width")
        assert b.cuts == ((1.5,),)

    def test_equal_width_codes(self):
        b = fit_bins(column([0, 1, 2, 3]), n_bins=2, strategy="equal_width")
        codes = apply_bins(b, column([0, 1, 2, 3]))
        assert codes[:, 0].tolist() == [0, 0, 1, 1]

    def test_equal_frequency_skewed(self):
        # median of [1, 2, 2, 9] is 2.0; value == cut falls in the lower bin
        b = fit_bins(column([1, 2, 2, 9]), n_bins=2, strategy="equal_frequency")
        assert b.cuts == ((2.0,),)
        codes = apply_bins(b, column([1, 2, 2, 9]))
        assert codes[:, 0].tolist() == [0, 0, 0, 1]

    def test_constant_column_gets_no_cuts(self):
        b = fit_bins(column([5, 5, 5]), n_bins=3)
        assert b.cuts == ((),)
        codes = apply_bins(b, column([5, 4, 6]))
        assert codes[:, 0].tolist() == [0, 0, 0]

    def test_duplicate_quantiles_collapse(self):
        b = fit_bins(column([1, 1, 1, 1, 9]), n_bins=4, strategy="equal_frequency")
        assert len(b.cuts[0]) < 3
        assert all(x < y for x, y in zip(b.cuts[0], b.cuts[0][1:]))

    def test_multiple_columns_fit_independently(self):
        data = np.array([[0.0, 10.0], [1.0, 10.0], [2.0, 10.0], [3.0, 10.0]])
        b = fit_bins(data, n_bins=2, strategy="equal_width")
        assert b.cuts == ((1.5,), ())

    def test_bad_n_bins(self):
        with pytest.raises(ConfigurationError):
            fit_bins(column([1, 2]), n_bins=1)

    def test_bad_strategy(self):
        with pytest.raises(ConfigurationError):
            fit_bins(column([1, 2]), strategy="kmeans")

    def test_empty_matrix(self):
        with pytest.raises(DataError):
            fit_bins(np.zeros((0, 2)))


class TestApplyBins:
    def test_value_on_cut_goes_low(self):
        b = Binning(cuts=((1.5,),), strategy="equal_width", n_bins=2)
        assert apply_bins(b, column([1.5]))[0, 0] == 0

    def test_out_of_range_clamps(self):
        b = Binning(cuts=((1.0, 2.0),), strategy="equal_width", n_bins=3)
        codes = apply_bins(b, column([-100, 100]))
        assert codes[:, 0].tolist() == [0, 2]

    def test_column_count_mismatch(self):
        b = Binning(cuts=((1.0,),), strategy="equal_width", n_bins=2)
        with pytest.raises(ConfigurationError):
            apply_bins(b, np.zeros((2, 2)))

    def test_codes_are_integers(self):
        b = fit_bins(column([0, 1, 2, 3, 4, 5]), n_bins=3)
        codes = apply_bins(b, column([0.5, 4.5]))
        assert codes.dtype.kind == "i"


class TestBinningValidation:
    def test_non_increasing_cuts_rejected(self):
        with pytest.raises(DataError):
            Binning(cuts=((2.0, 1.0),), strategy="equal_width", n_bins=3)

    def test_too_many_cuts_rejected(self):
        with pytest.raises(DataError):
            Binning(cuts=((1.0, 2.0, 3.0),), strategy="equal_width", n_bins=2)


class TestSidecar:
    def test_round_trip(self, tmp_path):
        b = fit_bins(
            np.array([[0.0, 1.0], [1.0, 5.0], [2.0, 9.0], [3.0, 9.5]]),
            n_bins=3,
            strategy="equal_width",
        )
        path = tmp_path / "bins.txt"
        save_binning(b, path)
        loaded = load_binning(path, strategy="equal_width")
        assert loaded.cuts == b.cuts
        data = np.array([[0.2, 3.3], [2.9, 9.4]])
        assert np.array_equal(apply_bins(loaded, data), apply_bins(b, data))

    def test_constant_column_round_trips_as_blank_line(self, tmp_path):
        b = fit_bins(np.array([[1.0, 5.0], [2.0, 5.0]]), n_bins=2)
        path = tmp_path / "bins.txt"
        save_binning(b, path)
        assert load_binning(path).cuts == b.cuts

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bins.txt"
        path.write_text("1.0 not-a-number\n")
        with pytest.raises(DataError):
            load_binning(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "bins.txt"
        path.write_text("")
        with pytest.raises(DataError):
            load_binning(path)


finite_floats = st.floats(
    min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False
)


@st.composite
def matrices(draw):
    n_rows = draw(st.integers(min_value=2, max_value=20))
    n_cols = draw(st.integers(min_value=1, max_value=4))
    rows = draw(
        st.lists(
            st.lists(finite_floats, min_size=n_cols, max_size=n_cols),
            min_size=n_rows,
            max_size=n_rows,
        )
    )
    return np.asarray(rows, dtype=float)


class TestProperties:
    @given(
        matrices(),
        st.integers(min_value=2, max_value=5),
        st.sampled_from(["equal_width", "equal_frequency"]),
    )
    @settings(max_examples=200)
    def test_codes_in_range(self, data, n_bins, strategy):
        b = fit_bins(data, n_bins=n_bins, strategy=strategy)
        codes = apply_bins(b, data)
        assert codes.min() >= 0
        assert codes.max() <= n_bins - 1

    @given(
        matrices(),
        st.integers(min_value=2, max_value=5),
        st.sampled_from(["equal_width", "equal_frequency"]),
    )
    @settings(max_examples=200)
    def test_coding_is_monotone(self, data, n_bins, strategy):
        # a larger raw value can never land in a lower bin
        b = fit_bins(data, n_bins=n_bins, strategy=strategy)
        codes = apply_bins(b, data)
        for j in range(data.shape[1]):
            order = np.argsort(data[:, j], kind="stable")
            sorted_codes = codes[order, j]
            assert (np.diff(sorted_codes) >= 0).all()

    @given(matrices(), st.integers(min_value=2, max_value=5))
    @settings(max_examples=200)
    def test_cut_count_bounded(self, data, n_bins):
        for strategy in ("equal_width", "equal_frequency"):
            b = fit_bins(data, n_bins=n_bins, strategy=strategy)
            for cuts in b.cuts:
                assert len(cuts) <= n_bins - 1

    @given(matrices(), st.integers(min_value=2, max_value=5))
    @settings(max_examples=100)
    def test_sidecar_round_trip_preserves_codes(self, data, n_bins):
        b = fit_bins(data, n_bins=n_bins)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "b.txt")
            save_binning(b, path)
            loaded = load_binning(path)
        assert np.array_equal(apply_bins(loaded, data), apply_bins(b, data))
