import numpy as np
import pytest

from mvopt import (
    DegenerateDataError,
    EmptySymbolListError,
    HttpFetchError,
    InsufficientHistoryError,
    MalformedRowError,
    MissingFileError,
    PriceTable,
    ReturnTable,
    compute_returns,
    estimate_moments,
    extract_prices,
    fetch_prices,
    read_price_table,
    read_symbol_list,
    write_price_table,
)
from oracles import covariance_double_loop


def write_csv_file(path, rows):
    path.write_text("\n".join(",".join(str(c) for c in row) for row in rows) + "\n")


def price_file_rows(closes):
    rows = [["Date", "Open", "High", "Low", "Close", "Volume", "AdjClose"]]
    for i, close in enumerate(closes):
        rows.append([f"2013-06-{21 - i:02d}", close, close, close, close, 1000, close])
    return rows


class TestReadSymbolList:
    def test_ten_symbols(self, tmp_path):
        path = tmp_path / "stocks.txt"
        path.write_text("FB,INT,AAPL,MSFT,ORCL,GOOG,YHOO,DELL,IBM,HPQ\n")
        assert read_symbol_list(path) == [
            "FB", "INT", "AAPL", "MSFT", "ORCL",
            "GOOG", "YHOO", "DELL", "IBM", "HPQ",
        ]

    def test_single_symbol(self, tmp_path):
        path = tmp_path / "one.txt"
        path.write_text("AAPL")
        assert read_symbol_list(path) == ["AAPL"]

    def test_trim_and_dedupe(self, tmp_path):
        path = tmp_path / "dupes.txt"
        path.write_text("A, B ,A")
        assert read_symbol_list(path) == ["A", "B"]

    def test_empty_raises(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text(" , ,\n")
        with pytest.raises(EmptySymbolListError):
            read_symbol_list(path)

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            read_symbol_list(tmp_path / "nope.txt")


class TestExtractPrices:
    def test_sample_data_shape(self, sample_dir):
        symbols = read_symbol_list(sample_dir / "stocks.txt")
        table = extract_prices(sample_dir, symbols, 250)
        assert table.prices.shape == (250, 10)
        assert table.symbols == tuple(symbols)

    def test_two_day_copy(self, tmp_path):
        write_csv_file(tmp_path / "XYZ", price_file_rows([10, 20]))
        table = extract_prices(tmp_path, ["XYZ"], 2)
        np.testing.assert_allclose(table.prices, [[10.0], [20.0]])

    def test_insufficient_history(self, tmp_path):
        write_csv_file(tmp_path / "XYZ", price_file_rows(list(range(1, 250))))
        with pytest.raises(InsufficientHistoryError) as info:
            extract_prices(tmp_path, ["XYZ"], 250)
        assert info.value.symbol == "XYZ"
        assert info.value.available == 249

    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingFileError):
            extract_prices(tmp_path, ["GONE"], 2)

    def test_csv_suffix_fallback(self, tmp_path):
        write_csv_file(tmp_path / "XYZ.csv", price_file_rows([10, 20]))
        table = extract_prices(tmp_path, ["XYZ"], 2)
        assert table.n_days == 2

    def test_close_column_by_name(self, tmp_path):
        rows = [["Close", "Whatever"], [5, 1], [6, 1]]
        write_csv_file(tmp_path / "ABC", rows)
        table = extract_prices(tmp_path, ["ABC"], 2)
        np.testing.assert_allclose(table.prices[:, 0], [5.0, 6.0])

    def test_fifth_column_fallback(self, tmp_path):
        rows = [["c1", "c2", "c3", "c4", "c5", "c6"],
                [1, 1, 1, 1, 7, 1], [1, 1, 1, 1, 8, 1]]
        write_csv_file(tmp_path / "ABC", rows)
        table = extract_prices(tmp_path, ["ABC"], 2)
        np.testing.assert_allclose(table.prices[:, 0], [7.0, 8.0])

    def test_malformed_price(self, tmp_path):
        rows = price_file_rows([10, 20])
        rows[2][4] = "oops"
        write_csv_file(tmp_path / "BAD", rows)
        with pytest.raises(MalformedRowError) as info:
            extract_prices(tmp_path, ["BAD"], 2)
        assert info.value.line_number == 3

    def test_nonpositive_price(self, tmp_path):
        write_csv_file(tmp_path / "BAD", price_file_rows([10, -1]))
        with pytest.raises(MalformedRowError):
            extract_prices(tmp_path, ["BAD"], 2)

    def test_short_row(self, tmp_path):
        rows = price_file_rows([10, 20])
        rows[1] = ["2013-06-21", "10"]
        write_csv_file(tmp_path / "BAD", rows)
        with pytest.raises(MalformedRowError) as info:
            extract_prices(tmp_path, ["BAD"], 2)
        assert info.value.line_number == 2


class TestComputeReturns:
    def test_ten_percent_rise(self):
        table = PriceTable(("A",), np.array([[110.0], [100.0]]))
        np.testing.assert_allclose(compute_returns(table).returns, [[0.10]])

    def test_constant_prices(self):
        table = PriceTable(("A",), np.array([[50.0], [50.0], [50.0]]))
        np.testing.assert_allclose(
            compute_returns(table).returns, [[0.0], [0.0]], atol=0
        )

    def test_symmetric_fall(self):
        table = PriceTable(("A",), np.array([[90.0], [100.0]]))
        np.testing.assert_allclose(compute_returns(table).returns, [[-0.10]])

    def test_round_trip_reconstruction(self):
        rng = np.random.default_rng(3)
        prices = np.exp(rng.normal(4.0, 0.5, size=(50, 6)))
        table = PriceTable(tuple("ABCDEF"), prices)
        returns = compute_returns(table).returns
        rebuilt = np.empty_like(prices)
        rebuilt[-1] = prices[-1]
        for t in range(len(prices) - 2, -1, -1):
            rebuilt[t] = rebuilt[t + 1] * (1.0 + returns[t])
        np.testing.assert_allclose(rebuilt, prices, rtol=1e-10)


class TestEstimateMoments:
    def test_two_point_sample(self):
        table = ReturnTable(("A",), np.array([[0.1], [-0.1]]))
        moments = estimate_moments(table)
        assert moments.mean_returns[0] == pytest.approx(0.0, abs=1e-18)
        assert moments.covariance[0, 0] == pytest.approx(0.02, rel=1e-15)

    def test_identical_columns(self):
        col = np.array([0.01, -0.02, 0.03, 0.005])
        table = ReturnTable(("A", "B"), np.column_stack([col, col]))
        cov = estimate_moments(table).covariance
        assert cov[0, 0] == cov[0, 1] == cov[1, 0] == cov[1, 1]

    def test_against_double_loop_oracle(self):
        rng = np.random.default_rng(5)
        returns = rng.normal(0.001, 0.02, size=(5, 3))
        moments = estimate_moments(ReturnTable(("A", "B", "C"), returns))
        expected = covariance_double_loop(returns.tolist())
        np.testing.assert_allclose(moments.covariance, expected, atol=1e-14)
        np.testing.assert_allclose(
            moments.mean_returns, returns.mean(axis=0), atol=1e-12
        )

    def test_oracle_on_larger_tables(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            n = int(rng.integers(2, 9))
            rows = int(rng.integers(3, 51))
            returns = rng.normal(0.0, 0.03, size=(rows, n))
            moments = estimate_moments(
                ReturnTable(tuple(f"S{i}" for i in range(n)), returns)
            )
            expected = covariance_double_loop(returns.tolist())
            assert np.max(np.abs(moments.covariance - expected)) <= 1e-13

    def test_zero_variance_asset(self):
        table = ReturnTable(("A", "B"), np.array([[0.0, 0.01], [0.0, -0.01], [0.0, 0.02]]))
        with pytest.raises(DegenerateDataError):
            estimate_moments(table)

    def test_column_permutation_equivariance(self):
        rng = np.random.default_rng(9)
        returns = rng.normal(0.0, 0.02, size=(30, 4))
        perm = [2, 0, 3, 1]
        direct = estimate_moments(ReturnTable(("A", "B", "C", "D"), returns))
        permuted = estimate_moments(
            ReturnTable(tuple("ABCD"[i] for i in perm), returns[:, perm])
        )
        np.testing.assert_allclose(
            permuted.mean_returns, direct.mean_returns[perm], atol=0
        )
        np.testing.assert_allclose(
            permuted.covariance, direct.covariance[np.ix_(perm, perm)], atol=1e-18
        )

    def test_covariance_exactly_symmetric(self, fixture_moments):
        cov = fixture_moments.covariance
        assert np.array_equal(cov, cov.T)


class TestConsolidatedFile:
    def test_round_trip_bytes(self, tmp_path, fixture_prices):
        path = tmp_path / "portfolio.txt"
        write_price_table(fixture_prices, path)
        first = path.read_bytes()
        reread = read_price_table(path)
        write_price_table(reread, path)
        assert path.read_bytes() == first
        np.testing.assert_allclose(reread.prices, fixture_prices.prices, rtol=0)

    def test_malformed_row(self, tmp_path):
        path = tmp_path / "broken.txt"
        path.write_text("A,B\n1.0,2.0\n3.0\n")
        with pytest.raises(MalformedRowError) as info:
            read_price_table(path)
        assert info.value.line_number == 3


class TestFetchPrices:
    def test_single_symbol(self, tmp_path, sample_data_server):
        report = fetch_prices(["AAPL"], sample_data_server + "/{symbol}", tmp_path)
        assert report.ok
        assert [s for s, _ in report.saved] == ["AAPL"]
        assert (tmp_path / "AAPL").read_bytes().startswith(b"Date,")

    def test_unreachable_host(self, tmp_path):
        import socket

        sock = socket.socket()
        sock.bind(("127.0.0.1", 0))
        port = sock.getsockname()[1]
        sock.close()
        report = fetch_prices(
            ["AAPL"], f"http://127.0.0.1:{port}/{{symbol}}", tmp_path, timeout=2.0
        )
        assert not report.ok
        assert len(report.failed) == 1
        assert isinstance(report.failed[0], HttpFetchError)
        assert not (tmp_path / "AAPL").exists()

    def test_partial_failure(self, tmp_path, sample_data_server):
        report = fetch_prices(
            ["AAPL", "NOSUCH"], sample_data_server + "/{symbol}", tmp_path
        )
        assert report.ok
        assert [s for s, _ in report.saved] == ["AAPL"]
        assert [e.symbol for e in report.failed] == ["NOSUCH"]
        assert report.failed[0].status == 404

    def test_template_validation(self, tmp_path):
        with pytest.raises(ValueError):
            fetch_prices(["AAPL"], "http://example.com/static", tmp_path)

    def test_report_sorted_by_symbol(self, tmp_path, sample_data_server):
        report = fetch_prices(
            ["MSFT", "AAPL", "IBM"], sample_data_server + "/{symbol}", tmp_path
        )
        assert [s for s, _ in report.saved] == ["AAPL", "IBM", "MSFT"]
