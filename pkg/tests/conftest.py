import functools
import threading
from http.server import HTTPServer, SimpleHTTPRequestHandler
from pathlib import Path

import pytest

import mvopt

REPO_ROOT = Path(__file__).resolve().parents[1]
SAMPLE_DATA = REPO_ROOT / "sample_data"


@pytest.fixture(scope="session")
def sample_dir() -> Path:
    return SAMPLE_DATA


@pytest.fixture(scope="session")
def fixture_prices(sample_dir):
    symbols = mvopt.read_symbol_list(sample_dir / "stocks.txt")
    return mvopt.extract_prices(sample_dir, symbols, 250)


@pytest.fixture(scope="session")
def fixture_moments(fixture_prices):
    return mvopt.estimate_moments(mvopt.compute_returns(fixture_prices))


@pytest.fixture(scope="session")
def fixture_frontier(fixture_moments):
    return mvopt.build_frontier(fixture_moments)


class _QuietHandler(SimpleHTTPRequestHandler):
    def log_message(self, *args):
        pass


@pytest.fixture(scope="session")
def sample_data_server(sample_dir):
    """Serve the bundled fixture over loopback HTTP for fetch tests."""
    handler = functools.partial(_QuietHandler, directory=str(sample_dir))
    server = HTTPServer(("127.0.0.1", 0), handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://127.0.0.1:{server.server_port}"
    finally:
        server.shutdown()
