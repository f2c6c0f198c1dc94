"""Smoke test for the fourprimes extension module.

Build and install first, e.g. ``maturin develop -m crates/python/Cargo.toml``.
"""

import math

import fourprimes as fp


def main() -> None:
    assert fp.omega(1.5) == 2 / 3
    assert abs(fp.omega(3.0) - (1 + math.log(2)) / 3) < 1e-6

    s = fp.gauss_sum(7, 3)
    assert abs(abs(s + 1) - math.sqrt(7)) < 1e-9

    assert fp.scan_exceptions(10_000) == [4, 28]
    assert fp.count_representations(100) == (1, [5, 5, 5, 5])
    assert fp.count_representations(28)[0] == 0

    ss = fp.singular_series(100, 200, 200)
    assert ss["admissible"] and ss["euler"] > 1

    assert fp.singular_integral(0.8) > 0
    assert fp.classify_arc(1 / 3 + 1e-9, 1e4, 100) == (1, 3)

    checked, bad = fp.verify_decomposition(1e5, 50_000, 60_000)
    assert checked == 10_000 and bad == []

    try:
        fp.scan_exceptions(10**12)
    except ValueError as e:
        assert "capacity" in str(e)
    else:
        raise AssertionError("oversized scan accepted")

    print(f"fourprimes {fp.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
