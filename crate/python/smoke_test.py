"""Smoke test for the compiled extension.

Build it with `maturin develop -m crates/python/Cargo.toml`, or copy
`target/<profile>/libvalhilbert_py.so` next to this file as `valhilbert.so`.
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import valhilbert as vh


def main():
    zero = vh.Theta("0")
    seq = zero.sequence(10)
    assert seq.values == [1] + [2**i - 1 for i in range(1, 11)]
    assert vh.ValueSequence.from_json(seq.to_json()).values == seq.values

    one = vh.Theta.from_multiplicity(Fraction(1, 3))
    assert str(one) == "1"
    alphas, cumulative = vh.ValueSequence.covering(one, 10).table(10)
    assert alphas[10] == 4 and cumulative[10] == 28
    assert all(vh.alpha("17/5", n) == vh.alpha_bruteforce("17/5", n) for n in range(300))

    assert vh.alpha(zero, 2**150 - 2) == 2**149
    assert vh.epsilon("inf", 2) == Fraction(2, 5)
    assert vh.epsilon(1, 3) == Fraction(1, 33)
    assert vh.threshold(0, Fraction(1, 10)) == 3
    assert all(vh.Theta("1/2").sequence(64).invariants().values())
    assert vh.Theta("1:0101").multiplicity() == (Fraction(32, 86), Fraction(32, 85))

    cert = vh.refute(0, 2, 3, Fraction(10))
    assert cert is not None and vh.verify_certificate(cert)
    doc = json.loads(cert)
    doc["points"][0][1] = str(int(doc["points"][0][1]) + 1)
    assert not vh.verify_certificate(json.dumps(doc))

    assert vh.conductor([3, 4])["conductor"] == 6
    assert vh.eventual_linear([1, 1, 2, 2, 2], 2) == (2, -2, 2)

    try:
        vh.Theta("0:01").sequence(10)
    except vh.PrecisionError:
        pass
    else:
        raise AssertionError("short prefix accepted")
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
