import json
import logging
from fractions import Fraction

import numpy as np
import pytest

from fgwalk.core.config import ColorfulFormatter, TUIColors
from fgwalk.core.errors import PreconditionError
from fgwalk.graphcore.polynomial import RationalPoly
from fgwalk.utils.json_utils import make_envelope, render, to_jsonable
from fgwalk.utils.string_utils import (
    format_laurent,
    format_polynomial,
    format_rational,
    parse_rational,
    parse_value_list,
)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3/2", Fraction(3, 2)),
        ("-4", Fraction(-4)),
        ("0.25", Fraction(1, 4)),
        (" 7/14 ", Fraction(1, 2)),
    ],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["three", "1/0", ""])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_parse_value_list():
    assert parse_value_list("1, -1/2,3,") == [Fraction(1), Fraction(-1, 2), Fraction(3)]


def test_formatting():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_polynomial([0, 0]) == "0"
    assert format_polynomial([Fraction(-1, 2), 1, 1], var="x") == "-1/2 + x + x^2"
    assert format_laurent({(1, -1): -1, (0, 0): 3}) == "3 - x1*x2^-1"


def test_to_jsonable_keeps_exactness():
    payload = to_jsonable(
        {
            "big": 2**60,
            "small": -(2**53),
            "ratio": Fraction(-2, 6),
            "whole": Fraction(8, 4),
            "z": 1 + 2j,
            "poly": RationalPoly([1, 0, -3]),
            "array": np.array([1.5, 2.0]),
            "flag": np.bool_(True),
        }
    )
    assert payload["big"] == str(2**60)
    assert payload["small"] == -(2**53)
    assert payload["ratio"] == "-1/3"
    assert payload["whole"] == 2
    assert payload["z"] == {"re": 1.0, "im": 2.0}
    assert payload["poly"] == {"text": "1 - 3u^2", "coeffs": [1, 0, -3]}
    assert payload["array"] == [1.5, 2.0]
    assert payload["flag"] is True
    json.dumps(payload)


def test_render_formats():
    rows = [{"length": 1, "CC": 4}, {"length": 2, "CC": 8}]
    env = make_envelope("conj", {"rank": 2}, {"rows": rows})
    assert json.loads(render(env))["result"]["rows"][1]["CC"] == 8
    assert render(env, "csv") == "length,CC\n1,4\n2,8"
    assert "CC" in render(env, "table")


def test_csv_rejects_scalar_results():
    env = make_envelope("clt", {}, {"sigma2": 2.0})
    with pytest.raises(PreconditionError):
        render(env, "csv")
    assert "sigma2" in render(env, "table")


def test_colorful_formatter_marks_level_and_name():
    record = logging.LogRecord(
        "fgwalk", logging.WARNING, __file__, 1, "gap %s", ("small",), None
    )
    line = ColorfulFormatter("%(levelname)s %(name)s %(message)s").format(record)
    assert line.startswith(f"{TUIColors.WARNING}WARNING ")
    assert f"{TUIColors.LOGGER_NAME}fgwalk{TUIColors.RESET}" in line
    assert line.endswith("gap small")
    # the record handed to other handlers stays uncolored
    assert record.levelname == "WARNING"
