import json
import math

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from lib.circle import SpectralFunction, StepBoundary
from lib.config import MAX_FREQUENCY
from lib.errors import DomainError, SpecError
from lib.extend import BidiskSpectrum, Blaschke, Product, Scaled, SingularInner, Taylor
from lib.specs import PARSERS, load_spec, parse_spec

NON_FINITE = ["NaN", "Infinity", "-Infinity", "1e400", "-1e400"]

out_of_range = st.integers(min_value=MAX_FREQUENCY + 1, max_value=10**30).map(str)
non_finite = st.sampled_from(NON_FINITE)


def malformed_spec_texts():
    """JSON texts that must be rejected with a SpecError."""
    unknown = st.text(max_size=12).filter(lambda kind: kind not in PARSERS).map(lambda kind: json.dumps({"type": kind}))
    huge_trig = st.builds(
        lambda key, sign: json.dumps({"type": "trig", "coeffs": {sign + key: 1}}),
        out_of_range,
        st.sampled_from(["", "-"]),
    )
    huge_trig2d = st.builds(lambda key: json.dumps({"type": "trig2d", "coeffs": {f"0,{key}": 1}}), out_of_range)
    wide_trig2d = st.integers(min_value=512, max_value=MAX_FREQUENCY).map(
        lambda n: json.dumps({"type": "trig2d", "coeffs": {f"{n},{n}": 1}})
    )
    nan_values = st.one_of(
        non_finite.map(lambda x: '{"type": "taylor", "coeffs": [1, %s]}' % x),
        non_finite.map(lambda x: '{"type": "taylor", "coeffs": [[0, %s]]}' % x),
        non_finite.map(lambda x: '{"type": "blaschke", "zeros": [%s]}' % x),
        non_finite.map(lambda x: '{"type": "trig", "coeffs": {"1": %s}}' % x),
        non_finite.map(lambda x: '{"type": "step", "breaks": [%s], "values": [1]}' % x),
        non_finite.map(lambda x: '{"type": "step", "breaks": [0.5], "values": [%s]}' % x),
        non_finite.map(lambda x: '{"type": "singular", "angle": %s}' % x),
        non_finite.map(lambda x: '{"type": "singular", "mass": %s}' % x),
        non_finite.map(lambda x: '{"type": "scaled", "factor": %s, "inner": {"type": "taylor", "coeffs": [1]}}' % x),
    )
    outside = st.floats(min_value=1.0, max_value=1e6).map(lambda a: json.dumps({"type": "blaschke", "zeros": [a]}))
    nonpositive_mass = st.floats(min_value=-1e6, max_value=0.0).map(
        lambda c: json.dumps({"type": "singular", "mass": c})
    )
    wrong_types = st.sampled_from(
        [
            '{"type": "taylor", "coeffs": "1, 2"}',
            '{"type": "taylor", "coeffs": [true]}',
            '{"type": "taylor", "coeffs": [[1, 2, 3]]}',
            '{"type": "trig", "coeffs": [1, 2]}',
            '{"type": "trig", "coeffs": {"one": 1}}',
            '{"type": "trig2d", "coeffs": {"1": 1}}',
            '{"type": "step", "breaks": 0.5, "values": [1]}',
            '{"type": "step", "breaks": ["0.5"], "values": [1]}',
            '{"type": "singular", "angle": "north"}',
            '{"type": "product", "factors": [{"type": "step", "breaks": [0], "values": [1]}]}',
            '{"type": "scaled", "factor": 2}',
            '{"type": 3}',
            "[1, 2]",
            "null",
        ]
    )

    return st.one_of(unknown, huge_trig, huge_trig2d, wide_trig2d, nan_values, outside, nonpositive_mass, wrong_types)


class TestsParse:
    def test_every_type(self):
        assert isinstance(load_spec('{"type": "trig", "coeffs": {"-1": 1, "2": [0, 1]}}'), SpectralFunction)
        assert isinstance(load_spec('{"type": "taylor", "coeffs": [1, [0, 2]]}'), Taylor)
        assert isinstance(load_spec('{"type": "blaschke", "zeros": [0.4, [0.1, -0.3]]}'), Blaschke)
        assert isinstance(load_spec('{"type": "step", "breaks": [0], "values": [1]}'), StepBoundary)
        assert isinstance(load_spec('{"type": "singular"}'), SingularInner)
        assert isinstance(load_spec('{"type": "trig2d", "coeffs": {"2,3": 1}}'), BidiskSpectrum)

        inner = '{"type": "scaled", "factor": 2, "inner": {"type": "taylor", "coeffs": [1]}}'
        nested = load_spec(f'{{"type": "product", "factors": [{inner}]}}')
        assert isinstance(nested, Product)
        assert isinstance(nested.factors[0], Scaled)

    def test_frequency_bound_is_inclusive(self):
        c = parse_spec({"type": "trig", "coeffs": {str(MAX_FREQUENCY): 1}})
        assert c.M == MAX_FREQUENCY

    @pytest.mark.parametrize("key", [str(MAX_FREQUENCY + 1), "-100000000000", "1" * 400])
    def test_huge_frequency_keys(self, key):
        with pytest.raises(SpecError, match="beyond the supported range"):
            parse_spec({"type": "trig", "coeffs": {key: 1}})

    def test_huge_bidisk_keys(self):
        with pytest.raises(SpecError, match="beyond the supported range"):
            parse_spec({"type": "trig2d", "coeffs": {"100000000000,0": 1}})
        with pytest.raises(SpecError, match="coefficients"):
            parse_spec({"type": "trig2d", "coeffs": {f"{MAX_FREQUENCY},1": 1}})

    @pytest.mark.parametrize(
        "text, field",
        [
            ('{"type": "step", "breaks": [NaN], "values": [1]}', "breaks[0]"),
            ('{"type": "singular", "angle": NaN}', "angle"),
            ('{"type": "singular", "mass": Infinity}', "mass"),
            ('{"type": "taylor", "coeffs": [1e400]}', "coeffs[0]"),
            ('{"type": "blaschke", "zeros": [[0.1, NaN]]}', "zeros[0]"),
        ],
    )
    def test_non_finite_numbers(self, text, field):
        with pytest.raises(SpecError) as err:
            load_spec(text)
        assert err.value.field == field

    def test_nested_field_paths(self):
        with pytest.raises(SpecError) as err:
            load_spec('{"type": "product", "factors": [{"type": "taylor", "coeffs": [1]}, {"type": "nope"}]}')
        assert err.value.field == "factors[1].type"

    @settings(deadline=None, max_examples=200)
    @given(malformed_spec_texts())
    def test_malformed_specs_raise_spec_errors(self, text):
        with pytest.raises(SpecError):
            load_spec(text)


class TestsFiniteInputs:
    @pytest.mark.parametrize("breaks", [[math.nan], [0.0, math.nan], [math.inf]])
    def test_step_breaks(self, breaks):
        with pytest.raises(DomainError):
            StepBoundary(breaks, [1] * len(breaks))

    @pytest.mark.parametrize("mass, angle", [(1.0, math.nan), (1.0, math.inf), (math.nan, 0.0), (0.0, 0.0)])
    def test_singular_inner(self, mass, angle):
        with pytest.raises(DomainError):
            SingularInner(mass, angle)
