"""
JSON function specs shared by every subcommand:

    {"type": "trig", "coeffs": {"<n>": [re, im], ...}}
    {"type": "taylor", "coeffs": [[re, im], ...]}
    {"type": "blaschke", "zeros": [[re, im], ...]}
    {"type": "step", "breaks": [angle, ...], "values": [[re, im], ...]}
    {"type": "scaled", "factor": [re, im], "inner": <spec>}
    {"type": "product", "factors": [<spec>, ...]}
    {"type": "singular", "mass": c, "angle": theta}
    {"type": "trig2d", "coeffs": {"<m>,<n>": [re, im]}}

A complex number may also be given as a bare real number.
"""

import cmath
import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Union

from lib.circle import (
    BoundarySpec,
    Restriction,
    SpectralFunction,
    StepBoundary,
    UnitGridFunction,
    sample,
    synthesize,
)
from lib.config import MAX_FREQUENCY
from lib.errors import DomainError, SpecError
from lib.extend import BidiskSpectrum, Blaschke, HoloSpec, Product, Scaled, SingularInner, Taylor

Spec = Union[SpectralFunction, BoundarySpec, HoloSpec, BidiskSpectrum]


def _number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _finite(value: complex, path: str) -> complex:
    if not cmath.isfinite(value):
        raise SpecError(path, f"expected a finite number, got {value}")

    return value


def _complex(value: Any, path: str) -> complex:
    try:
        if _number(value):
            return _finite(complex(value), path)
        if isinstance(value, list) and len(value) == 2 and all(_number(v) for v in value):
            return _finite(complex(value[0], value[1]), path)
    except OverflowError:
        raise SpecError(path, "number out of range")

    raise SpecError(path, f"expected a number or [re, im], got {json.dumps(value)}")


def _real(value: Any, path: str) -> float:
    if not _number(value):
        raise SpecError(path, f"expected a real number, got {json.dumps(value)}")
    try:
        return _finite(complex(value), path).real
    except OverflowError:
        raise SpecError(path, "number out of range")


def _field(data: Dict[str, Any], key: str, path: str, kind: type) -> Any:
    where = f"{path}.{key}" if path else key
    if key not in data:
        raise SpecError(where, "missing")
    if not isinstance(data[key], kind):
        raise SpecError(where, f"expected {kind.__name__}, got {type(data[key]).__name__}")

    return data[key]


def _int_key(key: str, path: str) -> int:
    try:
        n = int(key.strip())
    except ValueError:
        raise SpecError(path, f"frequency key must be an integer, got {key[:40]!r}")
    if abs(n) > MAX_FREQUENCY:
        raise SpecError(path, f"frequency {key[:40]!r} is beyond the supported range |n| <= {MAX_FREQUENCY}")

    return n


def _trig(data, path) -> SpectralFunction:
    coeffs = _field(data, "coeffs", path, dict)
    where = f"{path}.coeffs" if path else "coeffs"
    return SpectralFunction.from_dict(
        {_int_key(k, f"{where}[{k}]"): _complex(v, f"{where}[{k}]") for k, v in coeffs.items()}
    )


def _trig2d(data, path) -> BidiskSpectrum:
    coeffs = _field(data, "coeffs", path, dict)
    where = f"{path}.coeffs" if path else "coeffs"
    parsed = {}
    for key, value in coeffs.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise SpecError(f"{where}[{key}]", "key must read '<m>,<n>'")
        parsed[tuple(_int_key(p, f"{where}[{key}]") for p in parts)] = _complex(value, f"{where}[{key}]")

    # Same coefficient count as the largest one-dimensional spectrum
    M1 = max([0, *(abs(m) for m, _ in parsed)])
    M2 = max([0, *(abs(n) for _, n in parsed)])
    if (2 * M1 + 1) * (2 * M2 + 1) > 2 * MAX_FREQUENCY + 1:
        raise SpecError(where, f"degrees ({M1}, {M2}) need more than {2 * MAX_FREQUENCY + 1} coefficients")

    return BidiskSpectrum.from_dict(parsed)


def _complex_list(data, key, path) -> List[complex]:
    values = _field(data, key, path, list)
    where = f"{path}.{key}" if path else key
    return [_complex(v, f"{where}[{i}]") for i, v in enumerate(values)]


def _taylor(data, path) -> Taylor:
    return Taylor(_complex_list(data, "coeffs", path))


def _blaschke(data, path) -> Blaschke:
    return Blaschke(_complex_list(data, "zeros", path))


def _step(data, path) -> StepBoundary:
    breaks = _field(data, "breaks", path, list)
    where = f"{path}.breaks" if path else "breaks"
    return StepBoundary([_real(b, f"{where}[{i}]") for i, b in enumerate(breaks)], _complex_list(data, "values", path))


def _holomorphic(data, path) -> HoloSpec:
    spec = parse_spec(data, path)
    if not isinstance(spec, HoloSpec):
        raise SpecError(path, f"expected a holomorphic spec, got type {data.get('type')!r}")

    return spec


def _scaled(data, path) -> Scaled:
    where = f"{path}.factor" if path else "factor"
    if "factor" not in data:
        raise SpecError(where, "missing")
    factor = _complex(data["factor"], where)
    inner = _field(data, "inner", path, dict)
    return Scaled(factor, _holomorphic(inner, f"{path}.inner" if path else "inner"))


def _product(data, path) -> Product:
    factors = _field(data, "factors", path, list)
    where = f"{path}.factors" if path else "factors"
    return Product([_holomorphic(f, f"{where}[{i}]") for i, f in enumerate(factors)])


def _singular(data, path) -> SingularInner:
    mass = _real(data.get("mass", 1.0), f"{path}.mass" if path else "mass")
    angle = _real(data.get("angle", 0.0), f"{path}.angle" if path else "angle")
    return SingularInner(mass, angle)


PARSERS: Dict[str, Callable[[Dict[str, Any], str], Spec]] = {
    "trig": _trig,
    "taylor": _taylor,
    "blaschke": _blaschke,
    "step": _step,
    "scaled": _scaled,
    "product": _product,
    "singular": _singular,
    "trig2d": _trig2d,
}


def parse_spec(data: Any, path: str = "") -> Spec:
    """Builds the function described by a decoded JSON spec.

    Args:
        data (Any): Decoded JSON value, expected to be an object with a "type" key.
        path (str, optional): Field path of `data` inside the enclosing document.

    Raises:
        SpecError: Malformed or out-of-domain spec, naming the offending field.
    """
    if not isinstance(data, dict):
        raise SpecError(path, f"spec must be an object, got {type(data).__name__}")

    kind = _field(data, "type", path, str)
    if kind not in PARSERS:
        raise SpecError(f"{path}.type" if path else "type", f"unknown type {kind!r}, expected one of {list(PARSERS)}")

    try:
        return PARSERS[kind](data, path)
    except DomainError as err:
        raise SpecError(path or kind, str(err))


def load_spec(text: str, source: str = "--spec") -> Spec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise SpecError(source, f"invalid JSON: {err}")

    return parse_spec(data)


def load_spec_file(path: Union[str, Path]) -> Spec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise SpecError(str(path), f"cannot read spec file: {err.strerror}")

    return load_spec(text, str(path))


def as_boundary(spec: Spec) -> Union[SpectralFunction, BoundarySpec]:
    """Boundary data for a spec: spectra and steps as given, closed-disk holomorphic
    specs through their restriction to T."""
    if isinstance(spec, (SpectralFunction, BoundarySpec)):
        return spec
    if isinstance(spec, HoloSpec):
        try:
            return Restriction(spec)
        except DomainError as err:
            raise SpecError("type", str(err))

    raise SpecError("type", f"{type(spec).__name__} has no boundary function on T")


def boundary_samples(spec: Spec, N: int) -> UnitGridFunction:
    """The boundary function of a spec sampled on the N-point grid."""
    boundary = as_boundary(spec)
    if isinstance(boundary, SpectralFunction):
        return synthesize(boundary, N)

    return sample(boundary, N)
