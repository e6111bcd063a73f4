"""Fixture files shipped in ``painleve6/data``, regenerated from the library itself."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .braid import build_binary_polyhedral
from .exact import format_rational
from .fuchsian import klein_coefficients, klein_spectral, klein_t
from .pvi import klein_curve

GROUP_KINDS = ("tetrahedral", "octahedral", "icosahedral")


def _klein_family_payload() -> dict:
    sp = klein_spectral()
    return {
        "name": "klein",
        "parameter": "s",
        "t": klein_t().to_json(),
        "lambda": [format_rational(v) for v in sp.lam],
        "mu": [format_rational(v) for v in sp.mu],
        "coefficients": {k: v.to_json() for k, v in sorted(klein_coefficients().items())},
    }


def payloads() -> dict[str, dict]:
    out = {"klein_curve.json": klein_curve().to_json(),
           "klein_family.json": _klein_family_payload()}
    for kind in GROUP_KINDS:
        out[f"group_{kind}.json"] = build_binary_polyhedral(kind).to_json()
    return out


def dumps(obj) -> str:
    """The one JSON layout used for fixtures and reports."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_all(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, data in payloads().items():
        path = directory / name
        path.write_text(dumps(data))
        written.append(path)
    return written


def load(name: str) -> dict:
    return json.loads(resources.files("painleve6.data").joinpath(name).read_text())


def path_of(name: str) -> Path:
    return Path(str(resources.files("painleve6.data").joinpath(name)))


if __name__ == "__main__":
    for p in write_all(Path(__file__).parent / "data"):
        print(p)
