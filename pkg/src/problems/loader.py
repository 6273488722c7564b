"""
loader.py — Problem-definition files.

    {
      "variables": ["x1", "x2"],
      "equations": ["x1^2 + x2^2 - 2", "x1 - x2"],
      "root": [1, 1],
      "domain_radius": 0.5
    }

`root` and `domain_radius` are optional; the domain ball is centered at the root
(or at the origin when no root is given).
"""

import json
import os

from .expressions import parse_system
from .operator import OperatorSpec

REQUIRED = ("variables", "equations")
OPTIONAL = ("root", "domain_radius", "name")


def load_problem(path: str) -> OperatorSpec:
    if not os.path.exists(path):
        raise FileNotFoundError(f"Problem file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"{path} is not valid json: {e}")
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: expected a json object")

    missing = [k for k in REQUIRED if k not in doc]
    if missing:
        raise ValueError(f"{path}: missing field(s) {', '.join(missing)}")
    unknown = sorted(set(doc) - set(REQUIRED) - set(OPTIONAL))
    if unknown:
        raise ValueError(f"{path}: unknown field(s) {', '.join(unknown)}")

    variables = doc["variables"]
    equations = doc["equations"]
    if not (isinstance(variables, list) and all(isinstance(v, str) for v in variables)):
        raise ValueError(f"{path}: 'variables' must be a list of names")
    if not (isinstance(equations, list) and all(isinstance(e, str) for e in equations)):
        raise ValueError(f"{path}: 'equations' must be a list of expression strings")
    if any(";" in e for e in equations):
        raise ValueError(f"{path}: one expression per 'equations' entry")

    root = doc.get("root")
    if root is not None and not (isinstance(root, list) and all(isinstance(v, (int, float)) for v in root)):
        raise ValueError(f"{path}: 'root' must be a list of numbers")
    radius = doc.get("domain_radius")
    if radius is not None and not (isinstance(radius, (int, float)) and radius > 0):
        raise ValueError(f"{path}: 'domain_radius' must be a positive number")

    name = doc.get("name") or os.path.splitext(os.path.basename(path))[0]
    return parse_system(
        "; ".join(equations),
        variables=variables,
        root=root,
        domain_radius=None if radius is None else float(radius),
        name=name,
    )
