"""Scenario files: a small JSON schema for populations, rates and loop settings.

Document layout (config keys all optional, falling back to defaults):

    {
      "name": "demo",
      "users": [
        {"id": "Sig1", "type": "sigmoid", "params": {"a": 5, "b": 10}},
        {"id": "Log3", "type": "log", "params": {"k": 0.5, "r_max": 100}}
      ],
      "R_values": [30, 60],
      "config": {
        "delta": 0.001,
        "max_iter": 1000,
        "initial_bid": 10,
        "decay": {"type": "exponential", "l1": 5, "l2": 10},
        "solver": {"bracket_lo": 0.001, "bracket_hi": 1000, "rel_tol": 1e-10}
      }
    }

Unknown keys are rejected, and every diagnostic names the offending
field (or the line/column for malformed JSON).
"""

from __future__ import annotations

import json
from pathlib import Path

from .protocol import AllocationConfig, DecayPolicy, ExponentialDecay, RationalDecay
from .sim import Scenario
from .solver import SolverConfig
from .utility import LogUtility, SigmoidUtility

__all__ = ["ScenarioFormatError", "parse_scenario", "load_scenario", "scenario_to_dict"]


class ScenarioFormatError(ValueError):
    """A scenario document failed validation; the message names the field."""


def _fail(path: str, message: str):
    raise ScenarioFormatError(f"{path}: {message}")


def _check_keys(mapping, path: str, required=(), optional=()):
    if not isinstance(mapping, dict):
        _fail(path, f"expected an object, got {type(mapping).__name__}")
    for key in required:
        if key not in mapping:
            _fail(path, f"missing required key {key!r}")
    allowed = set(required) | set(optional)
    for key in mapping:
        if key not in allowed:
            _fail(f"{path}.{key}", "unknown key")


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {value!r}")
    return float(value)


def _integer(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"expected an integer, got {value!r}")
    return value


def _parse_user(doc, path: str) -> tuple[str, SigmoidUtility | LogUtility]:
    _check_keys(doc, path, required=("id", "type", "params"))
    if not isinstance(doc["id"], str) or not doc["id"]:
        _fail(f"{path}.id", f"expected a nonempty string, got {doc['id']!r}")
    kind = doc["type"]
    params = doc["params"]
    try:
        if kind == "sigmoid":
            _check_keys(params, f"{path}.params", required=("a", "b"))
            utility = SigmoidUtility(
                a=_number(params["a"], f"{path}.params.a"),
                b=_number(params["b"], f"{path}.params.b"),
            )
        elif kind == "log":
            _check_keys(params, f"{path}.params", required=("k", "r_max"))
            utility = LogUtility(
                k=_number(params["k"], f"{path}.params.k"),
                r_max=_number(params["r_max"], f"{path}.params.r_max"),
            )
        else:
            _fail(f"{path}.type", f"unknown utility type {kind!r} (expected 'sigmoid' or 'log')")
    except ScenarioFormatError:
        raise
    except ValueError as exc:
        _fail(f"{path}.params", str(exc))
    return doc["id"], utility


def _parse_decay(doc, path: str) -> DecayPolicy | None:
    _check_keys(doc, path, required=("type",), optional=("l1", "l2", "l3"))
    kind = doc["type"]
    try:
        if kind == "none":
            _check_keys(doc, path, required=("type",))
            return None
        if kind == "exponential":
            _check_keys(doc, path, required=("type",), optional=("l1", "l2"))
            return ExponentialDecay(
                l1=_number(doc["l1"], f"{path}.l1") if "l1" in doc else 5.0,
                l2=_number(doc["l2"], f"{path}.l2") if "l2" in doc else 10.0,
            )
        if kind == "rational":
            _check_keys(doc, path, required=("type",), optional=("l3",))
            return RationalDecay(l3=_number(doc["l3"], f"{path}.l3") if "l3" in doc else 5.0)
    except ScenarioFormatError:
        raise
    except ValueError as exc:
        _fail(path, str(exc))
    _fail(f"{path}.type", f"unknown decay type {kind!r} (expected 'none', 'exponential' or 'rational')")


def _parse_solver(doc, path: str) -> SolverConfig:
    _check_keys(doc, path, optional=("bracket_lo", "bracket_hi", "rel_tol"))
    defaults = SolverConfig()
    try:
        return SolverConfig(
            bracket_lo=_number(doc["bracket_lo"], f"{path}.bracket_lo") if "bracket_lo" in doc else defaults.bracket_lo,
            bracket_hi=_number(doc["bracket_hi"], f"{path}.bracket_hi") if "bracket_hi" in doc else defaults.bracket_hi,
            rel_tol=_number(doc["rel_tol"], f"{path}.rel_tol") if "rel_tol" in doc else defaults.rel_tol,
        )
    except ScenarioFormatError:
        raise
    except ValueError as exc:
        _fail(path, str(exc))


def _parse_config(doc, path: str) -> AllocationConfig:
    _check_keys(doc, path, optional=("delta", "max_iter", "initial_bid", "decay", "solver"))
    defaults = AllocationConfig()
    try:
        return AllocationConfig(
            delta=_number(doc["delta"], f"{path}.delta") if "delta" in doc else defaults.delta,
            max_iter=_integer(doc["max_iter"], f"{path}.max_iter") if "max_iter" in doc else defaults.max_iter,
            initial_bid=_number(doc["initial_bid"], f"{path}.initial_bid") if "initial_bid" in doc else defaults.initial_bid,
            decay=_parse_decay(doc["decay"], f"{path}.decay") if "decay" in doc else None,
            solver=_parse_solver(doc["solver"], f"{path}.solver") if "solver" in doc else SolverConfig(),
        )
    except ScenarioFormatError:
        raise
    except ValueError as exc:
        _fail(path, str(exc))


def parse_scenario(doc) -> Scenario:
    """Validate a scenario document (parsed JSON) into a Scenario."""
    _check_keys(doc, "scenario", required=("name", "users", "R_values"), optional=("config",))
    if not isinstance(doc["name"], str) or not doc["name"]:
        _fail("scenario.name", f"expected a nonempty string, got {doc['name']!r}")
    if not isinstance(doc["users"], list) or not doc["users"]:
        _fail("scenario.users", "expected a nonempty list")
    users = tuple(_parse_user(u, f"users[{i}]") for i, u in enumerate(doc["users"]))
    if not isinstance(doc["R_values"], list) or not doc["R_values"]:
        _fail("scenario.R_values", "expected a nonempty list")
    r_values = tuple(_number(r, f"R_values[{i}]") for i, r in enumerate(doc["R_values"]))
    config = _parse_config(doc.get("config", {}), "config")
    try:
        return Scenario(name=doc["name"], users=users, r_values=r_values, config=config)
    except ValueError as exc:
        _fail("scenario", str(exc))


def load_scenario(path) -> Scenario:
    """Read and validate a scenario JSON file."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_scenario(doc)


def scenario_to_dict(scenario: Scenario) -> dict:
    """Serialize a Scenario to the document layout parse_scenario accepts.

    Round trips exactly: parse_scenario(scenario_to_dict(s)) == s.
    """
    users = []
    for user_id, u in scenario.users:
        if isinstance(u, SigmoidUtility):
            users.append({"id": user_id, "type": "sigmoid", "params": {"a": u.a, "b": u.b}})
        else:
            users.append({"id": user_id, "type": "log", "params": {"k": u.k, "r_max": u.r_max}})
    cfg = scenario.config
    if cfg.decay is None:
        decay = {"type": "none"}
    elif isinstance(cfg.decay, ExponentialDecay):
        decay = {"type": "exponential", "l1": cfg.decay.l1, "l2": cfg.decay.l2}
    else:
        decay = {"type": "rational", "l3": cfg.decay.l3}
    return {
        "name": scenario.name,
        "users": users,
        "R_values": list(scenario.r_values),
        "config": {
            "delta": cfg.delta,
            "max_iter": cfg.max_iter,
            "initial_bid": cfg.initial_bid,
            "decay": decay,
            "solver": {
                "bracket_lo": cfg.solver.bracket_lo,
                "bracket_hi": cfg.solver.bracket_hi,
                "rel_tol": cfg.solver.rel_tol,
            },
        },
    }
