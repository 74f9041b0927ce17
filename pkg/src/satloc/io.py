"""JSON instance documents with exact rational coordinates."""
from __future__ import annotations

import json
from fractions import Fraction

from .core import DomainError, Instance, ZERO, ONE


class InstanceParseError(ValueError):
    pass


def parse_rational(text, path: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise InstanceParseError(f"{path}: expected a rational string, got {text!r}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise InstanceParseError(f"{path}: invalid rational {text!r}") from None


def instance_from_document(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceParseError("$: expected an object")
    for key in ("setting", "variant", "agents"):
        if key not in doc:
            raise InstanceParseError(f"$.{key}: missing")
    agents = doc["agents"]
    if not isinstance(agents, list) or not agents:
        raise InstanceParseError("$.agents: expected a non-empty list")
    profiles = []
    for i, agent in enumerate(agents):
        if not isinstance(agent, list) or not agent:
            raise InstanceParseError(f"$.agents[{i}]: expected a non-empty list")
        locs = []
        for j, v in enumerate(agent):
            x = parse_rational(v, f"$.agents[{i}][{j}]")
            if not ZERO <= x <= ONE:
                raise InstanceParseError(f"$.agents[{i}][{j}]: {x} is outside [0, 1]")
            locs.append(x)
        profiles.append(locs)
    try:
        return Instance(doc["setting"], doc["variant"], profiles)
    except DomainError as exc:
        raise InstanceParseError(f"$: {exc}") from None


def parse_instance(text: str) -> Instance:
    """Parse a document; JSON numbers keep their decimal text, so ``0.1`` is exactly 1/10."""
    try:
        doc = json.loads(text, parse_float=str, parse_int=str)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"$: malformed JSON ({exc})") from None
    return instance_from_document(doc)


def instance_to_document(instance: Instance) -> dict:
    return {
        "setting": instance.setting,
        "variant": instance.variant,
        "agents": [[str(x) for x in a.locations] for a in instance.agents],
    }


def serialize_instance(instance: Instance) -> str:
    return json.dumps(instance_to_document(instance))


def load_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())
