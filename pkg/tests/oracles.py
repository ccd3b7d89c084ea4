"""Reference implementations used only by the tests.

Everything here works on the raw schema dict and shares no code with the
package, so agreement between the two is evidence rather than tautology.
"""

from __future__ import annotations

import datetime as dt
import random
import re
import string


# ---------------------------------------------------------------- flattening


def hand_columns(raw: dict, path: tuple = (), req_chain: bool = True) -> list[dict]:
    """Leaf columns in preorder, document order."""
    out = []
    required = raw.get("required", [])
    for name, sub in raw.get("properties", {}).items():
        p = path + (name,)
        req = req_chain and name in required
        kind = sub.get("type", "object" if "properties" in sub else None)
        if kind == "object":
            out.extend(hand_columns(sub, p, req))
        else:
            out.append({"path": p, "header": sub.get("displayName") or name, "type": kind,
                        "required": req, "enum": sub.get("enum"), "format": sub.get("format"),
                        "note": sub.get("description")})
    return out


def hand_skeleton(raw: dict) -> dict:
    skel: dict = {}
    for col in hand_columns(raw):
        cur = skel
        for key in col["path"][:-1]:
            cur = cur.setdefault(key, {})
        cur[col["path"][-1]] = col["header"]
    return skel


# ---------------------------------------------------------------- validation


def _ok_date(text):
    if not text.isascii() or len(text) != 10 or text[4] != "-" or text[7] != "-":
        return False
    if not (text[:4] + text[5:7] + text[8:]).isdigit():
        return False
    try:
        dt.datetime.strptime(text, "%Y-%m-%d")
    except ValueError:
        return False
    return True


_TIME = re.compile(r"(\d\d):(\d\d):(\d\d)(?:\.[0-9]+)?(Z|z|[+-](\d\d):(\d\d))")


def _ok_date_time(text):
    for sep in "Tt":
        if sep in text:
            date_part, _, time_part = text.partition(sep)
            break
    else:
        return False
    if not _ok_date(date_part) or not time_part.isascii():
        return False
    m = _TIME.fullmatch(time_part)
    if not m:
        return False
    h, mi, s = int(m.group(1)), int(m.group(2)), int(m.group(3))
    if h > 23 or mi > 59 or s > 60:
        return False
    if m.group(5) is not None and (int(m.group(5)) > 23 or int(m.group(6)) > 59):
        return False
    return True


def _ok_email(text):
    if text.count("@") != 1 or any(c.isspace() for c in text):
        return False
    local, domain = text.split("@")
    labels = domain.split(".")
    return bool(local) and len(labels) >= 2 and all(labels)


FORMAT_ORACLE = {"date": _ok_date, "date-time": _ok_date_time, "email": _ok_email}


def _type_ok(kind, v):
    if kind == "string":
        return type(v) is str
    if kind == "boolean":
        return type(v) is bool
    if kind == "number":
        return type(v) in (int, float)
    if kind == "integer":
        return type(v) is int or (type(v) is float and v == int(v))
    if kind == "object":
        return type(v) is dict
    if kind == "array":
        return type(v) is list
    raise AssertionError(kind)


def _same(a, b):
    if type(a) is bool or type(b) is bool:
        return type(a) is type(b) and a == b
    return a == b


def _schema_paths(raw):
    """(path, subschema, parent_schema) for every property, preorder."""
    out = []

    def rec(node, path):
        for name, sub in node.get("properties", {}).items():
            out.append((path + (name,), sub, node))
            if sub.get("type") == "object" or "properties" in sub and "type" not in sub:
                rec(sub, path + (name,))

    rec(raw, ())
    return out


def _esc(token):
    return str(token).replace("~", "~0").replace("/", "~1")


def reference_validate(events, raw) -> list[tuple[str, str]]:
    """Brute force: visit each schema path of each event independently."""
    found = []
    paths = _schema_paths(raw)
    for i, event in enumerate(events):
        if type(event) is not dict:
            found.append((f"/{i}", "SCHEMA_TYPE_MISMATCH"))
            continue
        for path, sub, parent in paths:
            # locate the parent value; skip if it is not a present object
            cur = event
            reachable = True
            for key in path[:-1]:
                if type(cur) is not dict or key not in cur:
                    reachable = False
                    break
                cur = cur[key]
            if not reachable or type(cur) is not dict:
                continue
            ptr = f"/{i}" + "".join("/" + _esc(k) for k in path)
            if path[-1] not in cur:
                if path[-1] in parent.get("required", []):
                    found.append((ptr, "REQUIRED_MISSING_FIELD"))
                continue
            v = cur[path[-1]]
            kind = sub.get("type", "object")
            if not _type_ok(kind, v):
                found.append((ptr, "SCHEMA_TYPE_MISMATCH"))
                continue
            if kind == "array":
                bad = [j for j, item in enumerate(v) if not _type_ok(sub["items"]["type"], item)]
                found.extend((f"{ptr}/{j}", "SCHEMA_TYPE_MISMATCH") for j in bad)
                if bad:
                    continue
            fmt = sub.get("format")
            if kind == "string" and fmt in FORMAT_ORACLE and not FORMAT_ORACLE[fmt](v):
                found.append((ptr, "SCHEMA_FORMAT_INVALID"))
                continue
            if kind not in ("object", "array") and "enum" in sub:
                if not any(_same(v, e) for e in sub["enum"]):
                    found.append((ptr, "SCHEMA_ENUM_VIOLATION"))
    return found


# ---------------------------------------------------------------- generators

_LEAF_KINDS = ["string", "number", "integer", "boolean", "date", "date-time", "email", "enum", "array"]


def _name(rng, used):
    while True:
        n = rng.choice(string.ascii_lowercase) + "".join(
            rng.choice(string.ascii_letters + string.digits) for _ in range(rng.randint(2, 7))
        )
        if n not in used and n not in ("eventName", "producer"):
            used.add(n)
            return n


def random_schema(rng: random.Random, max_depth: int = 3, max_leaves: int = 25) -> dict:
    """Random schema within the supported subset; headers are globally unique."""
    used: set[str] = set()
    budget = [rng.randint(1, max_leaves)]

    def leaf(name):
        kind = rng.choice(_LEAF_KINDS)
        node = {"displayName": f"{name.capitalize()} {len(used)}"} if rng.random() < 0.7 else {}
        if rng.random() < 0.5:
            node["description"] = f"note for {name}, with comma"
        if kind in ("date", "date-time", "email"):
            node.update(type="string", format=kind)
        elif kind == "enum":
            base = rng.choice(["string", "integer", "number"])
            if base == "string":
                vals = rng.sample(["red", "green", "blue", "Red", "grey", "1"], rng.randint(1, 4))
            elif base == "integer":
                vals = rng.sample(range(0, 9), rng.randint(1, 4))
            else:
                vals = rng.sample([0.5, 1.5, 2.25, 7.0, -3.5], rng.randint(1, 3))
            node.update(type=base, enum=vals)
        elif kind == "array":
            node.update(type="array", items={"type": rng.choice(["string", "integer", "number", "boolean"])})
        else:
            node["type"] = kind
        return node

    def obj(depth):
        props = {}
        n = rng.randint(1, 4)
        for _ in range(n):
            if budget[0] <= 0:
                break
            name = _name(rng, used)
            if depth < max_depth and rng.random() < 0.3 and budget[0] >= 2:
                sub = obj(depth + 1)
                if sub["properties"]:
                    props[name] = sub
                    continue
            props[name] = leaf(name)
            budget[0] -= 1
        node = {"type": "object", "properties": props}
        req = [k for k in props if rng.random() < 0.5]
        if req:
            node["required"] = req
        return node

    root = obj(1)
    while budget[0] > 0 and rng.random() < 0.8:
        name = _name(rng, used)
        root["properties"][name] = leaf(name)
        budget[0] -= 1
    root["description"] = rng.choice(["weight", "treatment", "movement", "calving"])
    return root


def valid_value(rng, sub):
    kind = sub.get("type", "object")
    if "enum" in sub:
        return rng.choice(sub["enum"])
    if kind == "object":
        return valid_event(rng, sub)
    if kind == "array":
        return [valid_value(rng, sub["items"]) for _ in range(rng.randint(0, 3))]
    fmt = sub.get("format")
    if fmt == "date":
        return f"20{rng.randint(10, 29)}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}"
    if fmt == "date-time":
        return f"2023-0{rng.randint(1, 9)}-1{rng.randint(0, 9)}T{rng.randint(0, 23):02d}:15:00Z"
    if fmt == "email":
        return f"u{rng.randint(0, 99)}@farm.example.org"
    if kind == "string":
        return rng.choice(["abc", "C123", "x y", ""])
    if kind == "integer":
        return rng.randint(-5, 500)
    if kind == "number":
        return rng.choice([rng.randint(0, 9), round(rng.uniform(-10, 900), 2)])
    if kind == "boolean":
        return rng.random() < 0.5
    raise AssertionError(kind)


def valid_event(rng, node):
    out = {}
    req = node.get("required", [])
    for name, sub in node.get("properties", {}).items():
        if name in req or rng.random() < 0.7:
            out[name] = valid_value(rng, sub)
    return out


_JUNK = [None, "oops", 3, 2.5, True, [], {}, ["x", 1], "2023-13-01", "no-at-sign", 1.0, "not-a-date"]


def mutate(rng, event, raw):
    """Randomly break some values of an event in place."""
    paths = [p for p, _, _ in _schema_paths(raw)]
    for _ in range(rng.randint(0, 3)):
        if not paths:
            break
        path = rng.choice(paths)
        cur = event
        for key in path[:-1]:
            if type(cur) is not dict or key not in cur:
                cur = None
                break
            cur = cur[key]
        if type(cur) is not dict:
            continue
        action = rng.random()
        if action < 0.3:
            cur.pop(path[-1], None)
        elif action < 0.9:
            cur[path[-1]] = rng.choice(_JUNK)
        else:
            cur["extraKey"] = "ignored"
    return event


def random_events(rng, raw, count):
    events = []
    for _ in range(count):
        ev = valid_event(rng, raw)
        if rng.random() < 0.5:
            mutate(rng, ev, raw)
        ev["eventName"] = raw["description"]
        events.append(ev)
    if rng.random() < 0.05:
        events.append(rng.choice([None, "event", 7]))
    return events
