"""JSON category files: loading with located parse errors, and saving."""
from __future__ import annotations

import json
from pathlib import Path

from ..algebra import Field, FieldError, field_from_spec
from .datum import BitensorDatum, DatumError, FusionDatum


class ParseError(ValueError):
    """The input does not follow the file grammar (maps to exit code 2)."""


class ValidationError(DatumError):
    """The datum parsed but violates a coherence axiom."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


def read_json(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{path}: cannot read ({e.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing field '{key}'")
    return obj[key]


def _index(d_simples, value, where):
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a simple index or label")
    if isinstance(value, int):
        if not 0 <= value < len(d_simples):
            raise ParseError(f"{where}: simple index {value} out of range")
        return value
    if isinstance(value, str) and value in d_simples:
        return d_simples.index(value)
    raise ParseError(f"{where}: unknown simple {value!r}")


def _int_array(data, depth, where):
    if depth == 0:
        if isinstance(data, bool) or not isinstance(data, int):
            raise ParseError(f"{where}: expected an integer, got {data!r}")
        return data
    if not isinstance(data, list):
        raise ParseError(f"{where}: expected a list")
    return [_int_array(x, depth - 1, f"{where}[{i}]") for i, x in enumerate(data)]


def _scalar(field, value, where):
    try:
        return field.parse(value)
    except (FieldError, ValueError, ArithmeticError, TypeError) as e:
        raise ParseError(f"{where}: bad scalar {value!r} ({e})") from None


def _matrix(field, data, where):
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ParseError(f"{where}: expected a list of rows")
    return [[_scalar(field, v, f"{where}[{r}][{c}]") for c, v in enumerate(row)] for r, row in enumerate(data)]


def _channel_lists(entry, where):
    rows = entry.get("rows")
    cols = entry.get("cols")
    if rows is not None:
        rows = [tuple(_int_array(x, 1, f"{where}.rows")) for x in rows]
    if cols is not None:
        cols = [tuple(_int_array(x, 1, f"{where}.cols")) for x in cols]
    return rows, cols


def _reorder(block, rows, cols, want_rows, want_cols, where):
    """Permute a block given in the file's channel order into the canonical order."""
    if rows is not None and rows != want_rows:
        if sorted(rows) != sorted(want_rows):
            raise ParseError(f"{where}: row channels {rows} do not match {want_rows}")
        block = [block[rows.index(r)] for r in want_rows]
    if cols is not None and cols != want_cols:
        if sorted(cols) != sorted(want_cols):
            raise ParseError(f"{where}: column channels {cols} do not match {want_cols}")
        block = [[row[cols.index(c)] for c in want_cols] for row in block]
    return block


def _keyed_blocks(field, simples, entries, keys, left, right, where):
    """Parse a list of ``{key..., "matrix"}`` entries into ``{tuple: block}``."""
    if entries is None:
        return {}
    if not isinstance(entries, list):
        raise ParseError(f"{where}: expected a list")
    out = {}
    for i, e in enumerate(entries):
        here = f"{where}[{i}]"
        key = tuple(_index(simples, _need(e, k, here), f"{here}.{k}") for k in keys)
        block = _matrix(field, _need(e, "matrix", here), f"{here}.matrix")
        rows, cols = _channel_lists(e, here)
        try:
            want_r, want_c = left(*key), right(*key)
        except (IndexError, TypeError):
            raise ParseError(f"{here}: bad key {key}") from None
        out[key] = _reorder(block, rows, cols, [tuple(x) for x in want_r], [tuple(x) for x in want_c], here)
    return out


def parse_category(data, field=None, where="category"):
    """Build a datum from parsed JSON (no coherence validation yet)."""
    if not isinstance(data, dict):
        raise ParseError(f"{where}: top level must be an object")
    if field is None:
        try:
            field = field_from_spec(_need(data, "field", where))
        except FieldError as e:
            raise ParseError(f"{where}.field: {e}") from None
    elif not isinstance(field, Field):
        field = field_from_spec(field)
    simples = _need(data, "simples", where)
    if not isinstance(simples, list) or not simples:
        raise ParseError(f"{where}.simples: expected a non-empty list")
    simples = [str(s) for s in simples]
    unit = _need(data, "unit", where)
    unit = _index(simples, unit, f"{where}.unit") if not isinstance(unit, list) else _int_array(unit, 1, f"{where}.unit")
    fusion = _int_array(_need(data, "fusion", where), 3, f"{where}.fusion")
    name = data.get("name")
    n = len(simples)
    # shape checks come before F parsing so channel enumeration is safe
    probe = FusionDatum(field, simples, unit, fusion, F={}, name=name) if _shape_ok(fusion, n) else None
    if probe is None:
        raise ParseError(f"{where}.fusion: expected a {n}x{n}x{n} array")
    F = _keyed_blocks(field, simples, data.get("F"), ("i", "j", "k", "l"), probe.F_left, probe.F_right, f"{where}.F")
    unit_iso = None
    if data.get("unit_iso"):
        ui = data["unit_iso"]
        unit_iso = {}
        for nm in ("rho", "lambda"):
            left = probe.rho_left if nm == "rho" else probe.lambda_left
            blocks = _keyed_blocks(field, simples, ui.get(nm), ("a",), left, lambda a: [()], f"{where}.unit_iso.{nm}")
            unit_iso[nm] = {k[0]: v for k, v in blocks.items()}
    base = FusionDatum(field, simples, unit, fusion, F, unit_iso, name)
    if "delta" not in data:
        for k in ("coF", "kappa", "counit", "counit_iso"):
            if k in data:
                raise ParseError(f"{where}: '{k}' given without 'delta'")
        return base
    delta = _int_array(data["delta"], 3, f"{where}.delta")
    if not _shape_ok(delta, n):
        raise ParseError(f"{where}.delta: expected a {n}x{n}x{n} array")
    counit = data.get("counit")
    if counit is not None:
        counit = _int_array(counit, 1, f"{where}.counit")
    probe_bi = BitensorDatum(base, delta, counit=counit, name=name)
    coF = _keyed_blocks(field, simples, data.get("coF"), ("a", "b1", "b2", "b3"),
                        probe_bi.coF_left, probe_bi.coF_right, f"{where}.coF")
    kappa = _keyed_blocks(field, simples, data.get("kappa"), ("a", "b", "c1", "c2"),
                          probe_bi.kappa_left, probe_bi.kappa_right, f"{where}.kappa")
    counit_iso = None
    if data.get("counit_iso"):
        ci = data["counit_iso"]
        w = f"{where}.counit_iso"
        counit_iso = {
            "delta": _keyed_blocks(field, simples, ci.get("delta"), ("a", "b"), probe_bi.delta_left, probe_bi.delta_right, w + ".delta"),
            "tau": _keyed_blocks(field, simples, ci.get("tau"), ("c1", "c2"), probe_bi.tau_left, probe_bi.tau_right, w + ".tau"),
            "r": _keyed_blocks(field, simples, ci.get("r"), ("a",), probe_bi.r_left, lambda a: [()], w + ".r"),
            "l": _keyed_blocks(field, simples, ci.get("l"), ("a",), probe_bi.l_left, lambda a: [()], w + ".l"),
        }
        if ci.get("eta") is not None:
            counit_iso["eta"] = {(): _matrix(field, ci["eta"], w + ".eta")}
    return BitensorDatum(base, delta, coF, kappa, counit, counit_iso, name)


def _shape_ok(arr, n):
    return len(arr) == n and all(len(p) == n and all(len(r) == n for r in p) for p in arr)


def load_category(path, field=None, validate=True):
    """Parse and (by default) fully validate a category file.

    Raises :class:`ParseError` for grammar problems, :class:`DatumError` for
    structural invariants and :class:`ValidationError` for coherence failures.
    """
    data = read_json(path)
    d = parse_category(data, field=field, where=str(Path(path).name))
    if validate:
        from .validate import validate as run

        rep = run(d)
        if not rep["ok"]:
            raise ValidationError(_first_failure(rep), rep)
    return d


def _first_failure(rep):
    for key in ("pentagon", "triangle"):
        r = rep.get(key)
        if r and r["failures"]:
            f = r["failures"][0]
            return f"{key} fails at tuple {f['tuple']} with total {f['total']}"
    bi = rep.get("bitensor", {})
    for name, r in bi.get("checks", {}).items():
        if not r["ok"]:
            return f"bitensor axiom {name} fails: {r['failures'][0]}"
    return "validation failed"


# -- saving ----------------------------------------------------------------

def _blocks_json(field, blocks, names, left, right, fmt=None, skip_identity=True):
    fmt = fmt or field.format
    out = []
    for key in sorted(blocks):
        block = blocks[key]
        n = len(block)
        if skip_identity and all(
            block[r][c] == (field.one() if r == c else field.zero()) for r in range(n) for c in range(len(block[r]))
        ):
            continue
        e = dict(zip(names, key))
        e["rows"] = [list(x) for x in left(*key)]
        e["cols"] = [list(x) for x in right(*key)]
        e["matrix"] = [[fmt(v) for v in row] for row in block]
        out.append(e)
    return out


def category_to_json(d):
    base = d.base if isinstance(d, BitensorDatum) else d
    F = base.field
    out = {"field": F.spec()}
    if base.name:
        out["name"] = base.name
    out["simples"] = list(base.simples)
    out["unit"] = base._unit_spec()
    out["fusion"] = [[list(r) for r in p] for p in base.fusion]
    out["F"] = _blocks_json(F, base.F, ("i", "j", "k", "l"), base.F_left, base.F_right)
    if base.unit_iso:
        out["unit_iso"] = {
            nm: [{"a": a, "matrix": [[F.format(v) for v in r] for r in blk]} for a, blk in sorted(base.unit_iso.get(nm, {}).items())]
            for nm in ("rho", "lambda")
        }
    if isinstance(d, BitensorDatum):
        out["delta"] = [[list(r) for r in p] for p in d.delta]
        out["coF"] = _blocks_json(F, d.coF, ("a", "b1", "b2", "b3"), d.coF_left, d.coF_right)
        out["kappa"] = _blocks_json(F, d.kappa, ("a", "b", "c1", "c2"), d.kappa_left, d.kappa_right)
        if d.counit is not None:
            out["counit"] = list(d.counit)
            ci = d.counit_iso
            out["counit_iso"] = {
                "delta": _blocks_json(F, ci["delta"], ("a", "b"), d.delta_left, d.delta_right),
                "tau": _blocks_json(F, ci["tau"], ("c1", "c2"), d.tau_left, d.tau_right),
                "r": _blocks_json(F, ci["r"], ("a",), d.r_left, lambda a: [()]),
                "l": _blocks_json(F, ci["l"], ("a",), d.l_left, lambda a: [()]),
                "eta": [[F.format(v) for v in r] for r in ci["eta"][()]],
            }
    return out


def _render(obj, indent):
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad} {json.dumps(k)}: {_render(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(not isinstance(x, (list, dict)) for x in obj) or all(
            isinstance(x, list) and all(not isinstance(y, (list, dict)) for y in x) for x in obj
        ) and len(json.dumps(obj)) < 100:
            return json.dumps(obj)
        items = [pad + " " + _render(x, indent + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj)


def dumps(obj):
    """Deterministic JSON with short scalar arrays kept on one line."""
    return _render(obj, 0) + "\n"


def save_category(d, path):
    Path(path).write_text(dumps(category_to_json(d)), encoding="utf-8")
