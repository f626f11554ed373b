#!/usr/bin/env python3
"""Regenerate the C++ integral-term tables from the reviewed JSON data files.

Reads data/term_tables/{corrected,transcribed}.json and writes
  src/core/terms_data.inc   -- the coefficient expressions as string literals
  tests/terms_golden.inc    -- numeric samples of every entry (sympy oracle)

Both outputs are committed; rerun only when the JSON tables change.
Requires python3 with sympy.
"""

import json
import pathlib

import sympy as sp

ROOT = pathlib.Path(__file__).resolve().parent.parent
SAMPLE_POINTS = [(0.37, 1.3), (1.75, 0.6), (-1.2, 0.8)]


def load(variant):
    with open(ROOT / "data" / "term_tables" / f"{variant}.json") as fh:
        return json.load(fh)


def sym_eval(expr_text, k_val, m_val):
    expr = sp.sympify(expr_text)
    subs = {
        sp.Symbol("k"): sp.Float(repr(k_val), 30),
        sp.Symbol("m"): sp.Float(repr(m_val), 30),
        sp.Symbol("alpha"): sp.sqrt(sp.Float(repr(k_val), 30) ** 2 + sp.Float(repr(m_val), 30) ** 2),
    }
    val = complex(expr.subs(subs).evalf(30))
    return val


def emit_tables(tables_by_variant):
    lines = [
        "// Generated by tools/gen_term_tables.py from data/term_tables/*.json.",
        "// Do not edit by hand; rerun the generator instead.",
        "",
        "namespace utm::terms_data {",
        "",
        "struct RawEntry {",
        "  const char* atom;",
        "  int interval_phase; // multiplies e^{i k * phase * L}",
        "  const char* cos_coeff;",
        "  const char* sin_coeff;",
        "};",
        "",
        "struct RawGroup {",
        "  const char* key;",
        "  const RawEntry* entries;",
        "  unsigned count;",
        "};",
        "",
    ]
    for variant, tables in tables_by_variant.items():
        tag = variant.capitalize()
        group_rows = []
        for key in sorted(tables):
            arr = f"k{tag}_{key}"
            lines.append(f"inline constexpr RawEntry {arr}[] = {{")
            for e in tables[key]:
                lines.append(
                    f'    {{"{e["atom"]}", {e["interval_phase"]}, '
                    f'"{e["cos"]}", "{e["sin"]}"}},'
                )
            lines.append("};")
            lines.append("")
            group_rows.append(f'    {{"{key}", {arr}, {len(tables[key])}}},')
        lines.append(f"inline constexpr RawGroup k{tag}Groups[] = {{")
        lines.extend(group_rows)
        lines.append("};")
        lines.append("")
    lines.append("} // namespace utm::terms_data")
    lines.append("")
    (ROOT / "src" / "core" / "terms_data.inc").write_text("\n".join(lines))


def emit_golden(tables_by_variant):
    lines = [
        "// Generated by tools/gen_term_tables.py: independent numeric samples of",
        "// every table entry, evaluated symbolically. Do not edit by hand.",
        "",
        "struct GoldenTermSample {",
        "  int variant; // 0 = corrected, 1 = transcribed",
        "  const char* group;",
        "  unsigned entry;",
        "  double k, m;",
        "  double cos_re, cos_im, sin_re, sin_im;",
        "};",
        "",
        "inline constexpr GoldenTermSample kGoldenTermSamples[] = {",
    ]
    for vi, (variant, tables) in enumerate(tables_by_variant.items()):
        for key in sorted(tables):
            for ei, e in enumerate(tables[key]):
                for k_val, m_val in SAMPLE_POINTS:
                    cv = sym_eval(e["cos"], k_val, m_val)
                    sv = sym_eval(e["sin"], k_val, m_val)
                    lines.append(
                        f'    {{{vi}, "{key}", {ei}, {k_val!r}, {m_val!r}, '
                        f"{cv.real!r}, {cv.imag!r}, {sv.real!r}, {sv.imag!r}}},"
                    )
    lines.append("};")
    lines.append("")
    (ROOT / "tests" / "terms_golden.inc").write_text("\n".join(lines))


def main():
    tables_by_variant = {v: load(v) for v in ("corrected", "transcribed")}
    emit_tables(tables_by_variant)
    emit_golden(tables_by_variant)
    total = sum(len(t[k]) for t in tables_by_variant.values() for k in t)
    print(f"wrote terms_data.inc and terms_golden.inc ({total} entries)")


if __name__ == "__main__":
    main()
