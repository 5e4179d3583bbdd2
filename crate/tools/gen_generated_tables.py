#!/usr/bin/env python3
"""Regenerate the machine-derived default rule tables.

    pip install unicodedata2==17.0.1 pypinyin==0.55.0
    python3 tools/gen_generated_tables.py

Writes crates/core/tables/ethiopic.rules and crates/core/tables/han.rules.
"""
import os
import re

import unicodedata2 as ud
from pypinyin import Style, lazy_pinyin

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tables")


def ethiopic() -> list[str]:
    lines = [
        "# Ethiopic syllables, from the final word of each Unicode name",
        "# (ETHIOPIC SYLLABLE HA -> ha). Unicode " + ud.unidata_version + ".",
    ]
    blocks = [(0x1200, 0x135A), (0x1380, 0x138F), (0x2D80, 0x2DDE), (0xAB01, 0xAB2E), (0x1E7E0, 0x1E7FE)]
    for lo, hi in blocks:
        lines.append("")
        lines.append(f"# U+{lo:04X}..U+{hi:04X}")
        for cp in range(lo, hi + 1):
            name = ud.name(chr(cp), "")
            if "SYLLABLE" not in name:
                continue
            token = name.split(" ")[-1].lower()
            if not re.fullmatch(r"[a-z]+", token):
                continue
            lines.append(f"{chr(cp)}\t{token}")
    lines.append("")
    lines.append("# Punctuation")
    for cp, target in [(0x1361, " "), (0x1362, "."), (0x1363, ","), (0x1364, ";"), (0x1365, ":"), (0x1366, ":"), (0x1367, "?"), (0x1368, ".")]:
        lines.append(f"{chr(cp)}\t{target}")
    return lines


def han() -> list[str]:
    lines = [
        "# Han pinyin-lite: the 3755 level-1 hanzi of GB 2312, first reading,",
        "# toneless, u-umlaut written as v (pypinyin 0.55.0). Other ideographs fall",
        "# through to the fallback chain and are dropped.",
        "",
    ]
    for hi in range(0xB0, 0xD8):
        for lo in range(0xA1, 0xFF):
            if hi == 0xD7 and lo > 0xF9:
                break
            ch = bytes([hi, lo]).decode("gb2312")
            reading = lazy_pinyin(ch, style=Style.NORMAL, v_to_u=False)[0]
            if not re.fullmatch(r"[a-z]+", reading):
                raise SystemExit(f"unexpected reading {reading!r} for {ch}")
            lines.append(f"{ch}\t{reading}")
    return lines


def main() -> None:
    for name, lines in [("ethiopic.rules", ethiopic()), ("han.rules", han())]:
        with open(os.path.join(OUT, name), "w", encoding="utf-8") as f:
            f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
