#!/usr/bin/env python3
"""Regenerate crates/core/src/unicode/tables.rs.

Requires `unicodedata2` pinned to the same Unicode version as the
unicode-script / unicode-normalization / unicode_names2 crates used by the
core crate (currently 17.0.0).

    pip install unicodedata2==17.0.1
    python3 tools/gen_unicode_tables.py > crates/core/src/unicode/tables.rs
"""
import sys

import unicodedata2 as ud

EXPECTED = "17.0.0"


def main() -> None:
    if ud.unidata_version != EXPECTED:
        sys.exit(f"unicodedata2 reports {ud.unidata_version}, expected {EXPECTED}")

    zeros = []
    for cp in range(0x110000):
        ch = chr(cp)
        if ud.category(ch) != "Nd":
            continue
        value = ud.decimal(ch)
        if value == 0:
            zeros.append(cp)
        # Every Nd codepoint sits inside a contiguous 0..9 run.
        assert zeros and cp - zeros[-1] == value, hex(cp)

    major, minor, patch = (int(p) for p in EXPECTED.split("."))
    out = []
    out.append("// Generated by tools/gen_unicode_tables.py. Do not edit by hand.")
    out.append("")
    out.append(f"pub const UNICODE_VERSION: (u8, u8, u8) = ({major}, {minor}, {patch});")
    out.append("")
    out.append("/// First codepoint (value 0) of every run of General_Category=Nd codepoints.")
    out.append("/// Each run is exactly ten codepoints, 0 through 9.")
    out.append(f"pub const DECIMAL_DIGIT_ZEROS: [u32; {len(zeros)}] = [")
    for cp in zeros:
        out.append(f"    0x{cp:05X},")
    out.append("];")
    print("\n".join(out))


if __name__ == "__main__":
    main()
