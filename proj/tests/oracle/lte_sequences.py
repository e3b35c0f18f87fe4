#!/usr/bin/env python3
"""Stand-alone reference for the LTE synchronization and reference sequences.

Written directly from the 3GPP TS 36.211 construction (PSS 6.11.1, SSS 6.11.2,
CRS 6.10.1 / pseudo-random sequence 7.2) without sharing any code with the C++
library. Running it regenerates tests/frozen_sequences.hpp.
"""
import cmath
import math
import pathlib


def pss(n_id2):
    u = (25, 29, 34)[n_id2]
    out = []
    for n in range(62):
        if n <= 30:
            out.append(cmath.exp(-1j * math.pi * u * n * (n + 1) / 63))
        else:
            out.append(cmath.exp(-1j * math.pi * u * (n + 1) * (n + 2) / 63))
    return out


def _mseq(taps):
    # x(i+5) = sum of x(i+t) for t in taps, x(0..4) = 0,0,0,0,1
    x = [0, 0, 0, 0, 1]
    while len(x) < 31:
        i = len(x) - 5
        x.append(sum(x[i + t] for t in taps) % 2)
    return [1 - 2 * v for v in x]


def sss(n_id1, n_id2, subframe):
    s_t = _mseq((2, 0))
    c_t = _mseq((3, 0))
    z_t = _mseq((4, 2, 1, 0))
    qp = n_id1 // 30
    q = (n_id1 + qp * (qp + 1) // 2) // 30
    mp = n_id1 + q * (q + 1) // 2
    m0 = mp % 31
    m1 = (m0 + mp // 31 + 1) % 31
    s0 = [s_t[(n + m0) % 31] for n in range(31)]
    s1 = [s_t[(n + m1) % 31] for n in range(31)]
    c0 = [c_t[(n + n_id2) % 31] for n in range(31)]
    c1 = [c_t[(n + n_id2 + 3) % 31] for n in range(31)]
    z1m0 = [z_t[(n + (m0 % 8)) % 31] for n in range(31)]
    z1m1 = [z_t[(n + (m1 % 8)) % 31] for n in range(31)]
    d = [0] * 62
    for n in range(31):
        if subframe == 0:
            d[2 * n] = s0[n] * c0[n]
            d[2 * n + 1] = s1[n] * c1[n] * z1m0[n]
        else:
            d[2 * n] = s1[n] * c0[n]
            d[2 * n + 1] = s0[n] * c1[n] * z1m1[n]
    return d


def gold(c_init, length):
    nc = 1600
    total = nc + length + 31
    x1 = [0] * total
    x2 = [0] * total
    x1[0] = 1
    for i in range(31):
        x2[i] = (c_init >> i) & 1
    for n in range(total - 31):
        x1[n + 31] = (x1[n + 3] + x1[n]) % 2
        x2[n + 31] = (x2[n + 3] + x2[n + 2] + x2[n + 1] + x2[n]) % 2
    return [(x1[n + nc] + x2[n + nc]) % 2 for n in range(length)]


def crs(pci, ns, l, n_rb=6, n_rb_max=110):
    c_init = 1024 * (7 * (ns + 1) + l + 1) * (2 * pci + 1) + 2 * pci + 1
    c = gold(c_init, 4 * n_rb_max)
    r = [complex(1 - 2 * c[2 * m], 1 - 2 * c[2 * m + 1]) / math.sqrt(2)
         for m in range(2 * n_rb_max)]
    v = 0 if l == 0 else 3
    shift = pci % 6
    out = []
    for m in range(2 * n_rb):
        k = 6 * m + (v + shift) % 6
        out.append((k, r[m + n_rb_max - n_rb]))
    return out


def _cx(z):
    return "{%.17g, %.17g}" % (z.real, z.imag)


def main():
    lines = [
        "// Generated by tests/oracle/lte_sequences.py. Do not edit.",
        "#pragma once",
        "",
        "#include <array>",
        "#include <complex>",
        "",
        "namespace frozen {",
        "",
    ]
    p = pss(0)
    lines.append("inline const std::array<std::complex<double>, 62> kPssRoot25 = {{")
    lines += ["    " + _cx(z) + "," for z in p]
    lines.append("}};")
    lines.append("")
    for (n1, n2, sf) in ((0, 0, 0), (0, 0, 5), (12, 1, 0), (167, 2, 5)):
        d = sss(n1, n2, sf)
        lines.append("inline const std::array<int, 62> kSss_%d_%d_%d = {" % (n1, n2, sf))
        lines.append("    " + ", ".join(str(v) for v in d) + "};")
    lines.append("")
    pilots = crs(37, 0, 0)
    lines.append("// pci 37, slot 0, symbol 0, 6 resource blocks")
    lines.append("inline const std::array<int, 12> kCrs37Subcarriers = {" +
                 ", ".join(str(k) for k, _ in pilots) + "};")
    lines.append("inline const std::array<std::complex<double>, 12> kCrs37Values = {{")
    lines += ["    " + _cx(z) + "," for _, z in pilots]
    lines.append("}};")
    lines.append("")
    lines.append("}  // namespace frozen")
    out = pathlib.Path(__file__).resolve().parent.parent / "frozen_sequences.hpp"
    out.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
