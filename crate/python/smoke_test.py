#!/usr/bin/env python3
"""Smoke test for the qsym extension module.

Builds the cdylib with cargo, makes it importable, and exercises the main
entry points at n = 4.
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_module() -> Path:
    subprocess.run(["cargo", "build", "-p", "qsym-py"], cwd=ROOT, check=True)
    lib_dir = ROOT / "target" / "debug"
    for name in ("libqsym.so", "libqsym.dylib", "qsym.dll"):
        built = lib_dir / name
        if built.exists():
            break
    else:
        sys.exit("built extension library not found under target/debug")
    stage = Path(tempfile.mkdtemp(prefix="qsym-py-"))
    suffix = ".pyd" if built.suffix == ".dll" else ".so"
    shutil.copy2(built, stage / f"qsym{suffix}")
    return stage


def main() -> None:
    sys.path.insert(0, str(build_module()))
    import qsym

    # parsing and arithmetic
    p = qsym.Polynomial("u[2,2]*u[3,3] - 1", 4)
    q = qsym.Polynomial("1", 4)
    assert (p + q).__str__() == "u[2,2]*u[3,3]"
    assert (-p).n == 4
    assert qsym.Polynomial("u[1,2]", 4).transpose() == qsym.Polynomial("u[2,1]", 4)

    # relation families and named sets
    ip22 = qsym.make_relation("ip", [2, 2], 4)
    assert str(ip22) == "u[2,2]*u[2,2] - u[2,2]"
    g4 = qsym.named_set("G", 4)
    assert len(g4) == 78

    # normal forms: idempotent relation reduces, so u22^2 -> u22
    sq = qsym.Polynomial("u[2,2]*u[2,2]", 4)
    assert qsym.normal_form(sq) == qsym.Polynomial("u[2,2]", 4)

    # the word problem: generators do not commute modulo the ideal
    a = qsym.Polynomial("u[2,2]*u[3,3]", 4)
    b = qsym.Polynomial("u[3,3]*u[2,2]", 4)
    equivalent, lhs_nf, rhs_nf = qsym.word_problem(a, b)
    assert not equivalent
    assert lhs_nf != rhs_nf

    # but u22*u33 equals its own G-normal form rewritten either way
    equivalent, _, _ = qsym.word_problem(sq, qsym.Polynomial("u[2,2]", 4))
    assert equivalent

    # the Gröbner property of G4
    assert qsym.is_groebner("G", 4)
    assert not qsym.is_groebner("B", 4)

    print("smoke test passed")


if __name__ == "__main__":
    main()
