"""The ghzsep command line, driven from Python.

Equivalent shell session:

    ghzsep gen ghz-noisy --dims 2,2 --p 0.4 --out noisy.dmx
    ghzsep classify noisy.dmx --oracle
    ghzsep ppt noisy.dmx --partition "1|2"
    ghzsep witness noisy.dmx --k 2 --selection "0,1;0,1"
    ghzsep durcheck --n 3 --coeffs 0.3,0.1,0.1,0.1,0.1
"""
import os
import tempfile

from ghzsep.cli import main

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "noisy.dmx")
    for argv in (
        ["gen", "ghz-noisy", "--dims", "2,2", "--p", "0.4", "--out", path],
        ["classify", path, "--oracle"],
        ["ppt", path, "--partition", "1|2"],
        ["witness", path, "--k", "2", "--selection", "0,1;0,1"],
        ["durcheck", "--n", "3", "--coeffs", "0.3,0.1,0.1,0.1,0.1"],
    ):
        print("$ ghzsep " + " ".join(argv))
        code = main(argv)
        print(f"(exit {code})\n")
    print(open(path).read())
