"""Data files and the command-line surface.

Modules, intertwiner tables and vertex tables serialize to canonical JSON
("logcalc/1"); loading and re-saving a canonical file is byte-identical.
The CLI verbs are thin shells over the library.

Run:  python demos/05_files_and_cli.py
"""

import subprocess
import sys
import tempfile
from pathlib import Path

from logcalc.catalog import jordan_module, trivial_module
from logcalc.checks import jordan_fixture_tables
from logcalc.jsonio import dump_object, load_text

workdir = Path(tempfile.mkdtemp(prefix="logcalc-demo-"))

print("== canonical byte round trips ==")
table = jordan_fixture_tables()[1]
path = workdir / "table.json"
path.write_text(dump_object(table))
reloaded = load_text(path.read_text())
print("load -> save is byte-identical:", dump_object(reloaded) == path.read_text())
print("file:", path)

print()
print("== CLI: derive the argument swap twice and recover the input ==")
once = subprocess.run(
    [sys.executable, "-m", "logcalc.cli", "derive", "omega", "--r", "0", str(path)],
    capture_output=True, text=True, check=True,
).stdout
twice = subprocess.run(
    [sys.executable, "-m", "logcalc.cli", "derive", "omega", "--r", "-1", "-"],
    input=once, capture_output=True, text=True, check=True,
).stdout
print("pipeline restores the file:", twice == path.read_text())

print()
print("== CLI: solve for a fusion-space basis from module files ==")
for name, mod in (("W1", trivial_module("W1")), ("W2", trivial_module("W2")),
                  ("W3", jordan_module("W3", 0, size=2))):
    (workdir / f"{name}.json").write_text(dump_object(mod))
out = subprocess.run(
    [sys.executable, "-m", "logcalc.cli", "solve", "fusion", "--modules",
     str(workdir / "W1.json"), str(workdir / "W2.json"), str(workdir / "W3.json")],
    capture_output=True, text=True, check=True,
).stdout
print(out.strip())

print()
print("== CLI: a named check suite ==")
out = subprocess.run(
    [sys.executable, "-m", "logcalc.cli", "check", "comb", "--kmax", "6"],
    capture_output=True, text=True, check=True,
).stdout
print(out.splitlines()[0])
print("(run `logcalc check all --seed 0` for the full verification sweep)")
