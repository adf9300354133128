"""Runs the command-line tool over the bundled corpus and validates every JSON
output (and every trace line) against the schemas in docs/schemas."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

binary, root = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = {}
for f in (root / "docs" / "schemas").glob("*.schema.json"):
    doc = json.loads(f.read_text())
    jsonschema.Draft202012Validator.check_schema(doc)
    schemas[f.name.removesuffix(".schema.json")] = doc
registry = Registry().with_resources(
    (doc["$id"], Resource.from_contents(doc)) for doc in schemas.values())


def validate(kind, instance, what):
    validator = jsonschema.Draft202012Validator(schemas[kind], registry=registry)
    errors = sorted(validator.iter_errors(instance), key=lambda e: list(e.path))
    if errors:
        print(f"FAIL {what}: {errors[0].message} at {list(errors[0].path)}")
        return 1
    print(f"ok   {what}")
    return 0


def run(args, expect):
    proc = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True)
    if proc.returncode != expect:
        raise SystemExit(f"{args}: exit {proc.returncode}, expected {expect}\n{proc.stderr}")
    return json.loads(proc.stdout)


c = root / "corpus"
phone = [str(c / "phone" / f) for f in ("phone.uml", "caller.stm", "exchange.stm", "receiver.stm", "phone.snap")]
pingpong = [str(p) for p in sorted((c / "pingpong").iterdir())]
warehouse = str(c / "warehouse" / "warehouse.uml")
failures = 0

failures += validate("parse", run(["parse", *phone, str(c / "phone" / "call.seq")], 0), "parse phone")
failures += validate("check-report", run(["check", *phone, str(c / "phone" / "call.seq")], 0), "check phone")
failures += validate("check-report", run(["check", *phone, str(c / "phone" / "swapped.seq")], 1), "check swapped")
failures += validate("check-report", run(["check", warehouse, str(c / "warehouse" / "mutants" / "sharing.snap")], 1),
                     "check sharing")
failures += validate("check-report", run(["check", *phone, "--refine",
                                          f"{c / 'phone' / 'caller.stm'}:{c / 'phone' / 'caller.stm'}"], 0),
                     "check refine")
failures += validate("conformance-report", run(["conform", *phone, str(c / "phone" / "call.seq")], 0), "conform call")
failures += validate("conformance-report", run(["conform", *phone, str(c / "phone" / "swapped.seq")], 1),
                     "conform swapped")
failures += validate("refinement", run(["refine", str(c / "phone" / "caller.stm"), str(c / "phone" / "caller.stm"),
                                        str(c / "phone" / "phone.uml")], 0), "refine reflexive")
failures += validate("refinement", run(["refine", str(c / "phone" / "receiver.stm"), str(c / "phone" / "receiver.stm"),
                                        str(c / "phone" / "phone.uml"), "--unhandled", "chaos"], 0),
                     "refine chaos")

with tempfile.TemporaryDirectory() as tmp:
    for name, files in (("pingpong", pingpong), ("phone", phone)):
        out = pathlib.Path(tmp) / f"{name}.jsonl"
        failures += validate("simulation", run(["simulate", *files, "--horizon", "12", "--out", str(out)], 0),
                             f"simulate {name}")
        for n, line in enumerate(out.read_text().splitlines()):
            failures += validate("trace-record", json.loads(line), f"{name} trace line {n + 1}")

print(f"{failures} schema failure(s)")
sys.exit(1 if failures else 0)
