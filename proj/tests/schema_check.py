"""Validate `tm parse --json` and `tm simulate` output against the schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema

tm, corpus, schemas = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
model_schema = json.loads((schemas / "tm-model.schema.json").read_text())
trace_schema = json.loads((schemas / "tm-trace.schema.json").read_text())

units = [["davidson.tm"], ["mud.tm"], ["ships.tm"], ["caesar_event.tm"], ["caesar_fact.tm"],
         ["atm_simplified.tm"], ["atm_full.tm", "atm_events.tm"]]
for unit in units:
    files = [str(corpus / f) for f in unit]
    doc = json.loads(subprocess.run([tm, "parse", "--json", *files], check=True,
                                    capture_output=True, text=True).stdout)
    jsonschema.validate(doc, model_schema)
    print("model ok:", " ".join(unit))

files = [str(corpus / "atm_full.tm"), str(corpus / "atm_events.tm")]
trace = json.loads(subprocess.run([tm, "simulate", *files], check=True,
                                  capture_output=True, text=True).stdout)
jsonschema.validate(trace, trace_schema)
print("trace ok")
