# Generating every test that reaches a final state
#
# A parameter file fixes the program universe and the target registers.
# Generation keeps each program with a valid execution ending in that state.

import dataclasses
import time
from importlib import resources

import litmuskit as lk

params = resources.files("litmuskit") / "data" / "params"
gen = lk.parse_param((params / "scenario1.json").read_text())
print(lk.emit_param(gen))

# In[1]:

for mcm in (lk.MemoryModel.TSO, lk.MemoryModel.SC):
    report = lk.generate(dataclasses.replace(gen, mcm=mcm))
    print(mcm.value, "examined", report.examined, "accepted", len(report.accepted))

# In[2]:

# The two program-space switches change the counts a lot.
for distinct in (True, False):
    for exclude in (False, True):
        g = dataclasses.replace(gen, distinct_ops_per_core=distinct, values_exclude_initial=exclude)
        tso = len(lk.generate(dataclasses.replace(g, mcm=lk.MemoryModel.TSO)).accepted)
        sc = len(lk.generate(dataclasses.replace(g, mcm=lk.MemoryModel.SC)).accepted)
        print(f"distinct={distinct!s:5} exclude-initial={exclude!s:5}  TSO {tso:4}  SC {sc:4}")

# In[3]:

# One accepted program, written out as a litmus file.
first = lk.generate(gen).accepted[0]
print(lk.emit_litmus(lk.test_from_program(gen, first)))

# In[4]:

# The larger scenario takes a few seconds per model.
big = lk.parse_param((params / "scenario2.json").read_text())
start = time.perf_counter()
print("scenario2 TSO:", len(lk.generate(big).accepted), f"({time.perf_counter() - start:.1f} s)")
