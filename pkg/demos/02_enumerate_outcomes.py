# Enumerating every final state of classic shapes

import litmuskit as lk
from importlib import resources

corpus = resources.files("litmuskit") / "data" / "litmus"

def load(name):
    return lk.parse_litmus((corpus / f"{name}.litmus").read_text())

# In[1]:

# Store buffering: TSO adds exactly the outcome where both loads see 0.
sb = load("SB")
for mcm in lk.MemoryModel:
    outcomes = lk.reachable_final_states(sb.config, sb.program, mcm)
    print(mcm.value, lk.count_executions(sb.config, sb.program, mcm), "executions,", len(outcomes), "outcomes")
    for state in outcomes:
        print("   ", lk.format_state(state, sb.variable_names))

# In[2]:

# IRIW has no store followed by a load on one core, so TSO changes nothing.
iriw = load("IRIW")
sc = lk.reachable_final_states(iriw.config, iriw.program, lk.MemoryModel.SC)
tso = lk.reachable_final_states(iriw.config, iriw.program, lk.MemoryModel.TSO)
print("IRIW:", len(sc), "outcomes, identical:", sc == tso)

# In[3]:

three = load("3.SB")
for mcm in lk.MemoryModel:
    print("3.SB", mcm.value, lk.count_stats(three.config, three.program, mcm))
