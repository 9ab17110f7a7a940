# Cross-checking the search against brute force
#
# The oracle permutes all events and filters by the ordering predicate.
# It is slow but hard to get wrong, so the frontier search should agree with it exactly.

import math
import random

import litmuskit as lk

config = lk.LitmusConfig(n_cores=2, n_registers=2, n_variables=2, n_values=2, max_ops_per_core=3)
seqs = lk.core_sequences(config)
rng = random.Random(7)

# In[1]:

checked = 0
for _ in range(300):
    program = lk.Program([rng.choice(seqs), rng.choice(seqs)])
    for mcm in lk.MemoryModel:
        fast = set(lk.enumerate_executions(config, program, mcm))
        assert fast == lk.oracle_executions(config, program, mcm)
        checked += 1
print("agreed on", checked, "program/model pairs")

# In[2]:

# Under SC every core keeps its order, so executions are interleavings.
program = lk.Program([rng.choice(seqs), rng.choice(seqs)])
n = program.lengths()
print(lk.count_executions(config, program, lk.MemoryModel.SC),
      math.factorial(sum(n)) // math.prod(math.factorial(k) for k in n))

# In[3]:

# The oracle refuses programs too large to permute.
big = lk.LitmusConfig(n_cores=2, n_registers=1, n_variables=1, n_values=1, max_ops_per_core=5)
try:
    lk.oracle_executions(big, lk.Program([[lk.Load(0, 0)] * 5] * 2), lk.MemoryModel.SC)
except lk.OracleRefusal as err:
    print(err)
