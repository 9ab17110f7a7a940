# Simulating a single litmus test
#
# SB000a has both cores store to x and then read it back into EAX.
# We ask whether a final state is reachable and replay the witness step by step.

import litmuskit as lk

# In[1]:

config = lk.LitmusConfig(n_cores=2, n_registers=1, n_variables=1, n_values=3, max_ops_per_core=2)
program = lk.Program([
    [lk.Store(0, 1), lk.Load(0, 0)],
    [lk.Store(0, 2), lk.Load(0, 0)],
])
target = lk.FinalStateSpec({(0, 0): 1, (1, 0): 2}, {0: 2})

# In[2]:

# Both models reach it; the witness is the first matching execution in search order.
for mcm in lk.MemoryModel:
    witness = lk.check_allowed(config, program, mcm, target)
    print(mcm.value, [str(e) for e in witness])

# In[3]:

# Replay keeps every intermediate state, so we can watch x and the registers change.
trace = lk.replay(config, program, witness)
for event, state in zip(witness, trace.states[1:]):
    print(f"{event}  x={state.variable(0)}  P0:EAX={state.register(0, 0)}  P1:EAX={state.register(1, 0)}")

# In[4]:

# Both cores reading 1 while x ends at 2 needs P1's load to pass its own store.
# Only TSO lets a store sit behind a later load.
odd = lk.FinalStateSpec({(0, 0): 1, (1, 0): 1}, {0: 2})
print("SC :", lk.check_allowed(config, program, lk.MemoryModel.SC, odd))
print("TSO:", [str(e) for e in lk.check_allowed(config, program, lk.MemoryModel.TSO, odd)])

# Replay itself ignores the model; validity is a separate question with a reason attached.
order = [(0, 2), (0, 1), (1, 1), (1, 2)]
print("SC :", lk.violation(lk.MemoryModel.SC, program, order))
print("TSO:", lk.violation(lk.MemoryModel.TSO, program, order))
