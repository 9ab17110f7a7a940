# Which generated tests tell SC and TSO apart?

from importlib import resources

import litmuskit as lk

params = resources.files("litmuskit") / "data" / "params"
gen = lk.parse_param((params / "scenario1.json").read_text())

programs = lk.generate(gen).accepted          # the TSO-accepted set
report = lk.compare_models(gen.config, programs, lk.MemoryModel.SC, lk.MemoryModel.TSO, gen.final_spec)
print("both:", len(report.both), " TSO only:", len(report.relaxed_only), " neither:", len(report.neither))

# In[1]:

# Every TSO-only test needs a store overtaken by a later load of the same core.
for program in report.relaxed_only[:3]:
    test = lk.test_from_program(gen, program)
    witness = report.witnesses[lk.MemoryModel.TSO, program]
    final = lk.replay(gen.config, program, witness).final
    print("\n".join(lk.format_execution(test, witness, final)))
    print()

# In[2]:

# Swapping the pair is refused: TSO is not stricter than SC.
try:
    lk.compare_models(gen.config, programs, lk.MemoryModel.TSO, lk.MemoryModel.SC, gen.final_spec)
except lk.ConfigError as err:
    print("refused:", err)
