# Maxwell-Boltzmann composition design across list-encoding depths.
#
# For a fixed blocklength and shaping rate, each extra flipping bit v
# raises the codebook entropy target by 1/n and shifts the matched
# composition slightly.  The list rate loss grows by exactly v/n on top
# of the plain matching loss.

from paslab.design import shaping_design

for n, rs in ((1800, 2.4), (180, 1.85)):
    print(f"n = {n}, shaping rate {rs} bit/amplitude")
    print("  v    k    lambda     H_design   rate_loss  list_loss  counts")
    for v in range(5):
        d = shaping_design(n, rs, v)
        counts = " ".join(f"{c:3d}" for c in d.composition.counts)
        print(
            f"  {v}  {d.k:4d}  {d.lam:.6f}  {d.design_entropy:.6f}  "
            f"{d.rate_loss:.6f}   {d.list_rate_loss:.6f}  {counts}"
        )
    print()

d = shaping_design(1800, 2.4, 4)
print(f"unit-energy QAM scale at n=1800, v=4: {d.qam_scale():.8f}")
