"""How fast extra secondary antennas close the gap to the peaceful bound.

More antennas buy degrees of freedom: the secondary can null the primary
receiver, cover the eavesdropper, and still serve its own user.  Against a
noise-treating eavesdropper the secrecy rate approaches the
no-eavesdropper bound within a handful of antennas; a joint decoder slows
that convergence.  Run: python demos/antenna_sweep.py
"""

from leasesec import SweepConfig, run_sweep

cfg = SweepConfig(
    decoder="BOTH",
    snr_db_list=(20.0,),
    nt_list=(2, 3, 4, 6, 8, 10),
    alpha_list=(0.5,),
    trials=150,
    master_seed=23,
)
print("running", cfg.trials, "paired trials per antenna count ...\n")
rows = run_sweep(cfg, workers=2)

peaceful = max(r.mean_peaceful_bits for r in rows)
print(f"no-eavesdropper bound: {peaceful:.3f} bits "
      "(identical channels across antenna counts)\n")
print(f"{'antennas':>8} {'secrecy SD':>11} {'secrecy JD':>11} "
      f"{'SD gap to bound':>16}")
sd = {r.nt: r for r in rows if r.decoder == "SD"}
jd = {r.nt: r for r in rows if r.decoder == "JD"}
for nt in cfg.nt_list:
    gap = sd[nt].mean_peaceful_bits - sd[nt].mean_secrecy_bits
    print(f"{nt:>8} {sd[nt].mean_secrecy_bits:>11.3f} "
          f"{jd[nt].mean_secrecy_bits:>11.3f} {gap:>16.3f}")
