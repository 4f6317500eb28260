"""Closed-form memory requirements across recording lengths.

For audio features at ~43 frames per second, the full DP table of two
hour-long recordings runs to hundreds of gigabytes, while the linear-memory
engine needs a few megabytes. These figures are closed-form, so the whole
sweep is instantaneous.
"""

from lmdtw import format_bytes, memory_estimate

FPS = 43.0664
DURATIONS = [(60, "1 min"), (300, "5 min"), (1800, "30 min"),
             (3600, "1 hour"), (9000, "2.5 hours")]

print(f"{'duration':>10s} {'frames':>8s} {'textbook':>22s} "
      f"{'fastdtw d=30':>22s} {'linear-memory':>22s}")
for seconds, label in DURATIONS:
    n = round(seconds * FPS)
    table = memory_estimate("textbook", n, n)
    band = memory_estimate("fastdtw", n, n, delta=30)
    diag = memory_estimate("linmdtw", n, n)
    print(f"{label:>10s} {n:8,d} {format_bytes(table.bytes):>22s} "
          f"{format_bytes(band.bytes):>22s} {format_bytes(diag.bytes):>22s}")

print("\nbudgeted multiscale alignment is constant regardless of length:")
for budget in (10 ** 5, 10 ** 7):
    est = memory_estimate("mrmsdtw", 1, 1, budget=budget)
    print(f"  budget {budget:.0e} cells -> {format_bytes(est.bytes)}")

print("\nthe same numbers are available from the command line:")
print("  lmdtw memreport --m-seconds 3600 --n-seconds 3600")
