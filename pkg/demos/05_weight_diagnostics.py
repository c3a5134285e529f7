"""
Weight-array diagnostics at scale n
===================================

At x = 1 - q^n the normalized series has weights a_{n,k}^2 summing to one.
Several tail inequalities control how those weights spread out as n grows;
this prints the per-n check table and the empirical onset scale n0.
"""

from taylorzeros import CoefficientSequence, check_weight_inequalities

seq = CoefficientSequence(1.0)
report = check_weight_inequalities(seq, q=0.5, n_range=range(1, 13))

print("gamma=1, q=0.5:")
print(report.format_table())
print()
print(f"largest-weight bound b0^2 <= q^(n/2) holds from n0 = "
      f"{report.n0_largest_weight()}")
print(f"tail corridor holds from n0 = {report.n0_corridor()}")
print(f"exact invariants (normalization, F <= Ftilde): "
      f"{report.exact_invariants_hold()}")

# the rearranged tail F can only sharpen the natural tail Ftilde; the
# envelope constant C_hat shrinking with n is the boundedness being checked
print()
print("C_hat by n:", ["%.3g" % c for _, c in report.chat_values()])

# a steeper family: gamma = 2 starts satisfying everything immediately
report2 = check_weight_inequalities(CoefficientSequence(2.0), 0.5, range(1, 9))
print()
print("gamma=2, q=0.5:")
print(report2.format_table())
