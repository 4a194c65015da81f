"""Compare two instance-selection methods on 50 paired accuracies.

Runs the sign test and the Wilcoxon signed-ranks test on the bundled
DROP3 versus CHC data and prints both reports.
"""

from npst import format_report, read_table, sign_test, wilcoxon_signed_ranks
from npst.cli import bundled_datasets

table = read_table(bundled_datasets()["drop3_vs_chc.xml"])
print(f"{table.rows} paired results\n")

for test in (sign_test, wilcoxon_signed_ranks):
    print(format_report(test(table)))
