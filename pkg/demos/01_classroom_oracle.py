"""Three decision rules on one complete outcome table.

Eight students, three classes (A, B, C), and every student's score under
every class. With the full table in hand, no estimation is needed: ranking
probabilities and best-class probabilities are plain row counts. The point of
the demo is that the three rules disagree on the same data.
"""

import numpy as np

from porpob import PoMatrix, all_rankings, exact_pob, exact_por

scores = np.array(
    [
        [30, 40, 50],
        [40, 50, 60],
        [50, 60, 70],
        [30, 50, 40],
        [40, 60, 50],
        [60, 70, 40],
        [50, 60, 40],
        [100, 5, 0],
    ],
    dtype=float,
)
labels = ("A", "B", "C")
matrix = PoMatrix(scores)

print("Average score per class (the mean-based rule):")
for j, label in enumerate(labels):
    print(f"  E[score | {label}] = {scores[:, j].mean():.3f}")
print("  -> class A wins on averages.\n")

print("Probability of each complete ranking (first = best):")
best_order, best_p = None, -1.0
for order in all_rankings(3):
    p = exact_por(matrix, order).value
    pretty = " > ".join(labels[a - 1] for a in order)
    print(f"  P({pretty}) = {p:.3f}")
    if p > best_p:
        best_order, best_p = order, p
pretty = " > ".join(labels[a - 1] for a in best_order)
print(f"  -> the single most probable ordering is {pretty} ({best_p:.1%}).\n")

print("Probability that each class is a student's best option:")
for a, label in enumerate(labels, start=1):
    print(f"  P({label} is best) = {exact_pob(matrix, a).value:.3f}")
print("  -> class B maximizes the chance of the top outcome (50%),")
print("     even though A has the best average and C heads the most")
print("     probable complete ordering. Three rules, three answers.")
