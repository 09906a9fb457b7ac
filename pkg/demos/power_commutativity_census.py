"""Which small semigroups have commuting squares and cubes?

Walks the census of semigroups up to order 4, splits the ones whose squares
and cubes commute into commutative and non-commutative, and shows that the
non-commutative ones all fall outside the separative and completely regular
classes.
"""
from collections import Counter

from semicomm import CayleyTable, census, check_basic, check_regularity, powers_commute
from semicomm.table import format_sg

tally = Counter()
example = None
for n in range(1, 5):
    for t in census.all_tables(n):
        S = CayleyTable(t)
        if not (powers_commute(S, 2) and powers_commute(S, 3)):
            continue
        basic = check_basic(S)
        in_class = basic.separative or check_regularity(S).completely_regular
        tally[(in_class, basic.commutative)] += 1
        if not basic.commutative and example is None:
            example = S

print("tables with commuting squares and cubes, order <= 4")
for (in_class, comm), count in sorted(tally.items()):
    kind = "separative or completely regular" if in_class else "neither"
    print(f"  {kind:34s} commutative={comm!s:5s} {count:5d}")

print("\nsmallest non-commutative one (it is neither):")
print(format_sg(example))
