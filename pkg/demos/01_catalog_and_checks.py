"""Build the four known families and run every consistency check on them.

Then break V_5 in two ways and watch which checks object.
"""

from hamsix import catalog
from hamsix.checks import verify_all
from hamsix.core import FixedPoint, FixedPointData, IsotropyEdge, weights_of

for name, data in [("CP^3 (1,2,3)", catalog.make_cp3(1, 2, 3)),
                   ("Grassmannian (1,2)", catalog.make_grass(1, 2)),
                   ("V_5", catalog.make_v5()),
                   ("V_22", catalog.make_v22())]:
    print(f"{name}: moments {data.moments}")
    for p in data.points:
        print(f"  P{p.id}: weights {sorted(weights_of(data, p.id))}")
    report = verify_all(data)
    print(f"  overall {'pass' if report.overall else 'FAIL'}, k = {report['c1_constant'].witness['k']}")

# Doubling every weight and moment keeps c1 consistent but the action is no
# longer effective.
v5 = catalog.make_v5()
doubled = FixedPointData(3, tuple(FixedPoint(p.id, 2 * p.moment) for p in v5.points),
                         tuple(IsotropyEdge(e.lower, e.upper, 2 * e.weight) for e in v5.edges))
report = verify_all(doubled)
print("\ndoubled V_5 fails:", [c.name for c in report.checks if not c.passed])

# CP^3 with gaps (2,2,2) is CP^3 (1,1,1) run at double speed.
print("CP^3 (2,2,2) witness:", verify_all(catalog.make_cp3(2, 2, 2))["effectiveness"].witness)
