"""Walk through the basilica self-mating.

The curve around both finite critical values lifts to itself by degree one,
so it is a Levy curve and its one-by-one transition matrix is [1].  The
equator of the same map lifts to itself by degree two and gives [1/2].
"""
from thurston_kit import (
    find_levy_cycles,
    get_entry,
    leading_eigenvalue_bounds,
    lift_curve,
    orbifold_signature,
    transition_matrix,
)


def show(name):
    entry = get_entry(name)
    P, G = entry.load(), entry.multicurve()
    print(f"== {name}: {entry.description}")
    print(f"degree {P.degree}, {P.n} marked points, orbifold Euler characteristic {orbifold_signature(P).chi_orb}")
    for c in G:
        print(f"curve {c}")
        for lift in lift_curve(P, c):
            print(f"  lift of degree {lift.degree}: {lift.kind}", lift.curve or "")
    M = transition_matrix(P, G)
    b = leading_eigenvalue_bounds(M)
    print(f"matrix {M}")
    print(f"leading eigenvalue in [{b.lower}, {b.upper}]: {b.decision}")
    levy = find_levy_cycles(P, G)
    print(f"Levy cycles: {[str(c) for c in levy.cycles] or 'none'}")
    print()


if __name__ == "__main__":
    show("basilica-selfmating")
    show("basilica-selfmating-equator")
