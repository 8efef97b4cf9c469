"""Where has the kick been felt?  Commutator footprint against distance."""
from frameavg import config_from_mapping, locality_probe

CFG = {
    "model": {"name": "heisenberg-xxz", "couplings": {"J": 1.0, "delta": 0.5}},
    "sizes": [8],
    "beta": 1.0,
    "kick": {"site": 0, "generator": "X", "strength": 0.7},
    "averaging": [{"kind": "uniform-spatial"}],
    "seed": 2,
}


def main():
    cfg = config_from_mapping(CFG)
    for t in (0.0, 0.1, 0.4, 1.2):
        rows = locality_probe(cfg, t, probe="Z")
        print(f"t = {t}")
        print(f"  {'site':>4} {'dist':>4} {'|[U, Z_s(t)]|':>14} {'|[u_beta, Z_s(t)]|':>19}")
        for row in rows:
            print(
                f"  {row.site:>4} {row.distance:>4} "
                f"{row.kick_commutator:>14.6f} {row.conjugated_commutator:>19.6f}"
            )
        print()
    print("at t = 0 only the kicked site answers; as the probe evolves its support")
    print("spreads and the profile flattens, folded by the periodic distance; the")
    print("beta-conjugated kick u_beta is already delocalized before any evolution")


if __name__ == "__main__":
    main()
