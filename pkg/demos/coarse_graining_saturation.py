"""Coarse-graining radius scan: partial averaging saturates toward uniform.

Widens the distance weight of the weighted spatial frame on a
transverse-field Ising chain at fixed N and watches S(M_R rho'|rho) fall
from the unaveraged production toward the uniform-frame floor.
"""
import json
from pathlib import Path

from frameavg import config_from_mapping, convergence_sweep, load_config, saturation_scan

CONFIG = Path(__file__).parent / "configs" / "saturate_tfi.json"


def main():
    cfg = load_config(str(CONFIG))
    rows = saturation_scan(cfg)

    # uniform-frame floor for the same chain and kick
    base = json.loads(CONFIG.read_text())
    base["averaging"] = [{"kind": "uniform-spatial"}]
    floor = convergence_sweep(config_from_mapping(base))[0].rel_ent_avg

    print(f"chain N = {rows[0].n}, beta = {rows[0].beta}, uniform floor {floor:.10f}")
    print(f"{'R':>8} {'S(M_R rho_p|rho)':>18} {'excess over floor':>18}")
    for r in rows:
        print(f"{r.avg_param:>8.2f} {r.rel_ent_avg:>18.10f} {r.rel_ent_avg - floor:>18.3e}")
    print()
    print("the excess shrinks monotonically: widening the window only discards")
    print("more frame information, and in the wide limit the two frames agree")


if __name__ == "__main__":
    main()
