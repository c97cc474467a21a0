"""Print the minimal-level table k0 for all simple types of rank <= 8,
together with the center of the simply connected group."""

from gerbecalc.grpcoh import center_of
from gerbecalc.rootsys import build_root_system, minimal_level_k0


def main():
    types = (
        [("A", r) for r in range(1, 9)]
        + [("B", r) for r in range(2, 9)]
        + [("C", r) for r in range(2, 9)]
        + [("D", r) for r in range(3, 9)]
        + [("E", r) for r in (6, 7, 8)]
        + [("F", 4), ("G", 2)]
    )
    print(f"{'type':>6} {'k0':>4}  center")
    for fam, rank in types:
        k0 = minimal_level_k0(build_root_system(fam, rank))
        print(f"{fam}{rank:>2}".rjust(6), f"{k0:>4} ", center_of(fam, rank).describe())


if __name__ == "__main__":
    main()
