import pprint

from tfkit import SignalSpec, generate, make_kernel, uncertainty_report
from tfkit.io import dump_json

if __name__ == "__main__":
    pp = pprint.PrettyPrinter(indent=4)
    chirp = generate(
        SignalSpec(
            kind="lfm_chirp",
            n=1024,
            sample_rate=32,
            parameters={"width": 1.0, "rate": 2.0},
        )
    )

    report = uncertainty_report(chirp, make_kernel("born_jordan"))
    print("Heisenberg ratio:")
    pp.pprint(report.heisenberg.ratio)
    print("\nSpread check:")
    pp.pprint(report.relation1)
    print("\nAs JSON:")
    print(dump_json(report))
