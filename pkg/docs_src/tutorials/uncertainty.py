from tfkit import SignalSpec, generate, wvd, covariance
from tfkit.moments import heisenberg_check, relation1_check, strong_uncertainty_check

if __name__ == "__main__":
    chirp = generate(
        SignalSpec(
            kind="lfm_chirp",
            n=1024,
            sample_rate=32,
            parameters={"width": 1.0, "rate": 2.0},
        )
    )

    print(heisenberg_check(chirp))

    grid = wvd(chirp)
    cov = covariance(grid)
    print(cov.matrix())
    print(relation1_check(grid, chirp, t0=0.5, f0=0.0))
    print(strong_uncertainty_check(cov))
