from tfkit import SignalSpec, generate, wvd, gaussian_smooth, compute_tfd, make_kernel
from tfkit.kernels import parse_kernel
from tfkit.tfd import min_scan

if __name__ == "__main__":
    pair = generate(
        SignalSpec(
            kind="two_component",
            n=1024,
            sample_rate=32,
            parameters={"width": 1.0, "separation": 2.5},
        )
    )

    grid = wvd(pair)
    print("WVD minimum:", min_scan(grid).value)

    smooth = gaussian_smooth(grid, alpha=0.6, beta=0.5)
    print("smoothed minimum:", min_scan(smooth).value)

    born_jordan = compute_tfd(pair, make_kernel("born_jordan"))
    print("Born-Jordan keeps the marginals:", born_jordan.time_marginal, born_jordan.freq_marginal)

    spectrogram = compute_tfd(pair, parse_kernel("spectrogram:width=0.7", like=pair))
    print("spectrogram minimum:", min_scan(spectrogram).value)
