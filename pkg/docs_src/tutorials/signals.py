import numpy as np

from tfkit import SampledSignal, SignalSpec, generate, analytic
from tfkit.io import read_signal, write_signal

if __name__ == "__main__":
    gaussian = generate(
        SignalSpec(kind="gaussian", n=1024, sample_rate=32, parameters={"width": 1.0})
    )
    print(gaussian.n, gaussian.dt, gaussian.t_axis[0])

    tone = generate(
        SignalSpec(kind="tone", n=1024, sample_rate=32, parameters={"center_frequency": 4.0})
    )
    # a real cosine has an analytic counterpart with no negative frequencies
    cosine = SampledSignal(samples=np.cos(2 * np.pi * 4.0 * tone.t_axis), sample_rate=32)
    print(np.allclose(np.abs(analytic(cosine).samples), 1.0))

    write_signal(gaussian, "gaussian.csv")
    print(np.array_equal(read_signal("gaussian.csv").samples, gaussian.samples))
