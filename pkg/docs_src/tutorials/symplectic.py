import numpy as np

from tfkit import SignalSpec, generate, GeneratorWord, factor, act_word
from tfkit.symplectic import verify_action

if __name__ == "__main__":
    gaussian = generate(
        SignalSpec(kind="gaussian", n=1024, sample_rate=32, parameters={"width": 1.0})
    )

    word = factor(np.array([[2.0, 1.0], [1.0, 1.0]]))
    print("word:", word)
    print("product:", word.matrix().to_array())

    moved = act_word(gaussian, GeneratorWord.parse("M(2),T(1)"))
    print(moved.n)

    result = verify_action(gaussian, GeneratorWord.parse("T(2)"))
    print("deviation:", result.max_relative_deviation)
