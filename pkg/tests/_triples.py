import random

from toricmoduli.filtrations import Filtration, FiltrationTriple, SubspaceBasis


def random_arm(rng: random.Random, r: int, max_len: int = 4) -> Filtration:
    while True:
        vecs = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(r)]
        if SubspaceBasis.span(r, vecs).dim == r:
            break
    steps = []
    i = rng.randint(-3, 3)
    for d in range(r - 1, -1, -1):
        if d and rng.random() < 0.3:
            continue
        i += rng.randint(1, max_len)
        steps.append((i, SubspaceBasis.span(r, vecs[:d])))
    return Filtration.make(r, steps)


def random_triple(rng: random.Random, r: int | None = None) -> FiltrationTriple:
    r = r or rng.choice((2, 3))
    return FiltrationTriple(r, tuple(random_arm(rng, r) for _ in range(3)))
