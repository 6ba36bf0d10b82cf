"""Boolean functions f : {0,1}^n -> {+1, -1} and their Fourier spectra.

The sign table lists f(x) for x = 0 .. 2^n - 1 under the bit convention of
transforms.py.  Fourier coefficients follow fhat(s) = 2^(-n) sum_x (-1)^(s.x) f(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .transforms import fwht_in_place

FAMILIES = ("constant_plus", "parity", "or_fn", "majority")


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    n: int
    signs: np.ndarray  # length 2^n, entries exactly +-1, read-only

    def __post_init__(self):
        arr = np.asarray(self.signs, dtype=np.float64)
        if arr.ndim != 1 or arr.shape[0] != (1 << self.n):
            raise ValueError(f"sign table must have length 2^{self.n}")
        if not np.all(np.abs(arr) == 1.0):
            raise ValueError("sign table entries must be exactly +1 or -1")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "signs", arr)

    def negated(self) -> "BooleanFunction":
        return BooleanFunction(self.n, -self.signs)


@dataclass(frozen=True, eq=False)
class FourierSpectrum:
    n: int
    coeffs: np.ndarray  # length 2^n, coeffs[s] = fhat(s), read-only

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.float64)
        if arr.ndim != 1 or arr.shape[0] != (1 << self.n):
            raise ValueError(f"coefficient table must have length 2^{self.n}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)


def make_family(name: str, n: int) -> BooleanFunction:
    """Named test families: constant_plus, parity, or_fn, majority (odd n only)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    x = np.arange(1 << n, dtype=np.int64)
    if name == "constant_plus":
        signs = np.ones(1 << n)
    elif name == "parity":
        signs = 1.0 - 2.0 * (np.bitwise_count(x) & 1)
    elif name == "or_fn":
        # +1 only on the all-zero input
        signs = np.where(x == 0, 1.0, -1.0)
    elif name == "majority":
        if n % 2 == 0:
            raise ValueError("majority needs odd n (no tie rule is defined)")
        signs = np.sign(n - 2.0 * np.bitwise_count(x))
    else:
        raise ValueError(f"unknown family {name!r}, expected one of {FAMILIES}")
    return BooleanFunction(n, signs)


def sample_uniform(n: int, seed: int) -> BooleanFunction:
    """Uniformly random sign table, deterministic per seed (PCG64 stream)."""
    if n < 1 or n > 26:
        raise ValueError(f"n must lie in 1..26, got {n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    signs = 1.0 - 2.0 * rng.integers(0, 2, size=1 << n)
    return BooleanFunction(n, signs)


def derive_seeds(seed: int, count: int) -> list[int]:
    """Independent child seeds for parallel trials.

    Splits the root seed with numpy's SeedSequence.spawn, so trial i gets the
    same child seed regardless of how many trials run or in what order.
    """
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(c.generate_state(1, np.uint64)[0]) for c in children]


def fourier(f: BooleanFunction) -> FourierSpectrum:
    buf = f.signs.copy()
    fwht_in_place(buf)
    buf /= float(1 << f.n)
    return FourierSpectrum(f.n, buf)


def canonical_sign(f: BooleanFunction) -> BooleanFunction:
    """f itself if sum_x f(x) >= 0, otherwise its negation."""
    return f if float(f.signs.sum()) >= 0.0 else f.negated()


def write_truth_table(f: BooleanFunction, path: str | Path) -> None:
    """Two-line text format: "n=<int>" then 2^n characters from {+,-}."""
    chars = "".join("+" if s > 0 else "-" for s in f.signs)
    Path(path).write_text(f"n={f.n}\n{chars}\n")


def read_truth_table(path: str | Path) -> BooleanFunction:
    lines = Path(path).read_text().splitlines()
    if len(lines) < 2 or not lines[0].startswith("n="):
        raise ValueError(f"{path}: expected 'n=<int>' on line 1 and a sign row on line 2")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise ValueError(f"{path}: malformed bit count {lines[0]!r}") from None
    row = lines[1].strip()
    if n < 1 or len(row) != (1 << n):
        raise ValueError(f"{path}: sign row must hold exactly 2^{n} characters, got {len(row)}")
    if any(c not in "+-" for c in row):
        raise ValueError(f"{path}: sign row may only contain '+' and '-'")
    signs = np.where(np.frombuffer(row.encode(), dtype=np.uint8) == ord("+"), 1.0, -1.0)
    return BooleanFunction(n, signs)
