"""Random task-set generation.

Periods are uniform in 1..tmax, WCETs follow an exponential distribution whose
mean is a fraction of the period, and deadlines are uniform between the WCET
and the period. Sets with no more tasks than processors, with utilization above
m, that can be scaled down by an integer factor, or that duplicate an earlier
set are discarded, in that order.

The random stream is numpy's PCG64 bit generator seeded with the given seed.
"""

import logging
import math
from collections import Counter
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from itertools import islice
from pathlib import Path
from typing import Literal

import numpy as np
import numpy.typing as npt

from .__about__ import __version__
from .errors import GenerationExhaustedError, PreconditionError
from .manifest import (
    MANIFEST_NAME,
    Manifest,
    Params,
    TaskSetEntry,
    format_fraction,
    render_manifest,
)
from .taskset import TaskSet, integer_scale_factor, serialize_taskset, utilization

Rounding = Literal["ceil", "round", "floor"]

RNG_NAME = f"numpy-{np.__version__}/PCG64"

logger = logging.getLogger(__name__)


def _round_half_up(value: float) -> int:
    return math.floor(value + 0.5)


ROUNDINGS: dict[str, Callable[[float], int]] = {
    "ceil": math.ceil,
    "round": _round_half_up,
    "floor": math.floor,
}
"""WCET rounding modes, applied before clamping to 1..T."""


@dataclass(frozen=True)
class GenParams:
    """Parameters of a generation run."""

    count: int
    """Number of task sets to accept."""

    tmax: int
    """Largest period."""

    m: int
    """Number of processors."""

    n_range: tuple[int, int] = (2, 5)
    """Inclusive bounds on the number of tasks, drawn uniformly."""

    seed: int = 0
    wcet_mean_factor: float = 0.35
    """Mean of the exponential WCET distribution, as a fraction of the period."""

    rounding: Rounding = "ceil"
    """How a WCET sample becomes an integer before clamping to 1..T."""

    max_attempts: int | None = field(default=None, kw_only=True)
    """Cap on sets drawn; defaults to 1000 per requested set."""

    def __post_init__(self) -> None:
        """Validate the parameters."""
        n_min, n_max = self.n_range
        if self.count < 1 or self.tmax < 1 or self.m < 1:
            raise PreconditionError("count, tmax and m must be positive")
        if not 1 <= n_min <= n_max:
            raise PreconditionError(f"Invalid task count range {n_min}:{n_max}")
        if self.wcet_mean_factor <= 0:
            raise PreconditionError("The WCET mean factor must be positive")
        if self.rounding not in ROUNDINGS:
            raise PreconditionError(f"Unknown rounding '{self.rounding}'")

    @property
    def attempt_cap(self) -> int:
        """Return the effective cap on sets drawn."""
        if self.max_attempts is None:
            return 1000 * self.count
        return self.max_attempts


def sample_raw_wcets(
    rng: np.random.Generator, period: int, factor: float, size: int
) -> npt.NDArray[np.float64]:
    """Draw continuous WCET samples for a period, before rounding and clamping."""
    return rng.exponential(factor * period, size=size)


def sample_wcet(
    rng: np.random.Generator, period: int, factor: float, rounding: Rounding = "ceil"
) -> int:
    """Draw one integer WCET in 1..period."""
    value = ROUNDINGS[rounding](float(rng.exponential(factor * period)))
    return min(max(value, 1), period)


def draw_taskset(rng: np.random.Generator, params: GenParams) -> TaskSet:
    """Draw one candidate task set, before any drop rule is applied."""
    n_min, n_max = params.n_range
    n = int(rng.integers(n_min, n_max, endpoint=True))

    triples = []
    for _ in range(n):
        period = int(rng.integers(1, params.tmax, endpoint=True))
        wcet = sample_wcet(rng, period, params.wcet_mean_factor, params.rounding)
        deadline = int(rng.integers(wcet, period, endpoint=True))
        triples.append((period, deadline, wcet))

    return TaskSet.from_params(triples, m=params.m)


class TaskSetGenerator:
    """Stream of accepted task sets for a parameter set.

    Iterating draws candidates until one passes every drop rule, and stops
    for good once the attempt cap is reached.
    """

    def __init__(self, params: GenParams) -> None:
        """Initialize the generator.

        Args:
            params: The generation parameters; the seed fixes the whole stream.
        """
        self.params = params
        self.attempts = 0
        self.rejections: Counter[str] = Counter()
        self._rng = np.random.Generator(np.random.PCG64(params.seed))
        self._seen: set[tuple[tuple[int, int, int], ...]] = set()

    def __iter__(self) -> Iterator[TaskSet]:
        """Yield accepted task sets."""
        while self.attempts < self.params.attempt_cap:
            self.attempts += 1
            ts = draw_taskset(self._rng, self.params)

            if reason := self._drop_reason(ts):
                self.rejections[reason] += 1
                continue

            self._seen.add(ts.multiset)
            yield ts

    def _drop_reason(self, ts: TaskSet) -> str | None:
        # First drop rule the set violates, if any.
        if len(ts) <= ts.m:
            return "n <= m"
        if utilization(ts) > ts.m:
            return "utilization > m"
        if integer_scale_factor(ts) > 1:
            return "scalable"
        if ts.multiset in self._seen:
            return "duplicate"
        return None


def generate(params: GenParams) -> list[TaskSet]:
    """Generate exactly params.count distinct task sets.

    Raises:
        GenerationExhaustedError: The attempt cap was reached first.
    """
    return _generate(TaskSetGenerator(params))


def generate_corpus(params: GenParams, out_dir: Path) -> Manifest:
    """Generate task sets and write them to a directory, with a manifest.

    Each set is written to ``set-<id>.txt``; the manifest lists the parameters
    and every set with its exact utilization.

    Raises:
        GenerationExhaustedError: The attempt cap was reached first.
    """
    generator = TaskSetGenerator(params)
    sets = _generate(generator)

    out_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for set_id, ts in enumerate(sets):
        name = f"set-{set_id:05d}.txt"
        (out_dir / name).write_text(serialize_taskset(ts), encoding="utf-8")
        entries.append(
            TaskSetEntry(
                id=set_id,
                file=name,
                n=len(ts),
                utilization=format_fraction(utilization(ts)),
            )
        )

    n_min, n_max = params.n_range
    manifest = Manifest(
        version=__version__,
        params=Params(
            count=params.count,
            tmax=params.tmax,
            m=params.m,
            n_min=n_min,
            n_max=n_max,
            seed=params.seed,
            wcet_mean_factor=params.wcet_mean_factor,
            rounding=params.rounding,
            rng=RNG_NAME,
            attempts=generator.attempts,
        ),
        task_sets=entries,
    )
    (out_dir / MANIFEST_NAME).write_text(render_manifest(manifest), encoding="utf-8")
    logger.info("Wrote %d task sets to %s", len(sets), out_dir)
    return manifest


def _generate(generator: TaskSetGenerator) -> list[TaskSet]:
    count = generator.params.count
    sets = list(islice(generator, count))
    logger.debug(
        "Drew %d candidate sets, rejected %s",
        generator.attempts,
        dict(generator.rejections),
    )

    if len(sets) < count:
        raise GenerationExhaustedError(generator.attempts, len(sets), count)

    logger.info("Accepted %d sets out of %d attempts", count, generator.attempts)
    return sets
