import pytest

from incidencelab.constructions import SeededStream, random_instance
from incidencelab.incidence import warm_up_kernels

SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101)


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile the probe kernels once so timed tests measure counting, not JIT
    warm_up_kernels()


def random_instances(count, seed, max_p_index=None, max_m=500, max_n=500):
    """A deterministic stream of random instances for property suites."""
    stream = SeededStream(seed)
    primes = SMALL_PRIMES[:max_p_index] if max_p_index else SMALL_PRIMES
    out = []
    for _ in range(count):
        p = primes[stream.below(len(primes))]
        m = 1 + stream.below(min(max_m, p * p))
        n = 1 + stream.below(min(max_n, p * p + p))
        out.append(random_instance(p, m, n, stream.next_u64()))
    return out


def vertical_free(inst):
    """Drop vertical lines from an instance."""
    return inst.replace(lines=[l for l in inst.lines if l.slope is not None])
