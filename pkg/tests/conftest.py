import pytest
from hypothesis import HealthCheck, settings

from heegaard import homology_profile, random_splitting

settings.register_profile(
    "exact",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("exact")

# word lengths chosen so torsion orders range from 1 up to a few thousand
CORPUS_WORD_LENGTHS = (4, 12, 22, 36, 44)


def iter_seeded_corpus(count, torsion_cap=10**4, word_lengths=CORPUS_WORD_LENGTHS):
    """Deterministic stream of distinct valid splittings, genus 1..3."""
    seen = set()
    i = 0
    yielded = 0
    while yielded < count:
        genus = 1 + (i % 3)
        wl = word_lengths[(i // 3) % len(word_lengths)]
        G = random_splitting(genus, i, wl)
        i += 1
        key = (G.R, G.P, G.S, G.Q)
        if key in seen:
            continue
        seen.add(key)
        if homology_profile(G).torsion_order <= torsion_cap:
            yielded += 1
            yield G


@pytest.fixture(scope="session")
def corpus():
    """The 50-splitting corpus shared by the partition and invariance suites."""
    return list(iter_seeded_corpus(50))
