import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from colorgraph.graph import (
    Complete,
    CompleteBipartite,
    Cycle,
    Graph,
    Path as PathSpec,
    Star,
    generate,
)


def small_catalog() -> list[tuple[str, Graph]]:
    """25 named graphs on at most 7 vertices; the shared oracle test bed."""
    entries: list[tuple[str, Graph]] = []
    for n in range(2, 8):
        entries.append((f"K{n}", generate(Complete(n))))
    for g in range(4, 8):
        entries.append((f"C{g}", generate(Cycle(g))))
    for e in range(2, 7):
        entries.append((f"P{e}", generate(PathSpec(e))))
    for leaves in range(2, 7):
        entries.append((f"star{leaves}", generate(Star(leaves))))
    for a, b in ((2, 3), (2, 4), (2, 5), (3, 3), (3, 4)):
        entries.append((f"K{a}{b}", generate(CompleteBipartite(a, b))))
    assert len(entries) == 25
    return entries


@pytest.fixture(scope="session")
def catalog():
    return small_catalog()
